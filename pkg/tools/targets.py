"""Stated rows of the classification tables, used to pick search results."""

from __future__ import annotations

# id: (mirror vector, G2, r, face, vertex-figure, vertex set, special group)
TABLE2 = {
    "K1(1,2)": ((1, 2), "D2", 4, "4_s", "cuboctahedron", "Lambda(a,a,0)", "[3,4]"),
    "K2(1,2)": ((1, 2), "C3", 3, "4_s", "cube", "Lambda(a,a,a)", "[3,4]"),
    "K3(1,2)": ((1, 2), "D3", 6, "4_s", "double cube", "Lambda(a,a,a)", "[3,4]"),
    "K4(1,2)": ((1, 2), "D2", 4, "6_s", "octahedron", "aZ3", "[3,4]"),
    "K5(1,2)": ((1, 2), "D2", 4, "6_s", "double square", "V_a", "[3,4]"),
    "K6(1,2)": ((1, 2), "D4", 8, "6_s", "double octahedron", "aZ3", "[3,4]"),
    "K7(1,2)": ((1, 2), "D3", 6, "6_s", "double tetrahedron", "W_a", "[3,4]"),
    "K8(1,2)": ((1, 2), "D2", 4, "6_s", "cuboctahedron", "Lambda(a,a,0)", "[3,4]"),
    "K1(1,1)": ((1, 1), "D3", 6, "inf_3", "double cube", "Lambda(a,a,a)", "[3,4]"),
    "K2(1,1)": ((1, 1), "D2", 4, "inf_3", "double square", "V_a", "[3,4]"),
    "K3(1,1)": ((1, 1), "D4", 8, "inf_3", "double octahedron", "aZ3", "[3,4]"),
    "K4(1,1)": ((1, 1), "D3", 6, "inf_4", "double tetrahedron", "W_a", "[3,4]"),
    "K5(1,1)": ((1, 1), "D2", 4, "inf_4", "ns-cuboctahedron", "Lambda(a,a,0)", "[3,4]"),
    "K6(1,1)": ((1, 1), "C3", 3, "inf_4", "tetrahedron", "W_a", "[3,4]+"),
    "K7(1,1)": ((1, 1), "C4", 4, "inf_3", "octahedron", "aZ3", "[3,4]+"),
    "K8(1,1)": ((1, 1), "D2", 4, "inf_3", "ns-cuboctahedron", "Lambda(a,a,0)", "[3,4]"),
    "K9(1,1)": ((1, 1), "C3", 3, "inf_3", "cube", "Lambda(a,a,a)", "[3,4]+"),
    "K(0,1)": ((0, 1), "D2", 4, "inf_2", "ns-cuboctahedron", "Lambda(a,a,0)", "[3,4]"),
    "K(0,2)": ((0, 2), "D2", 4, "inf_2", "cuboctahedron", "Lambda(a,a,0)", "[3,4]"),
    "K(2,1)": ((2, 1), "D2", 4, "6_c", "ns-cuboctahedron", "Lambda(a,a,0)", "[3,4]"),
    "K(2,2)": ((2, 2), "D2", 4, "3_c", "cuboctahedron", "Lambda(a,a,0)", "[3,4]"),
}
TABLE2_FIELDS = ("mirror_vector", "g2_census", "r", "face_kind", "vertex_figure_name", "vertex_set", "special_group")

# id: (mirror vector, schlafli, face geometry, vertex-figure geometry, fine lengths that pin the entry)
TABLE1 = {
    "{6,6|3}": ((2, 1, 2), "{6,6}", "planar", "skew", {"hole": 3}),
    "{6,4|4}": ((2, 1, 2), "{6,4}", "planar", "skew", {"hole": 4}),
    "{4,6|4}": ((2, 1, 2), "{4,6}", "planar", "skew", {"hole": 4}),
    "{inf,6}_{4,4}": ((1, 1, 2), "{inf,6}", "helical", "skew", {"petrie": 4}),
    "{inf,4}_{6,4}": ((1, 1, 2), "{inf,4}", "helical", "skew", {"petrie": 6}),
    "{inf,6}_{6,3}": ((1, 1, 2), "{inf,6}", "helical", "skew", {"petrie": 6}),
    "{6,6}_4": ((1, 2, 1), "{6,6}", "skew", "planar", {"petrie": 4}),
    "{6,4}_6": ((1, 2, 1), "{6,4}", "skew", "planar", {"petrie": 6}),
    "{4,6}_6": ((1, 2, 1), "{4,6}", "skew", "planar", {"petrie": 6}),
    "{inf,3}^(a)": ((1, 1, 1), "{inf,3}", "helical", "planar", {}),
    "{inf,4}_(.,*3)": ((1, 1, 1), "{inf,4}", "helical", "planar", {}),
    "{inf,3}^(b)": ((1, 1, 1), "{inf,3}", "helical", "planar", {}),
}
TABLE1_FIELDS = ("mirror_vector", "schlafli", "face_geometry", "vertex_figure_geometry")
