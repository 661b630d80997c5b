from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skeletal.classification import REFERENCE_GRAPHS
from skeletal.construction import Rank4Generators, two_skeleton
from skeletal.errors import BoundaryContact, EdgeFaceDeficit, SizeLimit
from skeletal.geometry import (
    compose,
    plane_reflection,
    rotation,
    translation,
)
from skeletal.incidence import (
    GeometricGraph,
    Polygon,
    adjacent,
    build_complex,
    classify_polygon,
    flags,
    graph_isomorphic,
    i_adjacent,
    interior_flags,
    is_regular_polygon,
    vertex_figure,
)
from skeletal.scalar import Scalar

CUBE_V = list(itertools.product((0, 1), repeat=3))
CUBE_F = [
    [(0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 1, 0)],
    [(0, 0, 1), (1, 0, 1), (1, 1, 1), (0, 1, 1)],
    [(0, 0, 0), (1, 0, 0), (1, 0, 1), (0, 0, 1)],
    [(0, 1, 0), (1, 1, 0), (1, 1, 1), (0, 1, 1)],
    [(0, 0, 0), (0, 1, 0), (0, 1, 1), (0, 0, 1)],
    [(1, 0, 0), (1, 1, 0), (1, 1, 1), (1, 0, 1)],
]


def cube(faces=CUBE_F):
    idx = {v: i for i, v in enumerate(CUBE_V)}
    fs = [[idx[v] for v in f] for f in faces]
    edges = {tuple(sorted((f[i], f[(i + 1) % 4]))) for f in fs for i in range(4)}
    if len(faces) < 6:
        edges = {tuple(sorted((idx[a], idx[b]))) for f in CUBE_F for a, b in zip(f, f[1:] + f[:1])}
    return build_complex(CUBE_V, sorted(edges), fs)


def cubic_skeleton(window=3):
    h = Fraction(1, 2)
    gen = Rank4Generators(
        (plane_reflection((1, 0, 0), h), plane_reflection((1, -1, 0)), plane_reflection((0, 1, -1)), plane_reflection((0, 0, 1)))
    )
    return two_skeleton(gen, window)


def test_cube_builds():
    k = cube()
    assert (len(k.vertices), len(k.edges), len(k.faces)) == (8, 12, 6)
    assert all(len(fs) == 2 for fs in k.edge_faces)


def test_cube_missing_face():
    with pytest.raises(EdgeFaceDeficit) as exc:
        cube(CUBE_F[:5])
    assert "4" in str(exc.value) or getattr(exc.value, "edges", None)


def test_cube_flags_and_adjacency():
    k = cube()
    fl = flags(k)
    assert len(fl) == 48
    for f in fl:
        for i in (0, 1, 2):
            g = adjacent(k, f, i)
            assert g != f
            assert adjacent(k, g, i) == f
        g = adjacent(k, f, 0)
        assert (g.edge, g.face) == (f.edge, f.face) and g.vertex != f.vertex


def test_cube_vertex_figure_triangle():
    k = cube()
    vf = vertex_figure(k, 0)
    assert len(vf.nodes) == 3 and vf.n_links == 3 and vf.max_multiplicity() == 1


def test_cubic_skeleton():
    k = cubic_skeleton()
    inner = set(k.interior)
    assert inner
    for e, (a, b) in enumerate(k.edges):
        if a in inner and b in inner:
            assert len(k.edge_faces[e]) == 4
    fl = interior_flags(k)
    for f in fl[:200]:
        assert len(i_adjacent(k, f, 2)) == 3
        for i in (0, 1):
            g = adjacent(k, f, i)
            if g.vertex in inner:
                assert adjacent(k, g, i) == f


def test_flags_per_edge_is_twice_r():
    k = cubic_skeleton()
    count: dict = {}
    for f in flags(k):
        count[f.edge] = count.get(f.edge, 0) + 1
    for e, n in count.items():
        assert n == 2 * len(k.edge_faces[e])


def test_boundary_flag_rejected():
    k = cubic_skeleton(2)
    outer = next(v for v in range(len(k.vertices)) if v not in k.interior)
    f = next(f for f in flags(k) if f.vertex == outer)
    with pytest.raises(BoundaryContact):
        i_adjacent(k, f, 0)


# --------------------------------------------------------------------------- polygons


def test_square_convex():
    assert classify_polygon(Polygon.cycle([(0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 1, 0)])).label == "4_c"


def test_cube_petrie_hexagon():
    hexagon = [(0, 0, 0), (1, 0, 0), (1, 1, 0), (1, 1, 1), (0, 1, 1), (0, 0, 1)]
    assert classify_polygon(Polygon.cycle(hexagon)).label == "6_s"


def test_helix_over_square():
    step = compose(rotation((0, 0, 1), 4), translation((0, 0, 1)))
    p = Polygon.from_rule([(1, 0, 0)], step, 12)
    assert classify_polygon(p).label == "inf_4"


def test_zigzag_and_line():
    glide = compose(plane_reflection((0, 1, 0)), translation((1, 0, 0)))
    zig = Polygon.from_rule([(0, 1, 0)], glide, 10)
    assert is_regular_polygon(zig)
    assert classify_polygon(zig).label == "inf_2"
    line = Polygon.from_rule([(0, 0, 0)], translation((1, 0, 0)), 10)
    assert classify_polygon(line).label == "inf"


def test_octagram_is_star():
    r = Scalar.sqrt(2) / 2
    octagon = [(1, 0, 0), (r, r, 0), (0, 1, 0), (-r, r, 0), (-1, 0, 0), (-r, -r, 0), (0, -1, 0), (r, -r, 0)]
    star = [octagon[(3 * i) % 8] for i in range(8)]
    kind = classify_polygon(Polygon.cycle(star))
    assert (kind.tag, kind.label) == ("star", "8/3")
    assert classify_polygon(Polygon.cycle(octagon)).label == "8_c"


def test_regular_polygon_examples():
    r3 = Scalar.sqrt(3)
    tri = [(0, 0, 0), (2, 0, 0), (1, r3, 0)]
    assert is_regular_polygon(Polygon.cycle(tri))
    assert not is_regular_polygon(Polygon.cycle([(0, 0, 0), (2, 0, 0), (2, 1, 0), (0, 1, 0)]))


SIMILARITIES = [
    compose(rotation((1, 1, 1), 3), translation((Fraction(1, 2), 2, -1))),
    compose(plane_reflection((1, -1, 0)), translation((0, 0, 5))),
    rotation((0, 0, 1), 4),
]


@settings(max_examples=30)
@given(st.sampled_from(SIMILARITIES), st.integers(1, 4))
def test_polygon_kind_similarity_invariant(g, scale):
    hexagon = [(0, 0, 0), (1, 0, 0), (1, 1, 0), (1, 1, 1), (0, 1, 1), (0, 0, 1)]
    moved = [g.apply(tuple(scale * c for c in p)) for p in hexagon]
    assert classify_polygon(Polygon.cycle(moved)).label == "6_s"


# --------------------------------------------------------------------------- graphs


def _cycle_graph(n, mult=1):
    nodes = [(i, 0, 0) for i in range(n)]
    return GeometricGraph.from_links(nodes, [(i, (i + 1) % n) for i in range(n)], mult)


def test_graph_isomorphism_examples():
    assert graph_isomorphic(REFERENCE_GRAPHS["cuboctahedron"], REFERENCE_GRAPHS["ns-cuboctahedron"], "abstract")
    assert not graph_isomorphic(REFERENCE_GRAPHS["cuboctahedron"], REFERENCE_GRAPHS["ns-cuboctahedron"], "similarity")
    assert not graph_isomorphic(_cycle_graph(3), _cycle_graph(4))
    assert not graph_isomorphic(_cycle_graph(4, 2), _cycle_graph(4, 1))
    assert graph_isomorphic(_cycle_graph(4, 2), _cycle_graph(4, 2))


def test_graph_size_limit():
    with pytest.raises(SizeLimit):
        graph_isomorphic(_cycle_graph(20), _cycle_graph(20))
