from __future__ import annotations

from fractions import Fraction

import pytest

from shapes import helix_axes
from skeletal.classification import classify, congruent, face_kind, fine_lengths
from skeletal.construction import (
    GeneratorTriple,
    Rank4Generators,
    blend,
    dual,
    facetting,
    family,
    generate_from_chiral,
    petrie_dual,
    petrie_generators,
    petrie_swap_rank4,
    two_skeleton,
    wythoff,
)
from skeletal.errors import CentersRequired, InvariantViolation, NoSolution, NotAPolyhedron, UnknownFamily, ZeroScale
from skeletal.geometry import Vec3, plane_reflection
from skeletal.incidence import vertex_figure
from skeletal.serialize import same_complex

HALF = Fraction(1, 2)

CUBE = GeneratorTriple(
    plane_reflection((1, 0, 0)),
    plane_reflection((1, -1, 0)),
    (plane_reflection((0, 1, -1)),),
    (HALF, HALF, HALF),
)
SQUARES = GeneratorTriple(
    plane_reflection((1, 0, 0), HALF), plane_reflection((1, -1, 0)), (plane_reflection((0, 1, 0)),), (0, 0, 0)
)
CUBIC = Rank4Generators(
    (plane_reflection((1, 0, 0), HALF), plane_reflection((1, -1, 0)), plane_reflection((0, 1, -1)), plane_reflection((0, 0, 1)))
)


def test_wythoff_cube():
    k = wythoff(CUBE)
    assert (len(k.vertices), len(k.edges), len(k.faces)) == (8, 12, 6)
    assert {face_kind(k, f).label for f in range(6)} == {"4_c"}


def test_square_tessellation_against_direct_construction():
    k = wythoff(SQUARES, 3)
    pts = {(v.x, v.y, v.z) for v in k.vertices}
    for v in k.interior:
        assert len(k.vertex_faces[v]) == 4
        x, y, z = k.vertices[v]
        assert z == 0 and x.is_rational() and y.is_rational()
    inner = [k.vertices[v] for v in k.interior]
    # every lattice point inside the interior hull appears
    for v in inner:
        for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            assert (v.x + dx, v.y + dy, v.z) in pts


def test_generator_invariants_checked():
    with pytest.raises(InvariantViolation):
        GeneratorTriple(plane_reflection((1, 0, 0)), plane_reflection((0, 1, 0)), (plane_reflection((0, 0, 1)),), (1, 1, 1))


def test_two_skeleton_cubic():
    k = two_skeleton(CUBIC, 3)
    rec = classify(k, fields=["face_mirrors"])
    assert (rec.r, rec.face_kind, rec.flag_stabilizer_order, rec.face_mirrors) == (4, "4_c", 2, True)


def test_petrie_swap_rank4():
    swapped = petrie_swap_rank4(CUBIC)
    assert petrie_swap_rank4(swapped).t == CUBIC.t
    assert same_complex(two_skeleton(swapped, 2), two_skeleton(CUBIC, 2))


def test_petrie_dual_cube():
    k = petrie_dual(wythoff(CUBE))
    assert len(k.faces) == 4
    assert {face_kind(k, f).label for f in range(4)} == {"6_s"}
    assert same_complex(petrie_dual(k), wythoff(CUBE))


def test_petrie_of_square_tessellation():
    k = wythoff(petrie_generators(SQUARES), 3)
    rec = classify(k, fields=[])
    assert (rec.schlafli, rec.face_kind) == ("{inf,4}", "inf_2")


def test_petrie_dual_needs_polyhedron():
    with pytest.raises(NotAPolyhedron):
        petrie_dual(two_skeleton(CUBIC, 2))


def _regular(name, c, d, window=3):
    return generate_from_chiral(family(name).instance(c, d), window)


def test_facetting_holes():
    k = _regular("Q", 0, 1, 4)  # {4,6|4}
    f = facetting(k)
    assert f.vertices == k.vertices and f.edges == k.edges
    assert {face_kind(f, i).p for i in range(len(f.faces)) if f.faces[i].closed} == {4}
    k = _regular("P", 1, 1, 4)  # {6,6|3}
    f = facetting(k)
    assert f.vertices == k.vertices and f.edges == k.edges
    assert {face_kind(f, i).p for i in range(len(f.faces)) if f.faces[i].closed} == {3}


def test_fine_lengths_examples():
    assert fine_lengths(wythoff(CUBE))["petrie"] == 6
    assert fine_lengths(_regular("Q", 0, 1))["hole"] == 4
    assert fine_lengths(_regular("P", 1, -1))["petrie"] == 4


def test_dual_cube_is_octahedron():
    d = dual(wythoff(CUBE))
    assert (len(d.vertices), len(d.edges), len(d.faces)) == (6, 12, 8)
    assert classify(d, fields=[]).schlafli == "{3,4}"
    dd = dual(d)
    assert (len(dd.vertices), len(dd.edges), len(dd.faces)) == (8, 12, 6)


def test_dual_square_tessellation_is_translated():
    k = wythoff(SQUARES, 4)
    d = dual(k)
    shift = Vec3(HALF, HALF, 0)
    pts = set(k.vertices)
    inner = [d.vertices[v] for v in d.interior]
    assert inner
    assert all(v - shift in pts or v + shift in pts for v in inner)
    assert classify(d, fields=[]).schlafli == "{4,4}"


def test_dual_needs_centres_for_skew_faces():
    with pytest.raises(CentersRequired):
        dual(_regular("Q", 1, 0))


def test_blend_helical_squares():
    k = blend(SQUARES, "apeirogon", 1, 3)
    for v in k.interior:
        assert len(k.vertex_faces[v]) == 4
    assert {face_kind(k, f).label for f in k.vertex_faces[next(iter(k.interior))]} == {"inf_4"}


def test_blend_projection():
    k = blend(SQUARES, "segment", 1, 3)
    base = wythoff(SQUARES, 3)
    flat = {Vec3(v.x, v.y, 0) for v in k.vertices}
    inner = {base.vertices[v] for v in base.interior}
    assert inner <= flat
    assert {v.z for v in k.vertices} == {0, 1} or {v.z for v in k.vertices} == {HALF, -HALF}
    flat_edges = {frozenset((Vec3(*k.vertices[a][:2], 0), Vec3(*k.vertices[b][:2], 0))) for a, b in k.edges}
    for a, b in base.edges:
        if a in base.interior and b in base.interior:
            assert frozenset((base.vertices[a], base.vertices[b])) in flat_edges


def test_blend_zero_scale():
    with pytest.raises(ZeroScale):
        blend(SQUARES, "segment", 0)


# --------------------------------------------------------------------------- chiral


def test_unknown_family():
    with pytest.raises(UnknownFamily):
        family("Z")


def test_zero_parameters():
    with pytest.raises(NoSolution):
        family("Q").instance(0, 0)


def test_degenerate_parameters_rejected():
    with pytest.raises(NoSolution):
        generate_from_chiral(family("P2").instance(1, 2), 3)


def test_p2_regular_member_is_cube():
    k = _regular("P2", 0, 1, None)
    assert len(k.vertices) == 8
    assert congruent(k, wythoff(CUBE))


def test_q_chiral_member_neighbourhood():
    k = _regular("Q", 1, 1)
    v = k.index[Vec3(0, 0, 0)]
    assert len(k.vertex_faces[v]) == 6
    assert {face_kind(k, f).label for f in k.vertex_faces[v]} == {"4_s"}
    assert vertex_figure(k, v).n_links == 6


def test_relations_hold_exactly():
    for name in ("P", "Q", "Q*", "P1", "P2", "P3"):
        pair = family(name).instance(2, 1) if name != "P2" else family(name).instance(1, 3)
        assert all(pair.relations().values()), name


def test_p2_parallel_axes():
    fam = family("P2")
    axes = [helix_axes(generate_from_chiral(fam.instance(2, d), 4), fam.base_vertex) for d in (1, 3, 5)]
    assert axes[0] and axes[0] == axes[1] == axes[2]
