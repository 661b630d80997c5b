from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skeletal.errors import RankDeficient
from skeletal.geometry import (
    Isometry,
    Vec3,
    classify_isometry,
    plane_reflection,
    point_reflection,
    rotation,
    translation,
)
from skeletal.scalar import Scalar
from skeletal.groups import (
    IsometryGroup,
    Lattice,
    PointGroup,
    bcc_lattice,
    closure,
    cubic_lattice,
    fcc_lattice,
    identify_point_group,
    named_predicate,
    orbit,
    special_group,
    translation_subgroup,
    vertex_set_member,
)

HALF = Fraction(1, 2)
CUBIC_TILING = IsometryGroup(
    [
        plane_reflection((1, 0, 0), HALF),
        plane_reflection((1, -1, 0)),
        plane_reflection((0, 1, -1)),
        plane_reflection((0, 0, 1)),
    ],
    "{4,3,4}",
)


def integer_points(r2: int):
    m = int(r2**0.5) + 1
    for p in itertools.product(range(-m, m + 1), repeat=3):
        if sum(c * c for c in p) <= r2:
            yield p


def test_orbit_cubic_radius_2():
    g = IsometryGroup([translation((1, 0, 0)), translation((0, 1, 0)), translation((0, 0, 1))])
    pts = orbit((0, 0, 0), g, 2)
    assert len(pts) == sum(1 for _ in integer_points(4)) == 33


def test_orbit_trivial_group():
    g = IsometryGroup([Isometry(((1, 0, 0), (0, 1, 0), (0, 0, 1)))])
    assert orbit((0, 0, 0), g, 3) == {Vec3(0, 0, 0)}


def test_orbit_fcc():
    g = IsometryGroup([translation(v) for v in ((1, 1, 0), (1, 0, 1), (0, 1, 1))])
    pts = orbit((0, 0, 0), g, Scalar.sqrt(2))
    expected = sum(1 for p in integer_points(2) if sum(p) % 2 == 0)
    assert len(pts) == expected == 13


def test_translation_subgroup_cubic():
    lat = translation_subgroup(CUBIC_TILING)
    assert lat.same_lattice(cubic_lattice(1))


def test_translation_subgroup_finite():
    g = IsometryGroup([rotation((0, 0, 1), 4), plane_reflection((1, 0, 0))])
    with pytest.raises(RankDeficient) as exc:
        translation_subgroup(g)
    assert exc.value.rank == 0


def test_translation_subgroup_conjugation_invariant():
    t = translation((HALF, Fraction(1, 3), 0))
    g = IsometryGroup([x.conjugate_by(t) for x in CUBIC_TILING.generators])
    assert translation_subgroup(g).same_lattice(translation_subgroup(CUBIC_TILING))


def test_special_group_cubic():
    pg = special_group(CUBIC_TILING)
    assert pg.order == 48
    assert pg.name == "[3,4]"
    assert pg.census()[("plane-reflection", 2)] == 9


def test_special_group_translations_only():
    g = IsometryGroup([translation((1, 0, 0)), translation((0, 1, 0))])
    assert special_group(g).order == 1


def test_identify_rotation_groups():
    o = PointGroup(closure([rotation((0, 0, 1), 4), rotation((1, 1, 1), 3)]))
    assert o.order == 24 and identify_point_group(o) == "[3,4]+"
    t = closure([rotation((0, 0, 1), 2), rotation((1, 1, 1), 3)])
    th = PointGroup(closure(t + [point_reflection()]))
    assert th.order == 24 and identify_point_group(th) == "[3,3]+x<-I>"
    td = PointGroup(closure(t + [plane_reflection((1, -1, 0))]))
    assert td.order == 24 and identify_point_group(td) == "[3,3]"


def test_special_group_periods():
    for e in special_group(CUBIC_TILING).elements:
        k = classify_isometry(e)
        assert k.period is None or k.period in (1, 2, 3, 4, 6)


# --------------------------------------------------------------------------- vertex sets


def test_vertex_set_examples():
    assert not vertex_set_member((0, 0, 1), named_predicate("V_a"))
    assert vertex_set_member((1, -1, 1), named_predicate("W_a"))
    assert vertex_set_member((1, 1, 0), named_predicate("Lambda(a,a,0)"))
    assert not vertex_set_member((1, 0, 0), named_predicate("Lambda(a,a,0)"))


def _combos(gens, bound):
    out = set()
    for c in itertools.product(range(-bound, bound + 1), repeat=len(gens)):
        out.add(tuple(sum(ci * g[i] for ci, g in zip(c, gens)) for i in range(3)))
    return out


FCC_GENS = [(1, 1, 0), (1, -1, 0), (1, 0, 1), (1, 0, -1), (0, 1, 1), (0, 1, -1)]
BCC_GENS = [(1, 1, 1), (1, -1, -1), (-1, 1, -1)]


def test_fcc_membership_matches_generator_combinations():
    spanned = _combos(FCC_GENS, 2)
    pred = named_predicate("Lambda(a,a,0)")
    for p in integer_points(9):
        assert vertex_set_member(p, pred) == (p in spanned)


def test_bcc_membership_matches_generator_combinations():
    spanned = _combos(BCC_GENS, 4)
    pred = named_predicate("Lambda(a,a,a)")
    for p in integer_points(9):
        assert vertex_set_member(p, pred) == (p in spanned)


def test_va_and_wa_definitions():
    va = named_predicate("V_a")
    wa = named_predicate("W_a")
    bcc = bcc_lattice(1)
    two_fcc = fcc_lattice(2)
    for p in integer_points(12):
        removed = bcc.contains(Vec3(p[0], p[1], p[2] - 1))
        assert vertex_set_member(p, va) == (not removed)
        in_w = two_fcc.contains(Vec3(*p)) or two_fcc.contains(Vec3(p[0] - 1, p[1] + 1, p[2] - 1))
        assert vertex_set_member(p, wa) == in_w


def test_scaled_predicates():
    assert vertex_set_member((2, 2, 0), named_predicate("Lambda(a,a,0)", 2))
    assert not vertex_set_member((1, 1, 0), named_predicate("Lambda(a,a,0)", 2))


@settings(max_examples=60)
@given(st.tuples(*(st.integers(-6, 6) for _ in range(3))), st.sampled_from(["aZ3", "Lambda(a,a,0)", "Lambda(a,a,a)"]))
def test_named_lattices_agree_with_lattice_objects(p, kind):
    lat = {"aZ3": cubic_lattice(1), "Lambda(a,a,0)": fcc_lattice(1), "Lambda(a,a,a)": bcc_lattice(1)}[kind]
    assert vertex_set_member(p, named_predicate(kind)) == lat.contains(Vec3(*p))


def test_lattice_json_roundtrip():
    lat = fcc_lattice(3)
    assert Lattice.from_json(lat.to_json()).same_lattice(lat)


def test_dependent_basis_rejected():
    with pytest.raises(ValueError):
        Lattice([Vec3(1, 0, 0), Vec3(2, 0, 0)])
