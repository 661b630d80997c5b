from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skeletal.errors import IncompatibleRadicands
from skeletal.geometry import (
    Isometry,
    Vec3,
    classify_isometry,
    compose,
    half_turn,
    invert,
    linear_map,
    mirror_dimension,
    plane_reflection,
    point_reflection,
    rotation,
    translation,
)
from skeletal.scalar import Scalar

IDENTITY = Isometry(((1, 0, 0), (0, 1, 0), (0, 0, 1)))


def s(a, b=0, d=1):
    return Scalar.from_parts(Fraction(a), Fraction(b), d)


def test_difference_of_squares():
    assert (s(1, 1, 2) * s(1, -1, 2)) == Scalar.of(-1)


def test_sqrt2_greater_than_one():
    assert Scalar.sqrt(2).cmp(Scalar.of(1)) == 1
    assert Scalar.sqrt(2) > 1


def test_golden_ratio_square():
    tau = s(Fraction(1, 2), Fraction(1, 2), 5)
    assert tau * tau == s(Fraction(3, 2), Fraction(1, 2), 5)
    assert tau * tau == tau + 1


def test_rational_canonical_form():
    assert Scalar(3, 0, 6, 5).d == 1
    assert Scalar(1, 1, 1, 1) == Scalar.of(2)


def test_mixed_radicands_rejected():
    with pytest.raises(IncompatibleRadicands):
        Scalar.sqrt(2) + Scalar.sqrt(3)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        Scalar.of(1) / Scalar.of(0)


def test_scalar_json_shape():
    obj = s(Fraction(-2, 4), Fraction(3, 9), 3).to_json()
    assert obj == {"d": 3, "a": [-1, 2], "b": [1, 3]}
    assert Scalar.from_json(obj) == s(Fraction(-1, 2), Fraction(1, 3), 3)


rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def scalars(draw, d=None):
    d = draw(st.sampled_from([1, 2, 3, 5])) if d is None else d
    return Scalar.from_parts(draw(rationals), draw(rationals) if d != 1 else 0, d)


def as_float(x: Scalar) -> float:
    return float(x.a) + float(x.b) * x.d**0.5


@settings(max_examples=200)
@given(st.sampled_from([2, 3, 5]).flatmap(lambda d: st.tuples(scalars(d), scalars(d), scalars(d))))
def test_field_laws(xyz):
    x, y, z = xyz
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    if not y.is_zero():
        assert (x / y) * y == x


@settings(max_examples=200)
@given(st.sampled_from([2, 3, 5]).flatmap(lambda d: st.tuples(scalars(d), scalars(d))))
def test_order_agrees_with_floats(xy):
    x, y = xy
    fx, fy = as_float(x), as_float(y)
    if abs(fx - fy) > 1e-9:
        assert (x < y) == (fx < fy)
    assert (x.sign() > 0) == (fx > 1e-12) or abs(fx) <= 1e-12


@settings(max_examples=100)
@given(scalars())
def test_scalar_json_roundtrip(x):
    assert Scalar.from_json(x.to_json()) == x


# --------------------------------------------------------------------------- isometries


def test_identity_apply():
    assert IDENTITY.apply((1, 2, 3)) == Vec3(1, 2, 3)


def test_plane_reflection_involution():
    f = plane_reflection((0, 0, 1))
    assert compose(f, f).is_identity()


def test_action_order():
    # translate by (1,0,0), then rotate a quarter turn about z
    f = compose(translation((1, 0, 0)), rotation((0, 0, 1), 4))
    assert f.apply((0, 0, 0)) == Vec3(0, 1, 0)


def test_invert():
    f = compose(translation((1, 2, 0)), rotation((1, 1, 1), 3))
    assert compose(invert(f), f).is_identity()
    assert compose(f, invert(f)).is_identity()


def test_classify_examples():
    k = classify_isometry(point_reflection())
    assert (k.tag, k.mirror_dim) == ("point-reflection", 0)
    k = classify_isometry(half_turn((0, 0, 1)))
    assert (k.tag, k.mirror_dim) == ("line-reflection", 1)
    k = classify_isometry(compose(rotation((0, 0, 1), 4), plane_reflection((0, 0, 1))))
    assert (k.tag, k.period) == ("rotatory-reflection", 4)


def test_classify_other_kinds():
    assert classify_isometry(IDENTITY).tag == "identity"
    assert classify_isometry(translation((1, 0, 0))).tag == "translation"
    assert classify_isometry(rotation((1, 1, 1), 3)).period == 3
    screw = compose(rotation((0, 0, 1), 4), translation((0, 0, 1)))
    assert classify_isometry(screw).tag == "screw"
    glide = compose(plane_reflection((0, 0, 1)), translation((1, 0, 0)))
    assert classify_isometry(glide).tag == "glide"


def test_mirror_dimension():
    assert mirror_dimension(point_reflection()) == 0
    assert mirror_dimension(plane_reflection((1, 0, 0), 1)) == 2
    assert mirror_dimension(compose(rotation((0, 0, 1), 4), translation((0, 0, 1)))) is None


def test_non_orthogonal_rejected():
    with pytest.raises(ValueError):
        linear_map(((2, 0, 0), (0, 1, 0), (0, 0, 1)))


def test_isometry_json_roundtrip():
    f = compose(rotation((0, 0, 1), 6), translation((1, 0, 0)))
    assert Isometry.from_json(f.to_json()) == f


# generators for random isometries of the cube group with half-integer translations
LINEAR = [
    rotation((0, 0, 1), 4),
    rotation((1, 1, 1), 3),
    plane_reflection((1, -1, 0)),
    point_reflection(),
]


@st.composite
def isometries(draw):
    f = IDENTITY
    for g in draw(st.lists(st.sampled_from(LINEAR), max_size=6)):
        f = compose(f, g)
    t = draw(st.tuples(*(st.integers(-3, 3) for _ in range(3))))
    return compose(f, translation(tuple(Fraction(x, 2) for x in t)))


@settings(max_examples=100)
@given(isometries(), isometries(), isometries())
def test_group_laws(f, g, h):
    assert compose(compose(f, g), h) == compose(f, compose(g, h))
    p = Vec3(1, Fraction(1, 3), -2)
    assert compose(f, g).apply(p) == g.apply(f.apply(p))
    assert compose(f, g).is_orthogonal()
    assert invert(f).is_orthogonal()


@settings(max_examples=100)
@given(isometries(), isometries())
def test_kind_is_conjugation_invariant(f, g):
    a = classify_isometry(f)
    b = classify_isometry(f.conjugate_by(g))
    assert (a.tag, a.period, a.mirror_dim) == (b.tag, b.period, b.mirror_dim)
