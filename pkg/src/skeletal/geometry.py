"""Points and Euclidean isometries of 3-space with exact coordinates.

Isometries act on row vectors from the right, ``x -> x L + t``, and
``compose(f, g)`` means "first f, then g", so that
``apply(compose(f, g), p) == apply(g, apply(f, p))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import IncompatibleRadicands
from .scalar import ONE, ZERO, Scalar, scalar

# --------------------------------------------------------------------------- points


class Vec3(tuple):
    """An exact point (or vector) of 3-space."""

    __slots__ = ()

    def __new__(cls, x, y=None, z=None):
        if y is None:
            x, y, z = x
        return tuple.__new__(cls, (scalar(x), scalar(y), scalar(z)))

    @classmethod
    def _raw(cls, x, y, z) -> Vec3:
        return tuple.__new__(cls, (x, y, z))

    @property
    def x(self) -> Scalar:
        return self[0]

    @property
    def y(self) -> Scalar:
        return self[1]

    @property
    def z(self) -> Scalar:
        return self[2]

    def __add__(self, other):
        return Vec3._raw(self[0] + other[0], self[1] + other[1], self[2] + other[2])

    def __sub__(self, other):
        return Vec3._raw(self[0] - other[0], self[1] - other[1], self[2] - other[2])

    def __neg__(self):
        return Vec3._raw(-self[0], -self[1], -self[2])

    def __mul__(self, k):
        return Vec3._raw(self[0] * k, self[1] * k, self[2] * k)

    __rmul__ = __mul__

    def __truediv__(self, k):
        k = scalar(k).inverse()
        return Vec3._raw(self[0] * k, self[1] * k, self[2] * k)

    def dot(self, other) -> Scalar:
        return self[0] * other[0] + self[1] * other[1] + self[2] * other[2]

    def cross(self, other) -> Vec3:
        a, b = self, other
        return Vec3._raw(
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        )

    def norm2(self) -> Scalar:
        return self[0] * self[0] + self[1] * self[1] + self[2] * self[2]

    def is_zero(self) -> bool:
        return not (self[0] or self[1] or self[2])

    def radicand(self) -> int:
        ds = {c.d for c in self if c.q}
        if len(ds) > 1:
            raise IncompatibleRadicands(f"mixed radicands {sorted(ds)} in one point")
        return ds.pop() if ds else 1

    def floats(self) -> tuple[float, float, float]:
        return (float(self[0]), float(self[1]), float(self[2]))

    def __repr__(self):
        return f"Vec3({self[0]}, {self[1]}, {self[2]})"

    def to_json(self) -> list:
        return [c.to_json() for c in self]

    @classmethod
    def from_json(cls, obj) -> Vec3:
        return cls(*(scalar(c) for c in obj))


ORIGIN = Vec3._raw(ZERO, ZERO, ZERO)


def vec(x, y, z) -> Vec3:
    return Vec3(x, y, z)


# --------------------------------------------------------------------------- small exact linear algebra

Matrix = tuple  # 9 Scalars, row-major


def _mat(rows: Sequence[Sequence]) -> tuple:
    return tuple(scalar(rows[i][j]) for i in range(3) for j in range(3))


IDENTITY_MATRIX = _mat([[1, 0, 0], [0, 1, 0], [0, 0, 1]])


def mat_mul(a: tuple, b: tuple) -> tuple:
    a0, a1, a2, a3, a4, a5, a6, a7, a8 = a
    b0, b1, b2, b3, b4, b5, b6, b7, b8 = b
    return (
        a0 * b0 + a1 * b3 + a2 * b6,
        a0 * b1 + a1 * b4 + a2 * b7,
        a0 * b2 + a1 * b5 + a2 * b8,
        a3 * b0 + a4 * b3 + a5 * b6,
        a3 * b1 + a4 * b4 + a5 * b7,
        a3 * b2 + a4 * b5 + a5 * b8,
        a6 * b0 + a7 * b3 + a8 * b6,
        a6 * b1 + a7 * b4 + a8 * b7,
        a6 * b2 + a7 * b5 + a8 * b8,
    )


def mat_transpose(a: tuple) -> tuple:
    return (a[0], a[3], a[6], a[1], a[4], a[7], a[2], a[5], a[8])


def mat_det(a: tuple) -> Scalar:
    return (
        a[0] * (a[4] * a[8] - a[5] * a[7])
        - a[1] * (a[3] * a[8] - a[5] * a[6])
        + a[2] * (a[3] * a[7] - a[4] * a[6])
    )


def row_times(x: Sequence, a: tuple) -> Vec3:
    x0, x1, x2 = x
    return Vec3._raw(
        x0 * a[0] + x1 * a[3] + x2 * a[6],
        x0 * a[1] + x1 * a[4] + x2 * a[7],
        x0 * a[2] + x1 * a[5] + x2 * a[8],
    )


def mat_inverse(a: tuple) -> tuple:
    det = mat_det(a)
    if not det:
        raise ZeroDivisionError("singular matrix")
    inv = det.inverse()
    c = (
        a[4] * a[8] - a[5] * a[7],
        a[2] * a[7] - a[1] * a[8],
        a[1] * a[5] - a[2] * a[4],
        a[5] * a[6] - a[3] * a[8],
        a[0] * a[8] - a[2] * a[6],
        a[2] * a[3] - a[0] * a[5],
        a[3] * a[7] - a[4] * a[6],
        a[1] * a[6] - a[0] * a[7],
        a[0] * a[4] - a[1] * a[3],
    )
    return tuple(e * inv for e in c)


def row_reduce(rows: list[list[Scalar]]) -> tuple[list[list[Scalar]], list[int]]:
    """Reduced row echelon form; returns (rows, pivot columns)."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c].inverse()
        m[r] = [e * inv for e in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [ei - f * er for ei, er in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(vectors: Iterable[Sequence]) -> int:
    rows = [list(v) for v in vectors]
    if not rows:
        return 0
    return len(row_reduce(rows)[1])


def left_nullspace(a: tuple) -> list[Vec3]:
    """Basis of ``{x : x A = 0}`` for a 3x3 matrix ``A``."""
    at = mat_transpose(a)
    rows = [list(at[0:3]), list(at[3:6]), list(at[6:9])]
    red, pivots = row_reduce(rows)
    free = [c for c in range(3) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO, ZERO, ZERO]
        v[f] = ONE
        for i, pc in enumerate(pivots):
            v[pc] = -red[i][f]
        basis.append(Vec3._raw(*v))
    return basis


def solve_left(a: tuple, b: Sequence) -> Vec3 | None:
    """One solution of ``x A = b`` or ``None``."""
    at = mat_transpose(a)
    rows = [list(at[3 * i : 3 * i + 3]) + [b[i]] for i in range(3)]
    red, pivots = row_reduce(rows)
    if 3 in pivots:
        return None
    x = [ZERO, ZERO, ZERO]
    for i, pc in enumerate(pivots):
        x[pc] = red[i][3]
    return Vec3._raw(*x)


def mat_sub_identity(a: tuple, sign: int = 1) -> tuple:
    """``A - sign*I``."""
    out = list(a)
    for i in (0, 4, 8):
        out[i] = out[i] - sign
    return tuple(out)


# --------------------------------------------------------------------------- isometries


class Isometry:
    """``x -> x L + t`` with ``L`` orthogonal."""

    __slots__ = ("linear", "translation", "_key")

    def __init__(self, linear, translation=None, *, check: bool = True):
        if len(linear) == 3:
            linear = _mat(linear)
        else:
            linear = tuple(scalar(e) for e in linear)
        self.linear = linear
        self.translation = ORIGIN if translation is None else Vec3(translation)
        self._key = None
        if check and not self.is_orthogonal():
            raise ValueError("linear part is not orthogonal")

    @classmethod
    def _raw(cls, linear: tuple, translation: Vec3) -> Isometry:
        f = object.__new__(cls)
        f.linear = linear
        f.translation = translation
        f._key = None
        return f

    # algebra -----------------------------------------------------------------

    def is_orthogonal(self) -> bool:
        return mat_mul(self.linear, mat_transpose(self.linear)) == IDENTITY_MATRIX

    def det(self) -> int:
        return mat_det(self.linear).sign()

    def apply(self, p) -> Vec3:
        a = self.linear
        t = self.translation
        x0, x1, x2 = p
        return Vec3._raw(
            x0 * a[0] + x1 * a[3] + x2 * a[6] + t[0],
            x0 * a[1] + x1 * a[4] + x2 * a[7] + t[1],
            x0 * a[2] + x1 * a[5] + x2 * a[8] + t[2],
        )

    __call__ = apply

    def apply_linear(self, v) -> Vec3:
        return row_times(v, self.linear)

    def then(self, g: Isometry) -> Isometry:
        """First ``self``, then ``g``."""
        return Isometry._raw(mat_mul(self.linear, g.linear), g.apply(self.translation))

    def __mul__(self, g: Isometry) -> Isometry:
        # word order matches the action: (f * g) applies f first
        return self.then(g)

    def inverse(self) -> Isometry:
        lt = mat_transpose(self.linear)
        return Isometry._raw(lt, -row_times(self.translation, lt))

    def __pow__(self, k: int) -> Isometry:
        if k < 0:
            return self.inverse() ** (-k)
        result = IDENTITY
        base = self
        while k:
            if k & 1:
                result = result.then(base)
            base = base.then(base)
            k >>= 1
        return result

    def conjugate_by(self, g: Isometry) -> Isometry:
        """``g^-1 self g``: the same motion expressed after moving space by ``g``."""
        return g.inverse().then(self).then(g)

    def is_identity(self) -> bool:
        return self.linear == IDENTITY_MATRIX and self.translation.is_zero()

    def is_translation(self) -> bool:
        return self.linear == IDENTITY_MATRIX

    def key(self) -> tuple:
        k = self._key
        if k is None:
            k = self._key = (self.linear, self.translation)
        return k

    def __eq__(self, other):
        if not isinstance(other, Isometry):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        rows = [[str(self.linear[3 * i + j]) for j in range(3)] for i in range(3)]
        return f"Isometry(linear={rows}, translation={[str(c) for c in self.translation]})"

    def radicand(self) -> int:
        ds = {c.d for c in self.linear + tuple(self.translation) if c.q}
        if len(ds) > 1:
            raise IncompatibleRadicands(f"mixed radicands {sorted(ds)}")
        return ds.pop() if ds else 1

    def to_json(self) -> dict:
        return {
            "linear": [[self.linear[3 * i + j].to_json() for j in range(3)] for i in range(3)],
            "translation": self.translation.to_json(),
        }

    @classmethod
    def from_json(cls, obj) -> Isometry:
        rows = [[scalar(e) for e in row] for row in obj["linear"]]
        return cls(rows, Vec3.from_json(obj["translation"]))


IDENTITY = Isometry._raw(IDENTITY_MATRIX, ORIGIN)


def compose(f: Isometry, g: Isometry) -> Isometry:
    """First ``f``, then ``g``."""
    return f.then(g)


def apply(f: Isometry, p) -> Vec3:
    return f.apply(p)


def invert(f: Isometry) -> Isometry:
    return f.inverse()


def word(*gens: Isometry) -> Isometry:
    """Product of isometries applied left to right."""
    out = IDENTITY
    for g in gens:
        out = out.then(g)
    return out


# --------------------------------------------------------------------------- constructors


def translation(v) -> Isometry:
    return Isometry._raw(IDENTITY_MATRIX, Vec3(v))


def linear_map(rows, translation_part=(0, 0, 0)) -> Isometry:
    return Isometry(rows, translation_part)


def plane_reflection(normal, offset=0) -> Isometry:
    """Reflection in the plane ``{x : x . normal = offset}``."""
    n = Vec3(normal)
    c = scalar(offset)
    nn = n.norm2()
    if not nn:
        raise ValueError("zero normal")
    k = Scalar.of(2) / nn
    lin = tuple((ONE if i == j else ZERO) - k * n[i] * n[j] for i in range(3) for j in range(3))
    return Isometry._raw(lin, n * (k * c))


def point_reflection(center=(0, 0, 0)) -> Isometry:
    c = Vec3(center)
    lin = tuple(-e for e in IDENTITY_MATRIX)
    return Isometry._raw(lin, c * 2)


def half_turn(direction, through=(0, 0, 0)) -> Isometry:
    """Half-turn about the line through ``through`` with the given direction."""
    u = Vec3(direction)
    uu = u.norm2()
    k = Scalar.of(2) / uu
    lin = tuple(k * u[i] * u[j] - (ONE if i == j else ZERO) for i in range(3) for j in range(3))
    p = Vec3(through)
    return Isometry._raw(lin, p - row_times(p, lin))


_COS_SIN = {
    1: ("1", "0"),
    2: ("-1", "0"),
    3: ("-1/2", "1/2*sqrt3"),
    4: ("0", "1"),
    6: ("1/2", "1/2*sqrt3"),
}


def rotation(axis, period: int, through=(0, 0, 0), cos=None, sin=None) -> Isometry:
    """Rotation by ``2*pi/period`` (right-handed about ``axis``).

    ``cos``/``sin`` may be given instead for other angles; ``sin`` is divided
    by ``|axis|``, so the product must land in the field.
    """
    u = Vec3(axis)
    uu = u.norm2()
    if cos is None:
        c, s = (scalar(v) for v in _COS_SIN[period])
    else:
        c, s = scalar(cos), scalar(sin)
    s_over = _div_by_norm(s, uu)
    one_c = (ONE - c) / uu
    # column-convention Rodrigues matrix, then transposed for row action
    ux, uy, uz = u
    r = (
        c + one_c * ux * ux, one_c * ux * uy - s_over * uz, one_c * ux * uz + s_over * uy,
        one_c * uy * ux + s_over * uz, c + one_c * uy * uy, one_c * uy * uz - s_over * ux,
        one_c * uz * ux - s_over * uy, one_c * uz * uy + s_over * ux, c + one_c * uz * uz,
    )
    lin = mat_transpose(r)
    p = Vec3(through)
    f = Isometry._raw(lin, p - row_times(p, lin))
    if not f.is_orthogonal():
        raise ValueError("rotation data does not give an orthogonal map")
    return f


def _div_by_norm(s: Scalar, nn: Scalar) -> Scalar:
    # s / sqrt(nn), exact when possible
    if not s:
        return s
    if nn == 1:
        return s
    # try (s^2 / nn) as a perfect square in the field
    target = s * s / nn
    root = field_sqrt(target)
    if root is None:
        raise ValueError("rotation sine is not representable in the field for this axis")
    return root if s.sign() > 0 else -root


def field_sqrt(x: Scalar) -> Scalar | None:
    """Exact nonnegative square root of ``x`` if it lies in some Q(sqrt d), d in {1,2,3,5}."""
    from fractions import Fraction

    from .scalar import RADICANDS

    if x.sign() < 0:
        return None
    if not x:
        return x
    if x.q == 0:
        r = Fraction(x.p, x.n)
        for d in RADICANDS:
            t = r / d
            num, den = _isqrt_exact(t.numerator), _isqrt_exact(t.denominator)
            if num is not None and den is not None:
                return Scalar.from_parts(0, Fraction(num, den), d) if d != 1 else Scalar.of(Fraction(num, den))
        return None
    # (u + v sqrt d)^2 = u^2 + d v^2 + 2uv sqrt d
    a, b, d = x.a, x.b, x.d
    disc = a * a - d * b * b
    sd = _sqrt_fraction(disc)
    if sd is None:
        return None
    for u2 in ((a + sd) / 2, (a - sd) / 2):
        u = _sqrt_fraction(u2)
        if u is None or u == 0:
            continue
        v = b / (2 * u)
        cand = Scalar.from_parts(u, v, d)
        if cand.sign() < 0:
            cand = -cand
        if cand * cand == x:
            return cand
    return None


def _isqrt_exact(n: int):
    import math

    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def _sqrt_fraction(f):
    from fractions import Fraction

    if f < 0:
        return None
    num, den = _isqrt_exact(f.numerator), _isqrt_exact(f.denominator)
    if num is None or den is None:
        return None
    return Fraction(num, den)


# --------------------------------------------------------------------------- classification


@dataclass(frozen=True)
class IsometryKind:
    tag: str
    period: int | None = None  # None = infinite order (or not finite)
    mirror_dim: int | None = None
    point: Vec3 | None = None  # a fixed point / point on the axis
    direction: Vec3 | None = None  # axis direction or plane normal
    shift: Vec3 | None = None  # translation along the axis / in the plane


TAGS = (
    "identity",
    "translation",
    "rotation",
    "point-reflection",
    "line-reflection",
    "plane-reflection",
    "rotatory-reflection",
    "screw",
    "glide",
)


def linear_period(lin: tuple, limit: int = 12) -> int | None:
    """Order of a linear map, or ``None`` beyond ``limit`` (finite orders in
    quadratic fields never exceed 12)."""
    p = lin
    for k in range(1, limit + 1):
        if p == IDENTITY_MATRIX:
            return k
        p = mat_mul(p, lin)
    return None


def _project(t: Vec3, u: Vec3) -> Vec3:
    return u * (t.dot(u) / u.norm2())


def classify_isometry(f: Isometry) -> IsometryKind:
    lin, t = f.linear, f.translation
    det = mat_det(lin).sign()
    if lin == IDENTITY_MATRIX:
        if t.is_zero():
            return IsometryKind("identity", 1, 3, ORIGIN)
        return IsometryKind("translation", None, None, None, t, t)
    if det > 0:
        axis = left_nullspace(mat_sub_identity(lin))[0]
        par = _project(t, axis)
        perp = t - par
        point = solve_left(_neg_sub_identity(lin), perp)
        period = linear_period(lin)
        if par.is_zero():
            if period == 2:
                return IsometryKind("line-reflection", 2, 1, point, axis)
            return IsometryKind("rotation", period, None, point, axis)
        return IsometryKind("screw", None, None, point, axis, par)
    minus = tuple(-e for e in IDENTITY_MATRIX)
    if lin == minus:
        return IsometryKind("point-reflection", 2, 0, t / 2)
    fixed = left_nullspace(mat_sub_identity(lin))
    if len(fixed) == 2:
        normal = left_nullspace(mat_sub_identity(lin, -1))[0]
        perp = _project(t, normal)
        par = t - perp
        point = perp / 2
        if par.is_zero():
            return IsometryKind("plane-reflection", 2, 2, point, normal)
        return IsometryKind("glide", None, None, point, normal, par)
    # rotatory reflection: unique fixed point
    point = solve_left(_neg_sub_identity(lin), t)
    axis = left_nullspace(mat_sub_identity(lin, -1))[0]
    return IsometryKind("rotatory-reflection", linear_period(lin), None, point, axis)


def _neg_sub_identity(lin: tuple) -> tuple:
    # I - L, for solving x (I - L) = t
    return tuple(-e for e in mat_sub_identity(lin))


def mirror_dimension(f: Isometry) -> int | None:
    kind = classify_isometry(f)
    if kind.tag in ("point-reflection", "line-reflection", "plane-reflection"):
        return kind.mirror_dim
    return None


def isometry_from_points(src: Sequence[Vec3], dst: Sequence[Vec3]) -> list[Isometry]:
    """All isometries mapping the points ``src`` onto ``dst`` in order.

    Returns at most two maps when the source points are coplanar, one when
    they span space, and none when no isometry matches.
    """
    o, o2 = src[0], dst[0]
    vs = [p - o for p in src[1:]]
    ws = [p - o2 for p in dst[1:]]
    # pick two independent source directions
    i0 = next((i for i, v in enumerate(vs) if not v.is_zero()), None)
    if i0 is None:
        return []
    a = vs[i0]
    i1 = next((i for i, v in enumerate(vs) if not a.cross(v).is_zero()), None)
    if i1 is None:
        return []
    b = vs[i1]
    i2 = next((i for i, v in enumerate(vs) if a.cross(b).dot(v)), None)
    candidates = []
    if i2 is not None:
        frames = [(vs[i2], ws[i2])]
    else:
        n, n2 = a.cross(b), ws[i0].cross(ws[i1])
        frames = [(n, n2), (n, -n2)]
    for c_src, c_dst in frames:
        m = (a[0], a[1], a[2], b[0], b[1], b[2], c_src[0], c_src[1], c_src[2])
        m2 = (ws[i0][0], ws[i0][1], ws[i0][2], ws[i1][0], ws[i1][1], ws[i1][2], c_dst[0], c_dst[1], c_dst[2])
        try:
            lin = mat_mul(mat_inverse(m), m2)
        except ZeroDivisionError:
            continue
        if mat_mul(lin, mat_transpose(lin)) != IDENTITY_MATRIX:
            continue
        f = Isometry._raw(lin, o2 - row_times(o, lin))
        if all(f.apply(p) == q for p, q in zip(src, dst)):
            candidates.append(f)
    return candidates
