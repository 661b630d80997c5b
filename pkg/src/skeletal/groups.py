"""Discrete isometry groups given by generators.

Orbits are enumerated inside a ball about the origin, translation lattices
are discovered from bounded words, and special (point) groups are named by
a census of their element kinds.
"""

from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NonDiscrete, NotCrystallographic, RankDeficient
from .geometry import (
    IDENTITY,
    IDENTITY_MATRIX,
    ORIGIN,
    Isometry,
    Vec3,
    classify_isometry,
    rank,
)
from .scalar import ONE, Scalar, scalar

DEFAULT_WORD_LENGTH = 12
DEFAULT_ELEMENT_BOUND = 10_000


@dataclass
class IsometryGroup:
    generators: list[Isometry]
    label: str | None = None

    def __post_init__(self):
        gens = []
        for g in self.generators:
            if g not in gens:
                gens.append(g)
        self.generators = gens

    def with_inverses(self) -> list[Isometry]:
        out = list(self.generators)
        for g in self.generators:
            gi = g.inverse()
            if gi not in out:
                out.append(gi)
        return out

    def to_json(self) -> dict:
        return {"label": self.label or "", "generators": [g.to_json() for g in self.generators]}

    @classmethod
    def from_json(cls, obj) -> IsometryGroup:
        return cls([Isometry.from_json(g) for g in obj["generators"]], obj.get("label") or None)


def closure(generators: Iterable[Isometry], bound: int = DEFAULT_ELEMENT_BOUND) -> list[Isometry]:
    """All elements of the finite group generated by ``generators``."""
    gens = list(generators)
    elements = [IDENTITY]
    seen = {IDENTITY}
    queue = deque([IDENTITY])
    while queue:
        h = queue.popleft()
        for g in gens:
            k = h.then(g)
            if k not in seen:
                seen.add(k)
                elements.append(k)
                if len(elements) > bound:
                    raise NotCrystallographic(f"group closure exceeds {bound} elements")
                queue.append(k)
    return elements


def _float_norm(v: Vec3) -> float:
    return math.sqrt(max(float(v.norm2()), 0.0))


def _check_separation(points: Sequence[Vec3], separation: Scalar) -> None:
    sep2 = separation * separation
    cell = max(float(separation), 1e-9)
    grid: dict[tuple, list[Vec3]] = {}
    for p in points:
        f = p.floats()
        key = tuple(int(math.floor(c / cell)) for c in f)
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for dz in (-1, 0, 1):
                    for q in grid.get((key[0] + dx, key[1] + dy, key[2] + dz), ()):
                        if (p - q).norm2() < sep2:
                            raise NonDiscrete(f"orbit points {p} and {q} are closer than {separation}")
        grid.setdefault(key, []).append(p)


def orbit(
    seed,
    group: IsometryGroup,
    radius,
    separation=None,
    pad=None,
    bound: int = 200_000,
) -> set[Vec3]:
    """Orbit points of ``seed`` inside the closed ball of ``radius`` about the origin.

    The search runs in a padded ball so that generator paths leaving the
    window and coming back are still followed.
    """
    radius = scalar(radius)
    if radius.sign() <= 0:
        raise ValueError("window radius must be positive")
    gens = group.with_inverses()
    seed = Vec3(seed)
    if pad is None:
        pad = 2 * max((_float_norm(g.translation) for g in gens), default=0.0) + 2 * _float_norm(seed)
    outer = float(radius) + float(pad)
    outer2 = Scalar.of(Fraction(outer).limit_denominator(1000)) ** 2
    seen = {seed}
    queue = deque([seed])
    while queue:
        p = queue.popleft()
        for g in gens:
            q = g.apply(p)
            if q in seen:
                continue
            if q.norm2() > outer2:
                continue
            seen.add(q)
            if len(seen) > bound:
                raise NonDiscrete(f"more than {bound} orbit points in the search ball")
            queue.append(q)
    r2 = radius * radius
    inside = {p for p in seen if p.norm2() <= r2}
    if separation is not None:
        _check_separation(list(seen), scalar(separation))
    return inside


# --------------------------------------------------------------------------- lattices


@dataclass
class Lattice:
    basis: list[Vec3]
    name: str | None = None
    scale: Scalar = field(default_factory=lambda: ONE)

    def __post_init__(self):
        self.basis = [Vec3(b) for b in self.basis]
        self.scale = scalar(self.scale)
        if rank(self.basis) != len(self.basis):
            raise ValueError("lattice basis vectors are linearly dependent")

    @property
    def rank(self) -> int:
        return len(self.basis)

    def coordinates(self, p) -> list[Scalar] | None:
        """Coefficients of ``p`` in the basis, or ``None`` outside the span."""
        p = Vec3(p)
        k = len(self.basis)
        if k == 0:
            return [] if p.is_zero() else None
        # solve sum c_i b_i = p via normal equations on the Gram matrix
        gram = [[self.basis[i].dot(self.basis[j]) for j in range(k)] for i in range(k)]
        rhs = [self.basis[i].dot(p) for i in range(k)]
        from .geometry import row_reduce

        red, piv = row_reduce([gram[i] + [rhs[i]] for i in range(k)])
        if k in piv:
            return None
        coeffs = [red[i][k] for i in range(k)]
        back = ORIGIN
        for c, b in zip(coeffs, self.basis):
            back = back + b * c
        if back != p:
            return None
        return coeffs

    def contains(self, p) -> bool:
        c = self.coordinates(p)
        return c is not None and all(x.q == 0 and x.n == 1 for x in c)

    def same_lattice(self, other: Lattice) -> bool:
        return (
            self.rank == other.rank
            and all(other.contains(b) for b in self.basis)
            and all(self.contains(b) for b in other.basis)
        )

    def to_json(self) -> dict:
        return {"basis": [b.to_json() for b in self.basis], "name": self.name, "scale": self.scale.to_json()}

    @classmethod
    def from_json(cls, obj) -> Lattice:
        return cls([Vec3.from_json(b) for b in obj["basis"]], obj.get("name"), scalar(obj.get("scale", 1)))


def cubic_lattice(a=1) -> Lattice:
    a = scalar(a)
    return Lattice([Vec3(a, 0, 0), Vec3(0, a, 0), Vec3(0, 0, a)], "aZ3", a)


def fcc_lattice(a=1) -> Lattice:
    """Lambda_(a,a,0): generated by (a,a,0) and its coordinate permutations and sign changes."""
    a = scalar(a)
    return Lattice([Vec3(a, a, 0), Vec3(a, 0, a), Vec3(0, a, a)], "Lambda(a,a,0)", a)


def bcc_lattice(a=1) -> Lattice:
    """Lambda_(a,a,a)."""
    a = scalar(a)
    return Lattice([Vec3(a, a, a), Vec3(a, -a, -a), Vec3(-a, a, -a)], "Lambda(a,a,a)", a)


def _hnf_rows(rows: list[list[int]]) -> list[list[int]]:
    """Row-style Hermite normal form (nonzero rows only) of an integer matrix."""
    m = [list(r) for r in rows if any(r)]
    ncols = len(rows[0]) if rows else 0
    out = []
    col = 0
    while m and col < ncols:
        nz = [r for r in m if r[col] != 0]
        if not nz:
            col += 1
            continue
        while True:
            nz = [r for r in m if r[col] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            for r in nz[1:]:
                q = r[col] // piv[col]
                for j in range(ncols):
                    r[j] -= q * piv[j]
            m = [r for r in m if any(r)]
        piv = next(r for r in m if r[col] != 0)
        if piv[col] < 0:
            piv[:] = [-x for x in piv]
        out.append(piv)
        m = [r for r in m if r is not piv]
        col += 1
    return out


def lattice_from_vectors(vectors: Iterable[Vec3]) -> list[Vec3]:
    """Basis of the lattice generated by ``vectors`` (assumed discrete)."""
    vecs = [Vec3(v) for v in vectors if not Vec3(v).is_zero()]
    if not vecs:
        return []
    vecs.sort(key=lambda v: float(v.norm2()))
    frame: list[Vec3] = []
    for v in vecs:
        if rank(frame + [v]) > len(frame):
            frame.append(v)
        if len(frame) == 3:
            break
    k = len(frame)
    probe = Lattice(frame)
    coords = []
    den = 1
    for v in vecs:
        c = probe.coordinates(v)
        if c is None:
            raise NonDiscrete("translation vectors are not commensurate")
        if any(x.q for x in c):
            raise NonDiscrete("translation vectors are not commensurate")
        fr = [Fraction(x.p, x.n) for x in c]
        coords.append(fr)
        for x in fr:
            den = den * x.denominator // math.gcd(den, x.denominator)
    int_rows = [[int(x * den) for x in c] for c in coords]
    hnf = _hnf_rows(int_rows)
    basis = []
    for row in hnf[:k]:
        v = ORIGIN
        for coef, b in zip(row, frame):
            if coef:
                v = v + b * Scalar.of(Fraction(coef, den))
        basis.append(v)
    return reduce_basis(basis)


def reduce_basis(basis: list[Vec3]) -> list[Vec3]:
    """Greedy size reduction with exact norms, shortest vectors first."""
    b = [Vec3(v) for v in basis]
    changed = True
    while changed:
        changed = False
        b.sort(key=lambda v: float(v.norm2()))
        for i in range(len(b)):
            for j in range(len(b)):
                if i == j:
                    continue
                mu = float(b[i].dot(b[j])) / float(b[j].norm2())
                k = round(mu)
                if k:
                    cand = b[i] - b[j] * k
                    if cand.norm2() < b[i].norm2():
                        b[i] = cand
                        changed = True
    b.sort(key=lambda v: (float(v.norm2()), [float(c) for c in v]))
    return b


def group_elements(
    group: IsometryGroup,
    max_translation,
    word_length: int = DEFAULT_WORD_LENGTH,
    bound: int = DEFAULT_ELEMENT_BOUND,
) -> list[Isometry]:
    """Elements reachable by words of bounded length with small translation parts."""
    lim = scalar(max_translation)
    lim2 = lim * lim
    gens = group.with_inverses()
    seen = {IDENTITY}
    frontier = [IDENTITY]
    for _ in range(word_length):
        nxt = []
        for h in frontier:
            for g in gens:
                k = h.then(g)
                if k in seen or k.translation.norm2() > lim2:
                    continue
                seen.add(k)
                nxt.append(k)
                if len(seen) >= bound:
                    return list(seen)
        if not nxt:
            break
        frontier = nxt
    return list(seen)


def translation_subgroup(
    group: IsometryGroup,
    search_window=4,
    word_length: int = DEFAULT_WORD_LENGTH,
    bound: int = DEFAULT_ELEMENT_BOUND,
    allow_partial: bool = False,
) -> Lattice:
    """Lattice of translations found among bounded words of the group."""
    elems = group_elements(group, search_window, word_length, bound)
    by_linear: dict[tuple, list[Vec3]] = {}
    for e in elems:
        by_linear.setdefault(e.linear, []).append(e.translation)
    vectors = set()
    for ts in by_linear.values():
        t0 = ts[0]
        for t in ts[1:]:
            vectors.add(t - t0)
        # differences to a second base catch short vectors missed by t0
        if len(ts) > 2:
            t1 = ts[1]
            for t in ts[2:]:
                vectors.add(t - t1)
    vectors.discard(ORIGIN)
    basis = lattice_from_vectors(vectors)
    if len(basis) < 3 and not allow_partial:
        raise RankDeficient(len(basis))
    return Lattice(basis)


# --------------------------------------------------------------------------- point groups


@dataclass
class PointGroup:
    elements: list[Isometry]
    name: str | None = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def census(self) -> Counter:
        return Counter(_kind_label(e) for e in self.elements)

    def contains_linear(self, lin: tuple) -> bool:
        return any(e.linear == lin for e in self.elements)


def _kind_label(e: Isometry) -> tuple:
    k = classify_isometry(e)
    return (k.tag, k.period)


def special_group(group: IsometryGroup, bound: int = 1000) -> PointGroup:
    """Group of linear parts (the quotient by the translation subgroup)."""
    lins = []
    for g in group.generators:
        lin = Isometry._raw(g.linear, ORIGIN)
        if lin not in lins:
            lins.append(lin)
    elems = closure(lins, bound)
    pg = PointGroup(elems)
    pg.name = identify_point_group(pg)
    return pg


MINUS_I = tuple(-e for e in IDENTITY_MATRIX)


def _proper_axes(rotations: list[Isometry]) -> Counter:
    """Count distinct rotation axes by order of the cyclic stabilizer."""
    axes: dict[tuple, int] = {}
    for r in rotations:
        k = classify_isometry(r)
        if k.tag in ("rotation", "line-reflection") and k.period:
            d = k.direction
            # canonical direction up to sign and scale
            lead = next(c for c in d if c)
            key = tuple(c / lead for c in d)
            axes[key] = max(axes.get(key, 1), k.period)
    return Counter(axes.values())


def identify_point_group(pg: PointGroup) -> str:
    """Name a finite point group from its order and element-kind census."""
    n = pg.order
    census = pg.census()
    rotations = [e for e in pg.elements if e.det() > 0]
    improper = n - len(rotations)
    planes = census.get(("plane-reflection", 2), 0)
    has_minus_i = any(e.linear == MINUS_I for e in pg.elements)
    if n == 1:
        return "1"
    nrot = len(rotations)
    axes = _proper_axes(rotations)
    # rotation subgroup type
    if nrot == 60:
        rot = "I"
    elif nrot == 24 and axes.get(4, 0) == 3:
        rot = "O"
    elif nrot == 12 and axes.get(3, 0) == 4:
        rot = "T"
    else:
        top = max(axes) if axes else 1
        many = sum(axes.values())
        if nrot == 1:
            rot = "C1"
        elif many <= 1:
            rot = f"C{top}"
        else:
            rot = f"D{nrot // 2}"
    if improper == 0:
        return {"I": "[3,5]+", "O": "[3,4]+", "T": "[3,3]+"}.get(rot, rot)
    if rot == "I":
        return "[3,5]"
    if rot == "O":
        return "[3,4]"
    if rot == "T":
        if has_minus_i:
            return "[3,3]+x<-I>"
        if nrot == 12 and n == 24 and axes.get(4, 0) == 0 and planes == 6:
            return "[3,3]"
        return f"order-{n}"
    # axial groups
    if rot == "C1":
        return "Ci" if has_minus_i else ("Cs" if planes else f"order-{n}")
    k = int(rot[1:])
    if rot.startswith("C"):
        if planes == k:
            return f"C{k}v"
        if planes == 1:
            return f"C{k}h"
        return f"S{2 * k}"
    if planes == k + 1:
        return f"D{k}h"
    return f"D{k}d"


# --------------------------------------------------------------------------- named vertex sets


VERTEX_SET_KINDS = ("aZ3", "Lambda(a,a,0)", "Lambda(a,a,a)", "V_a", "W_a")


@dataclass(frozen=True)
class VertexSetPredicate:
    kind: str
    a: Scalar = ONE
    lattice: Lattice | None = None

    def __contains__(self, p) -> bool:
        return vertex_set_member(p, self)


def _int_coords(p: Vec3, a: Scalar):
    out = []
    for c in p:
        x = c / a
        if x.q or x.n != 1:
            return None
        out.append(x.p)
    return out


def vertex_set_member(p, pred: VertexSetPredicate) -> bool:
    p = Vec3(p)
    if pred.kind == "lattice":
        return pred.lattice.contains(p)
    a = scalar(pred.a)
    x = _int_coords(p, a)
    if x is None:
        return False
    if pred.kind == "aZ3":
        return True
    if pred.kind == "Lambda(a,a,0)":
        return sum(x) % 2 == 0
    if pred.kind == "Lambda(a,a,a)":
        return x[0] % 2 == x[1] % 2 == x[2] % 2
    if pred.kind == "V_a":
        # remove (0,0,a) + Lambda_(a,a,a): parities (e,e,o) and (o,o,e)
        y = [x[0], x[1], x[2] - 1]
        return not (y[0] % 2 == y[1] % 2 == y[2] % 2)
    if pred.kind == "W_a":
        def in_2fcc(v):
            return all(c % 2 == 0 for c in v) and (sum(v) // 2) % 2 == 0

        return in_2fcc(x) or in_2fcc([x[0] - 1, x[1] + 1, x[2] - 1])
    raise ValueError(f"unknown vertex-set kind {pred.kind!r}")


def named_predicate(kind: str, a=1) -> VertexSetPredicate:
    return VertexSetPredicate(kind, scalar(a))
