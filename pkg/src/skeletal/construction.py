"""Building complexes from symmetry data.

Everything funnels into :func:`materialize`, an orbit construction driven by
three pieces of data at a base vertex ``F0``:

* ``edge_map``: an isometry sending ``F0`` to a neighbour,
* ``stabilizer``: generators of the vertex stabilizer ``G_F0``,
* ``face_step``: an isometry advancing ``F0`` along the base face.

Wythoff's construction, 2-skeletons of rank-4 apeirotopes and the chiral
variant only differ in how these three are chosen.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    CentersRequired,
    DegenerateFace,
    InvariantViolation,
    NoSolution,
    NotAPolyhedron,
    NotBipartite,
    NotCrystallographic,
    RelationViolation,
    SizeLimit,
    UnknownFamily,
    WindowTooSmall,
    ZeroScale,
)
from .geometry import (
    IDENTITY,
    IDENTITY_MATRIX,
    ORIGIN,
    Isometry,
    Vec3,
    left_nullspace,
    linear_period,
    mat_det,
    mat_inverse,
    mat_mul,
    plane_reflection,
    rank,
    row_times,
)
from .groups import closure
from .incidence import (
    BoundaryContact,
    Face,
    Flag,
    PolygonalComplex,
    validate_complex,
    adjacent,
    build_complex,
    canonical_cycle,
    flags_at,
    polygon_step,
    Polygon,
    sort_key,
)
from .scalar import ONE, ZERO, Scalar, scalar

MAX_FACE_LENGTH = 60
DEFAULT_MAX_VERTICES = 50_000


# --------------------------------------------------------------------------- generator records


def _isos_json(isos):
    return [g.to_json() for g in isos]


@dataclass(frozen=True)
class GeneratorTriple:
    """Distinguished generators ``R0, R1`` and generators of ``G2``.

    In the polyhedron case ``g2`` holds the single reflection ``R2``.
    """

    r0: Isometry
    r1: Isometry
    g2: tuple
    base_vertex: Vec3 = ORIGIN

    def __post_init__(self):
        object.__setattr__(self, "g2", tuple(self.g2))
        object.__setattr__(self, "base_vertex", Vec3(self.base_vertex))
        self.check()

    @classmethod
    def polyhedral(cls, r0, r1, r2, base_vertex) -> GeneratorTriple:
        return cls(r0, r1, (r2,), base_vertex)

    @property
    def is_polyhedral(self) -> bool:
        return len(self.g2) == 1 and (self.g2[0] * self.g2[0]).is_identity()

    @property
    def r2(self) -> Isometry:
        if len(self.g2) != 1:
            raise NotAPolyhedron("G2 is not generated by a single reflection")
        return self.g2[0]

    def g2_elements(self) -> list[Isometry]:
        return closure(self.g2, bound=48)

    @property
    def r(self) -> int:
        return len(self.g2_elements())

    def check(self) -> None:
        for name, g in (("R0", self.r0), ("R1", self.r1)):
            if not (g * g).is_identity():
                raise InvariantViolation(f"{name} is not an involution")
        f0 = self.base_vertex
        if self.r1.apply(f0) != f0:
            raise InvariantViolation("R1 does not fix the base vertex")
        if self.r0.apply(f0) == f0:
            raise DegenerateFace("R0 fixes the base vertex")
        try:
            g2 = closure(self.g2, bound=48)
        except NotCrystallographic as exc:
            raise InvariantViolation("G2 is not finite") from exc
        f1 = self.r0.apply(f0)
        for g in g2:
            if g.apply(f0) != f0 or g.apply(f1) != f1:
                raise InvariantViolation("G2 does not fix the base edge pointwise")
        if self.is_polyhedral:
            r02 = self.r0 * self.g2[0]
            if not (r02 * r02).is_identity():
                raise InvariantViolation("(R0 R2)^2 is not the identity")
        else:
            ginv = self.r0.inverse()
            gset = set(g2)
            for g in g2:
                if ginv.then(g).then(self.r0) not in gset:
                    raise InvariantViolation("R0 does not normalize G2")

    # derived data ------------------------------------------------------------

    def group_generators(self) -> list[Isometry]:
        return [self.r0, self.r1, *self.g2]

    def face_step(self) -> Isometry:
        """``R1 R0`` (first R1, then R0): advances ``F0`` to ``F0 R0``."""
        return self.r1 * self.r0

    def to_json(self) -> dict:
        return {
            "type": "generator-triple",
            "r0": self.r0.to_json(),
            "r1": self.r1.to_json(),
            "g2": _isos_json(self.g2),
            "base_vertex": self.base_vertex.to_json(),
        }

    @classmethod
    def from_json(cls, obj) -> GeneratorTriple:
        return cls(
            Isometry.from_json(obj["r0"]),
            Isometry.from_json(obj["r1"]),
            tuple(Isometry.from_json(g) for g in obj["g2"]),
            Vec3.from_json(obj["base_vertex"]),
        )

    def conjugate(self, g: Isometry) -> GeneratorTriple:
        """The same structure moved by ``g``."""
        return GeneratorTriple(
            self.r0.conjugate_by(g),
            self.r1.conjugate_by(g),
            tuple(x.conjugate_by(g) for x in self.g2),
            g.apply(self.base_vertex),
        )


@dataclass(frozen=True)
class Rank4Generators:
    t: tuple  # (T0, T1, T2, T3)
    base_vertex: Vec3 = ORIGIN

    def __post_init__(self):
        object.__setattr__(self, "t", tuple(self.t))
        object.__setattr__(self, "base_vertex", Vec3(self.base_vertex))
        if len(self.t) != 4:
            raise InvariantViolation("four generators are required")
        for i, g in enumerate(self.t):
            if not (g * g).is_identity():
                raise InvariantViolation(f"T{i} is not an involution")
        for i in range(4):
            for j in range(i + 2, 4):
                x = self.t[i] * self.t[j]
                if not (x * x).is_identity():
                    raise InvariantViolation(f"(T{i} T{j})^2 is not the identity")
        for i in (1, 2, 3):
            if self.t[i].apply(self.base_vertex) != self.base_vertex:
                raise InvariantViolation(f"T{i} does not fix the base vertex")

    def to_json(self) -> dict:
        return {
            "type": "rank4",
            "t": _isos_json(self.t),
            "base_vertex": self.base_vertex.to_json(),
        }

    @classmethod
    def from_json(cls, obj) -> Rank4Generators:
        return cls(tuple(Isometry.from_json(g) for g in obj["t"]), Vec3.from_json(obj["base_vertex"]))


@dataclass(frozen=True)
class ChiralGeneratorPair:
    s1: Isometry
    s2: Isometry
    base_vertex: Vec3 = ORIGIN
    params: tuple = ()
    family: str | None = None
    p: int | None = None  # face length, None for helical faces
    q: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "base_vertex", Vec3(self.base_vertex))
        object.__setattr__(self, "params", tuple(scalar(x) for x in self.params))
        if self.s2.apply(self.base_vertex) != self.base_vertex:
            raise InvariantViolation("S2 does not fix the base vertex")

    @property
    def t(self) -> Isometry:
        return self.s1 * self.s2

    def relations(self) -> dict[str, bool]:
        """The defining relations, each checked exactly."""
        out = {}
        if self.p is not None:
            out["S1^p"] = (self.s1 ** self.p).is_identity()
        if self.q is not None:
            out["S2^q"] = (self.s2 ** self.q).is_identity()
        t = self.t
        out["(S1S2)^2"] = (t * t).is_identity()
        return out

    def check_relations(self) -> None:
        bad = [k for k, ok in self.relations().items() if not ok]
        if bad:
            raise RelationViolation(f"relations fail: {', '.join(bad)}")

    def to_json(self) -> dict:
        return {
            "type": "chiral-pair",
            "s1": self.s1.to_json(),
            "s2": self.s2.to_json(),
            "base_vertex": self.base_vertex.to_json(),
            "params": [x.to_json() for x in self.params],
            "family": self.family,
            "p": self.p,
            "q": self.q,
        }

    @classmethod
    def from_json(cls, obj) -> ChiralGeneratorPair:
        return cls(
            Isometry.from_json(obj["s1"]),
            Isometry.from_json(obj["s2"]),
            Vec3.from_json(obj["base_vertex"]),
            tuple(scalar(x) for x in obj.get("params", ())),
            obj.get("family"),
            obj.get("p"),
            obj.get("q"),
        )


# --------------------------------------------------------------------------- orbit engine


@dataclass
class _Template:
    step: Isometry
    cycle: tuple | None  # finite faces: vertex positions starting at F0


def _face_period(f0: Vec3, step: Isometry) -> int | None:
    p = f0
    for j in range(1, MAX_FACE_LENGTH + 1):
        p = step.apply(p)
        if p == f0:
            return j
    return None


def _advance_vector(step: Isometry) -> Vec3:
    """Translation of ``step^m`` where ``m`` is the period of its linear part."""
    m = linear_period(step.linear)
    if m is None:
        raise NotCrystallographic("face step has a linear part of infinite order")
    t = (step**m).translation
    if t.is_zero():
        raise DegenerateFace("face step has finite order but the face does not close")
    return t


def _canon_positions(points: Sequence[Vec3]) -> tuple:
    keys = [sort_key(p) for p in points]
    order = {k: i for i, k in enumerate(sorted(set(keys)))}
    return canonical_cycle([order[k] for k in keys]), tuple(sorted(keys))


def _star_templates(f0: Vec3, stab: list[Isometry], step: Isometry) -> tuple[list[_Template], bool]:
    p = _face_period(f0, step)
    finite = p is not None
    if finite:
        if p < 3:
            raise DegenerateFace(f"base face has only {p} distinct vertices")
        base_cycle = []
        x = f0
        for _ in range(p):
            base_cycle.append(x)
            x = step.apply(x)
        if len(set(base_cycle)) != p:
            raise DegenerateFace("base face repeats a vertex")
    else:
        _advance_vector(step)
    seen = set()
    out = []
    for g in stab:
        s = step.conjugate_by(g)
        if finite:
            cyc = tuple(g.apply(x) for x in base_cycle)
            key = frozenset(zip(cyc, cyc[1:] + cyc[:1])) | frozenset(zip(cyc[1:] + cyc[:1], cyc))
        else:
            back = s.inverse()
            w = [back.apply(back.apply(f0)), back.apply(f0), f0, s.apply(f0), s.apply(s.apply(f0))]
            key = frozenset(zip(w, w[1:])) | frozenset(zip(w[1:], w))
            cyc = None
        if key in seen:
            continue
        seen.add(key)
        out.append(_Template(s, cyc))
    return out, finite


def _nbr_maps(f0: Vec3, edge_map: Isometry, stab: list[Isometry]) -> list[tuple[Vec3, Isometry]]:
    out = {}
    for g in stab:
        k = edge_map * g
        n = k.apply(f0)
        if n not in out:
            out[n] = k
    return list(out.items())


def _scalar_sqrt_upper(x: Scalar) -> Scalar:
    """A rational number >= sqrt(x) (x >= 0), close to it."""
    from fractions import Fraction

    v = math.sqrt(max(float(x), 0.0))
    return Scalar.of(Fraction(v).limit_denominator(1000) + Fraction(1, 1000))


def materialize(
    base: Vec3,
    edge_map: Isometry,
    stabilizer: Iterable[Isometry],
    face_step: Isometry,
    window=None,
    *,
    scale=None,
    label: str | None = None,
    max_vertices: int = DEFAULT_MAX_VERTICES,
    validate: bool = True,
    periodicity=None,
) -> PolygonalComplex:
    """Orbit construction of a complex.

    ``window=None`` builds the complete (finite) structure.  Otherwise the
    vertices within ``window`` of the origin are interior, and the complex is
    materialized out to ``window`` plus the star radius so that every interior
    star is complete; infinite faces become vertex paths.
    """
    f0 = Vec3(base)
    stab = closure(list(stabilizer) or [IDENTITY], bound=240)
    for g in stab:
        if g.apply(f0) != f0:
            raise InvariantViolation("stabilizer generator moves the base vertex")
    nbrs = _nbr_maps(f0, edge_map, stab)
    templates, finite_faces = _star_templates(f0, stab, face_step)
    edge_len2 = (nbrs[0][0] - f0).norm2()
    if scale is None:
        scale = _scalar_sqrt_upper(edge_len2) if edge_len2.is_rational() else ONE
    scale = scalar(scale)

    # --- vertices, with one group element h_v per vertex (F0 h_v = v)
    if window is None:
        R2 = None
        lim2 = None
    else:
        R = scalar(window)
        R2 = R * R
        star2 = edge_len2
        for t in templates:
            pts = t.cycle if t.cycle is not None else _window_points(f0, t.step, 2)
            for x in pts:
                d = (x - f0).norm2()
                if d > star2:
                    star2 = d
        rho = _scalar_sqrt_upper(star2)
        extent = R + rho
        R2 = extent * extent
        lim = extent + rho * 2
        lim2 = lim * lim
    h_of: dict[Vec3, Isometry] = {f0: IDENTITY}
    queue = deque([f0])
    while queue:
        v = queue.popleft()
        h = h_of[v]
        for n, k in nbrs:
            u = h.apply(n)
            if u in h_of:
                continue
            if lim2 is not None and u.norm2() > lim2:
                continue
            h_of[u] = k * h
            queue.append(u)
            if len(h_of) > max_vertices:
                if window is None:
                    raise NotCrystallographic(
                        f"vertex orbit exceeds {max_vertices} points; pass a window for infinite structures"
                    )
                raise SizeLimit(f"more than {max_vertices} vertices in the padded window")

    if R2 is None:
        core = list(h_of)
    else:
        core = [v for v in h_of if v.norm2() <= R2]
    core.sort(key=lambda p: (float(p.norm2()), sort_key(p)))
    index = {v: i for i, v in enumerate(core)}
    vertices = list(core)

    def vid(p: Vec3) -> int:
        i = index.get(p)
        if i is None:
            i = index[p] = len(vertices)
            vertices.append(p)
        return i

    in_core = set(core)
    edges = set()
    faces: dict[tuple, Face] = {}
    interior = []
    seen_windows: set = set()
    for v in core:
        h = h_of[v]
        i = index[v]
        complete = True
        for n, _ in nbrs:
            u = h.apply(n)
            if u in in_core:
                j = index[u]
                edges.add((i, j) if i < j else (j, i))
            else:
                complete = False
        for t in templates:
            if t.cycle is not None:
                pts = [h.apply(x) for x in t.cycle]
                if all(x in in_core for x in pts):
                    ids = tuple(index[x] for x in pts)
                    key = (True, canonical_cycle(ids))
                    if key not in faces:
                        faces[key] = Face(ids, True, None)
                else:
                    complete = False
                continue
            s = t.step.conjugate_by(h)
            w = _window_points(v, s, 2)
            if not all(x in in_core for x in w):
                complete = False
            wk = frozenset(zip(w, w[1:])) | frozenset(zip(w[1:], w))
            if wk in seen_windows:
                continue
            path, step = _walk_infinite(v, s, R2)
            if path is None:
                continue
            ids = tuple(vid(x) for x in path)
            for a, b in zip(path, path[1:]):
                seen_windows.add(frozenset({(a, b), (b, a)}))
            for m in range(len(path) - 4):
                ww = path[m : m + 5]
                seen_windows.add(frozenset(zip(ww, ww[1:])) | frozenset(zip(ww[1:], ww)))
            key = (False, min(ids, ids[::-1]))
            if key not in faces:
                faces[key] = Face(ids, False, step)
        if complete and (window is None or v.norm2() <= R * R):
            interior.append(i)
    for f in faces.values():
        for a, b in f.edges():
            edges.add((a, b) if a < b else (b, a))
    face_list = sorted(faces.values(), key=lambda f: f.ids)
    if window is None:
        interior = range(len(vertices))
    return build_complex(
        vertices,
        sorted(edges),
        face_list,
        window=None if window is None else scalar(window),
        extent=None if window is None else extent,
        periodicity=periodicity,
        interior=interior,
        scale=scale,
        label=label,
        validate=validate,
    )


def _window_points(v: Vec3, step: Isometry, k: int) -> list[Vec3]:
    back = step.inverse()
    left = []
    x = v
    for _ in range(k):
        x = back.apply(x)
        left.append(x)
    right = []
    x = v
    for _ in range(k):
        x = step.apply(x)
        right.append(x)
    return left[::-1] + [v] + right


def _walk_infinite(v: Vec3, step: Isometry, R2: Scalar):
    """Contiguous stretch of the infinite face through ``v`` meeting the ball.

    Returns the vertex path from the first to the last in-ball vertex, oriented
    along ``step``, together with that step.
    """
    d = _advance_vector(step)
    dd = d.dot(d)
    lim = R2 * dd

    def beyond(x: Vec3, forward: bool) -> bool:
        s = x.dot(d)
        if forward and s.sign() <= 0:
            return False
        if not forward and s.sign() >= 0:
            return False
        return s * s > lim

    fwd = [v]
    x = v
    while True:
        x = step.apply(x)
        if beyond(x, True):
            break
        fwd.append(x)
    back = step.inverse()
    bwd = []
    x = v
    while True:
        x = back.apply(x)
        if beyond(x, False):
            break
        bwd.append(x)
    seq = bwd[::-1] + fwd
    inside = [i for i, x in enumerate(seq) if x.norm2() <= R2]
    if not inside:
        return None, step
    return seq[inside[0] : inside[-1] + 1], step


# --------------------------------------------------------------------------- constructions


def wythoff(gen: GeneratorTriple, window=None, **kw) -> PolygonalComplex:
    """Wythoff's construction: base edge ``{F0, F0 R0}``, base face the orbit
    of ``F0`` under ``<R0, R1>``, everything else by the group."""
    return materialize(
        gen.base_vertex,
        gen.r0,
        [gen.r1, *gen.g2],
        gen.face_step(),
        window,
        **kw,
    )


def two_skeleton(gen: Rank4Generators, window=None, **kw) -> PolygonalComplex:
    t0, t1, t2, t3 = gen.t
    return materialize(gen.base_vertex, t0, [t1, t2, t3], t1 * t0, window, **kw)


def petrie_swap_rank4(gen: Rank4Generators) -> Rank4Generators:
    t0, t1, t2, t3 = gen.t
    t13 = t1 * t3
    if not (t13 * t13).is_identity():
        raise InvariantViolation("T1 T3 is not an involution")
    return Rank4Generators((t0, t13, t2, t3), gen.base_vertex)


def petrie_generators(gen: GeneratorTriple) -> GeneratorTriple:
    """Generators ``(R0 R2, R1, R2)`` of the Petrie dual of a regular polyhedron."""
    if not gen.is_polyhedral:
        raise NotAPolyhedron("the Petrie operation needs a single reflection R2")
    r2 = gen.g2[0]
    return GeneratorTriple(gen.r0 * r2, gen.r1, (r2,), gen.base_vertex)


def dual_generators(gen: GeneratorTriple, base_vertex=None) -> GeneratorTriple:
    """Generators ``(R2, R1, R0)`` of the dual; the new base vertex must be fixed
    by ``R1`` and ``R0`` (e.g. the centre of the base face)."""
    if not gen.is_polyhedral:
        raise NotAPolyhedron("duality needs a polyhedron")
    if base_vertex is None:
        raise CentersRequired("a base face centre is required")
    return GeneratorTriple(gen.g2[0], gen.r1, (gen.r0,), base_vertex)


def _require_polyhedron(k: PolygonalComplex) -> None:
    counts = k.face_counts()
    if set(counts) - {2}:
        raise NotAPolyhedron(f"edges lie in {sorted(counts)} faces; a polyhedron needs exactly 2")


def trace_circuit(k: PolygonalComplex, flag: Flag, word: str, max_steps: int = 10_000):
    """Follow ``flag -> flag^word`` repeatedly.

    Returns ``(vertex ids, closed)``.  Open circuits run in both directions
    until they hit a vertex whose star is not materialized.
    """

    def walk(start: Flag, w: str):
        verts = []
        f = start
        for _ in range(max_steps):
            g = f
            try:
                for ch in w:
                    g = adjacent(k, g, int(ch))
            except BoundaryContact:
                if g.vertex != f.vertex:
                    verts.append(g.vertex)
                return verts, False
            if g == start:
                return verts, True
            verts.append(g.vertex)
            f = g
        raise WindowTooSmall("circuit did not close within the step limit")

    fwd, closed = walk(flag, word)
    if closed:
        return [flag.vertex] + fwd, True
    bwd, closed_b = walk(flag, word[::-1])
    return bwd[::-1] + [flag.vertex] + fwd, False


def _circuit_complex(k: PolygonalComplex, word: str, label: str | None, validate: bool = True) -> PolygonalComplex:
    _require_polyhedron(k)
    faces: dict[tuple, Face] = {}
    for v in sorted(k.interior):
        for fl in flags_at(k, v):
            ids, closed = trace_circuit(k, fl, word)
            if not closed and len(ids) > 3 and ids[0] == ids[-1] and len(set(ids)) == len(ids) - 1:
                # a closed circuit cut open where it leaves the interior
                ids, closed = ids[:-1], True
            if closed:
                if len(ids) < 3:
                    continue
                face = Face(tuple(ids), True, None)
            else:
                pos = [k.vertices[i] for i in ids]
                if len(set(ids)) != len(ids):
                    raise WindowTooSmall("an open circuit revisits a vertex inside the window")
                step = polygon_step(Polygon(tuple(pos), False)) if len(ids) >= 5 else None
                face = Face(tuple(ids), False, step)
            key = face.key()
            if key not in faces:
                faces[key] = face
    if k.window is None and any(not f.closed for f in faces.values()):
        raise WindowTooSmall("a circuit of a finite polyhedron did not close")
    face_list = list(faces.values())
    interior = []
    if k.window is None:
        interior = list(range(len(k.vertices)))
    else:
        for v in sorted(k.interior):
            ok = True
            for f in face_list:
                if v in f.ids and not f.closed:
                    i = f.ids.index(v)
                    if i < 2 or i > len(f.ids) - 3:
                        ok = False
                        break
            if ok:
                interior.append(v)
    used_edges = set()
    for f in face_list:
        for a, b in f.edges():
            used_edges.add((a, b) if a < b else (b, a))
    return build_complex(
        k.vertices,
        sorted(set(k.edges) | used_edges),
        face_list,
        window=k.window,
        periodicity=k.periodicity,
        interior=interior,
        scale=k.scale,
        label=label,
        # circuits are only traced through the window itself
        extent=k.window,
        validate=validate,
    )


def petrie_dual(k: PolygonalComplex, label: str | None = None) -> PolygonalComplex:
    """Same vertices and edges; faces are the Petrie polygons of ``k``."""
    return _circuit_complex(k, "012", label)


def facetting(k: PolygonalComplex, label: str | None = None) -> PolygonalComplex:
    """Same vertices and edges; faces are the holes of ``k``.

    A hole leaves each vertex by the second edge, counted around the vertex
    from the entering edge, on the side carried along by the flag walk
    ``0, 1, 2, 1``; the walk transports the local orientation, so no global
    orientation is needed.

    The result is not validated as a complex: second exits around a vertex
    of even degree q split into two q/2-cycles, so e.g. the holes of
    {4,6|4} meet each vertex in a disconnected vertex-figure.
    """
    return _circuit_complex(k, "0121", label, validate=False)


def dual(k: PolygonalComplex, centers: dict | None = None, label: str | None = None) -> PolygonalComplex:
    """Vertices at face centres, faces around the vertices of ``k``."""
    _require_polyhedron(k)
    pos: dict[int, Vec3] = {}
    for fid, f in enumerate(k.faces):
        if centers is not None and fid in centers:
            pos[fid] = Vec3(centers[fid])
            continue
        if not f.closed:
            raise CentersRequired("infinite faces have no canonical centre")
        pts = [k.vertices[i] for i in f.ids]
        o = pts[0]
        if rank([p - o for p in pts[1:]]) > 2:
            raise CentersRequired("non-planar faces need user-supplied centres")
        c = pts[0]
        for p in pts[1:]:
            c = c + p
        pos[fid] = c / len(pts)
    # dual vertex for face f is interior when all vertices of f are interior in k
    vid = {fid: i for i, fid in enumerate(sorted(pos))}
    verts = [pos[fid] for fid in sorted(pos)]
    edges = set()
    for e, fs in enumerate(k.edge_faces):
        if len(fs) == 2 and fs[0] in vid and fs[1] in vid:
            a, b = vid[fs[0]], vid[fs[1]]
            edges.add((a, b) if a < b else (b, a))
    faces = []
    for v in sorted(k.interior):
        start = flags_at(k, v)[0]
        cyc = []
        f = start
        while True:
            cyc.append(vid[f.face])
            f = adjacent(k, adjacent(k, f, 2), 1)
            if f == start:
                break
            if len(cyc) > 4 * len(k.vertex_edges[v]):
                raise WindowTooSmall("vertex star does not close")
        faces.append(Face(tuple(cyc), True, None))
    extent = None
    if k.window is not None:
        # a dual face is only present when its vertex of k is interior
        reach = max(
            float((pos[fid] - k.vertices[v]).norm2()) for fid in pos for v in k.faces[fid].ids
        ) ** 0.5
        extent = k.window - scalar(Fraction(reach).limit_denominator(1000) + Fraction(1, 1000))
        if extent.sign() < 0:
            extent = scalar(0)
    inner = [
        vid[fid]
        for fid in sorted(pos)
        if all(x in k.interior for x in k.faces[fid].ids)
        and (extent is None or pos[fid].norm2() <= extent * extent)
    ]
    return build_complex(
        verts,
        sorted(edges),
        faces,
        window=k.window,
        interior=None if k.window is None else inner,
        scale=k.scale,
        label=label,
        extent=extent,
    )


# --------------------------------------------------------------------------- blends

BLEND_COMPONENTS = ("segment", "apeirogon")


def _is_planar_triple(gen: GeneratorTriple) -> bool:
    e3 = Vec3(0, 0, 1)
    if gen.base_vertex.z:
        return False
    for g in gen.group_generators():
        img = g.apply_linear(e3)
        if img != e3 and img != -e3:
            return False
        if g.translation.z:
            return False
    return True


def blend_generators(planar: GeneratorTriple, component: str, h=1) -> GeneratorTriple:
    """Generators of ``planar # {}`` or ``planar # {inf}`` along the z-axis.

    The segment component contributes the reflection ``z -> h - z`` to R0, so
    consecutive vertices alternate between the planes z = 0 and z = h.  The
    apeirogon component also contributes ``z -> -z`` to R1, which makes each
    face rise by ``h`` per edge.
    """
    h = scalar(h)
    if not h:
        raise ZeroScale("blend height must be nonzero")
    if component not in BLEND_COMPONENTS:
        raise ValueError(f"component must be one of {BLEND_COMPONENTS}")
    if not _is_planar_triple(planar):
        raise ValueError("blends need a planar apeirohedron in the plane z = 0")
    flip_h = plane_reflection((0, 0, 1), h / 2)
    r0 = planar.r0 * flip_h
    r1 = planar.r1
    if component == "apeirogon":
        r1 = r1 * plane_reflection((0, 0, 1), 0)
    return GeneratorTriple(r0, r1, planar.g2, planar.base_vertex)


def blend(
    planar: GeneratorTriple,
    component: str,
    h=1,
    window=3,
    *,
    require_bipartite: bool = False,
    **kw,
) -> PolygonalComplex:
    gen = blend_generators(planar, component, h)
    k = wythoff(gen, window, **kw)
    if require_bipartite and component == "segment":
        flat = {}
        for v in k.vertices:
            key = (v.x, v.y)
            if key in flat and flat[key] != v.z:
                raise NotBipartite("the planar edge graph admits no 2-colouring")
            flat[key] = v.z
    return k


# --------------------------------------------------------------------------- chiral families


@dataclass(frozen=True)
class ChiralFamilySpec:
    name: str
    schlafli: tuple  # (p, q) with p None for helical faces
    special: str
    mode: str  # finite | helical
    face_gon: int  # period of the linear part of S1
    regular: tuple  # ((params, label, finite_member), ...)


CHIRAL_FAMILIES = {
    "P": ChiralFamilySpec("P", (6, 6), "[3,3]+x<-I>", "finite", 6,
                          (((1, 1), "{6,6|3}", False), ((1, -1), "{6,6}_4", False))),
    "Q": ChiralFamilySpec("Q", (4, 6), "[3,4]", "finite", 4,
                          (((1, 0), "{4,6}_6", False), ((0, 1), "{4,6|4}", False))),
    "Q*": ChiralFamilySpec("Q*", (6, 4), "[3,4]", "finite", 6,
                           (((1, 0), "{6,4}_6", False), ((0, 1), "{6,4|4}", False))),
    "P1": ChiralFamilySpec("P1", (None, 3), "[3,3]+", "helical", 3,
                           (((1, -1), "{inf,3}^(a)", False), ((1, 1), "{3,3}", True))),
    "P2": ChiralFamilySpec("P2", (None, 3), "[3,4]+", "helical", 4,
                           (((1, 0), "{inf,3}^(b)", False), ((0, 1), "{4,3}", True))),
    "P3": ChiralFamilySpec("P3", (None, 4), "[3,4]+", "helical", 3,
                           (((0, 1), "{inf,4}_(.,*3)", False), ((1, 0), "{3,4}", True))),
}


@dataclass
class ChiralFamily:
    """A solved 2-parameter family: ``S1 = x L1 + c e1 + d e2``, ``S2 = x L2``."""

    spec: ChiralFamilySpec
    l1: tuple
    l2: tuple
    e1: Vec3
    e2: Vec3
    base_vertex: Vec3 = ORIGIN
    notes: dict = field(default_factory=dict)

    @property
    def name(self) -> str:
        return self.spec.name

    def translation(self, c, d) -> Vec3:
        return self.e1 * scalar(c) + self.e2 * scalar(d)

    def instance(self, c=1, d=1) -> ChiralGeneratorPair:
        c, d = scalar(c), scalar(d)
        t = self.translation(c, d)
        if t.is_zero():
            raise NoSolution("all-zero parameters give a degenerate family member")
        s1 = Isometry._raw(self.l1, t)
        s2 = Isometry._raw(self.l2, ORIGIN)
        p, q = self.spec.schlafli
        return ChiralGeneratorPair(s1, s2, self.base_vertex, (c, d), self.name, p, q)

    def dual(self, spec: ChiralFamilySpec) -> ChiralFamily:
        """Family of the duals: ``S1* = S2^-1``, ``S2* = S1^-1``, with the base
        vertex moved to the centre of the old base face (then to the origin)."""
        l1inv, l2inv = mat_inverse(self.l1), mat_inverse(self.l2)
        # centre c of the base face solves c (I - L1) = t
        to_centre = mat_inverse(tuple(-x for x in _sub_id(self.l1)))
        shift = _sub_id(l2inv)

        def move(e: Vec3) -> Vec3:
            return row_times(row_times(e, to_centre), shift)

        return ChiralFamily(spec, l2inv, l1inv, move(self.e1), move(self.e2), ORIGIN, {"dual_of": self.name})

    def regular_members(self) -> list[tuple[tuple, str, bool]]:
        return list(self.spec.regular)

    def to_json(self) -> dict:
        return {
            "family": self.name,
            "l1": [c.to_json() for c in self.l1],
            "l2": [c.to_json() for c in self.l2],
            "e1": self.e1.to_json(),
            "e2": self.e2.to_json(),
        }


def _point_group(name: str) -> list[tuple]:
    """Linear parts of the named cube-aligned point groups."""
    import itertools

    full = []
    for perm in itertools.permutations(range(3)):
        for signs in itertools.product((1, -1), repeat=3):
            m = [ZERO] * 9
            for i in range(3):
                m[3 * i + perm[i]] = Scalar.of(signs[i])
            full.append(tuple(m))
    det = {m: mat_det(m).sign() for m in full}

    def is_even_perm(m):
        # permutation part even <=> rotation group [3,3]+ up to signs with product +1
        perm = [next(j for j in range(3) if m[3 * i + j]) for i in range(3)]
        inv = sum(1 for i in range(3) for j in range(i + 1, 3) if perm[i] > perm[j])
        return inv % 2 == 0

    if name == "[3,4]":
        return full
    if name == "[3,4]+":
        return [m for m in full if det[m] > 0]
    if name == "[3,3]+":
        return [m for m in full if det[m] > 0 and is_even_perm(m)]
    if name == "[3,3]+x<-I>":
        return [m for m in full if is_even_perm(m)]
    raise UnknownFamily(f"no point group named {name!r}")


def _is_rotatory_reflection(m, period) -> bool:
    return mat_det(m).sign() < 0 and linear_period(m) == period and left_nullspace(_sub_id(m)) == []


def _sub_id(m):
    return tuple(m[i] - (ONE if i in (0, 4, 8) else ZERO) for i in range(9))


def _add_id(m):
    return tuple(m[i] + (ONE if i in (0, 4, 8) else ZERO) for i in range(9))


def _is_rotation(m, period) -> bool:
    return mat_det(m).sign() > 0 and linear_period(m) == period


def _group_order(gens: list[tuple]) -> int:
    seen = {IDENTITY_MATRIX}
    frontier = [IDENTITY_MATRIX]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = mat_mul(a, g)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return len(seen)


def _intersect_row_spaces(basis: list[Vec3], m: tuple) -> list[Vec3]:
    """Nonzero vectors ``t`` in the span of two basis vectors with ``t m = 0``
    (one per solution direction)."""
    r0, r1 = (row_times(b, m) for b in basis)
    if r0.is_zero() and r1.is_zero():
        return list(basis)
    if not r0.cross(r1).is_zero():
        return []
    if r0.is_zero():
        return [basis[0]]
    i = next(i for i in range(3) if r0[i])
    k = r1[i] / r0[i]
    return [basis[1] - basis[0] * k]


def _primitive(v: Vec3) -> Vec3:
    """Scale a rational vector to a primitive integer vector."""
    from fractions import Fraction

    fr = [Fraction(c.p, c.n) for c in v]
    den = 1
    for f in fr:
        den = den * f.denominator // math.gcd(den, f.denominator)
    ints = [int(f * den) for f in fr]
    g = 0
    for x in ints:
        g = math.gcd(g, abs(x))
    return Vec3(*(x // g for x in ints))


def _regular_lines(l1, l2, plane: list[Vec3]) -> list[Vec3]:
    """Directions in the translation plane where an extra reflection-like
    symmetry R (R L1 R = L1^-1, R L2 R = L2^-1, t R = -t L1^-1) exists."""
    l1inv = mat_inverse(l1)
    l2inv = mat_inverse(l2)
    lines: list[Vec3] = []
    for r in _point_group("[3,4]"):
        if mat_mul(r, r) != IDENTITY_MATRIX:
            continue
        if mat_mul(mat_mul(r, l1), r) != l1inv or mat_mul(mat_mul(r, l2), r) != l2inv:
            continue
        m = tuple(r[i] + l1inv[i] for i in range(9))
        for v in _intersect_row_spaces(plane, m):
            p = _primitive(v)
            if all(not p.cross(x).is_zero() for x in lines):
                lines.append(p)
    return lines


def _axial_component_zero(l1, t: Vec3) -> bool:
    axis = left_nullspace(_sub_id(l1))
    return not axis or t.dot(axis[0]).is_zero()


def _face_planar(l1, t: Vec3, p: int) -> bool:
    s1 = Isometry._raw(l1, t)
    pts = [ORIGIN]
    for _ in range(p - 1):
        pts.append(s1.apply(pts[-1]))
    return rank([x - pts[0] for x in pts[1:]]) <= 2


def solve_chiral_family(schlafli, special: str, mode: str, *, scales: dict | None = None) -> ChiralFamily:
    """Solve for the linear parts and the translation plane of ``S1``.

    ``schlafli`` is ``(p, q)`` with ``p = None`` (or ``inf``) for helical
    faces.  ``scales`` optionally fixes the lengths of the two regular
    directions (``{label: squared edge length}``).
    """
    p, q = schlafli
    if p in ("inf", math.inf):
        p = None
    spec = next(
        (s for s in CHIRAL_FAMILIES.values() if s.schlafli == (p, q) and s.special == special and s.mode == mode),
        None,
    )
    if spec is None:
        raise UnknownFamily(f"no family of type {{{p},{q}}} with special group {special} in {mode} mode")
    group = _point_group(spec.special)
    order = len(group)
    if mode == "finite":
        c1 = [m for m in group if _is_rotatory_reflection(m, p)]
        c2 = [m for m in group if _is_rotatory_reflection(m, q)]
    else:
        c1 = [m for m in group if _is_rotation(m, spec.face_gon)]
        c2 = [m for m in group if _is_rotation(m, q)]
    c1.sort(key=sort_key)
    c2.sort(key=sort_key)
    for l1 in c1:
        for l2 in c2:
            hmat = mat_mul(l1, l2)
            if mat_mul(hmat, hmat) != IDENTITY_MATRIX or hmat == IDENTITY_MATRIX:
                continue
            if mat_det(hmat).sign() < 0:
                continue
            if _group_order([l1, l2]) != order:
                continue
            # u = t L2 must satisfy u (H + I) = 0
            u_plane = left_nullspace(_add_id(hmat))
            if len(u_plane) != 2:
                continue
            l2inv = mat_inverse(l2)
            plane = [row_times(u, l2inv) for u in u_plane]
            lines = _regular_lines(l1, l2, plane)
            if len(lines) != 2:
                continue
            fam = _normalize_family(spec, l1, l2, lines, scales or {})
            if fam is not None:
                return fam
    raise NoSolution(f"no generator pair realizes family {spec.name}")


def _normalize_family(spec, l1, l2, lines, scales) -> ChiralFamily | None:
    # decide which line carries which regular member
    (pa, la, fa), (pb, lb, fb) = spec.regular
    if spec.mode == "finite":
        planar = [_face_planar(l1, v, spec.schlafli[0]) for v in lines]
        # the member with planar faces is the one whose label has a hole ("|")
        want_a = "|" in la
        if planar[0] == planar[1]:
            return None
        line_a = lines[0] if planar[0] == want_a else lines[1]
    else:
        fin = [_axial_component_zero(l1, v) for v in lines]
        if fin[0] == fin[1]:
            return None
        line_a = lines[0] if fin[0] == fa else lines[1]
    line_b = lines[1] if line_a is lines[0] else lines[0]
    va = _scaled(line_a, scales.get(la))
    vb = _scaled(line_b, scales.get(lb))
    # solve c e1 + d e2 = va at pa, = vb at pb
    (ca, da), (cb, db) = pa, pb
    det = ca * db - da * cb
    e1 = (va * db - vb * da) / det
    e2 = (vb * ca - va * cb) / det
    return ChiralFamily(spec, l1, l2, e1, e2, ORIGIN, {"lines": {la: va, lb: vb}})


def _scaled(v: Vec3, norm2) -> Vec3:
    if norm2 is None:
        return v
    from fractions import Fraction

    ratio = Fraction(scalar(norm2).p, scalar(norm2).n) / Fraction(v.norm2().p, v.norm2().n)
    num = math.isqrt(ratio.numerator)
    den = math.isqrt(ratio.denominator)
    if num * num != ratio.numerator or den * den != ratio.denominator:
        raise NoSolution(f"squared length {norm2} is not reachable by a rational rescaling")
    return v * Scalar.of(Fraction(num, den))


def family(name: str, **kw) -> ChiralFamily:
    spec = CHIRAL_FAMILIES.get(name)
    if spec is None:
        raise UnknownFamily(f"unknown chiral family {name!r}")
    if name == "Q*":
        # the members are the duals of the Q members, parameter for parameter
        return family("Q", **kw).dual(spec)
    return solve_chiral_family(spec.schlafli, spec.special, spec.mode, **kw)


def generate_from_chiral(pair: ChiralGeneratorPair, window=None, **kw) -> PolygonalComplex:
    """Wythoff-type construction from ``S1, S2``: base face ``F0 <S1>``,
    base vertex stabilizer ``<S2>``."""
    pair.check_relations()
    validate = kw.pop("validate", True)
    k = materialize(pair.base_vertex, pair.s1, [pair.s2], pair.s1, window, validate=False, **kw)
    # a degenerate parameter point has a larger vertex stabilizer, which shows
    # up as more than q edges at the base vertex
    degree = len(k.neighbors(k.index[pair.base_vertex]))
    if degree != pair.q:
        raise NoSolution(f"parameters {pair.params} are degenerate: {degree} edges at the base vertex, expected {pair.q}")
    if validate:
        validate_complex(k)
    return k
