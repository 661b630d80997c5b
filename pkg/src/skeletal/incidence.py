"""Polygons, polygonal complexes, flags and vertex-figures.

A :class:`PolygonalComplex` is a finite piece of a (possibly infinite)
structure cut out by a ball about the origin.  Vertices whose whole star
(edges and faces through them) is materialized are *interior*; every
statistic about flags is taken over interior elements only.
"""

from __future__ import annotations

import math
from collections import Counter, defaultdict, deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

from .errors import (
    BoundaryContact,
    DisconnectedEdgeGraph,
    DisconnectedVertexFigure,
    EdgeFaceDeficit,
    NonDiscrete,
    NotRegular,
    SizeLimit,
    ValidationError,
)
from .geometry import (
    Isometry,
    Vec3,
    isometry_from_points,
    linear_period,
    rank,
)
from .groups import Lattice, _check_separation
from .scalar import ONE, Scalar, scalar


def sort_key(p: Sequence[Scalar]) -> tuple:
    """A deterministic total order on exact points (not geometric)."""
    return tuple((c.p, c.q, c.n) for c in p)


def canonical_cycle(ids: Sequence[int]) -> tuple:
    n = len(ids)
    best = None
    for seq in (list(ids), list(reversed(ids))):
        for s in range(n):
            cand = tuple(seq[s:] + seq[:s])
            if best is None or cand < best:
                best = cand
    return best


def canonical_path(ids: Sequence[int]) -> tuple:
    t = tuple(ids)
    r = t[::-1]
    return min(t, r)


# --------------------------------------------------------------------------- polygons


@dataclass(frozen=True)
class Polygon:
    """A finite polygon (cycle) or a materialized stretch of an infinite one.

    ``step`` maps each vertex of an infinite polygon to the next one.
    """

    vertices: tuple
    closed: bool = True
    step: Isometry | None = None

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(Vec3(v) for v in self.vertices))

    @classmethod
    def cycle(cls, points: Iterable) -> Polygon:
        return cls(tuple(points), True)

    @classmethod
    def from_rule(cls, base: Sequence, step: Isometry, count: int = 12, start: int | None = None) -> Polygon:
        """Bi-infinite polygon ``..., v0 S^-1, v0, v0 S, ...`` materialized over
        ``count`` vertices.  ``base`` may hold one vertex or two consecutive ones
        (the second must equal ``step(base[0])``)."""
        v0 = Vec3(base[0])
        if len(base) > 1 and step.apply(v0) != Vec3(base[1]):
            raise ValueError("second base vertex is not the image of the first under the step")
        back = step.inverse()
        if start is None:
            start = -(count // 2)
        p = v0
        for _ in range(-start):
            p = back.apply(p)
        pts = []
        for _ in range(count):
            pts.append(p)
            p = step.apply(p)
        return cls(tuple(pts), False, step)

    def __len__(self):
        return len(self.vertices)

    def edges(self) -> list[tuple[Vec3, Vec3]]:
        v = self.vertices
        out = [(v[i], v[i + 1]) for i in range(len(v) - 1)]
        if self.closed:
            out.append((v[-1], v[0]))
        return out


@dataclass(frozen=True)
class FaceKind:
    tag: str  # convex | star | skew | zigzag | helix | linear
    p: int | None = None  # number of vertices (None for infinite)
    density: int = 1  # star polygons p/density
    k: int | None = None  # helix gonality

    @property
    def label(self) -> str:
        if self.tag == "convex":
            return f"{self.p}_c"
        if self.tag == "star":
            return f"{self.p}/{self.density}"
        if self.tag == "skew":
            return f"{self.p}_s"
        if self.tag == "zigzag":
            return "inf_2"
        if self.tag == "helix":
            return f"inf_{self.k}"
        return "inf"

    @property
    def planar(self) -> bool:
        return self.tag in ("convex", "star", "zigzag", "linear")

    @property
    def finite(self) -> bool:
        return self.p is not None

    def __str__(self):
        return self.label


def _affine_rank(points: Sequence[Vec3]) -> int:
    o = points[0]
    return rank([p - o for p in points[1:]])


def polygon_step(p: Polygon) -> Isometry | None:
    """The isometry advancing every vertex by one position, if one exists."""
    v = p.vertices
    n = len(v)
    if p.closed:
        if n < 3:
            return None
        m = min(n, 4)
        src = [v[i] for i in range(m)]
        dst = [v[(i + 1) % n] for i in range(m)]
        for f in isometry_from_points(src, dst):
            if all(f.apply(v[i]) == v[(i + 1) % n] for i in range(n)):
                return f
        return None
    if p.step is not None:
        return p.step
    if n < 5:
        return None
    for f in isometry_from_points(list(v[:4]), list(v[1:5])):
        if all(f.apply(v[i]) == v[i + 1] for i in range(n - 1)):
            return f
    return None


def is_regular_polygon(p: Polygon) -> bool:
    """True when the polygon admits a shift by one vertex and a reversing
    reflection, i.e. its symmetry group is dihedral and flag-transitive."""
    v = p.vertices
    n = len(v)
    if n < 3 or len(set(v)) != n:
        return False
    if not p.closed and _affine_rank(list(v)) == 1:
        # linear apeirogon: equal steps; the half-turn about a midpoint reverses it
        d = v[1] - v[0]
        return all(v[i + 1] - v[i] == d for i in range(n - 1))
    step = polygon_step(p)
    if step is None:
        return False
    if not p.closed and all(step.apply(v[i]) != v[i + 1] for i in range(n - 1)):
        return False
    # reversal fixing the edge (v0, v1): swaps v_i and v_{1-i}
    if p.closed:
        src = [v[i % n] for i in range(min(n, 4))]
        dst = [v[(1 - i) % n] for i in range(min(n, 4))]
        pairs = [(v[i], v[(1 - i) % n]) for i in range(n)]
    else:
        mid = n // 2
        valid = [i for i in range(n) if 0 <= 2 * mid - 1 - i < n]
        idx = [i for i in valid if i >= mid - 2][:4]
        src = [v[i] for i in idx]
        dst = [v[2 * mid - 1 - i] for i in idx]
        pairs = [(v[i], v[2 * mid - 1 - i]) for i in valid]
    for f in isometry_from_points(src, dst):
        if all(f.apply(a) == b for a, b in pairs):
            return True
    return False


def classify_polygon(p: Polygon) -> FaceKind:
    if not is_regular_polygon(p):
        raise NotRegular("polygon is not regular")
    v = p.vertices
    r = _affine_rank(list(v))
    if p.closed:
        n = len(v)
        if r == 3:
            return FaceKind("skew", n)
        c = v[0]
        for x in v[1:]:
            c = c + x
        c = c / n
        a, b = v[0] - c, v[1] - c
        normal = a.cross(b)
        inside = 0
        for w in v[2:]:
            ww = w - c
            if a.cross(ww).dot(normal).sign() > 0 and ww.cross(b).dot(normal).sign() > 0:
                inside += 1
        density = inside + 1
        return FaceKind("convex" if density == 1 else "star", n, density)
    if r == 1:
        return FaceKind("linear")
    if r == 2:
        return FaceKind("zigzag", None, 1, 2)
    step = polygon_step(p)
    return FaceKind("helix", None, 1, linear_period(step.linear))


# --------------------------------------------------------------------------- complexes


@dataclass(frozen=True)
class Face:
    ids: tuple
    closed: bool = True
    step: Isometry | None = None

    def edges(self) -> list[tuple[int, int]]:
        v = self.ids
        out = [(v[i], v[i + 1]) for i in range(len(v) - 1)]
        if self.closed:
            out.append((v[-1], v[0]))
        return out

    def neighbors_of(self, vid: int) -> tuple[int | None, int | None]:
        """(previous, next) vertex of ``vid`` in this face; ``None`` at path ends."""
        i = self.ids.index(vid)
        n = len(self.ids)
        if self.closed:
            return self.ids[i - 1], self.ids[(i + 1) % n]
        return (self.ids[i - 1] if i > 0 else None, self.ids[i + 1] if i + 1 < n else None)

    def key(self) -> tuple:
        return (True, canonical_cycle(self.ids)) if self.closed else (False, canonical_path(self.ids))


class Flag(NamedTuple):
    vertex: int
    edge: int
    face: int


@dataclass
class GeometricGraph:
    """Finite graph with positioned nodes and link multiplicities."""

    nodes: list
    links: dict = field(default_factory=dict)  # frozenset({i, j}) -> multiplicity

    def __post_init__(self):
        self.nodes = [Vec3(n) for n in self.nodes]
        self.links = {frozenset(k): m for k, m in dict(self.links).items()}

    @classmethod
    def from_links(cls, nodes, pairs, multiplicity: int = 1) -> GeometricGraph:
        return cls(nodes, {frozenset(p): multiplicity for p in pairs})

    @property
    def n_links(self) -> int:
        return sum(self.links.values())

    def degree_sequence(self) -> list[int]:
        deg = [0] * len(self.nodes)
        for k, m in self.links.items():
            for i in k:
                deg[i] += m
        return sorted(deg)

    def is_connected(self) -> bool:
        if not self.nodes:
            return True
        adj = defaultdict(set)
        for k in self.links:
            i, j = tuple(k)
            adj[i].add(j)
            adj[j].add(i)
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == len(self.nodes)

    def max_multiplicity(self) -> int:
        return max(self.links.values(), default=0)


@dataclass
class PolygonalComplex:
    vertices: list
    edges: list
    faces: list
    window: Scalar | None = None
    periodicity: Lattice | None = None
    interior: frozenset = frozenset()
    scale: Scalar = ONE
    label: str | None = None
    warnings: list = field(default_factory=list)
    # radius of the materialized region (``window`` plus the star radius)
    extent: Scalar | None = None

    # incidence caches --------------------------------------------------------

    @cached_property
    def index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def edge_index(self) -> dict:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def vertex_edges(self) -> list:
        out = [[] for _ in self.vertices]
        for k, (i, j) in enumerate(self.edges):
            out[i].append(k)
            out[j].append(k)
        return out

    @cached_property
    def edge_faces(self) -> list:
        out = [[] for _ in self.edges]
        idx = self.edge_index
        for fid, f in enumerate(self.faces):
            for a, b in f.edges():
                out[idx[(a, b) if a < b else (b, a)]].append(fid)
        return out

    @cached_property
    def vertex_faces(self) -> list:
        out = [[] for _ in self.vertices]
        for fid, f in enumerate(self.faces):
            for v in f.ids:
                out[v].append(fid)
        return out

    @cached_property
    def face_keys(self) -> dict:
        return {f.key(): i for i, f in enumerate(self.faces)}

    @cached_property
    def interior_edges(self) -> list:
        inner = self.interior
        return [k for k, (i, j) in enumerate(self.edges) if i in inner and j in inner]

    def neighbors(self, v: int) -> list[int]:
        out = []
        for k in self.vertex_edges[v]:
            i, j = self.edges[k]
            out.append(j if i == v else i)
        return out

    def edge_id(self, a: int, b: int) -> int:
        return self.edge_index[(a, b) if a < b else (b, a)]

    @property
    def is_finite(self) -> bool:
        return self.window is None

    @property
    def radicand(self) -> int:
        ds = {c.d for v in self.vertices for c in v if c.q}
        return ds.pop() if len(ds) == 1 else 1

    def polygon(self, fid: int) -> Polygon:
        f = self.faces[fid]
        return Polygon(tuple(self.vertices[i] for i in f.ids), f.closed, f.step)

    def face_counts(self) -> Counter:
        """Histogram of faces-per-edge over interior edges."""
        return Counter(len(self.edge_faces[e]) for e in self.interior_edges)

    def summary(self) -> dict:
        return {
            "label": self.label,
            "vertices": len(self.vertices),
            "edges": len(self.edges),
            "faces": len(self.faces),
            "interior_vertices": len(self.interior),
            "window": None if self.window is None else str(self.window),
        }


def _normalize_face(face, index_of) -> Face:
    if isinstance(face, Face):
        return face
    if isinstance(face, Polygon):
        return Face(tuple(index_of(v) for v in face.vertices), face.closed, face.step)
    if isinstance(face, dict):
        ids = tuple(face["vertices"])
        step = face.get("step")
        if step is not None and not isinstance(step, Isometry):
            step = Isometry.from_json(step)
        return Face(ids, bool(face.get("closed", True)), step)
    return Face(tuple(face), True, None)


def _star_radius(vertices, faces_of, center: int, faces) -> Scalar:
    v = vertices[center]
    best = scalar(0)
    for fid in faces_of[center]:
        f = faces[fid]
        if f.closed:
            pts = f.ids
        else:
            i = f.ids.index(center)
            pts = f.ids[max(0, i - 2) : i + 3]
        for w in pts:
            d2 = (vertices[w] - v).norm2()
            if d2 > best:
                best = d2
    return best


def build_complex(
    vertices,
    edges,
    faces,
    window=None,
    periodicity: Lattice | None = None,
    interior=None,
    scale=1,
    separation=None,
    label: str | None = None,
    validate: bool = True,
    extent=None,
) -> PolygonalComplex:
    """Assemble and validate a complex.

    ``edges`` are vertex-index pairs, ``faces`` are index cycles, :class:`Face`
    records or :class:`Polygon` objects.  ``window=None`` declares the complex
    complete (finite); otherwise ``interior`` lists the vertex indices whose
    stars are complete, defaulting to a star-radius test against the window.
    """
    verts = [Vec3(v) for v in vertices]
    index = {v: i for i, v in enumerate(verts)}
    if len(index) != len(verts):
        raise NonDiscrete("duplicate vertices")

    def index_of(p):
        p = Vec3(p)
        if p not in index:
            raise ValidationError(f"face vertex {p} is not a vertex of the complex")
        return index[p]

    es = set()
    for a, b in edges:
        a, b = int(a), int(b)
        if a == b or not (0 <= a < len(verts) and 0 <= b < len(verts)):
            raise ValidationError(f"edge ({a}, {b}) does not join two distinct vertices")
        es.add((a, b) if a < b else (b, a))
    fs = [_normalize_face(f, index_of) for f in faces]
    for f in fs:
        if len(set(f.ids)) != len(f.ids):
            raise ValidationError(f"face {f.ids} repeats a vertex")
        for a, b in f.edges():
            if ((a, b) if a < b else (b, a)) not in es:
                raise ValidationError(f"face edge ({a}, {b}) is not an edge of the complex")
    seen_faces = {}
    uniq = []
    for f in fs:
        k = f.key()
        if k not in seen_faces:
            seen_faces[k] = len(uniq)
            uniq.append(f)
    win = None if window is None else scalar(window)
    k = PolygonalComplex(
        verts,
        sorted(es),
        uniq,
        win,
        periodicity,
        frozenset(),
        scalar(scale),
        label,
    )
    k.extent = win if extent is None else scalar(extent)
    if interior is None:
        if win is None:
            interior = range(len(verts))
        else:
            interior = _default_interior(k)
    k.interior = frozenset(interior)
    if validate:
        validate_complex(k, separation)
    return k


def _default_interior(k: PolygonalComplex) -> list[int]:
    """Vertices at distance <= R - rho, with rho the star radius of the
    vertex nearest the origin (rounded up to a rational)."""
    if not k.vertices:
        return []
    center = min(range(len(k.vertices)), key=lambda i: float(k.vertices[i].norm2()))
    rho2 = _star_radius(k.vertices, k.vertex_faces, center, k.faces)
    rho = Scalar.of(Fraction(math.sqrt(float(rho2))).limit_denominator(10_000) + Fraction(1, 10_000))
    lim = k.window - rho
    if lim.sign() < 0:
        return []
    lim2 = lim * lim
    return [i for i, v in enumerate(k.vertices) if v.norm2() <= lim2]


def validate_complex(k: PolygonalComplex, separation=None) -> None:
    """Check the polygonal-complex axioms on interior elements."""
    inner = k.interior
    if separation is None:
        separation = k.scale / 8
    separation = scalar(separation)
    if len(k.vertices) > 1:
        _check_separation(k.vertices, separation)
    # connectivity: all interior vertices in one component of the edge graph
    if inner:
        start = min(inner)
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in k.neighbors(x):
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        lost = inner - seen
        if lost:
            raise DisconnectedEdgeGraph(
                f"{len(lost)} interior vertices are unreachable from vertex {start}"
            )
    deficit = [e for e in k.interior_edges if len(k.edge_faces[e]) < 2]
    if deficit:
        raise EdgeFaceDeficit([k.edges[e] for e in deficit])
    for v in sorted(inner):
        vf = vertex_figure(k, v)
        if not vf.is_connected():
            raise DisconnectedVertexFigure(v)
        if vf.max_multiplicity() > 2:
            k.warnings.append(f"vertex-figure at {v} has a link of multiplicity {vf.max_multiplicity()}")


# --------------------------------------------------------------------------- flags


def flags(k: PolygonalComplex, interior_only: bool = False) -> list[Flag]:
    out = []
    inner = k.interior
    for e, (a, b) in enumerate(k.edges):
        if interior_only and not (a in inner and b in inner):
            continue
        for f in k.edge_faces[e]:
            out.append(Flag(a, e, f))
            out.append(Flag(b, e, f))
    return out


def interior_flags(k: PolygonalComplex) -> list[Flag]:
    return flags(k, interior_only=True)


def flags_at(k: PolygonalComplex, v: int) -> list[Flag]:
    return [Flag(v, e, f) for e in k.vertex_edges[v] for f in k.edge_faces[e]]


def i_adjacent(k: PolygonalComplex, flag: Flag, i: int) -> list[Flag]:
    v, e, f = flag
    if v not in k.interior:
        raise BoundaryContact(f"flag vertex {v} is not interior")
    a, b = k.edges[e]
    if i == 0:
        return [Flag(b if a == v else a, e, f)]
    if i == 1:
        other = b if a == v else a
        prev, nxt = k.faces[f].neighbors_of(v)
        w = nxt if prev == other else prev
        if w is None:
            raise BoundaryContact(f"face {f} is truncated at vertex {v}")
        return [Flag(v, k.edge_id(v, w), f)]
    if i == 2:
        return [Flag(v, e, g) for g in k.edge_faces[e] if g != f]
    raise ValueError("i must be 0, 1 or 2")


def adjacent(k: PolygonalComplex, flag: Flag, i: int) -> Flag:
    """The unique i-adjacent flag (polyhedra, or i in {0, 1})."""
    out = i_adjacent(k, flag, i)
    if len(out) != 1:
        raise ValueError(f"{len(out)} flags are {i}-adjacent; not unique")
    return out[0]


def vertex_figure(k: PolygonalComplex, v: int) -> GeometricGraph:
    if v not in k.interior:
        raise BoundaryContact(f"vertex {v} is not interior")
    nbrs = k.neighbors(v)
    pos = {u: i for i, u in enumerate(nbrs)}
    links: Counter = Counter()
    for fid in k.vertex_faces[v]:
        prev, nxt = k.faces[fid].neighbors_of(v)
        if prev is None or nxt is None:
            raise BoundaryContact(f"face {fid} is truncated at vertex {v}")
        links[frozenset((pos[prev], pos[nxt]))] += 1
    return GeometricGraph([k.vertices[u] for u in nbrs], dict(links))


# --------------------------------------------------------------------------- graph isomorphism

MAX_GRAPH_NODES = 16


def _adjacency(g: GeometricGraph) -> list[list[int]]:
    n = len(g.nodes)
    m = [[0] * n for _ in range(n)]
    for key, mult in g.links.items():
        i, j = tuple(key) if len(key) == 2 else (next(iter(key)),) * 2
        m[i][j] = m[j][i] = mult
    return m


def graph_isomorphisms(g1: GeometricGraph, g2: GeometricGraph, limit: int | None = None):
    """Yield node bijections (as lists) preserving link multiplicities."""
    n = len(g1.nodes)
    if n > MAX_GRAPH_NODES or len(g2.nodes) > MAX_GRAPH_NODES:
        raise SizeLimit(f"graph isomorphism is limited to {MAX_GRAPH_NODES} nodes")
    if n != len(g2.nodes) or g1.n_links != g2.n_links:
        return
    a1, a2 = _adjacency(g1), _adjacency(g2)
    sig1 = [sorted(r) for r in a1]
    sig2 = [sorted(r) for r in a2]
    if sorted(map(tuple, sig1)) != sorted(map(tuple, sig2)):
        return
    order = sorted(range(n), key=lambda i: -sum(1 for x in a1[i] if x))
    # BFS-ish order so each node after the first has a placed neighbor when possible
    placed_order = []
    remaining = set(range(n))
    while remaining:
        start = max(remaining, key=lambda i: sum(1 for x in a1[i] if x))
        q = deque([start])
        remaining.discard(start)
        while q:
            x = q.popleft()
            placed_order.append(x)
            for y in order:
                if y in remaining and a1[x][y]:
                    remaining.discard(y)
                    q.append(y)
    mapping = [-1] * n
    used = [False] * n
    count = 0

    def extend(pos):
        nonlocal count
        if pos == n:
            count += 1
            yield list(mapping)
            return
        i = placed_order[pos]
        for j in range(n):
            if used[j] or sig1[i] != sig2[j]:
                continue
            if a1[i][i] != a2[j][j]:
                continue
            ok = True
            for k in placed_order[:pos]:
                if a1[i][k] != a2[j][mapping[k]]:
                    ok = False
                    break
            if not ok:
                continue
            mapping[i] = j
            used[j] = True
            yield from extend(pos + 1)
            mapping[i] = -1
            used[j] = False
            if limit is not None and count >= limit:
                return

    yield from extend(0)


def _centered_gram(points: Sequence[Vec3]) -> list[list[Scalar]]:
    n = len(points)
    c = points[0]
    for p in points[1:]:
        c = c + p
    c = c / n
    q = [p - c for p in points]
    return [[q[i].dot(q[j]) for j in range(n)] for i in range(n)]


def _similar_under(mapping, gram1, gram2) -> bool:
    n = len(mapping)
    ratio = None
    for i in range(n):
        for j in range(i, n):
            x, y = gram1[i][j], gram2[mapping[i]][mapping[j]]
            if ratio is None:
                if x:
                    if not y:
                        return False
                    ratio = y / x
                elif y:
                    return False
            elif x * ratio != y:
                return False
    return ratio is None or ratio.sign() > 0


def graph_isomorphic(g1: GeometricGraph, g2: GeometricGraph, mode: str = "abstract") -> bool:
    """Abstract (multiplicity-preserving) or similarity isomorphism of graphs."""
    if mode == "abstract":
        return next(graph_isomorphisms(g1, g2), None) is not None
    if mode != "similarity":
        raise ValueError("mode must be 'abstract' or 'similarity'")
    if len(g1.nodes) != len(g2.nodes):
        return False
    gram1 = _centered_gram(g1.nodes)
    gram2 = _centered_gram(g2.nodes)
    for m in graph_isomorphisms(g1, g2):
        if _similar_under(m, gram1, gram2):
            return True
    return False
