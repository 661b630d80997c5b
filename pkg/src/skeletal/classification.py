"""Symmetry search, flag orbits and the classification record of a complex.

Symmetries are found, never assumed: an isometry is a candidate when it maps
the four points (vertex, edge end, face neighbours) of one flag onto those of
another, and it is accepted when it preserves every vertex, edge and face of
the materialized window whose image is still inside the window, in both
directions.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import asdict, dataclass, field
from typing import Iterable

from .errors import (
    BoundaryContact,
    NoReflectionGenerator,
    NotEquivelar,
    NotRegular,
    NotTwoOrbit,
    Unstable,
    WindowTooSmall,
)
from .geometry import (
    Isometry,
    Vec3,
    classify_isometry,
    isometry_from_points,
    linear_period,
    rank,
)
from .groups import IsometryGroup, PointGroup, named_predicate, special_group, vertex_set_member
from .incidence import (
    FaceKind,
    Flag,
    GeometricGraph,
    Polygon,
    PolygonalComplex,
    adjacent,
    canonical_cycle,
    classify_polygon,
    flags_at,
    graph_isomorphic,
    polygon_step,
    vertex_figure,
)
from .scalar import Scalar, scalar

# --------------------------------------------------------------------------- symmetry context


class SymmetryContext:
    """Lookup tables for testing whether an isometry preserves a complex."""

    def __init__(self, k: PolygonalComplex):
        self.k = k
        self.index = k.index
        self.finite = k.window is None
        ext = k.extent if k.extent is not None else k.window
        self.R2 = None if self.finite else ext * ext
        self.core = (
            set(range(len(k.vertices)))
            if self.finite
            else {i for i, v in enumerate(k.vertices) if v.norm2() <= self.R2}
        )
        self.edges = set(k.edges)
        self.finite_faces = {}
        self.windows = {}
        for fid, f in enumerate(k.faces):
            if f.closed:
                self.finite_faces[canonical_cycle(f.ids)] = fid
            else:
                ids = f.ids
                for m in range(len(ids) - 3):
                    w = ids[m : m + 4]
                    self.windows[min(w, w[::-1])] = fid
        self.tests = 0

    # -- points attached to a flag

    def flag_points(self, flag: Flag) -> list[Vec3]:
        k = self.k
        v, e, f = flag
        a, b = k.edges[e]
        u = b if a == v else a
        face = k.faces[f]
        prev, nxt = face.neighbors_of(v)
        w = nxt if prev == u else prev
        pu, nu = face.neighbors_of(u)
        x = nu if pu == v else pu
        pts = [k.vertices[v], k.vertices[u]]
        if w is not None:
            pts.append(k.vertices[w])
        if x is not None and x != w:
            pts.append(k.vertices[x])
        return pts

    def candidates(self, f1: Flag, f2: Flag) -> list[Isometry]:
        p1, p2 = self.flag_points(f1), self.flag_points(f2)
        n = min(len(p1), len(p2))
        if len(p1) != len(p2) and n < 3:
            return []
        return isometry_from_points(p1[:n], p2[:n])

    # -- verification

    def _inside(self, q: Vec3) -> bool:
        return self.finite or q.norm2() <= self.R2

    def _vertex_map(self, g: Isometry) -> dict | None:
        vm = {}
        index = self.index
        for i, p in enumerate(self.k.vertices):
            q = g.apply(p)
            j = index.get(q)
            if j is None:
                if self._inside(q):
                    return None
                continue
            vm[i] = j
        return vm

    def _local_ok(self, g: Isometry, v: int) -> bool:
        """Cheap pre-test: the neighbours of ``v`` must map to vertices."""
        k = self.k
        for u in k.neighbors(v):
            q = g.apply(k.vertices[u])
            if q not in self.index and self._inside(q):
                return False
        return True

    def _elements_ok(self, vm: dict) -> bool:
        core = self.core
        edges = self.edges
        for a, b in self.k.edges:
            A, B = vm.get(a), vm.get(b)
            if A is None or B is None:
                continue
            if A in core and B in core or self.finite:
                if ((A, B) if A < B else (B, A)) not in edges:
                    return False
        for f in self.k.faces:
            ids = f.ids
            if f.closed:
                img = [vm.get(i) for i in ids]
                if any(x is None for x in img):
                    continue
                if self.finite or all(x in core for x in img):
                    if canonical_cycle(img) not in self.finite_faces:
                        return False
            else:
                for m in range(len(ids) - 3):
                    img = [vm.get(i) for i in ids[m : m + 4]]
                    if any(x is None or x not in core for x in img):
                        continue
                    t = tuple(img)
                    if min(t, t[::-1]) not in self.windows:
                        return False
        return True

    def verify(self, g: Isometry, near: int | None = None):
        """Return ``(vertex map, inverse vertex map)`` when ``g`` preserves the
        complex on the window, else ``None``."""
        self.tests += 1
        if near is not None and not self._local_ok(g, near):
            return None
        vm = self._vertex_map(g)
        if vm is None:
            return None
        if self.finite and len(vm) != len(self.k.vertices):
            return None
        gi = g.inverse()
        vmi = self._vertex_map(gi)
        if vmi is None:
            return None
        if not self._elements_ok(vm) or not self._elements_ok(vmi):
            return None
        return vm, vmi

    # -- transporting flags

    def map_flag(self, vm: dict, flag: Flag) -> Flag | None:
        k = self.k
        v, e, f = flag
        a, b = k.edges[e]
        A, B, V = vm.get(a), vm.get(b), vm.get(v)
        if A is None or B is None or V is None:
            return None
        eid = k.edge_index.get((A, B) if A < B else (B, A))
        if eid is None:
            return None
        face = k.faces[f]
        if face.closed:
            img = [vm.get(i) for i in face.ids]
            if any(x is None for x in img):
                return None
            fid = self.finite_faces.get(canonical_cycle(img))
        else:
            ids = face.ids
            i = ids.index(v)
            fid = None
            for m in range(max(0, i - 3), min(i + 1, len(ids) - 3)):
                img = [vm.get(x) for x in ids[m : m + 4]]
                if any(x is None for x in img):
                    continue
                t = tuple(img)
                fid = self.windows.get(min(t, t[::-1]))
                if fid is not None:
                    break
        if fid is None:
            return None
        return Flag(V, eid, fid)


@dataclass
class SymmetrySearchResult:
    source: Flag
    target: Flag
    isometries: list = field(default_factory=list)
    vertex_maps: list = field(default_factory=list)

    def __len__(self):
        return len(self.isometries)

    def __iter__(self):
        return iter(self.isometries)

    def __bool__(self):
        return bool(self.isometries)


def _check_flag(k: PolygonalComplex, flag: Flag) -> None:
    if flag.vertex not in k.interior:
        raise BoundaryContact(f"flag vertex {flag.vertex} is not interior")


def symmetries_between_flags(
    k: PolygonalComplex, f1: Flag, f2: Flag, ctx: SymmetryContext | None = None
) -> SymmetrySearchResult:
    """All symmetries of the windowed complex mapping flag ``f1`` to ``f2``."""
    if not k.interior:
        raise WindowTooSmall("the window has no interior vertices")
    _check_flag(k, f1)
    _check_flag(k, f2)
    ctx = ctx or SymmetryContext(k)
    out = SymmetrySearchResult(f1, f2)
    for g in ctx.candidates(f1, f2):
        maps = ctx.verify(g, near=f1.vertex)
        if maps is None:
            continue
        if ctx.map_flag(maps[0], f1) != f2:
            continue
        out.isometries.append(g)
        out.vertex_maps.append(maps)
    return out


# --------------------------------------------------------------------------- flag orbits


def _interior_flag(k: PolygonalComplex, fl: Flag) -> bool:
    a, b = k.edges[fl.edge]
    return a in k.interior and b in k.interior


@dataclass
class FlagOrbits:
    labels: dict  # Flag -> orbit label (interior flags only)
    count: int
    base: Flag
    stabilizer: list  # symmetries fixing the base flag
    vertex_stabilizer: list  # symmetries fixing the base vertex (with maps)
    symmetries: list  # all verified symmetries (isometries)
    context: SymmetryContext

    def orbit_sizes(self) -> Counter:
        return Counter(self.labels.values())


def _center_vertex(k: PolygonalComplex) -> int:
    inner = [v for v in k.interior if any(_interior_flag(k, f) for f in flags_at(k, v))]
    if not inner:
        raise WindowTooSmall("no interior flags in the window")
    return min(inner, key=lambda i: (float(k.vertices[i].norm2()), i))


def _orbits_by_search(k: PolygonalComplex) -> FlagOrbits:
    ctx = SymmetryContext(k)
    center = _center_vertex(k)
    reps: list[tuple[int, dict]] = []  # (rep vertex, flag -> label)
    labels: dict[Flag, int] = {}
    symmetries: list[Isometry] = []
    next_label = 0
    base = None
    stabilizer: list[Isometry] = []
    vstab: list = []

    def new_class(c: int):
        nonlocal next_label, base, stabilizer, vstab
        fl_c = [fl for fl in flags_at(k, c)]
        phi0 = next(fl for fl in fl_c if _interior_flag(k, fl))
        stab = []
        for psi in fl_c:
            for g in ctx.candidates(phi0, psi):
                maps = ctx.verify(g, near=c)
                if maps is None or ctx.map_flag(maps[0], phi0) != psi:
                    continue
                stab.append((g, maps))
        # orbits of the flags at c under the stabilizer of c
        lab: dict[Flag, int] = {}
        for fl in fl_c:
            if fl in lab:
                continue
            lab[fl] = next_label
            for g, (vm, _) in stab:
                img = ctx.map_flag(vm, fl)
                if img is not None and img not in lab:
                    lab[img] = next_label
            next_label += 1
        reps.append((c, lab))
        symmetries.extend(g for g, _ in stab)
        if base is None:
            base = phi0
            stabilizer = [g for g, (vm, _) in stab if ctx.map_flag(vm, phi0) == phi0]
            vstab = stab
        return lab, stab

    interior_flags = {
        v: [fl for fl in flags_at(k, v) if _interior_flag(k, fl)] for v in k.interior
    }
    maps: list[tuple[dict, dict]] = []  # verified vertex maps (both directions)
    done: list[int] = []
    is_done: set[int] = set()

    def complete(v: int) -> bool:
        return all(fl in labels for fl in interior_flags[v])

    def spread(sources: list[int], new_maps: list) -> None:
        """Transport labels along verified symmetries until nothing changes."""
        queue = [(u, m) for u in sources for m in new_maps]
        while queue:
            u, vm = queue.pop()
            v = vm.get(u)
            if v is None or v in is_done or v not in interior_flags:
                continue
            for fl in flags_at(k, u):
                lab = labels.get(fl)
                if lab is None:
                    continue
                img = ctx.map_flag(vm, fl)
                if img is not None and img.vertex == v and _interior_flag(k, img):
                    labels.setdefault(img, lab)
            if complete(v):
                is_done.add(v)
                done.append(v)
                queue.extend((v, m) for m in maps)

    def add_maps(pair) -> None:
        vm, vmi = pair
        maps.extend((vm, vmi))
        spread(list(done), [vm, vmi])

    def finish(v: int) -> None:
        if v not in is_done and complete(v):
            is_done.add(v)
            done.append(v)
            spread([v], maps)

    order = sorted(k.interior, key=lambda i: (float(k.vertices[i].norm2()), i))
    order.remove(center)
    order.insert(0, center)
    for v in order:
        fl_v = interior_flags[v]
        if not fl_v or v in is_done:
            continue
        found = None
        for c, lab in reps:
            phi0 = next(fl for fl in flags_at(k, c) if _interior_flag(k, fl))
            for psi in fl_v:
                for g in ctx.candidates(phi0, psi):
                    pair = ctx.verify(g, near=c)
                    if pair is None:
                        continue
                    vm, vmi = pair
                    for fl in fl_v:
                        pre = ctx.map_flag(vmi, fl)
                        if pre is not None and pre in lab:
                            labels.setdefault(fl, lab[pre])
                    symmetries.append(g)
                    found = pair
                    break
                if found:
                    break
            if found:
                break
        if found is None:
            lab, stab = new_class(v)
            for fl in fl_v:
                labels.setdefault(fl, lab[fl])
            finish(v)
            for _, pair in stab:
                add_maps(pair)
        else:
            finish(v)
            add_maps(found)
    missing = [fl for v in k.interior for fl in flags_at(k, v) if _interior_flag(k, fl) and fl not in labels]
    if missing:
        raise WindowTooSmall(f"{len(missing)} interior flags could not be transported")
    count = len(set(labels.values()))
    return FlagOrbits(labels, count, base, stabilizer, vstab, symmetries, ctx)


def _orbits_by_group(k: PolygonalComplex, group: IsometryGroup) -> FlagOrbits:
    ctx = SymmetryContext(k)
    parent: dict[Flag, Flag] = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    all_flags = [fl for v in range(len(k.vertices)) for fl in flags_at(k, v)]
    for g in group.with_inverses():
        maps = ctx.verify(g)
        if maps is None:
            raise NotRegular("a group generator is not a symmetry of the complex")
        vm = maps[0]
        for fl in all_flags:
            img = ctx.map_flag(vm, fl)
            if img is not None:
                a, b = find(fl), find(img)
                if a != b:
                    parent[a] = b
    labels = {}
    roots = {}
    for v in k.interior:
        for fl in flags_at(k, v):
            if _interior_flag(k, fl):
                r = find(fl)
                labels[fl] = roots.setdefault(r, len(roots))
    base = next(iter(labels))
    return FlagOrbits(labels, len(roots), base, [], [], list(group.generators), ctx)


def flag_orbits(k: PolygonalComplex, group: IsometryGroup | None = None) -> FlagOrbits:
    """Partition the interior flags into symmetry orbits."""
    if group is not None:
        return _orbits_by_group(k, group)
    return _orbits_by_search(k)


def flag_orbit_count_stable(k_small: PolygonalComplex, k_large: PolygonalComplex) -> int:
    a = flag_orbits(k_small).count
    b = flag_orbits(k_large).count
    if a != b:
        raise Unstable((a, b))
    return a


def brute_force_orbit_count(k: PolygonalComplex) -> int:
    """Orbit count of a finite complex by testing every vertex-correspondence
    candidate between every pair of flags (independent of the search above)."""
    if k.window is not None:
        raise ValueError("brute force needs a finite complex")
    ctx = SymmetryContext(k)
    fl = [f for v in range(len(k.vertices)) for f in flags_at(k, v)]
    syms = []
    phi = fl[0]
    seen = set()
    for psi in fl:
        for g in ctx.candidates(phi, psi):
            if g.key() in seen:
                continue
            if ctx.verify(g) is not None:
                seen.add(g.key())
                syms.append(g)
    maps = [ctx.verify(g)[0] for g in syms]
    remaining = set(fl)
    count = 0
    while remaining:
        x = remaining.pop()
        count += 1
        for vm in maps:
            y = ctx.map_flag(vm, x)
            remaining.discard(y)
    return count


def is_regular(k: PolygonalComplex, orbits: FlagOrbits | None = None) -> bool:
    return (orbits or flag_orbits(k)).count == 1


def flag_stabilizer_order(k: PolygonalComplex, orbits: FlagOrbits | None = None) -> int:
    return len((orbits or flag_orbits(k)).stabilizer)


def is_simply_flag_transitive(k: PolygonalComplex, orbits: FlagOrbits | None = None) -> bool:
    o = orbits or flag_orbits(k)
    return o.count == 1 and len(o.stabilizer) == 1


# --------------------------------------------------------------------------- derived data


def has_face_mirrors(k: PolygonalComplex, orbits: FlagOrbits | None = None) -> tuple[bool, list]:
    """Plane reflections fixing a planar face (checked on faces at the base vertex)."""
    o = orbits or flag_orbits(k)
    planes = []
    for g, (vm, _) in o.vertex_stabilizer:
        kind = classify_isometry(g)
        if kind.tag != "plane-reflection":
            continue
        for fid in k.vertex_faces[o.base.vertex]:
            f = k.faces[fid]
            if all(vm.get(i) == i for i in f.ids):
                planes.append((kind.point, kind.direction, fid))
    return bool(planes), planes


def two_orbit_class(k: PolygonalComplex, orbits: FlagOrbits | None = None) -> str:
    o = orbits or flag_orbits(k)
    if o.count != 2:
        raise NotTwoOrbit(f"complex has {o.count} flag orbits")
    idx = []
    for i in (0, 1, 2):
        ok = True
        for fl, lab in o.labels.items():
            try:
                adj = adjacent(k, fl, i)
            except (BoundaryContact, ValueError):
                continue
            if adj in o.labels and o.labels[adj] != lab:
                ok = False
                break
        if ok:
            idx.append(i)
    return "2_{" + ",".join(map(str, idx)) + "}"


def distinguished_generators(k: PolygonalComplex, orbits: FlagOrbits | None = None) -> dict:
    """``R0``, ``R1`` and ``G2`` relative to the base flag of a regular complex."""
    o = orbits or flag_orbits(k)
    if o.count != 1:
        raise NotRegular(f"complex has {o.count} flag orbits")
    ctx = o.context
    phi = o.base
    out = {}
    res0 = symmetries_between_flags(k, phi, adjacent(k, phi, 0), ctx)
    out["R0"] = list(res0)
    res1 = symmetries_between_flags(k, phi, adjacent(k, phi, 1), ctx)
    out["R1"] = list(res1)
    g2 = []
    for g, (vm, _) in o.vertex_stabilizer:
        img = ctx.map_flag(vm, phi)
        if img is not None and img.vertex == phi.vertex and img.edge == phi.edge:
            g2.append(g)
    out["G2"] = g2
    return out


def _mirror_dim(g: Isometry) -> int:
    kind = classify_isometry(g)
    if kind.tag not in ("point-reflection", "line-reflection", "plane-reflection"):
        raise NoReflectionGenerator(f"generator is a {kind.tag}, not a reflection")
    return kind.mirror_dim


def mirror_vector(k: PolygonalComplex, orbits: FlagOrbits | None = None) -> tuple:
    o = orbits or flag_orbits(k)
    gens = distinguished_generators(k, o)
    if len(gens["R0"]) != 1 or len(gens["R1"]) != 1:
        raise NotRegular("distinguished generators are not unique (flag stabilizer is nontrivial)")
    r0, r1 = gens["R0"][0], gens["R1"][0]
    polyhedron = set(k.face_counts()) == {2}
    if polyhedron:
        r2 = [g for g in gens["G2"] if not g.is_identity()]
        if len(r2) != 1:
            raise NoReflectionGenerator("G2 is not generated by a single reflection")
        return (_mirror_dim(r0), _mirror_dim(r1), _mirror_dim(r2[0]))
    return (_mirror_dim(r0), _mirror_dim(r1))


def g2_census(k: PolygonalComplex, orbits: FlagOrbits | None = None) -> str:
    o = orbits or flag_orbits(k)
    g2 = distinguished_generators(k, o)["G2"]
    return group_census_name([g.linear for g in g2], len(g2))


def group_census_name(linears: Iterable, order: int) -> str:
    """``Cn`` for cyclic groups of order n, ``Dk`` for dihedral groups of order 2k."""
    periods = [linear_period(m) or 0 for m in linears]
    if order in periods:
        return f"C{order}"
    if order % 2 == 0:
        return f"D{order // 2}"
    return f"?{order}"


def face_kind(k: PolygonalComplex, fid: int) -> FaceKind:
    return classify_polygon(k.polygon(fid))


def _star_faces(k: PolygonalComplex, v: int) -> list[int]:
    return list(k.vertex_faces[v])


def schlafli_data(k: PolygonalComplex):
    """``(p, q)`` for polyhedra (``p = None`` for infinite faces), else
    ``(face label, r)``."""
    kinds = {}
    degrees = {}
    for v in sorted(k.interior):
        degrees[v] = len(k.vertex_edges[v])
        for fid in _star_faces(k, v):
            if fid not in kinds:
                kinds[fid] = face_kind(k, fid)
    if not degrees:
        raise WindowTooSmall("no interior vertices")
    labels = {fid: kk.label for fid, kk in kinds.items()}
    if len(set(labels.values())) > 1:
        fid = next(f for f in labels if labels[f] != next(iter(labels.values())))
        raise NotEquivelar(("face", fid, labels[fid]))
    if len(set(degrees.values())) > 1:
        v = next(v for v in degrees if degrees[v] != next(iter(degrees.values())))
        raise NotEquivelar(("vertex", v, degrees[v]))
    counts = k.face_counts()
    if len(counts) > 1:
        raise NotEquivelar(("edge", dict(counts)))
    kind = next(iter(kinds.values()))
    r = next(iter(counts)) if counts else None
    if r == 2:
        q = next(iter(degrees.values()))
        vf = classify_polygon(vertex_figure_polygon(k, next(iter(degrees))))
        if vf.tag == "star":
            q = f"{vf.p}/{vf.density}"
        p = f"{kind.p}/{kind.density}" if kind.tag == "star" else kind.p
        return (p, q)
    return (kind.label, r)


def schlafli_string(data, polyhedron: bool = True) -> str:
    a, b = data
    if not polyhedron:
        return f"({a}, {b})"
    return "{" + ("inf" if a is None else str(a)) + "," + str(b) + "}"


def _circuit_length(k: PolygonalComplex, flag: Flag, word: str):
    from .construction import trace_circuit, _face_period

    ids, closed = trace_circuit(k, flag, word)
    if closed:
        return len(ids)
    if len(ids) < 5:
        raise WindowTooSmall("circuit too short to classify inside the window")
    pts = tuple(k.vertices[i] for i in ids)
    if len(set(pts)) == len(pts) and rank([p - pts[0] for p in pts[1:]]) == 1:
        return None  # linear apeirogon
    step = polygon_step(Polygon(pts, False))
    if step is None:
        raise WindowTooSmall("circuit is not a regular polygon inside the window")
    per = _face_period(pts[0], step)
    return per if per is not None else None  # None = infinite


def fine_lengths(k: PolygonalComplex, flag: Flag | None = None) -> dict:
    """Lengths of the Petrie polygon, hole and 2-zigzag through a base flag
    (``None`` for infinite ones)."""
    if set(k.face_counts()) - {2}:
        from .errors import NotAPolyhedron

        raise NotAPolyhedron("fine lengths are defined for polyhedra")
    if flag is None:
        c = _center_vertex(k)
        flag = next(fl for fl in flags_at(k, c) if _interior_flag(k, fl))
    return {
        "petrie": _circuit_length(k, flag, "012"),
        "hole": _circuit_length(k, flag, "0121"),
        "zigzag2": _circuit_length(k, flag, "01212"),
    }


def vertex_figure_polygon(k: PolygonalComplex, v: int) -> Polygon:
    """The vertex-figure of a polyhedron at ``v`` as a closed polygon."""
    vf = vertex_figure(k, v)
    adj: dict[int, list[int]] = {i: [] for i in range(len(vf.nodes))}
    for key, mult in vf.links.items():
        a, b = tuple(key)
        for _ in range(mult):
            adj[a].append(b)
            adj[b].append(a)
    if any(len(x) != 2 for x in adj.values()):
        raise NotEquivelar(("vertex-figure", v))
    order = [0]
    prev = None
    while True:
        cur = order[-1]
        nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
        if nxt == 0:
            break
        if len(order) > len(adj):
            raise NotEquivelar(("vertex-figure", v))
        prev = cur
        order.append(nxt)
    return Polygon(tuple(vf.nodes[i] for i in order), True)


def vertex_figure_kind(k: PolygonalComplex, v: int | None = None) -> str:
    """``planar`` or ``skew`` for polyhedra (the vertex-figure is a polygon)."""
    if v is None:
        v = _center_vertex(k)
    pts = [k.vertices[u] for u in k.neighbors(v)]
    return "planar" if rank([p - pts[0] for p in pts[1:]]) <= 2 else "skew"


def face_geometry(kind: FaceKind) -> str:
    if kind.tag in ("helix",):
        return "helical"
    if kind.tag == "skew":
        return "skew"
    return "planar"


# --------------------------------------------------------------------------- reference graphs


def _perms_signs(base) -> list[tuple]:
    import itertools

    out = set()
    for perm in itertools.permutations(base):
        for signs in itertools.product((1, -1), repeat=3):
            out.add(tuple(s * x for s, x in zip(signs, perm)))
    return sorted(out)


def _graph_by_distance(nodes, d2, mult=1) -> GeometricGraph:
    pts = [Vec3(*n) for n in nodes]
    links = {}
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if (pts[i] - pts[j]).norm2() == d2:
                links[frozenset((i, j))] = mult
    return GeometricGraph(pts, links)


def _reference_graphs() -> dict[str, GeometricGraph]:
    tet = [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)]
    octa = _perms_signs((1, 0, 0))
    cube = _perms_signs((1, 1, 1))
    cubo = _perms_signs((1, 1, 0))
    square = [(1, 0, 0), (0, 1, 0), (-1, 0, 0), (0, -1, 0)]
    refs = {
        "tetrahedron": _graph_by_distance(tet, 8),
        "octahedron": _graph_by_distance(octa, 2),
        "cube": _graph_by_distance(cube, 4),
        "cuboctahedron": _graph_by_distance(cubo, 2),
        # same 12 points, linked at squared distance 6: abstractly a
        # cuboctahedron whose "squares" are not planar
        "ns-cuboctahedron": _graph_by_distance(cubo, 6),
        "square": _graph_by_distance(square, 2),
        "double tetrahedron": _graph_by_distance(tet, 8, 2),
        "double octahedron": _graph_by_distance(octa, 2, 2),
        "double cube": _graph_by_distance(cube, 4, 2),
        "double square": _graph_by_distance(square, 2, 2),
    }
    return refs


REFERENCE_GRAPHS = _reference_graphs()


def vertex_figure_name(k: PolygonalComplex, v: int | None = None) -> str:
    if v is None:
        v = _center_vertex(k)
    vf = vertex_figure(k, v)
    for name, ref in REFERENCE_GRAPHS.items():
        if len(ref.nodes) != len(vf.nodes):
            continue
        if graph_isomorphic(vf, ref, "similarity"):
            return name
    for name, ref in REFERENCE_GRAPHS.items():
        if len(ref.nodes) == len(vf.nodes) and graph_isomorphic(vf, ref, "abstract"):
            return name + " (abstract)"
    return "unknown"


# --------------------------------------------------------------------------- vertex sets

VERTEX_SET_ORDER = ("W_a", "V_a", "Lambda(a,a,a)", "Lambda(a,a,0)", "aZ3")


def _cube_linear_maps() -> list[Isometry]:
    import itertools

    out = []
    for perm in itertools.permutations(range(3)):
        for signs in itertools.product((1, -1), repeat=3):
            rows = [[0, 0, 0] for _ in range(3)]
            for i, j in enumerate(perm):
                rows[i][j] = signs[i]
            out.append(Isometry(rows))
    out.sort(key=lambda g: not g.is_identity())
    return out


def _default_unit(k: PolygonalComplex) -> Scalar:
    coords = [abs(c) for v in k.vertices for c in v if c]
    return min(coords, key=float) if coords else scalar(1)


def vertex_set_name(k: PolygonalComplex, a=None) -> str:
    """Smallest named set containing every vertex and whose points in the
    window are all vertices (after some symmetry of the cube, since the sets
    are named for one particular placement)."""
    a = scalar(a) if a is not None else _default_unit(k)
    for kind in VERTEX_SET_ORDER:
        if check_vertex_set(k, kind, a)["ok"]:
            return kind
    return "other"


def _vertex_set_ok(points: list[Vec3], index, R, pred, a: Scalar) -> tuple[bool, bool]:
    members = all(vertex_set_member(v, pred) for v in points)
    present = True
    if members and R is not None and a.is_rational():
        import math

        n = int(math.floor(float(R / a))) + 1
        rng = range(-n, n + 1)
        for i in rng:
            for j in rng:
                for l in rng:
                    p = Vec3(a * i, a * j, a * l)
                    if p.norm2() <= R * R and vertex_set_member(p, pred) and p not in index:
                        return members, False
    return members, present


def check_vertex_set(k: PolygonalComplex, kind: str, a=1) -> dict:
    """All vertices lie in the set, and all set points in the window are
    vertices, for the complex moved by some linear symmetry of the cube."""
    pred = named_predicate(kind, a)
    a = scalar(a)
    best = {"ok": False, "members": False, "complete": False, "transform": None}
    for g in _cube_linear_maps():
        pts = [g.apply(v) for v in k.vertices]
        if not all(vertex_set_member(v, pred) for v in pts):
            continue
        index = set(pts)
        members, present = _vertex_set_ok(pts, index, k.window, pred, a)
        best = {"ok": members and present, "members": members, "complete": present, "transform": g}
        if best["ok"]:
            break
    return best


# --------------------------------------------------------------------------- congruence


def _edge_length2(k: PolygonalComplex) -> Scalar:
    a, b = k.edges[0]
    return (k.vertices[a] - k.vertices[b]).norm2()


def _ball_radius2(k: PolygonalComplex, v: int) -> float:
    """Squared radius of a ball around ``v`` inside the complete part of ``k``."""
    if k.window is None:
        return float("inf")
    room = float(k.window) - float(k.vertices[v].norm2()) ** 0.5
    return max(room, 0.0) ** 2


def _maps_into(ctx: SymmetryContext, pts: dict, faces, g: Isometry, edges) -> bool:
    """Do the points ``pts`` (id -> point), their edges and faces land on ``ctx``'s complex?"""
    index = ctx.index
    vm = {}
    for i, p in pts.items():
        j = index.get(g.apply(p))
        if j is None:
            return False
        vm[i] = j
    for a, b in edges:
        if a in vm and b in vm:
            A, B = vm[a], vm[b]
            if ((A, B) if A < B else (B, A)) not in ctx.edges:
                return False
    for f in faces:
        ids = f.ids
        if f.closed:
            if all(i in vm for i in ids) and canonical_cycle([vm[i] for i in ids]) not in ctx.finite_faces:
                return False
        else:
            for m in range(len(ids) - 3):
                w = ids[m : m + 4]
                if all(i in vm for i in w):
                    t = tuple(vm[i] for i in w)
                    if min(t, t[::-1]) not in ctx.windows:
                        return False
    return True


def congruence(k1: PolygonalComplex, k2: PolygonalComplex, similar: bool = True) -> Isometry | None:
    """An isometry taking ``k1`` (rescaled to ``k2``'s edge length when
    ``similar``) onto ``k2`` near their centre vertices, or ``None``.

    The comparison covers a ball around each centre that lies inside both
    windows; the map must send vertices, edges and faces of either ball onto
    elements of the other complex.
    """
    from .geometry import field_sqrt

    lam = Scalar.of(1)
    if similar:
        lam = field_sqrt(_edge_length2(k2) / _edge_length2(k1))
        if lam is None:
            raise ValueError("edge length ratio is not representable exactly")
    elif _edge_length2(k1) != _edge_length2(k2):
        return None
    c1, c2 = _center_vertex(k1), _center_vertex(k2)
    pts1 = {i: v * lam for i, v in enumerate(k1.vertices)}
    r2 = min(_ball_radius2(k1, c1) * float(lam) ** 2, _ball_radius2(k2, c2))
    if r2 == 0.0:
        raise WindowTooSmall("no room around the centre vertices")
    o1, o2 = pts1[c1], k2.vertices[c2]
    ball1 = {i: p for i, p in pts1.items() if float((p - o1).norm2()) <= r2}
    ball2 = {i: p for i, p in enumerate(k2.vertices) if float((p - o2).norm2()) <= r2}
    faces1 = [f for f in k1.faces if any(i in ball1 for i in f.ids)]
    faces2 = [f for f in k2.faces if any(i in ball2 for i in f.ids)]
    # k1 scaled by lam, as a lookup context
    scaled = PolygonalComplex(
        [pts1[i] for i in range(len(k1.vertices))], k1.edges, k1.faces, k1.window, interior=k1.interior
    )
    ctx1, ctx2 = SymmetryContext(scaled), SymmetryContext(k2)
    phi = next(fl for fl in flags_at(k1, c1) if _interior_flag(k1, fl))
    src = ctx1.flag_points(phi)
    for psi in flags_at(k2, c2):
        if not _interior_flag(k2, psi):
            continue
        dst = ctx2.flag_points(psi)
        n = min(len(src), len(dst))
        for g in isometry_from_points(src[:n], dst[:n]):
            if _maps_into(ctx2, ball1, faces1, g, k1.edges) and _maps_into(
                ctx1, ball2, faces2, g.inverse(), k2.edges
            ):
                return g
    return None


def congruent(k1: PolygonalComplex, k2: PolygonalComplex, similar: bool = True) -> bool:
    return congruence(k1, k2, similar) is not None


# --------------------------------------------------------------------------- records


@dataclass
class ClassificationRecord:
    r: int | None = None
    face_kind: str | None = None
    face_geometry: str | None = None
    schlafli: str | None = None
    vertex_figure_name: str | None = None
    vertex_figure_geometry: str | None = None
    vertex_set: str | None = None
    special_group: str | None = None
    mirror_vector: tuple | None = None
    g2_census: str | None = None
    flag_orbits: int | None = None
    flag_stabilizer_order: int | None = None
    two_orbit_class: str | None = None
    fine_lengths: dict | None = None
    face_mirrors: bool | None = None

    def to_json(self) -> dict:
        d = asdict(self)
        if d["mirror_vector"] is not None:
            d["mirror_vector"] = list(d["mirror_vector"])
        return d


def special_group_of(symmetries: Iterable[Isometry]) -> PointGroup:
    return special_group(IsometryGroup(list(symmetries)))


def classify(k: PolygonalComplex, fields: Iterable[str] | None = None, a=None) -> ClassificationRecord:
    """Compute every applicable field of the classification record."""
    want = set(fields) if fields is not None else None

    def need(name):
        return want is None or name in want

    rec = ClassificationRecord()
    orbits = flag_orbits(k)
    rec.flag_orbits = orbits.count
    rec.flag_stabilizer_order = len(orbits.stabilizer)
    counts = k.face_counts()
    rec.r = next(iter(counts)) if len(counts) == 1 else None
    c = _center_vertex(k)
    kinds = {face_kind(k, fid).label: face_kind(k, fid) for fid in k.vertex_faces[c]}
    if len(kinds) == 1:
        kk = next(iter(kinds.values()))
        rec.face_kind = kk.label
        rec.face_geometry = face_geometry(kk)
    else:
        rec.face_kind = "mixed"
    try:
        rec.schlafli = schlafli_string(schlafli_data(k), rec.r == 2)
    except NotEquivelar:
        rec.schlafli = None
    if need("vertex_figure_name"):
        rec.vertex_figure_name = vertex_figure_name(k, c)
    if rec.r == 2:
        rec.vertex_figure_geometry = vertex_figure_kind(k, c)
    if need("vertex_set"):
        rec.vertex_set = vertex_set_name(k, a)
    rec.special_group = special_group_of(orbits.symmetries).name
    if orbits.count == 1 and len(orbits.stabilizer) == 1:
        try:
            rec.mirror_vector = mirror_vector(k, orbits)
        except (NoReflectionGenerator, NotRegular):
            rec.mirror_vector = None
        rec.g2_census = g2_census(k, orbits)
    if orbits.count == 2 and rec.r == 2:
        rec.two_orbit_class = two_orbit_class(k, orbits)
    if rec.r == 2 and need("fine_lengths"):
        try:
            rec.fine_lengths = fine_lengths(k)
        except WindowTooSmall:
            rec.fine_lengths = None
    if need("face_mirrors"):
        rec.face_mirrors = has_face_mirrors(k, orbits)[0]
    return rec
