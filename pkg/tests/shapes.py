"""Shared constructions for the tests: reference generators, the rectified
(two-orbit) polyhedra and helix axes."""

from __future__ import annotations

import itertools
from fractions import Fraction

from skeletal.construction import GeneratorTriple, Rank4Generators, wythoff
from skeletal.geometry import Vec3, classify_isometry, plane_reflection
from skeletal.incidence import build_complex
from skeletal.scalar import Scalar

HALF = Fraction(1, 2)
CUBE = GeneratorTriple(
    plane_reflection((1, 0, 0)), plane_reflection((1, -1, 0)), (plane_reflection((0, 1, -1)),), (HALF, HALF, HALF)
)
CUBIC = Rank4Generators(
    (plane_reflection((1, 0, 0), HALF), plane_reflection((1, -1, 0)), plane_reflection((0, 1, -1)), plane_reflection((0, 0, 1)))
)


def _triangulated(points, d2):
    """Polyhedron whose faces are the triangles of the distance-``d2`` graph."""
    n = len(points)
    near = {(i, j) for i in range(n) for j in range(n) if i != j and (points[i] - points[j]).norm2() == d2}
    edges = sorted((i, j) for i, j in near if i < j)
    faces = [list(t) for t in itertools.combinations(range(n), 3) if all(p in near for p in itertools.combinations(t, 2))]
    return build_complex(points, edges, faces)


def icosahedron():
    phi = (1 + Scalar.sqrt(5)) / 2
    pts = []
    for s, t in itertools.product((1, -1), repeat=2):
        for rot in range(3):
            c = [0, s, t * phi]
            pts.append(Vec3(*(c[(i + rot) % 3] for i in range(3))))
    return _triangulated(pts, Scalar.of(4))


def rectify(k):
    """Vertices at edge midpoints; one face per old face and one per old vertex."""
    mids = [(k.vertices[a] + k.vertices[b]) / 2 for a, b in k.edges]
    eid = {frozenset(e): i for i, e in enumerate(k.edges)}
    faces = [[eid[frozenset(e)] for e in f.edges()] for f in k.faces]
    for v in range(len(k.vertices)):
        # walk the faces around v to order its edges cyclically
        start = k.vertex_faces[v][0]
        prev, nxt = k.faces[start].neighbors_of(v)
        ring, f, u = [], start, nxt
        while True:
            ring.append(eid[frozenset((v, u))])
            f = next(g for g in k.vertex_faces[v] if g != f and u in k.faces[g].ids)
            a, b = k.faces[f].neighbors_of(v)
            u = b if a == u else a
            if f == start:
                break
        faces.append(ring)
    edges = sorted({tuple(sorted(p)) for f in faces for p in zip(f, f[1:] + f[:1])})
    return build_complex(mids, edges, faces)


def cuboctahedron():
    return rectify(wythoff(CUBE))


def icosidodecahedron():
    return rectify(icosahedron())


def helix_axes(k, base):
    """Axis directions (up to sign and length) of the helical faces at ``base``."""
    out = set()
    v = k.index[base]
    for f in k.vertex_faces[v]:
        kind = classify_isometry(k.faces[f].step)
        d = kind.direction
        n = d.norm2()
        # normalize the direction up to sign and length
        sign = next(c.sign() for c in d if not c.is_zero())
        out.add(tuple((c * c / n) * sign * (1 if c.sign() >= 0 else -1) for c in d))
    return out
