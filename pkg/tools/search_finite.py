"""Find generator triples for the finite regular polyhedra.

Mirrors come from the octahedral group and from the icosahedral group (over
Q(sqrt 5)); R0, R1, R2 are plane reflections with R0 R2 = R2 R0 and the base
vertex on the line where the mirrors of R1 and R2 meet.

    python tools/search_finite.py --out tools/out/finite.jsonl
"""

from __future__ import annotations

import argparse
import itertools
import json

from skeletal.classification import classify
from skeletal.construction import GeneratorTriple, wythoff
from skeletal.errors import SkeletalError
from skeletal.geometry import Isometry, Vec3, plane_reflection
from skeletal.scalar import Scalar

TAU = Scalar(1, 1, 2, 5)


def icosahedron() -> list[Vec3]:
    out = []
    for a, b in itertools.product((1, -1), repeat=2):
        base = (0, a, b * TAU)
        for shift in range(3):
            out.append(Vec3(*(base[(i - shift) % 3] for i in range(3))))
    return out


def cube() -> list[Vec3]:
    return [Vec3(*s) for s in itertools.product((1, -1), repeat=3)]


def mirrors(points: list[Vec3]) -> list[Isometry]:
    pts = set(points)
    out = []
    for v, w in itertools.combinations(points, 2):
        n = v - w
        g = plane_reflection(n, 0)
        if {g.apply(p) for p in pts} == pts and g not in out:
            out.append(g)
    return out


def normal(g: Isometry) -> Vec3:
    from skeletal.geometry import classify_isometry

    return classify_isometry(g).direction


def search(solid: str):
    ms = mirrors(icosahedron() if solid == "icosahedral" else cube())
    seen = set()
    for r1, r2 in itertools.permutations(ms, 2):
        axis = normal(r1).cross(normal(r2))
        if axis.is_zero():
            continue
        for r0 in ms:
            if r0 in (r1, r2) or r0 * r2 != r2 * r0:
                continue
            for v in (axis, -axis):
                try:
                    gen = GeneratorTriple(r0, r1, (r2,), v)
                    k = wythoff(gen)
                    rec = classify(k, fields=["face_mirrors"])
                except (SkeletalError, ValueError):
                    continue
                if rec.flag_orbits != 1 or rec.flag_stabilizer_order != 1:
                    continue
                if rec.schlafli in seen:
                    continue
                seen.add(rec.schlafli)
                yield {"generators": gen.to_json(), "record": rec.to_json(), "n_vertices": len(k.vertices)}


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", required=True)
    ns = ap.parse_args(argv)
    with open(ns.out, "w") as fh:
        for solid in ("octahedral", "icosahedral"):
            for res in search(solid):
                print(solid, res["record"]["schlafli"], res["record"]["face_kind"], res["n_vertices"])
                fh.write(json.dumps(res) + "\n")


if __name__ == "__main__":
    main()
