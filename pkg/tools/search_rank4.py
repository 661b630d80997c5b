"""Find Rank4Generators inside the cube group whose 2-skeletons are regular
complexes with non-trivial flag stabilizers.

T1, T2, T3 are linear involutions fixing the origin; T0 swaps the origin with
an edge vector t.  Skeletons are deduplicated by their classification record.

    python tools/search_rank4.py --out tools/out/rank4.jsonl
"""

from __future__ import annotations

import argparse
import itertools
import json

from skeletal.classification import classify
from skeletal.construction import Rank4Generators, two_skeleton
from skeletal.errors import SkeletalError
from skeletal.geometry import Isometry, Vec3

from search_wythoff import EDGE_DIRECTIONS, cube_group, is_involution

ORIGIN = Vec3(0, 0, 0)


def edge_vectors():
    out = set()
    for t in EDGE_DIRECTIONS[:3]:
        for perm in itertools.permutations(t):
            for signs in itertools.product((1, -1), repeat=3):
                out.add(tuple(s * x for s, x in zip(signs, perm)))
    return sorted(out)


def commute(a, b) -> bool:
    return a * b == b * a


def _order(g, limit=8) -> int:
    h = g
    for n in range(1, limit + 1):
        if h.is_identity():
            return n
        h = h * g
    return 0


def search(window, reflections=False):
    invols = [Isometry._raw(m, ORIGIN) for m in cube_group() if is_involution(m)]
    mirrors = [Isometry._raw(m, ORIGIN) for m in cube_group() if is_involution(m) and m[0] + m[4] + m[8] == 1]
    base = mirrors if reflections else invols
    seen = set()
    for t1, t2, t3 in itertools.product(base, repeat=3):
        if len({t1, t2, t3}) < 3 or not commute(t1, t3):
            continue
        if reflections and (_order(t1 * t2) not in (3, 4) or _order(t2 * t3) not in (3, 4)):
            continue
        for tv in edge_vectors():
            tv = Vec3(*tv)
            for l0 in invols:
                if l0.apply(tv) != -tv:
                    continue
                t0 = Isometry._raw(l0.linear, tv)
                if not (commute(t0, t2) and commute(t0, t3)):
                    continue
                try:
                    gen = Rank4Generators((t0, t1, t2, t3))
                    k = two_skeleton(gen, window, max_vertices=4000)
                    rec = classify(k, fields=["vertex_figure_name", "face_mirrors"])
                except (SkeletalError, ValueError, ZeroDivisionError):
                    continue
                if rec.flag_orbits != 1 or rec.flag_stabilizer_order != 2:
                    continue
                key = (rec.r, rec.face_kind, rec.vertex_figure_name)
                if key in seen:
                    continue
                seen.add(key)
                yield {"generators": gen.to_json(), "record": rec.to_json(), "n_vertices": len(k.vertices)}


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--window", default="2")
    ap.add_argument("--out", required=True)
    ap.add_argument("--reflections", action="store_true", help="only plane reflections for T1, T2, T3")
    ns = ap.parse_args(argv)
    with open(ns.out, "w") as fh:
        for res in search(ns.window, ns.reflections):
            rec = res["record"]
            print(rec["r"], rec["face_kind"], rec["vertex_figure_name"], flush=True)
            fh.write(json.dumps(res) + "\n")
            fh.flush()


if __name__ == "__main__":
    main()
