"""Enumerate Wythoff generator data inside the cube group and classify it.

Every candidate has the base vertex at the origin, ``R1`` and ``G2`` linear
(from the 48-element cube group) and ``R0: x -> x L0 + t``.  Each complex that
builds is classified and written as one JSON line, so catalog entries can be
picked by their computed records.

    python tools/search_wythoff.py --window 2 --out tools/out/wythoff.jsonl
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from skeletal.classification import classify
from skeletal.construction import GeneratorTriple, wythoff
from skeletal.errors import SkeletalError
from skeletal.geometry import IDENTITY_MATRIX, Isometry, Vec3, mat_inverse, mat_mul
from skeletal.groups import closure

EDGE_DIRECTIONS = [(1, 0, 0), (1, 1, 0), (1, 1, 1), (2, 1, 0), (2, 1, 1), (2, 2, 1)]


def cube_group() -> list[tuple]:
    out = []
    for perm in itertools.permutations(range(3)):
        for signs in itertools.product((1, -1), repeat=3):
            rows = [[0, 0, 0] for _ in range(3)]
            for i, j in enumerate(perm):
                rows[i][j] = signs[i]
            out.append(Isometry(rows).linear)
    return out


def is_involution(m) -> bool:
    return m != IDENTITY_MATRIX and mat_mul(m, m) == IDENTITY_MATRIX


def subgroups(elems: list[tuple]) -> list[frozenset]:
    found = set()
    for a, b in itertools.combinations_with_replacement(elems, 2):
        g = frozenset(e.linear for e in closure([Isometry._raw(a, Vec3(0, 0, 0)), Isometry._raw(b, Vec3(0, 0, 0))]))
        found.add(g)
    return sorted(found, key=len)


def generators_of(group: frozenset) -> list[tuple]:
    elems = sorted(group, key=str)
    for n in (1, 2):
        for combo in itertools.combinations(elems, n):
            lin = [Isometry._raw(m, Vec3(0, 0, 0)) for m in combo]
            if len(closure(lin)) == len(group):
                return list(combo)
    return elems


def _conj(c, m):
    return mat_mul(mat_mul(mat_inverse(c), m), c)


def canonical(stab, l0, h, l1):
    """Smallest representative of the candidate under conjugation by ``stab``."""
    forms = []
    for c in stab:
        forms.append((str(_conj(c, l0)), tuple(sorted(str(_conj(c, m)) for m in h)), str(_conj(c, l1))))
    return min(forms)


def candidates(polyhedra_only: bool = False):
    group = cube_group()
    invols = [m for m in group if is_involution(m)]
    for t in EDGE_DIRECTIONS:
        tv = Vec3(*t)
        stab = [m for m in group if Isometry._raw(m, Vec3(0, 0, 0)).apply(tv) == tv]
        subs = [h for h in subgroups(stab) if len(h) >= 2]
        seen = set()
        for l0 in invols:
            if Isometry._raw(l0, Vec3(0, 0, 0)).apply(tv) != -tv:
                continue
            for h in subs:
                if polyhedra_only and len(h) != 2:
                    continue
                if len(h) == 2 and not any(is_involution(m) for m in h):
                    continue
                conj = {mat_mul(mat_mul(l0, m), l0) for m in h}
                if conj != set(h):
                    continue
                gens = generators_of(h)
                for l1 in invols:
                    if l1 in h:
                        continue
                    key = canonical(stab, l0, h, l1)
                    if key in seen:
                        continue
                    seen.add(key)
                    yield t, l0, gens, l1


def evaluate(args):
    t, l0, gens, l1, window = args
    try:
        r0 = Isometry._raw(l0, Vec3(*t))
        r1 = Isometry._raw(l1, Vec3(0, 0, 0))
        g2 = tuple(Isometry._raw(m, Vec3(0, 0, 0)) for m in gens)
        gen = GeneratorTriple(r0, r1, g2, (0, 0, 0))
        k = wythoff(gen, window, max_vertices=6000)
        rec = classify(k, fields=["vertex_figure_name", "vertex_set", "face_mirrors"])
    except (SkeletalError, ValueError, ZeroDivisionError) as exc:
        return None, f"{type(exc).__name__}"
    return {"generators": gen.to_json(), "record": rec.to_json(), "n_vertices": len(k.vertices)}, None


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--window", default="2")
    ap.add_argument("--out", required=True)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--polyhedra-only", action="store_true")
    ns = ap.parse_args(argv)
    jobs = [(t, l0, g, l1, ns.window) for t, l0, g, l1 in candidates(ns.polyhedra_only)]
    print(f"{len(jobs)} candidates", file=sys.stderr)
    t0 = time.time()
    errors: dict[str, int] = {}
    n_ok = 0
    with open(ns.out, "w") as fh, ProcessPoolExecutor(ns.jobs) as ex:
        for res, err in ex.map(evaluate, jobs, chunksize=4):
            if res is None:
                errors[err] = errors.get(err, 0) + 1
                continue
            n_ok += 1
            fh.write(json.dumps(res) + "\n")
            fh.flush()
    print(f"{n_ok} built, errors {errors}, {time.time() - t0:.0f}s", file=sys.stderr)


if __name__ == "__main__":
    main()
