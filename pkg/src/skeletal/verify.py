"""Rebuild catalog entries and compare them with their expected records."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .catalog import Catalog, CatalogEntry, default_catalog
from .classification import (
    ClassificationRecord,
    SymmetryContext,
    check_vertex_set,
    classify,
    congruent,
    flag_orbits,
)
from .construction import (
    ChiralGeneratorPair,
    GeneratorTriple,
    generate_from_chiral,
    petrie_dual,
    petrie_swap_rank4,
    two_skeleton,
)
from .errors import NotTwoOrbit, SkeletalError
from .geometry import Isometry
from .incidence import Flag, PolygonalComplex
from .scalar import scalar
from .serialize import same_complex

RECORD_FIELDS = tuple(ClassificationRecord.__dataclass_fields__)


def _norm(value):
    """JSON-comparable form of a record value."""
    if isinstance(value, tuple):
        return [_norm(v) for v in value]
    if isinstance(value, list):
        return [_norm(v) for v in value]
    if isinstance(value, dict):
        return {k: _norm(v) for k, v in value.items()}
    return value


@dataclass
class FieldCheck:
    expected: object
    computed: object
    stated: bool = False

    @property
    def match(self) -> bool:
        return _norm(self.expected) == _norm(self.computed)

    def to_json(self) -> dict:
        return {"expected": _norm(self.expected), "computed": _norm(self.computed), "match": self.match, "stated": self.stated}


@dataclass
class VerificationReport:
    id: str
    kind: str
    fields: dict = field(default_factory=dict)
    radii: dict = field(default_factory=dict)
    timing: dict = field(default_factory=dict)
    sizes: dict = field(default_factory=dict)
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None and all(c.match for c in self.fields.values())

    @property
    def mismatches(self) -> list[str]:
        return [name for name, c in self.fields.items() if not c.match]

    def counts(self) -> tuple[int, int]:
        return sum(c.match for c in self.fields.values()), len(self.fields)

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "kind": self.kind,
            "ok": self.ok,
            "fields": {k: c.to_json() for k, c in self.fields.items()},
            "radii": self.radii,
            "timing": self.timing,
            "sizes": self.sizes,
            "error": self.error,
        }

    def lines(self) -> list[str]:
        out = [f"{self.id} ({self.kind}): {'OK' if self.ok else 'MISMATCH'}"]
        if self.error:
            out.append(f"  error: {self.error}")
        for name, c in self.fields.items():
            mark = "ok " if c.match else "BAD"
            out.append(f"  [{mark}] {name}: expected {_norm(c.expected)!r}, computed {_norm(c.computed)!r}")
        return out


# --------------------------------------------------------------------------- extra checks


def fig1_relation(gen: GeneratorTriple) -> bool:
    """``(R0 R1)^4 (R0 R1 R2)^3 == (R0 R1 R2)^3 (R0 R1)^4`` as isometries."""
    a = gen.r0 * gen.r1
    b = gen.r0 * gen.r1 * gen.r2
    return (a**4) * (b**3) == (b**3) * (a**4)


def petrie_involution(k: PolygonalComplex) -> bool:
    return same_complex(petrie_dual(petrie_dual(k)), k)


def _base_edge_swap(k: PolygonalComplex, pair: ChiralGeneratorPair) -> bool:
    """``T = S1 S2`` exchanges the ends of the base edge and its two faces."""
    t: Isometry = pair.t
    v = k.index[pair.base_vertex]
    w = k.index.get(t.apply(pair.base_vertex))
    if w is None or t.apply(k.vertices[w]) != k.vertices[v]:
        return False
    e = k.edge_index.get((v, w) if v < w else (w, v))
    if e is None:
        return False
    faces = k.edge_faces[e]
    if len(faces) != 2:
        return False
    ctx = SymmetryContext(k)
    maps = ctx.verify(t)
    if maps is None:
        return False
    img = ctx.map_flag(maps[0], Flag(v, e, faces[0]))
    return img == Flag(w, e, faces[1])


# --------------------------------------------------------------------------- entries


def _computed_record(k: PolygonalComplex, entry: CatalogEntry) -> dict:
    fields = None
    if entry.expected:
        fields = [f for f in entry.expected if f in RECORD_FIELDS]
    rec = classify(k, fields=fields, a=entry.scale)
    return rec.to_json()


def verify_catalog_entry(
    entry: CatalogEntry,
    window=None,
    *,
    catalog: Catalog | None = None,
    stability: bool = False,
    extra: bool = True,
) -> VerificationReport:
    """Build ``entry`` and compare each expected field with its computed value.

    With ``stability`` the entry is also built one scale unit further out and
    every field must come out the same.
    """
    catalog = catalog or default_catalog()
    report = VerificationReport(entry.id, entry.kind)
    if entry.is_family:
        return verify_family(entry, window, catalog=catalog)
    w = scalar(window) if window is not None else entry.window
    t0 = time.perf_counter()
    try:
        k = entry.build(w, catalog=catalog)
    except SkeletalError as exc:
        report.error = f"{type(exc).__name__}: {exc}"
        return report
    t1 = time.perf_counter()
    report.radii = {"window": None if k.window is None else str(k.window), "extent": None if k.extent is None else str(k.extent)}
    report.sizes = {"vertices": len(k.vertices), "edges": len(k.edges), "faces": len(k.faces), "interior": len(k.interior)}
    try:
        computed = _computed_record(k, entry)
    except SkeletalError as exc:
        report.error = f"{type(exc).__name__}: {exc}"
        return report
    t2 = time.perf_counter()
    for name, value in entry.expected.items():
        if name in RECORD_FIELDS:
            report.fields[name] = FieldCheck(value, computed.get(name), name in entry.stated)
    if extra:
        _extra_checks(entry, k, report, catalog)
    if entry.expected.get("vertex_set") not in (None, "other"):
        detail = check_vertex_set(k, entry.expected["vertex_set"], entry.scale)
        report.fields["vertex_set_members"] = FieldCheck(True, detail["members"])
        report.fields["vertex_set_present"] = FieldCheck(True, detail["complete"])
    if stability and not entry.is_finite:
        k2 = entry.build(w + 1, catalog=catalog)
        again = _computed_record(k2, entry)
        drift = sorted(n for n in entry.expected if n in RECORD_FIELDS and _norm(again.get(n)) != _norm(computed.get(n)))
        report.fields["stable"] = FieldCheck([], drift)
        report.radii["stability_window"] = str(w + 1)
    report.timing = {"build": round(t1 - t0, 3), "classify": round(t2 - t1, 3), "total": round(time.perf_counter() - t0, 3)}
    return report


def _extra_checks(entry: CatalogEntry, k: PolygonalComplex, report: VerificationReport, catalog: Catalog) -> None:
    checks = entry.expected.get("checks", {})
    if "petrie_involution" in checks:
        report.fields["petrie_involution"] = FieldCheck(checks["petrie_involution"], petrie_involution(k))
    if "fig1_relation" in checks:
        gen = entry.generators(catalog)
        report.fields["fig1_relation"] = FieldCheck(checks["fig1_relation"], fig1_relation(gen))
    if "petrie_pair_skeleton" in checks:
        gen = entry.generators(catalog)
        other = two_skeleton(petrie_swap_rank4(gen), k.window)
        report.fields["petrie_pair_skeleton"] = FieldCheck(checks["petrie_pair_skeleton"], same_complex(other, k))


# --------------------------------------------------------------------------- chiral


def verify_chiral(pair: ChiralGeneratorPair, window=3, *, expect: str = "chiral", scale=1) -> VerificationReport:
    """Relations, chirality (or regularity) and the base-edge half-turn."""
    c, d = pair.params if pair.params else (None, None)
    label = f"{pair.family}({c},{d})"
    report = VerificationReport(label, "chiral-family")
    rel = pair.relations()
    for name, ok in rel.items():
        report.fields[f"relation {name}"] = FieldCheck(True, ok)
    t0 = time.perf_counter()
    radius = scalar(window) * scalar(scale)
    try:
        k = generate_from_chiral(pair, radius, label=label)
    except SkeletalError as exc:
        report.error = f"{type(exc).__name__}: {exc}"
        return report
    report.sizes = {"vertices": len(k.vertices), "interior": len(k.interior)}
    report.radii = {"window": None if k.window is None else str(k.window)}
    orbits = flag_orbits(k)
    if expect == "chiral":
        report.fields["flag_orbits"] = FieldCheck(2, orbits.count)
        try:
            cls = two_orbit_class_of(k, orbits)
        except NotTwoOrbit:
            cls = None
        report.fields["two_orbit_class"] = FieldCheck("2_{}", cls)
    else:
        report.fields["flag_orbits"] = FieldCheck(1, orbits.count)
    report.fields["base_edge_half_turn"] = FieldCheck(True, _base_edge_swap(k, pair))
    report.timing = {"total": round(time.perf_counter() - t0, 3)}
    return report


def two_orbit_class_of(k, orbits):
    from .classification import two_orbit_class

    return two_orbit_class(k, orbits)


def verify_family(entry: CatalogEntry, window=None, *, catalog: Catalog | None = None, params=None) -> VerificationReport:
    """A chiral family: the sample member is chiral and every regular member
    is congruent (up to similarity) to its catalog entry."""
    catalog = catalog or default_catalog()
    w = scalar(window) if window is not None else entry.window
    t0 = time.perf_counter()
    pair = entry.instance(params)
    report = verify_chiral(pair, w, scale=entry.scale)
    report.id = entry.id
    for params_, target, _finite in chiral_family_regular(entry):
        key = f"regular {entry.construction['family']}{tuple(int(x) for x in params_)} ~ {target}"
        try:
            k = entry.build(w, params=params_, catalog=catalog)
            other = catalog.get(target).build(w, catalog=catalog)
            ok = congruent(k, other)
        except SkeletalError as exc:
            ok = f"{type(exc).__name__}: {exc}"
        report.fields[key] = FieldCheck(True, ok)
    report.timing = {"total": round(time.perf_counter() - t0, 3)}
    return report


def chiral_family_regular(entry: CatalogEntry) -> list:
    return [(tuple(p), target, finite) for p, target, finite in entry.construction.get("regular", [])]


def verify_all(catalog: Catalog | None = None, window=None, jobs: int = 1, ids=None, stability: bool = False):
    """Verify every entry (or ``ids``); runs in a process pool when ``jobs > 1``."""
    catalog = catalog or default_catalog()
    entries = [catalog.get(i) for i in ids] if ids else list(catalog.entries.values())
    if jobs <= 1:
        return [verify_catalog_entry(e, window, catalog=catalog, stability=stability) for e in entries]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(jobs) as ex:
        futures = [ex.submit(_verify_one, str(catalog.source), e.id, window, stability) for e in entries]
        return [f.result() for f in futures]


def _verify_one(source, entry_id, window, stability):
    from .catalog import load_catalog

    cat = load_catalog(source)
    return verify_catalog_entry(cat.get(entry_id), window, catalog=cat, stability=stability)
