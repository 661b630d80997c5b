"""The named catalog: entries, their constructions and expected records."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .construction import (
    ChiralGeneratorPair,
    GeneratorTriple,
    Rank4Generators,
    family,
    generate_from_chiral,
    two_skeleton,
    wythoff,
)
from .errors import UnknownEntry
from .geometry import Isometry, Vec3
from .incidence import PolygonalComplex
from .scalar import Scalar, scalar

CATALOG_ENV = "SKELETAL_CATALOG_DIR"
CATALOG_FILE = "catalog.json"
SCHEMA = "skeletal.catalog/1"

KINDS = (
    "finite-regular",
    "planar-apeirohedron",
    "blended",
    "pure-apeirohedron",
    "rank4-skeleton",
    "simply-flag-transitive-complex",
    "chiral-family",
)

# entries per kind stated by the classification theorems
EXPECTED_COUNTS = {
    "finite-regular": 18,
    "planar-apeirohedron": 6,
    "blended": 12,
    "pure-apeirohedron": 12,
    "rank4-skeleton": 4,
    "simply-flag-transitive-complex": 21,
    "chiral-family": 6,
}


def _scaled_isometry(g: Isometry, s: Scalar) -> Isometry:
    return Isometry._raw(g.linear, g.translation * s)


def scale_generators(gen, s):
    """Conjugate generator data by the similarity ``x -> s x``."""
    s = scalar(s)
    if s == 1:
        return gen
    if isinstance(gen, GeneratorTriple):
        return GeneratorTriple(
            _scaled_isometry(gen.r0, s),
            _scaled_isometry(gen.r1, s),
            tuple(_scaled_isometry(g, s) for g in gen.g2),
            gen.base_vertex * s,
        )
    if isinstance(gen, Rank4Generators):
        return Rank4Generators(tuple(_scaled_isometry(g, s) for g in gen.t), gen.base_vertex * s)
    raise TypeError(f"cannot scale {type(gen).__name__}")


@dataclass
class CatalogEntry:
    id: str
    kind: str
    construction: dict
    expected: dict = field(default_factory=dict)
    scale: Scalar = field(default_factory=lambda: Scalar.of(1))
    radicand: int = 1
    window: Scalar = field(default_factory=lambda: Scalar.of(3))
    params: tuple | None = None
    stated: tuple = ()
    notes: str = ""

    @property
    def is_family(self) -> bool:
        return self.kind == "chiral-family"

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite-regular"

    # -- generator data

    def generators(self, catalog: Catalog | None = None, blend_scale=None):
        c = self.construction
        op = c["op"]
        if op == "wythoff":
            return GeneratorTriple.from_json(c["generators"])
        if op == "two-skeleton":
            return Rank4Generators.from_json(c["generators"])
        if op == "blend":
            from .construction import blend_generators

            planar = (catalog or default_catalog()).get(c["planar"]).generators()
            h = scalar(blend_scale) if blend_scale is not None else Scalar.from_json(c["h"])
            return blend_generators(planar, c["component"], h)
        if op == "chiral":
            return chiral_family(self)
        raise ValueError(f"unknown construction {op!r}")

    def instance(self, params=None) -> ChiralGeneratorPair:
        fam = chiral_family(self)
        c, d = params if params is not None else self.params
        return fam.instance(c, d)

    # -- building

    def build(
        self,
        window=None,
        params=None,
        scale=None,
        catalog: Catalog | None = None,
        blend_scale=None,
        validate: bool = True,
    ) -> PolygonalComplex:
        """Construct the entry.  ``window`` is in units of the entry's scale."""
        s = scalar(scale) if scale is not None else Scalar.of(1)
        radius = None
        if not self.is_finite:
            w = scalar(window) if window is not None else self.window
            radius = w * self.scale * s
        label = self.id
        if self.is_family:
            pair = self.instance(params)
            if s != 1:
                pair = ChiralGeneratorPair(
                    _scaled_isometry(pair.s1, s), pair.s2, pair.base_vertex, pair.params, pair.family, pair.p, pair.q
                )
            c, d = pair.params
            label = f"{self.construction['family']}({c},{d})"
            return generate_from_chiral(pair, radius, label=label, validate=validate)
        gen = scale_generators(self.generators(catalog, blend_scale), s)
        op = self.construction["op"]
        if op == "two-skeleton":
            return two_skeleton(gen, radius, label=label, validate=validate)
        return wythoff(gen, radius, label=label, validate=validate)

    # -- persistence

    def to_json(self) -> dict:
        out = {
            "id": self.id,
            "kind": self.kind,
            "construction": self.construction,
            "expected": self.expected,
            "scale": self.scale.to_json(),
            "radicand": self.radicand,
            "window": self.window.to_json(),
            "stated": list(self.stated),
        }
        if self.params is not None:
            out["params"] = [scalar(p).to_json() for p in self.params]
        if self.notes:
            out["notes"] = self.notes
        return out

    @classmethod
    def from_json(cls, obj: dict) -> CatalogEntry:
        params = obj.get("params")
        return cls(
            id=obj["id"],
            kind=obj["kind"],
            construction=obj["construction"],
            expected=obj.get("expected", {}),
            scale=Scalar.from_json(obj.get("scale", 1)),
            radicand=obj.get("radicand", 1),
            window=Scalar.from_json(obj.get("window", 3)),
            params=None if params is None else tuple(Scalar.from_json(p) for p in params),
            stated=tuple(obj.get("stated", ())),
            notes=obj.get("notes", ""),
        )


def chiral_family(entry: CatalogEntry):
    c = entry.construction
    scales = {k: Scalar.from_json(v) for k, v in c.get("scales", {}).items()}
    return family(c["family"], scales=scales or None)


@dataclass
class Catalog:
    entries: dict
    source: Path | None = None

    def get(self, entry_id: str) -> CatalogEntry:
        try:
            return self.entries[entry_id]
        except KeyError:
            raise UnknownEntry(f"no catalog entry {entry_id!r}") from None

    def list(self, kind: str | None = None) -> list[CatalogEntry]:
        if kind is not None and kind not in KINDS:
            raise ValueError(f"unknown kind {kind!r}; choose one of {', '.join(KINDS)}")
        return [e for e in self.entries.values() if kind is None or e.kind == kind]

    def counts(self) -> dict:
        out = {k: 0 for k in KINDS}
        for e in self.entries.values():
            out[e.kind] += 1
        return out

    def build(self, entry_id: str, window=None, params=None, scale=None, **kw) -> PolygonalComplex:
        return self.get(entry_id).build(window, params, scale, catalog=self, **kw)

    def to_json(self) -> dict:
        return {"schema": SCHEMA, "entries": [e.to_json() for e in self.entries.values()]}


def catalog_dir() -> Path:
    env = os.environ.get(CATALOG_ENV)
    if env:
        return Path(env)
    return Path(str(resources.files("skeletal") / "data"))


def load_catalog(directory: str | os.PathLike | None = None) -> Catalog:
    path = Path(directory) if directory is not None else catalog_dir()
    file = path / CATALOG_FILE if path.is_dir() else path
    with open(file) as fh:
        obj = json.load(fh)
    if obj.get("schema") != SCHEMA:
        raise ValueError(f"{file}: unsupported catalog schema {obj.get('schema')!r}")
    entries = {}
    for rec in obj["entries"]:
        e = CatalogEntry.from_json(rec)
        if e.id in entries:
            raise ValueError(f"{file}: duplicate entry id {e.id!r}")
        entries[e.id] = e
    return Catalog(entries, file)


_DEFAULT: dict = {}


def default_catalog() -> Catalog:
    key = str(catalog_dir())
    if key not in _DEFAULT:
        _DEFAULT[key] = load_catalog()
    return _DEFAULT[key]


def catalog_list(kind: str | None = None) -> list[CatalogEntry]:
    return default_catalog().list(kind)


def catalog_build(entry_id: str, params=None, window=None, scale=None) -> PolygonalComplex:
    return default_catalog().build(entry_id, window=window, params=params, scale=scale)


def base_vertex_origin(v) -> Vec3:
    return Vec3(v)
