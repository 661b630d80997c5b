"""Exact JSON encoding of complexes, and OFF / OBJ mesh export."""

from __future__ import annotations

import json
from decimal import Decimal, localcontext

from .errors import UnsupportedFace
from .geometry import Isometry, Vec3
from .groups import Lattice
from .incidence import Face, PolygonalComplex, build_complex, canonical_cycle, canonical_path, sort_key
from .scalar import Scalar

SCHEMA = "skeletal.complex/1"
FORMATS = ("json", "off", "obj")


# --------------------------------------------------------------------------- JSON


def _scalar_or_none(s):
    return None if s is None else s.to_json()


def complex_to_json(k: PolygonalComplex) -> dict:
    faces = []
    for f in k.faces:
        if f.closed:
            faces.append({"cycle": list(f.ids)})
        else:
            rec = {"path": list(f.ids)}
            if f.step is not None:
                rec["step"] = f.step.to_json()
            faces.append(rec)
    return {
        "schema": SCHEMA,
        "label": k.label,
        "vertices": [v.to_json() for v in k.vertices],
        "edges": [list(e) for e in k.edges],
        "faces": faces,
        "window": _scalar_or_none(k.window),
        "extent": _scalar_or_none(k.extent),
        "interior": sorted(k.interior),
        "scale": k.scale.to_json(),
        "lattice": None if k.periodicity is None else k.periodicity.to_json(),
    }


def complex_from_json(obj: dict, validate: bool = True) -> PolygonalComplex:
    schema = obj.get("schema", SCHEMA)
    if schema != SCHEMA:
        raise ValueError(f"unsupported complex schema {schema!r}")
    faces = []
    for rec in obj["faces"]:
        if "cycle" in rec:
            faces.append(Face(tuple(rec["cycle"]), True, None))
        else:
            step = Isometry.from_json(rec["step"]) if rec.get("step") else None
            faces.append(Face(tuple(rec["path"]), False, step))
    window = obj.get("window")
    extent = obj.get("extent")
    interior = obj.get("interior")
    return build_complex(
        [Vec3.from_json(v) for v in obj["vertices"]],
        [tuple(e) for e in obj["edges"]],
        faces,
        window=None if window is None else Scalar.from_json(window),
        periodicity=None if obj.get("lattice") is None else Lattice.from_json(obj["lattice"]),
        interior=interior,
        scale=Scalar.from_json(obj.get("scale", 1)),
        label=obj.get("label"),
        validate=validate,
        extent=None if extent is None else Scalar.from_json(extent),
    )


def dumps(k: PolygonalComplex) -> str:
    return json.dumps(complex_to_json(k), indent=1)


def loads(text: str, validate: bool = True) -> PolygonalComplex:
    return complex_from_json(json.loads(text), validate=validate)


def _element_sets(k: PolygonalComplex) -> tuple:
    keys = [sort_key(v) for v in k.vertices]
    edges = {frozenset((keys[a], keys[b])) for a, b in k.edges}
    faces = set()
    for f in k.faces:
        pts = [keys[i] for i in f.ids]
        faces.add((True, canonical_cycle(pts)) if f.closed else (False, canonical_path(pts)))
    return set(keys), edges, faces, {keys[i] for i in k.interior}


def same_complex(a: PolygonalComplex, b: PolygonalComplex) -> bool:
    """Exact equality of element sets by coordinates (vertex numbering is
    irrelevant; faces compare as cycles or paths)."""
    if a.window != b.window or len(a.vertices) != len(b.vertices):
        return False
    return _element_sets(a) == _element_sets(b)


# --------------------------------------------------------------------------- floats


def render(s: Scalar, precision: int = 9) -> str:
    """Decimal rendering of an exact scalar, correct to ``precision`` places."""
    with localcontext() as ctx:
        ctx.prec = precision + 30
        a = Decimal(s.a.numerator) / Decimal(s.a.denominator)
        value = a
        if s.b:
            b = Decimal(s.b.numerator) / Decimal(s.b.denominator)
            value = a + b * Decimal(s.d).sqrt()
        q = Decimal(1).scaleb(-precision)
        text = str(value.quantize(q))
    if text.startswith("-") and set(text[1:]) <= {"0", "."}:
        text = text[1:]
    return text


def _vertex_line(v: Vec3, precision: int) -> str:
    return " ".join(render(c, precision) for c in v)


def _check_faces(k: PolygonalComplex, truncate: bool, fmt: str) -> None:
    if not truncate and any(not f.closed for f in k.faces):
        raise UnsupportedFace(f"{fmt} cannot hold infinite faces; pass truncate=True to write them as paths")


def to_off(k: PolygonalComplex, precision: int = 9, truncate: bool = False) -> str:
    _check_faces(k, truncate, "OFF")
    lines = ["OFF", f"{len(k.vertices)} {len(k.faces)} {len(k.edges)}"]
    lines += [_vertex_line(v, precision) for v in k.vertices]
    for f in k.faces:
        row = f"{len(f.ids)} " + " ".join(map(str, f.ids))
        if not f.closed:
            row += "  # truncated path"
        lines.append(row)
    return "\n".join(lines) + "\n"


def to_obj(k: PolygonalComplex, precision: int = 9, truncate: bool = False) -> str:
    _check_faces(k, truncate, "OBJ")
    lines = [f"# {k.label}" if k.label else "# complex"]
    lines += ["v " + _vertex_line(v, precision) for v in k.vertices]
    lines += [f"l {a + 1} {b + 1}" for a, b in k.edges]
    for f in k.faces:
        ids = " ".join(str(i + 1) for i in f.ids)
        if f.closed:
            lines.append("f " + ids)
        else:
            lines += ["# truncated path", "l " + ids]
    return "\n".join(lines) + "\n"


def export(k: PolygonalComplex, fmt: str = "json", precision: int = 9, truncate: bool = False) -> bytes:
    fmt = fmt.lower()
    if fmt == "json":
        text = dumps(k)
    elif fmt == "off":
        text = to_off(k, precision, truncate)
    elif fmt == "obj":
        text = to_obj(k, precision, truncate)
    else:
        raise ValueError(f"unknown format {fmt!r}; choose one of {', '.join(FORMATS)}")
    return text.encode()


def parse_off_vertices(text: str) -> list[tuple[float, float, float]]:
    """Vertex coordinates of an OFF file (used to check float rendering)."""
    rows = [ln.split("#")[0].strip() for ln in text.splitlines()]
    rows = [r for r in rows if r]
    if rows[0] != "OFF":
        raise ValueError("not an OFF file")
    nv = int(rows[1].split()[0])
    return [tuple(float(x) for x in rows[2 + i].split()) for i in range(nv)]
