"""Command-line interface: ``skeletal list | build | verify | verify-all | classify | export``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .catalog import KINDS, default_catalog
from .errors import SkeletalError, UnknownEntry
from .scalar import Scalar

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3


class UsageError(Exception):
    pass


def _scalar_arg(text: str) -> Scalar:
    try:
        return Scalar.parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not an exact scalar: {text!r}") from exc


def _params_arg(text: str) -> tuple:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("--params takes two values: c,d")
    return tuple(_scalar_arg(p.strip()) for p in parts)


def _write(data: bytes | str, out: str | None) -> None:
    if isinstance(data, str):
        data = data.encode()
    if out is None or out == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        Path(out).write_bytes(data)


def _build(ns):
    cat = default_catalog()
    entry = cat.get(ns.id)
    if ns.params is not None and not entry.is_family:
        raise UsageError(f"{ns.id} is not a parametric family; --params does not apply")
    return entry.build(ns.window, params=ns.params, scale=ns.scale, catalog=cat, blend_scale=ns.blend_scale)


# --------------------------------------------------------------------------- commands


def cmd_list(ns) -> int:
    entries = default_catalog().list(ns.kind)
    if ns.format == "json":
        rows = [{"id": e.id, "kind": e.kind, "radicand": e.radicand, "window": str(e.window)} for e in entries]
        _write(json.dumps(rows, indent=1) + "\n", ns.out)
    else:
        width = max((len(e.id) for e in entries), default=0)
        lines = [f"{e.id:<{width}}  {e.kind}" for e in entries]
        _write("\n".join(lines) + "\n", ns.out)
    return EXIT_OK


def cmd_build(ns) -> int:
    from .serialize import dumps

    k = _build(ns)
    _write(dumps(k) + "\n", ns.out)
    s = k.summary()
    print(
        f"{s['label']}: {s['vertices']} vertices, {s['edges']} edges, {s['faces']} faces, {s['interior_vertices']} interior",
        file=sys.stderr,
    )
    return EXIT_OK


def _print_reports(reports, fmt: str, out) -> None:
    if fmt == "json":
        payload = [r.to_json() for r in reports]
        _write(json.dumps(payload if len(payload) != 1 else payload[0], indent=1) + "\n", out)
    else:
        lines = []
        for r in reports:
            lines.extend(r.lines())
        _write("\n".join(lines) + "\n", out)


def cmd_verify(ns) -> int:
    from .verify import verify_catalog_entry, verify_family

    cat = default_catalog()
    entry = cat.get(ns.id)
    if entry.is_family:
        report = verify_family(entry, ns.window, catalog=cat, params=ns.params)
    else:
        report = verify_catalog_entry(entry, ns.window, catalog=cat, stability=ns.stability)
    _print_reports([report], ns.format, ns.out)
    return EXIT_OK if report.ok else EXIT_MISMATCH


def cmd_verify_all(ns) -> int:
    from .verify import verify_all

    cat = default_catalog()
    ids = [e.id for e in cat.list(ns.kind)]
    reports = verify_all(cat, ns.window, jobs=ns.jobs, ids=ids, stability=ns.stability)
    matched = sum(r.counts()[0] for r in reports)
    total = sum(r.counts()[1] for r in reports)
    bad = [r.id for r in reports if not r.ok]
    if ns.format == "json":
        _write(
            json.dumps(
                {"entries": len(reports), "fields_matched": matched, "fields_total": total, "failed": bad,
                 "reports": [r.to_json() for r in reports]},
                indent=1,
            )
            + "\n",
            ns.out,
        )
    else:
        lines = [f"{'ok ' if r.ok else 'BAD'} {r.id} ({r.counts()[0]}/{r.counts()[1]})" for r in reports]
        lines.append(f"{len(reports) - len(bad)}/{len(reports)} entries verified, {matched}/{total} field matches")
        for r in reports:
            if not r.ok:
                lines.extend(r.lines())
        _write("\n".join(lines) + "\n", ns.out)
    return EXIT_OK if not bad else EXIT_MISMATCH


def cmd_classify(ns) -> int:
    from .classification import classify
    from .serialize import loads

    try:
        text = Path(ns.file).read_text() if ns.file != "-" else sys.stdin.read()
    except OSError as exc:
        raise UsageError(str(exc)) from exc
    try:
        k = loads(text)
    except (ValueError, KeyError) as exc:
        raise UsageError(f"{ns.file}: not a complex file ({exc})") from exc
    rec = classify(k, a=ns.scale)
    if ns.format == "json":
        _write(json.dumps(rec.to_json(), indent=1) + "\n", ns.out)
    else:
        lines = [f"{name}: {value}" for name, value in rec.to_json().items() if value is not None]
        _write("\n".join(lines) + "\n", ns.out)
    return EXIT_OK


def cmd_export(ns) -> int:
    from .serialize import export

    k = _build(ns)
    _write(export(k, ns.format, ns.precision, ns.truncate), ns.out)
    return EXIT_OK


# --------------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="skeletal", description="Build, classify and verify skeletal polyhedra and complexes.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common_build(p):
        p.add_argument("id", help="catalog entry id")
        p.add_argument("--window", type=_scalar_arg, default=None, help="window radius in units of the entry scale (default: entry default, 3)")
        p.add_argument("--scale", type=_scalar_arg, default=None, help="similarity factor applied to the entry")
        p.add_argument("--params", type=_params_arg, default=None, help="family parameters c,d")
        p.add_argument("--blend-scale", type=_scalar_arg, default=None, help="height of the linear component of a blend")
        p.add_argument("--out", default=None, help="output file (default stdout)")

    p = sub.add_parser("list", help="list catalog entries")
    p.add_argument("--kind", choices=KINDS)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_list)

    p = sub.add_parser("build", help="build an entry and write its exact JSON encoding")
    common_build(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="verify one entry against its expected record")
    common_build(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--stability", action="store_true", help="also compare with the next window")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("verify-all", help="verify every catalog entry")
    p.add_argument("--window", type=_scalar_arg, default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--kind", choices=KINDS)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--stability", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_verify_all)

    p = sub.add_parser("classify", help="classify a complex read from a JSON file")
    p.add_argument("file", help="JSON complex file, or - for stdin")
    p.add_argument("--scale", type=_scalar_arg, default=None, help="lattice unit a for vertex-set names")
    p.add_argument("--format", choices=("text", "json"), default="json")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("export", help="export an entry as OFF, OBJ or JSON")
    common_build(p)
    p.add_argument("--format", choices=("off", "obj", "json"), default="off")
    p.add_argument("--precision", type=int, default=9)
    p.add_argument("--truncate", action="store_true", help="write infinite faces as marked paths")
    p.set_defaults(func=cmd_export)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    if getattr(ns, "jobs", 1) is not None and getattr(ns, "jobs", 1) < 1:
        parser.error("--jobs must be at least 1")
    if getattr(ns, "precision", 9) < 0:
        parser.error("--precision must be nonnegative")
    try:
        return ns.func(ns)
    except (UsageError, UnknownEntry) as exc:
        msg = exc.args[0] if exc.args else str(exc)
        print(f"skeletal: error: {msg}", file=sys.stderr)
        return EXIT_USAGE
    except SkeletalError as exc:
        print(f"skeletal: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # noqa: BLE001
        print(f"skeletal: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
