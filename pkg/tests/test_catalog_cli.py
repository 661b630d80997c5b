from __future__ import annotations

import json
import shutil
import subprocess
import sys
from collections import Counter

import pytest

from skeletal.catalog import EXPECTED_COUNTS, catalog_build, catalog_list, default_catalog, load_catalog
from skeletal.classification import classify, congruent, face_kind
from skeletal.cli import main
from skeletal.errors import UnknownEntry, UnsupportedFace
from skeletal.scalar import Scalar
from skeletal.serialize import dumps, export, loads, parse_off_vertices, render, same_complex


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# --------------------------------------------------------------------------- catalog


def test_counts_by_kind():
    counts = Counter(e.kind for e in catalog_list())
    assert dict(counts) == EXPECTED_COUNTS
    assert len(catalog_list("finite-regular")) == 18
    assert len(catalog_list("pure-apeirohedron")) == 12
    fixed = sum(1 for e in catalog_list() if not e.is_family)
    assert (fixed, len(catalog_list()) - fixed) == (73, 6)


def test_ids_unique_and_expected_populated():
    ids = [e.id for e in catalog_list()]
    assert len(ids) == len(set(ids))
    for e in catalog_list():
        assert e.expected, e.id


def test_unknown_entry():
    with pytest.raises(UnknownEntry):
        catalog_build("no-such-thing")


def test_petrie_cube():
    k = catalog_build("petrie-cube")
    assert (len(k.vertices), len(k.edges), len(k.faces)) == (8, 12, 4)
    assert {face_kind(k, f).label for f in range(4)} == {"6_s"}


def test_k6_faces_are_cube_petrie_polygons():
    k = catalog_build("K6(1,2)", window=3)
    for f in k.faces[:50]:
        pts = [k.vertices[i] for i in f.ids]
        spans = [sorted({p[c] for p in pts}) for c in range(3)]
        # six corners of one axis-parallel cube
        assert all(len(s) == 2 for s in spans)
        assert len({s[1] - s[0] for s in spans}) == 1
        assert len(set(pts)) == 6
    assert classify(k, fields=[]).r == 8


def test_q_family_regular_member():
    q = catalog_build("Q(c,d)", params=(0, 1), window=3)
    assert congruent(q, catalog_build("{4,6|4}", window=3))


def test_k1_lattice_and_k9_special_group():
    rec = classify(catalog_build("K1(1,2)", window=3), fields=["vertex_set"])
    assert rec.vertex_set == "Lambda(a,a,0)"
    rec = classify(catalog_build("K9(1,1)", window=3), fields=[])
    assert rec.special_group == "[3,4]+"


def test_catalog_dir_override(tmp_path, monkeypatch):
    src = default_catalog().source
    shutil.copy(src, tmp_path / "catalog.json")
    data = json.loads((tmp_path / "catalog.json").read_text())
    data["entries"] = [e for e in data["entries"] if e["kind"] == "finite-regular"]
    (tmp_path / "catalog.json").write_text(json.dumps(data))
    monkeypatch.setenv("SKELETAL_CATALOG_DIR", str(tmp_path))
    assert len(load_catalog().list()) == 18


# --------------------------------------------------------------------------- serialization


def test_json_round_trip_exact():
    k = catalog_build("K1(1,2)", window=2)
    back = loads(dumps(k))
    assert same_complex(k, back)
    assert back.vertices == k.vertices


def test_same_complex_ignores_numbering():
    from skeletal.incidence import build_complex

    k = catalog_build("cube")
    perm = list(reversed(range(len(k.vertices))))
    inv = {old: new for new, old in enumerate(perm)}
    moved = build_complex(
        [k.vertices[i] for i in perm],
        [tuple(sorted((inv[a], inv[b]))) for a, b in k.edges],
        [[inv[i] for i in f.ids] for f in k.faces],
    )
    assert same_complex(k, moved)
    fewer = build_complex(k.vertices, k.edges, [f.ids for f in k.faces[:-1]], validate=False)
    assert not same_complex(k, fewer)


def test_off_cube():
    text = export(catalog_build("cube"), "off").decode()
    lines = text.splitlines()
    assert lines[0] == "OFF"
    assert lines[1].split()[:2] == ["8", "6"]


def test_off_rejects_infinite_faces():
    k = catalog_build("{inf,4}_4", window=2)
    with pytest.raises(UnsupportedFace):
        export(k, "off")
    assert "truncated" in export(k, "off", truncate=True).decode()


def test_render_sqrt2():
    assert render(Scalar.sqrt(2), 12) == "1.414213562373"
    assert render(-Scalar.sqrt(2) / 2, 3) == "-0.707"


def test_off_precision_matches_exact():
    k = catalog_build("icosahedron")
    got = parse_off_vertices(export(k, "off", precision=12).decode())
    for p, q in zip(k.vertices, got):
        assert all(abs(float(a) - b) < 1e-9 for a, b in zip(p, q))


# --------------------------------------------------------------------------- command line


def test_cli_list(capsys):
    code, out, _ = run(capsys, "list", "--kind", "rank4-skeleton")
    assert code == 0 and len(out.splitlines()) == 4
    code, out, _ = run(capsys, "list", "--format", "json")
    assert len(json.loads(out)) == 79


def test_cli_unknown_entry_is_usage_error(capsys):
    code, _, err = run(capsys, "verify", "nope")
    assert code == 2 and "nope" in err


def test_cli_bad_scalar_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["build", "cube", "--window", "abc"])
    assert exc.value.code == 2


def test_cli_verify_skeleton(capsys):
    code, out, _ = run(capsys, "verify", "skeleton-{4,3,4}", "--format", "json")
    rep = json.loads(out)
    assert code == 0
    field = rep["fields"]["flag_stabilizer_order"]
    assert field["computed"] == 2 and field["match"]


def test_cli_verify_blended_skeleton(capsys):
    # the Petrie-swapped generators number the vertices differently
    code, out, _ = run(capsys, "verify", "skeleton-{{inf,4}_4#{},{4,3}}", "--format", "json")
    assert code == 0 and json.loads(out)["fields"]["petrie_pair_skeleton"]["match"]


def test_cli_verify_k6(capsys):
    code, out, _ = run(capsys, "verify", "K6(1,2)", "--window", "3", "--format", "json")
    assert code == 0
    r = json.loads(out)["fields"]["r"]
    assert (r["expected"], r["computed"], r["match"]) == (8, 8, True)


def test_cli_build_and_classify(tmp_path, capsys):
    path = tmp_path / "cube.json"
    code, _, err = run(capsys, "build", "cube", "--out", str(path))
    assert code == 0 and "8 vertices" in err
    code, out, _ = run(capsys, "classify", str(path))
    rec = json.loads(out)
    assert (code, rec["schlafli"], rec["flag_orbits"]) == (0, "{4,3}", 1)


def test_cli_classify_bad_file(tmp_path, capsys):
    path = tmp_path / "junk.json"
    path.write_text("{}")
    code, _, _ = run(capsys, "classify", str(path))
    assert code == 2


def test_cli_export_formats(capsys):
    code, out, _ = run(capsys, "export", "octahedron", "--format", "obj")
    assert code == 0 and sum(line.startswith("f ") for line in out.splitlines()) == 8
    code, out, _ = run(capsys, "export", "octahedron", "--format", "json")
    assert code == 0 and same_complex(loads(out), catalog_build("octahedron"))


def test_cli_params_only_for_families(capsys):
    code, _, _ = run(capsys, "build", "cube", "--params", "1,1")
    assert code == 2


def test_cli_mismatch_exit_code(tmp_path, monkeypatch, capsys):
    data = json.loads(default_catalog().source.read_text())
    for e in data["entries"]:
        if e["id"] == "cube":
            e["expected"]["schlafli"] = "{4,4}"
    (tmp_path / "catalog.json").write_text(json.dumps(data))
    monkeypatch.setenv("SKELETAL_CATALOG_DIR", str(tmp_path))
    code, out, _ = run(capsys, "verify", "cube")
    assert code == 1 and "schlafli" in out


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "skeletal.cli", "list", "--kind", "chiral-family"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert len(proc.stdout.splitlines()) == 6
