import json

import pytest

from isom4.cli import (
    SCAN_CSV_HEADER,
    main,
    parse_group_spec,
    parse_hint_spec,
    read_config_file,
)
from isom4.errors import InvalidInputError
from isom4.groups import is_isomorphic, quaternion_group, symmetric

BOUND_61 = 1.0455854008586938


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


# --- spec parsing ------------------------------------------------------------


def test_parse_named_groups():
    assert parse_group_spec("S4").size == 24
    assert parse_group_spec("icosa").size == 60
    assert is_isomorphic(parse_group_spec("q8"), quaternion_group())


def test_parse_parametric_groups():
    assert parse_group_spec("cyclic:12").size == 12
    assert parse_group_spec("abelian:3,9").size == 27
    assert parse_group_spec("metacyclic:7,3,2").size == 21
    assert parse_group_spec("binary-dihedral:12").size == 12


def test_parse_group_spec_errors():
    with pytest.raises(InvalidInputError):
        parse_group_spec("frieze")
    with pytest.raises(InvalidInputError):
        parse_group_spec("cyclic:3,4")
    with pytest.raises(InvalidInputError):
        parse_group_spec("cyclic:x")
    with pytest.raises(InvalidInputError):
        parse_group_spec("frieze:3")


def test_parse_hint_spec():
    hint = parse_hint_spec("central-product:poly=octa,m=2")
    assert hint == {"kind": "central-product", "poly": "octa", "m": 2}
    assert parse_hint_spec("abelian") == {"kind": "abelian"}
    with pytest.raises(InvalidInputError):
        parse_hint_spec("u2-mixed:r")


def test_read_config_file(tmp_path):
    path = tmp_path / "suite.cfg"
    path.write_text(
        "# comment line\n"
        "seed = 3\n"
        "scan_max=80  # trailing comment\n"
        "\n",
        encoding="utf-8")
    assert read_config_file(str(path)) == {"seed": 3, "scan_max": 80}
    bad = tmp_path / "bad.cfg"
    bad.write_text("scan_max\n", encoding="utf-8")
    with pytest.raises(InvalidInputError):
        read_config_file(str(bad))
    notint = tmp_path / "notint.cfg"
    notint.write_text("seed = three\n", encoding="utf-8")
    with pytest.raises(InvalidInputError):
        read_config_file(str(notint))
    with pytest.raises(InvalidInputError):
        read_config_file(str(tmp_path / "absent.cfg"))


# --- subcommands ----------------------------------------------------------------


def test_extent_command(capsys):
    code, data = run_json(capsys, "extent", "61", "1", "1")
    assert code == 0
    assert abs(data["upper_bound"] - BOUND_61) < 1e-12
    assert data["n"] == 61


def test_extent_with_optimizer(capsys):
    code, data = run_json(capsys, "extent", "7", "1", "2",
                          "--optimize", "--restarts", "4", "--seed", "1")
    assert code == 0
    assert data["lower_bound"] <= data["upper_bound"] + 1e-9
    assert data["optimizer_iterations"] > 0


def test_extent_rejects_non_canonical(capsys):
    code, _ = run(capsys, "extent", "7", "3", "2")
    assert code == 2


def test_scan_extent_json(capsys):
    code, data = run_json(capsys, "scan-extent", "--min", "61", "--max", "65")
    assert code == 0
    assert data["violations"] == 0
    assert all(row["pass"] for row in data["rows"])


def test_scan_extent_detects_violation(capsys):
    code, data = run_json(capsys, "scan-extent", "--min", "60", "--max", "61")
    assert code == 1
    assert data["violations"] > 0


def test_scan_extent_csv_header(capsys, tmp_path):
    out = tmp_path / "scan.csv"
    code, _ = run(capsys, "scan-extent", "--min", "61", "--max", "63",
                  "--format", "csv", "--out", str(out))
    assert code == 0
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == ",".join(SCAN_CSV_HEADER)
    assert len(lines) > 1
    assert lines[1].endswith("true")


def test_h2_command_pass(capsys):
    code, data = run_json(capsys, "h2", "--group", "A4", "--m", "2")
    assert code == 0
    assert data["invariant_factors"] == [2]
    assert data["tag"] == "PASS"


def test_h2_command_discrepancy(capsys):
    code, data = run_json(capsys, "h2", "--group", "S4", "--m", "2")
    assert code == 0
    assert data["invariant_factors"] == [2, 2]
    assert data["predicted"] == [2, 2]
    assert data["advertised"] == [2]
    assert data["tag"] == "DISCREPANCY"


def test_h2_cache_round_trip(capsys, tmp_path):
    argv = ("h2", "--group", "dihedral:8", "--m", "2",
            "--cache-dir", str(tmp_path))
    code1, out1 = run(capsys, *argv)
    code2, out2 = run(capsys, *argv)
    assert code1 == code2 == 0
    assert out1 == out2
    assert list(tmp_path.glob("*.json"))


def test_extensions_command(capsys):
    code, data = run_json(capsys, "extensions", "--group", "dihedral:6",
                          "--m", "2")
    assert code == 0
    assert data["class_total"] == 2
    assert len(data["isomorphism_types"]) == 2
    assert all(t["order"] == 12 for t in data["isomorphism_types"])


def test_embed_command_pass(capsys):
    code, data = run_json(capsys, "embed", "--group", "cyclic:12",
                          "--hint", "abelian")
    assert code == 0
    assert data["status"] == "PASS"
    assert data["dimension"] == 5
    assert data["residual"] < 1e-9


def test_embed_command_unsupported(capsys):
    code, data = run_json(capsys, "embed", "--group", "abelian:2,2,2",
                          "--hint", "two-group")
    assert code == 0
    assert data["status"] == "UNSUPPORTED"


def test_embed_command_hint_mismatch(capsys):
    code, _ = run(capsys, "embed", "--group", "cyclic:12",
                  "--hint", "klein-3power:power=1")
    assert code == 2


def test_fixedpoint_catalog(capsys):
    code, data = run_json(capsys, "fixedpoint", "--catalog")
    assert code == 0
    labels = {e["label"] for e in data}
    assert labels == {"cp2-conjugation", "cp2-holomorphic-split",
                      "free-involution-hypothetical"}
    conj = next(e for e in data if e["label"] == "cp2-conjugation")
    assert conj["fix_euler"] == 1
    assert conj["derived_self_intersection"] == -1


def test_fixedpoint_batches(capsys):
    code, data = run_json(capsys, "fixedpoint", "--manifold", "cp2",
                          "--count", "20", "--seed", "5")
    assert code == 0
    assert data["all_pass"]
    code, data = run_json(capsys, "fixedpoint", "--count", "20")
    assert code == 0
    assert data["count"] == 20


def test_classify_command(capsys):
    code, data = run_json(capsys, "classify", "--b2", "2", "--parity", "odd",
                          "--pseudofree", "true", "--form", "odd")
    assert code == 0
    ids = {r["id"] for r in data}
    assert "odd-b2-2-cyclic" in ids
    assert "odd-form-pseudofree-families" in ids


def test_classify_rejects_bad_b2(capsys):
    code, _ = run(capsys, "classify", "--b2", "9", "--parity", "odd")
    assert code == 2


def test_verify_all_rejects_unknown_config_key(capsys, tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("volume = 3\n", encoding="utf-8")
    code, _ = run(capsys, "verify-all", "--config", str(cfg))
    assert code == 2


def test_usage_error_exits_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["scan-extent"])  # missing required --min/--max
    assert exc.value.code == 2
