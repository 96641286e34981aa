"""CLI behavior: verbs, suites, exit codes, reports, determinism."""

import json
from pathlib import Path

import pytest

from qgcheck.cli import main
from qgcheck.modelio import parse_model
from qgcheck.models import builtin

MODELS_DIR = Path(__file__).resolve().parent.parent / "models"


def model_path(name):
    return str(MODELS_DIR / f"{name}.json")


def test_verify_builtin_name():
    assert main(["verify", "trivial"]) == 0


def test_verify_model_file():
    assert main(["verify", model_path("c_z2")]) == 0


def test_verify_broken_model_exits_one(capsys):
    assert main(["verify", model_path("broken")]) == 1
    out = capsys.readouterr().out
    assert "FAIL" in out


def test_verify_unknown_model_exits_two(capsys):
    assert main(["verify", "no_such_model"]) == 2
    assert "built-ins" in capsys.readouterr().err


def test_verify_malformed_file_exits_two(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["verify", str(bad)]) == 2
    assert "line" in capsys.readouterr().err


def test_explicit_analytic_suite_is_refused_off_tier(capsys):
    assert main(["verify", model_path("sweedler"), "--suite", "analytic"]) == 2
    assert "mu" in capsys.readouterr().err


def test_suite_all_skips_analytic_off_tier(capsys):
    assert main(["verify", model_path("sweedler"), "--suite", "all"]) == 0
    out = capsys.readouterr().out
    assert "SKIP" in out and "analytic.tier" in out


def test_report_is_deterministic_for_fixed_seed(tmp_path):
    reports = []
    for run in range(2):
        out = tmp_path / f"report{run}.json"
        code = main(["verify", model_path("c_s3"), "--seed", "7",
                     "--report", str(out)])
        assert code == 0
        data = json.loads(out.read_text())
        for rec in data["checks"]:
            rec.pop("wall_ms")
        reports.append(json.dumps(data, sort_keys=True))
    assert reports[0] == reports[1]


def test_verify_tol_flag_loosens_analytic_layer():
    assert main(["verify", model_path("c_z3"), "--tol", "1e-8"]) == 0


def test_dual_output_verifies_and_roundtrips(tmp_path):
    out = tmp_path / "dual.json"
    assert main(["dual", model_path("c_z2"), "-o", str(out)]) == 0
    assert main(["verify", str(out)]) == 0
    dual = parse_model(str(out))
    assert dual.name == "c(z2)^"
    assert dual.dim == 2


def test_build_group_matches_builtin(tmp_path):
    out = tmp_path / "c_s3.json"
    assert main(["build-group", "--table", str(MODELS_DIR / "s3_table.json"),
                 "--kind", "function", "-o", str(out)]) == 0
    built = parse_model(str(out))
    reference = builtin("c_s3")
    assert built.name == reference.name
    assert (built.mult - reference.mult).is_zero()
    assert (built.coprod - reference.coprod).is_zero()


def test_build_taft_rejects_small_order(tmp_path, capsys):
    out = tmp_path / "t.json"
    assert main(["build-taft", "--n", "1", "-o", str(out)]) == 2
    assert ">= 2" in capsys.readouterr().err


def test_build_taft_emits_model(tmp_path):
    out = tmp_path / "t.json"
    assert main(["build-taft", "--n", "3", "-o", str(out)]) == 0
    assert main(["verify", str(out)]) == 0


def test_subgroup_verb_passes_on_shipped_restriction(tmp_path):
    report = tmp_path / "sub.json"
    code = main(["subgroup", "--g", model_path("c_s3"),
                 "--h", model_path("c_z3"),
                 "--map", str(MODELS_DIR / "restrict_a3.json"),
                 "--report", str(report)])
    assert code == 0
    data = json.loads(report.read_text())
    assert data["failed"] == 0
    ids = {rec["check_id"] for rec in data["checks"]}
    assert any(i.endswith("vaes.injective") for i in ids)


def test_subgroup_verb_rejects_mismatched_models(capsys):
    code = main(["subgroup", "--g", model_path("c_s3"),
                 "--h", model_path("c_z2"),
                 "--map", str(MODELS_DIR / "restrict_a3.json")])
    assert code == 2
    assert "does not match" in capsys.readouterr().err


def test_subgroup_verb_fails_on_invalid_morphism(tmp_path, capsys):
    bad = {"source": "c(s3)", "target": "c(z3)",
           "map": [[0, 0, ["1"]], [1, 1, ["1"]], [2, 2, ["1"]]]}
    mapfile = tmp_path / "bad_map.json"
    mapfile.write_text(json.dumps(bad))
    code = main(["subgroup", "--g", model_path("c_s3"),
                 "--h", model_path("c_z3"), "--map", str(mapfile)])
    assert code == 1
    out = capsys.readouterr().out
    assert "FAIL" in out
