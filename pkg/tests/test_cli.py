"""Command-line tests: golden JSON comparison, exit codes, round trips."""

import json
from pathlib import Path

import pytest

from logmc import (Arrangement, build_lattice, characteristic_polynomial,
                   cohclass_from_json, csm_at_minus_one, kpoly_from_json,
                   mc_complement_lattice_sum)
from logmc.cli import RunConfig, config_from_args, main, run

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"
GOLDEN = CORPUS / "golden"

GOLDEN_MATRIX = {
    "boolean3": ["lattice", "charpoly", "exponents", "mc", "diff", "csm", "euler"],
    "braid": ["charpoly", "exponents", "mc", "diff", "csm", "euler"],
    "generic4": ["charpoly", "exponents", "mc", "csm", "euler"],
    "concurrent3": ["exponents", "diff", "csm"],
    "empty": ["charpoly", "mc"],
    "node": ["curve"],
    "cusp": ["curve"],
    "tacnode": ["curve"],
    "triple_point": ["curve"],
}


def corpus_path(stem):
    ext = ".json" if (CORPUS / f"{stem}.json").exists() else ".arr"
    return str(CORPUS / f"{stem}{ext}")


def run_json(command, stem, **kwargs):
    config = RunConfig(command=command, input_path=corpus_path(stem),
                       output_format="json", **kwargs)
    return run(config)


@pytest.mark.parametrize("stem,command",
                         [(stem, cmd) for stem, cmds in GOLDEN_MATRIX.items()
                          for cmd in cmds])
def test_golden_bit_exact(stem, command):
    code, report = run_json(command, stem)
    assert code == 0
    expected = (GOLDEN / f"{stem}_{command}.json").read_text()
    assert report + "\n" == expected


def test_no_inconsistency_exit_on_corpus():
    """Exit code 2 never occurs on the bundled example corpus."""
    for stem, commands in GOLDEN_MATRIX.items():
        for command in commands:
            code, _ = run_json(command, stem)
            assert code == 0, (stem, command)


# --- documented text outputs

def test_exponents_text_output(capsys):
    assert main(["exponents", corpus_path("boolean3")]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "{1,1,1}"


def test_csm_text_output(capsys):
    assert main(["csm", corpus_path("braid")]) == 0
    out = capsys.readouterr().out
    assert "1 - 3*h + 2*h^2" in out
    assert "all equal: true" in out
    assert "euler characteristic: 2" in out


def test_diff_text_output(capsys):
    assert main(["diff", corpus_path("braid")]) == 0
    assert "is_zero: false" in capsys.readouterr().out
    assert main(["diff", corpus_path("boolean3")]) == 0
    assert "is_zero: true" in capsys.readouterr().out


def test_diff_text_renders_one_minus_s_by_default(capsys):
    assert main(["diff", corpus_path("braid")]) == 0
    out = capsys.readouterr().out
    assert "y^0: -4*(1-s)^2" in out
    assert main(["diff", corpus_path("braid"), "--basis", "s"]) == 0
    out = capsys.readouterr().out
    assert "y^0: -4 + 8*s - 4*s^2" in out


def test_generic4_exponents_text(capsys):
    assert main(["exponents", corpus_path("generic4")]) == 0
    out = capsys.readouterr().out
    assert "does not split" in out and "t^2 - 3*t + 3" in out


# --- exit codes

def test_missing_file_is_validation_error(capsys):
    assert main(["charpoly", "no_such_file.arr"]) == 1
    assert "error:" in capsys.readouterr().err


def test_diff_on_empty_arrangement_rejected(capsys):
    assert main(["diff", corpus_path("empty")]) == 1
    assert "no exponent data" in capsys.readouterr().err


def test_route_exponents_without_split_rejected():
    code, report = run_json("mc", "generic4", mc_route="exponents")
    assert code == 1
    assert "exponent" in report


def test_exponent_override_disagreement_is_exit_2():
    code, report = run_json("mc", "braid",
                            exponents_override=(1, 1, 4), mc_route="all")
    assert code == 2
    payload = json.loads(report)
    assert payload["kind"] == "inconsistency"
    assert "routes" in payload["details"]


def test_nonessential_exponents_is_exit_2(tmp_path):
    path = tmp_path / "nonessential.arr"
    path.write_text("3\n1 0 0\n0 1 0\n1 -1 0\n")
    code, report = run(RunConfig(command="exponents", input_path=str(path),
                                 output_format="json"))
    assert code == 2
    assert "nonpositive root" in json.loads(report)["error"]
    # commands that do not need exponents still work there
    code, _ = run(RunConfig(command="euler", input_path=str(path),
                            output_format="json"))
    assert code == 0


def test_bad_exponent_flag_rejected(capsys):
    assert main(["logclass", corpus_path("braid"), "--exponents", "1,two"]) == 1
    assert main(["nonsense-command", "x"]) == 1


def test_lattice_cap_env(monkeypatch):
    monkeypatch.setenv("LOGMC_MAX_LATTICE", "3")
    config = config_from_args(["lattice", corpus_path("braid"), "--format", "json"])
    assert config.max_lattice_nodes == 3
    code, report = run(config)
    assert code == 1 and "node cap" in report


def test_default_lattice_cap(monkeypatch):
    monkeypatch.delenv("LOGMC_MAX_LATTICE", raising=False)
    config = config_from_args(["lattice", corpus_path("braid")])
    assert config.max_lattice_nodes == 100000


# --- JSON round trips against in-memory values

def test_mc_json_roundtrip_matches_library():
    code, report = run_json("mc", "braid")
    assert code == 0
    payload = json.loads(report)
    lat = build_lattice(Arrangement(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1),
                                        (1, -1, 0), (1, 0, -1), (0, 1, -1)]))
    expected = mc_complement_lattice_sum(lat)
    for route in ("lattice", "charpoly", "exponents"):
        assert kpoly_from_json(payload["routes"][route]) == expected


def test_mc_json_roundtrip_one_minus_s_basis():
    code, report = run_json("mc", "braid", basis="one_minus_s")
    payload = json.loads(report)
    lat = build_lattice(Arrangement(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1),
                                        (1, -1, 0), (1, 0, -1), (0, 1, -1)]))
    assert kpoly_from_json(payload["routes"]["lattice"]) == mc_complement_lattice_sum(lat)


def test_csm_json_roundtrip_matches_library():
    code, report = run_json("csm", "braid")
    payload = json.loads(report)
    lat = build_lattice(Arrangement(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1),
                                        (1, -1, 0), (1, 0, -1), (0, 1, -1)]))
    expected = csm_at_minus_one(mc_complement_lattice_sum(lat))
    assert cohclass_from_json(payload["csm_mc"]) == expected
    assert cohclass_from_json(payload["csm_log"]) == expected


def test_charpoly_json_matches_library():
    code, report = run_json("charpoly", "generic4")
    payload = json.loads(report)
    lat = build_lattice(Arrangement(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]))
    assert payload["coefficients"] == list(characteristic_polynomial(lat).coeffs)


def test_curve_accepts_list_input(tmp_path):
    path = tmp_path / "curve_list.json"
    path.write_text(json.dumps([{"poly": "x^2 - y^2"}, {"poly": "x^2 - y^3"},
                                {"mu": 4, "tau": 4, "r": 3}]))
    code, report = run(RunConfig(command="curve", input_path=str(path),
                                 output_format="json"))
    assert code == 0
    payload = json.loads(report)
    assert payload["pairs"] == [[0, 0], [-1, -1], [-1, -1]]
    assert payload["total"] == [-2, -2]


def test_curve_rejects_invalid_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, report = run(RunConfig(command="curve", input_path=str(path)))
    assert code == 1


def test_curve_branch_count_error_message(tmp_path):
    path = tmp_path / "needs_r.json"
    path.write_text(json.dumps({"poly": "y^2 - x^3 - x^2"}))
    code, report = run(RunConfig(command="curve", input_path=str(path)))
    assert code == 1 and "supply r" in report


def test_run_text_and_json_agree_on_verdicts():
    for stem in ("boolean3", "braid", "concurrent3"):
        code_j, report = run_json("diff", stem)
        code_t, text = run(RunConfig(command="diff", input_path=corpus_path(stem)))
        assert code_j == code_t == 0
        payload = json.loads(report)
        assert f"is_zero: {str(payload['is_zero']).lower()}" in text
