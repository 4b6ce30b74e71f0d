"""End-to-end tests for the command-line entry point"""

import sys
import os

# Add parent directory to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import csv
import io
import json

import pytest

import main
from config.settings import FreudenthalConfig
from main import build_parser, run

GOLDEN = '{"kind": "Diag3", "alpha": 1, "beta": 1, "A": {"diag": [1, 1, 1]}}'
PROJECTIVE_H3B = '{"kind": "H3B", "alpha": 1, "beta": 2, "A": {"diag": [1, 1, 2]}}'
NON_PROJECTIVE_H3B = '{"kind": "H3B", "alpha": 1, "beta": 2, "A": {"diag": [1, 2, 2]}}'


def run_json(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_eval_reports_forms_and_projectivity(capsys):
    code, report = run_json(capsys, "eval", GOLDEN)
    assert code == 0
    assert report["q_prime"] == 5
    assert report["q"] == -10
    assert report["rank"] == 4
    assert report["projective"] is True
    assert report["invariants"]["d1"] == 1
    assert len(report["gram_row"]) == 8


def test_eval_of_the_first_basis_vector(capsys):
    code, report = run_json(capsys, "eval", '{"kind": "H3O", "alpha": 1, "beta": 0}')
    assert code == 0
    assert report["rank"] == 1
    assert report["invariants"]["d1"] == 1
    assert report["q_prime"] == 0


def test_eval_flags_the_gcd_two_caveat(capsys):
    code, report = run_json(capsys, "eval", PROJECTIVE_H3B)
    assert code == 0
    assert report["gcd_t"] == 2
    assert "caveat" in report


def test_classify(capsys):
    code, report = run_json(capsys, "classify", GOLDEN)
    assert code == 0
    assert report["label"]["variant"] == "Projective"
    assert (report["label"]["epsilon"], report["label"]["k"]) == (1, 1)


def test_canonical_with_witness(capsys):
    code, result = run_json(capsys, "canonical", PROJECTIVE_H3B, "--witness", "--verify")
    assert code == 0
    assert (result["epsilon"], result["k"]) == (0, 3)
    assert result["verified"] is True
    assert result["witness_length"] == len(result["witness"])
    assert result["canonical"]["A"]["diag"] == [1, 1, 3]


def test_field_canonical_form(capsys):
    doc = '{"kind": "H3O", "scalars": "rat", "alpha": 1, "beta": 0, "A": {"diag": [1, 1, 5]}}'
    code, result = run_json(capsys, "canonical", doc, "--verify")
    assert code == 0
    assert result["canonical"]["A"]["diag"] == [1, 1, 5]


def test_reduce_from_file(capsys, tmp_path):
    path = tmp_path / "x.json"
    path.write_text('{"kind": "H3H", "alpha": 4, "beta": 6, "A": {"diag": [2, 0, 8]}, "B": {"diag": [2, 2, 0]}}')
    code, result = run_json(capsys, "reduce", str(path), "--witness", "--verify")
    assert code == 0
    assert result["reduced"]["alpha"] == result["alpha"]
    assert result["reduced"]["B"]["diag"] == [0, 0, 0]
    assert result["reduced"]["A"]["off"] == [[0, 0, 0, 0]] * 3
    assert result["verified"] is True


def test_snf(capsys):
    code, result = run_json(capsys, "snf", '{"kind": "H3B", "diag": [2, 4, 6]}', "--verify")
    assert code == 0
    assert result["smith"]["d"] == [2, 2, 12]


def test_convert_to_cube_and_back(capsys):
    code, cube = run_json(capsys, "convert", GOLDEN, "--to", "cube")
    assert code == 0
    assert cube["cube"][0][0][0] == 1
    code, back = run_json(capsys, "convert", json.dumps(cube))
    assert code == 0
    assert back["element"]["A"]["diag"] == [1, 1, 1]


def test_first_basis_vector_is_a_pure_cube(capsys):
    code, cube = run_json(capsys, "convert", '{"kind": "Diag3", "alpha": 1, "beta": 0}', "--to", "cube")
    assert code == 0
    assert cube["cube"] == [[[1, 0], [0, 0]], [[0, 0], [0, 0]]]


def test_convert_to_wedge(capsys):
    code, wedge = run_json(capsys, "convert", PROJECTIVE_H3B, "--to", "wedge")
    assert code == 0
    assert len(wedge["wedge"]) == 20
    assert wedge["wedge"][:2] == [1, 2]


def test_parse_errors_exit_with_two(capsys):
    code = run(["eval", '{"kind": "H3B", "alpha": '])
    captured = capsys.readouterr()
    assert code == 2
    assert json.loads(captured.out)["error"] == "ParseError"
    assert "Malformed JSON" in captured.err


def test_domain_and_precondition_exit_codes(capsys):
    assert run(["eval", GOLDEN, "--kind", "H3O"]) == 3
    capsys.readouterr()
    assert run(["canonical", NON_PROJECTIVE_H3B]) == 4
    assert json.loads(capsys.readouterr().out)["error"] == "PreconditionError"


def test_selftest_suite(capsys):
    code, report = run_json(capsys, "selftest", "--suite", "composition", "--suite", "cubes", "--seed", "3")
    assert code == 0
    assert report["passed"] is True
    assert set(report["suites"]) == {"composition", "cubes"}


def test_sampled_census_as_csv(capsys):
    code = run(["census", "--kind", "H3B", "--samples", "6", "--height", "2", "--format", "csv"])
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert code == 0
    assert rows[0] == ["norm", "label", "count", "sample"]
    assert sum(int(row[2]) for row in rows[1:] if row) == 6


def test_exhaustive_census_truncates(capsys, monkeypatch):
    monkeypatch.setattr(FreudenthalConfig, "CENSUS_LIMIT", 40)
    code, rows = run_json(capsys, "census", "--kind", "Diag3", "--height", "1")
    assert code == 0
    assert rows[-1] == {"truncated": True}
    summary = rows[-2]
    assert summary["mode"] == "exhaustive" and summary["total"] == 40
    assert sum(r["count"] for r in rows[:-2]) + len(summary["counterexamples"]) >= 40


def test_census_is_independent_of_job_count(capsys):
    _, one = run_json(capsys, "census", "--kind", "H3H", "--samples", "8", "--height", "2", "--jobs", "1", "--seed", "5")
    _, two = run_json(capsys, "census", "--kind", "H3H", "--samples", "8", "--height", "2", "--jobs", "2", "--seed", "5")
    assert one == two


def test_text_output_and_out_file(capsys, tmp_path):
    assert run(["classify", GOLDEN, "--format", "text", "--no-color"]) == 0
    assert "PROJECTIVE" in capsys.readouterr().out
    target = tmp_path / "report.json"
    assert run(["eval", GOLDEN, "--out", str(target)]) == 0
    assert json.loads(target.read_text())["q_prime"] == 5


def test_parser_requires_a_command():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])


def test_unexpected_failures_exit_with_five(capsys, monkeypatch):
    def broken(*args, **kwargs):
        raise RuntimeError("lost a coordinate")

    monkeypatch.setattr(main, "cmd_eval", broken)
    code = run(["eval", GOLDEN])
    captured = capsys.readouterr()
    assert code == 5
    assert json.loads(captured.out) == {"error": "RuntimeError", "message": "lost a coordinate", "exit_code": 5}
    assert "lost a coordinate" in captured.err
