"""Tests for the command-line interface (in-process thin client)."""

import json
from pathlib import Path

import pytest

from qubols import parse_coordinate
from qubols.cli import main

DATA = Path(__file__).resolve().parent.parent / "data"
EQ47 = str(DATA / "example_eq47.json")
EIGEN = str(DATA / "example_eigen.json")


class TestEstimate:
    def test_reference_triple(self, capsys):
        assert main(["estimate", "2", "1"]) == 0
        assert capsys.readouterr().out.strip() == "1 6 12"

    def test_larger_instance(self, capsys):
        assert main(["estimate", "64", "1"]) == 0
        assert capsys.readouterr().out.strip() == "2016 2021 129344"


class TestDecode:
    def test_reference_bitstring(self, capsys):
        assert main(["decode", EQ47, "00100100"]) == 0
        out = capsys.readouterr().out
        assert "x = (-1, 2)" in out
        assert "residual = 0" in out

    def test_eigen_bitstring(self, capsys):
        assert main(["decode", EIGEN, "100001"]) == 0
        out = capsys.readouterr().out
        assert "lambda = 2" in out
        assert "x = (1, 0)" in out

    def test_wrong_length_is_computational_error(self, capsys):
        assert main(["decode", EQ47, "0101"]) == 1
        assert "error:" in capsys.readouterr().err


class TestSolve:
    def test_exhaustive_report(self, capsys):
        assert main(["solve", EQ47, "--sampler", "exhaustive"]) == 0
        out = capsys.readouterr().out
        assert "0  0  1  0  0  1  0  0  -26  1" in out
        assert "x = (-1, 2)" in out
        assert "residual = 0" in out

    def test_sa_report_occurrences(self, capsys):
        assert main(["solve", EQ47, "--sampler", "sa", "--reads", "25", "--sweeps", "50", "--seed", "3"]) == 0
        out = capsys.readouterr().out
        assert "(25 reads)" in out

    def test_eigen_solve_lists_eigenpairs(self, capsys):
        assert main(["solve", EIGEN, "--sampler", "exhaustive"]) == 0
        out = capsys.readouterr().out
        assert "nontrivial eigenpairs:" in out
        assert "lambda = 2" in out and "lambda = 3" in out


class TestBuild:
    def test_coordinate_to_file_and_reparse(self, tmp_path, capsys):
        out_path = tmp_path / "qubo.txt"
        assert main(["build", EQ47, "--out", str(out_path)]) == 0
        q = parse_coordinate(out_path.read_text())
        assert q.num_vars == 8
        assert q.offset == 26.0
        assert q.coefficient(0, 0) == 26.0

    def test_vendor_to_stdout(self, capsys):
        assert main(["build", EQ47, "--format", "vendor", "--num-reads", "10000"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("from dwave.system import")
        assert "num_reads=10000" in out

    def test_include_zeros_line_count(self, tmp_path):
        out_path = tmp_path / "full.txt"
        assert main(["build", EQ47, "--out", str(out_path), "--include-zeros"]) == 0
        assert len(out_path.read_text().strip().splitlines()) == 1 + 36


class TestVerify:
    def test_fixture_passes(self, capsys):
        assert main(["verify", EQ47]) == 0
        out = capsys.readouterr().out
        assert "all checks passed" in out

    def test_eigen_fixture_passes(self, capsys):
        assert main(["verify", EIGEN]) == 0

    @pytest.mark.parametrize("policy", ["full", {"penalty": 100}])
    def test_other_policies_pass(self, tmp_path, policy):
        doc = json.loads(Path(EQ47).read_text())
        doc["cross_policy"] = policy
        path = tmp_path / "variant.json"
        path.write_text(json.dumps(doc))
        assert main(["verify", str(path)]) == 0


class TestErrorPaths:
    def test_unknown_subcommand_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2

    def test_unknown_flag_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            main(["estimate", "2", "1", "--frobnicate"])
        assert exc.value.code == 2

    def test_missing_file_is_exit_1(self, capsys):
        assert main(["solve", "no-such-file.json"]) == 1
        assert "error:" in capsys.readouterr().err

    def test_invalid_document_is_exit_1(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text('{"kind": "linsys"}')
        assert main(["solve", str(path)]) == 1

    def test_capacity_error_is_exit_1(self, tmp_path, capsys):
        doc = {
            "kind": "linsys",
            "A": [[1 if i == j else 0 for j in range(8)] for i in range(8)],
            "b": [1] * 8,
            "encoding": {"l_min": 0, "l_max": 1},
        }
        path = tmp_path / "big.json"
        path.write_text(json.dumps(doc))
        assert main(["solve", str(path), "--sampler", "exhaustive"]) == 1
        assert "error:" in capsys.readouterr().err
