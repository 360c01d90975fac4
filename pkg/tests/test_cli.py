"""
Tests for the command-line interface.
"""

import json

import pandas as pd
import pytest

from dilute_spectra.cli import MASSES_HEADER, SCAN_HEADER, RunConfig, build_parser, main
from dilute_spectra.exceptions import ConfigError
from dilute_spectra.model import table_checksum
from dilute_spectra.spectrum import e7_reference


def _load(path):
    return json.loads(path.read_text(encoding="utf-8"))


class TestMasses:

    def test_json_rows_match_e7(self, tmp_path):
        out = tmp_path / "masses.json"
        assert main(["masses", "--L", "4", "--p", "1e-6", "--output", str(out)]) == 0
        document = _load(out)
        assert document["schema"] == 1
        assert document["command"] == "masses"
        rows = document["rows"]
        assert len(rows) == 7
        m1 = rows[0]["m"]
        for row, (_, value, parity) in zip(rows, e7_reference()):
            assert row["m"] / m1 == pytest.approx(value, abs=1e-4)
            assert row["parity"] == parity
            assert row["xi"] == pytest.approx(1.0 / row["m"])

    def test_csv_header(self, tmp_path):
        out = tmp_path / "masses.csv"
        assert main(["masses", "--L", "3", "--p", "1e-6", "--format", "csv", "--output", str(out)]) == 0
        frame = pd.read_csv(out)
        assert list(frame.columns) == MASSES_HEADER
        assert len(frame) == 8

    def test_default_output_location(self, tmp_path):
        assert main(["masses", "--x", "0.5"]) == 0
        assert (tmp_path / "results" / "masses.json").exists()

    def test_regime_2plus(self, tmp_path):
        out = tmp_path / "plus.json"
        assert main(["masses", "--eps", "2.0", "--regime", "2+", "--output", str(out)]) == 0
        assert [row["j"] for row in _load(out)["rows"]] == [2, 4, 5, 6, 7]

    def test_nome_close_to_one(self, tmp_path):
        out = tmp_path / "near.json"
        assert main(["masses", "--p", "0.99", "--output", str(out)]) == 0
        rows = _load(out)["rows"]
        assert len(rows) == 7
        assert all(row["m"] > 0 for row in rows)

    def test_ratio_column_uses_first_mass(self, tmp_path, capsys):
        out = tmp_path / "plus.json"
        assert main(["masses", "--p", "1e-6", "--regime", "2+", "--output", str(out)]) == 0
        printed = capsys.readouterr().out
        assert "m/m1 = 1.285" in printed
        assert "m/m1 = 1.000000" not in printed

    @pytest.mark.parametrize("argv", [
        ["masses", "--L", "4", "--p", "0"],
        ["masses", "--L", "4", "--p", "1.5"],
        ["masses", "--L", "4"],
        ["masses", "--p", "0.1", "--x", "0.2"],
        ["masses", "--L", "5", "--p", "0.1"],
        ["nonsense"],
        [],
    ])
    def test_usage_errors_exit_two(self, argv, tmp_path):
        assert main(argv + ["--output", str(tmp_path / "x.json")] if argv else argv) == 2


class TestOtherCommands:

    def test_amplitudes(self, tmp_path):
        out = tmp_path / "amp.json"
        assert main(["amplitudes", "--output", str(out)]) == 0
        document = _load(out)
        assert document["R_xi_plus"] == pytest.approx(0.10167846, abs=1e-8)

    def test_checksum(self, tmp_path, capsys):
        out = tmp_path / "sum.json"
        assert main(["checksum", "--L", "4", "--output", str(out)]) == 0
        assert _load(out)["sha256"] == table_checksum(4)
        assert table_checksum(4) in capsys.readouterr().out

    def test_perturbations_csv(self, tmp_path):
        out = tmp_path / "pert.csv"
        assert main(["perturbations", "--format", "csv", "--output", str(out)]) == 0
        assert list(pd.read_csv(out)["field"]) == ["phi(2,2)", "phi(1,2)", "phi(2,1)", "phi(1,3)"]

    def test_scan(self, tmp_path):
        out = tmp_path / "scan.csv"
        argv = ["scan", "--p-min", "1e-8", "--p-max", "1e-6", "--count", "3", "--format", "csv", "--output", str(out)]
        assert main(argv) == 0
        frame = pd.read_csv(out)
        assert list(frame.columns) == SCAN_HEADER
        assert len(frame) == 21
        assert frame["ratio"].between(0.999, 1.001).all()

    def test_scan_rejects_bad_range(self, tmp_path):
        assert main(["scan", "--p-min", "0.5", "--p-max", "0.1", "--output", str(tmp_path / "s.csv")]) == 2

    def test_verify_poch(self, tmp_path):
        out = tmp_path / "verify.json"
        assert main(["verify", "--suite", "poch", "--seed", "3", "--output", str(out)]) == 0
        document = _load(out)
        assert document["passed"] is True
        assert document["rows"][0]["check"] == "poch identities"

    def test_bethe_odd_width(self, tmp_path):
        assert main(["bethe", "--N", "5", "--x", "0.05", "--output", str(tmp_path / "b.json")]) == 2

    def test_verify_csv_keeps_suite_result(self, tmp_path):
        out = tmp_path / "verify.csv"
        assert main(["verify", "--suite", "poch", "--format", "csv", "--output", str(out)]) == 0
        frame = pd.read_csv(out)
        assert list(frame.columns) == ["check", "passed", "cases", "worst", "suite", "suite_passed", "suite_worst"]
        assert frame["suite"].tolist() == ["poch"]
        assert bool(frame["suite_passed"].iloc[0])

    def test_bethe_excitation_needs_l4(self, tmp_path):
        argv = ["bethe", "--L", "3", "--N", "4", "--x", "0.05", "--j", "2", "--output", str(tmp_path / "b.json")]
        assert main(argv) == 2

    @pytest.mark.slow
    def test_bethe_ground(self, tmp_path):
        out = tmp_path / "bethe.json"
        assert main(["bethe", "--N", "4", "--x", "0.05", "--output", str(out)]) == 0
        document = _load(out)
        assert document["j"] == 0
        assert document["residual_norm"] < 1e-8
        assert len(document["rows"]) == 4

    @pytest.mark.slow
    def test_bethe_csv_keeps_eigenvalue_result(self, tmp_path):
        out = tmp_path / "bethe.csv"
        argv = ["bethe", "--N", "6", "--x", "0.05", "--j", "2", "--format", "csv", "--output", str(out)]
        assert main(argv) == 0
        frame = pd.read_csv(out)
        for column in ("index", "re", "im", "modulus", "j", "ell", "residual_norm",
                       "log_ratio_re", "log_ratio_im", "deviation"):
            assert column in frame.columns, column
        assert len(frame) == 6
        assert frame["j"].nunique() == 1 and frame["j"].iloc[0] == 2
        assert frame["deviation"].nunique() == 1
        assert frame["residual_norm"].iloc[0] < 1e-8


class TestRunConfig:

    def test_exactly_one_nome(self):
        args = build_parser().parse_args(["masses", "--p", "0.1"])
        cfg = RunConfig.from_args(args)
        assert cfg.p == 0.1 and cfg.x is None
        assert cfg.frame().p == 0.1

    def test_two_nomes_rejected(self):
        args = build_parser().parse_args(["masses", "--p", "0.1", "--eps", "2"])
        with pytest.raises(ConfigError):
            RunConfig.from_args(args)

    def test_truncation_override(self):
        args = build_parser().parse_args(["verify", "--tol", "1e-9", "--max-terms", "1000"])
        tr = RunConfig.from_args(args).truncation()
        assert tr.tol == 1e-9
        assert tr.max_terms == 1000

    def test_no_truncation_override(self):
        args = build_parser().parse_args(["amplitudes"])
        assert RunConfig.from_args(args).truncation() is None

    def test_output_path_default(self, tmp_path):
        cfg = RunConfig(command="scan", format="csv")
        assert cfg.output_path() == tmp_path / "results" / "scan.csv"

    def test_bethe_level_option(self):
        args = build_parser().parse_args(["bethe", "--L", "6", "--N", "4", "--x", "0.05"])
        assert RunConfig.from_args(args).L == 6
