"""CLI behaviour: output formats, exit codes, determinism."""

import json

import pytest

from fibspaces.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestTransform:
    def test_witness_t_gives_ones(self, capsys):
        code, out, _ = run_cli(
            capsys, "transform", "--x", "witness:t", "--lambda", "linear:1,1", "-N", "8"
        )
        assert code == 0
        assert out.split() == ["1"] * 8

    def test_inverse_unit(self, capsys):
        code, out, _ = run_cli(
            capsys, "transform", "--inverse", "--y", "unit:0",
            "--lambda", "linear:1,1", "-N", "4",
        )
        assert code == 0
        assert out.split() == ["1", "2", "9/2", "25/2"]

    def test_zero_window(self, capsys):
        code, out, _ = run_cli(capsys, "transform", "--x", "zero", "-N", "4")
        assert code == 0
        assert out.split() == ["0"] * 4

    def test_json_report_schema(self, capsys):
        code, out, _ = run_cli(
            capsys, "transform", "--x", "witness:u", "-N", "4", "--json"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["schema"] == 1
        assert doc["command"] == "transform"
        assert "fn" not in doc["config"]

    def test_float_mode_rendering(self, capsys):
        code, out, _ = run_cli(
            capsys, "transform", "--inverse", "--y", "unit:0", "-N", "3",
            "--mode", "float",
        )
        assert code == 0
        assert out.split() == ["1.0", "2.0", "4.5"]


class TestExitCodes:
    def test_unknown_witness_is_domain_error(self, capsys):
        code, _, err = run_cli(capsys, "transform", "--x", "witness:nope", "-N", "4")
        assert code == 3
        assert "domain error" in err

    def test_bad_rational_is_parse_error(self, capsys):
        code, _, err = run_cli(capsys, "norm", "--x", "values:1,bogus", "--p", "2", "-N", "2")
        assert code == 2
        assert "input error" in err

    def test_bad_lambda_is_domain_error(self, capsys):
        code, _, _ = run_cli(
            capsys, "transform", "--x", "witness:t", "--lambda", "linear:1,0", "-N", "4"
        )
        assert code == 3

    def test_missing_matrix_file(self, capsys):
        code, _, _ = run_cli(
            capsys, "mnc", "--A", "/nonexistent.json", "--p", "2", "--Y", "c0"
        )
        assert code == 2


class TestCommands:
    @pytest.fixture
    def single_row(self, tmp_path):
        path = tmp_path / "single.json"
        path.write_text(json.dumps({"kind": "rows", "rows": {"0": ["1"]}}))
        return str(path)

    def test_norm_report(self, capsys):
        code, out, _ = run_cli(
            capsys, "norm", "--x", "witness:u", "--p", "2", "-N", "8"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["result"]["window"] == 8
        assert "1.41421" in doc["result"]["value"]

    def test_basis(self, capsys):
        code, out, _ = run_cli(capsys, "basis", "--k", "0", "-N", "3")
        assert code == 0
        assert out.split() == ["1", "2", "9/2"]

    def test_invert_builtin(self, capsys):
        code, out, _ = run_cli(capsys, "invert", "--A", "E", "-N", "3")
        assert code == 0
        doc = json.loads(out)
        assert doc["result"]["rows"][2][0] == "9/2"

    def test_dual_report(self, capsys):
        code, out, _ = run_cli(
            capsys, "dual", "--a", "unit:0", "--space", "lp:2", "--kind", "beta",
            "--window", "24",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["result"]["verdict"]["status"] == "holds-exactly"
        assert [c["condition"] for c in doc["result"]["conditions"]] == ["d3", "d4", "d5"]

    def test_class_report(self, capsys, single_row):
        code, out, _ = run_cli(
            capsys, "class", "--A", single_row, "--X", "lp:2", "--Y", "c0",
            "--window", "12",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["result"]["verdict"]["status"] == "holds-exactly"

    def test_opnorm_report(self, capsys, single_row):
        code, out, _ = run_cli(
            capsys, "opnorm", "--A", single_row, "--p", "2", "--Y", "linf"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["result"]["kind"] == "exact"
        assert doc["result"]["value"] == "1 (exact)"

    def test_mnc_report(self, capsys, single_row):
        code, out, _ = run_cli(
            capsys, "mnc", "--A", single_row, "--p", "2", "--Y", "c0", "--rmax", "6"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["result"]["exact"] is True
        assert doc["result"]["compactness"]["label"] == "compact"
        assert doc["result"]["sweep"][1] == [1, 0.0]

    def test_plot_data_mnc(self, capsys, single_row):
        code, out, _ = run_cli(
            capsys, "plot-data", "--quantity", "mnc", "--A", single_row,
            "--p", "2", "--Y", "c0", "--rmax", "4",
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "r,s"
        assert lines[2] == "1,0.0"

    def test_plot_data_norm_sweep_increases(self, capsys):
        code, out, _ = run_cli(
            capsys, "plot-data", "--quantity", "norm", "--x", "witness:t",
            "--p", "2", "--sweep", "4,8,16",
        )
        assert code == 0
        lines = out.strip().splitlines()
        values = [float(line.split(",")[1]) for line in lines[1:]]
        assert values == sorted(values) and values[0] < values[-1]

    def test_out_file(self, capsys, tmp_path, single_row):
        target = tmp_path / "report.json"
        code, out, _ = run_cli(
            capsys, "opnorm", "--A", single_row, "--p", "2", "--Y", "linf",
            "--out", str(target),
        )
        assert code == 0 and out == ""
        assert json.loads(target.read_text())["result"]["kind"] == "exact"


class TestVerifySuite:
    def test_subset_passes(self, capsys):
        code, out, _ = run_cli(capsys, "verify-paper", "--only", "fib")
        assert code == 0
        assert out.count("PASS") == 3

    def test_unknown_filter(self, capsys):
        code, _, _ = run_cli(capsys, "verify-paper", "--only", "bogus-check")
        assert code == 2

    def test_json_output(self, capsys):
        code, out, _ = run_cli(capsys, "verify-paper", "--only", "fib-cassini", "--json")
        assert code == 0
        doc = json.loads(out)
        assert doc["result"][0]["passed"] is True

    def test_determinism(self, capsys):
        _, first, _ = run_cli(capsys, "verify-paper", "--only", "inverse-oracle", "--seed", "7")
        _, second, _ = run_cli(capsys, "verify-paper", "--only", "inverse-oracle", "--seed", "7")
        assert first == second

    def test_mnc_determinism(self, capsys, tmp_path):
        path = tmp_path / "m.json"
        path.write_text(json.dumps({"kind": "dense", "entries": [["1", "-1/2"], ["1/3", "2"]]}))
        args = ("mnc", "--A", str(path), "--p", "2", "--Y", "l1", "--rmax", "5", "--seed", "3")
        _, first, _ = run_cli(capsys, *args)
        _, second, _ = run_cli(capsys, *args)
        assert first == second


class TestPlotDataEdges:
    def test_empty_sweep_header_only(self, capsys):
        code, out, _ = run_cli(
            capsys, "plot-data", "--quantity", "norm", "--x", "witness:t",
            "--p", "2", "--sweep", "",
        )
        assert code == 0
        assert out.strip() == "n,value"
