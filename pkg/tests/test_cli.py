import json

import pytest

from qclone.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestBoundsCommand:
    def test_table_row(self, capsys):
        code, out, _ = run_cli(capsys, "bounds", "--n", "1", "--m", "2")
        assert code == 0
        assert "2/3" in out and "5/6" in out

    def test_json(self, capsys):
        code, out, _ = run_cli(capsys, "bounds", "--n", "3", "--m", "7", "--format", "json")
        assert code == 0
        report = json.loads(out)
        assert report["results"]["eta_opt"] == "27/35"
        assert all(c["pass"] for c in report["checks"])

    def test_bad_order(self, capsys):
        code, _, err = run_cli(capsys, "bounds", "--n", "3", "--m", "2")
        assert code == 2
        assert "error" in err


class TestCloneCommand:
    def test_json_payload(self, capsys):
        code, out, _ = run_cli(capsys, "clone", "--n", "1", "--m", "2",
                               "--samples", "50", "--seed", "7")
        assert code == 0
        report = json.loads(out)
        assert report["results"]["eta_predicted"] == "2/3"
        assert abs(report["results"]["eta_measured"] - 2 / 3) < 1e-9
        assert report["results"]["universality_spread"] < 1e-9

    def test_csv_format(self, capsys):
        code, out, _ = run_cli(capsys, "clone", "--n", "2", "--m", "3",
                               "--samples", "5", "--format", "csv")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "n,m,l,quantity,expected,actual,abs_error,pass"
        assert all(line.endswith("true") for line in lines[1:])

    def test_invalid_args_exit_2(self, capsys):
        code, _, _ = run_cli(capsys, "clone", "--n", "3", "--m", "2")
        assert code == 2

    def test_failed_check_exit_1(self, capsys):
        # an unattainable tolerance must be reported as a failure, not hidden
        code, _, err = run_cli(capsys, "clone", "--n", "2", "--m", "5",
                               "--samples", "5", "--tol", "1e-18")
        assert code == 1
        assert "FAIL" in err


class TestEstimateCommand:
    def test_exact_and_mc(self, capsys):
        code, out, _ = run_cli(capsys, "estimate", "--m", "2", "--shots", "5000")
        assert code == 0
        report = json.loads(out)
        assert report["results"]["fidelity_predicted"] == "3/4"
        assert abs(report["results"]["fidelity_exact"] - 0.75) < 1e-9

    def test_skip_mc(self, capsys):
        code, out, _ = run_cli(capsys, "estimate", "--m", "4", "--shots", "0")
        assert code == 0
        assert "fidelity_mc" not in json.loads(out)["results"]


class TestConcatCommand:
    def test_chain(self, capsys):
        code, out, _ = run_cli(capsys, "concat", "--n", "1", "--m", "2", "--l", "4")
        assert code == 0
        report = json.loads(out)
        assert report["results"]["eta_exact"] == "1/2"
        assert abs(report["results"]["eta_chain"] - 0.5) < 1e-9


class TestVerifyAll:
    def test_deterministic_reports(self, tmp_path, capsys):
        # small sample count to keep the suite quick; byte-identity is the point
        paths = [tmp_path / "a.json", tmp_path / "b.json"]
        for p in paths:
            code, _, _ = run_cli(capsys, "verify-all", "--seed", "1",
                                 "--samples", "3", "--output", str(p))
            assert code == 0
        assert paths[0].read_bytes() == paths[1].read_bytes()

    def test_report_schema(self, tmp_path, capsys):
        p = tmp_path / "r.json"
        code, _, _ = run_cli(capsys, "verify-all", "--seed", "2",
                             "--samples", "2", "--output", str(p))
        assert code == 0
        report = json.loads(p.read_text())
        assert set(report) == {"config", "results", "checks"}
        assert report["results"]["n_failed"] == 0
        for c in report["checks"]:
            assert set(c) >= {"name", "expected", "actual", "tolerance", "pass"}


def test_unwritable_output_exit_3(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["bounds", "--n", "1", "--m", "2", "--output", "/nonexistent/dir/x.json"])
    assert exc.value.code == 3


def test_missing_subcommand_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_no_color_table(capsys, monkeypatch):
    monkeypatch.setenv("NO_COLOR", "1")
    code, out, _ = run_cli(capsys, "bounds", "--n", "1", "--m", "2", "--format", "table")
    assert code == 0
    assert "\x1b[" not in out
