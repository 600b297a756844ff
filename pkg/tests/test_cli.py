"""Command-line driver: config layering, output formats, exit codes."""

import csv
import io
import json

import pytest

import diopow.cli as cli
from diopow.verify import CriterionResult

SURD_TOML = """\
[lambda]
values = ["-sqrt(5)", "sqrt(3)", "sqrt(2)"]
ratios = ["5", "3", "2"]

[run]
eta = "1"
eps = "1e-20"
"""


@pytest.fixture
def surd_cfg(tmp_path):
    p = tmp_path / "surd.toml"
    p.write_text(SURD_TOML)
    return str(p)


def run_main(capsys, argv):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestS0Command:
    def test_reproduces_worked_example(self, capsys, surd_cfg):
        code, out, _ = run_main(capsys, ["s0", "--config", surd_cfg])
        assert code == 0
        doc = json.loads(out)
        assert doc["s0_ours"] == 120
        assert doc["s0_liwang"] == 4120
        assert doc["condition_met"] is True

    def test_constants_block_present(self, capsys, surd_cfg):
        _, out, _ = run_main(capsys, ["s0", "--config", surd_cfg])
        block = json.loads(out)["paper_constants"]
        assert block["C"] == "10.0219168340"
        assert block["D"] == "17646979.6536361512"
        assert block["D1"] == "1581925383.0798448770"
        assert block["nu"] == "0.8844472132"

    def test_deterministic_bytes(self, capsys, surd_cfg):
        _, first, _ = run_main(capsys, ["s0", "--config", surd_cfg])
        _, second, _ = run_main(capsys, ["s0", "--config", surd_cfg])
        assert first == second

    def test_flag_overrides_config(self, capsys, surd_cfg):
        # narrower target window forces more doublings
        code, out, _ = run_main(capsys, ["s0", "--config", surd_cfg,
                                         "--eta", "0.5"])
        assert code == 0
        assert json.loads(out)["s0_ours"] > 120

    def test_defaults_without_config(self, capsys):
        code, out, _ = run_main(capsys, ["s0"])
        assert code == 0
        assert json.loads(out)["s0_ours"] == 120

    def test_out_file(self, capsys, tmp_path, surd_cfg):
        dest = tmp_path / "res.json"
        _, out, _ = run_main(capsys, ["s0", "--config", surd_cfg,
                                      "--out", str(dest)])
        assert json.loads(dest.read_text())["s0_ours"] == 120

    def test_text_format(self, capsys, surd_cfg):
        code, out, _ = run_main(capsys, ["s0", "--config", surd_cfg,
                                         "--format", "text"])
        assert code == 0
        assert "120" in out and "4120" in out


class TestConfigErrors:
    def test_unknown_key_rejected(self, capsys, tmp_path):
        p = tmp_path / "bad.toml"
        p.write_text("[run]\nbogus_knob = 3\n")
        code, _, err = run_main(capsys, ["s0", "--config", str(p)])
        assert code == 1
        assert "bogus_knob" in err

    def test_unknown_section_rejected(self, capsys, tmp_path):
        p = tmp_path / "bad.toml"
        p.write_text("[mystery]\nx = 1\n")
        code, _, err = run_main(capsys, ["s0", "--config", str(p)])
        assert code == 1

    def test_malformed_toml(self, capsys, tmp_path):
        p = tmp_path / "broken.toml"
        p.write_text("[lambda\nvalues = [\n")
        code, _, err = run_main(capsys, ["s0", "--config", str(p)])
        assert code == 1
        assert "line" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run_main(capsys, ["s0", "--config",
                                         str(tmp_path / "absent.toml")])
        assert code == 1
        assert "error" in err

    def test_partial_lambda_flags(self, capsys):
        code, _, err = run_main(capsys, ["s0", "--l1", "-1"])
        assert code == 1

    def test_bad_format(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["s0", "--format", "yaml"])
        assert exc.value.code == 2

    def test_bad_format_via_config(self, capsys, tmp_path):
        p = tmp_path / "fmt.toml"
        p.write_text('[run]\nformat = "yaml"\n')
        code, _, err = run_main(capsys, ["s0", "--config", str(p)])
        assert code == 1
        assert "format" in err

    def test_invalid_system(self, capsys):
        # all coefficients positive: no sign change to exploit
        code, _, err = run_main(capsys, ["s0", "--l1", "1", "--l2", "1",
                                         "--l3", "1"])
        assert code == 1


class TestConstantsCommand:
    def test_json_table(self, capsys):
        code, out, _ = run_main(capsys, ["constants"])
        assert code == 0
        doc = json.loads(out)
        names = {row["name"] for row in doc["constants"]}
        assert {"C", "D", "D1", "nu", "c4"} <= names

    def test_singular_values_exact(self, capsys):
        code, out, _ = run_main(capsys, ["constants", "--n", "24,31"])
        assert code == 0
        doc = json.loads(out)
        by_n = {row["n"]: row for row in doc["singular_series"]}
        assert by_n[31]["sigma_double_prime"] == "32/31"


class TestSearchCommand:
    def test_json_report(self, capsys):
        code, out, _ = run_main(capsys, ["search", "--X", "1500", "--eps", "0.1"])
        assert code == 0
        doc = json.loads(out)
        assert doc["count"] == 37
        assert len(doc["records_sample"]) == 37

    def test_csv_stream(self, capsys):
        code, out, _ = run_main(capsys, ["search", "--X", "1500", "--eps", "0.1",
                                         "--format", "csv"])
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert len(rows) == 37
        assert {"p1", "p2", "p3", "m", "form_value", "weight"} <= set(rows[0])

    def test_empty_range_still_succeeds(self, capsys):
        code, out, _ = run_main(capsys, ["search", "--X", "30", "--eps", "0.9",
                                         "--L", "1"])
        assert code == 0
        doc = json.loads(out)
        assert doc["count"] == 0
        assert "empty-range" in doc["flags"]

    def test_workers_do_not_change_output(self, capsys):
        base = ["search", "--X", "1500", "--eps", "0.1"]
        _, seq, _ = run_main(capsys, base + ["--workers", "1"])
        _, par, _ = run_main(capsys, base + ["--workers", "2"])
        assert json.loads(seq)["records_sample"] == json.loads(par)["records_sample"]
        assert json.loads(seq)["count"] == json.loads(par)["count"]


class TestMeasureCommand:
    def test_sweep(self, capsys):
        code, out, _ = run_main(capsys, ["measure", "--L-values", "8,10"])
        assert code == 0
        doc = json.loads(out)
        ms = [row["measure"] for row in doc["sweep"]]
        assert ms[0] > ms[1] > 0.0


class TestSelbergCommand:
    def test_values(self, capsys):
        code, out, _ = run_main(capsys, ["selberg", "--X", "10000", "--h", "1000",
                                         "--eps", "0.1"])
        assert code == 0
        row = json.loads(out)["rows"][0]
        assert row["J"] == pytest.approx(6014990.925994754, rel=1e-12)
        assert row["Jstar"] == pytest.approx(60430.81382295899, rel=1e-9)
        assert row["J_normalized"] == pytest.approx(row["J"] / (1e3 ** 2 * 1e4))


class TestVerifyCommand:
    def test_quick_run_passes(self, capsys):
        code, out, _ = run_main(capsys, ["verify", "--quick"])
        assert code == 0
        assert "11/11 criteria passed" in out
        assert out.count("PASS") == 11

    def test_failure_exits_two(self, capsys, monkeypatch):
        fake = [CriterionResult(index=1, name="s0-reproduction", passed=False,
                                seconds=0.01, budget=1.0, detail="forced")]
        monkeypatch.setattr(cli.verify_mod, "run_all", lambda quick: fake)
        code, out, _ = run_main(capsys, ["verify"])
        assert code == 2
        assert "FAIL" in out
