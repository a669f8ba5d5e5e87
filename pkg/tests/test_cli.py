import csv
import json

import pytest

from spectral_schwarz import cli
from spectral_schwarz.campaign import CampaignReport, TrialResult
from spectral_schwarz.bounds import SlackReport


def test_campaign_to_file(tmp_path, capsys):
    out = tmp_path / "r.json"
    code = cli.main(["verify-thm2", "--n", "2,3", "--trials", "5", "--seed", "9", "--out", str(out)])
    assert code == 0
    rep = json.loads(out.read_text())
    assert rep["trials"] == 5 and rep["config"]["n"] == [2, 3] and rep["config"]["seed"] == 9
    assert capsys.readouterr().out.startswith("thm2: trials=5 ")


def test_stdout_csv(capsys):
    assert cli.main(["counterexample", "--trials", "2", "--format", "csv"]) == 0
    rows = list(csv.reader(capsys.readouterr().out.splitlines()))
    assert rows[0] == ["trial", "lhs", "rhs", "slack", "pass"] and len(rows) == 3


def test_quiet_suppresses_summary(tmp_path, capsys):
    cli.main(["sharpness", "--trials", "2", "--out", str(tmp_path / "a.json"), "--quiet"])
    assert capsys.readouterr().out == ""


def test_repro_example(tmp_path):
    out = tmp_path / "ex.csv"
    assert cli.main(["repro-example", "--format", "csv", "--out", str(out), "--quiet"]) == 0
    assert out.read_text().startswith("n,d,zeta_re")


@pytest.mark.parametrize("argv", [[], ["nope"], ["verify-thm1", "--trials", "x"], ["verify-thm1", "--n", "1"]])
def test_usage_errors_exit_3(argv):
    with pytest.raises(SystemExit) as info:
        cli.main(argv)
    assert info.value.code == 3


def test_unwritable_output_exits_3(tmp_path):
    assert cli.main(["counterexample", "--trials", "1", "--out", str(tmp_path / "missing" / "r.json")]) == 3


def test_violation_and_generator_exit_codes(monkeypatch):
    def fake(results):
        return lambda config: CampaignReport(config, results)

    bad = TrialResult(0, SlackReport(0.5, 0.1), violation=True)
    monkeypatch.setattr(cli, "run_campaign", fake([bad]))
    assert cli.main(["verify-thm1", "--trials", "1", "--quiet"]) == 1
    monkeypatch.setattr(cli, "run_campaign", fake([TrialResult(0, generator_failure=True)]))
    assert cli.main(["verify-thm1", "--trials", "1", "--quiet"]) == 2
