import json

import numpy as np
import pytest

from rindler_gate import cli, selftest
from rindler_gate.outputs import read_table
from rindler_gate.ramsey import fringe_visibility


@pytest.fixture(autouse=True)
def in_tmp(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("RINDLER_GATE_LOG_LEVEL", raising=False)


def test_spectra_peak(tmp_path):
    out = tmp_path / "spectra.csv"
    assert cli.main(["spectra", "--omega", "1", "--accel", "1", "--epsilon", "0.05",
                     "--output", str(out)]) == 0
    frame, metadata = read_table(out)
    omega = frame["Omega"].to_numpy()[int(np.argmax(frame["GEG_RR"].to_numpy()))]
    assert abs(omega - 1.0) <= 0.1
    assert metadata["table"] == "spectra"
    assert metadata["epsilon"] == "0.05"


def test_default_output_location(tmp_path):
    assert cli.main(["ramsey", "--format", "json"]) == 0
    assert (tmp_path / "results" / "ramsey.json").is_file()


def test_resonant_prints_json(capsys):
    assert cli.main(["resonant", "--omega", "0.000001", "--accel", "1"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["gamma"] == pytest.approx(1.0, abs=1e-10)
    assert set(payload["qubit_factor"]) == {"ground", "excited"}


def test_ramsey_inverted_fringe(tmp_path):
    out = tmp_path / "ramsey.csv"
    assert cli.main(["ramsey", "--gate-strength", "1", "--output", str(out)]) == 0
    frame, metadata = read_table(out)
    assert fringe_visibility(zip(frame["phi_R"], frame["P_e"])) == pytest.approx(-1.0, abs=1e-12)
    assert float(metadata["visibility"]) == pytest.approx(-1.0, abs=1e-12)


def test_runs_are_byte_identical(tmp_path):
    for name in ("a.csv", "b.csv"):
        assert cli.main(["interference", "--channel-group", "RR", "--output", str(tmp_path / name)]) == 0
    assert (tmp_path / "a_RR.csv").read_bytes() == (tmp_path / "b_RR.csv").read_bytes()


def test_interference_writes_every_group(tmp_path):
    assert cli.main(["interference", "--omega", "2", "--accel", "2"]) == 0
    for tag in ("RR", "LL", "RL_LR"):
        frame, metadata = read_table(tmp_path / "results" / f"interference_{tag}.csv")
        assert len(frame) == 41 * 41
        assert metadata["omega_ratio"] == "1.0"


def test_config_file_with_flag_override(tmp_path):
    config = tmp_path / "run.env"
    config.write_text("OMEGA=3\nACCEL=1\nEPSILON=0.1\n")
    assert cli.main(["spectra", "--config", str(config), "--omega", "2"]) == 0
    _, metadata = read_table(tmp_path / "results" / "spectra.csv")
    assert metadata["omega"] == "2.0"
    assert metadata["epsilon"] == "0.1"


def test_pv_and_wigner_outputs(tmp_path):
    assert cli.main(["pv", "--beta2", "0.3", "--phi", "1.0"]) == 0
    frame, _ = read_table(tmp_path / "results" / "pv.csv")
    assert frame["channel"].tolist() == ["LL", "RL", "RR"]

    assert cli.main(["wigner", "--mode", "B+", "--grid-n", "101"]) == 0
    frame, metadata = read_table(tmp_path / "results" / "wigner.csv")
    assert len(frame) == 101 * 101
    assert metadata["partner"] == "B-"
    assert metadata["omega"] == "1.0" and metadata["accel"] == "1.0"
    assert float(metadata["negativity_volume"]) > 0.2


def test_sweet_spot(tmp_path):
    assert cli.main(["sweet-spot", "--channel-group", "RL+LR", "--omega-ratios", "0.5,3"]) == 0
    frame, _ = read_table(tmp_path / "results" / "sweet-spot.csv")
    assert frame["max_abs_p_int"].iloc[1] < frame["max_abs_p_int"].iloc[0]


def test_unknown_flag_is_a_usage_error():
    with pytest.raises(SystemExit) as info:
        cli.main(["spectra", "--warp", "9"])
    assert info.value.code == 2


@pytest.mark.parametrize("argv", [
    ["spectra", "--accel", "-1"],
    ["ramsey", "--gate-strength", "2"],
    ["spectra", "--config", "absent.env"],
    ["ramsey", "--log-level", "loud"],
])
def test_invalid_values_exit_2(argv, capsys):
    assert cli.main(argv) == 2
    assert "invalid configuration" in capsys.readouterr().err


def test_bad_log_level_from_environment_exits_2(monkeypatch, capsys):
    monkeypatch.setenv("RINDLER_GATE_LOG_LEVEL", "loud")
    assert cli.main(["ramsey"]) == 2
    assert "unknown logging level" in capsys.readouterr().err


def test_pv_with_closely_spaced_poles(tmp_path):
    assert cli.main(["pv", "--omega", "0.00001"]) == 0
    frame, _ = read_table(tmp_path / "results" / "pv.csv")
    assert np.all(np.isfinite(frame[["ground_re", "ground_im", "excited_re", "excited_im"]].to_numpy()))


def test_numerical_failure_exits_3():
    assert cli.main(["pv", "--pv-cutoff", "5"]) == 3


def test_strict_escalates_truncation(monkeypatch):
    monkeypatch.setattr("rindler_gate.resonance.TAIL_TOLERANCE", -1.0)
    with pytest.warns(UserWarning):
        assert cli.main(["pv"]) == 0
    assert cli.main(["pv", "--strict"]) == 3


def test_selftest_exit_status(monkeypatch, capsys):
    monkeypatch.setattr(selftest, "CHECKS", [("fine", lambda: (True, "ok"), False)])
    assert cli.main(["selftest"]) == 0
    monkeypatch.setattr(selftest, "CHECKS", [("broken", lambda: (False, "bad"), False)])
    assert cli.main(["selftest"]) == 1
    assert "✗ broken" in capsys.readouterr().out


def test_report(tmp_path):
    results = tmp_path / "results"
    assert cli.main(["ramsey", "--gate-strength", "1"]) == 0
    assert cli.main(["wigner"]) == 0
    assert cli.main(["spectra", "--grid-n", "801"]) == 0
    assert cli.main(["resonant", "--output", str(results / "resonant.json")]) == 0
    assert cli.main(["report"]) == 0
    text = (results / "REPORT.md").read_text()
    assert "## Ramsey visibility" in text and "-1.000000" in text
    assert "## Resonant state" in text
    assert "## Wigner negativity" in text
    assert "| yes |" in text

    first = text
    assert cli.main(["report", "--results-dir", str(results)]) == 0
    assert (results / "REPORT.md").read_text() == first


def test_report_on_empty_directory(tmp_path):
    assert cli.main(["report", "--results-dir", str(tmp_path / "nothing")]) == 1
