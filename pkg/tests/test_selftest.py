import pytest

from rindler_gate import selftest


def test_crashing_check_counts_as_failure(monkeypatch):
    def boom():
        raise RuntimeError("no")

    monkeypatch.setattr(selftest, "CHECKS", [("boom", boom, False), ("info", lambda: (False, "x"), True)])
    results = selftest.run_selftest()
    assert [r.passed for r in results] == [False, True]
    assert "RuntimeError" in results[0].detail


@pytest.mark.parametrize("name,check,informational", selftest.CHECKS,
                         ids=[name for name, _, _ in selftest.CHECKS])
def test_invariant_suite(name, check, informational):
    passed, detail = check()
    assert passed or informational, detail


def test_summary_lists_every_check(capsys):
    results = [selftest.CheckResult("alpha", True, "fine"),
               selftest.CheckResult("beta", False, "off"),
               selftest.CheckResult("gamma", True, "noted", informational=True)]
    selftest.print_selftest_summary(results)
    out = capsys.readouterr().out
    assert "✓ alpha" in out and "✗ beta" in out and "i gamma" in out
    assert "2/3 checks passed" in out


def test_suite_covers_spectrum_interference_wigner_and_ramsey_bounds():
    names = {name for name, _, informational in selftest.CHECKS if not informational}
    assert {"spectrum positivity", "peak height ~ 1/eps^2", "RL double peak",
            "single pathway, no interference", "phase antisymmetry",
            "Wigner rotational symmetry", "0 <= P_e <= 1"} <= names


def test_wigner_rotation_check_reports_deviation():
    passed, detail = selftest.check_wigner_rotation()
    assert passed
    assert detail.startswith("max deviation")
