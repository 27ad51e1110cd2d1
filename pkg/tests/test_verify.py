"""The cross-validation suite itself must pass and report honestly."""

import pytest

from cdrecho.verify import (
    Check,
    check_area_propagation,
    check_control_recovery,
    check_engine_agreement,
    check_half_pi_chain,
    check_rate_equations,
    check_weak_chain,
    run_checks,
)


class TestCheckLine:
    def test_pass_format(self):
        c = Check(name="demo", ok=True, deviation=3.21e-13, tolerance=1e-9)
        assert c.line() == "PASS demo: deviation 3.210e-13 (tol 1.0e-09)"

    def test_fail_format_with_note(self):
        c = Check(name="demo", ok=False, deviation=2e-3, tolerance=1e-9, note="drift 1e-2")
        assert c.line() == "FAIL demo: deviation 2.000e-03 (tol 1.0e-09) drift 1e-2"


class TestIndividualChecks:
    @pytest.mark.parametrize(
        "fn,margin",
        [
            (check_weak_chain, 1e-3),
            (check_half_pi_chain, 1e-3),
            (check_control_recovery, 1e-2),
            (check_rate_equations, 1e-1),
        ],
    )
    def test_passes_with_margin(self, fn, margin):
        check = fn()
        assert check.ok
        assert check.deviation <= margin * check.tolerance

    def test_engine_agreement(self):
        check = check_engine_agreement()
        assert check.ok
        assert check.deviation <= check.tolerance

    def test_area_propagation(self):
        check = check_area_propagation()
        assert check.ok
        assert check.deviation <= check.tolerance


class TestRunChecks:
    def test_all_named_and_green(self):
        checks = run_checks()
        assert len(checks) == 6
        assert len({c.name for c in checks}) == 6
        assert all(c.ok for c in checks)
