from fractions import Fraction

import pytest

from ghzdisc import (
    PlanParams,
    bob_marginal,
    checkpoint_report,
    cpm_plan,
    no_signaling_suite,
    random_plan,
    spm_plan,
)

P8 = PlanParams(8)
HALF = (Fraction(1, 2), Fraction(1, 2))


class TestBobMarginal:
    def test_uniform_plan(self):
        assert bob_marginal(cpm_plan(P8), P8) == HALF

    def test_cascade_plan(self):
        assert bob_marginal(spm_plan(P8), P8) == HALF

    @pytest.mark.parametrize("n", range(3, 9))
    def test_random_plans(self, n):
        params = PlanParams(n)
        for seed in range(5):
            assert bob_marginal(random_plan(params, seed), params) == HALF

    def test_nondegenerate_coefficient(self):
        params = PlanParams(6, Fraction(9, 10))
        assert bob_marginal(spm_plan(params), params) == HALF


class TestRandomPlan:
    def test_bases_orthonormal_and_deterministic(self):
        plan = random_plan(P8, 17)
        for history in ("", "0", "10", "111", "0101010"[:6]):
            basis = plan.basis_for(history)
            assert basis.c0.sq() + basis.c1.sq() == 1
            assert basis == random_plan(P8, 17).basis_for(history)

    def test_seeds_differ(self):
        assert random_plan(P8, 1).basis_for("") != random_plan(P8, 2).basis_for("")


class TestCheckpointReport:
    def test_all_pass(self):
        checks = checkpoint_report(P8)
        failing = [c for c in checks if not c.passed]
        assert not failing, failing

    def test_includes_divergence_note(self):
        statuses = {c.name: c.status for c in checkpoint_report(P8)}
        assert statuses["claimed_outcome_skew"] == "INFO"

    def test_json_shape(self):
        entry = checkpoint_report(P8)[0].to_json()
        assert set(entry) == {
            "check_name", "computed_value", "expected_value", "tolerance", "status",
        }

    def test_other_instance_subset(self):
        checks = checkpoint_report(PlanParams(6))
        names = {c.name for c in checks}
        assert "t5_sq_telescoping" in names
        assert "w_1" not in names  # printed targets only apply to the default instance
        assert all(c.passed for c in checks)


def test_no_signaling_suite_passes():
    checks = no_signaling_suite(plans_per_n=2, seed=1)
    assert all(c.passed for c in checks)
    assert len(checks) == 6 * 4
