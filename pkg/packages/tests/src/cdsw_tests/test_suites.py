"""Tests for the checks and verification suites behind the CLI."""

import pytest
from cdsw_scripts import suites
from cdsw_scripts.suites import (
    aff2_check,
    ddegree_value,
    invariant_dim_value,
    invariant_series_check,
    part_i_check,
    s_power_check,
    verify_suite,
)
from cdsw_shared.constants import CheckStatus


def _params(cache_dir, max_total_degree=4, max_block_dim=4000):
    return {
        "max_total_degree": max_total_degree,
        "max_block_dim": max_block_dim,
        "cache_dir": cache_dir,
        "use_cache": True,
    }


class TestChecks:
    """Test suite for single checks."""

    def test_aff2(self):
        """The count and length series of Aff'_2 for sl3."""
        report = aff2_check("A", 2)

        assert report.status == CheckStatus.PASS.value
        assert report.details["count"] == 4
        assert report.details["length_series"] == [1, 1, 2]

    def test_ddegree(self):
        """d^{s_0}_{s_0, e} = 0."""
        report = ddegree_value("A", 2, u=[0], v=[], w=[0])

        assert report.details["d_degree"] == 0
        assert report.details["lengths"] == [1, 0, 1]

    def test_invariant_series(self, cache_dir):
        """B for sl2 has invariants 1 + q."""
        report = invariant_series_check("A", 1, **_params(cache_dir))

        assert report.status == CheckStatus.PASS.value
        assert report.details["series"] == [1, 1]
        assert report.details["complete"]

    def test_invariant_dim(self, cache_dir):
        """One invariant of A in bidegree (1, 1)."""
        report = invariant_dim_value("A", 1, algebra="A", p=1, q=1, **_params(cache_dir))

        assert report.details["invariant_dim"] == 1

    def test_s_power_order(self, cache_dir):
        """S^2 = 0 for sl2."""
        report = s_power_check("A", 1, **_params(cache_dir))

        assert report.details["s_power_order"] == 2
        assert report.status == CheckStatus.PASS.value

    def test_constant_loop_defect_is_info(self, monkeypatch):
        """A nonzero constant-loop value for d >= 2 gives info with its witness."""
        witness = {"sample": 3, "arguments": [], "value": "-128"}

        def fake_check(lie, d, samples, seed):
            return {
                "d": d,
                "samples": samples,
                "nonzero_values": 1,
                "constant_loop_violations": 1,
                "constant_loop_witness": witness,
            }

        monkeypatch.setattr(suites, "cocycle_check", fake_check)
        report = suites.cocycle_relative_check("A", 2, d=2, samples=4, seed=0)

        assert report.status == CheckStatus.INFO.value
        assert report.details["constant_loop_witness"] == witness

    def test_too_large_is_skipped(self, cache_dir):
        """E6 does not fit the exterior slots."""
        report = part_i_check("E", 6, **_params(cache_dir))

        assert report.status == CheckStatus.SKIPPED_RESOURCE.value
        assert report.witness is None

    def test_block_budget_is_skipped(self, cache_dir):
        """A tiny block budget skips the computation."""
        report = s_power_check("A", 1, **_params(cache_dir, max_block_dim=1))

        assert report.status == CheckStatus.SKIPPED_RESOURCE.value
        assert report.details["block_sizes"]


class TestSuites:
    """Test suite for verify_suite."""

    def test_combinatorial(self):
        """Every combinatorial check passes for sl3 and the aggregate comes last."""
        reports = verify_suite("combinatorial", "A", 2)

        assert reports[-1].check == "suite:combinatorial"
        assert all(r.status == CheckStatus.PASS.value for r in reports)
        assert reports[-1].details["checks"] == [r.check for r in reports[:-1]]

    def test_algebraic(self, cache_dir):
        """The quotient checks pass for sl2."""
        reports = verify_suite("algebraic", "A", 1, **_params(cache_dir))

        assert reports[-1].status == CheckStatus.PASS.value
        assert [r.check for r in reports[:-1]] == [
            "part_i",
            "s_power_order",
            "invariant_series",
            "quotient_consistency",
            "kostant_quotient",
        ]

    def test_cocycle(self):
        """The cocycle suite adds the degree-two cocycle for classical types."""
        reports = verify_suite("cocycle", "A", 1, samples=3, seed=2)

        assert reports[-1].status == CheckStatus.PASS.value
        assert [r.params.get("d") for r in reports if r.check == "cocycle"] == [1, 2]

    def test_unknown_suite(self):
        """Suite names are validated."""
        with pytest.raises(ValueError):
            verify_suite("everything", "A", 1)

    @pytest.mark.slow
    def test_full_a2(self, cache_dir):
        """Every suite passes for sl3."""
        reports = verify_suite("full", "A", 2, samples=2, seed=0, **_params(cache_dir, 6))

        assert reports[-1].status == CheckStatus.PASS.value
