"""Tests for the report and cache-record models."""

import pytest
from cdsw_shared.constants import AlgebraKind, CheckStatus
from cdsw_shared.models import BlockRecord, Budget, ComponentRecord, Report
from pydantic import ValidationError


class TestReport:
    """Test suite for Report."""

    def test_passing_report(self):
        """A passing report needs no witness."""
        report = Report(check="aff2", type="A", rank=2, status=CheckStatus.PASS, details={"count": 4})

        assert report.status == "pass"
        assert not report.failed
        assert report.witness is None

    def test_failure_requires_witness(self):
        """A failing report without a witness is rejected."""
        with pytest.raises(ValidationError):
            Report(check="aff2", type="A", rank=2, status=CheckStatus.FAIL)

    def test_failure_with_witness(self):
        """A failing report carries its witness."""
        report = Report(
            check="zeta", type="B", rank=2, status=CheckStatus.FAIL, witness={"ideal": [[1, 1]]}
        )

        assert report.failed
        assert report.witness == {"ideal": [[1, 1]]}

    def test_json_field_order(self):
        """JSON keeps the declared field order."""
        report = Report(check="cartan", type="G", rank=2, status=CheckStatus.INFO)

        assert list(report.to_json()) == [
            "check",
            "type",
            "rank",
            "params",
            "status",
            "details",
            "witness",
            "wall_time_ms",
        ]

    def test_from_json(self):
        """A report survives its JSON form."""
        report = Report(
            check="spower",
            type="A",
            rank=1,
            params={"max_k": 3},
            status=CheckStatus.SKIPPED_RESOURCE,
            details={"block_sizes": {"A(1,1)@0": 3}},
        )

        assert Report.from_json(report.to_json()) == report


class TestBudget:
    """Test suite for Budget."""

    def test_defaults(self):
        """Defaults cover the desk-scale computations."""
        budget = Budget()

        assert budget.max_block_dim == 4000
        assert budget.use_cache is True

    def test_rejects_empty_block_budget(self):
        """Budgets must allow at least one monomial."""
        with pytest.raises(ValidationError):
            Budget(max_block_dim=0)


class TestComponentRecord:
    """Test suite for ComponentRecord."""

    def test_weight_key(self):
        """Weights are keyed by their comma-joined coordinates."""
        assert ComponentRecord.weight_key((1, -1, 0)) == "1,-1,0"

    def test_algebra_stored_as_value(self):
        """The algebra kind serializes as its name."""
        record = ComponentRecord(
            type="A",
            rank=1,
            algebra=AlgebraKind.KOSTANT,
            p=2,
            q=0,
            content_hash="abc",
            blocks={"0": BlockRecord(weight=[0], size=1, rank=1, pivots=[0], rows=[[(0, "1")]])},
        )

        data = record.to_json()
        assert data["algebra"] == "KostantSingle"
        assert ComponentRecord.from_json(data).blocks["0"].rank == 1
