"""Tests for structured logging and the check decorator."""

import json
import logging

from cdsw_shared.errors import CheckFailure, ResourceBudgetExceeded
from cdsw_shared.observability import ObservabilityContext, check_handler, log_event


@check_handler("demo")
def _demo(type_letter, rank, outcome="pass", **params):
    if outcome == "fail":
        raise CheckFailure("identity broken", {"value": 7})
    if outcome == "budget":
        raise ResourceBudgetExceeded("too big", {"B(3,3)@0": 9000})
    return {"answer": 42}, outcome == "info"


class TestCheckHandler:
    """Test suite for check_handler."""

    def test_pass(self):
        """Returned details land in a passing report."""
        report = _demo("A", 1)

        assert report.check == "demo"
        assert report.status == "pass"
        assert report.details == {"answer": 42}
        assert report.wall_time_ms >= 0

    def test_info(self):
        """Partial results are reported as info."""
        assert _demo("G", 2, outcome="info").status == "info"

    def test_failure_carries_witness_and_params(self):
        """A CheckFailure becomes a failing report with the witness merged into the params."""
        report = _demo("B", 2, outcome="fail")

        assert report.failed
        assert report.witness == {"outcome": "fail", "value": 7}
        assert report.details["message"] == "identity broken"

    def test_budget_becomes_skipped(self):
        """Over-budget computations are skipped, not failed."""
        report = _demo("B", 2, outcome="budget")

        assert report.status == "skipped-resource"
        assert report.details["block_sizes"] == {"B(3,3)@0": 9000}


class TestLogging:
    """Test suite for JSON log events."""

    def test_log_event_is_json(self, caplog):
        """Events are single JSON documents with an eventType."""
        caplog.set_level(logging.INFO)
        log_event("alcoves_enumerated", {"type": "A", "rank": 2, "count": 4})

        entry = json.loads(caplog.records[-1].getMessage())
        assert entry == {"eventType": "alcoves_enumerated", "type": "A", "rank": 2, "count": 4}

    def test_context_logs_completion(self, caplog):
        """The context manager logs a completion metric with the duration."""
        caplog.set_level(logging.DEBUG)
        with ObservabilityContext("enumerate", {"type": "A"}) as obs:
            pass

        entry = json.loads(caplog.records[-1].getMessage())
        assert entry["eventType"] == "enumerate_completed"
        assert entry["metrics"]["duration_ms"] == obs.duration_ms

    def test_context_logs_failure(self, caplog):
        """Exceptions propagate and are logged."""
        caplog.set_level(logging.DEBUG)
        try:
            with ObservabilityContext("eliminate"):
                raise ValueError("boom")
        except ValueError:
            pass

        entry = json.loads(caplog.records[-1].getMessage())
        assert entry["eventType"] == "eliminate_failed"
        assert entry["errorType"] == "ValueError"
