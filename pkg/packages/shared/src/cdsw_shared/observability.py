"""Observability utilities for structured JSON logging.

Every log record is a single JSON document on stderr so runs can be grepped
or loaded into any log query tool. Stdout is reserved for reports.

Example:
    ```python
    from cdsw_shared import log_event

    log_event('block_reduced', {
        'type': 'A',
        'rank': 2,
        'bidegree': [2, 2],
        'block_size': 36,
    })
    ```

Query (jq):
    ```
    jq 'select(.eventType == "block_reduced") | .block_size' run.log
    ```
"""

import functools
import json
import logging
import sys
import time
from typing import Any, Callable, Dict, Optional

import aws_lambda_logging

from .constants import DEFAULT_LOG_LEVEL, CheckStatus
from .errors import CheckFailure, ResourceBudgetExceeded
from .models import Report


def setup_logging(level: str = DEFAULT_LOG_LEVEL) -> None:
    """
    Set up structured JSON logging on stderr.

    Call this once at CLI start-up. Every handler on the root logger gets the
    JSON formatter, so records carry timestamp, level and logger fields.

    Args:
        level: Root log level ('DEBUG', 'INFO', 'WARNING', 'ERROR')
    """
    root = logging.getLogger()
    if not root.handlers:
        logging.basicConfig(stream=sys.stderr)
    aws_lambda_logging.setup(level=level.upper(), boto_level="WARNING")


def log_event(
    event_type: str,
    details: Optional[Dict[str, Any]] = None,
    level: str = "INFO",
) -> None:
    """
    Log a structured observability event.

    Args:
        event_type: Type of event (e.g., 'cache_hit', 'alcoves_enumerated')
        details: Additional context (type, rank, bidegree, etc.)
        level: Log level ('DEBUG', 'INFO', 'WARNING', 'ERROR')

    Example:
        ```python
        log_event('cache_miss', {
            'path': 'cache/A2/A_2_2.json',
            'reason': 'hash_mismatch',
        })
        ```
    """
    if details is None:
        details = {}

    log_entry = {
        "eventType": event_type,
        **details,
    }

    logger = logging.getLogger()

    if level == "DEBUG":
        logger.debug(json.dumps(log_entry, default=str))
    elif level == "WARNING":
        logger.warning(json.dumps(log_entry, default=str))
    elif level == "ERROR":
        logger.error(json.dumps(log_entry, default=str))
    else:
        logger.info(json.dumps(log_entry, default=str))


def log_error(
    event_type: str,
    error: Exception,
    details: Optional[Dict[str, Any]] = None,
) -> None:
    """
    Log an error event with exception details.

    Args:
        event_type: Type of error event (e.g., 'check_failed')
        error: The exception that occurred
        details: Additional context

    Example:
        ```python
        try:
            quotient.component(2, 2)
        except ResourceBudgetExceeded as e:
            log_error('component_over_budget', e, {'bidegree': [2, 2]})
        ```
    """
    if details is None:
        details = {}

    log_entry = {
        "eventType": event_type,
        "error": str(error),
        "errorType": type(error).__name__,
        **details,
    }

    logger = logging.getLogger()
    logger.error(json.dumps(log_entry, default=str))


def log_metrics(
    event_type: str,
    metrics: Dict[str, Any],
    details: Optional[Dict[str, Any]] = None,
) -> None:
    """
    Log performance metrics as structured data.

    Args:
        event_type: Type of metric event (e.g., 'block_reduced')
        metrics: Metric values (duration, block size, rank, etc.)
        details: Additional context

    Example:
        ```python
        log_metrics('block_reduced', {
            'duration_ms': 12,
            'size': 36,
            'rank': 20,
        }, {'type': 'A', 'rank': 2})
        ```
    """
    if details is None:
        details = {}

    log_entry = {
        "eventType": event_type,
        "metrics": metrics,
        **details,
    }

    logger = logging.getLogger()
    logger.info(json.dumps(log_entry, default=str))


def check_handler(name: str) -> Callable:
    """
    Decorator turning a check body into a function returning a Report.

    The wrapped function is called with ``(type_letter, rank, **params)`` and
    returns ``(details, info)`` where ``info`` marks partial data. The decorator:
    - Times the check and fills wall_time_ms
    - Turns CheckFailure into a failing report carrying the witness
    - Turns ResourceBudgetExceeded into a skipped-resource report
    - Logs the outcome

    Example:
        ```python
        @check_handler("aff2_count")
        def aff2_count(type_letter, rank):
            return {"count": 4}, False
        ```
    """

    def decorator(func: Callable) -> Callable:
        @functools.wraps(func)
        def wrapper(type_letter: str, rank: int, **params) -> Report:
            context = {"check": name, "type": type_letter, "rank": rank}
            log_event("check_started", {**context, "params": params}, level="DEBUG")
            start = time.perf_counter()
            witness = None
            try:
                details, info = func(type_letter, rank, **params)
                status = CheckStatus.INFO if info else CheckStatus.PASS
            except CheckFailure as e:
                log_error("check_failed", e, context)
                details = {"message": str(e)}
                witness = {**params, **e.witness} or {"message": str(e)}
                status = CheckStatus.FAIL
            except ResourceBudgetExceeded as e:
                log_error("check_over_budget", e, context)
                details = {"message": str(e), "block_sizes": e.block_sizes}
                status = CheckStatus.SKIPPED_RESOURCE
            duration_ms = int((time.perf_counter() - start) * 1000)
            log_metrics(
                "check_completed",
                {"duration_ms": duration_ms},
                {**context, "status": status.value},
            )
            return Report(
                check=name,
                type=type_letter,
                rank=rank,
                params=params,
                status=status,
                details=details,
                witness=witness,
                wall_time_ms=duration_ms,
            )

        return wrapper

    return decorator


class ObservabilityContext:
    """
    Context manager for logging operations with timing.

    Example:
        ```python
        with ObservabilityContext('enumerate_alcoves', {'type': 'A', 'rank': 2}) as obs:
            alcoves = group.alcoves_in_2c()
        print(obs.duration_ms)
        ```

    Logs:
        - 'enumerate_alcoves_started' (DEBUG)
        - 'enumerate_alcoves_completed' (with duration_ms)
        - 'enumerate_alcoves_failed' (if an exception occurs)
    """

    def __init__(self, operation_name: str, context: Optional[Dict[str, Any]] = None):
        """
        Initialize observability context.

        Args:
            operation_name: Name of the operation being monitored
            context: Additional context to include in all logs
        """
        self.operation_name = operation_name
        self.context = context or {}
        self.start_time: Optional[float] = None
        self.duration_ms: int = 0

    def __enter__(self):
        """Log operation start."""
        self.start_time = time.perf_counter()
        log_event(f"{self.operation_name}_started", self.context, level="DEBUG")
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        """Log operation completion or error."""
        if self.start_time is None:
            return False

        self.duration_ms = int((time.perf_counter() - self.start_time) * 1000)

        if exc_type is not None:
            log_error(
                f"{self.operation_name}_failed",
                exc_val,
                {**self.context, "duration_ms": self.duration_ms},
            )
        else:
            log_metrics(
                f"{self.operation_name}_completed",
                {"duration_ms": self.duration_ms},
                self.context,
            )
        return False
