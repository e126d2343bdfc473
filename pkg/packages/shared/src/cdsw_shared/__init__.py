"""cdsw shared - enums, models, errors, logging and cache for the cdsw toolkit.

This library provides:
- Pydantic models for reports and cache records
- A file-backed result cache
- Constants and enums for consistent values
- Structured logging and observability utilities
- Error types and the exact-rational codec
"""

from .cache import ResultCache
from .constants import AlgebraKind, CheckStatus, OutputFormat, SimpleType, Suite
from .errors import (
    CdswError,
    CheckFailure,
    InternalError,
    ResourceBudgetExceeded,
    UsageError,
)
from .models import BlockRecord, Budget, ComponentRecord, Report
from .observability import (
    ObservabilityContext,
    check_handler,
    log_error,
    log_event,
    log_metrics,
    setup_logging,
)
from .rational import format_rational, format_vector, parse_rational, to_fraction

__version__ = "0.1.0"

__all__ = [
    # Models
    "Report",
    "Budget",
    "BlockRecord",
    "ComponentRecord",
    # Cache
    "ResultCache",
    # Constants
    "SimpleType",
    "AlgebraKind",
    "CheckStatus",
    "Suite",
    "OutputFormat",
    # Errors
    "CdswError",
    "UsageError",
    "ResourceBudgetExceeded",
    "CheckFailure",
    "InternalError",
    # Observability
    "setup_logging",
    "log_event",
    "log_error",
    "log_metrics",
    "ObservabilityContext",
    "check_handler",
    # Rationals
    "to_fraction",
    "format_rational",
    "format_vector",
    "parse_rational",
]
