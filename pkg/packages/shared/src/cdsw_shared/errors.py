"""Exception types shared by all cdsw packages."""

from typing import Any, Dict, Optional


class CdswError(Exception):
    """Base class for cdsw errors."""


class UsageError(CdswError, ValueError):
    """Invalid input: unknown type/rank, bad copy index, inhomogeneous element, etc."""


class ResourceBudgetExceeded(CdswError):
    """A computation would exceed the configured budget."""

    def __init__(self, message: str, block_sizes: Optional[Dict[str, int]] = None):
        """
        Initialize the error.

        Args:
            message: Human readable description
            block_sizes: Offending weight-block sizes keyed by block label
        """
        super().__init__(message)
        self.block_sizes = block_sizes or {}


class CheckFailure(CdswError):
    """A verification identity failed; carries the witness that falsifies it."""

    def __init__(self, message: str, witness: Optional[Dict[str, Any]] = None):
        """
        Initialize the failure.

        Args:
            message: Which identity failed
            witness: Data reproducing the failure (parameters, offending values)
        """
        super().__init__(message)
        self.witness = witness or {}


class InternalError(CdswError, RuntimeError):
    """An internal invariant is broken (e.g. a word that is not reduced)."""
