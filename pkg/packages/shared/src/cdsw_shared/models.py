"""Pydantic models for cdsw reports and cache records with JSON serialization."""

from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .constants import (
    DEFAULT_MAX_BLOCK_DIM,
    FALLBACK_MAX_TOTAL_DEGREE,
    AlgebraKind,
    CheckStatus,
)


class Report(BaseModel):
    """Outcome of one check, machine-readable with a stable field order."""

    model_config = ConfigDict(use_enum_values=True)

    check: str = Field(description="Check name, e.g. 'aff2_count'")
    type: str = Field(description="Cartan type letter")
    rank: int = Field(description="Rank of the root system")
    params: Dict[str, Any] = Field(default_factory=dict, description="Check parameters")
    status: CheckStatus = Field(description="pass / fail / skipped-resource / info")
    details: Dict[str, Any] = Field(default_factory=dict, description="Dims, counts, series")
    witness: Optional[Dict[str, Any]] = Field(
        default=None, description="Data reproducing a failure (required on fail)"
    )
    wall_time_ms: int = Field(default=0, description="Wall time of the check")

    @model_validator(mode="after")
    def _failure_has_witness(self) -> "Report":
        if self.status == CheckStatus.FAIL.value and not self.witness:
            raise ValueError(f"failed check {self.check!r} must carry a witness")
        return self

    @property
    def failed(self) -> bool:
        """Whether this report is a failure."""
        return self.status == CheckStatus.FAIL.value

    def to_json(self) -> dict:
        """Convert to a JSON-ready dict (field order preserved)."""
        return self.model_dump(mode="json")

    @classmethod
    def from_json(cls, item: dict) -> "Report":
        """Create a report from its JSON dict."""
        return cls.model_validate(item)


class Budget(BaseModel):
    """Resource limits for the algebraic computations."""

    max_block_dim: int = Field(
        default=DEFAULT_MAX_BLOCK_DIM, ge=1, description="Largest weight block eliminated"
    )
    max_total_degree: int = Field(
        default=FALLBACK_MAX_TOTAL_DEGREE, ge=0, description="Largest p+q computed"
    )
    use_cache: bool = Field(default=True, description="Read and write the disk cache")


class BlockRecord(BaseModel):
    """Row-reduced span of one weight block of an ideal component."""

    weight: List[int] = Field(description="Weight of the block in simple-root coordinates")
    size: int = Field(description="Number of monomials in the block")
    rank: int = Field(description="Rank of the ideal inside the block")
    denominator: str = Field(default="1", description="Common denominator of the rows")
    pivots: List[int] = Field(default_factory=list, description="Pivot columns, ascending")
    rows: List[List[Tuple[int, str]]] = Field(
        default_factory=list,
        description="Fraction-free echelon rows as [[column, integer], ...]",
    )


class ComponentRecord(BaseModel):
    """Cached data for one bidegree component of one quotient algebra."""

    model_config = ConfigDict(use_enum_values=True)

    type: str = Field(description="Cartan type letter")
    rank: int = Field(description="Rank")
    algebra: AlgebraKind = Field(description="Which quotient algebra")
    p: int = Field(description="First degree")
    q: int = Field(description="Second degree")
    content_hash: str = Field(description="Hash of the structure-constant table")
    blocks: Dict[str, BlockRecord] = Field(
        default_factory=dict, description="Block records keyed by weight label"
    )
    invariant_dim: Optional[int] = Field(default=None, description="dim of invariants, if known")

    @staticmethod
    def weight_key(weight) -> str:
        """Key under which a block of the given weight is stored."""
        return ",".join(str(int(c)) for c in weight)

    def to_json(self) -> dict:
        """Convert to a JSON-ready dict."""
        return self.model_dump(mode="json")

    @classmethod
    def from_json(cls, item: dict) -> "ComponentRecord":
        """Create a record from its JSON dict."""
        return cls.model_validate(item)
