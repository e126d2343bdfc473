"""Constants and enums for cdsw."""

from enum import Enum
from typing import Dict, Tuple


class SimpleType(str, Enum):
    """Cartan type letter of a simple Lie algebra."""

    A = "A"
    B = "B"
    C = "C"
    D = "D"
    E = "E"
    F = "F"
    G = "G"


class AlgebraKind(str, Enum):
    """Quotient algebras of the exterior algebra handled by the quotient module."""

    A = "A"  # R / <C1 + C2 + C3>
    B = "B"  # R / <C1 + C2>
    KOSTANT = "KostantSingle"  # wedge(g) / <d(g)>, single copy


class CheckStatus(str, Enum):
    """Outcome of a check."""

    PASS = "pass"
    FAIL = "fail"
    SKIPPED_RESOURCE = "skipped-resource"
    INFO = "info"


class Suite(str, Enum):
    """Verification suites of `cdsw verify`."""

    COMBINATORIAL = "combinatorial"
    ALGEBRAIC = "algebraic"
    COCYCLE = "cocycle"
    FULL = "full"


class OutputFormat(str, Enum):
    """Report output formats."""

    MD = "md"
    CSV = "csv"
    JSON = "json"


# Valid ranks per type (inclusive bounds; None = unbounded above)
RANK_BOUNDS: Dict[str, Tuple[int, int | None]] = {
    "A": (1, None),
    "B": (2, None),
    "C": (2, None),
    "D": (4, None),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}

# Dual Coxeter numbers as tabulated for each family (rank -> h)
DUAL_COXETER_TABLE = {
    "A": lambda rank: rank + 1,
    "B": lambda rank: 2 * rank - 1,
    "C": lambda rank: rank + 1,
    "D": lambda rank: 2 * rank - 2,
    "E": lambda rank: {6: 12, 7: 18, 8: 30}[rank],
    "F": lambda rank: 9,
    "G": lambda rank: 4,
}

# Exterior monomials are packed in one machine word per copy
MAX_SLOTS_PER_COPY = 63

# Budgets and defaults (overridable via env vars / CLI flags)
DEFAULT_MAX_BLOCK_DIM = 4000
DEFAULT_SEED = 0
DEFAULT_COCYCLE_SAMPLES = 100
DEFAULT_CACHE_DIR = "cache"
DEFAULT_LOG_LEVEL = "WARNING"

# Per-type default for --max-total-degree: A1/A2 complete, everything else opt-in
DEFAULT_MAX_TOTAL_DEGREE: Dict[str, int] = {
    "A1": 4,
    "A2": 6,
}
FALLBACK_MAX_TOTAL_DEGREE = 2

# Environment variable names
ENV_CACHE_DIR = "CDSW_CACHE_DIR"
ENV_MAX_BLOCK_DIM = "CDSW_MAX_BLOCK_DIM"
ENV_MAX_TOTAL_DEGREE = "CDSW_MAX_TOTAL_DEGREE"
ENV_LOG_LEVEL = "CDSW_LOG_LEVEL"
ENV_SEED = "CDSW_SEED"

# Cache file name pattern below <root>/<type><rank>/
CACHE_FILE_PATTERN = "{algebra}_{p}_{q}.json"
