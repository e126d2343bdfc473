"""Common utility functions for scripts."""

import os
import re
from pathlib import Path
from typing import List, Optional

from cdsw_shared.constants import (
    DEFAULT_CACHE_DIR,
    DEFAULT_LOG_LEVEL,
    DEFAULT_MAX_BLOCK_DIM,
    DEFAULT_MAX_TOTAL_DEGREE,
    DEFAULT_SEED,
    ENV_CACHE_DIR,
    ENV_LOG_LEVEL,
    ENV_MAX_BLOCK_DIM,
    ENV_MAX_TOTAL_DEGREE,
    ENV_SEED,
    FALLBACK_MAX_TOTAL_DEGREE,
)
from cdsw_shared.errors import UsageError
from dotenv import load_dotenv


def _env_int(name: str, default: int) -> int:
    value = os.getenv(name)
    if value is None or value == "":
        return default
    try:
        return int(value)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {value!r}") from None


def get_cache_dir(option: Optional[str] = None) -> str:
    """Cache root: $CDSW_CACHE_DIR, else the --cache-dir option, else ./cache."""
    return os.getenv(ENV_CACHE_DIR) or option or DEFAULT_CACHE_DIR


def get_max_block_dim() -> int:
    """Largest weight block to eliminate."""
    return _env_int(ENV_MAX_BLOCK_DIM, DEFAULT_MAX_BLOCK_DIM)


def get_max_total_degree(type_letter: str, rank: int) -> int:
    """Default largest p+q: complete for A1 and A2, small elsewhere."""
    default = DEFAULT_MAX_TOTAL_DEGREE.get(f"{type_letter}{rank}", FALLBACK_MAX_TOTAL_DEGREE)
    return _env_int(ENV_MAX_TOTAL_DEGREE, default)


def get_log_level() -> str:
    """Root log level."""
    return os.getenv(ENV_LOG_LEVEL, DEFAULT_LOG_LEVEL)


def get_seed() -> int:
    """Seed for random samples."""
    return _env_int(ENV_SEED, DEFAULT_SEED)


def parse_word(text: Optional[str]) -> List[int]:
    """
    Parse a word over the simple reflections.

    Accepts ``"0,2,1"``, ``"[0,2,1]"``, ``"0 2 1"``, ``"021"`` (single digits)
    and ``""`` for the identity.

    Raises:
        UsageError: If the text is not a word
    """
    if text is None:
        return []
    body = text.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1].strip()
    if not body:
        return []
    if re.fullmatch(r"\d+", body):
        return [int(ch) for ch in body]
    if not re.fullmatch(r"\d+([\s,]+\d+)*", body):
        raise UsageError(f"cannot parse word {text!r}")
    return [int(part) for part in re.split(r"[\s,]+", body)]


def load_env(env_file: Path | str | None = None) -> None:
    """
    Load environment variables from .env files using dotenv.

    Loads in order:
    1. Base .env file (or specified env_file)
    2. .env.local (if it exists) - allows local overrides

    Args:
        env_file: Path to base .env file. If None, looks for .env in current directory.
    """
    if env_file is None:
        env_file = Path(".env")
    else:
        env_file = Path(env_file)

    load_dotenv(env_file, override=False)

    env_local = env_file.parent / f"{env_file.stem}.local{env_file.suffix}"
    if env_local.exists():
        load_dotenv(env_local, override=True)

