"""Shared fixtures for the cdsw tests."""

import pytest
from cdsw_algebra.cartan import build_root_system
from cdsw_algebra.chevalley import chevalley_lie_algebra
from cdsw_shared.constants import (
    ENV_CACHE_DIR,
    ENV_LOG_LEVEL,
    ENV_MAX_BLOCK_DIM,
    ENV_MAX_TOTAL_DEGREE,
    ENV_SEED,
)


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    """Run every test without cdsw settings from the outer environment."""
    for name in (ENV_CACHE_DIR, ENV_LOG_LEVEL, ENV_MAX_BLOCK_DIM, ENV_MAX_TOTAL_DEGREE, ENV_SEED):
        monkeypatch.delenv(name, raising=False)


@pytest.fixture
def cache_dir(tmp_path):
    """Empty cache root."""
    root = tmp_path / "cache"
    root.mkdir()
    return str(root)


@pytest.fixture
def a1():
    """Root system of sl2."""
    return build_root_system("A", 1)


@pytest.fixture
def a2():
    """Root system of sl3."""
    return build_root_system("A", 2)


@pytest.fixture
def sl2():
    """Chevalley basis of sl2: e1, h1, f1."""
    return chevalley_lie_algebra("A", 1)


@pytest.fixture
def sl3():
    """Chevalley basis of sl3."""
    return chevalley_lie_algebra("A", 2)
