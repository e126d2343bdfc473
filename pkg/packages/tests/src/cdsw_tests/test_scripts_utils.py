"""Tests for utility script functions."""

import os

import pytest
from cdsw_scripts.utils import (
    get_cache_dir,
    get_log_level,
    get_max_block_dim,
    get_max_total_degree,
    get_seed,
    load_env,
    parse_word,
)
from cdsw_shared.errors import UsageError


class TestScriptUtils:
    """Test suite for script utilities."""

    def test_get_cache_dir_default(self):
        """Test getting the default cache root."""
        assert get_cache_dir() == "cache"

    def test_get_cache_dir_from_option(self):
        """Test that the option is used without the env var."""
        assert get_cache_dir("/tmp/here") == "/tmp/here"

    def test_get_cache_dir_env_wins(self, monkeypatch):
        """Test that CDSW_CACHE_DIR overrides the option."""
        monkeypatch.setenv("CDSW_CACHE_DIR", "/tmp/env")

        assert get_cache_dir("/tmp/here") == "/tmp/env"

    def test_get_max_block_dim(self, monkeypatch):
        """Test getting the block budget from the environment."""
        assert get_max_block_dim() == 4000
        monkeypatch.setenv("CDSW_MAX_BLOCK_DIM", "12")

        assert get_max_block_dim() == 12

    def test_bad_integer(self, monkeypatch):
        """Test that a non-integer setting is a usage error."""
        monkeypatch.setenv("CDSW_MAX_BLOCK_DIM", "lots")

        with pytest.raises(UsageError):
            get_max_block_dim()

    @pytest.mark.parametrize("type_letter,rank,expected", [("A", 1, 4), ("A", 2, 6), ("B", 2, 2)])
    def test_get_max_total_degree_default(self, type_letter, rank, expected):
        """Test the per-type default of p + q."""
        assert get_max_total_degree(type_letter, rank) == expected

    def test_get_max_total_degree_from_env(self, monkeypatch):
        """Test getting the degree bound from the environment."""
        monkeypatch.setenv("CDSW_MAX_TOTAL_DEGREE", "3")

        assert get_max_total_degree("A", 2) == 3

    def test_get_log_level_and_seed(self, monkeypatch):
        """Test the logging and sampling defaults."""
        assert get_log_level() == "WARNING"
        assert get_seed() == 0
        monkeypatch.setenv("CDSW_SEED", "9")

        assert get_seed() == 9

    @pytest.mark.parametrize(
        "text,expected",
        [
            (None, []),
            ("", []),
            ("[]", []),
            ("0,2,1", [0, 2, 1]),
            ("[0, 2, 1]", [0, 2, 1]),
            ("0 2 1", [0, 2, 1]),
            ("021", [0, 2, 1]),
            ("10,11", [10, 11]),
        ],
    )
    def test_parse_word(self, text, expected):
        """Test the accepted word spellings."""
        assert parse_word(text) == expected

    @pytest.mark.parametrize("text", ["a,b", "0,-1", "0;1"])
    def test_parse_word_invalid(self, text):
        """Test that malformed words are refused."""
        with pytest.raises(UsageError):
            parse_word(text)

    def test_load_env_with_local_override(self, tmp_path, monkeypatch):
        """Test that .env.local overrides .env."""
        (tmp_path / ".env").write_text("CDSW_SEED=3\nCDSW_LOG_LEVEL=INFO\n")
        (tmp_path / ".env.local").write_text("CDSW_SEED=5\n")
        # register both names so monkeypatch removes them afterwards
        for name in ("CDSW_SEED", "CDSW_LOG_LEVEL"):
            monkeypatch.setenv(name, "")
            monkeypatch.delenv(name)

        load_env(tmp_path / ".env")

        assert os.environ["CDSW_SEED"] == "5"
        assert os.environ["CDSW_LOG_LEVEL"] == "INFO"

    def test_load_env_keeps_existing(self, tmp_path, monkeypatch):
        """Test that the base file does not override the environment."""
        (tmp_path / ".env").write_text("CDSW_SEED=3\n")
        monkeypatch.setenv("CDSW_SEED", "7")

        load_env(tmp_path / ".env")

        assert get_seed() == 7

    def test_load_env_missing_file(self, tmp_path):
        """Test that a missing file is not an error."""
        load_env(tmp_path / "absent.env")
