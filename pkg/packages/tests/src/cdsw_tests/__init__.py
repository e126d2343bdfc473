"""Tests for the cdsw toolkit."""
