"""Tests for the exact rational codec."""

from fractions import Fraction

import pytest
import sympy
from cdsw_shared.rational import format_rational, format_vector, is_integral, to_fraction


class TestRational:
    """Test suite for rational conversion and formatting."""

    def test_to_fraction_from_string(self):
        """'p/q' strings parse exactly."""
        assert to_fraction("3/4") == Fraction(3, 4)

    def test_to_fraction_from_sympy(self):
        """sympy rationals convert exactly."""
        assert to_fraction(sympy.Rational(-5, 6)) == Fraction(-5, 6)

    def test_floats_rejected(self):
        """Floats are never accepted."""
        with pytest.raises(TypeError):
            to_fraction(0.5)

    def test_booleans_rejected(self):
        """Booleans are not numbers here."""
        with pytest.raises(TypeError):
            to_fraction(True)

    def test_format(self):
        """Integral values print without a denominator."""
        assert format_rational(Fraction(4, 2)) == "2"
        assert format_rational(Fraction(-1, 2)) == "-1/2"
        assert format_vector([1, Fraction(1, 3)]) == ["1", "1/3"]

    def test_is_integral(self):
        """Integrality of a vector."""
        assert is_integral([1, Fraction(4, 2)])
        assert not is_integral([Fraction(1, 2)])
