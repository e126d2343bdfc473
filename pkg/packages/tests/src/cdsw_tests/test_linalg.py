"""Tests for exact linear algebra."""

from fractions import Fraction

from cdsw_algebra.linalg import clear_denominators, determinant, echelon, inverse, rank


class TestLinalg:
    """Test suite for the DomainMatrix helpers."""

    def test_inverse(self):
        """Exact inverse."""
        assert inverse([[2, 1], [1, 1]]) == [[1, -1], [-1, 2]]

    def test_inverse_rational(self):
        """Inverse of the A2 Cartan matrix."""
        assert inverse([[2, -1], [-1, 2]]) == [
            [Fraction(2, 3), Fraction(1, 3)],
            [Fraction(1, 3), Fraction(2, 3)],
        ]

    def test_determinant(self):
        """Exact determinant."""
        assert determinant([[2, -1], [-1, 2]]) == 3
        assert determinant([]) == 1

    def test_clear_denominators(self):
        """Rows are scaled by the lcm of their denominators."""
        assert clear_denominators({0: Fraction(1, 2), 1: Fraction(1, 3)}) == {0: 3, 1: 2}

    def test_rank(self):
        """Dependent rows do not add to the rank."""
        rows = [{0: 1, 1: 1}, {0: 2, 1: 2}, {1: Fraction(1, 2)}]

        assert rank(rows, 2) == 2
        assert rank([], 4) == 0

    def test_reduce_against_echelon(self):
        """Reduction leaves the part outside the row space on non-pivot columns."""
        form = echelon([{0: 1, 1: 1}], 2)

        assert form.pivots == (0,)
        assert form.reduce({0: 1}) == {1: -1}
        assert form.reduce({0: 3, 1: 3}) == {}
