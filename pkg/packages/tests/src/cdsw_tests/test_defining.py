"""Tests for defining representations and invariant forms."""

from fractions import Fraction

import pytest
from cdsw_algebra.chevalley import chevalley_lie_algebra
from cdsw_algebra.defining import (
    DefiningRepresentation,
    NormalizedForm,
    TracePower,
    check_form_invariance,
    invariant_form,
)
from cdsw_shared.errors import UsageError


class TestDefiningRepresentation:
    """Test suite for the matrix realizations."""

    @pytest.mark.parametrize(
        "type_letter,rank",
        [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 2), ("C", 3), ("D", 4)],
    )
    def test_brackets_preserved(self, type_letter, rank):
        """[rho(x), rho(y)] = rho([x, y]) on every basis pair."""
        DefiningRepresentation(chevalley_lie_algebra(type_letter, rank)).validate()

    @pytest.mark.parametrize(
        "type_letter,rank,size", [("A", 2, 3), ("B", 2, 5), ("C", 2, 4), ("D", 4, 8)]
    )
    def test_size(self, type_letter, rank, size):
        """sl(n+1), so(2n+1), sp(2n), so(2n)."""
        assert DefiningRepresentation(chevalley_lie_algebra(type_letter, rank)).size == size

    def test_exceptional_refused(self):
        """G2 has no matrix realization here."""
        with pytest.raises(UsageError):
            DefiningRepresentation(chevalley_lie_algebra("G", 2))


class TestInvariantForms:
    """Test suite for the normalized form and trace powers."""

    def test_normalized_form(self, sl2):
        """<e, f> = 1 and <h, h> = 2."""
        form = NormalizedForm(sl2)

        assert form({0: Fraction(1)}, {2: Fraction(1)}) == 1
        assert form({1: Fraction(1)}, {1: Fraction(1)}) == 2

    def test_arity(self, sl2):
        """A degree-2 form takes two arguments."""
        with pytest.raises(UsageError):
            NormalizedForm(sl2)({0: Fraction(1)})

    def test_degree_one_refused(self, sl2):
        """Trace powers start at degree 2."""
        with pytest.raises(UsageError):
            TracePower(sl2, 1)

    def test_builtin_choice(self, sl3):
        """Degree 2 is the normalized form, higher degrees are traces."""
        assert isinstance(invariant_form(sl3, 2), NormalizedForm)
        assert isinstance(invariant_form(sl3, 3), TracePower)

    def test_cubic_trace(self, sl3):
        """tr(h1 h1 h2) = 1 with h1 = diag(1,-1,0), h2 = diag(0,1,-1)."""
        form = TracePower(sl3, 3)
        h1, h2 = ({sl3.cartan_index(i): Fraction(1)} for i in range(2))

        assert form(h1, h1, h2) == 1

    def test_weight_nonzero_vanishes(self, sl3):
        """Products of nonzero total weight are traceless."""
        form = TracePower(sl3, 3)
        e = {sl3.simple_raising(0): Fraction(1)}
        h = {sl3.cartan_index(0): Fraction(1)}

        assert form(e, h, h) == 0

    @pytest.mark.parametrize("type_letter,rank", [("A", 1), ("A", 2), ("B", 2), ("G", 2)])
    def test_normalized_form_invariant(self, type_letter, rank):
        """The normalized form is ad-invariant."""
        result = check_form_invariance(NormalizedForm(chevalley_lie_algebra(type_letter, rank)))

        assert result["degree"] == 2
        assert result["checked"] > 0

    def test_cubic_invariant(self, sl3):
        """The cubic trace on sl3 is ad-invariant."""
        assert check_form_invariance(TracePower(sl3, 3))["degree"] == 3
