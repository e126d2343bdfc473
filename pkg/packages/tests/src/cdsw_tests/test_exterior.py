"""Tests for the bigraded exterior algebra."""

import random
from fractions import Fraction

import pytest
from cdsw_algebra.chevalley import chevalley_lie_algebra
from cdsw_algebra.exterior import ExtElement, ExteriorAlgebra, component_dimension, wedge_sign
from cdsw_shared.errors import UsageError

# sl2 slots: copy 1 uses bits 0-2 (e, h, f), copy 2 bits 3-5
E1, H1, F1, E2, H2, F2 = (1 << k for k in range(6))


@pytest.fixture
def ext(sl2):
    return ExteriorAlgebra(sl2)


class TestProducts:
    """Test suite for the wedge product."""

    def test_overlapping_masks_vanish(self, ext):
        """x ^ x = 0."""
        x = ext.vector(1, {0: Fraction(1)})

        assert not ext.wedge(x, x)

    def test_anticommutation(self, ext):
        """Degree-one vectors anticommute."""
        e = ext.vector(1, {0: Fraction(1)})
        f = ext.vector(2, {2: Fraction(1)})

        assert ext.wedge(e, f) == -ext.wedge(f, e)

    def test_wedge_sign(self):
        """Moving one slot past two others is even."""
        assert wedge_sign(0b100, 0b011) == 1
        assert wedge_sign(0b010, 0b001) == -1

    def test_power(self, ext):
        """The zeroth power is the unit."""
        s = ext.build_S()

        assert ext.power(s, 0) == ext.one()
        assert ext.power(s, 1) == s

    def test_bidegree(self, ext):
        """Homogeneous elements know their bidegree."""
        assert ext.build_S().bidegree == (1, 1)
        assert (ext.one() + ext.build_S()).bidegree is None


class TestEmbeddings:
    """Test suite for c_1, c_2, c_3 and S."""

    def test_c1_of_h(self, ext):
        """c_1(h) = 4 e ^ f in the first copy."""
        assert ext.c_embed(1, {1: Fraction(1)}).terms == {E1 | F1: 4}

    def test_c2_of_h(self, ext):
        """c_2 is the same map into the second copy."""
        assert ext.c_embed(2, {1: Fraction(1)}).terms == {E2 | F2: 4}

    @pytest.mark.parametrize("copy", [1, 2, 3])
    def test_zero(self, ext, copy):
        """c_i(0) = 0."""
        assert not ext.c_embed(copy, {})

    def test_bad_copy(self, ext):
        """Only copies 1, 2, 3 exist."""
        with pytest.raises(UsageError):
            ext.c_embed(4, {0: Fraction(1)})

    def test_c3_has_bidegree_one_one(self, ext):
        """c_3 lands across the copies."""
        assert ext.c_embed(3, {0: Fraction(1)}).bidegree == (1, 1)

    def test_S(self, ext):
        """S = e(1) ^ f(2) + 1/2 h(1) ^ h(2) + f(1) ^ e(2)."""
        assert ext.build_S().terms == {E1 | F2: 1, H1 | H2: Fraction(1, 2), F1 | E2: 1}

    def test_S_text(self, ext):
        """Stable text form ordered by monomial."""
        assert ext.to_text(ext.build_S()) == (
            "+1·f1(1)^e1(2) +1/2·h1(1)^h1(2) +1·e1(1)^f1(2)"
        )

    def test_S_is_independent_of_the_frame(self, sl3):
        """Any dual-basis pair gives the same S."""
        ext = ExteriorAlgebra(sl3)
        frame = ext.random_frame(random.Random(7), spread=1)

        assert ext.build_S(frame) == ext.build_S()

    def test_c1_is_independent_of_the_frame(self, ext):
        """c_1 does not depend on the dual-basis pair."""
        frame = ext.random_frame(random.Random(3))

        for i in range(3):
            assert ext.c_embed(1, {i: Fraction(1)}, frame) == ext.c_embed(1, {i: Fraction(1)})


class TestAction:
    """Test suite for the diagonal adjoint action."""

    @pytest.mark.parametrize("pair", [("A", 1), ("A", 2), ("B", 2)])
    def test_S_is_invariant(self, pair):
        """x . S = 0 for every basis element x."""
        lie = chevalley_lie_algebra(*pair)
        ext = ExteriorAlgebra(lie)
        s = ext.build_S()

        for i in range(lie.dim):
            assert not ext.diag_act({i: Fraction(1)}, s)

    def test_unit_is_invariant(self, ext):
        """x . 1 = 0."""
        assert not ext.diag_act({0: Fraction(1)}, ext.one())

    def test_c1_is_equivariant(self, sl2, ext):
        """x . c_1(y) = c_1([x, y])."""
        for i in range(3):
            for j in range(3):
                x, y = {i: Fraction(1)}, {j: Fraction(1)}
                assert ext.diag_act(x, ext.c_embed(1, y)) == ext.c_embed(1, sl2.bracket(x, y))

    def test_derivation(self, ext):
        """x . (a ^ b) = (x . a) ^ b + a ^ (x . b)."""
        x = {0: Fraction(1)}
        a = ext.vector(1, {2: Fraction(1)})
        b = ext.vector(2, {1: Fraction(1)})

        left = ext.diag_act(x, ext.wedge(a, b))
        right = ext.wedge(ext.diag_act(x, a), b) + ext.wedge(a, ext.diag_act(x, b))
        assert left == right


class TestGrading:
    """Test suite for bidegrees and weights."""

    def test_monomial_count(self, ext):
        """dim R^{p,q} = C(n,p) C(n,q)."""
        assert len(ext.monomials(1, 2)) == component_dimension(3, 1, 2) == 9

    def test_weight_blocks(self, ext):
        """The weight-zero block of R^{1,1} is e^f, h^h, f^e."""
        assert ext.monomials(1, 1, (0,)) == sorted([E1 | F2, H1 | H2, F1 | E2])

    def test_component_weights(self, ext):
        """Weights of R^{1,0} are the roots and zero."""
        assert ext.component_weights(1, 0) == [(-1,), (0,), (1,)]

    def test_too_many_slots(self):
        """Algebras wider than one machine word are refused."""
        with pytest.raises(UsageError):
            ExteriorAlgebra(chevalley_lie_algebra("A", 8))

    def test_element_drops_zeros(self):
        """Zero coefficients are not stored."""
        assert len(ExtElement(3, {1: Fraction(0), 2: Fraction(1)})) == 1
