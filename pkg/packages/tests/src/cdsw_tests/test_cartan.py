"""Tests for root systems."""

from fractions import Fraction

import pytest
from cdsw_algebra.cartan import build_root_system, cartan_matrix, validate_type
from cdsw_shared.constants import DUAL_COXETER_TABLE
from cdsw_shared.errors import UsageError

TYPES = [
    ("A", 1),
    ("A", 2),
    ("A", 4),
    ("B", 2),
    ("B", 3),
    ("C", 2),
    ("C", 3),
    ("D", 4),
    ("D", 5),
    ("E", 6),
    ("E", 7),
    ("E", 8),
    ("F", 4),
    ("G", 2),
]


class TestValidateType:
    """Test suite for type/rank validation."""

    @pytest.mark.parametrize("pair", [("A", 0), ("B", 1), ("D", 3), ("E", 9), ("F", 3), ("H", 2)])
    def test_invalid_pairs(self, pair):
        """Pairs outside the classification are usage errors."""
        with pytest.raises(UsageError):
            validate_type(*pair)

    def test_lowercase_letter(self):
        """Type letters are case-insensitive."""
        assert validate_type("e", 8) == ("E", 8)


class TestCartanMatrix:
    """Test suite for the Bourbaki Cartan matrices."""

    def test_c_has_long_last_root(self):
        """In C the last simple root is long."""
        rs = build_root_system("C", 3)

        assert cartan_matrix("C", 3)[1][2] == -2
        assert rs.root_lengths == (Fraction(1), Fraction(1), Fraction(2))

    def test_b_has_short_last_root(self):
        """In B the last simple root is short."""
        rs = build_root_system("B", 3)

        assert cartan_matrix("B", 3)[2][1] == -2
        assert rs.root_lengths == (Fraction(2), Fraction(2), Fraction(1))

    def test_g2(self):
        """G2 has the triple bond from the short root."""
        assert cartan_matrix("G", 2) == ((2, -3), (-1, 2))


class TestRootSystem:
    """Test suite for RootSystem."""

    def test_a1(self, a1):
        """sl2 has one positive root, theta = alpha_1, h = 2."""
        assert a1.positive_roots == ((1,),)
        assert a1.highest_root == (1,)
        assert a1.dual_coxeter_number == 2

    def test_a2(self, a2):
        """sl3 has three positive roots and marks (1, 1)."""
        assert set(a2.positive_roots) == {(1, 0), (0, 1), (1, 1)}
        assert a2.marks == (1, 1)

    def test_root_order(self, a2):
        """Roots go by height, then by descending coordinates."""
        assert a2.positive_roots == ((1, 0), (0, 1), (1, 1))
        assert build_root_system("B", 2).positive_roots == ((1, 0), (0, 1), (1, 1), (1, 2))

    @pytest.mark.parametrize("type_letter,rank", TYPES)
    def test_dual_coxeter_matches_table(self, type_letter, rank):
        """h = <rho, theta^vee> + 1 agrees with the tabulated value."""
        rs = build_root_system(type_letter, rank)

        assert rs.dual_coxeter_number == DUAL_COXETER_TABLE[type_letter](rank)

    @pytest.mark.parametrize("type_letter,rank", TYPES)
    def test_structural_invariants(self, type_letter, rank):
        """(theta, theta) = 2, exponents and reflections check out."""
        rs = build_root_system(type_letter, rank)
        rs.validate()

        assert rs.norm2(rs.highest_root) == 2
        assert sum(rs.exponents) == len(rs.positive_roots)

    def test_named_values(self):
        """A few tabulated values."""
        assert build_root_system("E", 8).dual_coxeter_number == 30
        assert build_root_system("B", 3).dual_coxeter_number == 5
        assert build_root_system("G", 2).dual_coxeter_number == 4
        assert len(build_root_system("E", 8).positive_roots) == 120

    def test_exponents(self, a1, a2):
        """Exponents are the conjugate partition of the height counts."""
        assert a1.exponents == [1]
        assert a2.exponents == [1, 2]
        assert build_root_system("G", 2).exponents == [1, 5]
        assert build_root_system("E", 8).exponents == [1, 7, 11, 13, 17, 19, 23, 29]

    def test_invariant_degrees(self, a2):
        """Degrees are exponents plus one."""
        assert a2.invariant_degrees == [2, 3]

    def test_weyl_dim(self, a1, a2):
        """Weyl dimension formula."""
        assert a1.weyl_dim((1,)) == 3
        assert a2.weyl_dim((1, 1)) == 8
        assert a2.weyl_dim((0, 0)) == 1
        assert a2.weyl_dim((Fraction(2, 3), Fraction(1, 3))) == 3

    def test_weyl_dim_rejects_non_dominant(self, a2):
        """Only dominant integral weights have a Weyl dimension."""
        with pytest.raises(UsageError):
            a2.weyl_dim((1, 0))

    def test_comarks(self):
        """Comarks of theta^vee in B3 differ from the marks."""
        rs = build_root_system("B", 3)

        assert rs.marks == (1, 2, 2)
        assert rs.comarks == (1, 2, 1)

    def test_to_json(self, a2):
        """The JSON export carries the root data."""
        data = a2.to_json()

        assert data["dual_coxeter_number"] == 3
        assert data["rho"] == ["1", "1"]
        assert data["positive_roots"] == [[1, 0], [0, 1], [1, 1]]
