"""Tests for abelian ideals and the correspondence with Aff'_2(W)."""

import pytest
from cdsw_algebra.abelian import (
    AbelianIdeal,
    abelian_to_json,
    check_ideal_axioms,
    check_weight_identity,
    dimension_series,
    enumerate_abelian_ideals,
    ideal_of,
    xi_o_and_bounds,
    zeta,
    zeta_map,
)
from cdsw_algebra.affweyl import enumerate_aff2, identity
from cdsw_algebra.cartan import build_root_system
from cdsw_shared.errors import CheckFailure

TYPES = [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 3), ("D", 4), ("G", 2), ("F", 4)]


class TestEnumeration:
    """Test suite for enumerate_abelian_ideals."""

    def test_a1(self, a1):
        """sl2: the empty ideal and the root space of theta."""
        assert enumerate_abelian_ideals(a1) == [AbelianIdeal(()), AbelianIdeal((0,))]

    def test_a2(self, a2):
        """sl3: {}, {theta}, {theta, alpha_1}, {theta, alpha_2}."""
        ideals = enumerate_abelian_ideals(a2)

        assert [I.root_vectors(a2) for I in ideals] == [
            [],
            [(1, 1)],
            [(1, 0), (1, 1)],
            [(0, 1), (1, 1)],
        ]

    @pytest.mark.parametrize("type_letter,rank", TYPES)
    def test_axioms_and_count(self, type_letter, rank):
        """Every enumerated set is an abelian ideal and there are 2^l."""
        rs = build_root_system(type_letter, rank)

        assert check_ideal_axioms(rs, enumerate_abelian_ideals(rs))["count"] == 2**rank

    @pytest.mark.slow
    def test_e8(self):
        """E8 has 256 abelian ideals."""
        assert len(enumerate_abelian_ideals(build_root_system("E", 8))) == 256

    def test_predicates(self, a2):
        """Sets missing theta are not ideals; the whole nilradical is not abelian."""
        assert not AbelianIdeal((0,)).is_ideal(a2)
        assert AbelianIdeal((0, 1, 2)).is_ideal(a2)
        assert not AbelianIdeal((0, 1, 2)).is_abelian(a2)

    def test_wrong_count_fails(self, a2):
        """A missing ideal is reported."""
        with pytest.raises(CheckFailure):
            check_ideal_axioms(a2, enumerate_abelian_ideals(a2)[:3])

    def test_dimension_series(self, a2):
        """1 + q + 2q^2 for sl3."""
        assert dimension_series(enumerate_abelian_ideals(a2)) == [1, 1, 2]

    def test_weight_sum(self, a2):
        """The ideal {theta, alpha_1} has weight 2 alpha_1 + alpha_2."""
        assert AbelianIdeal((0, 2)).weight_sum(a2) == (2, 1)


class TestZeta:
    """Test suite for the ideal -> element correspondence."""

    def test_empty_ideal_goes_to_identity(self, a2):
        """The empty ideal matches the identity."""
        assert ideal_of(identity(a2)) == frozenset()
        assert zeta(AbelianIdeal(()), a2).word == ()

    def test_a1(self, a1):
        """{alpha_1} matches s_0."""
        assert zeta(AbelianIdeal((0,)), a1).word == (0,)

    def test_a2(self, a2):
        """{theta, alpha_2} matches s_1 s_0 and {theta, alpha_1} matches s_2 s_0."""
        mapping = zeta_map(a2)

        assert mapping[AbelianIdeal((1, 2))].word == (1, 0)
        assert mapping[AbelianIdeal((0, 2))].word == (2, 0)

    @pytest.mark.parametrize("type_letter,rank", TYPES)
    def test_lengths_match_dimensions(self, type_letter, rank):
        """dim I = l(zeta(I)) and zeta is a bijection."""
        rs = build_root_system(type_letter, rank)
        mapping = zeta_map(rs)

        assert all(w.length == I.dim for I, w in mapping.items())
        assert len({w.key for w in mapping.values()}) == 2**rank

    def test_missing_elements_fail(self, a2):
        """An incomplete list of elements leaves ideals unmatched."""
        with pytest.raises(CheckFailure):
            zeta_map(a2, elements=enumerate_aff2(a2)[:2])

    @pytest.mark.parametrize("type_letter,rank", TYPES)
    def test_weight_identity(self, type_letter, rank):
        """rho_hat - u^-1 rho_hat = |I| delta - sum I for u = zeta(I)."""
        rs = build_root_system(type_letter, rank)

        assert check_weight_identity(rs, zeta_map(rs)) == {"checked": 2**rank}


class TestXiBounds:
    """Test suite for the ideals non-orthogonal to theta."""

    def test_a2(self, a2):
        """Every root of sl3 pairs nontrivially with theta, so all four ideals count."""
        bounds = xi_o_and_bounds(a2, mapping=zeta_map(a2))

        assert len(bounds.xi_o) == 4
        assert bounds.max_dim == 2
        assert bounds.dim_z == 2
        assert bounds.dual_coxeter_number == 3

    def test_b2_excludes_orthogonal_roots(self):
        """In B2 the long simple root is orthogonal to theta."""
        rs = build_root_system("B", 2)
        bounds = xi_o_and_bounds(rs)

        assert all(0 not in I.roots for I in bounds.xi_o)
        assert bounds.max_dim <= rs.dual_coxeter_number - 1

    @pytest.mark.parametrize("type_letter,rank", TYPES)
    def test_bound(self, type_letter, rank):
        """dim I <= h - 1 on the filtered set."""
        rs = build_root_system(type_letter, rank)

        assert xi_o_and_bounds(rs).max_dim <= rs.dual_coxeter_number - 1

    def test_export(self, a2):
        """The JSON export carries zeta words and the summary."""
        mapping = zeta_map(a2)
        ideals = enumerate_abelian_ideals(a2)
        data = abelian_to_json(a2, ideals, mapping, xi_o_and_bounds(a2, ideals, mapping))

        assert data["count"] == 4
        assert data["ideals"][1]["zeta"] == [0]
        assert data["summary"]["h"] == 3
