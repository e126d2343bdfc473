"""Tests for the affine Weyl group and its alcove geometry."""

from fractions import Fraction
from math import lcm

import pytest
from cdsw_algebra.affweyl import (
    AlcovePosition,
    aff2_to_json,
    affine_weight,
    alcove_barycenter,
    alcove_position,
    alcove_vertices,
    check_alcove_geometry,
    check_all_rho_identities,
    check_d_degree_vanishing,
    check_rho_identities,
    d_degree,
    enumerate_aff2,
    from_word,
    identity,
    inverse_weight_action,
    inversion_set,
    length_series,
    parse_word,
    rho_defect,
    rho_hat,
    weight_action,
)
from cdsw_algebra.cartan import build_root_system
from cdsw_shared.errors import InternalError, UsageError

SMALL_TYPES = [
    ("A", 1),
    ("A", 2),
    ("A", 3),
    ("B", 2),
    ("B", 3),
    ("C", 3),
    ("D", 4),
    ("G", 2),
    ("F", 4),
]


class TestAlcoves:
    """Test suite for the fundamental alcove."""

    def test_a1_vertices(self, a1):
        """C is the segment from 0 to alpha^vee / 2."""
        assert alcove_vertices(a1) == ((Fraction(0),), (Fraction(1, 2),))
        assert alcove_barycenter(a1) == (Fraction(1, 4),)

    def test_identity_inside(self, a2):
        """The identity is dominant and inside 2C."""
        assert alcove_position(identity(a2)) == AlcovePosition(dominant=True, in_double=True)

    def test_finite_reflection_leaves_dominant_chamber(self, a1):
        """s_1 C lies on the negative side."""
        assert not alcove_position(from_word(a1, [1])).dominant

    def test_dominant_but_outside_double(self, a1):
        """(s_0 s_1) C is dominant but outside 2C."""
        position = alcove_position(from_word(a1, [1, 0]))

        assert position == AlcovePosition(dominant=True, in_double=False)

    def test_s0_inside_double(self, a1):
        """s_0 C is the second alcove of 2C."""
        assert alcove_position(from_word(a1, [0])).in_double


class TestEnumeration:
    """Test suite for Aff'_2(W)."""

    def test_a1(self, a1):
        """Aff'_2 of sl2 is {e, s_0}."""
        elements = enumerate_aff2(a1)

        assert [e.word for e in elements] == [(), (0,)]
        assert [e.length for e in elements] == [0, 1]

    def test_a2(self, a2):
        """Aff'_2 of sl3 has lengths 0, 1, 2, 2."""
        elements = enumerate_aff2(a2)

        assert {e.word for e in elements} == {(), (0,), (1, 0), (2, 0)}
        assert length_series(elements) == [1, 1, 2]

    @pytest.mark.parametrize("type_letter,rank", SMALL_TYPES)
    def test_count(self, type_letter, rank):
        """#Aff'_2(W) = 2^l."""
        assert len(enumerate_aff2(build_root_system(type_letter, rank))) == 2**rank

    @pytest.mark.parametrize("rank", [6, 7, pytest.param(8, marks=pytest.mark.slow)])
    def test_count_e(self, rank):
        """#Aff'_2(W) = 2^l for E6, E7 and E8 (256)."""
        assert len(enumerate_aff2(build_root_system("E", rank))) == 2**rank

    @pytest.mark.parametrize("type_letter,rank", SMALL_TYPES)
    def test_all_inside_double(self, type_letter, rank):
        """Every enumerated alcove lies in 2C and its word is consistent."""
        rs = build_root_system(type_letter, rank)

        for e in enumerate_aff2(rs):
            assert alcove_position(e).in_double
            assert from_word(rs, e.word).key == e.key

    @pytest.mark.parametrize("type_letter,rank", [("B", 3), ("G", 2), ("F", 4)])
    def test_scaled_vertex_images(self, type_letter, rank):
        """Integer vertex images agree with the rational images of the vertices of C."""
        rs = build_root_system(type_letter, rank)
        vertices = alcove_vertices(rs)
        denom = lcm(*(c.denominator for v in vertices for c in v))

        for e in enumerate_aff2(rs):
            scaled = [[Fraction(c, denom) for c in image] for image in e.scaled_vertex_images]
            assert scaled == [list(e.apply_inverse(v)) for v in vertices]

    def test_walk_rejects_outside_neighbours(self, a2):
        """The neighbours of Aff'_2 left out by the walk lie outside 2C."""
        elements = enumerate_aff2(a2)
        keys = {e.key for e in elements}

        for e in elements:
            for i in range(a2.rank + 1):
                neighbour = from_word(a2, (i,) + e.word)
                assert alcove_position(neighbour).in_double == (neighbour.key in keys)

    def test_export(self, a1):
        """The JSON export lists words, inversions and vertices."""
        data = aff2_to_json(a1, enumerate_aff2(a1))

        assert data["count"] == 2
        assert data["elements"][1]["inversions"] == [[[-1], 1]]
        assert data["elements"][1]["vertices"] == [["1"], ["1/2"]]


class TestWords:
    """Test suite for words and inversion sets."""

    def test_letter_out_of_range(self, a1):
        """Letters must be 0..l."""
        with pytest.raises(UsageError):
            parse_word(a1, [2])

    def test_identity_inversions(self, a2):
        """The identity inverts nothing."""
        assert inversion_set(identity(a2)) == []

    def test_s0_inversions(self, a1):
        """s_0 inverts delta - theta."""
        assert inversion_set(from_word(a1, [0])) == [((-1,), 1)]

    def test_non_reduced_word(self, a1):
        """s_0 s_0 is not reduced."""
        with pytest.raises(InternalError):
            inversion_set(from_word(a1, [0, 0]))

    def test_length_counts_hyperplanes(self, a2):
        """The length of a non-reduced word is that of its element."""
        assert from_word(a2, [1, 1]).length == 0
        assert from_word(a2, [0, 1, 2]).length == 3

    def test_times(self, a2):
        """w s_i agrees with the word appended by s_i."""
        w = from_word(a2, [0]).times(1)

        assert w.key == from_word(a2, [0, 1]).key
        assert w.length == 2


class TestWeights:
    """Test suite for the affine weight action."""

    def test_rho_hat_takes_one_on_coroots(self, a2):
        """rho_hat(alpha_i^vee) = 1 for i = 0..l."""
        rho = rho_hat(a2)

        assert [rho.coroot_value(a2, i) for i in range(3)] == [1, 1, 1]

    def test_identity_fixes_weights(self, a2):
        """e(lambda) = lambda."""
        weight = affine_weight((1, 0), 2, 5)

        assert weight_action(identity(a2), weight) == weight

    def test_inverse_action(self, a2):
        """w^-1(w(lambda)) = lambda."""
        w = from_word(a2, [0, 1, 2])
        weight = affine_weight((Fraction(2, 3), Fraction(1, 3)), 1, 0)

        assert inverse_weight_action(w, weight_action(w, weight)) == weight

    def test_fundamental_coordinates(self, a2):
        """The finite part can be read in the fundamental basis."""
        assert rho_hat(a2).fundamental_coordinates(a2) == (1, 1)

    def test_rho_defect_of_s0(self, a1):
        """rho_hat - s_0 rho_hat = delta - theta."""
        defect = rho_defect(from_word(a1, [0]))

        assert defect.finite == (-1,)
        assert defect.delta == 1
        assert defect.level == 0

    def test_rho_identities_identity(self, a2):
        """u = e gives 0 = l(e) and no finite part."""
        assert check_rho_identities(identity(a2)) == {"u": [], "length": 0, "finite": [0, 0]}

    @pytest.mark.parametrize("type_letter,rank", SMALL_TYPES)
    def test_rho_identities(self, type_letter, rank):
        """delta coefficient l(u) and integral finite part on Aff'_2(W)."""
        elements = enumerate_aff2(build_root_system(type_letter, rank))

        assert check_all_rho_identities(elements) == {"checked": 2**rank}


class TestDDegree:
    """Test suite for d^w_{u,v}."""

    def test_trivial(self, a2):
        """u = v = w = e gives 0."""
        e = identity(a2)

        assert d_degree(e, e, e) == 0

    def test_cancellation(self, a2):
        """u = w = s_0, v = e gives 0."""
        s0 = from_word(a2, [0])

        assert d_degree(s0, identity(a2), s0) == 0

    def test_nonzero(self, a2):
        """A length-breaking triple has nonzero degree."""
        s0 = from_word(a2, [0])

        assert d_degree(s0, s0, identity(a2)) == -2

    def test_rho_shift_is_irrelevant(self, a2):
        """Adding a multiple of delta to rho_hat does not change the degree."""
        u, v, w = (from_word(a2, word) for word in ([0, 1], [2], [0, 2, 1]))

        assert d_degree(u, v, w, rho_shift=5) == d_degree(u, v, w)

    def test_mixed_root_systems(self, a1, a2):
        """Elements must share a root system."""
        with pytest.raises(UsageError):
            d_degree(identity(a1), identity(a2), identity(a2))

    @pytest.mark.parametrize("type_letter,rank", SMALL_TYPES)
    def test_vanishing_on_length_additive_triples(self, type_letter, rank):
        """d^w_{u,v} = 0 whenever l(w) = l(u) + l(v) inside Aff'_2(W)."""
        elements = enumerate_aff2(build_root_system(type_letter, rank))

        assert check_d_degree_vanishing(elements)["triples"] > 0


class TestGeometry:
    """Test suite for the alcove-geometry check."""

    @pytest.mark.parametrize("type_letter,rank", SMALL_TYPES)
    def test_geometry(self, type_letter, rank):
        """Lengths agree and the maps are volume-preserving isometries."""
        elements = enumerate_aff2(build_root_system(type_letter, rank))

        assert check_alcove_geometry(elements)["checked"] == 2**rank
