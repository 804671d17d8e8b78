import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quantcurves.errors import (InconsistentGenusError, NonConvexError, NonTemperedError,
                                OriginNotInteriorError)
from quantcurves.families import (CurveFamily, family_gg, family_mn, get_family,
                                  tempered_family)
from quantcurves.lattice import (LatticePolygon, LaurentPolynomial, classify_points,
                                 constant_term_power, constant_term_power_naive,
                                 constant_terms_up_to, is_reflexive, unimodular_equivalence)


def brute_force_counts(vertices):
    """Independent lattice-point enumeration over the bounding box."""
    import itertools
    poly = LatticePolygon(vertices)
    xs = [v[0] for v in poly.vertices]
    ys = [v[1] for v in poly.vertices]
    interior = boundary = 0
    n = len(poly.vertices)

    def side(p, a, b):
        return (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])

    for x, y in itertools.product(range(min(xs), max(xs) + 1), range(min(ys), max(ys) + 1)):
        sides = [side((x, y), poly.vertices[i], poly.vertices[(i + 1) % n]) for i in range(n)]
        if all(s > 0 for s in sides):
            interior += 1
        elif all(s >= 0 for s in sides):
            boundary += 1
    return interior, boundary


P2 = [(1, 0), (0, 1), (-1, -1)]
DIAMOND = [(1, 0), (0, 1), (-1, 0), (0, -1)]
TRI22 = [(1, 0), (0, 1), (-2, -2)]


class TestClassifyPoints:
    def test_p2_triangle(self):
        interior, boundary, g, r, r_polar = classify_points(LatticePolygon(P2))
        assert (g, r, r_polar) == (1, 3, 9)
        assert set(interior) == {(0, 0)}

    def test_diamond(self):
        _, _, g, r, r_polar = classify_points(LatticePolygon(DIAMOND))
        assert (g, r, r_polar) == (1, 4, 8)

    def test_genus_two_quotient_triangle(self):
        _, _, g, r, r_polar = classify_points(LatticePolygon(TRI22))
        assert (g, r) == (2, 3)
        assert r_polar is None  # not reflexive

    @pytest.mark.parametrize("verts", [P2, DIAMOND, TRI22,
                                       [(1, 0), (0, 1), (-3, -1)],
                                       [(1, 0), (0, 1), (-1, -1), (0, -1)],
                                       [(2, 1), (-1, 1), (-1, -1), (1, -1)]])
    def test_against_brute_force(self, verts):
        poly = LatticePolygon(verts)
        bi, bb = brute_force_counts(verts)
        assert (poly.g, poly.r) == (bi, bb)
        assert poly.pick_check()


class TestReflexive:
    def test_examples(self):
        assert is_reflexive(LatticePolygon(P2))
        assert not is_reflexive(LatticePolygon(TRI22))
        assert is_reflexive(LatticePolygon([(1, 1), (-1, 1), (-1, -1), (1, -1)]))

    def test_polar_involution(self):
        for fid in ("local_p2", "local_p1xp1", "local_f1", "local_f2"):
            poly = get_family(fid).polygon
            assert poly.polar().polar() == poly

    def test_r_plus_r_polar_is_twelve(self):
        for fid in ("local_p2", "local_p1xp1", "local_f1", "local_f2"):
            poly = get_family(fid).polygon
            assert poly.r + poly.polar().r == 12


class TestValidation:
    def test_non_convex(self):
        with pytest.raises(NonConvexError):
            LatticePolygon([(1, 0), (0, 1), (1, 1), (-1, -1)])

    def test_collinear_vertex(self):
        with pytest.raises(NonConvexError):
            LatticePolygon([(1, 0), (0, 1), (-1, 0), (0, -1), (1, -1), (1, 0)])

    def test_origin_not_interior(self):
        with pytest.raises(OriginNotInteriorError):
            LatticePolygon([(1, 1), (2, 1), (1, 2)])

    def test_canonical_rotation(self):
        a = LatticePolygon([(1, 0), (0, 1), (-1, -1)])
        b = LatticePolygon([(0, 1), (-1, -1), (1, 0)])
        c = LatticePolygon([(-1, -1), (0, 1), (1, 0)])  # clockwise input
        assert a == b == c
        assert hash(a) == hash(b)


class TestEdgePolynomials:
    def test_p2_all_length_one(self):
        fam = get_family("local_p2")
        assert all(e.coeffs == (1, 1) for e in fam.edge_polynomials())
        assert fam.is_tempered()

    def test_f22_tempered(self):
        assert family_mn(2, 2).is_tempered()

    def test_untempered(self):
        poly = LatticePolygon(P2)
        fam = CurveFamily(poly, {(1, 0): 1, (0, 1): 2, (-1, -1): 1})
        assert not fam.is_tempered()
        with pytest.raises(NonTemperedError):
            fam.require_tempered()


class TestFamilyMN:
    def test_11_is_plain_triangle(self):
        fam = family_mn(1, 1)
        assert fam.phi == LaurentPolynomial({(1, 0): 1, (0, 1): 1, (-1, -1): 1})
        assert fam.interior_points == ((0, 0),)

    def test_gg_shape(self):
        fam = family_gg(3)
        assert fam.interior_points == ((0, 0), (-1, -1), (-2, -2))
        assert fam.phi == LaurentPolynomial({(1, 0): 1, (0, 1): 1, (-3, -3): 1})

    def test_31_interior_order(self):
        fam = family_mn(3, 1)
        assert fam.interior_points == ((0, 0), (-1, 0))
        assert fam.phi == LaurentPolynomial({(1, 0): 1, (0, 1): 1, (-3, -1): 1})

    def test_12_has_binomial_mass_term(self):
        fam = family_mn(1, 2)
        assert fam.boundary_coeffs[(0, -1)] == 2

    def test_inconsistent_genus(self):
        with pytest.raises(InconsistentGenusError):
            family_mn(2, 2, g=1)

    def test_local_f2_is_21_family(self):
        assert get_family("local_f2").phi == family_mn(2, 1).phi


class TestConstantTerms:
    def test_p2_examples(self):
        phi = get_family("local_p2").phi
        assert constant_term_power(phi, 3) == 6
        assert constant_term_power(phi, 4) == 0

    def test_square_example(self):
        phi = get_family("local_p1xp1").phi
        assert constant_term_power(phi, 4) == 36

    def test_multinomial_oracle_p2(self):
        phi = get_family("local_p2").phi
        for m in range(5):
            assert constant_term_power(phi, 3 * m) == math.factorial(3 * m) // math.factorial(m) ** 3

    def test_binomial_oracle_square(self):
        phi = get_family("local_p1xp1").phi
        for m in range(6):
            assert constant_term_power(phi, 2 * m) == math.comb(2 * m, m) ** 2

    @pytest.mark.parametrize("fid", ["local_p2", "local_p1xp1", "local_f1", "local_f2"])
    def test_naive_oracle_agreement(self, fid):
        fam = get_family(fid)
        cts = constant_terms_up_to(fam.phi, 8, fam.polygon)
        for k in range(9):
            assert cts[k] == constant_term_power_naive(fam.phi, k)

    def test_semigroup_vanishing_p2(self):
        phi = get_family("local_p2").phi
        cts = constant_terms_up_to(phi, 10)
        assert all(cts[k] == 0 for k in range(1, 11) if k % 3)


class TestUnimodular:
    def test_self_equivalence(self):
        p = LatticePolygon(P2)
        assert unimodular_equivalence(p, p) is not None

    def test_sheared_image(self):
        p = LatticePolygon(P2)
        sheared = LatticePolygon([(x + y, y) for x, y in P2])
        M = unimodular_equivalence(p, sheared)
        assert M is not None
        a, b = M
        assert a[0] * b[1] - a[1] * b[0] in (1, -1)

    def test_inequivalent(self):
        assert unimodular_equivalence(LatticePolygon(P2), LatticePolygon(DIAMOND)) is None


class TestJSONRoundTrip:
    def test_round_trip(self):
        fam = get_family("local_f2")
        fam2 = CurveFamily.from_json(fam.to_json())
        assert fam2.polygon == fam.polygon
        assert fam2.boundary_coeffs == fam.boundary_coeffs


@given(st.integers(min_value=1, max_value=4), st.integers(min_value=1, max_value=4))
@settings(max_examples=12, deadline=None)
def test_family_mn_always_tempered(m, n):
    fam = family_mn(m, n)
    assert fam.is_tempered()
    assert fam.polygon.pick_check()


@given(st.integers(min_value=0, max_value=6))
@settings(max_examples=7, deadline=None)
def test_constant_term_pruning_matches_naive(k):
    phi = tempered_family(LatticePolygon([(1, 0), (0, 1), (-1, -1), (0, -1)])).phi
    assert constant_term_power(phi, k) == constant_term_power_naive(phi, k)
