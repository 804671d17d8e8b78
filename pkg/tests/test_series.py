from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quantcurves.series import MultiSeries, RationalSeries


def geom(order):
    return RationalSeries([1] * (order + 1), order=order)  # 1/(1-x)


class TestArithmetic:
    def test_orders_never_extend(self):
        a = RationalSeries([1, 2, 3], order=2)
        b = RationalSeries([1, 1], order=1)
        assert (a + b).order == 1
        assert (a * b).order == 1

    def test_inverse(self):
        g = geom(8)
        one = g * g.inverse()
        assert one.coeffs[0] == 1 and all(c == 0 for c in one.coeffs[1:])

    def test_exp_log_inverse(self):
        s = RationalSeries([0, 1, Fraction(1, 2), Fraction(-1, 3)], order=6)
        assert s.exp().log() == s.truncate(6)

    def test_exp_requires_zero_constant(self):
        with pytest.raises(ValueError):
            RationalSeries([1, 1], order=1).exp()

    def test_compose_requires_zero_inner(self):
        with pytest.raises(ValueError):
            geom(4).compose(RationalSeries([1, 1], order=4))

    def test_derivative_euler(self):
        s = RationalSeries([5, 4, 3, 2], order=3)
        assert s.euler().coeffs == [Fraction(0), Fraction(4), Fraction(6), Fraction(6)]
        assert s.derivative().coeffs == [Fraction(4), Fraction(6), Fraction(6)]

    def test_reversion_round_trip(self):
        # a(Q(a)) = a exactly at truncation (spec invariant)
        f = RationalSeries([0, 1, -2, 5, Fraction(7, 3), 0, 1], order=10)
        v = f.revert()
        comp = f.compose(v)
        assert comp.coeffs[1] == 1
        assert all(c == 0 for i, c in enumerate(comp.coeffs) if i != 1)

    def test_eval_mp(self):
        s = RationalSeries([1, 1, 1, 1], order=3)
        assert abs(float(s.eval_mp(0.5)) - 1.875) < 1e-15


@given(st.lists(st.integers(min_value=-4, max_value=4), min_size=1, max_size=5),
       st.lists(st.integers(min_value=-4, max_value=4), min_size=1, max_size=5))
@settings(max_examples=40, deadline=None)
def test_mul_commutes(a, b):
    n = 6
    sa = RationalSeries(a, order=n)
    sb = RationalSeries(b, order=n)
    assert sa * sb == sb * sa


@given(st.lists(st.integers(min_value=-3, max_value=3), min_size=2, max_size=5))
@settings(max_examples=30, deadline=None)
def test_log_exp_round_trip(coeffs):
    s = RationalSeries([0] + coeffs, order=6)
    assert s.exp().log() == s.truncate(6)


class TestMultiSeries:
    def test_add_and_lookup(self):
        a = MultiSeries({(1, 0): Fraction(2), (0, 1): Fraction(3)})
        b = MultiSeries({(1, 0): Fraction(-2)})
        c = a + b
        assert c.coefficient((1, 0)) == 0
        assert c.coefficient((0, 1)) == 3
        assert len(c) == 1
