from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ellgen.qseries import (
    DivergentTail,
    HalfQSeries,
    ZeroConstantTerm,
    eta_like_product,
    power_label,
)

ORDER = 8

fractions_st = st.fractions(min_value=-4, max_value=4, max_denominator=6)


def series_st(order=ORDER):
    return st.lists(fractions_st, min_size=0, max_size=order + 1).map(
        lambda cs: HalfQSeries(order, cs)
    )


def S(*coeffs, order=ORDER):
    return HalfQSeries(order, [Fraction(c) for c in coeffs])


def test_add_identity():
    a = S(1, 0, 1)
    assert a + S(0) == a


def test_add_cancels():
    assert S(1, -1) + S(0, 1) == S(1)


def test_add_truncates_to_min_order():
    a = HalfQSeries(4, [1, 1, 1, 1, 1])
    b = HalfQSeries(2, [1, 1, 1])
    assert (a + b).order == 2


def test_mul_geometric_inverse():
    geo = HalfQSeries(ORDER, [1 if k % 2 == 0 else 0 for k in range(ORDER + 1)])
    assert (S(1, 0, -1) * geo) == HalfQSeries.one(ORDER)


def test_mul_u_times_u_is_q():
    assert S(0, 1) * S(0, 1) == S(0, 0, 1)


def test_mul_square():
    assert S(1, 1) * S(1, 1) == S(1, 2, 1)


def test_invert_one_minus_u():
    inv = S(1, -1).invert()
    assert inv == HalfQSeries(ORDER, [1] * (ORDER + 1))


def test_invert_constant():
    assert S(2).invert() == S(Fraction(1, 2))


def test_invert_round_trip():
    a = S(1, 1, 1)
    assert a * a.invert() == HalfQSeries.one(ORDER)
    assert a.invert() * a == HalfQSeries.one(ORDER)


def test_invert_zero_constant_raises():
    with pytest.raises(ZeroConstantTerm):
        S(0, 1).invert()


def test_eta_product_leading_terms():
    # prod (1-q^j) to q^2: brute-force product of the two live factors
    got = eta_like_product(-1, False, 1, 4)
    oracle = S(1, 0, -1, 0, 0, order=4) * S(1, 0, 0, 0, -1, order=4)
    assert got == oracle
    assert got == S(1, 0, -1, 0, -1, order=4)


def test_eta_exponent_zero():
    assert eta_like_product(-1, True, 0, 6) == HalfQSeries.one(6)


def _brute_force_triple_product(order):
    out = HalfQSeries.one(order)
    for j in range(1, order + 1):
        for sign, upow in ((1, 2 * j), (-1, 2 * j - 1), (1, 2 * j - 1)):
            if upow <= order:
                out = out * (HalfQSeries.one(order) + HalfQSeries.u_power(upow, order, sign))
    return out


def test_euler_triple_product_is_one():
    order = 16
    prod = (
        eta_like_product(1, False, 1, order)
        * eta_like_product(-1, True, 1, order)
        * eta_like_product(1, True, 1, order)
    )
    assert prod == _brute_force_triple_product(order)
    assert prod == HalfQSeries.one(order)


@given(
    st.sampled_from([1, -1]),
    st.booleans(),
    st.integers(min_value=-3, max_value=3),
    st.integers(min_value=-3, max_value=3),
)
def test_eta_exponent_additivity(sign, half, e1, e2):
    order = 10
    lhs = eta_like_product(sign, half, e1, order) * eta_like_product(sign, half, e2, order)
    assert lhs == eta_like_product(sign, half, e1 + e2, order)


def test_tau_plus_one_examples():
    assert S(1, 1).tau_plus_one() == S(1, -1)
    even = S(1, 0, 2, 0, 3)
    assert even.tau_plus_one() == even
    a = S(1, 2, 3, 4)
    assert a.tau_plus_one().tau_plus_one() == a


@given(series_st(), series_st())
def test_tau_plus_one_is_ring_hom(a, b):
    assert (a + b).tau_plus_one() == a.tau_plus_one() + b.tau_plus_one()
    assert (a * b).tau_plus_one() == a.tau_plus_one() * b.tau_plus_one()


def test_is_integral_predicate():
    assert S(1, 0, 5).is_integral()
    assert not S(1, 1).is_integral()


@given(series_st(), series_st(), series_st())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


def test_eval_constant():
    value, bound = S(Fraction(3, 2)).eval_numeric(0.3 + 0.1j)
    assert value == pytest.approx(1.5)


def test_eval_geometric():
    geo = HalfQSeries(40, [1] * 41)
    value, bound = geo.eval_numeric(0.1)
    assert abs(value - 1 / 0.9) <= bound + 1e-15


def test_eval_zero_series():
    value, bound = HalfQSeries.zero(6).eval_numeric(0.5)
    assert value == 0
    assert bound == 0.0


def test_eval_divergent_tail():
    with pytest.raises(DivergentTail):
        S(1).eval_numeric(1.0)


def test_power_labels():
    assert power_label(0) == "q^0"
    assert power_label(1) == "q^{1/2}"
    assert power_label(3) == "q^{3/2}"
    assert power_label(4) == "q^2"


def test_rendering_uses_exact_fractions():
    s = S(Fraction(-1, 8), -1)
    assert ("q^0", "-1/8") in s.term_strings()
    assert ("q^{1/2}", "-1/1") in s.term_strings()
