import cmath
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracle import complex_value, root_of_unity
from wittsig.errors import IndeterminateError, PoleError
from wittsig.field import CertifiedInterval, CyclotomicNumber, Embedding, euler_phi, zeta
from wittsig.funcfield import (
    LaurentPoly,
    RationalFunction,
    eval_numeric,
    eval_root_of_unity,
    parse_expr,
    poly_gcd,
    poly_mul,
    poly_squarefree,
)


def T(m, e=1):
    return RationalFunction.t(m, e)


def test_t_times_inverse_is_one():
    assert T(1) * T(1, -1) == 1


def test_sum_of_one_minus_t_and_its_bar():
    a = (1 - T(1)) + (1 - T(1, -1))
    assert a == parse_expr("2 - t - t^-1", 1)
    assert a.bar() == a


def test_quotient_cancels():
    a = (1 - T(3)) / (1 - T(3))
    assert a == 1 and a.is_constant()


def test_bar_of_inverse_of_one_minus_t():
    a = 1 / (1 - T(1))
    assert a.bar() == -T(1) / (1 - T(1))
    # cross-multiplied check: bar(a) * (1 - t^-1) == 1
    assert a.bar() * (1 - T(1, -1)) == 1


def test_bar_conjugates_coefficients():
    i = zeta(4)
    a = RationalFunction.laurent(LaurentPoly(4, {1: i}))
    assert a.bar() == RationalFunction.laurent(LaurentPoly(4, {-1: -i}))


def test_eval_t_plus_inverse_at_zeta8():
    a = T(1) + T(1, -1)
    v = eval_root_of_unity(a, 8, 1)
    assert v == zeta(8) + zeta(8, 7)
    assert v * v == 2
    assert abs(complex_value(v) - math.sqrt(2)) < 1e-12


def test_eval_at_pole_raises_with_location():
    a = 1 / (1 - T(1))
    with pytest.raises(PoleError) as info:
        eval_root_of_unity(a, 1, 0)
    assert info.value.point == (1, 0)


def test_eval_numeric_two_minus_2cos():
    a = parse_expr("2 - t - t^-1", 1)
    iv = eval_numeric(a, Embedding(1, 1), CertifiedInterval.exact(-1))
    assert abs(float(iv.re_mid) - 4) < 1e-15
    assert not iv.contains_zero()


def test_eval_numeric_indeterminate_near_pole():
    a = 1 / (1 - T(1))
    with pytest.raises(IndeterminateError):
        eval_numeric(a, None, CertifiedInterval.exact(1))


def test_parse_canonical_block_and_self_bar():
    a = parse_expr("i*(1-t^-1)/(1-i) - i*(1-t)/(1+i)", 4)
    assert a.bar() == a
    assert a.is_laurent()
    assert eval_root_of_unity(a, 2, 1) == -2
    assert eval_root_of_unity(a, 4, 1) == -2


def test_laurent_dense_round_trip():
    p = LaurentPoly(3, {-2: 1, 0: zeta(3), 3: -2})
    shift, dense = p.to_dense()
    assert shift == -2 and len(dense) == 6
    assert LaurentPoly.from_dense(3, dense, shift) == p
    assert p.valuation() == -2 and p.degree() == 3


def test_squarefree_and_gcd():
    one = CyclotomicNumber.rational(1, 1)
    x_minus_1 = [-one, one]
    p = poly_mul(poly_mul(x_minus_1, x_minus_1), [one, one])
    sf = poly_squarefree(p)
    assert len(sf) == 3
    assert len(poly_gcd(p, x_minus_1)) == 2


@st.composite
def laurent(draw, m):
    terms = draw(st.dictionaries(st.integers(-3, 3),
                                 st.lists(st.integers(-3, 3), min_size=euler_phi(m), max_size=euler_phi(m)),
                                 max_size=4))
    return LaurentPoly(m, {e: CyclotomicNumber(m, cs) for e, cs in terms.items()})


@st.composite
def rational_pair(draw):
    m = draw(st.sampled_from([1, 3, 4, 5]))
    a = RationalFunction.laurent(draw(laurent(m)))
    b = draw(laurent(m))
    if b.is_zero():
        b = LaurentPoly.constant(m, 1)
    c = RationalFunction.laurent(draw(laurent(m)))
    return a / RationalFunction.laurent(b), c


@given(rational_pair())
def test_rational_function_field_laws(pair):
    a, c = pair
    assert a + c == c + a
    assert (a * c) - (c * a) == 0
    assert a.bar().bar() == a
    assert (a * c).bar() == a.bar() * c.bar()
    assert (a + c).bar() == a.bar() + c.bar()
    if not c.is_zero():
        assert (a / c) * c == a


@given(rational_pair(), st.integers(1, 16), st.integers(0, 15))
def test_exact_evaluation_matches_float_oracle(pair, N, j):
    a, _ = pair
    try:
        v = eval_root_of_unity(a, N, j)
    except PoleError:
        return
    t = root_of_unity(N, j)
    num = sum(complex_value(c) * t ** e for e, c in a.num.terms.items())
    den = sum(complex_value(c) * t ** e for e, c in a.den.terms.items())
    assert abs(complex_value(v) - num / den) < 1e-6 * (1 + abs(num / den))


@given(rational_pair(), st.integers(1, 12), st.integers(0, 11))
def test_bar_evaluates_to_conjugate_on_the_circle(pair, N, j):
    a, _ = pair
    try:
        v = eval_root_of_unity(a, N, j)
        w = eval_root_of_unity(a.bar(), N, j)
    except PoleError:
        return
    assert w == v.conjugate()


def test_galois_commutes_with_evaluation():
    a = parse_expr("z*t + 2 - z^2*t^-1", 5)
    for k in (1, 2, 3, 4):
        left = eval_root_of_unity(a.galois(k), 5, 2)
        # sigma_k acts on coefficients only: evaluate sigma_k(a) at zeta^2
        zk = [complex_value(c, k) for c in (zeta(5), zeta(5, 2))]
        t = cmath.exp(2j * math.pi * 2 / 5)
        expect = zk[0] * t + 2 - zk[1] / t
        assert abs(complex_value(left) - expect) < 1e-9


def test_parse_errors():
    with pytest.raises(ValueError):
        parse_expr("1 + $", 1)
    with pytest.raises(ValueError):
        parse_expr("(1 + t", 1)
