import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from spinharm.scalars import (
    IdenticallyZero, NotExpressibleInT, Poly, PoleError, Scalar,
    Substitution, as_polynomial_in_t, eval_numeric, evaluate_exact,
    format_scalar, poly_gcd, rational_roots,
)

U = Scalar.u()
T_U2 = Substitution.T_EQUALS_U_SQUARED
T_HALF = Substitution.T_EQUALS_HALF_U_SQUARED
T_ID = Substitution.T_EQUALS_U


def sc(p, q=1):
    return Scalar.rational(p, q)


# ---------------------------------------------------------------------------
# normalization


def test_normalize_cancels_common_factor():
    # (u^2 - 1)/(u - 1) -> u + 1
    s = Scalar(Poly((-1, 0, 1)), Poly((-1, 1)))
    assert s == U + sc(1)
    assert s.den == Poly((1,))


def test_normalize_removes_content():
    s = Scalar(Poly((0, 2)), Poly((2,)))
    assert s == U


def test_normalize_zero():
    s = Scalar(Poly(()), Poly((0, 0, 0, 1)))
    assert s.is_zero
    assert s.den == Poly((1,))


def test_zero_denominator_rejected():
    with pytest.raises(ZeroDivisionError, match="zero denominator"):
        Scalar(Poly((1,)), Poly(()))
    with pytest.raises(ZeroDivisionError, match="zero denominator"):
        U / sc(0)


def test_denominator_made_monic():
    s = Scalar(Poly((1,)), Poly((0, 2)))   # 1/(2u)
    assert s.den == Poly((0, 1))
    assert s.num == Poly((Fraction(1, 2),))


# ---------------------------------------------------------------------------
# substitution into t


def test_as_t_half_u_squared_definition():
    s = U * U / sc(2)
    t = as_polynomial_in_t(s, T_HALF)
    assert t == U   # the scalar named u now stands for t


def test_as_t_even_powers():
    s = (sc(1) - U * U) ** 2 / (U * U)
    t = as_polynomial_in_t(s, T_U2)
    expect = (sc(1) - U) ** 2 / U
    assert t == expect


def test_as_t_odd_power_errors():
    with pytest.raises(NotExpressibleInT, match="not expressible"):
        as_polynomial_in_t(U, T_U2)


def test_as_t_odd_over_odd_is_fine():
    # u^3/u is even once reduced
    s = U ** 3 / U
    assert as_polynomial_in_t(s, T_U2) == U


def test_as_t_rational_substitution_is_identity():
    s = (sc(1) + U) / U
    assert as_polynomial_in_t(s, T_ID) == s


# ---------------------------------------------------------------------------
# rational roots


def test_roots_double_root():
    p = Poly((Fraction(9, 4), -3, 1))   # (3/2 - t)^2
    assert rational_roots(p) == {Fraction(3, 2): 2}


def test_roots_product():
    # t(t - 1/2)(t - 5/4)
    p = Poly((0, 1)) * Poly((Fraction(-1, 2), 1)) * Poly((Fraction(-5, 4), 1))
    assert rational_roots(p) == {Fraction(0): 1, Fraction(1, 2): 1,
                                 Fraction(5, 4): 1}


def test_roots_zero_polynomial_rejected():
    with pytest.raises(IdenticallyZero):
        rational_roots(Poly(()))


def test_roots_random_degree5_against_bisection_oracle():
    rng = random.Random(11)
    for _ in range(25):
        coeffs = [rng.randint(-6, 6) for _ in range(6)]
        coeffs[5] = rng.choice([1, 2, 3, -1, -2])
        p = Poly(coeffs)
        roots = rational_roots(p)
        # every claimed root is an exact zero, with exact deflation
        work = p
        for r, mult in roots.items():
            assert p.eval(r) == 0
            for _ in range(mult):
                work = work.exact_div(Poly((-r, 1)))
            assert work.eval(r) != 0
        # numeric bisection over a sign-change grid must land on each
        # odd-multiplicity root within 1e-9
        odd = sorted(r for r, m in roots.items() if m % 2 == 1)
        for r in odd:
            lo, hi = float(r) - 0.25, float(r) + 0.25
            flo = p.eval(lo)
            fhi = p.eval(hi)
            # shrink until the bracket isolates this root
            while any(lo < float(r2) < hi for r2 in odd if r2 != r):
                lo = (lo + float(r)) / 2
                hi = (hi + float(r)) / 2
                flo, fhi = p.eval(lo), p.eval(hi)
            if flo == 0.0 or fhi == 0.0:
                continue
            assert flo * fhi < 0
            for _ in range(60):
                mid = (lo + hi) / 2
                fm = p.eval(mid)
                if flo * fm <= 0:
                    hi = mid
                else:
                    lo, flo = mid, fm
            assert abs((lo + hi) / 2 - float(r)) < 1e-9


# ---------------------------------------------------------------------------
# numeric and exact evaluation


def test_eval_numeric_sqrt_t():
    assert eval_numeric(U / sc(2), T_U2, 1) == pytest.approx(0.5, abs=1e-15)


def test_eval_numeric_zero_numerator():
    s = (sc(1) - U * U) / (sc(2) * U)   # (1-t)/(2 sqrt t)
    assert eval_numeric(s, T_U2, 1) == pytest.approx(0.0, abs=1e-15)


def test_eval_numeric_spin4_eta_square():
    # ((3/2 - t)^2)/(2t) written in u with t = u^2/2
    s = ((sc(3) - U * U) / sc(2)) ** 2 / (U * U)
    assert eval_numeric(s, T_HALF, Fraction(3, 2)) == pytest.approx(0.0)


def test_eval_numeric_pole():
    s = sc(1) / (U * U - sc(1))
    with pytest.raises(PoleError):
        eval_numeric(s, T_U2, 1)


def test_evaluate_exact_quadratic_field():
    s = (sc(1) - U * U) / (sc(2) * U)
    v = evaluate_exact(s, T_U2, Fraction(1, 2))
    # (1 - 1/2)/(2 sqrt(1/2)) = sqrt(2)/4 = (1/2) sqrt(1/2)
    assert v.a == 0 and v.b == Fraction(1, 2) and v.c == Fraction(1, 2)
    assert v.to_float() == pytest.approx(math.sqrt(2) / 4)


def test_evaluate_exact_rational_point():
    s = (sc(1) + U) / U
    v = evaluate_exact(s, T_ID, Fraction(1, 4))
    assert v.b == 0 and v.a == Fraction(5)


# ---------------------------------------------------------------------------
# field axioms (property tests)


_coeffs = st.lists(
    st.fractions(min_value=-4, max_value=4, max_denominator=3),
    min_size=1, max_size=3)
_nonzero_coeffs = _coeffs.filter(lambda cs: any(c != 0 for c in cs))


@st.composite
def scalars(draw, allow_zero=True):
    num = Poly(draw(_coeffs))
    den = Poly(draw(_nonzero_coeffs))
    s = Scalar(num, den)
    if not allow_zero and s.is_zero:
        s = s + Scalar.rational(1)
    return s


@settings(max_examples=60, deadline=None)
@given(scalars(), scalars())
def test_additive_inverse_and_commutativity(a, b):
    assert (a + (-a)).is_zero
    assert a + b == b + a


@settings(max_examples=60, deadline=None)
@given(scalars(allow_zero=False))
def test_multiplicative_inverse(a):
    assert a * (Scalar.rational(1) / a) == Scalar.rational(1)


@settings(max_examples=60, deadline=None)
@given(scalars(), scalars(), scalars())
def test_distributivity(a, b, c):
    assert a * (b + c) == a * b + a * c


@settings(max_examples=60, deadline=None)
@given(scalars())
def test_normalize_idempotent(a):
    again = Scalar(a.num, a.den)
    assert again.num == a.num and again.den == a.den


@settings(max_examples=60, deadline=None)
@given(scalars(), scalars())
def test_equality_matches_cross_multiplication(a, b):
    assert (a == b) == (a.num * b.den == b.num * a.den)


def test_eval_homomorphism_on_random_rationals():
    rng = random.Random(5)
    ops = [("add", lambda x, y: x + y, lambda x, y: x + y),
           ("sub", lambda x, y: x - y, lambda x, y: x - y),
           ("mul", lambda x, y: x * y, lambda x, y: x * y),
           ("div", lambda x, y: x / y, lambda x, y: x / y)]
    for k in range(100):
        a = (sc(rng.randint(-3, 3)) + U * sc(rng.randint(-2, 2))) / \
            (U * U + sc(rng.randint(1, 4)))
        b = (sc(rng.randint(-3, 3)) * U + sc(1)) / (U + sc(rng.randint(1, 3)))
        t0 = Fraction(rng.randint(1, 40), rng.randint(1, 20))
        name, sym, num = ops[k % 4]
        if name == "div" and b.is_zero:
            continue
        lhs = eval_numeric(sym(a, b), T_U2, t0)
        rhs = num(eval_numeric(a, T_U2, t0), eval_numeric(b, T_U2, t0))
        assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-12)


# ---------------------------------------------------------------------------
# gcd and printing


def test_poly_gcd_fraction_free():
    a = Poly((-1, 0, 1)) * Poly((2, 3))
    b = Poly((-1, 1)) * Poly((5, 1))
    g = poly_gcd(a, b)
    assert g == Poly((-1, 1))   # monic gcd u - 1


def test_format_canonical():
    s = (sc(1) - U * U) / (sc(2) * U)
    assert format_scalar(s) == "(1 - u^2)/(2*u)"
    assert format_scalar(U / sc(2)) == "u/2"
    assert format_scalar(sc(-3, 2)) == "-3/2"
    assert format_scalar(sc(0)) == "0"
    assert format_scalar(as_polynomial_in_t(U * U, T_U2), var="t") == "t"
