"""Exact coefficient arithmetic: Laurent polynomials and rational functions."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from grasspq.coeff import LaurentPoly, ONE, P, Q, RatFunc, ZERO, qnum
from grasspq.errors import SingularEvaluation, ZeroInverse

one = RatFunc.one()


def rf(c, a=0, b=0):
    return RatFunc.monomial(c, a, b)


def random_ratfunc(rng, allow_den=True):
    def poly():
        terms = {}
        for _ in range(rng.randint(1, 3)):
            terms[(rng.randint(-2, 2), rng.randint(-2, 2))] = Fraction(
                rng.randint(-4, 4), rng.randint(1, 3))
        return LaurentPoly(terms)

    num = poly()
    den = poly() if allow_den and rng.random() < 0.4 else LaurentPoly.const(1)
    while den.is_zero:
        den = poly()
    return RatFunc(num, den)


# -- addition ---------------------------------------------------------------

def test_add_inverse_cancels():
    assert (P + (-P)).is_zero


def test_add_keeps_mixed_monomials():
    # the scalar that sits on the diagonal of the R-matrix
    s = P + Q**-1
    assert s == RatFunc(LaurentPoly({(1, 0): 1, (0, -1): 1}))


def test_add_common_denominator():
    d = one - P * Q
    assert rf(1) / d + rf(-1) * (P * Q) / d == one


# -- multiplication ----------------------------------------------------------

def test_mul_monomials():
    assert P * Q**-1 == rf(1, 1, -1)


def test_mul_orients_commutator_coefficient():
    # the coefficient step that re-orients the mixed quadratic relation
    assert (P - Q**-1) * (Q * P**-1) == Q - P**-1


def test_mul_cancels_denominator():
    val = (one - P * Q) / (one + P * Q) * (one + P * Q)
    assert val == one - P * Q
    assert val.den == LaurentPoly.const(1)


# -- inversion ---------------------------------------------------------------

def test_inv_monomial():
    assert (P * Q).inv() == P**-1 * Q**-1


def test_inv_binomial_roundtrip():
    s = P + Q**-1
    assert s * s.inv() == one


def test_inv_zero_raises():
    with pytest.raises(ZeroInverse):
        ZERO.inv()


# -- evaluation ---------------------------------------------------------------

def test_eval_monomial():
    assert (P * Q**-1).evaluate(2, 3) == Fraction(2, 3)


def test_eval_singular_at_unit_product():
    with pytest.raises(SingularEvaluation):
        (one / (one - P * Q)).evaluate(1, 1)


def test_eval_admissibility_guard():
    with pytest.raises(SingularEvaluation):
        P.evaluate(2, Fraction(1, 2), require_admissible=True)
    # fine without the guard
    assert P.evaluate(2, Fraction(1, 2)) == 2


def test_eval_degeneration_point():
    # p - q^-1 vanishes where the deformation source term dies
    assert (P - Q**-1).evaluate(3, Fraction(1, 3)) == 0


def test_eval_zero_parameter_rejected():
    with pytest.raises(SingularEvaluation):
        P.evaluate(0, 1)


def test_eval_is_homomorphism(rng):
    for _ in range(20):
        a = random_ratfunc(rng)
        b = random_ratfunc(rng)
        while True:
            p0 = Fraction(rng.randint(1, 9), rng.randint(1, 5))
            q0 = Fraction(rng.randint(1, 9), rng.randint(1, 5))
            if p0 * q0 in (1, -1):
                continue
            try:
                av, bv = a.evaluate(p0, q0), b.evaluate(p0, q0)
                ab = (a * b).evaluate(p0, q0)
                s = (a + b).evaluate(p0, q0)
            except SingularEvaluation:
                continue
            break
        assert ab == av * bv
        assert s == av + bv


# -- deformed integers ---------------------------------------------------------

def test_qnum_empty_sum():
    assert qnum(0, P * Q).is_zero


def test_qnum_one():
    assert qnum(1, P * Q) == one


def test_qnum_three():
    t = P * Q
    assert qnum(3, t) == one + t + t * t


@pytest.mark.parametrize("t", [P * Q, (P * Q) ** 2, (P * Q) ** -1],
                         ids=["pq", "pq_squared", "pq_inverse"])
def test_qnum_telescopes(t):
    for n in range(17):
        assert qnum(n, t) * (one - t) == one - t**n


# -- field structure ----------------------------------------------------------

def test_field_axioms_on_random_samples(rng):
    for _ in range(200):
        a = random_ratfunc(rng)
        b = random_ratfunc(rng)
        c = random_ratfunc(rng)
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)


def test_cross_multiplication_matches_explicit_difference(rng):
    for _ in range(200):
        a = random_ratfunc(rng)
        b = random_ratfunc(rng)
        explicit = (a.num * b.den - b.num * a.den).is_zero
        assert (a == b) == explicit


@given(st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9))
def test_constants_embed_ring_hom(x, y, z):
    cx, cy, cz = RatFunc.const(x), RatFunc.const(y), RatFunc.const(z)
    assert cx * (cy + cz) == RatFunc.const(x * (y + z))


@given(st.integers(-3, 3), st.integers(-3, 3))
def test_monomial_pow_matches_repeated_product(a, b):
    m = rf(2, a, b)
    assert m**3 == m * m * m
    assert m**-1 * m == one


def test_printing_roundtrips_visually():
    assert str(P + Q**-1) == "p + q^-1"
    assert str((one - P * Q) / (one + P * Q)) == "(-p*q + 1)/(p*q + 1)"
    assert str(ZERO) == "0"
