from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from padic_cf.algorithms import AlgorithmKind, Status, expand
from padic_cf.convergents import (
    approx_error_valuation,
    convergent_seq,
    determinant,
    truncation,
    truncation_error,
    valuation_of_B,
)
from padic_cf.padic import valuation_rational
from padic_cf.quadratic import PartialQuotient, QuadElem

from strategies import quad_elems


def v(q: Fraction, p):
    return valuation_rational(q.numerator, q.denominator, p)


def test_single_quotient():
    (c,) = convergent_seq([PartialQuotient(3, 1, 5)])
    assert c.value == Fraction(3, 5)


@pytest.mark.parametrize(
    "num, den, alg",
    [(-17, 29, "new"), (-17, 29, "b2"), (-15, 109, "new"), (-15, 109, "b2")],
)
def test_finite_expansions_reconstruct(num, den, alg):
    r = expand(QuadElem.rational(num, den, 23), alg, 100)
    assert convergent_seq(r.quotients)[-1].value == Fraction(num, den)


@given(st.integers(-10**4, 10**4), st.integers(1, 10**4), st.sampled_from([3, 5, 7, 11, 13]), st.sampled_from(list(AlgorithmKind)))
@settings(max_examples=100, deadline=None)
def test_reconstruction_property(num, den, p, alg):
    r = expand(QuadElem.rational(num, den, p), alg, 5000)
    if r.status is Status.FINITE:
        assert convergent_seq(r.quotients)[-1].value == Fraction(num, den)


def test_upto_out_of_range():
    with pytest.raises(IndexError):
        convergent_seq([PartialQuotient(1, 0, 5)], 3)


def test_valuation_of_B_trivial():
    r = expand(QuadElem.sqrt(34, 5), "b2", 30)
    assert valuation_of_B(r.quotients, 0) == 0


def test_valuation_of_B_strictly_decreasing_browkin1():
    r = expand(QuadElem.sqrt(19, 5), "b1", 60)
    vals = [valuation_of_B(r.quotients, n) for n in range(60)]
    assert all(b < a for a, b in zip(vals, vals[1:]))


def test_sum_formula_indexing():
    # b_0 = 1/5 has valuation -1, yet B_0 = 1: the sum must start at b_1
    x = QuadElem(1, 1, 5, 34, 5)
    r = expand(x, "new", 20)
    assert r.quotients[0].valuation == -1
    B = convergent_seq(r.quotients, 6)
    for n in range(7):
        with_b0 = sum(q.valuation for q in r.quotients[: n + 1])
        without_b0 = sum(q.valuation for q in r.quotients[1 : n + 1])
        assert v(B[n].B, 5) == without_b0 != with_b0


def test_approx_error_sqrt34():
    r = expand(QuadElem.sqrt(34, 5), "b2", 30)
    assert approx_error_valuation(QuadElem.sqrt(34, 5), r.quotients, 0) == 1


@given(quad_elems(), st.sampled_from(list(AlgorithmKind)), st.integers(0, 20))
@settings(max_examples=120, deadline=None)
def test_error_identity(x, alg, n):
    r = expand(x, alg, 25)
    if r.status is Status.FINITE and n + 1 >= r.steps:
        return
    if n + 1 >= r.steps and not r.is_periodic:
        return
    qs = r.quotients_upto(n + 1)
    assert approx_error_valuation(x, qs, n) == -(valuation_of_B(qs, n) + valuation_of_B(qs, n + 1))


@given(quad_elems(), st.sampled_from(list(AlgorithmKind)))
@settings(max_examples=80, deadline=None)
def test_continuant_identities(x, alg):
    r = expand(x, alg, 25)
    convs = convergent_seq(r.quotients)
    for n in range(len(convs)):
        assert determinant(convs, n) == (-1) ** (n + 1)
    # v_p(alpha_{n+1} B_n + B_{n-1}) = v_p(B_{n+1})
    p = x.p
    for n in range(1, len(convs) - 1):
        alpha = r.complete_quotients[n + 1]
        lhs = alpha * convs[n].B - (-convs[n - 1].B)
        assert lhs.valuation() == v(convs[n + 1].B, p)


def test_truncation_sqrt34():
    x = QuadElem.sqrt(34, 5)
    assert truncation(x, 1) == 2 - 5
    assert truncation_error(x, 1) >= 2
    assert truncation_error(x, 0) >= 1


@given(quad_elems(), st.integers(0, 8))
def test_truncation_bound(x, n):
    if x.is_zero():
        return
    assert truncation_error(x, n) >= n + 1
