import pytest
from hypothesis import given, strategies as st

from padic_cf.errors import NotAResidueError
from padic_cf.padic import (
    INF,
    balanced_digits_mod,
    check_prime,
    from_digits,
    hensel_sqrt,
    legendre,
    mod_inverse,
    sqrt_mod_power,
    valuation_rational,
)

from oracles import branch_root, egcd_inverse, trial_valuation

SMALL_PRIMES = [3, 5, 7, 11, 13, 23]


@pytest.mark.parametrize(
    "num, den, p, expected",
    [(1, 1, 5, 0), (50, 3, 5, 2), (-15, 109, 23, trial_valuation(15, 23) - trial_valuation(109, 23))],
)
def test_valuation_rational(num, den, p, expected):
    assert valuation_rational(num, den, p) == expected


def test_valuation_of_zero_is_sentinel():
    v = valuation_rational(0, 7, 5)
    assert v is INF
    assert v > 10**100 and min(v, 3) == 3


def test_valuation_rejects_zero_denominator():
    with pytest.raises(ValueError):
        valuation_rational(1, 0, 5)


@pytest.mark.parametrize(
    "x, p, k, expected",
    [(22, 5, 2, [2, -1]), (0, 7, 3, [0, 0, 0]), (3, 5, 1, [-2])],
)
def test_balanced_digits_examples(x, p, k, expected):
    assert balanced_digits_mod(x, p, k) == expected


@given(st.integers(-10**12, 10**12), st.sampled_from(SMALL_PRIMES), st.integers(1, 12))
def test_balanced_digits_reassemble(x, p, k):
    ds = balanced_digits_mod(x, p, k)
    assert len(ds) == k
    assert all(abs(d) <= (p - 1) // 2 for d in ds)
    assert (from_digits(ds, p) - x) % p**k == 0


@pytest.mark.parametrize("x, m", [(2, 5), (1, 97), (109, 23**3), (12345, 99991)])
def test_mod_inverse_matches_egcd(x, m):
    assert mod_inverse(x, m) == egcd_inverse(x, m)


def test_mod_inverse_non_coprime():
    with pytest.raises(ValueError):
        mod_inverse(10, 25)


@pytest.mark.parametrize("D, p, k, expected", [(34, 5, 1, 2), (34, 5, 2, 22), (19, 5, 1, 2)])
def test_hensel_sqrt_examples(D, p, k, expected):
    assert hensel_sqrt(D, p, k) == expected


@pytest.mark.parametrize("D, p, k", [(34, 5, 3), (19, 5, 4), (2, 7, 3), (10, 13, 2), (7, 3, 5), (30, 7, 3)])
def test_hensel_sqrt_brute_force(D, p, k):
    assert hensel_sqrt(D, p, k) == branch_root(D, p, k)


def test_hensel_sqrt_errors():
    with pytest.raises(NotAResidueError):
        hensel_sqrt(2, 5, 3)
    with pytest.raises(ValueError):
        hensel_sqrt(50, 5, 3)


@given(st.sampled_from(SMALL_PRIMES), st.integers(1, 5000), st.integers(1, 40), st.integers(1, 40))
def test_hensel_square_and_coherence(p, D, k1, k2):
    if D % p == 0 or legendre(D, p) != 1:
        return
    r1, r2 = hensel_sqrt(D, p, k1), hensel_sqrt(D, p, k2)
    assert (r1 * r1 - D) % p**k1 == 0
    assert (r1 - r2) % p ** min(k1, k2) == 0


def test_sqrt_with_even_power_of_p():
    # sqrt(150) = 5 sqrt(6) in Q_5
    r = sqrt_mod_power(150, 5, 6)
    assert (r * r - 150) % 5**6 == 0
    assert r == 5 * hensel_sqrt(6, 5, 5)
    with pytest.raises(NotAResidueError):
        sqrt_mod_power(30, 5, 4)


@given(
    st.integers(-10**6, 10**6).filter(bool),
    st.integers(1, 10**6),
    st.integers(-10**6, 10**6).filter(bool),
    st.integers(1, 10**6),
    st.sampled_from(SMALL_PRIMES),
)
def test_valuation_additive(n1, d1, n2, d2, p):
    assert valuation_rational(n1 * n2, d1 * d2, p) == valuation_rational(n1, d1, p) + valuation_rational(n2, d2, p)


@pytest.mark.parametrize("p", [2, 1, 9, 15, -3])
def test_check_prime_rejects(p):
    with pytest.raises(ValueError):
        check_prime(p)
