import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dnsdisc.specfun import laguerre, laguerre_table, log_binomial, log_factorial


def exact_series(n, a, x):
    """Sum_i (-1)^i C(n+a, n-i) x^i / i! in exact rationals (needs n + a >= 0)."""
    x = Fraction(x)
    return sum(Fraction((-1) ** i * math.comb(n + a, n - i), math.factorial(i)) * x**i for i in range(n + 1))


def test_log_factorial_small():
    assert log_factorial(0) == 0.0
    assert log_factorial(5) == pytest.approx(4.787491742782046, rel=1e-15)
    assert log_factorial(5) == math.log(120)


def test_log_factorial_170_matches_direct_sum():
    direct = math.fsum(math.log(i) for i in range(1, 171))
    assert abs(log_factorial(170) - direct) / direct < 1e-13


def test_log_factorial_monotone():
    vals = [log_factorial(n) for n in range(300)]
    assert all(b >= a for a, b in zip(vals, vals[1:]))


def test_log_factorial_rejects_negative():
    with pytest.raises(ValueError):
        log_factorial(-1)


def test_log_binomial_examples():
    assert log_binomial(7, 0) == 0.0
    assert log_binomial(6, 3) == pytest.approx(math.log(20), rel=1e-15)
    assert log_binomial(200, 100) == pytest.approx(
        log_factorial(200) - 2 * log_factorial(100), abs=1e-12
    )


def test_log_binomial_rejects_k_above_n():
    with pytest.raises(ValueError):
        log_binomial(3, 4)


@given(st.integers(0, 400), st.data())
def test_log_binomial_exactly_symmetric(n, data):
    k = data.draw(st.integers(0, n))
    assert log_binomial(n, k) == log_binomial(n, n - k)


def test_laguerre_trivial_cases():
    assert laguerre(0, 3, 7.5) == 1.0
    assert laguerre(1, 2, 0.5) == 2.5


def test_laguerre_negative_parameter_two_oracles():
    got = laguerre(4, -2, 1.3)
    reflection = 1.3**2 * (math.factorial(2) / math.factorial(4)) * laguerre(2, 2, 1.3)
    series = float(exact_series(4, -2, Fraction(13, 10)))
    assert got == pytest.approx(reflection, rel=1e-14)
    assert got == pytest.approx(series, rel=1e-13)


@pytest.mark.parametrize("n", range(13))
def test_laguerre_matches_exact_series_on_grid(n):
    for a in range(-n, 9):
        for x in range(-3, 4):
            ref = float(exact_series(n, a, x))
            assert abs(laguerre(n, a, x) - ref) <= max(1e-11 * abs(ref), 1e-12), (n, a, x)


@given(st.integers(0, 30), st.integers(0, 30))
def test_laguerre_at_zero_is_binomial(n, a):
    assert laguerre(n, a, 0.0) == pytest.approx(math.comb(n + a, n), rel=1e-12)


def test_laguerre_below_minus_n_uses_polynomial_identity():
    # n + a < 0: compare against the expanded polynomial with generalized binomials
    n, a, x = 2, -5, 0.7
    # L_2^{(a)}(x) = (a+1)(a+2)/2 - (a+2) x + x^2/2
    ref = (a + 1) * (a + 2) / 2 - (a + 2) * x + x * x / 2
    assert laguerre(n, a, x) == pytest.approx(ref, rel=1e-14)


def test_laguerre_rejects_negative_order():
    with pytest.raises(ValueError):
        laguerre(-1, 0, 1.0)


def test_table_agrees_with_scalar():
    table = laguerre_table(10, 6, -2.5)
    for p in range(11):
        for a in range(7):
            assert table[p, a] == pytest.approx(laguerre(p, a, -2.5), rel=1e-13)
