import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dnsdisc.discrimination import (
    DiscriminationProblem,
    closed_form_eigenvalues,
    decision_operator,
    helstrom_closed_form,
    helstrom_general,
    helstrom_pure,
    threshold_holds,
)
from dnsdisc.errors import IntegrityError
from dnsdisc.states import DnsParams


def problem(xi, h, mu, k, nt=0.0, p0=0.5):
    return DiscriminationProblem(DnsParams(xi, h, nt), DnsParams(mu, k, nt), p0)


def test_priors_validated_and_defaulted():
    assert problem(0, 1, 0, 0, p0=0.3).p1 == pytest.approx(0.7)
    with pytest.raises(ValueError):
        DiscriminationProblem(DnsParams(), DnsParams(), 0.5, 0.6)
    with pytest.raises(ValueError):
        DiscriminationProblem(DnsParams(), DnsParams(), -0.1)


def test_normalized_swaps_states_and_priors():
    pr = problem(0.2, 1, 0.5, 3, nt=0.1, p0=0.3)
    norm = pr.normalized()
    assert (norm.state0.k, norm.state1.k) == (3, 1)
    assert (norm.p0, norm.p1) == (pr.p1, pr.p0)
    assert problem(0, 3, 0, 1).normalized() == problem(0, 3, 0, 1)


def test_pure_identical_states():
    assert helstrom_pure(problem(0.4, 2, 0.4, 2)) == 0.5


def test_pure_zero_error_conditions():
    assert helstrom_pure(problem(0.7, 3, 0.7, 1)) == 0.0
    assert helstrom_pure(problem(0, 1, 1.0, 1)) < 1e-12
    root = 2 - math.sqrt(2)  # L_2(x) = 1 - 2x + x^2/2
    assert helstrom_pure(problem(0, 2, math.sqrt(root), 2)) < 1e-12


def test_pure_coherent_formula():
    assert helstrom_pure(problem(0, 0, 2.0, 0)) == pytest.approx(
        0.5 * (1 - math.sqrt(1 - math.exp(-4))), rel=1e-12
    )


def test_pure_rejects_noisy():
    with pytest.raises(ValueError):
        helstrom_pure(problem(0, 1, 0, 0, nt=0.1))


def test_general_identical_states():
    assert helstrom_general(problem(0.6j, 2, 0.6j, 2, nt=0.3)) == pytest.approx(0.5, abs=1e-12)


@pytest.mark.parametrize("xi, h, mu, k", [
    (0, 0, 1.5, 0), (0.3, 2, -0.4 + 0.8j, 1), (1.0j, 3, 0.5, 3), (0, 1, 2.5, 0), (0.2, 2, 0.2, 0),
])
def test_general_matches_pure(xi, h, mu, k):
    pr = problem(xi, h, mu, k)
    assert abs(helstrom_general(pr) - helstrom_pure(pr)) < 1e-9


@pytest.mark.parametrize("k, h, nt, p0", [(0, 1, 0.2, 0.5), (1, 3, 0.2, 0.5), (2, 2, 0.5, 0.3), (0, 4, 1.0, 0.7)])
def test_general_matches_closed_form(k, h, nt, p0):
    pr = problem(1.3 - 0.2j, h, 1.3 - 0.2j, k, nt, p0)
    assert abs(helstrom_general(pr) - helstrom_closed_form(pr)) < 1e-10


def test_displacement_invariance_grid():
    for xi in (0.0, 1.2, -0.9 + 1.1j):
        for mu in (0.5j, 1.5 - 0.5j, -2.0):
            pr = problem(xi, 2, mu, 1, nt=0.3)
            assert abs(helstrom_general(pr) - helstrom_general(pr, reduce=False)) < 1e-9


@pytest.mark.parametrize("k, h", [(0, 0), (1, 1), (0, 1), (1, 3)])
def test_noisy_not_below_noiseless(k, h):
    for d in np.linspace(0, 3, 13):
        noisy = helstrom_general(problem(0, h, d, k, nt=0.2))
        clean = helstrom_general(problem(0, h, d, k, nt=0.0))
        assert noisy >= clean - 1e-9


@settings(max_examples=40, deadline=None)
@given(
    st.complex_numbers(max_magnitude=2), st.complex_numbers(max_magnitude=2),
    st.integers(0, 3), st.integers(0, 3), st.sampled_from([0.0, 0.1, 0.5]), st.floats(0, 1),
)
def test_bounds_and_swap_symmetry(xi, mu, h, k, nt, p0):
    pr = problem(xi, h, mu, k, nt, p0)
    pe = helstrom_general(pr)
    assert -1e-12 <= pe <= min(pr.p0, pr.p1) + 1e-12
    assert abs(helstrom_general(pr.swapped()) - pe) < 1e-10


def test_general_flags_lost_trace():
    with pytest.raises(IntegrityError):
        helstrom_general(problem(0, 0, 2.0, 0, nt=0.5), dim=4)


def test_closed_form_branches():
    pr = problem(0.5, 4, 0.5, 2, nt=0.3, p0=0.4)
    lam = closed_form_eigenvalues(pr, 12).lam
    assert np.all(lam[:2] == 0)
    for n in (2, 3):
        assert lam[n] == pytest.approx(0.6 * math.comb(n, 2) * 0.3 ** (n - 2) / 1.3 ** (n + 1), rel=1e-13)
    for n in range(4, 13):
        ref = (0.6 * math.comb(n, 2) * 0.3 ** (n - 2) - 0.4 * math.comb(n, 4) * 0.3 ** (n - 4)) / 1.3 ** (n + 1)
        assert lam[n] == pytest.approx(ref, rel=1e-12)


def test_closed_form_spectrum_matches_eigh():
    pr = problem(0, 3, 0, 1, nt=0.2)
    dim = 80
    lam = closed_form_eigenvalues(pr, dim - 1).lam
    numeric = np.linalg.eigvalsh(decision_operator(pr, dim).real)
    assert np.abs(np.sort(lam) - numeric).max() < 1e-10


def test_closed_form_rejects_unequal_displacement():
    with pytest.raises(ValueError):
        closed_form_eigenvalues(problem(0, 2, 0.1, 1, nt=0.2), 10)
    with pytest.raises(ValueError):
        helstrom_closed_form(problem(0, 2, 0.1, 1, nt=0.2))


def test_closed_form_equal_orders():
    assert helstrom_closed_form(problem(1, 2, 1, 2, nt=0.2)) == pytest.approx(0.5, abs=1e-15)


def test_closed_form_matches_general_ook():
    pr = problem(0.7, 1, 0.7, 0, nt=0.2)
    assert abs(helstrom_closed_form(pr) - helstrom_general(pr)) < 1e-10


def test_closed_form_decreases_with_gap():
    vals = [helstrom_closed_form(problem(0, h, 0, 0, nt=0.2)) for h in range(1, 6)]
    assert all(b < a for a, b in zip(vals, vals[1:]))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 6), st.integers(0, 6), st.floats(0.01, 3), st.floats(0.05, 0.95))
def test_threshold_predicate_matches_eigenvalue_sign(k, gap, nt, p0):
    pr = problem(0, k + gap, 0, k, nt, p0)
    lam = closed_form_eigenvalues(pr, 80).lam
    for n in range(81):
        if abs(lam[n]) > 1e-14 * (abs(lam[n]) + 1e-300) and abs(lam[n]) > 1e-300:
            assert threshold_holds(n, pr) == (lam[n] >= 0), n
