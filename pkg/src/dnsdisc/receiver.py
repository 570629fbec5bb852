"""Kennedy receiver with photon-count threshold detection.

The receiver displaces the incoming state by ``beta``, counts photons and
decides hypothesis 1 (the fewer-photon state ``rho(mu, k)``) when the count
is at most ``n_th``. With ``beta = -mu`` and equal displacements this attains
the Helstrom bound.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .discrimination import DiscriminationProblem, _check_same_displacement, threshold_holds
from .fock import choose_dim
from .states import DnsParams, photon_statistics

SERIES_TOL = 1e-15
CHUNK = 1 << 18


@dataclass(frozen=True)
class ReceiverConfig:
    """Receiver displacement ``beta`` and count threshold ``n_th``.

    ``n_th = -1`` means the receiver always answers hypothesis 0.
    """

    beta: complex
    n_th: int

    def __post_init__(self):
        if self.n_th < -1:
            raise ValueError(f"n_th must be >= -1, got {self.n_th}")


def _series_cap(problem: DiscriminationProblem) -> int:
    s0, s1 = problem.state0, problem.state1
    return choose_dim([DnsParams(0, s0.k, s0.nt), DnsParams(0, s1.k, s1.nt)], SERIES_TOL) - 1


def optimal_threshold(problem: DiscriminationProblem, n_max: int | None = None) -> int:
    """Largest ``n`` whose decision-operator eigenvalue is non-negative.

    Scans upward from ``n = h``; the non-negative run is a prefix, so the
    first failure ends the scan. Returns ``h - 1`` when it fails right away
    (``-1`` for ``h = 0``), and ``n_max`` (default: where both photon
    distributions have tail below 1e-15) when it never fails.
    """
    _check_same_displacement(problem)
    pr = problem.normalized()
    cap = _series_cap(pr) if n_max is None else n_max
    n = pr.state0.k
    while n <= cap and threshold_holds(n, pr):
        n += 1
    return min(n - 1, cap)


def decide(count, n_th: int):
    """Hypothesis index for a photon count: 1 if ``count <= n_th`` else 0."""
    return np.where(np.asarray(count) <= n_th, 1, 0) if np.ndim(count) else int(count <= n_th)


def receiver_error(problem: DiscriminationProblem, config: ReceiverConfig) -> float:
    """Error probability of displacement by ``beta`` followed by the threshold test.

    ``p0 P(n <= n_th | rho0) + p1 P(n > n_th | rho1)`` using the photon
    statistics of the displaced states. No optimality claim unless
    ``beta = -mu = -xi``.
    """
    if config.n_th < 0:
        return problem.p1
    size = config.n_th + 1
    q0 = photon_statistics(problem.state0.displaced(config.beta), size, tol=None)
    q1 = photon_statistics(problem.state1.displaced(config.beta), size, tol=None)
    return float(problem.p0 * q0.sum() + problem.p1 * (1.0 - q1.sum()))


def kennedy_error(problem: DiscriminationProblem, n_th: int) -> float:
    """Error probability of the Kennedy receiver with ``beta = -mu`` at threshold ``n_th``."""
    _check_same_displacement(problem)
    pr = problem.normalized()
    return receiver_error(pr, ReceiverConfig(beta=-pr.state1.mu, n_th=n_th))


def simulate(
    problem: DiscriminationProblem,
    n_th: int,
    trials: int,
    seed: int = 0,
    beta: complex | None = None,
) -> float:
    """Monte Carlo error rate of the threshold receiver.

    Each trial draws the true hypothesis from the priors, a photon count from
    that hypothesis' displaced distribution by inverse CDF (truncated and
    renormalized), and applies :func:`decide`. Trials run in fixed-size
    chunks, each with its own child stream of ``SeedSequence(seed)``, so the
    result depends only on ``(seed, trials)``.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    pr = problem.normalized()
    if beta is None:
        beta = -pr.state1.mu
    states = [pr.state0.displaced(beta), pr.state1.displaced(beta)]
    dim = choose_dim(states, 1e-13)
    cdfs = []
    for s in states:
        cdf = np.cumsum(photon_statistics(s, dim, tol=None))
        cdfs.append(cdf / cdf[-1])
    n_chunks = -(-trials // CHUNK)
    errors = 0
    for c, child in enumerate(np.random.SeedSequence(seed).spawn(n_chunks)):
        rng = np.random.default_rng(child)
        size = min(CHUNK, trials - c * CHUNK)
        truth = (rng.random(size) < pr.p1).astype(int)
        u = rng.random(size)
        counts = np.where(
            truth == 1,
            np.searchsorted(cdfs[1], u, side="right"),
            np.searchsorted(cdfs[0], u, side="right"),
        )
        errors += int(np.count_nonzero(decide(counts, n_th) != truth))
    return errors / trials
