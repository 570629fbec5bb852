"""Minimum error probability for telling two displaced number states apart.

Three routes:

* :func:`helstrom_general` diagonalizes the decision operator
  ``p1 rho1 - p0 rho0`` in a truncated basis and works for any pair;
* :func:`helstrom_pure` uses the pure-state overlap formula (``nt = 0``);
* :func:`helstrom_closed_form` sums the diagonal eigenvalues available when
  both states share the same displacement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import IntegrityError
from .fock import TAU_TRUNC, choose_dim
from .specfun import log_binomial
from .states import DnsParams, dns_inner_product, noisy_dns

PRIOR_TOL = 1e-12
EQ_FORMS_TOL = 1e-9


@dataclass(frozen=True)
class DiscriminationProblem:
    """Hypothesis 0 is ``rho(xi, h)`` with prior ``p0``; hypothesis 1 is ``rho(mu, k)``.

    ``p1`` defaults to ``1 - p0``.
    """

    state0: DnsParams
    state1: DnsParams
    p0: float = 0.5
    p1: float | None = None

    def __post_init__(self):
        p0 = float(self.p0)
        p1 = 1.0 - p0 if self.p1 is None else float(self.p1)
        if p0 < 0 or p1 < 0 or abs(p0 + p1 - 1.0) > PRIOR_TOL:
            raise ValueError(f"priors must be non-negative and sum to 1, got ({p0}, {p1})")
        object.__setattr__(self, "p0", p0)
        object.__setattr__(self, "p1", p1)

    def swapped(self) -> DiscriminationProblem:
        return DiscriminationProblem(self.state1, self.state0, self.p1, self.p0)

    def normalized(self) -> DiscriminationProblem:
        """Same problem with hypotheses ordered so that ``h >= k``."""
        return self.swapped() if self.state0.k < self.state1.k else self

    @property
    def same_displacement(self) -> bool:
        return self.state0.mu == self.state1.mu

    def reduced(self) -> DiscriminationProblem:
        """Displace both states by ``-xi`` and rotate the remainder onto the real axis.

        Both maps are unitary, so every error probability is unchanged.
        """
        d = abs(self.state1.mu - self.state0.mu)
        return replace(
            self,
            state0=DnsParams(0.0, self.state0.k, self.state0.nt),
            state1=DnsParams(d, self.state1.k, self.state1.nt),
        )


@dataclass(frozen=True)
class EigenvalueSpectrum:
    lam: np.ndarray


def helstrom_pure(problem: DiscriminationProblem) -> float:
    """Helstrom bound for two noiseless displaced number states.

    ``1/2 - 1/2 sqrt(1 - 4 p0 p1 |<psi0|psi1>|^2)``, rearranged to avoid
    cancellation when the overlap is small.
    """
    s0, s1 = problem.state0, problem.state1
    if s0.nt != 0 or s1.nt != 0:
        raise ValueError("helstrom_pure needs nt = 0 on both states")
    ov = abs(dns_inner_product(s0.mu, s0.k, s1.mu, s1.k))
    z = min(4.0 * problem.p0 * problem.p1 * ov * ov, 1.0)
    return z / (2.0 * (1.0 + math.sqrt(1.0 - z)))


def decision_operator(problem: DiscriminationProblem, dim: int) -> np.ndarray:
    rho0 = noisy_dns(problem.state0, dim, tol=None).elem
    rho1 = noisy_dns(problem.state1, dim, tol=None).elem
    return problem.p1 * rho1 - problem.p0 * rho0


def helstrom_general(
    problem: DiscriminationProblem,
    dim: int | None = None,
    tol: float = TAU_TRUNC,
    reduce: bool = True,
) -> float:
    """Helstrom bound by eigendecomposition of the decision operator.

    Parameters
    ----------
    problem : DiscriminationProblem
    dim : int, optional
        Truncation; chosen by :func:`~dnsdisc.fock.choose_dim` at ``tol`` if omitted.
    tol : float
        Tail mass allowed when choosing ``dim``.
    reduce : bool
        Shift to ``xi = 0`` and rotate to real ``mu - xi`` first (real symmetric
        matrices). ``False`` builds the complex problem as given.

    Raises
    ------
    IntegrityError
        If ``p1 - sum(lambda > 0)`` and ``(1 - ||Delta||_1) / 2`` differ by
        more than 1e-9, which means the truncation lost too much trace.

    Notes
    -----
    The result is clipped to ``[0, min(p0, p1)]``.
    """
    work = problem.reduced() if reduce else problem
    if dim is None:
        dim = choose_dim([work.state0, work.state1], tol)
    delta = decision_operator(work, dim)
    if reduce:
        delta = delta.real
    lam = np.linalg.eigvalsh(delta)
    pe_positive = problem.p1 - lam[lam > 0].sum()
    pe_norm = 0.5 * (1.0 - np.abs(lam).sum())
    if abs(pe_positive - pe_norm) > EQ_FORMS_TOL:
        raise IntegrityError(
            f"Helstrom forms disagree ({pe_positive!r} vs {pe_norm!r}) at dim={dim}"
        )
    # truncation tail can push the estimate just outside its exact range
    return float(min(max(pe_positive, 0.0), problem.p0, problem.p1))


def _log_weight(n, order, prior, nt):
    """``log(prior C(n, order) nt^{n-order} / (nt+1)^{n+1})``, ``-inf`` when zero."""
    if n < order or prior == 0:
        return -math.inf
    if nt == 0:
        return math.log(prior) if n == order else -math.inf
    return math.log(prior) + log_binomial(n, order) + (n - order) * math.log(nt) - (n + 1) * math.log1p(nt)


def threshold_holds(n: int, problem: DiscriminationProblem) -> bool:
    """Whether ``lambda_n >= 0`` for a same-displacement problem with ``h >= k``.

    For ``n >= h`` this is ``C(n,k) nt^{h-k} >= C(n,h) p0/p1`` in log form;
    below ``h`` it always holds. Equality counts as holding. Shared by the
    closed-form bound and the receiver threshold so both agree on ties.
    """
    k, h, nt = problem.state1.k, problem.state0.k, problem.state1.nt
    if n < h:
        return True
    if problem.p0 == 0:
        return True
    if problem.p1 == 0:
        return False
    if h == k:
        noise = 0.0
    elif nt == 0:
        return False
    else:
        noise = (h - k) * math.log(nt)
    lhs = math.log(problem.p1) + log_binomial(n, k) + noise
    rhs = math.log(problem.p0) + log_binomial(n, h)
    return lhs >= rhs


def _check_same_displacement(problem):
    if not problem.same_displacement:
        raise ValueError("closed form needs equal displacements (xi == mu)")
    if problem.state0.nt != problem.state1.nt:
        raise ValueError("closed form needs a shared thermal occupation nt")


def closed_form_eigenvalues(problem: DiscriminationProblem, n_max: int) -> EigenvalueSpectrum:
    """Eigenvalues ``lambda_0 .. lambda_{n_max}`` of the decision operator when ``xi == mu``.

    After displacing by ``-mu`` both states are diagonal, so

        lambda_n = p1 C(n,k) nt^{n-k}/(nt+1)^{n+1} - p0 C(n,h) nt^{n-h}/(nt+1)^{n+1}

    with each binomial term present only when ``n`` reaches its order. The
    difference is taken as ``-A expm1(log B - log A)`` so its sign survives
    near the crossing.
    """
    _check_same_displacement(problem)
    pr = problem.normalized()
    k, h, nt = pr.state1.k, pr.state0.k, pr.state1.nt
    lam = np.zeros(n_max + 1)
    for n in range(n_max + 1):
        la = _log_weight(n, k, pr.p1, nt)
        lb = _log_weight(n, h, pr.p0, nt)
        if la == -math.inf:
            lam[n] = -math.exp(lb)
        elif lb == -math.inf:
            lam[n] = math.exp(la)
        else:
            lam[n] = -math.exp(la) * math.expm1(lb - la)
    return EigenvalueSpectrum(lam)


def helstrom_closed_form(problem: DiscriminationProblem, n_max: int | None = None) -> float:
    """Helstrom bound for equal displacements: ``p1 - sum_{n <= n_th} lambda_n``.

    ``n_th`` is the receiver's optimal threshold; ``n_max`` caps it when the
    non-negative run of eigenvalues never ends (``h == k`` with ``p1 >= p0``).
    """
    from .receiver import optimal_threshold

    pr = problem.normalized()
    n_th = optimal_threshold(pr, n_max=n_max)
    if n_th < 0:
        return pr.p1
    lam = closed_form_eigenvalues(pr, n_th).lam
    return float(pr.p1 - lam.sum())
