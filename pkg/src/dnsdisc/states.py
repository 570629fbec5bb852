"""Number, coherent, thermal and (noisy) displaced number states.

A noisy displaced number state ``rho(mu, k)`` is the thermal state with mean
occupation ``nt``, photon-added ``k`` times, normalized and displaced by
``mu``. Its Fock matrix elements have a closed form as a double sum over
Laguerre polynomials of argument ``-|mu|^2 / (nt (nt + 1))``; that sum is
evaluated in log magnitude with an explicit sign and phase.

At ``nt = 0`` the Laguerre argument is singular and the state is pure, so
every constructor routes to the outer product of the noiseless amplitudes.
Very small positive ``nt`` (below ~1e-6) loses accuracy to cancellation in
the double sum; nothing here guards against it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import IntegrityError, TruncationError
from .fock import TAU_TRUNC, DensityMatrix, FockVector, displacement_column
from .specfun import laguerre, laguerre_table, log_factorial, log_factorial_array

NEGATIVE_CLIP = 1e-12


@dataclass(frozen=True)
class DnsParams:
    """Displacement ``mu``, photon-addition count ``k``, thermal occupation ``nt``."""

    mu: complex = 0j
    k: int = 0
    nt: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "mu", complex(self.mu))
        if int(self.k) != self.k or self.k < 0:
            raise ValueError(f"k must be a non-negative integer, got {self.k!r}")
        object.__setattr__(self, "k", int(self.k))
        if not self.nt >= 0:
            raise ValueError(f"nt must be >= 0, got {self.nt!r}")
        object.__setattr__(self, "nt", float(self.nt))

    def displaced(self, nu: complex) -> DnsParams:
        return DnsParams(self.mu + nu, self.k, self.nt)


def mean_photons(params: DnsParams) -> float:
    """Mean photon number ``|mu|^2 + k (nt + 1) + nt``."""
    return abs(params.mu) ** 2 + params.k * (params.nt + 1.0) + params.nt


def noiseless_dns(mu: complex, k: int, dim: int, tol: float | None = TAU_TRUNC) -> FockVector:
    """Amplitudes of ``D(mu)|k>`` on the first ``dim`` number states.

    Raises
    ------
    TruncationError
        If the retained norm is below ``1 - tol`` (skip with ``tol=None``).
    """
    if k >= dim:
        raise TruncationError(f"k={k} does not fit in dim={dim}")
    vec = FockVector(displacement_column(mu, k, dim))
    if tol is not None and vec.norm2() < 1.0 - tol:
        raise TruncationError(f"dim={dim} keeps norm {vec.norm2():.3e} of D({mu})|{k}>")
    return vec


def dns_inner_product(xi: complex, h: int, mu: complex, k: int) -> complex:
    """Overlap ``<xi, h | mu, k>`` of two noiseless displaced number states.

    The modulus is ``sqrt(k!/h!) |d|^{h-k} exp(-|d|^2/2) |L_k^{(h-k)}(|d|^2)|``
    with ``d = mu - xi`` (for ``h >= k``). The returned value also carries
    the global phase ``exp(i Im(xi* mu))`` from composing two displacements,
    so it equals the vector inner product exactly.
    """
    if h < k:
        return dns_inner_product(mu, k, xi, h).conjugate()
    xi, mu = complex(xi), complex(mu)
    d = mu - xi
    x = abs(d) ** 2
    lag = laguerre(k, h - k, x)
    if lag == 0.0 or (d == 0 and h != k):
        return 0j
    logmag = 0.5 * (log_factorial(k) - log_factorial(h)) - 0.5 * x + math.log(abs(lag))
    if h != k:
        logmag += (h - k) * math.log(abs(d))
    unit = (d / abs(d)) ** (h - k) if h != k else 1.0
    phase = np.exp(1j * (xi.conjugate() * mu).imag)
    return complex(math.copysign(math.exp(logmag), lag) * unit * phase)


def thermal_state(nt: float, dim: int) -> DensityMatrix:
    """Diagonal thermal state, ``p(n) = nt^n / (nt + 1)^{n+1}``."""
    if nt < 0:
        raise ValueError(f"nt must be >= 0, got {nt}")
    n = np.arange(dim)
    if nt == 0:
        p = (n == 0).astype(float)
    else:
        p = np.exp(n * math.log(nt) - (n + 1) * math.log1p(nt))
    return DensityMatrix(np.diag(p).astype(complex))


def _xlog(c, v):
    """``c * log(v)`` with ``0 * log(0) = 0``."""
    c = np.asarray(c, dtype=float)
    if v > 0:
        return c * math.log(v)
    return np.where(c == 0, 0.0, -np.inf)


def _fock_entries(params: DnsParams, n: np.ndarray, m: np.ndarray) -> np.ndarray:
    """``<n|rho(mu,k)|m>`` for index arrays with ``n <= m`` elementwise, ``nt > 0``."""
    mu, k, nt = params.mu, params.k, params.nt
    r = abs(mu)
    theta = math.atan2(mu.imag, mu.real)
    x = -(r * r) / (nt * (nt + 1.0))
    gap = m - n
    n_top = int(n.max(initial=0))
    table = laguerre_table(n_top, int(gap.max(initial=0)) + k, x)
    with np.errstate(divide="ignore"):
        log_table = np.log(np.abs(table))
    if not np.all(np.isfinite(table)):
        raise IntegrityError("Laguerre table overflowed; reduce dim or |mu|")
    sign_table = np.sign(table)
    lf = log_factorial_array(np.arange(int(m.max(initial=0)) + k + 1))
    log_nt, log_nt1 = math.log(nt), math.log1p(nt)
    common = -(r * r) / (nt + 1.0) + 0.5 * (lf[n] - lf[m])

    acc = np.zeros(n.shape)
    for i in range(k + 1):
        log_ck_i = log_factorial(k) - log_factorial(i) - log_factorial(k - i)
        for j in range(k + 1):
            mask = (n >= i) & (m >= j)
            if not mask.any():
                continue
            order = np.where(mask, n - i, 0)
            a = np.where(mask, gap + i - j, 0)
            mj = np.where(mask, m - j, 0)
            # reflection for negative parameter: L_p^{(-s)} = (-x)^s (p-s)!/p! L_{p-s}^{(s)}
            s = np.maximum(-a, 0)
            base = order - s
            log_lag = log_table[base, np.abs(a)] + lf[base] - lf[order] + _xlog(s, -x if x < 0 else 0.0)
            sign_lag = sign_table[base, np.abs(a)]
            log_term = (
                log_ck_i
                + (lf[np.where(mask, m, 0)] - lf[j] - lf[mj])
                - lf[k - j]
                + common
                + _xlog(2 * (k - j) + gap, r)
                + (n - i) * log_nt
                - (m + k - j + 1) * log_nt1
                + log_lag
            )
            with np.errstate(over="ignore"):
                term = np.where(mask, sign_lag * np.exp(np.where(mask, log_term, -np.inf)), 0.0)
            acc += term if (i + j) % 2 == 0 else -term
    return acc * np.exp(-1j * gap * theta)


def _diagonal(params: DnsParams, dim: int) -> np.ndarray:
    """Unchecked photon-number distribution on ``0 .. dim-1``."""
    if params.nt == 0:
        amp = displacement_column(params.mu, params.k, max(dim, params.k + 1))[:dim]
        return np.abs(amp) ** 2
    n = np.arange(dim)
    return _fock_entries(params, n, n).real


def noisy_dns(params: DnsParams, dim: int, tol: float | None = TAU_TRUNC) -> DensityMatrix:
    """Truncated density matrix of the noisy displaced number state.

    Entries with ``n <= m`` come from the closed-form double sum; the lower
    triangle is filled by Hermitian symmetry. ``nt = 0`` returns the pure
    outer product.

    Raises
    ------
    TruncationError
        If the retained trace falls below ``1 - tol`` (skip with ``tol=None``).
    """
    if params.nt == 0:
        vec = noiseless_dns(params.mu, params.k, max(dim, params.k + 1), tol=None).amp[:dim]
        rho = np.outer(vec, vec.conj())
    else:
        n, m = np.triu_indices(dim)
        upper = _fock_entries(params, n, m)
        rho = np.zeros((dim, dim), dtype=complex)
        rho[n, m] = upper
        rho[m, n] = upper.conj()
        rho[np.diag_indices(dim)] = rho.diagonal().real
    out = DensityMatrix(rho)
    if tol is not None and out.trace() < 1.0 - tol:
        raise TruncationError(f"dim={dim} keeps trace {out.trace():.3e} of {params}")
    return out


def photon_statistics(params: DnsParams, dim: int, tol: float | None = TAU_TRUNC) -> np.ndarray:
    """Photon-number distribution ``p(n) = <n|rho(mu,k)|n>`` for ``n < dim``.

    Negative entries down to ``-1e-12`` are rounding and get clipped to zero;
    anything more negative raises :class:`IntegrityError`.
    """
    p = _diagonal(params, dim)
    if np.any(p < -NEGATIVE_CLIP):
        raise IntegrityError(f"negative photon probability {p.min():.3e} for {params}")
    p = np.clip(p, 0.0, None)
    if tol is not None and p.sum() < 1.0 - tol:
        raise TruncationError(f"dim={dim} keeps mass {p.sum():.3e} of {params}")
    return p
