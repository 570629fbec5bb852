"""Truncated Fock-space linear algebra.

Vectors and matrices live on the photon-number basis ``|0>, ..., |N-1>``.
Displacement matrix elements are built entry by entry from the closed form
in terms of Laguerre polynomials, never by exponentiating the truncated
generator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import TruncationError
from .specfun import laguerre_table, log_factorial_array

TAU_TRUNC = 1e-10
DIM_CAP = 4096
HERMITIAN_TOL = 1e-10


@dataclass(frozen=True)
class FockVector:
    amp: np.ndarray

    @property
    def dim(self) -> int:
        return self.amp.shape[0]

    def norm2(self) -> float:
        return float(np.vdot(self.amp, self.amp).real)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.amp, dtype=dtype)


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian operator on the truncated space.

    Physical states carry unit trace up to the truncation tail; decision
    operators are stored the same way without the trace condition.
    """

    elem: np.ndarray

    @property
    def dim(self) -> int:
        return self.elem.shape[0]

    def trace(self) -> float:
        return float(np.trace(self.elem).real)

    def hermiticity_error(self) -> float:
        return float(np.max(np.abs(self.elem - self.elem.conj().T), initial=0.0))

    def check_physical(self, tol: float = TAU_TRUNC) -> None:
        """Raise ``ValueError`` unless Hermitian, PSD and trace in ``[1 - tol, 1 + 1e-12]``."""
        if self.hermiticity_error() > 1e-12:
            raise ValueError("density matrix is not Hermitian")
        tr = self.trace()
        if not (1.0 - tol <= tr <= 1.0 + 1e-12):
            raise ValueError(f"trace {tr!r} outside [1 - {tol}, 1]")
        if np.linalg.eigvalsh(self.elem)[0] < -1e-10:
            raise ValueError("density matrix has a negative eigenvalue")

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.elem, dtype=dtype)


@dataclass(frozen=True)
class EigenSystem:
    values: np.ndarray
    vectors: np.ndarray


def number_operator(dim: int) -> np.ndarray:
    return np.diag(np.arange(dim, dtype=float))


def annihilation(dim: int) -> np.ndarray:
    """Truncated lowering operator, ``a|n> = sqrt(n)|n-1>``."""
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), k=1)


def creation(dim: int) -> np.ndarray:
    return annihilation(dim).T.copy()


def phase_rotation(theta: float, dim: int) -> np.ndarray:
    """``R(theta) = exp(i theta n)``; maps ``rho(mu, k)`` to ``rho(mu e^{i theta}, k)``."""
    return np.diag(np.exp(1j * theta * np.arange(dim)))


def _displacement_block(mu: complex, rows: int, cols: int) -> np.ndarray:
    """Entries ``<h|D(mu)|k>`` for ``h < rows``, ``k < cols``."""
    mu = complex(mu)
    if mu == 0:
        return np.eye(rows, cols, dtype=complex)
    r = abs(mu)
    theta = math.atan2(mu.imag, mu.real)
    x = r * r
    size = max(rows, cols)
    # T[p, a] = L_p^{(a)}(|mu|^2); entry (h, k) uses L_min^{(|h-k|)}
    table = laguerre_table(min(rows, cols) - 1, size - 1, x)
    h, k = np.meshgrid(np.arange(rows), np.arange(cols), indexing="ij")
    lo = np.minimum(h, k)
    gap = np.abs(h - k)
    lag = table[lo, gap]
    lf = log_factorial_array(np.arange(size))
    with np.errstate(divide="ignore"):
        logmag = 0.5 * (lf[lo] - lf[lo + gap]) + gap * math.log(r) - 0.5 * x + np.log(np.abs(lag))
    mag = np.sign(lag) * np.exp(logmag)
    # h >= k: mu^{h-k};  h < k: (-mu*)^{k-h}
    phase = np.where(h >= k, np.exp(1j * gap * theta), (-1.0) ** gap * np.exp(-1j * gap * theta))
    return mag * phase


def displacement_matrix(mu: complex, dim: int) -> np.ndarray:
    """Truncated displacement operator ``D(mu)`` as an ``N x N`` complex matrix.

    Entry ``(h, k)`` with ``h >= k`` is
    ``sqrt(k!/h!) mu^{h-k} exp(-|mu|^2/2) L_k^{(h-k)}(|mu|^2)``; entries above
    the diagonal follow from ``D(mu)^dagger = D(-mu)``.
    """
    if dim < 1:
        raise ValueError("dim must be >= 1")
    return _displacement_block(mu, dim, dim)


def displacement_column(mu: complex, k: int, dim: int) -> np.ndarray:
    """Column ``D(mu)|k>`` truncated to ``dim`` entries."""
    if not 0 <= k < dim:
        raise ValueError(f"need 0 <= k < dim, got k={k}, dim={dim}")
    return _displacement_block(mu, dim, k + 1)[:, k]


def choose_dim(params, tol: float = TAU_TRUNC, cap: int = DIM_CAP) -> int:
    """Smallest truncation holding every listed state to tail mass below ``tol``.

    Parameters
    ----------
    params : iterable of DnsParams
    tol : float
        Allowed photon-number tail mass beyond ``N - 1``, in ``(0, 1e-3]``.
    cap : int
        Hard upper bound on the returned dimension.

    Returns
    -------
    int
        Max over states of the smallest ``N'`` with ``sum_{n >= N'} p(n) < tol``.
    """
    # imported here: states depends on this module
    from .states import _diagonal, mean_photons

    if not 0 < tol <= 1e-3:
        raise ValueError(f"tol must lie in (0, 1e-3], got {tol}")
    best = 1
    for p in params:
        n_p = mean_photons(p)
        trial = min(math.ceil(n_p + 10.0 * math.sqrt(n_p + 1.0) + p.k + 10), cap)
        while True:
            tail = 1.0 - np.cumsum(_diagonal(p, trial))
            hits = np.nonzero(tail < tol)[0]
            if hits.size:
                best = max(best, int(hits[0]) + 1)
                break
            if trial >= cap:
                raise TruncationError(f"{p} needs more than {cap} Fock levels at tol={tol}")
            trial = min(2 * trial, cap)
    return best


def eigh(mat) -> EigenSystem:
    """Eigendecomposition of a Hermitian matrix, values ascending."""
    m = np.asarray(mat)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("eigh needs a square matrix")
    if np.max(np.abs(m - m.conj().T), initial=0.0) > HERMITIAN_TOL:
        raise ValueError("eigh needs a Hermitian matrix")
    values, vectors = np.linalg.eigh(m)
    return EigenSystem(values=values, vectors=vectors)


def _eigvalsh(mat) -> np.ndarray:
    m = np.asarray(mat)
    if np.max(np.abs(m - m.conj().T), initial=0.0) > HERMITIAN_TOL:
        raise ValueError("expected a Hermitian matrix")
    return np.linalg.eigvalsh(m)


def trace_norm(mat) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    return float(np.sum(np.abs(_eigvalsh(mat))))


def positive_eigen_sum(mat) -> float:
    """Sum of the strictly positive eigenvalues of a Hermitian matrix."""
    lam = _eigvalsh(mat)
    return float(np.sum(lam[lam > 0]))
