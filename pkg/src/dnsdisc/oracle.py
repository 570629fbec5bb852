"""Brute-force operator-algebra constructions for validation.

Nothing here touches Laguerre polynomials or the closed-form Fock
representation: states are built from ladder matrices, the displacement
operator as a dense exponential of its truncated generator, and bounds from a raw
eigendecomposition. Everything is computed in an enlarged basis and cropped
only after all operator products.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.linalg import expm

from .errors import TruncationError
from .fock import DIM_CAP, DensityMatrix, annihilation, creation, displacement_matrix


def headroom_dim(params, dim: int, margin: int = 16) -> int:
    """Working dimension for brute-force products: ``dim + 4k + ceil(8|mu|) + margin``."""
    return dim + 4 * params.k + math.ceil(8 * abs(params.mu)) + margin


def oracle_displacement(alpha: complex, dim: int) -> np.ndarray:
    """``exp(alpha a^dag - alpha* a)`` by dense matrix exponential, cropped to ``dim``.

    The generator is truncated at ``dim + 16 + ceil(4 |alpha| sqrt(dim + 16))``
    levels so the boundary error never reaches the returned block.
    """
    alpha = complex(alpha)
    big = dim + 16 + math.ceil(4 * abs(alpha) * math.sqrt(dim + 16))
    a = annihilation(big)
    return expm(alpha * a.T - alpha.conjugate() * a)[:dim, :dim]


def oracle_noisy_dns(params, dim: int, *, margin: int = 16, return_norm: bool = False):
    """``D(mu) (a^dag)^k rho_th a^k D(mu)^dag`` normalized by its own trace.

    Parameters
    ----------
    params : DnsParams
    dim : int
        Size of the returned (cropped) matrix.
    margin : int
        Extra levels on top of the ``4k + ceil(8|mu|)`` headroom.
    return_norm : bool
        Also return the trace before normalization.
    """
    big = headroom_dim(params, dim, margin)
    if big > DIM_CAP:
        raise TruncationError(f"oracle headroom {big} exceeds cap {DIM_CAP}")
    nt = params.nt
    n = np.arange(big)
    if nt == 0:
        pth = (n == 0).astype(float)
    else:
        pth = (nt / (nt + 1.0)) ** n / (nt + 1.0)
    sigma = np.diag(pth).astype(complex)
    ad = creation(big)
    for _ in range(params.k):
        sigma = ad @ sigma @ ad.T
    d = oracle_displacement(params.mu, big)
    full = d @ sigma @ d.conj().T
    norm = float(np.trace(full).real)
    rho = DensityMatrix((full / norm)[:dim, :dim])
    if return_norm:
        return rho, norm
    return rho


def oracle_noiseless_dns(mu: complex, k: int, dim: int, margin: int = 16) -> np.ndarray:
    big = dim + math.ceil(8 * abs(mu)) + margin
    return oracle_displacement(mu, big)[:dim, k]


def oracle_mean_photons(rho) -> float:
    """``tr(rho a^dag a) = sum_n n rho_nn``."""
    diag = np.real(np.diagonal(np.asarray(rho)))
    return float(np.dot(np.arange(diag.size), diag))


def oracle_helstrom(problem, dim: int) -> float:
    """Helstrom error from brute-force states, no displacement reduction."""
    rho0 = oracle_noisy_dns(problem.state0, dim).elem
    rho1 = oracle_noisy_dns(problem.state1, dim).elem
    delta = problem.p1 * rho1 - problem.p0 * rho0
    lam = np.linalg.eigvalsh(0.5 * (delta + delta.conj().T))
    return float(problem.p1 - lam[lam > 0].sum())


def oracle_commutators(dim: int, alphas=(0.3, 0.7 + 0.2j, 1.5), displacement=displacement_matrix) -> float:
    """Worst deviation of the ladder/displacement commutators on the guarded block.

    Checks ``[a, D] = alpha D``, ``[a^dag, D] = alpha* D`` and ``[a, a^dag] = I``
    over the top-left ``dim//2`` block, where truncation does not reach.
    """
    if dim < 16:
        raise ValueError("oracle_commutators needs dim >= 16")
    g = dim // 2
    a = annihilation(dim)
    ad = a.T
    worst = float(np.max(np.abs((a @ ad - ad @ a)[:g, :g] - np.eye(g))))
    for alpha in alphas:
        alpha = complex(alpha)
        d = displacement(alpha, dim)
        lhs1 = (a @ d - d @ a)[:g, :g]
        lhs2 = (ad @ d - d @ ad)[:g, :g]
        worst = max(
            worst,
            float(np.max(np.abs(lhs1 - alpha * d[:g, :g]))),
            float(np.max(np.abs(lhs2 - alpha.conjugate() * d[:g, :g]))),
        )
    return worst
