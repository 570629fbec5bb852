"""Discrimination of noisy displaced number states in a truncated Fock basis."""

__version__ = "0.1.0"

from .discrimination import (
    DiscriminationProblem,
    EigenvalueSpectrum,
    closed_form_eigenvalues,
    helstrom_closed_form,
    helstrom_general,
    helstrom_pure,
)
from .errors import IntegrityError, TruncationError
from .fock import DensityMatrix, EigenSystem, FockVector, choose_dim, displacement_matrix, eigh
from .receiver import ReceiverConfig, decide, kennedy_error, optimal_threshold, simulate
from .states import DnsParams, mean_photons, noiseless_dns, noisy_dns, photon_statistics, thermal_state

__all__ = [
    "DensityMatrix",
    "DiscriminationProblem",
    "DnsParams",
    "EigenSystem",
    "EigenvalueSpectrum",
    "FockVector",
    "IntegrityError",
    "ReceiverConfig",
    "TruncationError",
    "choose_dim",
    "closed_form_eigenvalues",
    "decide",
    "displacement_matrix",
    "eigh",
    "helstrom_closed_form",
    "helstrom_general",
    "helstrom_pure",
    "kennedy_error",
    "mean_photons",
    "noiseless_dns",
    "noisy_dns",
    "optimal_threshold",
    "photon_statistics",
    "simulate",
    "thermal_state",
]
