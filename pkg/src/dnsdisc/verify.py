"""Oracle-versus-closed-form checks over a pinned parameter grid."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .discrimination import DiscriminationProblem, helstrom_closed_form, helstrom_general, helstrom_pure
from .fock import choose_dim
from .oracle import oracle_commutators, oracle_helstrom, oracle_mean_photons, oracle_noisy_dns
from .states import DnsParams, mean_photons, noisy_dns

TOLERANCES = {
    "fock_representation": 1e-10,
    "normalization": 1e-8,
    "mean_photons": 1e-7,
    "helstrom_vs_oracle": 1e-9,
    "closed_vs_general": 1e-9,
    "pure_vs_general": 1e-9,
    "commutators": 1e-8,
}

GRID_MUS = (0.0, 0.5, 1.0 + 0.5j, -0.7 + 1.2j, 2.0j, math.sqrt(2) * (1 - 1j), -2.0)
GRID_NTS = (0.1, 0.3, 1.0)
GRID_KS = (0, 1, 2, 3, 4)


@dataclass(frozen=True)
class Grid:
    mus: tuple = GRID_MUS
    nts: tuple = GRID_NTS
    ks: tuple = GRID_KS
    commutator_alphas: tuple = (0.3, 0.7 + 0.2j, 1.5)

    def states(self):
        return [DnsParams(mu, k, nt) for nt in self.nts for mu in self.mus for k in self.ks]


PRESETS = {
    "default": Grid(),
    "quick": Grid(mus=(0.5, 1.0 + 0.5j), nts=(0.3,), ks=(0, 2)),
    "empty": Grid(mus=(), nts=(), ks=(), commutator_alphas=()),
}


@dataclass
class CheckResult:
    name: str
    tol: float
    count: int = 0
    worst: float = 0.0
    worst_point: str = ""
    failures: list = field(default_factory=list)

    def add(self, deviation: float, point: str):
        self.count += 1
        if deviation > self.worst or self.count == 1:
            self.worst, self.worst_point = deviation, point
        if not deviation < self.tol:
            self.failures.append((point, deviation))

    @property
    def passed(self) -> bool:
        return not self.failures


def run_checks(grid: Grid = PRESETS["default"], tol_override: float | None = None) -> list[CheckResult]:
    """Run every check over ``grid``; ``tol_override`` replaces all tolerances."""
    results = {
        name: CheckResult(name, tol if tol_override is None else tol_override)
        for name, tol in TOLERANCES.items()
    }
    for p in grid.states():
        dim = choose_dim([p])
        rho = noisy_dns(p, dim).elem
        oracle, norm = oracle_noisy_dns(p, dim, return_norm=True)
        tag = f"mu={p.mu} k={p.k} nt={p.nt} dim={dim}"
        results["fock_representation"].add(float(np.max(np.abs(rho - oracle.elem))), tag)
        expected = math.factorial(p.k) * (p.nt + 1.0) ** p.k
        results["normalization"].add(abs(norm / expected - 1.0), tag)
        results["mean_photons"].add(abs(oracle_mean_photons(oracle) - mean_photons(p)), tag)

    for nt in grid.nts:
        for mu in grid.mus:
            for k in grid.ks:
                for h in grid.ks:
                    if h < k or h > k + 2:
                        continue
                    pair = DiscriminationProblem(DnsParams(0.3, h, nt), DnsParams(mu, k, nt))
                    red = pair.reduced()
                    dim = choose_dim([pair.state0, pair.state1, red.state0, red.state1])
                    tag = f"xi=0.3 h={h} mu={mu} k={k} nt={nt}"
                    results["helstrom_vs_oracle"].add(
                        abs(helstrom_general(pair) - oracle_helstrom(pair, dim)), tag
                    )
                    same = DiscriminationProblem(DnsParams(mu, h, nt), DnsParams(mu, k, nt))
                    results["closed_vs_general"].add(
                        abs(helstrom_closed_form(same) - helstrom_general(same)), tag
                    )
                    pure = DiscriminationProblem(DnsParams(0.3, h, 0.0), DnsParams(mu, k, 0.0))
                    results["pure_vs_general"].add(
                        abs(helstrom_pure(pure) - helstrom_general(pure)), tag
                    )

    if grid.commutator_alphas:
        results["commutators"].add(oracle_commutators(64, grid.commutator_alphas), "dim=64")
    return list(results.values())
