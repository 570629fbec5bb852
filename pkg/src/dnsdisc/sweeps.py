"""Grid points, per-point evaluation and the figure grids behind the CLI."""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields

from .discrimination import (
    DiscriminationProblem,
    helstrom_closed_form,
    helstrom_general,
    helstrom_pure,
)
from .errors import IntegrityError
from .fock import TAU_TRUNC, choose_dim
from .receiver import kennedy_error, optimal_threshold, simulate
from .states import DnsParams, mean_photons

PURE_TOL = 1e-9
CLOSED_TOL = 1e-9
KENNEDY_TOL = 1e-12
MC_SIGMAS = 5.0

FIG_PAIRS = ((0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 3))
FIG_DMAX = 4.0
FIG_DSTEP = 0.05
FIG3_KS = (0, 1, 2, 3)
FIG3_GAPS = tuple(range(7))
OOK_HS = tuple(range(1, 9))
OOK_NTS = (0.1, 0.2, 0.5)
ENERGY_RULE = "|alpha|^2 = h (nt + 1): p0 n_p(0,h) + p1 n_p(0,0) = p0 n_p(alpha,0) + p1 n_p(0,0), p0 = p1 = 1/2"


@dataclass(frozen=True)
class Point:
    state0: DnsParams
    state1: DnsParams
    p0: float = 0.5
    dim: int | None = None
    tol: float = TAU_TRUNC
    trials: int | None = None
    seed: int = 0


@dataclass
class SweepResult:
    xi_re: float
    xi_im: float
    h: int
    nt0: float
    mu_re: float
    mu_im: float
    k: int
    nt1: float
    p0: float
    dim: int | None = None
    n_th: int | None = None
    pe_pure: float | None = None
    pe_general: float | None = None
    pe_closed: float | None = None
    pe_kennedy: float | None = None
    pe_mc: float | None = None
    wall_ms: float | None = None

    @classmethod
    def columns(cls, timing: bool = False) -> list[str]:
        names = [f.name for f in fields(cls)]
        return names if timing else names[:-1]

    def row(self, timing: bool = False) -> list:
        return [getattr(self, name) for name in self.columns(timing)]


def evaluate(point: Point) -> SweepResult:
    """Every applicable error probability for one point, cross-checked.

    Raises
    ------
    IntegrityError
        If two applicable methods disagree beyond their tolerance.
    """
    start = time.perf_counter()
    s0, s1 = point.state0, point.state1
    problem = DiscriminationProblem(s0, s1, point.p0)
    out = SweepResult(
        s0.mu.real, s0.mu.imag, s0.k, s0.nt, s1.mu.real, s1.mu.imag, s1.k, s1.nt, problem.p0
    )
    red = problem.reduced()
    out.dim = point.dim if point.dim is not None else choose_dim([red.state0, red.state1], point.tol)
    out.pe_general = helstrom_general(problem, dim=out.dim)
    if s0.nt == 0 and s1.nt == 0:
        out.pe_pure = helstrom_pure(problem)
        _agree("pure", out.pe_pure, "general", out.pe_general, PURE_TOL)
    if problem.same_displacement and s0.nt == s1.nt:
        norm = problem.normalized()
        out.pe_closed = helstrom_closed_form(norm)
        _agree("closed", out.pe_closed, "general", out.pe_general, CLOSED_TOL)
        out.n_th = optimal_threshold(norm)
        out.pe_kennedy = kennedy_error(norm, out.n_th)
        _agree("kennedy", out.pe_kennedy, "closed", out.pe_closed, KENNEDY_TOL)
        if point.trials:
            out.pe_mc = simulate(norm, out.n_th, point.trials, point.seed)
            pe = out.pe_kennedy
            sigma = math.sqrt(max(pe * (1 - pe), 0.0) / point.trials)
            _agree("monte-carlo", out.pe_mc, "kennedy", pe, MC_SIGMAS * sigma + 1.0 / point.trials)
    out.wall_ms = 1e3 * (time.perf_counter() - start)
    return out


def _agree(name_a, a, name_b, b, tol):
    if abs(a - b) > tol:
        raise IntegrityError(f"{name_a}={a!r} and {name_b}={b!r} differ by more than {tol}")


def run_points(points, workers: int | None = None) -> list[SweepResult]:
    """Evaluate points in order; ``workers > 1`` spreads them over processes."""
    points = list(points)
    workers = workers or os.cpu_count() or 1
    if workers <= 1 or len(points) < 2:
        return [evaluate(p) for p in points]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(evaluate, points, chunksize=max(1, len(points) // (4 * workers))))


def offsets(d_max: float, step: float) -> list[float]:
    count = int(math.floor(d_max / step + 1e-9))
    return [round(i * step, 12) for i in range(count + 1)]


def fig_points(fig: int, *, nt=None, p0=0.5, pairs=FIG_PAIRS, d_max=FIG_DMAX, d_step=FIG_DSTEP,
               ks=FIG3_KS, gaps=FIG3_GAPS, mu=1.0, dim=None, tol=TAU_TRUNC) -> list[Point]:
    """Grid for figure 1 (noiseless), 2 (noisy) or 3 (gap sweep at equal displacement).

    Figures 1 and 2 put hypothesis 0 at ``xi = 0`` and sweep ``mu = |mu - xi|``.
    """
    if fig in (1, 2):
        nt = (0.0 if fig == 1 else 0.2) if nt is None else nt
        return [
            Point(DnsParams(0.0, h, nt), DnsParams(d, k, nt), p0, dim, tol)
            for k, h in pairs
            for d in offsets(d_max, d_step)
        ]
    if fig == 3:
        nt = 0.2 if nt is None else nt
        return [
            Point(DnsParams(mu, k + g, nt), DnsParams(mu, k, nt), p0, dim, tol)
            for k in ks
            for g in gaps
        ]
    raise ValueError(f"no point grid for figure {fig}")


OOK_COLUMNS = ["h", "nt", "p0", "alpha", "energy_dns", "energy_coherent",
               "pe_dns", "pe_dns_general", "pe_coherent"]


def ook_row(h: int, nt: float, p0: float = 0.5, tol: float = TAU_TRUNC) -> list:
    """DNS on-off keying against coherent on-off keying at equal mean energy per bit."""
    if h < 1:
        raise ValueError("OOK needs h >= 1")
    off = DnsParams(0.0, 0, nt)
    on_dns = DnsParams(0.0, h, nt)
    alpha = math.sqrt(h * (nt + 1.0))
    on_coh = DnsParams(alpha, 0, nt)
    e_dns = p0 * mean_photons(on_dns) + (1 - p0) * mean_photons(off)
    e_coh = p0 * mean_photons(on_coh) + (1 - p0) * mean_photons(off)
    _agree("energy_dns", e_dns, "energy_coherent", e_coh, 1e-12 * max(1.0, e_dns))
    dns = DiscriminationProblem(on_dns, off, p0)
    pe_dns = helstrom_closed_form(dns)
    pe_dns_general = helstrom_general(dns, tol=tol)
    _agree("dns closed", pe_dns, "dns general", pe_dns_general, CLOSED_TOL)
    pe_coh = helstrom_general(DiscriminationProblem(on_coh, off, p0), tol=tol)
    return [h, nt, p0, alpha, e_dns, e_coh, pe_dns, pe_dns_general, pe_coh]


def _ook_job(args):
    return ook_row(*args)


def ook_rows(hs=OOK_HS, nts=OOK_NTS, p0=0.5, tol=TAU_TRUNC, workers=None) -> list[list]:
    jobs = [(h, nt, p0, tol) for nt in nts for h in hs]
    workers = workers or os.cpu_count() or 1
    if workers <= 1 or len(jobs) < 2:
        return [ook_row(*j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_ook_job, jobs))
