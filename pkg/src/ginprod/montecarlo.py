"""Parallel, reproducible Monte Carlo over products of Ginibre matrices.

Trial t of a run draws its factors from the Philox stream keyed by
(master_seed, stream_offset + t), so results are bit-identical for any worker
count and any scheduling order.  Work is partitioned into fixed blocks of
trials; each block reduces to an integer count vector and the merge is plain
integer addition, which is associative and commutative.

A failed Schur iteration is resampled from a reserved stream id (offset by
2^63, far above any trial index) and tallied; successful trials' streams are
never touched by resampling.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import linalg
from .linalg import EigenSolveError
from .sampling import StreamPool

__all__ = [
    "ExperimentConfig",
    "RealCountHistogram",
    "ExpectedRealCurve",
    "GammaFit",
    "EigCloud",
    "run_histogram",
    "expected_real",
    "sweep_K",
    "fit_gamma",
    "eigencloud",
]

_BLOCK = 2048
_RESAMPLE_OFFSET = 2**63
_RESAMPLE_STRIDE = 2**48
_MAX_RESAMPLES = 16
# trials * K * n^3 cap; beyond this a single run would take hours of CPU
_BUDGET_CAP = 10**12


@dataclass(frozen=True)
class ExperimentConfig:
    """One product-ensemble experiment: dimension, factor count, trials, seed.

    normalize_factors=None resolves to True for num_factors > 20: long chains
    grow exponentially, and dividing each factor by its Frobenius norm leaves
    every real-eigenvalue statistic unchanged (positive scaling preserves
    eigenvalue reality) while keeping entries in range.
    """

    n: int
    num_factors: int
    trials: int
    master_seed: int
    normalize_factors: bool | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"dimension must be >= 1, got {self.n}")
        if self.num_factors < 1:
            raise ValueError(f"number of factors must be >= 1, got {self.num_factors}")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if not 0 <= self.master_seed < 2**64:
            raise ValueError("master_seed must fit in an unsigned 64-bit integer")
        budget = self.trials * self.num_factors * self.n**3
        if budget > _BUDGET_CAP:
            raise ValueError(
                f"trials * K * n^3 = {budget:.2e} exceeds the budget cap {_BUDGET_CAP:.0e}")

    @property
    def resolved_normalize(self) -> bool:
        if self.normalize_factors is None:
            return self.num_factors > 20
        return self.normalize_factors

    def valid_counts(self) -> list[int]:
        """Real-eigenvalue counts with the right parity: k = n, n-2, ..."""
        return list(range(self.n % 2, self.n + 1, 2))


@dataclass(frozen=True)
class RealCountHistogram:
    """Counts of trials by number of real eigenvalues of the product."""

    config: ExperimentConfig
    counts: dict[int, int]
    failures: int

    def __post_init__(self):
        if sum(self.counts.values()) != self.config.trials:
            raise ValueError("histogram counts must sum to the trial count")

    @property
    def p_hat(self) -> dict[int, float]:
        t = self.config.trials
        return {k: c / t for k, c in self.counts.items()}

    @property
    def stderr(self) -> dict[int, float]:
        t = self.config.trials
        return {k: math.sqrt(p * (1.0 - p) / t) for k, p in self.p_hat.items()}


@dataclass(frozen=True)
class ExpectedRealCurve:
    """Expected number of real eigenvalues vs the number of factors K."""

    n: int
    K_values: list[int]
    E_values: list[float]
    stderr: list[float]
    trials: int
    master_seed: int

    def __post_init__(self):
        if not (len(self.K_values) == len(self.E_values) == len(self.stderr)):
            raise ValueError("curve lists must have equal length")
        for e in self.E_values:
            if not 0.0 <= e <= self.n:
                raise ValueError(f"expected count {e} outside [0, n]")


@dataclass(frozen=True)
class GammaFit:
    """Least-squares exponential rate of n - E(K) ~ c exp(-gamma K)."""

    n: int
    gamma: float
    intercept: float
    rms_residual: float
    K_range: tuple[int, int]
    points_used: int


@dataclass(frozen=True)
class EigCloud:
    """Per-trial eigenvalues of the product, divided by its Frobenius norm."""

    config: ExperimentConfig
    eigs: np.ndarray  # complex, shape (trials, n)
    failures: int

    def points(self) -> np.ndarray:
        """Flat (trials*n, 3) float array of (trial, re, im) rows."""
        t, n = self.eigs.shape
        out = np.empty((t * n, 3))
        out[:, 0] = np.repeat(np.arange(t), n)
        out[:, 1] = self.eigs.real.ravel()
        out[:, 2] = self.eigs.imag.ravel()
        return out


# one lazily built stream pool per worker process
_POOL: StreamPool | None = None


def _pool() -> StreamPool:
    global _POOL
    if _POOL is None:
        _POOL = StreamPool()
    return _POOL


def _chain_product(cfg: ExperimentConfig, rng) -> np.ndarray:
    mats = rng.standard_normal((cfg.num_factors, cfg.n, cfg.n))
    if cfg.resolved_normalize:
        norms = np.sqrt(np.einsum("kij,kij->k", mats, mats))
        mats /= norms[:, None, None]
    prod = mats[0]
    for j in range(1, cfg.num_factors):
        prod = prod @ mats[j]
    return prod


def _count_real_product(prod: np.ndarray) -> int:
    # lean twin of linalg.count_real for internally built matrices; a
    # non-finite product (overflow in an unnormalized long chain) is raised
    # as a solver failure so it is resampled and tallied, never miscounted
    if prod.shape[0] == 2:
        a, b = prod[0, 0], prod[0, 1]
        c, d = prod[1, 0], prod[1, 1]
        tr = a + d
        disc = tr * tr - 4.0 * (a * d - b * c)
        if math.isnan(disc) or math.isinf(disc):
            raise EigenSolveError("non-finite 2x2 product; enable normalize_factors")
        return 2 if disc >= 0.0 else 0
    if not np.isfinite(prod).all():
        raise EigenSolveError("non-finite product matrix; enable normalize_factors")
    return linalg.eigenvalues(prod, method="schur").real_count


def _run_trial(cfg: ExperimentConfig, pool: StreamPool, trial_stream: int,
               want_eigs: bool):
    """(real count or spectrum, failures) for one trial, with resampling."""
    failures = 0
    stream = trial_stream
    for attempt in range(_MAX_RESAMPLES):
        rng = pool.get(cfg.master_seed, stream)
        prod = _chain_product(cfg, rng)
        try:
            if want_eigs:
                spectrum = linalg.eigenvalues(prod)
                return spectrum.eigenvalues / float(np.linalg.norm(prod)), failures
            return _count_real_product(prod), failures
        except EigenSolveError:
            failures += 1
            stream = (_RESAMPLE_OFFSET + attempt * _RESAMPLE_STRIDE + trial_stream) % 2**64
    raise EigenSolveError(
        f"trial stream {trial_stream} failed {_MAX_RESAMPLES} resampling attempts")


def _histogram_block(cfg: ExperimentConfig, start: int, size: int, stream_offset: int):
    pool = _pool()
    counts = np.zeros(cfg.n + 1, dtype=np.int64)
    failures = 0
    for t in range(start, start + size):
        k, f = _run_trial(cfg, pool, stream_offset + t, want_eigs=False)
        counts[k] += 1
        failures += f
    return counts, failures


def _eig_block(cfg: ExperimentConfig, start: int, size: int, stream_offset: int):
    pool = _pool()
    eigs = np.empty((size, cfg.n), dtype=complex)
    failures = 0
    for i in range(size):
        w, f = _run_trial(cfg, pool, stream_offset + start + i, want_eigs=True)
        eigs[i] = w
        failures += f
    return start, eigs, failures


def _blocks(trials: int):
    for start in range(0, trials, _BLOCK):
        yield start, min(_BLOCK, trials - start)


def _map_blocks(fn, cfg: ExperimentConfig, stream_offset: int, workers: int | None):
    if workers is None:
        workers = os.cpu_count() or 1
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    jobs = list(_blocks(cfg.trials))
    if workers == 1 or len(jobs) == 1:
        return [fn(cfg, start, size, stream_offset) for start, size in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(fn, cfg, start, size, stream_offset) for start, size in jobs]
        return [f.result() for f in futures]


def run_histogram(config: ExperimentConfig, workers: int | None = None,
                  stream_offset: int = 0) -> RealCountHistogram:
    """Histogram of the real-eigenvalue count over config.trials products.

    Deterministic in (config, stream_offset) for every worker count.  Solver
    failures are resampled from reserved streams and tallied.
    """
    results = _map_blocks(_histogram_block, config, stream_offset, workers)
    counts = np.zeros(config.n + 1, dtype=np.int64)
    failures = 0
    for c, f in results:
        counts += c
        failures += f
    by_k = {k: int(counts[k]) for k in config.valid_counts()}
    stray = int(counts.sum()) - sum(by_k.values())
    if stray:
        raise AssertionError("real-count parity violated; this is a solver bug")
    return RealCountHistogram(config, by_k, failures)


def expected_real(hist: RealCountHistogram) -> tuple[float, float]:
    """Mean real-eigenvalue count and its Monte Carlo standard error."""
    trials = hist.config.trials
    e = sum(k * p for k, p in hist.p_hat.items())
    var = sum(k * k * p for k, p in hist.p_hat.items()) - e * e
    return e, math.sqrt(max(var, 0.0) / trials)


def sweep_K(n: int, K_list, trials: int, master_seed: int,
            workers: int | None = None, normalize_factors: bool | None = None,
            ) -> ExpectedRealCurve:
    """Expected real count for each K in an ascending list.

    Each K gets a disjoint stream range (offset i * trials) so no matrix is
    reused between points.
    """
    K_list = list(K_list)
    if not K_list:
        raise ValueError("K_list must be nonempty")
    if any(b <= a for a, b in zip(K_list, K_list[1:])):
        raise ValueError("K_list must be strictly ascending")
    es, ses = [], []
    for i, k in enumerate(K_list):
        cfg = ExperimentConfig(n, k, trials, master_seed, normalize_factors)
        hist = run_histogram(cfg, workers=workers, stream_offset=i * trials)
        e, se = expected_real(hist)
        es.append(e)
        ses.append(se)
    return ExpectedRealCurve(n, K_list, es, ses, trials, master_seed)


def fit_gamma(curve: ExpectedRealCurve) -> GammaFit:
    """OLS fit of log(n - E) against K; gamma is minus the slope.

    Points with n - E within 3 standard errors of zero are excluded (log of
    noise carries no slope information); at least 3 usable points required.
    """
    n = curve.n
    ks, ys = [], []
    for k, e, se in zip(curve.K_values, curve.E_values, curve.stderr):
        gap = n - e
        if gap > 3.0 * se and gap > 0.0:
            ks.append(float(k))
            ys.append(math.log(gap))
    if len(ks) < 3:
        raise ValueError(f"only {len(ks)} usable points; need >= 3 for a rate fit")
    x = np.array(ks)
    y = np.array(ys)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    rms = math.sqrt(float(np.mean(resid**2)))
    return GammaFit(n, -float(slope), float(intercept), rms,
                    (int(min(ks)), int(max(ks))), len(ks))


def eigencloud(config: ExperimentConfig, workers: int | None = None,
               stream_offset: int = 0) -> EigCloud:
    """Eigenvalues of every trial's product, each set scaled by 1/||product||_F.

    By Schur's inequality the scaled eigenvalues all lie in the closed unit
    disk; conjugate symmetry of each trial's set is exact by construction.
    """
    results = _map_blocks(_eig_block, config, stream_offset, workers)
    eigs = np.empty((config.trials, config.n), dtype=complex)
    failures = 0
    for start, block, f in results:
        eigs[start:start + block.shape[0]] = block
        failures += f
    return EigCloud(config, eigs, failures)
