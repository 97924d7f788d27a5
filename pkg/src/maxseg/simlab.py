"""Seeded Monte Carlo harness for planted-interval localization studies.

Every experiment is a pure function of its config: trial t draws from the
(seed, t) substream, so results do not depend on execution order or thread
count. Means come with standard errors so checks can use sigma bands.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .core1d import Interval, max_subarray_penalized
from .expfam import ExpFamilyModel, Gaussian, sample
from .rng import RngStream


@dataclass(frozen=True)
class PlantedConfig:
    """A planted-interval scenario: background at eta0, plant at eta1."""

    n: int
    plant: Interval
    model: ExpFamilyModel
    eta0: float
    eta1: float
    seed: int
    trials: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be positive")
        if not (0 <= self.plant.lo and self.plant.hi < self.n):
            raise ValueError("plant must lie within [0, n-1]")
        if self.trials < 1:
            raise ValueError("trials must be positive")
        if int(self.seed) < 0:
            raise ValueError("seed must be nonnegative")
        self.model.validate_natural(self.eta0)
        self.model.validate_natural(self.eta1)
        # eta1 == eta0 is allowed: a degenerate plant gives the no-signal baseline
        if self.eta1 < self.eta0:
            raise ValueError("require eta0 <= eta1")

    @classmethod
    def from_means(
        cls,
        model: ExpFamilyModel,
        n: int,
        plant: Interval,
        mu0: float,
        mu1: float,
        seed: int,
        trials: int,
    ) -> "PlantedConfig":
        return cls(
            n=n,
            plant=plant,
            model=model,
            eta0=model.mean_to_natural(mu0),
            eta1=model.mean_to_natural(mu1),
            seed=seed,
            trials=trials,
        )


@dataclass(frozen=True)
class OverlapCurve:
    delta_grid: np.ndarray
    mean_overlap: np.ndarray
    stderr: np.ndarray


@dataclass(frozen=True)
class RunLengthHistogram:
    """Solution lengths over pure-background trials at one penalty."""

    delta: float
    lengths: np.ndarray = field(repr=False)

    def counts(self) -> dict[int, int]:
        values, counts = np.unique(self.lengths, return_counts=True)
        return {int(v): int(c) for v, c in zip(values, counts)}

    @property
    def trials(self) -> int:
        return int(self.lengths.size)


@dataclass(frozen=True)
class BoundarySummary:
    """Right-boundary overshoot statistics, conditioned on no undershoot."""

    n: int
    plant_end: int
    delta: float
    trials: int
    kept: int
    discard_rate: float
    mean_overshoot: float
    stderr_overshoot: float
    mean_abs_error: float


def _map_trials(fn, trials: int, threads: int) -> list:
    """Evaluate fn(0..trials-1), collected by trial index."""
    if threads <= 1:
        return [fn(t) for t in range(trials)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, range(trials)))


def generate_planted(cfg: PlantedConfig, trial: int) -> tuple[np.ndarray, Interval]:
    """One synthetic array with its ground-truth interval, deterministic per trial."""
    stream = RngStream(cfg.seed, trial)
    w = np.asarray(sample(cfg.model, cfg.eta0, stream, size=cfg.n))
    plant_len = cfg.plant.length
    w[cfg.plant.lo : cfg.plant.hi + 1] = sample(cfg.model, cfg.eta1, stream, size=plant_len)
    return w, cfg.plant


def overlap(a: Interval, b: Interval) -> float:
    """Jaccard overlap of two index intervals, in [0, 1]."""
    inter = min(a.hi, b.hi) - max(a.lo, b.lo) + 1
    if inter <= 0:
        return 0.0
    union = a.length + b.length - inter
    return inter / union


def _mean_stderr(columns: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    mean = columns.mean(axis=0)
    if columns.shape[0] > 1:
        stderr = columns.std(axis=0, ddof=1) / math.sqrt(columns.shape[0])
    else:
        stderr = np.zeros_like(mean)
    return mean, stderr


def overlap_vs_delta(cfg: PlantedConfig, delta_grid, threads: int = 1) -> OverlapCurve:
    """Mean localization overlap per penalty; trials reuse arrays across the grid."""
    deltas = [float(d) for d in delta_grid]
    if not deltas:
        raise ValueError("delta grid must be nonempty")
    if not all(math.isfinite(d) for d in deltas):
        raise ValueError("delta grid must be finite")

    def one(trial: int) -> list[float]:
        w, truth = generate_planted(cfg, trial)
        return [overlap(max_subarray_penalized(w, d).interval, truth) for d in deltas]

    scores = np.asarray(_map_trials(one, cfg.trials, threads))
    mean, stderr = _mean_stderr(scores)
    return OverlapCurve(delta_grid=np.asarray(deltas), mean_overlap=mean, stderr=stderr)


def run_length_histogram(
    n: int,
    model: ExpFamilyModel,
    eta0: float,
    delta: float,
    trials: int,
    seed: int,
    threads: int = 1,
) -> RunLengthHistogram:
    """Lengths of penalized solutions on pure background noise."""
    if n < 1 or trials < 1:
        raise ValueError("n and trials must be positive")
    model.validate_natural(eta0)
    delta = float(delta)
    if not math.isfinite(delta):
        raise ValueError("delta must be finite")

    def one(trial: int) -> int:
        stream = RngStream(seed, trial)
        w = np.asarray(sample(model, eta0, stream, size=n))
        return max_subarray_penalized(w, delta).interval.length

    lengths = np.asarray(_map_trials(one, trials, threads), dtype=np.int64)
    return RunLengthHistogram(delta=delta, lengths=lengths)


def boundary_error_study(
    n: int,
    plant_end: int,
    delta: float,
    trials: int,
    seed: int,
    plant_mean: float = 5.0,
    sigma: float = 1.0,
    plant_start: int = 0,
    threads: int = 1,
) -> BoundarySummary:
    """Right-boundary overshoot of the penalized solver past a strong plant.

    Plants mean ``plant_mean`` on [plant_start, plant_end] over unit-ish
    Gaussian noise, solves with the given penalty, and summarizes the
    overshoot hi_hat - plant_end conditioned on hi_hat >= plant_end. Trials
    that undershoot are discarded and reported via ``discard_rate``.
    """
    if not (0 <= plant_start <= plant_end < n):
        raise ValueError("need 0 <= plant_start <= plant_end < n")
    if trials < 1:
        raise ValueError("trials must be positive")
    model = Gaussian(sigma=sigma)
    cfg = PlantedConfig.from_means(
        model,
        n=n,
        plant=Interval(plant_start, plant_end),
        mu0=0.0,
        mu1=plant_mean,
        seed=seed,
        trials=trials,
    )

    def one(trial: int) -> int:
        w, _ = generate_planted(cfg, trial)
        return max_subarray_penalized(w, delta).interval.hi - plant_end

    overshoot = np.asarray(_map_trials(one, trials, threads), dtype=np.int64)
    kept = overshoot[overshoot >= 0]
    mean_abs_error = float(np.abs(overshoot).mean())
    if kept.size == 0:
        mean_overshoot = math.nan
        stderr = math.nan
    else:
        mean_overshoot = float(kept.mean())
        stderr = float(kept.std(ddof=1) / math.sqrt(kept.size)) if kept.size > 1 else 0.0
    return BoundarySummary(
        n=n,
        plant_end=plant_end,
        delta=float(delta),
        trials=trials,
        kept=int(kept.size),
        discard_rate=1.0 - kept.size / trials,
        mean_overshoot=mean_overshoot,
        stderr_overshoot=stderr,
        mean_abs_error=mean_abs_error,
    )
