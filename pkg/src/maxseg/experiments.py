"""Declarative Monte Carlo experiments: JSON config in, CSV + metadata out.

Supported experiments: overlap_vs_delta, overlap_vs_mu, run_length,
boundary_error. Outputs are deterministic for a given config, including
under ``threads > 1``.
"""
from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .core1d import Interval
from .expfam import make_model, penalty_from_prior
from .rng import RNG_ALGORITHM
from .simlab import (
    PlantedConfig,
    boundary_error_study,
    overlap_vs_delta,
    run_length_histogram,
)

EXPERIMENTS = ("overlap_vs_delta", "overlap_vs_mu", "run_length", "boundary_error")


class ConfigError(ValueError):
    """Invalid experiment config; collects every missing or bad key."""

    def __init__(self, problems: list[str]):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


def _is_number(value) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool) and math.isfinite(value)


class _Fields:
    """Typed key extraction that accumulates problems instead of failing fast."""

    def __init__(self, raw: dict):
        self.raw = raw
        self.problems: list[str] = []

    def _missing(self, key: str, required: bool, default):
        if required:
            self.problems.append(f"missing key: {key}")
        return default

    def integer(self, key: str, minimum: int, required: bool = True, default=None):
        if key not in self.raw:
            return self._missing(key, required, default)
        value = self.raw[key]
        if not isinstance(value, int) or isinstance(value, bool) or value < minimum:
            self.problems.append(f"invalid {key}: expected integer >= {minimum}")
            return default
        return value

    def number(self, key: str, required: bool = True, default=None, minimum=None):
        if key not in self.raw:
            return self._missing(key, required, default)
        value = self.raw[key]
        if not _is_number(value):
            self.problems.append(f"invalid {key}: expected finite number")
            return default
        if minimum is not None and value < minimum:
            self.problems.append(f"invalid {key}: must be >= {minimum}")
            return default
        return float(value)

    def number_list(self, key: str, required: bool = True, default=None, minimum=None):
        if key not in self.raw:
            return self._missing(key, required, default)
        value = self.raw[key]
        if _is_number(value):
            value = [value]
        if not isinstance(value, list) or not value:
            self.problems.append(f"invalid {key}: expected a number or nonempty list")
            return default
        if not all(_is_number(v) for v in value):
            self.problems.append(f"invalid {key}: entries must be finite numbers")
            return default
        if minimum is not None and any(v < minimum for v in value):
            self.problems.append(f"invalid {key}: entries must be >= {minimum}")
            return default
        return [float(v) for v in value]

    def choice(self, key: str, options: tuple, required: bool = True, default=None):
        if key not in self.raw:
            return self._missing(key, required, default)
        value = self.raw[key]
        if value not in options:
            self.problems.append(f"invalid {key}: expected one of {list(options)}")
            return default
        return value

    def interval(self, key: str, n: int | None):
        if key not in self.raw:
            return self._missing(key, True, None)
        value = self.raw[key]
        ok = (
            isinstance(value, list)
            and len(value) == 2
            and all(isinstance(v, int) and not isinstance(v, bool) for v in value)
            and 0 <= value[0] <= value[1]
        )
        if ok and n is not None:
            ok = value[1] < n
        if not ok:
            self.problems.append(f"invalid {key}: expected [lo, hi] with 0 <= lo <= hi < n")
            return None
        return Interval(value[0], value[1])


@dataclass(frozen=True)
class ExperimentResult:
    name: str
    csv_path: Path
    metadata_path: Path


def _model_from(fields: _Fields):
    family = fields.choice("family", ("gaussian", "poisson", "gamma", "bernoulli"),
                           required=False, default="gaussian")
    sigma = fields.number("sigma", required=False, default=1.0, minimum=1e-12)
    shape = fields.number("shape", required=False, default=1.0, minimum=1e-12)
    if fields.problems:
        return None
    return make_model(family, sigma=sigma or 1.0, shape=shape or 1.0)


def _run_overlap_vs_delta(raw: dict, threads: int):
    f = _Fields(raw)
    n = f.integer("n", 1)
    trials = f.integer("trials", 1)
    seed = f.integer("seed", 0)
    plant = f.interval("plant", n)
    mu0 = f.number("mu0")
    delta_mu = f.number_list("delta_mu", minimum=1e-12)
    grid = f.number_list("delta_grid")
    scale = f.choice("delta_scale", ("delta_mu", "optimal", "absolute"),
                     required=False, default="optimal")
    model = _model_from(f)
    if f.problems:
        raise ConfigError(f.problems)

    header = ["delta_mu", "delta", "delta_rel", "mean_overlap", "stderr_overlap", "trials"]
    rows = []
    for dmu in delta_mu:
        if scale == "delta_mu":
            reference = dmu
        elif scale == "optimal":
            reference = penalty_from_prior(model, mu0, dmu)
        else:
            reference = 1.0
        deltas = [g * reference for g in grid]
        cfg = PlantedConfig.from_means(model, n=n, plant=plant, mu0=mu0,
                                       mu1=mu0 + dmu, seed=seed, trials=trials)
        curve = overlap_vs_delta(cfg, deltas, threads=threads)
        for g, d, m, s in zip(grid, curve.delta_grid, curve.mean_overlap, curve.stderr):
            rows.append([dmu, float(d), g, float(m), float(s), trials])
    return header, rows


def _run_overlap_vs_mu(raw: dict, threads: int):
    f = _Fields(raw)
    n = f.integer("n", 1)
    trials = f.integer("trials", 1)
    seed = f.integer("seed", 0)
    plant = f.interval("plant", n)
    mu0 = f.number("mu0", required=False, default=0.0)
    mu_grid = f.number_list("mu_grid", minimum=1e-12)
    policy = f.choice("penalty_policy", ("optimal", "half_mu_floor"),
                      required=False, default="half_mu_floor")
    floor = f.number("floor", required=False, default=0.25, minimum=0.0)
    model = _model_from(f)
    if f.problems:
        raise ConfigError(f.problems)

    header = ["delta_mu", "delta", "mean_overlap", "stderr_overlap", "trials"]
    rows = []
    for dmu in mu_grid:
        if policy == "half_mu_floor":
            delta = max(dmu / 2.0, floor)
        else:
            delta = penalty_from_prior(model, mu0, dmu)
        cfg = PlantedConfig.from_means(model, n=n, plant=plant, mu0=mu0,
                                       mu1=mu0 + dmu, seed=seed, trials=trials)
        curve = overlap_vs_delta(cfg, [delta], threads=threads)
        rows.append([dmu, delta, float(curve.mean_overlap[0]), float(curve.stderr[0]), trials])
    return header, rows


def _run_run_length(raw: dict, threads: int):
    f = _Fields(raw)
    n = f.integer("n", 1)
    trials = f.integer("trials", 1)
    seed = f.integer("seed", 0)
    mu0 = f.number("mu0", required=False, default=0.0)
    delta_list = f.number_list("delta_list")
    model = _model_from(f)
    eta0 = 0.0
    if not f.problems:
        try:
            eta0 = model.mean_to_natural(mu0)
        except ValueError as exc:
            f.problems.append(f"invalid mu0: {exc}")
    if f.problems:
        raise ConfigError(f.problems)

    header = ["delta", "length", "count"]
    rows = []
    for delta in delta_list:
        hist = run_length_histogram(n, model, eta0, delta, trials, seed, threads=threads)
        for length, count in sorted(hist.counts().items()):
            rows.append([delta, length, count])
    return header, rows


def _run_boundary_error(raw: dict, threads: int):
    f = _Fields(raw)
    n_list = f.number_list("n", minimum=1)
    trials = f.integer("trials", 1)
    seed = f.integer("seed", 0)
    plant_end = f.integer("plant_end", 0)
    delta = f.number("delta")
    plant_mean = f.number("plant_mean", required=False, default=5.0)
    sigma = f.number("sigma", required=False, default=1.0, minimum=1e-12)
    if n_list is not None and any(x != int(x) for x in n_list):
        f.problems.append("invalid n: entries must be integers")
    if n_list is not None and plant_end is not None and any(plant_end >= x for x in n_list):
        f.problems.append("invalid plant_end: must be < every n")
    if f.problems:
        raise ConfigError(f.problems)

    header = ["n", "plant_end", "delta", "trials", "kept", "discard_rate",
              "mean_overshoot", "stderr_overshoot", "mean_abs_error"]
    rows = []
    for n in n_list:
        s = boundary_error_study(int(n), plant_end, delta, trials, seed,
                                 plant_mean=plant_mean, sigma=sigma, threads=threads)
        rows.append([s.n, s.plant_end, s.delta, s.trials, s.kept, s.discard_rate,
                     s.mean_overshoot, s.stderr_overshoot, s.mean_abs_error])
    return header, rows


_RUNNERS = {
    "overlap_vs_delta": _run_overlap_vs_delta,
    "overlap_vs_mu": _run_overlap_vs_mu,
    "run_length": _run_run_length,
    "boundary_error": _run_boundary_error,
}


def run_experiment(config: dict, out_dir, threads: int = 1) -> ExperimentResult:
    """Run one experiment config, writing <name>.csv and <name>.meta.json."""
    if not isinstance(config, dict):
        raise ConfigError(["config must be a JSON object"])
    name = config.get("experiment")
    if name not in _RUNNERS:
        raise ConfigError([f"invalid experiment: expected one of {list(EXPERIMENTS)}"])
    header, rows = _RUNNERS[name](config, threads)

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / f"{name}.csv"
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])

    meta_path = out / f"{name}.meta.json"
    metadata = {
        "experiment": name,
        "config": config,
        "seed": config.get("seed"),
        "artifact_version": __version__,
        "rng": RNG_ALGORITHM,
        "csv": csv_path.name,
    }
    with open(meta_path, "w") as fh:
        json.dump(metadata, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return ExperimentResult(name=name, csv_path=csv_path, metadata_path=meta_path)


def run_experiment_file(config_path, out_dir, threads: int = 1) -> ExperimentResult:
    with open(config_path) as fh:
        try:
            config = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError([f"config is not valid JSON: {exc}"]) from exc
    return run_experiment(config, out_dir, threads=threads)


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)
