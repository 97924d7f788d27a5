"""Exponential-family models in natural-parameter form.

Each family exposes the log-partition function A(eta), its derivative (the
mean), the inverse mean map, and a seeded sampler. The optimal detection
penalty for separating two natural parameters eta0 < eta1 is the chord slope
(A(eta1) - A(eta0)) / (eta1 - eta0), which always lies between the two means
because A is convex.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .rng import RngStream


def _require_finite(name: str, x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"{name} must be finite")
    return x


def _scalar_or_array(x: np.ndarray, size: int | None):
    return x if size is not None else float(x[0])


@dataclass(frozen=True)
class Gaussian:
    """Normal observations with known sigma; natural parameter eta = mu / sigma^2."""

    sigma: float = 1.0
    name = "gaussian"

    def __post_init__(self) -> None:
        if not (math.isfinite(self.sigma) and self.sigma > 0):
            raise ValueError("sigma must be positive and finite")

    def validate_natural(self, eta: float) -> float:
        return _require_finite("eta", eta)

    def log_partition(self, eta: float) -> float:
        eta = self.validate_natural(eta)
        s2 = self.sigma * self.sigma
        return 0.5 * eta * eta * s2 + 0.5 * math.log(s2)

    def mean(self, eta: float) -> float:
        return self.validate_natural(eta) * self.sigma * self.sigma

    def mean_to_natural(self, mu: float) -> float:
        return _require_finite("mu", mu) / (self.sigma * self.sigma)

    def sample(self, eta: float, stream: RngStream, size: int | None = None):
        mu = self.mean(eta)
        n = 1 if size is None else int(size)
        return _scalar_or_array(mu + self.sigma * stream.normals(n), size)


@dataclass(frozen=True)
class Poisson:
    """Poisson counts; natural parameter eta = log(rate), A(eta) = exp(eta)."""

    name = "poisson"

    # multiplicative inversion underflows for large rates; 60 is a safe cap
    MAX_SAMPLING_RATE = 60.0

    def validate_natural(self, eta: float) -> float:
        return _require_finite("eta", eta)

    def log_partition(self, eta: float) -> float:
        return math.exp(self.validate_natural(eta))

    def mean(self, eta: float) -> float:
        return math.exp(self.validate_natural(eta))

    def mean_to_natural(self, mu: float) -> float:
        mu = _require_finite("mu", mu)
        if mu <= 0:
            raise ValueError("Poisson rate must be positive")
        return math.log(mu)

    def sample(self, eta: float, stream: RngStream, size: int | None = None):
        lam = self.mean(eta)
        if lam > self.MAX_SAMPLING_RATE:
            raise ValueError(f"sampling supports rate <= {self.MAX_SAMPLING_RATE}")
        n = 1 if size is None else int(size)
        # Knuth multiplicative inversion: count uniform factors until the
        # running product drops below exp(-lambda)
        limit = math.exp(-lam)
        counts = np.zeros(n, dtype=np.int64)
        prod = np.ones(n)
        active = np.ones(n, dtype=bool)
        while active.any():
            idx = np.flatnonzero(active)
            prod[idx] *= stream.uniforms(idx.size)
            counts[idx] += 1
            active[idx] = prod[idx] > limit
        return _scalar_or_array((counts - 1).astype(float), size)


@dataclass(frozen=True)
class GammaFixedShape:
    """Gamma observations with fixed shape alpha; eta = -rate < 0, A = -alpha*log(-eta)."""

    shape: float = 1.0
    name = "gamma"

    def __post_init__(self) -> None:
        if not (math.isfinite(self.shape) and self.shape > 0):
            raise ValueError("shape must be positive and finite")

    def validate_natural(self, eta: float) -> float:
        eta = _require_finite("eta", eta)
        if eta >= 0:
            raise ValueError("Gamma natural parameter must be negative")
        return eta

    def log_partition(self, eta: float) -> float:
        return -self.shape * math.log(-self.validate_natural(eta))

    def mean(self, eta: float) -> float:
        return -self.shape / self.validate_natural(eta)

    def mean_to_natural(self, mu: float) -> float:
        mu = _require_finite("mu", mu)
        if mu <= 0:
            raise ValueError("Gamma mean must be positive")
        return -self.shape / mu

    def sample(self, eta: float, stream: RngStream, size: int | None = None):
        rate = -self.validate_natural(eta)
        alpha = self.shape
        if alpha < 1.0:
            raise ValueError("sampling supports shape >= 1")
        n = 1 if size is None else int(size)
        # Marsaglia-Tsang squeeze-rejection for shape >= 1
        d = alpha - 1.0 / 3.0
        c = 1.0 / math.sqrt(9.0 * d)
        out = np.empty(n)
        active = np.ones(n, dtype=bool)
        while active.any():
            idx = np.flatnonzero(active)
            x = stream.normals(idx.size)
            u = stream.uniforms(idx.size)
            v = (1.0 + c * x) ** 3
            ok = v > 0
            with np.errstate(divide="ignore", invalid="ignore"):
                accept = ok & (np.log(u) < 0.5 * x * x + d - d * v + d * np.log(np.where(ok, v, 1.0)))
            take = idx[accept]
            out[take] = d * v[accept] / rate
            active[take] = False
        return _scalar_or_array(out, size)


@dataclass(frozen=True)
class Bernoulli:
    """0/1 observations; eta is the log-odds, A(eta) = log(1 + exp(eta))."""

    name = "bernoulli"

    def validate_natural(self, eta: float) -> float:
        return _require_finite("eta", eta)

    def log_partition(self, eta: float) -> float:
        return float(np.logaddexp(0.0, self.validate_natural(eta)))

    def mean(self, eta: float) -> float:
        eta = self.validate_natural(eta)
        if eta >= 0:
            return 1.0 / (1.0 + math.exp(-eta))
        e = math.exp(eta)
        return e / (1.0 + e)

    def mean_to_natural(self, mu: float) -> float:
        mu = _require_finite("mu", mu)
        if not (0.0 < mu < 1.0):
            raise ValueError("Bernoulli mean must lie in (0, 1)")
        return math.log(mu / (1.0 - mu))

    def sample(self, eta: float, stream: RngStream, size: int | None = None):
        p = self.mean(eta)
        n = 1 if size is None else int(size)
        return _scalar_or_array((stream.uniforms(n) < p).astype(float), size)


ExpFamilyModel = Gaussian | Poisson | GammaFixedShape | Bernoulli

FAMILIES = {
    "gaussian": Gaussian,
    "poisson": Poisson,
    "gamma": GammaFixedShape,
    "bernoulli": Bernoulli,
}


def make_model(family: str, sigma: float = 1.0, shape: float = 1.0) -> ExpFamilyModel:
    """Build a model from a family name plus its nuisance parameter, if any."""
    family = family.lower()
    if family == "gaussian":
        return Gaussian(sigma=sigma)
    if family == "gamma":
        return GammaFixedShape(shape=shape)
    if family in FAMILIES:
        return FAMILIES[family]()
    raise ValueError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}")


def log_partition(model: ExpFamilyModel, eta: float) -> float:
    return model.log_partition(eta)


def mean(model: ExpFamilyModel, eta: float) -> float:
    return model.mean(eta)


def sample(model: ExpFamilyModel, eta: float, stream: RngStream, size: int | None = None):
    """Draw from the family at natural parameter eta, deterministic per stream."""
    return model.sample(eta, stream, size)


@dataclass(frozen=True)
class ParamPair:
    """Background/foreground natural parameters eta0 < eta1 for one model."""

    model: ExpFamilyModel
    eta0: float
    eta1: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "eta0", self.model.validate_natural(self.eta0))
        object.__setattr__(self, "eta1", self.model.validate_natural(self.eta1))
        if not self.eta0 < self.eta1:
            raise ValueError("require eta0 < eta1")

    @classmethod
    def from_means(cls, model: ExpFamilyModel, mu0: float, mu1: float) -> "ParamPair":
        return cls(model, model.mean_to_natural(mu0), model.mean_to_natural(mu1))

    @classmethod
    def from_prior(cls, model: ExpFamilyModel, mu0: float, delta_mu: float) -> "ParamPair":
        """Means given as background mu0 plus a positive expected difference."""
        delta_mu = _require_finite("delta_mu", delta_mu)
        if delta_mu <= 0:
            raise ValueError("delta_mu must be positive")
        return cls.from_means(model, mu0, mu0 + delta_mu)

    @property
    def mu0(self) -> float:
        return self.model.mean(self.eta0)

    @property
    def mu1(self) -> float:
        return self.model.mean(self.eta1)

    @cached_property
    def delta(self) -> float:
        return optimal_penalty(self)


def optimal_penalty(pair: ParamPair) -> float:
    """Chord slope of the log-partition between eta0 and eta1.

    This is the per-element log-likelihood-ratio threshold separating the two
    parameters, and it satisfies mu0 <= delta <= mu1.
    """
    a0 = pair.model.log_partition(pair.eta0)
    a1 = pair.model.log_partition(pair.eta1)
    return (a1 - a0) / (pair.eta1 - pair.eta0)


def penalty_from_prior(model: ExpFamilyModel, mu0: float, delta_mu: float) -> float:
    """Penalty from a background mean and a prior on the mean difference."""
    return optimal_penalty(ParamPair.from_prior(model, mu0, delta_mu))
