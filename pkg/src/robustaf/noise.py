"""
Seeded measurement-noise generators.

All randomness goes through :func:`make_rng`, a numpy ``Generator`` on the
counter-based Philox4x64 bit generator; Gaussian variates use numpy's
ziggurat sampler. Given the same seed, every sequence is reproduced bit for
bit.

The eleven named environments are available through :func:`preset`
(``"noise1"`` ... ``"noise11"``). Impulsive components are a Bernoulli-gated
zero-mean Gaussian added on top of the background noise.
"""
from __future__ import annotations

import dataclasses
import difflib
import math
from dataclasses import dataclass

import numpy as np
from scipy import special

__all__ = [
    "make_rng",
    "Noise",
    "Gaussian",
    "GaussianImpulse",
    "LaplaceImpulse",
    "BinaryImpulse",
    "UniformImpulse",
    "GGDImpulse",
    "MixedGaussian",
    "MixedGaussianSum",
    "FDist",
    "Rayleigh",
    "sample",
    "ggd_sample",
    "ggd_variance",
    "PRESETS",
    "preset",
]

DEFAULT_IMP_VAR = 1000.0
DEFAULT_IMP_PROB = 0.05
DEFAULT_MIX_PROB = 0.1


def make_rng(seed) -> np.random.Generator:
    """Philox-backed generator from an int seed or a ``SeedSequence``."""
    return np.random.Generator(np.random.Philox(seed))


def _require(cond: bool, msg: str):
    if not cond:
        raise ValueError(msg)


def _prob(p: float, name: str = "probability"):
    _require(0.0 <= p <= 1.0, f"{name} must be in [0, 1], got {p!r}")


def _pos(v: float, name: str):
    _require(math.isfinite(v) and v > 0, f"{name} must be finite and > 0, got {v!r}")


@dataclass(frozen=True, kw_only=True)
class Noise:
    """Base class. Subclasses implement ``_draw`` and the analytic moments."""

    kind = "noise"

    def draw(self, rng: np.random.Generator, n: int) -> np.ndarray:
        _require(n >= 1, "n must be >= 1")
        return self._draw(rng, int(n))

    def _draw(self, rng, n):
        raise NotImplementedError

    @property
    def mean(self) -> float:
        raise NotImplementedError

    @property
    def var(self) -> float:
        raise NotImplementedError

    def replace(self, **changes) -> "Noise":
        return dataclasses.replace(self, **changes)

    def as_dict(self) -> dict:
        return {"kind": self.kind, **dataclasses.asdict(self)}


@dataclass(frozen=True, kw_only=True)
class _Impulsive(Noise):
    imp_var: float = DEFAULT_IMP_VAR
    imp_prob: float = DEFAULT_IMP_PROB

    def __post_init__(self):
        _pos(self.imp_var, "imp_var")
        _prob(self.imp_prob, "imp_prob")

    def _draw(self, rng, n):
        v = self._background(rng, n)
        hit = rng.random(n) < self.imp_prob
        return v + hit * rng.normal(0.0, math.sqrt(self.imp_var), n)

    def _background(self, rng, n):
        raise NotImplementedError

    @property
    def mean(self):
        return self._bg_mean

    @property
    def var(self):
        return self._bg_var + self.imp_prob * self.imp_var

    _bg_mean = 0.0


@dataclass(frozen=True, kw_only=True)
class Gaussian(Noise):
    loc: float = 0.0
    variance: float = 1.0
    kind = "gaussian"

    def __post_init__(self):
        _require(math.isfinite(self.loc), "loc must be finite")
        _require(math.isfinite(self.variance) and self.variance >= 0, "variance must be >= 0")

    def _draw(self, rng, n):
        return self.loc + math.sqrt(self.variance) * rng.standard_normal(n)

    @property
    def mean(self):
        return self.loc

    @property
    def var(self):
        return self.variance


@dataclass(frozen=True, kw_only=True)
class GaussianImpulse(_Impulsive):
    bg_var: float = 1.0
    kind = "gaussian_impulse"

    def __post_init__(self):
        super().__post_init__()
        _pos(self.bg_var, "bg_var")

    def _background(self, rng, n):
        return math.sqrt(self.bg_var) * rng.standard_normal(n)

    @property
    def _bg_var(self):
        return self.bg_var


@dataclass(frozen=True, kw_only=True)
class LaplaceImpulse(_Impulsive):
    bg_var: float = 2.0
    kind = "laplace_impulse"

    def __post_init__(self):
        super().__post_init__()
        _pos(self.bg_var, "bg_var")

    def _background(self, rng, n):
        return rng.laplace(0.0, math.sqrt(self.bg_var / 2.0), n)

    @property
    def _bg_var(self):
        return self.bg_var


@dataclass(frozen=True, kw_only=True)
class BinaryImpulse(_Impulsive):
    level: float = 2.0
    kind = "binary_impulse"

    def __post_init__(self):
        super().__post_init__()
        _pos(self.level, "level")

    def _background(self, rng, n):
        return np.where(rng.random(n) < 0.5, -self.level, self.level)

    @property
    def _bg_var(self):
        return self.level**2


@dataclass(frozen=True, kw_only=True)
class UniformImpulse(_Impulsive):
    lo: float = -math.sqrt(2.0)
    hi: float = math.sqrt(2.0)
    kind = "uniform_impulse"

    def __post_init__(self):
        super().__post_init__()
        _require(math.isfinite(self.lo) and math.isfinite(self.hi) and self.lo < self.hi, "need lo < hi")

    def _background(self, rng, n):
        return rng.uniform(self.lo, self.hi, n)

    @property
    def _bg_mean(self):
        return 0.5 * (self.lo + self.hi)

    @property
    def _bg_var(self):
        return (self.hi - self.lo) ** 2 / 12.0


def ggd_variance(alpha_g: float, beta_g: float) -> float:
    """Variance of the zero-mean GGD with scale ``alpha_g`` and shape ``beta_g``."""
    return alpha_g**2 * math.exp(special.gammaln(3.0 / beta_g) - special.gammaln(1.0 / beta_g))


def _ggd(rng, alpha_g, beta_g, n):
    mag = alpha_g * rng.gamma(1.0 / beta_g, 1.0, n) ** (1.0 / beta_g)
    sign = np.where(rng.random(n) < 0.5, -1.0, 1.0)
    return sign * mag


def ggd_sample(alpha_g: float, beta_g: float, n: int, seed) -> np.ndarray:
    """Zero-mean generalized Gaussian variates, density proportional to ``exp(-|v/alpha_g|^beta_g)``.

    Uses the gamma transform ``|v| = alpha_g * G**(1/beta_g)``,
    ``G ~ Gamma(1/beta_g, 1)``, with an independent random sign.
    """
    _pos(alpha_g, "alpha_g")
    _pos(beta_g, "beta_g")
    _require(n >= 1, "n must be >= 1")
    return _ggd(make_rng(seed), alpha_g, beta_g, int(n))


@dataclass(frozen=True, kw_only=True)
class GGDImpulse(_Impulsive):
    alpha_g: float = 3.0
    beta_g: float = 0.3
    kind = "ggd_impulse"

    def __post_init__(self):
        super().__post_init__()
        _pos(self.alpha_g, "alpha_g")
        _pos(self.beta_g, "beta_g")

    def _background(self, rng, n):
        return _ggd(rng, self.alpha_g, self.beta_g, n)

    @property
    def _bg_var(self):
        return ggd_variance(self.alpha_g, self.beta_g)


@dataclass(frozen=True, kw_only=True)
class MixedGaussian(Noise):
    """``(1 - m) H + m Z`` with ``P(m = 1) = p``."""

    var_a: float = 1.0
    var_b: float = 400.0
    p: float = DEFAULT_MIX_PROB
    kind = "mixed_gaussian"

    def __post_init__(self):
        _pos(self.var_a, "var_a")
        _pos(self.var_b, "var_b")
        _prob(self.p, "p")

    def _draw(self, rng, n):
        h = math.sqrt(self.var_a) * rng.standard_normal(n)
        z = math.sqrt(self.var_b) * rng.standard_normal(n)
        return np.where(rng.random(n) < self.p, z, h)

    @property
    def mean(self):
        return 0.0

    @property
    def var(self):
        return (1 - self.p) * self.var_a + self.p * self.var_b


@dataclass(frozen=True, kw_only=True)
class MixedGaussianSum(Noise):
    """``(1 - m) (A + B) + m Z`` with ``P(m = 1) = p``."""

    var_a1: float = 0.8
    var_a2: float = 8.0
    var_b: float = 400.0
    p: float = DEFAULT_MIX_PROB
    kind = "mixed_gaussian_sum"

    def __post_init__(self):
        _pos(self.var_a1, "var_a1")
        _pos(self.var_a2, "var_a2")
        _pos(self.var_b, "var_b")
        _prob(self.p, "p")

    def _draw(self, rng, n):
        a = math.sqrt(self.var_a1) * rng.standard_normal(n)
        b = math.sqrt(self.var_a2) * rng.standard_normal(n)
        z = math.sqrt(self.var_b) * rng.standard_normal(n)
        return np.where(rng.random(n) < self.p, z, a + b)

    @property
    def mean(self):
        return 0.0

    @property
    def var(self):
        return (1 - self.p) * (self.var_a1 + self.var_a2) + self.p * self.var_b


@dataclass(frozen=True, kw_only=True)
class FDist(Noise):
    """Raw ``F(d1, d2)`` variates; positively skewed and not centered unless asked."""

    d1: float = 5.0
    d2: float = 14.0
    centered: bool = False
    kind = "f_dist"

    def __post_init__(self):
        _pos(self.d1, "d1")
        _require(math.isfinite(self.d2) and self.d2 > 4, "d2 must be > 4 for a finite variance")

    def _draw(self, rng, n):
        v = rng.f(self.d1, self.d2, n)
        return v - self._raw_mean if self.centered else v

    @property
    def _raw_mean(self):
        return self.d2 / (self.d2 - 2.0)

    @property
    def mean(self):
        return 0.0 if self.centered else self._raw_mean

    @property
    def var(self):
        d1, d2 = self.d1, self.d2
        return 2 * d2**2 * (d1 + d2 - 2) / (d1 * (d2 - 2) ** 2 * (d2 - 4))


@dataclass(frozen=True, kw_only=True)
class Rayleigh(Noise):
    """Rayleigh variates with scale ``sigma``, shifted to zero mean by default."""

    sigma: float = 1.5
    centered: bool = True
    kind = "rayleigh"

    def __post_init__(self):
        _pos(self.sigma, "sigma")

    def _draw(self, rng, n):
        v = rng.rayleigh(self.sigma, n)
        return v - self._raw_mean if self.centered else v

    @property
    def _raw_mean(self):
        return self.sigma * math.sqrt(math.pi / 2.0)

    @property
    def mean(self):
        return 0.0 if self.centered else self._raw_mean

    @property
    def var(self):
        return (4.0 - math.pi) / 2.0 * self.sigma**2


def sample(noise: Noise, n: int, seed) -> np.ndarray:
    """Draw ``n`` samples of ``noise`` from a fresh generator seeded with ``seed``."""
    return noise.draw(make_rng(seed), n)


PRESETS = {
    "noise1": Gaussian(variance=1.0),
    "noise2": GaussianImpulse(bg_var=1.0),
    "noise3": LaplaceImpulse(bg_var=2.0),
    "noise4": BinaryImpulse(level=2.0),
    "noise5": UniformImpulse(lo=-math.sqrt(2.0), hi=math.sqrt(2.0)),
    "noise6": GGDImpulse(alpha_g=3.0, beta_g=0.3),
    "noise7": MixedGaussian(var_a=1.0, var_b=400.0),
    "noise8": MixedGaussianSum(var_a1=0.8, var_a2=8.0, var_b=400.0),
    "noise9": FDist(d1=5.0, d2=14.0),
    "noise10": Gaussian(variance=0.1),
    "noise11": Rayleigh(sigma=1.5),
}


def preset(name: str, **overrides) -> Noise:
    """Look up a named environment, optionally overriding fields.

    >>> preset("noise2", imp_prob=0.1).imp_prob
    0.1
    """
    try:
        base = PRESETS[name]
    except KeyError:
        close = difflib.get_close_matches(name, PRESETS, n=1)
        hint = f"; did you mean {close[0]!r}?" if close else ""
        raise ValueError(f"unknown noise preset {name!r}{hint}") from None
    if not overrides:
        return base
    fields = {f.name for f in dataclasses.fields(base)}
    unknown = set(overrides) - fields
    if unknown:
        raise ValueError(f"{name} has no field(s) {sorted(unknown)}; fields: {sorted(fields)}")
    return base.replace(**overrides)
