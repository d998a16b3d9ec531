"""
Online linear adaptive filters.

Every filter here has the stochastic-gradient form

    e_i     = d_i - c_i^T x_i
    c_{i+1} = c_i + mu * g(e_i) * x_i

and differs only in the scalar error nonlinearity ``g``. Weights may be a
single vector of shape ``(L,)`` or a batch of independent filters of shape
``(R, L)``; in the batched form ``x`` has shape ``(R, L)`` and ``d`` shape
``(R,)``, which is how the Monte Carlo harness runs all realizations at once.
"""
from __future__ import annotations

import math

import numpy as np

from .cost import AsymParams, RgaParams, _grad_factor

__all__ = [
    "FilterDivergence",
    "AdaptiveFilter",
    "RGAFilter",
    "NARGAFilter",
    "MACCFilter",
    "GMACCFilter",
    "BASELINES",
    "make_baseline",
]


class FilterDivergence(ArithmeticError):
    """Raised when a weight update produces non-finite weights."""

    def __init__(self, iteration: int, name: str = "filter"):
        super().__init__(f"{name} diverged at iteration {iteration}")
        self.iteration = iteration


class AdaptiveFilter:
    """Base class: tapped-delay-line weights updated by ``mu * g(e) * x``.

    Parameters
    ----------
    length : int
        Number of taps ``L``.
    mu : float
        Step size, applied exactly as written in the update above.
    weights : array_like, optional
        Initial weights, shape ``(L,)`` or ``(R, L)``. Zeros by default.
    """

    name = "adaptive"

    def __init__(self, length: int, mu: float, weights=None):
        if length < 1:
            raise ValueError("length must be >= 1")
        if not (math.isfinite(mu) and mu > 0):
            raise ValueError(f"mu must be finite and > 0, got {mu!r}")
        self.length = int(length)
        self.mu = float(mu)
        if weights is None:
            weights = np.zeros(self.length)
        weights = np.array(weights, dtype=float)
        if weights.shape[-1] != self.length or weights.ndim > 2:
            raise ValueError(f"weights must have shape (L,) or (R, L) with L={self.length}")
        self.weights = weights
        self.iteration = 0
        self.diverged = np.zeros(weights.shape[:-1], dtype=bool)

    def reset(self, batch: int | None = None):
        shape = (self.length,) if batch is None else (batch, self.length)
        self.weights = np.zeros(shape)
        self.iteration = 0
        self.diverged = np.zeros(shape[:-1], dtype=bool)

    def predict(self, x):
        x = np.asarray(x, dtype=float)
        if x.shape[-1] != self.length:
            raise ValueError(f"input has {x.shape[-1]} taps, filter has {self.length}")
        return np.einsum("...i,...i->...", self.weights, x)

    def gain(self, e):
        """Scalar nonlinearity ``g(e)`` multiplying ``mu * x`` in the update."""
        raise NotImplementedError

    def step(self, x, d):
        """Process one sample (or one sample per batch row); return the a-priori error."""
        x = np.asarray(x, dtype=float)
        e = np.asarray(d, dtype=float) - self.predict(x)
        with np.errstate(over="ignore", invalid="ignore"):
            g = self.gain(e)
            w = self.weights + self.mu * np.asarray(g)[..., None] * x
        self.iteration += 1
        bad = ~np.all(np.isfinite(w), axis=-1)
        if w.ndim == 1:
            if bad:
                raise FilterDivergence(self.iteration, self.name)
        else:
            self.diverged |= bad
        self.weights = w
        return e

    def run(self, X, d):
        """Filter a whole sequence; ``X`` has shape ``(N, L)``, returns the errors."""
        X = np.asarray(X, dtype=float)
        d = np.asarray(d, dtype=float)
        return np.array([self.step(X[i], d[i]) for i in range(len(d))])

    def __repr__(self):
        return f"{type(self).__name__}(length={self.length}, mu={self.mu})"


class RGAFilter(AdaptiveFilter):
    """RGA filter, ``g(e) = lam * f(e)`` with ``f`` the RGA error nonlinearity."""

    name = "RGA"

    def __init__(self, length: int, mu: float, params: RgaParams, weights=None):
        super().__init__(length, mu, weights)
        self.params = params

    def gain(self, e):
        return self.params.lam * _grad_factor(self.params, e)

    def __repr__(self):
        p = self.params
        return f"RGAFilter(length={self.length}, mu={self.mu}, alpha={p.alpha}, beta={p.beta}, lam={p.lam})"


class NARGAFilter(AdaptiveFilter):
    """Asymmetric NRGA filter: RGA with ``alpha = -b`` and a sign-dependent scale.

    With ``lam_plus == lam_minus`` the update is bit-identical to
    ``RGAFilter`` with ``RgaParams(-b, beta, lam)``.
    """

    name = "NARGA"

    def __init__(self, length: int, mu: float, params: AsymParams, weights=None):
        super().__init__(length, mu, weights)
        self.params = params
        self._plus = RgaParams(-params.b, params.beta, params.lam_plus)
        self._minus = RgaParams(-params.b, params.beta, params.lam_minus)

    def gain(self, e):
        e = np.asarray(e, dtype=float)
        pos = e >= 0.0
        g_plus = self._plus.lam * _grad_factor(self._plus, e)
        if self._plus == self._minus:
            return g_plus
        g_minus = self._minus.lam * _grad_factor(self._minus, e)
        return np.where(pos, g_plus, g_minus)

    def step_size(self, e):
        """Error-dependent LMS step ``u(e)`` such that the update is ``u(e) * e * x``."""
        e = np.asarray(e, dtype=float)
        p = self.params
        lam = np.where(e >= 0.0, p.lam_plus, p.lam_minus)
        a = np.abs(e)
        with np.errstate(divide="ignore"):
            return self.mu * lam * a ** (p.beta - 2.0) * (lam * a**p.beta / (p.b + p.beta) + 1.0) ** (
                -(p.b + p.beta) / p.beta
            )


class MACCFilter(AdaptiveFilter):
    """Maximum asymmetric correntropy: Gaussian kernel with width ``sigma_plus``/``sigma_minus``."""

    name = "MACC"

    def __init__(self, length: int, mu: float, sigma_plus: float, sigma_minus: float, weights=None):
        super().__init__(length, mu, weights)
        if not (sigma_plus > 0 and sigma_minus > 0):
            raise ValueError("sigma_plus and sigma_minus must be > 0")
        self.sigma_plus = float(sigma_plus)
        self.sigma_minus = float(sigma_minus)

    def gain(self, e):
        s2 = np.where(np.asarray(e) >= 0.0, self.sigma_plus, self.sigma_minus) ** 2
        return (e / s2) * np.exp(-(e * e) / (2.0 * s2))


class GMACCFilter(AdaptiveFilter):
    """Generalized asymmetric correntropy with shape ``alpha_g``.

    ``g(e) = (alpha_g / s^alpha_g) |e|^(alpha_g-1) sgn(e) exp(-(|e|/s)^alpha_g)``
    with ``s`` the side-dependent width. For ``alpha_g = 2`` this is MACC with
    every width multiplied by ``sqrt(2)``.
    """

    name = "GMACC"

    def __init__(self, length, mu, sigma_plus, sigma_minus, alpha_g, weights=None):
        super().__init__(length, mu, weights)
        if not (sigma_plus > 0 and sigma_minus > 0 and alpha_g > 0):
            raise ValueError("sigma_plus, sigma_minus and alpha_g must be > 0")
        self.sigma_plus = float(sigma_plus)
        self.sigma_minus = float(sigma_minus)
        self.alpha_g = float(alpha_g)

    def gain(self, e):
        e = np.asarray(e, dtype=float)
        s = np.where(e >= 0.0, self.sigma_plus, self.sigma_minus)
        a = np.abs(e)
        ag = self.alpha_g
        with np.errstate(divide="ignore", invalid="ignore"):
            g = (ag / s**ag) * np.sign(e) * a ** (ag - 1.0) * np.exp(-((a / s) ** ag))
        return np.where(a == 0.0, 0.0, g)


def _rga(alpha, beta, lam):
    return lambda length, mu: RGAFilter(length, mu, RgaParams(alpha, beta, lam))


# kind -> (factory(length, mu, **params), accepted parameter names)
BASELINES = {
    "LMS": (lambda length, mu: _rga(2.0, 2.0, 1.0)(length, mu), ()),
    "LMF": (lambda length, mu: _rga(4.0, 4.0, 1.0)(length, mu), ()),
    "LMP": (lambda length, mu, p: _rga(p, p, 1.0)(length, mu), ("p",)),
    "SA": (lambda length, mu: _rga(1.0, 1.0, 1.0)(length, mu), ()),
    "LMLS": (lambda length, mu, gamma=1.0: _rga(0.0, 2.0, gamma)(length, mu), ("gamma",)),
    "RLMLS": (lambda length, mu, gamma=1.0, beta=1.0: _rga(0.0, beta, gamma)(length, mu), ("gamma", "beta")),
    "MCC": (
        lambda length, mu, sigma=1.0: RGAFilter(length, mu, RgaParams.neg_infinity(2.0, 1.0 / sigma**2)),
        ("sigma",),
    ),
    "GMCC": (
        lambda length, mu, lam_g, alpha_g: RGAFilter(length, mu, RgaParams.neg_infinity(alpha_g, lam_g)),
        ("lam_g", "alpha_g"),
    ),
    "RGA": (
        lambda length, mu, alpha, beta, lam: RGAFilter(length, mu, RgaParams(alpha, beta, lam)),
        ("alpha", "beta", "lam"),
    ),
    "NARGA": (
        lambda length, mu, b, beta, lam_plus, lam_minus: NARGAFilter(
            length, mu, AsymParams(b, beta, lam_plus, lam_minus)
        ),
        ("b", "beta", "lam_plus", "lam_minus"),
    ),
    "MACC": (MACCFilter, ("sigma_plus", "sigma_minus")),
    "GMACC": (GMACCFilter, ("sigma_plus", "sigma_minus", "alpha_g")),
}


def make_baseline(kind: str, length: int, mu: float, **params) -> AdaptiveFilter:
    """Build a named filter configuration.

    The classical algorithms are realized as limit branches of the RGA cost:
    LMS/LMF/LMP/SA use ``alpha == beta``, LMLS/RLMLS ``alpha = 0`` (scale
    ``gamma``), MCC and GMCC the ``alpha -> -inf`` limit with
    ``lam = 1/sigma**2`` and ``lam = lam_g`` respectively. MACC and GMACC have
    their own update rules.

    Raises
    ------
    ValueError
        Unknown ``kind`` or parameter names.
    """
    key = kind.upper()
    if key not in BASELINES:
        raise ValueError(f"unknown filter kind {kind!r}; choose from {sorted(BASELINES)}")
    factory, names = BASELINES[key]
    unknown = set(params) - set(names)
    if unknown:
        raise ValueError(f"{key} does not take parameter(s) {sorted(unknown)}; accepted: {list(names)}")
    f = factory(length, mu, **params)
    f.name = key
    return f
