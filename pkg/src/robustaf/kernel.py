"""
Kernel recursive filters: KRNRGA and the KRLS / KRGMCC baselines.

All three share one recursion. With ``K`` the Gram matrix of the retained
centers, ``d`` their targets and ``G`` a per-sample diagonal weight, the
coefficients solve

    theta = [K + r * diag(G)]^{-1} d

where ``r`` is the regularization (``gamma / lam`` for the NRGA kernel,
``gamma`` otherwise). ``G`` is the inverse of the error weighting implied by
the cost: ``1`` for KRLS, the generalized-correntropy weight for KRGMCC and
the NRGA weight ``|e|^(beta-2) (lam |e|^beta/(b+beta) + 1)^(-(b+beta)/beta)``
for KRNRGA, each frozen at the a-priori error seen when the sample arrived.
``Q = [K + r diag(G)]^{-1}`` is grown one row/column at a time with the block
inverse identity, so every update costs O(n^2) in the dictionary size.

Dictionary growth is controlled with approximate linear dependence (ALD): a
sample is only added when its feature-space projection residual onto the
current dictionary exceeds ``ald_threshold``.
"""
from __future__ import annotations

import logging
import math

import numpy as np

from .cost import NrgaParams, _nrga_profile

__all__ = [
    "NrgaKernel",
    "GaussianKernel",
    "GeneralizedGaussianKernel",
    "kernel_eval",
    "inverse_weight",
    "KernelRecursiveFilter",
    "krnrga",
    "krls",
    "krgmcc",
]

log = logging.getLogger(__name__)

# |e| floor inside the error weights; |e|^(beta-2) diverges at 0 for beta < 2
ERROR_FLOOR = 1e-8
EPS_FLOOR = 1e-12
# cap on log(G) so gross outliers get a huge but finite regularizer
LOG_G_MAX = 600.0


def _distances(centers: np.ndarray, x: np.ndarray) -> np.ndarray:
    return np.sqrt(np.sum((centers - x) ** 2, axis=-1))


class NrgaKernel:
    """NRGA kernel applied to the Euclidean distance between input vectors."""

    name = "NRGA"

    def __init__(self, params: NrgaParams):
        self.params = params

    @property
    def peak(self) -> float:
        return self.params.peak

    def profile(self, dist):
        p = self.params
        return _nrga_profile(np.asarray(dist, dtype=float), p.b, p.beta, p.lam, p.peak)

    def log_error_weight(self, e: float) -> float:
        p = self.params
        log_a = math.log(max(abs(e), ERROR_FLOOR))
        # log1p(lam a^beta / (b+beta)) in log space so huge errors cannot overflow
        log_t = math.log(p.lam) + p.beta * log_a - math.log(p.b + p.beta)
        return (p.beta - 2.0) * log_a - (p.b + p.beta) / p.beta * float(np.logaddexp(0.0, log_t))

    def regularization(self, gamma: float) -> float:
        return gamma / self.params.lam

    def describe(self) -> dict:
        return {"kernel": self.name, "b": self.params.b, "beta": self.params.beta, "lam": self.params.lam}


class GaussianKernel:
    """``exp(-|u - v|^2 / (2 sigma^2))`` with unit error weights (plain KRLS)."""

    name = "Gaussian"

    def __init__(self, sigma: float):
        if not sigma > 0:
            raise ValueError("sigma must be > 0")
        self.sigma = float(sigma)

    peak = 1.0

    def profile(self, dist):
        dist = np.asarray(dist, dtype=float)
        return np.exp(-(dist * dist) / (2.0 * self.sigma**2))

    def log_error_weight(self, e: float) -> float:
        return 0.0

    def regularization(self, gamma: float) -> float:
        return gamma

    def describe(self) -> dict:
        return {"kernel": self.name, "sigma": self.sigma}


class GeneralizedGaussianKernel:
    """``exp(-lam_g |u - v|^alpha_g)``; error weights ``exp(-lam_g |e|^alpha_g) |e|^(alpha_g - 2)``."""

    name = "GeneralizedGaussian"

    def __init__(self, lam_g: float, alpha_g: float):
        if not (lam_g > 0 and alpha_g > 0):
            raise ValueError("lam_g and alpha_g must be > 0")
        self.lam_g = float(lam_g)
        self.alpha_g = float(alpha_g)

    peak = 1.0

    def profile(self, dist):
        return np.exp(-self.lam_g * np.asarray(dist, dtype=float) ** self.alpha_g)

    def log_error_weight(self, e: float) -> float:
        log_a = math.log(max(abs(e), ERROR_FLOOR))
        return -self.lam_g * math.exp(min(self.alpha_g * log_a, 700.0)) + (self.alpha_g - 2.0) * log_a

    def regularization(self, gamma: float) -> float:
        return gamma

    def describe(self) -> dict:
        return {"kernel": self.name, "lam_g": self.lam_g, "alpha_g": self.alpha_g}


def inverse_weight(kernel, e: float) -> float:
    """``G = 1 / omega(e)``, the diagonal regularization multiplier for one sample."""
    return math.exp(min(-kernel.log_error_weight(e), LOG_G_MAX))


def kernel_eval(kernel, u, v) -> float:
    """Kernel value between two input vectors of equal length."""
    u = np.atleast_1d(np.asarray(u, dtype=float))
    v = np.atleast_1d(np.asarray(v, dtype=float))
    if u.shape != v.shape:
        raise ValueError(f"shape mismatch: {u.shape} vs {v.shape}")
    return float(kernel.profile(np.sqrt(np.sum((u - v) ** 2))))


class KernelRecursiveFilter:
    """Growing-dictionary kernel recursive filter.

    Parameters
    ----------
    kernel : NrgaKernel, GaussianKernel or GeneralizedGaussianKernel
        Input kernel; also fixes the error weighting and regularization.
    gamma : float
        Ridge regularization factor.
    ald_threshold : float or None
        ALD admission threshold. ``None`` admits every sample.

    Attributes
    ----------
    centers : ndarray, shape (n, P)
        Retained inputs.
    theta : ndarray, shape (n,)
        Expansion coefficients.
    Q : ndarray, shape (n, n)
        ``[K + r diag(G)]^{-1}``.
    G : ndarray, shape (n,)
        Inverse error weights frozen at admission (``G[0] = 1``).
    """

    def __init__(self, kernel, gamma: float = 0.1, ald_threshold: float | None = 0.01, eps_floor: float = EPS_FLOOR):
        if not gamma > 0:
            raise ValueError("gamma must be > 0")
        if ald_threshold is not None and not ald_threshold >= 0:
            raise ValueError("ald_threshold must be >= 0 or None")
        self.kernel = kernel
        self.gamma = float(gamma)
        self.reg = kernel.regularization(self.gamma)
        self.ald_threshold = ald_threshold
        self.eps_floor = eps_floor
        self._n = 0
        self._cap = 0
        self.n_seen = 0
        self.n_rejected = 0
        self.degenerate_events = 0

    # storage is preallocated and doubled on demand; the public arrays are views
    def _reserve(self, n: int, dim: int) -> None:
        if n <= self._cap:
            return
        cap = max(16, 2 * self._cap)
        while cap < n:
            cap *= 2
        m = self._n

        def grow(old, shape):
            buf = np.zeros(shape)
            if old is not None and m:
                buf[tuple(slice(0, k) for k in old.shape)] = old
            return buf

        self._c = grow(self._c[:m] if m else None, (cap, dim))
        self._th = grow(self._th[:m] if m else None, (cap,))
        self._g = grow(self._g[:m] if m else None, (cap,))
        self._d = grow(self._d[:m] if m else None, (cap,))
        self._q = grow(self._q[:m, :m] if m else None, (cap, cap))
        self._ki = grow(self._ki[:m, :m] if m else None, (cap, cap))
        self._cap = cap

    @property
    def size(self) -> int:
        return self._n

    @property
    def centers(self):
        return None if self._n == 0 else self._c[: self._n]

    @property
    def theta(self):
        return None if self._n == 0 else self._th[: self._n]

    @property
    def Q(self):
        return None if self._n == 0 else self._q[: self._n, : self._n]

    @property
    def G(self):
        return None if self._n == 0 else self._g[: self._n]

    @property
    def targets(self):
        return None if self._n == 0 else self._d[: self._n]

    def initialize(self, x, d: float) -> None:
        x = np.atleast_1d(np.asarray(x, dtype=float))
        if x.ndim != 1:
            raise ValueError("inputs must be vectors")
        kxx = float(self.kernel.peak)
        q = 1.0 / (self.reg + kxx)
        self._n = 0
        self._cap = 0
        self._reserve(1, x.size)
        self._c[0] = x
        self._q[0, 0] = q
        self._th[0] = q * float(d)
        self._g[0] = 1.0
        self._d[0] = float(d)
        self._ki[0, 0] = 1.0 / kxx
        self._n = 1
        self.n_seen = 1
        self.n_rejected = 0
        self.degenerate_events = 0

    def kernel_row(self, x) -> np.ndarray:
        if self._n == 0:
            raise RuntimeError("model is empty; call update() or initialize() first")
        x = np.atleast_1d(np.asarray(x, dtype=float))
        if x.shape != self._c.shape[1:]:
            raise ValueError(f"input has shape {x.shape}, centers have {self._c.shape[1:]}")
        return self.kernel.profile(_distances(self.centers, x))

    def predict(self, x) -> float:
        return float(self.kernel_row(x) @ self.theta)

    def predict_many(self, X) -> np.ndarray:
        return np.array([self.predict(x) for x in np.asarray(X, dtype=float)])

    def ald_admit(self, x, h=None):
        """Return ``(admit, delta)`` with ``delta = k(x,x) - h^T K^{-1} h``."""
        if h is None:
            h = self.kernel_row(x)
        n = self._n
        delta = float(self.kernel.peak - h @ (self._ki[:n, :n] @ h))
        if not math.isfinite(delta):
            log.warning("ALD residual is not finite (ill-conditioned dictionary Gram); admitting sample")
            return True, delta
        threshold = 0.0 if self.ald_threshold is None else self.ald_threshold
        return delta > threshold, delta

    def _grow_kinv(self, h: np.ndarray, delta: float) -> None:
        # called after the new center is stored, so n includes it
        n = self._n
        if not (math.isfinite(delta) and delta > 0):
            c = self.centers
            gram = self.kernel.profile(np.sqrt(np.sum((c[:, None, :] - c[None, :, :]) ** 2, axis=-1)))
            self._ki[:n, :n] = np.linalg.pinv(gram)
            return
        m = n - 1
        a = self._ki[:m, :m] @ h
        self._ki[:m, :m] += np.outer(a, a) / delta
        self._ki[:m, m] = -a / delta
        self._ki[m, :m] = -a / delta
        self._ki[m, m] = 1.0 / delta

    def update(self, x, d: float) -> float:
        """Process one (input, target) pair and return the a-priori error."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        d = float(d)
        if self._n == 0:
            self.initialize(x, d)
            return d
        self.n_seen += 1
        h = self.kernel_row(x)
        e = d - float(h @ self.theta)
        delta = None
        if self.ald_threshold is not None:
            admit, delta = self.ald_admit(x, h)
            if not admit:
                self.n_rejected += 1
                return e
        n = self._n
        z = self._q[:n, :n] @ h
        g = inverse_weight(self.kernel, e)
        eps = float(self.kernel.peak + self.reg * g - z @ h)
        if not eps > self.eps_floor:
            self.degenerate_events += 1
            log.info("skipping sample %d: epsilon=%g below floor", self.n_seen, eps)
            return e
        self._reserve(n + 1, x.size)
        self._q[:n, :n] += np.outer(z, z) / eps
        self._q[:n, n] = -z / eps
        self._q[n, :n] = -z / eps
        self._q[n, n] = 1.0 / eps
        self._th[:n] -= z * (e / eps)
        self._th[n] = e / eps
        self._g[n] = g
        self._d[n] = d
        self._c[n] = x
        self._n = n + 1
        if self.ald_threshold is not None:
            self._grow_kinv(h, delta)
        return e

    def fit(self, X, d) -> np.ndarray:
        """Run :meth:`update` over a sequence; returns the a-priori errors."""
        X = np.asarray(X, dtype=float)
        d = np.asarray(d, dtype=float)
        return np.array([self.update(X[i], d[i]) for i in range(len(d))])

    def __repr__(self):
        return f"KernelRecursiveFilter({self.kernel.describe()}, gamma={self.gamma}, size={self.size})"


def krnrga(b: float, beta: float, lam: float, gamma: float = 0.1, ald_threshold: float | None = 0.01):
    """KRNRGA: NRGA input kernel and NRGA error weighting."""
    return KernelRecursiveFilter(NrgaKernel(NrgaParams(b, beta, lam)), gamma, ald_threshold)


def krls(sigma: float, gamma: float = 0.1, ald_threshold: float | None = 0.01):
    """Plain KRLS with a Gaussian kernel."""
    return KernelRecursiveFilter(GaussianKernel(sigma), gamma, ald_threshold)


def krgmcc(sigma: float, alpha_g: float = 2.0, gamma: float = 0.1, ald_threshold: float | None = 0.01):
    """KRGMCC with generalized Gaussian kernel ``exp(-|u|^alpha_g / (2 sigma^alpha_g))``."""
    return KernelRecursiveFilter(GeneralizedGaussianKernel(1.0 / (2.0 * sigma**alpha_g), alpha_g), gamma, ald_threshold)
