"""
RGA cost family, NRGA kernels and the similarity measures built on them.

The RGA cost

    P(e) = |a - b|/a * ((lam |e|^b / |a - b| + 1)^(a/b) - 1)

with shape parameters ``alpha`` (a), ``beta`` (b) and scale ``lam`` contains
the LMP/LMS/LMF costs (alpha == beta), the logarithmic costs (alpha -> 0) and
the generalized correntropy cost (alpha -> -inf) as exact limits. Setting
``b = -alpha > 0`` turns ``(b + beta)/b - P`` into a bounded similarity kernel
(the NRGA kernel), which is what the asymmetric, entropy and metric helpers
below operate on.

All functions accept scalars or numpy arrays and broadcast.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "BRANCH_EPS",
    "Branch",
    "RgaParams",
    "NrgaParams",
    "AsymParams",
    "rga_cost",
    "rga_grad_factor",
    "nrga_kernel",
    "nrga_cost",
    "asym_kernel",
    "nrga_entropy",
    "induced_metric",
    "gram_matrix",
    "gram_min_eigenvalue",
]

# |alpha - beta| or |alpha| below this switches to the analytic limit.
BRANCH_EPS = 1e-9


class Branch(enum.Enum):
    GENERAL = "general"
    ALPHA_EQUALS_BETA = "alpha_equals_beta"
    ALPHA_ZERO = "alpha_zero"
    ALPHA_NEG_INFINITY = "alpha_neg_infinity"


def _check_positive(name: str, value: float) -> None:
    if not (math.isfinite(value) and value > 0):
        raise ValueError(f"{name} must be finite and > 0, got {value!r}")


@dataclass(frozen=True)
class RgaParams:
    """Shape/scale triple of the RGA cost.

    ``alpha = -inf`` (or :meth:`neg_infinity`) selects the generalized
    correntropy limit. A very negative but finite ``alpha`` always goes
    through the general formula. ``alpha = +inf`` is rejected: that limit is
    an exponentially growing cost and the resulting filter does not converge.
    """

    alpha: float
    beta: float
    lam: float
    branch: Branch = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        alpha = float(self.alpha)
        if math.isnan(alpha):
            raise ValueError("alpha must not be NaN")
        if alpha == math.inf:
            raise ValueError("alpha = +inf gives a non-convergent cost and is not supported")
        _check_positive("beta", self.beta)
        _check_positive("lambda", self.lam)
        if alpha == -math.inf:
            branch = Branch.ALPHA_NEG_INFINITY
        elif abs(alpha - self.beta) <= BRANCH_EPS:
            branch = Branch.ALPHA_EQUALS_BETA
        elif abs(alpha) <= BRANCH_EPS:
            branch = Branch.ALPHA_ZERO
        else:
            branch = Branch.GENERAL
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", float(self.beta))
        object.__setattr__(self, "lam", float(self.lam))
        object.__setattr__(self, "branch", branch)

    @classmethod
    def neg_infinity(cls, beta: float, lam: float) -> "RgaParams":
        """Generalized-correntropy limit, cost ``1 - exp(-lam |e|^beta / beta)``."""
        return cls(-math.inf, beta, lam)


@dataclass(frozen=True)
class NrgaParams:
    """Parameters of the NRGA kernel; ``b`` plays the role of ``-alpha``."""

    b: float
    beta: float
    lam: float

    def __post_init__(self):
        _check_positive("b", self.b)
        _check_positive("beta", self.beta)
        _check_positive("lambda", self.lam)

    @property
    def peak(self) -> float:
        """Kernel value at zero error, ``(b + beta) / b``."""
        return (self.b + self.beta) / self.b

    def as_rga(self) -> RgaParams:
        return RgaParams(-self.b, self.beta, self.lam)


@dataclass(frozen=True)
class AsymParams:
    """NRGA kernel with separate scales for positive and negative errors."""

    b: float
    beta: float
    lam_plus: float
    lam_minus: float

    def __post_init__(self):
        _check_positive("b", self.b)
        _check_positive("beta", self.beta)
        _check_positive("lambda_plus", self.lam_plus)
        _check_positive("lambda_minus", self.lam_minus)

    @property
    def peak(self) -> float:
        return (self.b + self.beta) / self.b


def _as_finite(e) -> np.ndarray:
    e = np.asarray(e, dtype=float)
    if not np.all(np.isfinite(e)):
        raise ValueError("error values must be finite")
    return e


def _scalar_or_array(x: np.ndarray):
    return float(x) if x.ndim == 0 else x


def rga_cost(p: RgaParams, e):
    """Evaluate the RGA cost ``P(e; alpha, beta, lam)``.

    Examples
    --------
    >>> rga_cost(RgaParams(2.0, 2.0, 1.0), 2.0)
    2.0
    """
    e = _as_finite(e)
    a = np.abs(e)
    beta, lam = p.beta, p.lam
    if p.branch is Branch.ALPHA_EQUALS_BETA:
        out = (lam / beta) * a**beta
    elif p.branch is Branch.ALPHA_ZERO:
        out = np.log1p(lam * a**beta / beta)
    elif p.branch is Branch.ALPHA_NEG_INFINITY:
        out = -np.expm1(-lam * a**beta / beta)
    else:
        gap = abs(p.alpha - beta)
        t = lam * a**beta / gap
        with np.errstate(over="ignore"):
            out = (gap / p.alpha) * np.expm1((p.alpha / beta) * np.log1p(t))
    return _scalar_or_array(np.asarray(out, dtype=float))


def _grad_factor(p: RgaParams, e: np.ndarray) -> np.ndarray:
    # unchecked core shared by the linear filters
    a = np.abs(e)
    beta, lam = p.beta, p.lam
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        base = np.sign(e) * a ** (beta - 1.0)
        if p.branch is Branch.ALPHA_EQUALS_BETA:
            out = base
        elif p.branch is Branch.ALPHA_ZERO:
            out = base / (lam * a**beta / beta + 1.0)
        elif p.branch is Branch.ALPHA_NEG_INFINITY:
            out = base * np.exp(-lam * a**beta / beta)
        else:
            gap = abs(p.alpha - beta)
            out = base * (lam * a**beta / gap + 1.0) ** (p.alpha / beta - 1.0)
    # zero error -> zero update, also for beta < 1 where |e|^(beta-1) blows up
    return np.where(a == 0.0, 0.0, out)


def rga_grad_factor(p: RgaParams, e):
    """Scalar error nonlinearity ``f(e)`` of the RGA update.

    ``lam * f(e)`` is the derivative of :func:`rga_cost` with respect to
    ``e``; the RGA weight update is ``c + mu * lam * f(e) * x``. ``f`` is odd
    and ``f(0) = 0`` for every ``beta``.
    """
    e = _as_finite(e)
    return _scalar_or_array(_grad_factor(p, e))


def _nrga_deficit(a: np.ndarray, b: float, beta: float, lam, peak: float) -> np.ndarray:
    # peak - kernel, computed without cancellation near zero error
    t = lam * a**beta / (b + beta)
    return -peak * np.expm1(-(b / beta) * np.log1p(t))


def _nrga_profile(a: np.ndarray, b: float, beta: float, lam, peak: float) -> np.ndarray:
    return peak * np.exp(-(b / beta) * np.log1p(lam * a**beta / (b + beta)))


def nrga_kernel(p: NrgaParams, e):
    """NRGA kernel ``k(e) = ((b+beta)/b) / (lam |e|^beta/(b+beta) + 1)^(b/beta)``.

    Even in ``e``, maximal (``(b+beta)/b``) at zero and strictly decreasing
    in ``|e|``.
    """
    e = _as_finite(e)
    return _scalar_or_array(_nrga_profile(np.abs(e), p.b, p.beta, p.lam, p.peak))


def nrga_cost(p: NrgaParams, e):
    """``(b+beta)/b - k(e)``; equals :func:`rga_cost` with ``alpha = -b``."""
    e = _as_finite(e)
    return _scalar_or_array(_nrga_deficit(np.abs(e), p.b, p.beta, p.lam, p.peak))


def asym_kernel(p: AsymParams, e):
    """Asymmetric NRGA kernel: scale ``lam_plus`` for ``e >= 0``, ``lam_minus`` otherwise."""
    e = _as_finite(e)
    lam = np.where(e >= 0.0, p.lam_plus, p.lam_minus)
    return _scalar_or_array(_nrga_profile(np.abs(e), p.b, p.beta, lam, p.peak))


def _paired(X, Y) -> np.ndarray:
    X = _as_finite(X).ravel()
    Y = _as_finite(Y).ravel()
    if X.size == 0 or X.size != Y.size:
        raise ValueError(f"X and Y must be non-empty and of equal length, got {X.size} and {Y.size}")
    return X - Y


def nrga_entropy(p: NrgaParams, X, Y) -> float:
    """Sample NRGA entropy, the mean kernel value of the paired differences.

    The result lies in ``(0, (b+beta)/b]`` and equals the upper bound exactly
    when ``X == Y``.
    """
    d = np.abs(_paired(X, Y))
    return float(p.peak - np.mean(_nrga_deficit(d, p.b, p.beta, p.lam, p.peak)))


def induced_metric(p: NrgaParams, X, Y) -> float:
    """``sqrt(k(0) - entropy(X, Y))``; a metric on sample vectors for ``0 < beta <= 2``."""
    d = np.abs(_paired(X, Y))
    return float(np.sqrt(np.mean(_nrga_deficit(d, p.b, p.beta, p.lam, p.peak))))


def gram_matrix(p: NrgaParams, points) -> np.ndarray:
    x = _as_finite(points).ravel()
    return _nrga_profile(np.abs(x[:, None] - x[None, :]), p.b, p.beta, p.lam, p.peak)


def gram_min_eigenvalue(p: NrgaParams, points) -> float:
    """Smallest eigenvalue of the NRGA Gram matrix over scalar ``points``."""
    x = _as_finite(points).ravel()
    if x.size < 2:
        raise ValueError("need at least two points")
    if x.size > 64:
        raise ValueError("at most 64 points are supported")
    return float(np.linalg.eigvalsh(gram_matrix(p, x))[0])
