"""
Chua's circuit voltage series and the delay-embedded prediction dataset.

The circuit state is ``(u1, u2, iL)``: the two capacitor voltages and the
inductor current, with the piecewise-linear diode characteristic

    phi(u) = m1 u + (m0 - m1)/2 (|u + Bp| - |u - Bp|).

Two sign conventions for the second and third equations are available:

``"textbook"`` (default)
    du2 = (u1 - u2)/(R C2) + iL/C2,  diL = -u2/L
``"alternate"``
    du2 = (u1 - u2)/(R C2) - iL/C1,  diL = -u2/L

The alternate form is unstable for the standard constants (trajectories blow
up within a few hundred steps), so the default is the textbook form with the
canonical normalized double-scroll constants.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .noise import Noise, make_rng

__all__ = [
    "ChuaParams",
    "ChuaIntegrationError",
    "chua_derivative",
    "integrate_rk4",
    "chua_series",
    "EmbeddedDataset",
    "build_dataset",
    "write_series_csv",
]


class ChuaIntegrationError(ArithmeticError):
    def __init__(self, step: int):
        super().__init__(f"Chua trajectory became non-finite at step {step}")
        self.step = step


@dataclass(frozen=True)
class ChuaParams:
    c1: float = 1.0 / 9.0
    c2: float = 1.0
    r: float = 1.0
    l_ind: float = 7.0 / 100.0
    m0: float = -8.0 / 7.0
    m1: float = -5.0 / 7.0
    bp: float = 1.0
    variant: str = "textbook"

    def __post_init__(self):
        for name in ("c1", "c2", "r", "l_ind", "bp"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be finite and > 0, got {v!r}")
        if not (math.isfinite(self.m0) and math.isfinite(self.m1)):
            raise ValueError("m0 and m1 must be finite")
        if self.variant not in ("textbook", "alternate"):
            raise ValueError(f"variant must be 'textbook' or 'alternate', got {self.variant!r}")

    def diode(self, u: float) -> float:
        return self.m1 * u + 0.5 * (self.m0 - self.m1) * (abs(u + self.bp) - abs(u - self.bp))


def chua_derivative(p: ChuaParams, state) -> np.ndarray:
    """Right-hand side ``(du1, du2, diL)`` of the circuit equations."""
    u1, u2, il = (float(s) for s in state)
    du1 = (u2 - u1) / (p.r * p.c1) - p.diode(u1) / p.c1
    if p.variant == "textbook":
        du2 = (u1 - u2) / (p.r * p.c2) + il / p.c2
    else:
        du2 = (u1 - u2) / (p.r * p.c2) - il / p.c1
    dil = -u2 / p.l_ind
    return np.array([du1, du2, dil])


def integrate_rk4(p: ChuaParams, state0, h: float, steps: int, sample_every: int = 1, transient: int = 0):
    """Classical RK4 integration; returns ``u1`` every ``sample_every`` steps after ``transient`` steps.

    The returned array holds the states reached after steps
    ``transient + sample_every, transient + 2*sample_every, ...`` up to
    ``transient + steps``.

    Raises
    ------
    ChuaIntegrationError
        If the state stops being finite.
    """
    if not h > 0:
        raise ValueError("h must be > 0")
    if not (steps >= sample_every >= 1) or transient < 0:
        raise ValueError("need steps >= sample_every >= 1 and transient >= 0")
    s = np.array(state0, dtype=float)
    if s.shape != (3,):
        raise ValueError("state0 must be (u1, u2, iL)")
    out = []
    total = transient + steps
    for k in range(1, total + 1):
        k1 = chua_derivative(p, s)
        k2 = chua_derivative(p, s + 0.5 * h * k1)
        k3 = chua_derivative(p, s + 0.5 * h * k2)
        k4 = chua_derivative(p, s + h * k3)
        s = s + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.all(np.isfinite(s)) or np.max(np.abs(s)) > 1e12:
            raise ChuaIntegrationError(k)
        if k > transient and (k - transient) % sample_every == 0:
            out.append(s[0])
    return np.array(out)


def chua_series(
    n_samples: int,
    params: ChuaParams | None = None,
    state0=(0.1, 0.0, 0.0),
    h: float = 0.01,
    sample_every: int = 10,
    transient: int = 5000,
) -> np.ndarray:
    """``n_samples`` values of the ``u1`` voltage with the default sampling setup."""
    params = params or ChuaParams()
    return integrate_rk4(params, state0, h, n_samples * sample_every, sample_every, transient)


@dataclass
class EmbeddedDataset:
    """Delay-embedded pairs; ``inputs[i] = (s[i-1], ..., s[i-P])``, ``targets[i] = s[i]``.

    ``clean_targets`` holds the noiseless series values at the same
    positions. The first ``n_train`` pairs form the training set.
    """

    inputs: np.ndarray
    targets: np.ndarray
    clean_targets: np.ndarray
    n_train: int
    n_test: int

    @property
    def train(self):
        return self.inputs[: self.n_train], self.targets[: self.n_train]

    @property
    def test(self):
        sl = slice(self.n_train, self.n_train + self.n_test)
        return self.inputs[sl], self.clean_targets[sl]


def build_dataset(
    series,
    noise: Noise | None = None,
    seed=0,
    order: int = 5,
    n_train: int = 3000,
    n_test: int = 100,
) -> EmbeddedDataset:
    """Embed ``series`` into (lag vector, next value) pairs.

    Noise is added to the part of the series that feeds the training set
    (the first ``order + n_train`` values); test targets stay clean. Because
    inputs are built from the same contaminated series, ``inputs[i][0] ==
    targets[i-1]`` holds everywhere.
    """
    s = np.asarray(series, dtype=float)
    need = order + n_train + n_test
    if order < 1 or n_train < 1 or n_test < 0:
        raise ValueError("order and n_train must be >= 1, n_test >= 0")
    if s.size < need:
        raise ValueError(f"series has {s.size} samples, need at least {need}")
    s = s[:need]
    noisy = s.copy()
    n_noisy = order + n_train
    if noise is not None:
        noisy[:n_noisy] += noise.draw(make_rng(seed), n_noisy)
    windows = np.lib.stride_tricks.sliding_window_view(noisy, order)[:-1]
    inputs = windows[:, ::-1].copy()
    return EmbeddedDataset(
        inputs=inputs,
        targets=noisy[order:].copy(),
        clean_targets=s[order:].copy(),
        n_train=n_train,
        n_test=n_test,
    )


def write_series_csv(path, series) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["index", "u1"])
        for i, v in enumerate(np.asarray(series, dtype=float)):
            w.writerow([i, repr(float(v))])
