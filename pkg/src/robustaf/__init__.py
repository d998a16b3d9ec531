"""Robust adaptive filtering with the RGA cost family."""
__version__ = "0.1.0"

from .cost import (  # noqa: E402
    AsymParams,
    Branch,
    NrgaParams,
    RgaParams,
    asym_kernel,
    gram_min_eigenvalue,
    induced_metric,
    nrga_cost,
    nrga_entropy,
    nrga_kernel,
    rga_cost,
    rga_grad_factor,
)
from .linear import NARGAFilter, RGAFilter, make_baseline  # noqa: E402
from .kernel import krgmcc, krls, krnrga  # noqa: E402
from .noise import preset  # noqa: E402

__all__ = [
    "AsymParams",
    "Branch",
    "NrgaParams",
    "RgaParams",
    "asym_kernel",
    "gram_min_eigenvalue",
    "induced_metric",
    "nrga_cost",
    "nrga_entropy",
    "nrga_kernel",
    "rga_cost",
    "rga_grad_factor",
    "NARGAFilter",
    "RGAFilter",
    "make_baseline",
    "krgmcc",
    "krls",
    "krnrga",
    "preset",
]
