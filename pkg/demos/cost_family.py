"""
The RGA cost family
===================

One cost with three knobs (alpha, beta, lambda) covers several classic
criteria as limits. This script evaluates a few members, checks the
analytic gradient against a finite difference and looks at the kernel
form used by the kernel filters.
"""
import numpy as np

from robustaf.cost import NrgaParams, RgaParams, gram_min_eigenvalue, nrga_kernel, rga_cost, rga_grad_factor

e = np.array([0.1, 0.5, 1.0, 3.0, 30.0])

# alpha == beta gives the plain power cost (LMS for beta = 2)
# alpha < 0 saturates: large errors stop pulling on the weights
for label, p in [
    ("alpha=beta=2 (LMS-like)", RgaParams(2.0, 2.0, 1.0)),
    ("alpha=0 (log cost)", RgaParams(0.0, 2.0, 1.0)),
    ("alpha=-100, beta=2.1", RgaParams(-100.0, 2.1, 0.01)),
    ("alpha=-10, beta=2", RgaParams(-10.0, 2.0, 1.0)),
]:
    print(f"{label:26s} cost {np.round(rga_cost(p, e), 4)}")
    print(f"{'':26s} f(e) {np.round(rga_grad_factor(p, e), 4)}")

# lambda * f(e) is the derivative of the cost
p = RgaParams(-100.0, 2.1, 0.01)
h = 1e-6
fd = (rga_cost(p, 0.5 + h) - rga_cost(p, 0.5 - h)) / (2 * h)
print("\nfinite difference", fd, "analytic", p.lam * rga_grad_factor(p, 0.5))

# kernel view: peak (b+beta)/b at zero, decaying in |e|
k = NrgaParams(200.0, 2.2, 1.1)
print("\nkernel at 0, 1, 5:", nrga_kernel(k, np.array([0.0, 1.0, 5.0])), "peak", k.peak)

# positive semidefinite Gram matrices need beta <= 2
pts = np.linspace(0, 6, 16)
for beta in (1.0, 2.0, 4.0):
    print(f"beta={beta:g}: Gram min eigenvalue {gram_min_eigenvalue(NrgaParams(10.0, beta, 1.0), pts):.3e}")
