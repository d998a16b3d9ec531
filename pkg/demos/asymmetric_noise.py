"""
Asymmetric noise
================

Skewed noise (mixtures, F distribution) penalizes positive and negative
errors differently. NARGA uses one scale per error sign; MACC and GMACC do
the same with Gaussian kernels. This prints the steady-state NMSD of each
algorithm in the three asymmetric environments.
"""
from robustaf.experiments import get_scenario, run_sysid

for name in ("fig9a", "fig9b", "fig9c"):
    s = get_scenario(name).replace(runs=20)
    tr = run_sysid(s, master_seed=0)
    row = "  ".join(f"{a.name} {tr.median_steady_state_db(a.name):6.1f}" for a in s.algorithms)
    print(f"{name} ({s.description}): {row}")
