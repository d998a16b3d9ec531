"""
System identification under impulsive noise
===========================================

A length-9 unknown system is identified from white Gaussian input while
the measurements are hit by occasional large impulses. The squared-error
LMS filter is dragged around by every impulse; saturating costs are not.

Pass a scenario name (default fig7b) and a run count to change the setup.
"""
import sys

from robustaf.experiments import get_scenario, run_sysid

name = sys.argv[1] if len(sys.argv) > 1 else "fig7b"
runs = int(sys.argv[2]) if len(sys.argv) > 2 else 20

s = get_scenario(name).replace(runs=runs)
print(f"{s.name}: {s.description}; {runs} runs of {s.N} iterations")
tr = run_sysid(s, master_seed=0)

for a in s.algorithms:
    curve = tr.nmsd_db[a.name]
    print(
        f"{a.name:8s} NMSD at 500: {curve[500]:7.2f} dB   steady state: {tr.steady_state_db(a.name):7.2f} dB"
        + (f"   ({tr.diverged[a.name]} runs diverged)" if tr.diverged[a.name] else "")
    )
