"""
Steady-state MSD: simulation against the closed form
====================================================

For beta = 2 under Gaussian noise the RGA filter behaves like LMS with the
effective step eta = mu * lambda, and its steady-state mean-square deviation
is L eta sigma^2 / (2 - eta tr(R)). The stability bound is eta < 2 / tr(R).
"""
from robustaf.experiments import get_scenario, predict_steady_state_msd, run_sysid

s = get_scenario("fig14")
tr = run_sysid(s, master_seed=0)
for a in s.algorithms:
    t = predict_steady_state_msd(s.L, a.mu, a.params["lam"], s.noise.var)
    print(
        f"{a.name:22s} eta={t.eta:.4f}  simulated {tr.steady_state_db(a.name):7.2f} dB"
        f"  predicted {t.msd_db:7.2f} dB  (mu_max {t.mu_max:.1f})"
    )
