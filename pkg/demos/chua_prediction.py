"""
Chaotic time-series prediction
==============================

The voltage across one capacitor of Chua's circuit is embedded into
5-sample lag vectors and predicted one step ahead by kernel recursive
filters trained online on noisy data. Test targets are noise free.
"""
import numpy as np

from robustaf.chua import build_dataset, chua_series
from robustaf.experiments import get_scenario, run_timeseries
from robustaf.kernel import krls

series = chua_series(3105)
print(f"series: {series.size} samples, range [{series.min():.2f}, {series.max():.2f}]")

# a single clean fit first
ds = build_dataset(series, order=5, n_train=500, n_test=100)
model = krls(sigma=3.0, gamma=1e-4, ald_threshold=1e-3)
model.fit(*ds.train)
X, y = ds.test
print(f"clean KRLS: dictionary {model.size}, test MSE {np.mean((model.predict_many(X) - y) ** 2):.2e}")

for name in ("fig13a", "fig13b"):
    s = get_scenario(name).replace(runs=3)
    tr = run_timeseries(s, master_seed=0)
    row = "  ".join(
        f"{k} {tr.median_test_mse(k):.4f} (dict {int(np.median(tr.dictionary_size[k]))})" for k in tr.test_mse
    )
    print(f"{name} ({s.description}): {row}")
