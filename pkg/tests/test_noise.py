import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from robustaf.noise import (
    PRESETS,
    FDist,
    Gaussian,
    GaussianImpulse,
    MixedGaussian,
    Rayleigh,
    ggd_sample,
    ggd_variance,
    make_rng,
    preset,
    sample,
)

N = 400_000


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_preset_moments(name):
    noise = PRESETS[name]
    x = sample(noise, N, seed=123)
    m = x.mean()
    c = x - m
    var = np.mean(c * c)
    se_mean = math.sqrt(var / N)
    se_var = math.sqrt(max(np.mean(c**4) - var * var, 0.0) / N)
    assert abs(m - noise.mean) <= 6 * se_mean
    assert abs(var - noise.var) <= 6 * se_var + 1e-12


def test_analytic_moment_examples():
    assert PRESETS["noise1"].var == 1.0
    assert PRESETS["noise2"].var == pytest.approx(1.0 + 0.05 * 1000.0)
    assert PRESETS["noise4"].var == pytest.approx(4.0 + 50.0)
    assert PRESETS["noise5"].var == pytest.approx(8.0 / 12.0 + 50.0)
    assert PRESETS["noise7"].var == pytest.approx(0.9 + 40.0)
    assert PRESETS["noise8"].var == pytest.approx(0.9 * 8.8 + 40.0)
    assert PRESETS["noise9"].mean == pytest.approx(14.0 / 12.0)
    assert PRESETS["noise9"].var == pytest.approx(2 * 196 * 17 / (5 * 144 * 10))
    assert PRESETS["noise10"].var == 0.1
    assert PRESETS["noise11"].mean == 0.0
    assert PRESETS["noise11"].var == pytest.approx((4 - math.pi) / 2 * 2.25)


def test_ggd_matches_gaussian_for_shape_two():
    x = ggd_sample(math.sqrt(2.0), 2.0, 20_000, seed=5)
    assert stats.kstest(x, "norm").pvalue > 1e-3
    assert ggd_variance(math.sqrt(2.0), 2.0) == pytest.approx(1.0, rel=1e-14)


@pytest.mark.parametrize("beta", [0.5, 1.0, 3.0])
def test_ggd_matches_reference_distribution(beta):
    x = ggd_sample(1.7, beta, 20_000, seed=6)
    assert stats.kstest(x, stats.gennorm(beta, scale=1.7).cdf).pvalue > 1e-3
    assert ggd_variance(1.7, beta) == pytest.approx(stats.gennorm(beta, scale=1.7).var(), rel=1e-12)


def test_ggd_laplace_variance():
    assert ggd_variance(1.0, 1.0) == pytest.approx(2.0, rel=1e-14)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(sorted(PRESETS)), st.integers(0, 2**32), st.integers(1, 500))
def test_reproducible(name, seed, n):
    a = sample(PRESETS[name], n, seed)
    b = sample(PRESETS[name], n, seed)
    assert np.array_equal(a, b)


def test_different_seeds_differ_and_are_uncorrelated():
    a = sample(PRESETS["noise1"], 50_000, seed=np.random.SeedSequence(1, spawn_key=(0, 1)))
    b = sample(PRESETS["noise1"], 50_000, seed=np.random.SeedSequence(1, spawn_key=(1, 1)))
    assert not np.array_equal(a, b)
    assert abs(np.corrcoef(a, b)[0, 1]) < 6 / math.sqrt(50_000)


def test_consecutive_samples_uncorrelated():
    x = sample(PRESETS["noise2"], 100_000, seed=9)
    r = np.corrcoef(x[:-1], x[1:])[0, 1]
    assert abs(r) < 6 / math.sqrt(100_000)


def test_impulse_rate():
    noise = GaussianImpulse(bg_var=1e-6, imp_var=1e6, imp_prob=0.05)
    x = sample(noise, 200_000, seed=3)
    rate = np.mean(np.abs(x) > 0.1)
    assert abs(rate - 0.05) < 6 * math.sqrt(0.05 * 0.95 / 200_000)


def test_make_rng_is_philox():
    assert isinstance(make_rng(0).bit_generator, np.random.Philox)


def test_preset_overrides_and_errors():
    assert preset("noise2", imp_prob=0.1).imp_prob == 0.1
    assert preset("noise2") is PRESETS["noise2"]
    with pytest.raises(ValueError, match="noise2"):
        preset("noise22")
    with pytest.raises(ValueError, match="fields"):
        preset("noise2", sigma=1.0)


@pytest.mark.parametrize(
    "make",
    [
        lambda: Gaussian(variance=-1.0),
        lambda: GaussianImpulse(imp_prob=1.5),
        lambda: MixedGaussian(var_b=0.0),
        lambda: FDist(d2=3.0),
        lambda: Rayleigh(sigma=float("nan")),
    ],
)
def test_invalid_parameters(make):
    with pytest.raises(ValueError):
        make()


def test_draw_rejects_empty():
    with pytest.raises(ValueError):
        sample(PRESETS["noise1"], 0, seed=0)
    with pytest.raises(ValueError):
        ggd_sample(1.0, 2.0, 0, seed=0)


def test_as_dict_round_trip():
    noise = PRESETS["noise6"]
    d = noise.as_dict()
    assert d["kind"] == "ggd_impulse"
    assert type(noise)(**{k: v for k, v in d.items() if k != "kind"}) == noise
