import math

import numpy as np
import pytest

from ginprod.sampling import (
    SeedSpec,
    StreamPool,
    ThetaPoint,
    ginibre_real,
    larger_singular_weight_cdf,
    sample_s3,
    sample_theta,
    singular_values_2x2_distribution_check,
)

N_DRAWS = 100_000
# 1% Kolmogorov-Smirnov critical value: 1.63 / sqrt(N)
KS_CRIT = 1.63 / math.sqrt(N_DRAWS)


def test_ginibre_deterministic_per_seed():
    s = SeedSpec(42, 7)
    a = ginibre_real(2, s)
    b = ginibre_real(2, s)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, ginibre_real(2, SeedSpec(42, 8)))
    assert not np.array_equal(a, ginibre_real(2, SeedSpec(43, 7)))


def test_stream_pool_matches_fresh_generators():
    pool = StreamPool()
    for sid in (0, 1, 2**40, 2**63 + 5):
        fresh = SeedSpec(9, sid).generator().standard_normal((3, 3))
        pooled = pool.get(9, sid).standard_normal((3, 3))
        assert np.array_equal(fresh, pooled)


def test_ginibre_rejects_zero_dimension():
    with pytest.raises(ValueError):
        ginibre_real(0, SeedSpec(0, 0))


def test_seedspec_rejects_out_of_range():
    with pytest.raises(ValueError):
        SeedSpec(-1, 0)
    with pytest.raises(ValueError):
        SeedSpec(0, 2**64)


def test_ginibre_entry_moments():
    # CLT bounds at 4 sigma: sd(mean) = 1/sqrt(N); sd(var-hat) ~ sqrt(2/N)
    pool = StreamPool()
    xs = np.array([pool.get(3, t).standard_normal((2, 2))[0, 0] for t in range(N_DRAWS)])
    assert abs(xs.mean()) < 4.0 / math.sqrt(N_DRAWS)
    assert abs(xs.var() - 1.0) < 0.02


def test_ginibre_entries_uncorrelated():
    pool = StreamPool()
    flat = np.empty((N_DRAWS, 9))
    for t in range(N_DRAWS):
        flat[t] = pool.get(4, t).standard_normal((3, 3)).ravel()
    corr = np.corrcoef(flat, rowvar=False)
    off = corr[~np.eye(9, dtype=bool)]
    assert np.max(np.abs(off)) < 4.0 / math.sqrt(N_DRAWS)


def test_s3_normalization_and_moments():
    pool = StreamPool()
    amps = np.empty((N_DRAWS, 4))
    for t in range(N_DRAWS):
        amps[t] = sample_s3(SeedSpec(5, t), _rng=pool.get(5, t))
    norms = np.sum(amps**2, axis=1)
    assert np.max(np.abs(norms - 1.0)) < 1e-12
    # E[a] = 0 with var(a) = 1/4; E[a^2] = 1/4 with var = 1/16
    assert np.max(np.abs(amps.mean(axis=0))) < 4.0 * 0.5 / math.sqrt(N_DRAWS)
    assert np.max(np.abs((amps**2).mean(axis=0) - 0.25)) < 0.01


def test_theta_point_invariants():
    for theta in np.linspace(0.0, math.pi / 4, 41):
        tp = ThetaPoint(float(theta))
        assert tp.beta >= 1.0
        assert 0.0 <= tp.density <= 2.0
    assert ThetaPoint(math.pi / 4).beta == pytest.approx(1.0)
    assert ThetaPoint(0.0).beta == math.inf
    with pytest.raises(ValueError):
        ThetaPoint(1.0)


def test_theta_inverse_cdf_endpoints_and_midpoint():
    # CDF is sin(2 theta): u=0 -> 0, u=1 -> pi/4, u=1/2 -> pi/12
    assert 0.5 * math.asin(0.0) == 0.0
    assert 0.5 * math.asin(1.0) == pytest.approx(math.pi / 4, abs=1e-15)
    assert 0.5 * math.asin(0.5) == pytest.approx(math.pi / 12, abs=1e-15)


def test_theta_sampler_ks_and_mean():
    pool = StreamPool()
    thetas = np.array([sample_theta(SeedSpec(6, t), _rng=pool.get(6, t)).theta
                       for t in range(N_DRAWS)])
    s2 = np.sort(np.sin(2.0 * thetas))
    i = np.arange(1, N_DRAWS + 1)
    # sin(2 theta) is uniform on [0,1]; KS against the identity CDF
    d = max(np.max(i / N_DRAWS - s2), np.max(s2 - (i - 1) / N_DRAWS))
    assert d < KS_CRIT
    # E[sin 2 theta] = integral of sin(2t) 2cos(2t) = 1/2, var = 1/12
    assert abs(np.mean(np.sin(2.0 * thetas)) - 0.5) < 4.0 * math.sqrt(1.0 / 12 / N_DRAWS)


def test_singular_weight_cdf_endpoints():
    assert larger_singular_weight_cdf(0.5) == pytest.approx(0.0, abs=1e-15)
    assert larger_singular_weight_cdf(1.0) == pytest.approx(1.0, abs=1e-15)


def test_singular_weight_distribution():
    d = singular_values_2x2_distribution_check(N_DRAWS, master_seed=11)
    assert d < KS_CRIT
    with pytest.raises(ValueError):
        singular_values_2x2_distribution_check(10, master_seed=0)
