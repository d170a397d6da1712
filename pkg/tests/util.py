"""Shared Monte Carlo helpers for the estimator and acceptance suites."""

import numpy as np

from fracdeconv.estimator import ChannelData, EstimatorConfig, estimate_fourier_series
from fracdeconv.fgn import FgnParams, sample_fgn
from fracdeconv.fourier import FourierSeries, PeriodicSignal, forward
from fracdeconv.kernels import make_kernel
from fracdeconv.meyer import MeyerBasis


def coefficient_noise_moments(
    n: int,
    nu: float,
    alpha1: float,
    eps: float,
    levels: list[int],
    reps: int,
    base_seed: int = 0,
):
    """Empirical variance and centered fourth moment of the wavelet
    coefficients of the inverted pure-noise observation (known kernel,
    single channel).  Returns (var_by_level, m4_by_level), each averaged
    over positions within the level."""
    spec = make_kernel(nu=nu, amplitude=1.0, n=n)
    basis = MeyerBasis(m0=min(levels) if min(levels) >= 2 else 2, n=n)
    J = max(levels) + 1
    config = EstimatorConfig()
    samples = {j: [] for j in levels}
    for r in range(reps):
        z = sample_fgn(FgnParams.from_alpha(alpha1, n, base_seed + r))
        y = eps**alpha1 * n ** (alpha1 / 2.0) * z
        ch = ChannelData(
            y_tilde=forward(PeriodicSignal(y)),
            g_obs=spec.g_tilde,
            alpha1=alpha1,
            alpha2=1.0,
            eps=eps,
            delta=0.0,
        )
        fhat, _, _ = estimate_fourier_series([ch], config)
        coeffs = basis.analyze(fhat, J)
        for j in levels:
            samples[j].append(coeffs.values[j].real)
    var_by_level = {}
    m4_by_level = {}
    for j in levels:
        arr = np.stack(samples[j])  # (reps, slots)
        centered = arr - arr.mean(axis=0)
        var_by_level[j] = float(np.mean(centered**2))
        m4_by_level[j] = float(np.mean(centered**4))
    return var_by_level, m4_by_level


def loglog_slope(xs, ys) -> float:
    return float(np.polyfit(np.log2(np.asarray(xs, float)), np.log2(np.asarray(ys, float)), 1)[0])


def level_slope(values_by_level: dict) -> float:
    js = sorted(values_by_level)
    return float(np.polyfit(js, [np.log2(values_by_level[j]) for j in js], 1)[0])
