"""Long-memory exponent estimation and the split-sample plug-in workflow.

The point estimator is a log-periodogram regression over the lowest
floor(n^0.65) nonzero Fourier frequencies: for fractional Gaussian noise the
spectral density behaves like lambda^(1-2H) near zero, so the fitted slope b
of log I(lambda_k) on log lambda_k maps to H = (1 - b) / 2.  The asymptotic
standard error of the regression-based H is pi / sqrt(24 K) with K ordinates.

When the noise rides on a smooth observed curve (a convolution), the raw
periodogram is contaminated at low frequencies.  The observation proxy
first-differences the series and removes the known differencing transfer
|1 - e^{i lambda}|^2 from the log-periodogram before regressing; this is a
heuristic, adequate because differencing suppresses the smooth component by
a factor of order lambda while leaving the corrected noise slope unchanged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import EstimationFailureError, InvalidInputError
from .estimator import ChannelData, EstimatorConfig, EstimateTrace, estimate
from .fourier import FourierSeries, PeriodicSignal, forward, is_power_of_two

H_MAX = 1.0 - 1e-9  # keeps alpha = 2 - 2H strictly positive


@dataclass(frozen=True)
class HurstEstimate:
    """Point estimate with its asymptotic standard error.

    H_hat is clamped to [1/2, 1) so the implied long-memory exponent
    alpha_hat = 2 - 2 H_hat stays in the model range (0, 1].
    """

    H_hat: float
    stderr: float
    bandwidth: int

    def __post_init__(self):
        if not math.isfinite(self.H_hat):
            raise EstimationFailureError("Hurst estimate is not finite")
        if self.bandwidth < 8:
            raise InvalidInputError(f"bandwidth must be >= 8, got {self.bandwidth}")

    @property
    def alpha_hat(self) -> float:
        return 2.0 - 2.0 * self.H_hat


def _gph_slope(log_periodogram: np.ndarray, log_freq: np.ndarray) -> float:
    slope, _ = np.polyfit(log_freq, log_periodogram, 1)
    return float(slope)


def _periodogram(series: np.ndarray, bandwidth: int) -> tuple[np.ndarray, np.ndarray]:
    n = series.size
    lam = 2.0 * np.pi * np.arange(1, bandwidth + 1) / n
    ordinates = np.abs(np.fft.fft(series)[1 : bandwidth + 1]) ** 2 / (2.0 * np.pi * n)
    return ordinates, lam


def estimate_hurst(series: np.ndarray) -> HurstEstimate:
    """Log-periodogram regression on a directly observed noise series."""
    x = np.asarray(series, dtype=float)
    if x.ndim != 1 or x.size < 256:
        raise InvalidInputError(f"need a 1-D series of length >= 256, got {x.shape}")
    if np.ptp(x) == 0.0:
        raise EstimationFailureError("degenerate (constant) series")
    bandwidth = int(x.size**0.65)
    ordinates, lam = _periodogram(x, bandwidth)
    if np.any(ordinates <= 0.0):
        raise EstimationFailureError("periodogram vanished on the regression band")
    slope = _gph_slope(np.log(ordinates), np.log(lam))
    h_raw = (1.0 - slope) / 2.0
    return HurstEstimate(
        H_hat=float(np.clip(h_raw, 0.5, H_MAX)),
        stderr=float(np.pi / math.sqrt(24.0 * bandwidth)),
        bandwidth=bandwidth,
    )


def estimate_hurst_from_observation(series: np.ndarray, trim: int = 32) -> HurstEstimate:
    """Observation proxy: difference, taper, correct the transfer, regress.

    Differencing suppresses the smooth component (and hence its spectral
    leakage) by a factor of order frequency; the Hann taper keeps leakage
    from the differenced bulk out of the low ordinates, which would
    otherwise dominate them after the 4 sin^2(lambda/2) whitening.  `trim`
    drops the lowest ordinates, where residual smooth-signal energy is
    largest.  All of this is a heuristic for data riding on a convolution;
    use estimate_hurst for directly observed noise.
    """
    x = np.asarray(series, dtype=float)
    if x.ndim != 1 or x.size < 257:
        raise InvalidInputError(f"need a 1-D series of length >= 257, got {x.shape}")
    if np.ptp(x) == 0.0:
        raise EstimationFailureError("degenerate (constant) series")
    d = np.diff(x)
    taper = np.hanning(d.size)
    d = d * taper * math.sqrt(d.size / np.sum(taper**2))
    bandwidth = int(d.size**0.65)
    ordinates, lam = _periodogram(d, bandwidth)
    ordinates, lam = ordinates[trim:], lam[trim:]
    if lam.size < 8:
        raise InvalidInputError("trim leaves fewer than 8 ordinates")
    if np.any(ordinates <= 0.0):
        raise EstimationFailureError("periodogram vanished on the regression band")
    transfer = 4.0 * np.sin(lam / 2.0) ** 2
    slope = _gph_slope(np.log(ordinates) - np.log(transfer), np.log(lam))
    h_raw = (1.0 - slope) / 2.0
    return HurstEstimate(
        H_hat=float(np.clip(h_raw, 0.5, H_MAX)),
        stderr=float(np.pi / math.sqrt(24.0 * (bandwidth - trim))),
        bandwidth=bandwidth - trim,
    )


@dataclass(frozen=True)
class ChannelPaths:
    """Raw sample paths of one channel (observed convolution and kernel)."""

    y: np.ndarray
    g: np.ndarray
    eps: float
    delta: float

    def __post_init__(self):
        y = np.asarray(self.y, dtype=float)
        g = np.asarray(self.g, dtype=float)
        if y.ndim != 1 or g.ndim != 1 or y.size != g.size:
            raise InvalidInputError("y and g paths must be 1-D and equally long")
        if not is_power_of_two(y.size):
            raise InvalidInputError("path length must be a power of two")
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "g", g)

    @property
    def n(self) -> int:
        return self.y.size


@dataclass
class PluginReport:
    alpha1_hat: np.ndarray
    alpha2_hat: np.ndarray
    estimate: PeriodicSignal
    trace: EstimateTrace
    baseline: PeriodicSignal | None = None
    baseline_trace: EstimateTrace | None = None
    risk_plugin: float | None = None
    risk_baseline: float | None = None


def plugin_workflow(
    first: list[ChannelPaths],
    second: list[ChannelPaths],
    config: EstimatorConfig | None = None,
    alpha1_plug: list[float] | None = None,
    alpha2_plug: list[float] | None = None,
    true_alpha1: list[float] | None = None,
    true_alpha2: list[float] | None = None,
    true_signal: PeriodicSignal | None = None,
    trim: int = 32,
    alpha_floor: float = 0.05,
) -> PluginReport:
    """Two-sample plug-in: learn the memory exponents on the first sample,
    estimate the response on the second.

    alpha1_plug / alpha2_plug bypass estimation with known exponents.  When
    true exponents are supplied, a baseline run with them (and its risk,
    when the true signal is known) is reported alongside.  Estimated
    exponents are floored at alpha_floor: a runaway estimate near zero
    would otherwise drive the stabilization threshold to truncate the
    entire grid.
    """
    config = config or EstimatorConfig()
    if len(first) != len(second):
        raise InvalidInputError(
            f"channel count mismatch between halves: {len(first)} vs {len(second)}"
        )
    if not first:
        raise InvalidInputError("need at least one channel")
    M = len(first)

    if alpha1_plug is not None and len(alpha1_plug) != M:
        raise InvalidInputError("alpha1_plug length must match channel count")
    if alpha2_plug is not None and len(alpha2_plug) != M:
        raise InvalidInputError("alpha2_plug length must match channel count")

    a1_hat = np.empty(M)
    a2_hat = np.empty(M)
    for l in range(M):
        if alpha1_plug is not None:
            a1_hat[l] = alpha1_plug[l]
        else:
            est = estimate_hurst_from_observation(first[l].y, trim=trim)
            a1_hat[l] = max(est.alpha_hat, alpha_floor)
        if alpha2_plug is not None:
            a2_hat[l] = alpha2_plug[l]
        else:
            est = estimate_hurst_from_observation(first[l].g, trim=trim)
            a2_hat[l] = max(est.alpha_hat, alpha_floor)

    def build(alpha1: np.ndarray, alpha2: np.ndarray) -> list[ChannelData]:
        return [
            ChannelData(
                y_tilde=forward(PeriodicSignal(second[l].y)),
                g_obs=forward(PeriodicSignal(second[l].g)),
                alpha1=float(alpha1[l]),
                alpha2=float(alpha2[l]),
                eps=second[l].eps,
                delta=second[l].delta,
            )
            for l in range(M)
        ]

    fhat, trace = estimate(build(a1_hat, a2_hat), config)
    report = PluginReport(alpha1_hat=a1_hat, alpha2_hat=a2_hat, estimate=fhat, trace=trace)

    if true_signal is not None:
        report.risk_plugin = float(np.mean((fhat.samples - true_signal.samples) ** 2))
    if true_alpha1 is not None and true_alpha2 is not None:
        base, base_trace = estimate(
            build(np.asarray(true_alpha1, float), np.asarray(true_alpha2, float)), config
        )
        report.baseline = base
        report.baseline_trace = base_trace
        if true_signal is not None:
            report.risk_baseline = float(np.mean((base.samples - true_signal.samples) ** 2))
    return report
