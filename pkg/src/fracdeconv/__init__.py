"""Adaptive wavelet deconvolution for multichannel data with noisy kernels
and long-range dependent Gaussian noise, plus a Monte Carlo rate laboratory."""

from .estimator import (
    ChannelData,
    EstimateTrace,
    EstimatorConfig,
    compute_sj,
    compute_weights,
    estimate,
    estimate_fourier_coeff,
    estimate_fourier_series,
    estimate_known_kernel,
    select_channels,
    select_levels,
    survival_mask,
    threshold_lambda,
    variance_functional,
)
from .exceptions import (
    EstimationFailureError,
    InfeasibleLevelsError,
    InvalidInputError,
    LevelOverflowError,
    SymmetryError,
    SynthesisFailureError,
)
from .fgn import FgnParams, autocovariance, noise_fourier_diagnostic, sample_fgn
from .fourier import (
    FourierSeries,
    PeriodicSignal,
    circular_convolve,
    forward,
    inverse,
)
from .harness import (
    BesovSignal,
    DeltaCoupling,
    KernelParams,
    RateExponents,
    RiskReport,
    Scenario,
    SignalSpec,
    besov_norm,
    build_besov_signal,
    constant_sweep,
    default_scenario,
    fit_rate,
    known_kernel_rate_scenario,
    named_signal,
    run_experiment,
    simulate_observations,
    theoretical_exponent,
)
from .kernels import KernelBank, KernelSpec, kernel_signal, make_kernel
from .lrd import ChannelPaths, HurstEstimate, estimate_hurst, plugin_workflow
from .meyer import MeyerBasis, WaveletCoeffs, max_wavelet_level

__version__ = "0.1.0"

__all__ = [
    "BesovSignal",
    "ChannelData",
    "ChannelPaths",
    "DeltaCoupling",
    "EstimateTrace",
    "EstimationFailureError",
    "EstimatorConfig",
    "FgnParams",
    "FourierSeries",
    "HurstEstimate",
    "InfeasibleLevelsError",
    "InvalidInputError",
    "KernelBank",
    "KernelParams",
    "KernelSpec",
    "LevelOverflowError",
    "MeyerBasis",
    "PeriodicSignal",
    "RateExponents",
    "RiskReport",
    "Scenario",
    "SignalSpec",
    "SymmetryError",
    "SynthesisFailureError",
    "WaveletCoeffs",
    "autocovariance",
    "besov_norm",
    "build_besov_signal",
    "circular_convolve",
    "compute_sj",
    "compute_weights",
    "constant_sweep",
    "default_scenario",
    "estimate",
    "estimate_fourier_coeff",
    "estimate_fourier_series",
    "estimate_hurst",
    "estimate_known_kernel",
    "fit_rate",
    "forward",
    "inverse",
    "kernel_signal",
    "known_kernel_rate_scenario",
    "make_kernel",
    "max_wavelet_level",
    "named_signal",
    "noise_fourier_diagnostic",
    "plugin_workflow",
    "run_experiment",
    "sample_fgn",
    "select_channels",
    "select_levels",
    "simulate_observations",
    "survival_mask",
    "theoretical_exponent",
    "threshold_lambda",
    "variance_functional",
]
