"""Exact synthesis of fractional Gaussian noise and spectral diagnostics.

Paths are stationary centered Gaussian with the fGn autocovariance

    gamma(h) = 0.5 * (|h+1|^(2H) - 2|h|^(2H) + |h-1|^(2H)),

generated by circulant embedding (exact in distribution).  The long-memory
exponent is alpha = 2 - 2H; H = 1/2 (alpha = 1) reduces to i.i.d. standard
normals.  Anti-persistent H < 1/2 is out of model scope and rejected.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .exceptions import InvalidInputError, SynthesisFailureError
from .fourier import is_power_of_two


def autocovariance(hurst: float, lags) -> np.ndarray:
    """Closed-form fGn autocovariance at integer lags."""
    h = np.abs(np.asarray(lags, dtype=float))
    H2 = 2.0 * hurst
    return 0.5 * (np.abs(h + 1.0) ** H2 - 2.0 * h**H2 + np.abs(h - 1.0) ** H2)


@dataclass(frozen=True)
class FgnParams:
    """Path parameters; alpha = 2 - 2H is derived, keeping the pair consistent."""

    hurst: float
    n: int
    seed: int = 0

    def __post_init__(self):
        if not 0.5 <= self.hurst < 1.0:
            raise InvalidInputError(
                f"Hurst parameter must lie in [0.5, 1), got {self.hurst}"
                " (anti-persistent H < 1/2 is out of scope)"
            )
        if not is_power_of_two(self.n):
            raise InvalidInputError(f"path length must be a power of two, got {self.n}")

    @property
    def alpha(self) -> float:
        return 2.0 - 2.0 * self.hurst

    @classmethod
    def from_alpha(cls, alpha: float, n: int, seed: int = 0) -> "FgnParams":
        if not 0.0 < alpha <= 1.0:
            raise InvalidInputError(f"long-memory exponent must lie in (0, 1], got {alpha}")
        return cls(hurst=1.0 - alpha / 2.0, n=n, seed=seed)


def embedding_spectrum(gamma: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Eigenvalues of the circulant embedding of an autocovariance sequence
    gamma(0..n).  Raises rather than silently clipping when the embedding is
    not nonnegative definite beyond the rounding tolerance."""
    gamma = np.asarray(gamma, dtype=float)
    row = np.concatenate([gamma, gamma[-2:0:-1]])
    lam = np.fft.fft(row).real
    worst = float(lam.min())
    if worst < -tol * float(lam.max()):
        raise SynthesisFailureError(
            f"circulant embedding is not nonnegative definite: "
            f"min eigenvalue {worst:.3e}"
        )
    return np.clip(lam, 0.0, None)


@lru_cache(maxsize=64)
def _embedding_spectrum(hurst: float, n: int, tol: float) -> np.ndarray:
    lam = embedding_spectrum(autocovariance(hurst, np.arange(n + 1)), tol)
    lam.setflags(write=False)
    return lam


def sample_fgn(params: FgnParams, tol: float = 1e-9) -> np.ndarray:
    """One exact fGn path of length n, deterministic given params.seed."""
    n = params.n
    lam = _embedding_spectrum(params.hurst, n, tol)
    rng = np.random.default_rng(params.seed)
    re = rng.standard_normal(n + 1)
    im = rng.standard_normal(n - 1)
    w = np.empty(2 * n, dtype=complex)
    w[0] = re[0]
    w[n] = re[n]
    w[1:n] = (re[1:n] + 1j * im) / np.sqrt(2.0)
    w[n + 1 :] = np.conj(w[1:n][::-1])
    path = np.fft.fft(np.sqrt(lam / (2.0 * n)) * w).real[:n]
    return path


def fourier_coefficients(path: np.ndarray, hurst: float, m_max: int) -> np.ndarray:
    """Calibrated Fourier coefficients of a noise path at m = 1 .. m_max.

    Scaled by n^(1-H) so the coefficients approximate those of the
    continuous-time noise, whose variance decays like |m|^(1-2H) with an
    O(1) constant.
    """
    n = path.size
    if m_max >= n // 2:
        raise InvalidInputError("m_max must stay below n/2")
    spectrum = np.fft.fft(path)[1 : m_max + 1] / n
    return n ** (1.0 - hurst) * spectrum


@dataclass(frozen=True)
class FgnSpectralReport:
    """Covariance diagnostics for noise Fourier coefficients.

    max_ratio compares |Cov(Z(m), Z(m'))|^2 against the reference envelope
    2|m m'|^(1-2H); diag_slope is the fitted log-log decay of Var(Z(m)),
    with target 1 - 2H.
    """

    hurst: float
    reps: int
    m_max: int
    max_ratio: float
    max_pair: tuple[int, int]
    diag_slope: float
    slope_target: float
    diag_variances: np.ndarray
    low_precision: bool


def noise_fourier_diagnostic(
    params: FgnParams, reps: int, m_max: int | None = None
) -> FgnSpectralReport:
    """Monte Carlo check of the coefficient covariance envelope.

    The envelope is exact for the continuous-time model; discretization
    makes this an approximate sanity check, so ratios carry sampling slack
    and runs with reps < 1000 are flagged low-precision.
    """
    if reps < 2:
        raise InvalidInputError("need at least 2 replications")
    if m_max is None:
        m_max = min(params.n // 8, 32)
    coeffs = np.empty((reps, m_max), dtype=complex)
    for r in range(reps):
        path = sample_fgn(FgnParams(params.hurst, params.n, params.seed + r))
        coeffs[r] = fourier_coefficients(path, params.hurst, m_max)
    cov = coeffs.conj().T @ coeffs / reps
    m = np.arange(1, m_max + 1, dtype=float)
    envelope = 2.0 * np.outer(m, m) ** (1.0 - 2.0 * params.hurst)
    ratio = np.abs(cov) ** 2 / envelope
    flat_idx = int(np.argmax(ratio))
    i, jj = divmod(flat_idx, m_max)
    diag = np.real(np.diag(cov))
    slope = float(np.polyfit(np.log(m), np.log(diag), 1)[0])
    return FgnSpectralReport(
        hurst=params.hurst,
        reps=reps,
        m_max=m_max,
        max_ratio=float(ratio[i, jj]),
        max_pair=(i + 1, jj + 1),
        diag_slope=slope,
        slope_target=1.0 - 2.0 * params.hurst,
        diag_variances=diag,
        low_precision=reps < 1000,
    )
