"""Fourier arithmetic for 1-periodic signals sampled on dyadic grids.

Signals live on the uniform grid t_i = i/n over [0, 1). Fourier coefficients
follow the analytic convention

    c(m) = (1/n) * sum_i x[i] * exp(-2*pi*1j * m * i / n),

indexed on the symmetric range m = -n/2 .. n/2 - 1, so that c(m) approximates
the integral coefficient of the underlying periodic function and Plancherel
reads sum_m |c(m)|^2 = (1/n) * sum_i x[i]^2.  Circular convolution carries the
1/n Riemann factor, which makes the convolution theorem exact:
forward(circular_convolve(f, g)) = forward(f) * forward(g).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import InvalidInputError, SymmetryError


def is_power_of_two(n: int) -> bool:
    return n >= 2 and (n & (n - 1)) == 0


def _check_grid(n: int) -> None:
    if not is_power_of_two(n):
        raise InvalidInputError(f"grid size must be a power of two >= 2, got {n}")


@dataclass(frozen=True)
class PeriodicSignal:
    """Real samples of a 1-periodic function at t_i = i/n."""

    samples: np.ndarray

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=float)
        _check_grid(samples.size)
        if samples.ndim != 1:
            raise InvalidInputError("samples must be one-dimensional")
        if not np.all(np.isfinite(samples)):
            raise InvalidInputError("samples must be finite")
        samples = samples.copy()
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)

    @property
    def n(self) -> int:
        return self.samples.size

    def l2_norm(self) -> float:
        """Discrete L2([0,1]) norm: sqrt((1/n) sum x_i^2)."""
        return float(np.sqrt(np.mean(self.samples**2)))


@dataclass(frozen=True)
class FourierSeries:
    """Complex coefficients on the symmetric frequency grid -n/2 .. n/2-1.

    Stored in ascending frequency order; index(m) = m + n//2.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.asarray(self.coeffs, dtype=complex)
        _check_grid(coeffs.size)
        if coeffs.ndim != 1:
            raise InvalidInputError("coeffs must be one-dimensional")
        coeffs = coeffs.copy()
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def n(self) -> int:
        return self.coeffs.size

    @property
    def freqs(self) -> np.ndarray:
        n = self.n
        return np.arange(-n // 2, n // 2)

    def index(self, m: int) -> int:
        n = self.n
        if not -n // 2 <= m < n // 2:
            raise InvalidInputError(f"frequency {m} outside grid [-{n // 2}, {n // 2 - 1}]")
        return m + n // 2

    def coeff(self, m: int) -> complex:
        return complex(self.coeffs[self.index(m)])

    def l2_norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.coeffs) ** 2)))

    def hermitian_defect(self) -> float:
        """Max |c(-m) - conj(c(m))| over representable pairs.

        The m = -n/2 bin has no positive partner; its imaginary part counts
        as defect, as does Im c(0).
        """
        c = self.coeffs
        n = self.n
        half = n // 2
        pos = c[half + 1 :]            # m = 1 .. n/2-1
        neg = c[1:half][::-1]          # m = -1 .. -(n/2-1)
        defect = float(np.max(np.abs(neg - np.conj(pos)))) if half > 1 else 0.0
        defect = max(defect, abs(float(c[half].imag)))   # m = 0
        defect = max(defect, abs(float(c[0].imag)))      # m = -n/2
        return defect


def forward(signal: PeriodicSignal) -> FourierSeries:
    """Discrete Fourier transform with 1/n normalization, shifted layout."""
    spectrum = np.fft.fft(signal.samples) / signal.n
    return FourierSeries(np.fft.fftshift(spectrum))


def inverse(series: FourierSeries, hermitian_tol: float = 1e-8) -> PeriodicSignal:
    """Invert `forward`, requiring a (numerically) Hermitian input.

    Raises SymmetryError when the relative asymmetry exceeds hermitian_tol,
    since only Hermitian coefficient sets correspond to a real signal.
    """
    scale = float(np.max(np.abs(series.coeffs)))
    defect = series.hermitian_defect()
    if scale > 0 and defect > hermitian_tol * scale:
        raise SymmetryError("coefficients are not Hermitian-symmetric", defect)
    samples = np.fft.ifft(np.fft.ifftshift(series.coeffs)) * series.n
    return PeriodicSignal(samples.real)


def circular_convolve(f: PeriodicSignal, g: PeriodicSignal) -> PeriodicSignal:
    """Periodic convolution (1/n) sum_j f[j] g[i-j mod n].

    The 1/n factor makes this the Riemann sum of the periodic convolution
    integral; in the Fourier domain it multiplies coefficients exactly.
    """
    if f.n != g.n:
        raise InvalidInputError(f"length mismatch: {f.n} vs {g.n}")
    spec = np.fft.rfft(f.samples) * np.fft.rfft(g.samples)
    return PeriodicSignal(np.fft.irfft(spec, f.n) / f.n)


def series_from_dict(values: dict[int, complex], n: int) -> FourierSeries:
    """Build a series from {frequency: coefficient}; other entries are zero."""
    _check_grid(n)
    c = np.zeros(n, dtype=complex)
    for m, v in values.items():
        if not -n // 2 <= m < n // 2:
            raise InvalidInputError(f"frequency {m} outside grid [-{n // 2}, {n // 2 - 1}]")
        c[m + n // 2] = v
    return FourierSeries(c)
