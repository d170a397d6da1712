"""Periodized band-limited (Meyer-type) wavelet basis, realized in Fourier space.

The basis is never evaluated by time-domain filtering.  Every object is
defined through the coefficient functionals

    psi_hat(j, k, m) = 2^(-sc/2) * gen(2*pi*m / 2^sc) * exp(-2*pi*1j*m*k / 2^sc),

where sc is the scale of level j and gen is the mother wavelet transform
(low-pass `gen = phi_hat` for the scaling level, band-pass `gen = psi_hat`
for wavelet levels).  Analysis of a Fourier series F is the Plancherel
pairing  beta(j,k) = sum_m F(m) * psi_hat(j,k,m), and synthesis accumulates
conj(psi_hat(j,k,m)) * beta(j,k) back onto the frequency grid.

Level layout: the lowest level, labeled m0-1, holds the 2^m0 scaling
coefficients at scale m0 (low-pass band |m| <= floor(2^(m0+1)/3)); wavelet
level j >= m0 holds 2^j coefficients on the annulus
ceil(2^j/3) <= |m| <= floor(2^(j+2)/3).  Levels m0-1 .. J-1 together carry
2^J coefficients and span the scale-J approximation space.

The transition profile uses the C^3 auxiliary polynomial
nu(x) = x^4 (35 - 84 x + 70 x^2 - 20 x^3), the common default for
band-limited wavelet deconvolution.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import InvalidInputError, LevelOverflowError, SymmetryError
from .fourier import FourierSeries, PeriodicSignal, inverse, is_power_of_two

TWO_PI = 2.0 * np.pi

# smoothness class of the transition ramp below; fixed for the whole library
AUX_SMOOTHNESS = 3


def aux_polynomial(x):
    """C^3 ramp on [0,1]: nu(0)=0, nu(1)=1, nu(x)+nu(1-x)=1."""
    x = np.clip(x, 0.0, 1.0)
    return x**4 * (35.0 - 84.0 * x + 70.0 * x**2 - 20.0 * x**3)


def phi_hat(omega):
    """Low-pass transform: 1 on |w|<=2pi/3, cosine roll-off to 4pi/3."""
    a = np.abs(np.asarray(omega, dtype=float))
    out = np.zeros_like(a)
    out[a <= TWO_PI / 3.0] = 1.0
    mid = (a > TWO_PI / 3.0) & (a < 2.0 * TWO_PI / 3.0)
    out[mid] = np.cos(0.5 * np.pi * aux_polynomial(3.0 * a[mid] / TWO_PI - 1.0))
    return out if out.ndim else float(out)


def psi_hat_mother(omega):
    """Band-pass transform supported on 2pi/3 <= |w| <= 8pi/3, with the
    half-sample phase factor exp(1j*w/2) required for orthonormality across
    scales."""
    w = np.asarray(omega, dtype=float)
    a = np.abs(w)
    mag = np.zeros_like(a)
    lo = (a > TWO_PI / 3.0) & (a <= 2.0 * TWO_PI / 3.0)
    hi = (a > 2.0 * TWO_PI / 3.0) & (a < 4.0 * TWO_PI / 3.0)
    mag[lo] = np.sin(0.5 * np.pi * aux_polynomial(3.0 * a[lo] / TWO_PI - 1.0))
    mag[hi] = np.cos(0.5 * np.pi * aux_polynomial(1.5 * a[hi] / TWO_PI - 1.0))
    out = np.exp(0.5j * w) * mag
    return out if out.ndim else complex(out)


def max_wavelet_level(n: int) -> int:
    """Largest level whose band fits the grid: floor(2^(j+2)/3) <= n/2 - 1."""
    j = 2
    while (2 ** (j + 3)) // 3 <= n // 2 - 1:
        j += 1
    return j


def wavelet_band(j: int, n: int) -> np.ndarray:
    """Frequencies of level j, both signs: ceil(2^j/3) <= |m| <= floor(2^(j+2)/3)."""
    lo = -(-(2**j) // 3)  # ceil
    hi = (2 ** (j + 2)) // 3
    if hi > n // 2 - 1:
        raise LevelOverflowError(j, n, max_wavelet_level(n))
    pos = np.arange(lo, hi + 1)
    return np.concatenate([-pos[::-1], pos])


def scaling_band(m0: int, n: int) -> np.ndarray:
    """Low-pass frequencies |m| <= floor(2^(m0+1)/3) (includes m = 0)."""
    hi = (2 ** (m0 + 1)) // 3
    if hi > n // 2 - 1:
        raise LevelOverflowError(m0 - 1, n, max_wavelet_level(n))
    return np.arange(-hi, hi + 1)


@dataclass(frozen=True)
class WaveletCoeffs:
    """Coefficient rectangle for levels m0-1 .. J-1.

    `values[m0-1]` holds the 2^m0 scaling coefficients; `values[j]` for
    m0 <= j < J holds the 2^j wavelet coefficients.  Total slot count is 2^J.
    """

    m0: int
    J: int
    values: dict[int, np.ndarray]

    def __post_init__(self):
        if self.J <= self.m0:
            raise InvalidInputError(f"need J > m0, got m0={self.m0}, J={self.J}")
        expected = self.level_labels()
        if sorted(self.values) != expected:
            raise InvalidInputError(
                f"coefficient levels {sorted(self.values)} != expected {expected}"
            )
        vals = {}
        for j in expected:
            arr = np.asarray(self.values[j], dtype=complex)
            if arr.shape != (self.slots(j),):
                raise InvalidInputError(
                    f"level {j} must hold {self.slots(j)} values, got shape {arr.shape}"
                )
            vals[j] = arr
        object.__setattr__(self, "values", vals)

    def level_labels(self) -> list[int]:
        return list(range(self.m0 - 1, self.J))

    def slots(self, j: int) -> int:
        return 2**self.m0 if j == self.m0 - 1 else 2**j

    def total_slots(self) -> int:
        return sum(self.slots(j) for j in self.level_labels())

    def energy(self) -> float:
        return float(sum(np.sum(np.abs(v) ** 2) for v in self.values.values()))

    def copy(self) -> "WaveletCoeffs":
        return WaveletCoeffs(self.m0, self.J, {j: v.copy() for j, v in self.values.items()})

    @classmethod
    def zeros(cls, m0: int, J: int) -> "WaveletCoeffs":
        vals = {
            j: np.zeros(2**m0 if j == m0 - 1 else 2**j, dtype=complex)
            for j in range(m0 - 1, J)
        }
        return cls(m0, J, vals)


@dataclass(frozen=True)
class MeyerBasis:
    """Band-limited wavelet basis on a grid of size n with lowest level m0."""

    m0: int
    n: int

    def __post_init__(self):
        if not is_power_of_two(self.n):
            raise InvalidInputError(f"grid size must be a power of two, got {self.n}")
        if self.m0 < 2:
            raise InvalidInputError(f"lowest resolution level must be >= 2, got {self.m0}")
        if self.m0 > self.max_level:
            raise LevelOverflowError(self.m0, self.n, self.max_level)

    @property
    def max_level(self) -> int:
        return max_wavelet_level(self.n)

    # -- level geometry -----------------------------------------------------

    def scale_of(self, j: int) -> int:
        """Dilation scale backing level j (the scaling level sits at scale m0)."""
        if j < self.m0 - 1:
            raise InvalidInputError(f"level {j} below the scaling level {self.m0 - 1}")
        return self.m0 if j == self.m0 - 1 else j

    def slots(self, j: int) -> int:
        return 2 ** self.scale_of(j)

    def support_set(self, j: int) -> np.ndarray:
        """Frequencies m where psi_hat(j, ., m) is nonzero."""
        if j == self.m0 - 1:
            return scaling_band(self.m0, self.n)
        if j < self.m0 - 1:
            raise InvalidInputError(f"level {j} below the scaling level {self.m0 - 1}")
        return wavelet_band(j, self.n)

    def _generator(self, j: int, m: np.ndarray) -> np.ndarray:
        sc = self.scale_of(j)
        omega = TWO_PI * np.asarray(m, dtype=float) / 2**sc
        if j == self.m0 - 1:
            return phi_hat(omega).astype(complex)
        return psi_hat_mother(omega)

    def psi_hat(self, j: int, k: int, m) -> complex:
        """Coefficient functional of basis element (j, k) at frequency m."""
        sc = self.scale_of(j)
        if not 0 <= k < self.slots(j):
            raise InvalidInputError(f"position {k} out of range for level {j}")
        m_arr = np.atleast_1d(np.asarray(m, dtype=int))
        if np.any(m_arr < -self.n // 2) or np.any(m_arr >= self.n // 2):
            raise InvalidInputError("frequency outside grid")
        vals = (
            2.0 ** (-sc / 2.0)
            * self._generator(j, m_arr)
            * np.exp(-2j * np.pi * m_arr * k / 2**sc)
        )
        return vals if np.ndim(m) else complex(vals[0])

    # -- transforms ----------------------------------------------------------

    def analyze(self, series: FourierSeries, J: int) -> WaveletCoeffs:
        """Wavelet coefficients of a Fourier series for levels m0-1 .. J-1.

        Each level is a folded FFT: beta(j, k) = sum_m F(m) psi_hat(j,k,m)
        reduces to a length-2^sc DFT of the band values folded mod 2^sc.
        """
        if series.n != self.n:
            raise InvalidInputError("series grid does not match basis grid")
        if J <= self.m0 or J - 1 > self.max_level:
            raise LevelOverflowError(J - 1, self.n, self.max_level)
        half = self.n // 2
        values: dict[int, np.ndarray] = {}
        for j in range(self.m0 - 1, J):
            sc = self.scale_of(j)
            K = 2**sc
            band = self.support_set(j)
            weighted = series.coeffs[band + half] * (
                2.0 ** (-sc / 2.0) * self._generator(j, band)
            )
            folded = np.zeros(K, dtype=complex)
            np.add.at(folded, np.mod(band, K), weighted)
            values[j] = np.fft.fft(folded)
        return WaveletCoeffs(self.m0, J, values)

    def coeffs_to_series(self, coeffs: WaveletCoeffs) -> FourierSeries:
        """Frequency-domain synthesis sum_{j,k} beta(j,k) conj(psi_hat(j,k,.))."""
        if coeffs.m0 != self.m0:
            raise InvalidInputError("coefficient rectangle does not match basis m0")
        if coeffs.J - 1 > self.max_level:
            raise LevelOverflowError(coeffs.J - 1, self.n, self.max_level)
        half = self.n // 2
        out = np.zeros(self.n, dtype=complex)
        for j in coeffs.level_labels():
            sc = self.scale_of(j)
            K = 2**sc
            band = self.support_set(j)
            # u[r] = sum_k beta_k e^{+2 pi i r k / K}
            u = np.fft.ifft(coeffs.values[j]) * K
            out[band + half] += (
                np.conj(2.0 ** (-sc / 2.0) * self._generator(j, band)) * u[np.mod(band, K)]
            )
        return FourierSeries(out)

    def synthesize(self, coeffs: WaveletCoeffs, imag_tol: float = 1e-8) -> PeriodicSignal:
        """Reconstruct the signal; the result must be real to within imag_tol."""
        series = self.coeffs_to_series(coeffs)
        try:
            return inverse(series, hermitian_tol=imag_tol)
        except SymmetryError as err:
            raise SymmetryError(
                "coefficients do not describe a real signal", err.max_asymmetry
            ) from err
