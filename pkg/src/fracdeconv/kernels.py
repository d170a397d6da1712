"""Convolution kernels with polynomially decaying Fourier coefficients.

Every kernel obeys a two-sided decay window: there are positive constants
c1, c2 with  c1 |m|^(-2 nu) < |g_tilde(m)|^2 < c2 |m|^(-2 nu)  over the whole
grid (1 <= |m| <= n/2).  The window constants are measured at construction
and stored on the spec.  The default family is

    g_tilde(m) = amplitude * (1 + |m|)^(-nu),

which is real, even and positive (finite at m = 0).  A "smooth-power"
variant (1 + m^2)^(-nu/2) and an optional phase twist exp(1j*phase*sign(m))
are available; the twist keeps Hermitian symmetry, so twisted kernels are
still real signals (just not even ones).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import InvalidInputError
from .fourier import FourierSeries, PeriodicSignal, inverse

FAMILIES = ("power", "smooth-power")


@dataclass(frozen=True)
class KernelSpec:
    nu: float
    amplitude: float
    family: str
    n: int
    phase: float
    g_tilde: FourierSeries
    window_lo: float   # measured c1: min over 1 <= |m| <= n/2 of |g(m)|^2 |m|^(2 nu)
    window_hi: float   # measured c2: max of the same

    def check_window(self, slack: float = 1e-12) -> bool:
        """Re-verify the decay window against the stored constants."""
        m = np.abs(self.g_tilde.freqs).astype(float)
        mask = m >= 1
        vals = np.abs(self.g_tilde.coeffs[mask]) ** 2 * m[mask] ** (2.0 * self.nu)
        return bool(
            np.all(vals >= self.window_lo * (1.0 - slack))
            and np.all(vals <= self.window_hi * (1.0 + slack))
        )


def make_kernel(
    nu: float,
    amplitude: float = 1.0,
    n: int = 1024,
    family: str = "power",
    phase: float = 0.0,
) -> KernelSpec:
    if nu <= 0:
        raise InvalidInputError(f"decay exponent must be positive, got {nu}")
    if amplitude <= 0:
        raise InvalidInputError(f"amplitude must be positive, got {amplitude}")
    if family not in FAMILIES:
        raise InvalidInputError(f"unknown kernel family {family!r}, options: {FAMILIES}")
    freqs = np.arange(-n // 2, n // 2)
    absm = np.abs(freqs).astype(float)
    if family == "power":
        mag = amplitude * (1.0 + absm) ** (-nu)
    else:
        mag = amplitude * (1.0 + absm**2) ** (-nu / 2.0)
    coeffs = mag.astype(complex)
    if phase != 0.0:
        twist = np.exp(1j * phase * np.sign(freqs))
        twist[0] = 1.0  # the unpaired m = -n/2 bin must stay real
        coeffs = coeffs * twist
    series = FourierSeries(coeffs)
    mask = absm >= 1
    window = np.abs(coeffs[mask]) ** 2 * absm[mask] ** (2.0 * nu)
    return KernelSpec(
        nu=nu,
        amplitude=amplitude,
        family=family,
        n=n,
        phase=phase,
        g_tilde=series,
        window_lo=float(window.min()),
        window_hi=float(window.max()),
    )


def kernel_signal(spec: KernelSpec) -> PeriodicSignal:
    """Materialize the kernel as a real periodic signal on the grid."""
    return inverse(spec.g_tilde)


@dataclass(frozen=True)
class KernelBank:
    """Per-channel kernel collection; reports the ill-posedness range."""

    specs: tuple[KernelSpec, ...]

    def __post_init__(self):
        if not self.specs:
            raise InvalidInputError("kernel bank must hold at least one kernel")
        if len({s.n for s in self.specs}) != 1:
            raise InvalidInputError("kernel bank grids must agree")
        object.__setattr__(self, "specs", tuple(self.specs))

    @property
    def nu_values(self) -> tuple[float, ...]:
        return tuple(s.nu for s in self.specs)

    @property
    def nu_min(self) -> float:
        return min(self.nu_values)

    @property
    def nu_max(self) -> float:
        return max(self.nu_values)

    def order_by_nu(self) -> list[int]:
        """Channel indices sorted from mildest to hardest ill-posedness."""
        return sorted(range(len(self.specs)), key=lambda i: self.specs[i].nu)
