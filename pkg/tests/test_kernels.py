import numpy as np
import pytest

from fracdeconv.exceptions import InvalidInputError
from fracdeconv.fourier import forward
from fracdeconv.kernels import KernelBank, kernel_signal, make_kernel


class TestMakeKernel:
    def test_direct_formula_value(self):
        spec = make_kernel(nu=0.5, amplitude=1.0, n=64)
        assert spec.g_tilde.coeff(3) == pytest.approx(4.0**-0.5)
        assert spec.g_tilde.coeff(0) == pytest.approx(1.0)

    def test_decay_window_sweep(self):
        # (m / (1+m))^nu lies in [2^-nu, 1) for m >= 1, tight at m = 1
        spec = make_kernel(nu=1.5, amplitude=2.0, n=512)
        m = np.abs(spec.g_tilde.freqs).astype(float)
        mask = m >= 1
        vals = np.abs(spec.g_tilde.coeffs[mask]) * m[mask] ** spec.nu
        assert np.all(vals >= 2.0 / 2**1.5 - 1e-12)
        assert np.all(vals <= 2.0 + 1e-12)
        assert spec.check_window()

    def test_window_constants_positive(self):
        spec = make_kernel(nu=1.0, n=256)
        assert 0 < spec.window_lo <= spec.window_hi < np.inf

    def test_rejects_bad_params(self):
        with pytest.raises(InvalidInputError):
            make_kernel(nu=0.0)
        with pytest.raises(InvalidInputError):
            make_kernel(nu=-1.0)
        with pytest.raises(InvalidInputError):
            make_kernel(nu=1.0, amplitude=0.0)
        with pytest.raises(InvalidInputError):
            make_kernel(nu=1.0, family="boxcar")

    def test_tiny_nu_accepted(self):
        spec = make_kernel(nu=1e-9, n=128)
        vals = np.abs(spec.g_tilde.coeffs)
        assert vals.max() / vals.min() < 1.0 + 1e-6  # near-flat spectrum

    def test_smooth_family(self):
        spec = make_kernel(nu=2.0, n=128, family="smooth-power")
        assert spec.g_tilde.coeff(3) == pytest.approx((1 + 9.0) ** -1.0)
        assert spec.check_window()


class TestKernelSignal:
    def test_round_trip(self):
        spec = make_kernel(nu=1.0, amplitude=0.7, n=256)
        back = forward(kernel_signal(spec))
        assert np.max(np.abs(back.coeffs - spec.g_tilde.coeffs)) < 1e-12

    def test_even_signal(self):
        sig = kernel_signal(make_kernel(nu=0.8, n=128)).samples
        assert np.max(np.abs(sig[1:] - sig[1:][::-1])) < 1e-12

    def test_smoothness_orders_energy(self):
        # harder decay concentrates energy at low frequencies
        def low_energy_fraction(nu):
            spec = make_kernel(nu=nu, amplitude=1.0, n=256)
            power = np.abs(spec.g_tilde.coeffs) ** 2
            low = power[np.abs(spec.g_tilde.freqs) <= 8].sum()
            return low / power.sum()

        assert low_energy_fraction(2.0) > low_energy_fraction(1.0)

    def test_phase_twist_real_but_uneven(self):
        spec = make_kernel(nu=1.0, n=128, phase=0.9)
        assert spec.g_tilde.hermitian_defect() < 1e-14
        sig = kernel_signal(spec).samples
        assert np.max(np.abs(sig[1:] - sig[1:][::-1])) > 1e-3


class TestKernelBank:
    def test_orders_and_reports(self):
        bank = KernelBank(
            (make_kernel(1.0, n=64), make_kernel(0.25, n=64), make_kernel(2.0, n=64))
        )
        assert bank.nu_min == 0.25
        assert bank.nu_max == 2.0
        assert bank.order_by_nu() == [1, 0, 2]

    def test_rejects_mixed_grids(self):
        with pytest.raises(InvalidInputError):
            KernelBank((make_kernel(1.0, n=64), make_kernel(1.0, n=128)))

    def test_rejects_empty(self):
        with pytest.raises(InvalidInputError):
            KernelBank(())
