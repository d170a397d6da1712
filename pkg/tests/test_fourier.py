import numpy as np
import pytest

from fracdeconv.exceptions import InvalidInputError, SymmetryError
from fracdeconv.fourier import (
    FourierSeries,
    PeriodicSignal,
    circular_convolve,
    forward,
    inverse,
    series_from_dict,
)


def brute_convolve(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Riemann-sum circular convolution, O(n^2), the independent oracle."""
    n = f.size
    out = np.zeros(n)
    for i in range(n):
        for j in range(n):
            out[i] += f[j] * g[(i - j) % n]
    return out / n


def rel_err(a: np.ndarray, b: np.ndarray) -> float:
    return np.linalg.norm(a - b) / np.linalg.norm(b)


class TestForward:
    def test_constant_signal(self):
        series = forward(PeriodicSignal(np.ones(8)))
        assert series.coeff(0) == pytest.approx(1.0)
        others = [series.coeff(m) for m in range(-4, 4) if m != 0]
        assert np.max(np.abs(others)) < 1e-15

    def test_single_cosine(self):
        t = np.arange(8) / 8
        series = forward(PeriodicSignal(np.cos(2 * np.pi * t)))
        assert series.coeff(1) == pytest.approx(0.5, abs=1e-15)
        assert series.coeff(-1) == pytest.approx(0.5, abs=1e-15)
        rest = [series.coeff(m) for m in range(-4, 4) if abs(m) != 1]
        assert np.max(np.abs(rest)) < 1e-14

    def test_round_trip(self):
        rng = np.random.default_rng(0)
        x = rng.normal(size=4096)
        back = inverse(forward(PeriodicSignal(x)))
        assert rel_err(back.samples, x) < 1e-12

    def test_small_round_trip(self):
        rng = np.random.default_rng(1)
        x = rng.normal(size=64)
        assert rel_err(inverse(forward(PeriodicSignal(x))).samples, x) < 1e-12

    def test_rejects_non_power_of_two(self):
        with pytest.raises(InvalidInputError):
            PeriodicSignal(np.ones(6))

    def test_rejects_non_finite(self):
        with pytest.raises(InvalidInputError):
            PeriodicSignal(np.array([1.0, np.nan, 0.0, 0.0]))

    def test_hermitian_symmetry(self):
        rng = np.random.default_rng(2)
        series = forward(PeriodicSignal(rng.normal(size=128)))
        assert series.hermitian_defect() < 1e-14


class TestInverse:
    def test_dc_only(self):
        series = series_from_dict({0: 1.0}, 8)
        assert np.allclose(inverse(series).samples, 1.0)

    def test_non_hermitian_rejected(self):
        series = series_from_dict({2: 1.0}, 8)
        with pytest.raises(SymmetryError) as err:
            inverse(series)
        assert err.value.max_asymmetry == pytest.approx(1.0)

    def test_asymmetry_magnitude_reported(self):
        series = series_from_dict({1: 1.0, -1: 1.0 + 0.25j}, 16)
        with pytest.raises(SymmetryError) as err:
            inverse(series)
        assert err.value.max_asymmetry == pytest.approx(0.25)


class TestCircularConvolve:
    def test_identity_kernel(self):
        rng = np.random.default_rng(3)
        n = 64
        f = rng.normal(size=n)
        g = np.zeros(n)
        g[0] = n  # flat spectrum: g_tilde(m) = 1 for all m
        out = circular_convolve(PeriodicSignal(f), PeriodicSignal(g))
        assert rel_err(out.samples, f) < 1e-12

    def test_single_mode_product(self):
        n = 64
        t = np.arange(n) / n
        f = PeriodicSignal(np.cos(2 * np.pi * t))
        g = inverse(series_from_dict({1: 0.5, -1: 0.5}, n))
        out = circular_convolve(f, g)
        assert rel_err(out.samples, 0.5 * np.cos(2 * np.pi * t)) < 1e-12

    def test_matches_brute_force(self):
        rng = np.random.default_rng(4)
        n = 256
        f = rng.normal(size=n)
        g = rng.normal(size=n)
        out = circular_convolve(PeriodicSignal(f), PeriodicSignal(g))
        assert rel_err(out.samples, brute_convolve(f, g)) < 1e-10

    def test_length_mismatch(self):
        with pytest.raises(InvalidInputError):
            circular_convolve(PeriodicSignal(np.ones(8)), PeriodicSignal(np.ones(16)))

    def test_commutative_bilinear(self):
        rng = np.random.default_rng(5)
        n = 128
        f, g, h = (PeriodicSignal(rng.normal(size=n)) for _ in range(3))
        fg = circular_convolve(f, g).samples
        gf = circular_convolve(g, f).samples
        assert np.allclose(fg, gf, atol=1e-13)
        lhs = circular_convolve(PeriodicSignal(2.0 * f.samples + g.samples), h).samples
        rhs = 2.0 * circular_convolve(f, h).samples + circular_convolve(g, h).samples
        assert np.allclose(lhs, rhs, atol=1e-12)

    def test_convolution_theorem(self):
        rng = np.random.default_rng(6)
        n = 128
        f = PeriodicSignal(rng.normal(size=n))
        g = PeriodicSignal(rng.normal(size=n))
        lhs = forward(circular_convolve(f, g)).coeffs
        rhs = forward(f).coeffs * forward(g).coeffs
        assert np.max(np.abs(lhs - rhs)) < 1e-12 * np.max(np.abs(rhs))


def test_plancherel_identity():
    rng = np.random.default_rng(7)
    x = rng.normal(size=512)
    series = forward(PeriodicSignal(x))
    lhs = np.sum(np.abs(series.coeffs) ** 2)
    rhs = np.mean(x**2)
    assert abs(lhs - rhs) < 1e-12 * rhs


def test_coeff_accessor_bounds():
    series = forward(PeriodicSignal(np.ones(16)))
    assert series.coeff(-8) == pytest.approx(0.0)
    with pytest.raises(InvalidInputError):
        series.coeff(8)
    with pytest.raises(InvalidInputError):
        series.coeff(-9)


def test_signals_immutable():
    sig = PeriodicSignal(np.ones(8))
    with pytest.raises(ValueError):
        sig.samples[0] = 2.0
