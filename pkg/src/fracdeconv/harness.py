"""Simulation laboratory: scenarios, Monte Carlo risk runs, rate fits.

A Scenario bundles everything one experiment needs: grid size, channels,
the test signal (a smoothness-ball construction with known regularity, or a
named demo curve), per-channel kernels and memory exponents, the noise-level
grid with its delta coupling, replication count and seeds, and the estimator
constants.  `run_experiment` produces a RiskReport; `fit_rate` regresses
log risk on log eps and compares with the theoretical exponent of
`theoretical_exponent`.

Noise calibration: a continuous-time observation with noise scale eps
corresponds, on an n-point grid, to adding eps^alpha * n^(alpha/2) * z to
the samples, where z is a unit-variance discrete fGn path (self-similarity
of the underlying integrated process: its increments over 1/n carry scale
n^(-H), and the sample-domain factor n^(alpha/2) = n^(1-H) makes the
Fourier coefficients of the noise match the continuous model's
|m|^(alpha-1) variance profile with an O(1) constant, independent of n).
For alpha = 1 this is the familiar regression equivalence: per-sample noise
sigma = eps * sqrt(n) gives per-coefficient noise eps.

All report files render floats with 17 significant digits and contain no
timestamps, so identical scenario files reproduce byte-identical outputs.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field, replace
from functools import lru_cache

import numpy as np

from .estimator import ChannelData, EstimatorConfig, estimate, estimate_known_kernel
from .exceptions import EstimationFailureError, InfeasibleLevelsError, InvalidInputError
from .fgn import FgnParams, sample_fgn
from .fourier import FourierSeries, PeriodicSignal, circular_convolve, forward
from .kernels import KernelSpec, kernel_signal, make_kernel
from .meyer import MeyerBasis, WaveletCoeffs, max_wavelet_level

# ---------------------------------------------------------------------------
# signals


@dataclass(frozen=True)
class BesovSignal:
    """A synthetic signal with known smoothness-ball membership."""

    signal: PeriodicSignal
    coeffs: WaveletCoeffs
    norm: float
    s: float
    p: float
    q: float
    radius: float


def besov_norm(coeffs: WaveletCoeffs, s: float, p: float, q: float) -> float:
    """Sequence-space smoothness norm of a coefficient rectangle:

        ( sum_j 2^(j s* q) ( sum_k |beta_{j,k}|^p )^(q/p) )^(1/q),

    with s* = s + 1/2 - 1/p and the usual sup conventions at p, q = inf.
    """
    s_star = s + 0.5 - (0.0 if math.isinf(p) else 1.0 / p)
    level_terms = []
    for j in coeffs.level_labels():
        a = np.abs(coeffs.values[j])
        if math.isinf(p):
            lp = float(a.max()) if a.size else 0.0
        else:
            lp = float(np.sum(a**p)) ** (1.0 / p)
        level_terms.append(2.0 ** (j * s_star) * lp)
    terms = np.asarray(level_terms)
    if math.isinf(q):
        return float(terms.max())
    return float(np.sum(terms**q) ** (1.0 / q))


def build_besov_signal(
    s: float,
    p: float,
    radius: float,
    m0: int,
    J: int,
    seed: int,
    n: int,
    q: float | None = None,
) -> BesovSignal:
    """Random-sign signal sitting just inside the radius-A smoothness ball.

    Level amplitudes follow sigma_j = c 2^(-j(s + 1/2 - 1/p)) 2^(-j/p) with
    random signs, and c is scaled so the realized norm equals
    radius * (1 - 1e-6).
    """
    if p < 1:
        raise InvalidInputError(f"shape parameter p must be >= 1, got {p}")
    if s < max((0.0 if math.isinf(p) else 1.0 / p), 0.5):
        raise InvalidInputError(
            f"smoothness s={s} below the admissible bound max(1/p, 1/2)"
        )
    if radius <= 0:
        raise InvalidInputError("radius must be positive")
    q = p if q is None else q
    basis = MeyerBasis(m0=m0, n=n)
    if J - 1 > basis.max_level:
        raise InvalidInputError(
            f"signal levels exceed the grid: J-1={J - 1} > max level {basis.max_level}"
        )
    rng = np.random.default_rng(seed)
    inv_p = 0.0 if math.isinf(p) else 1.0 / p
    values: dict[int, np.ndarray] = {}
    for j in range(m0 - 1, J):
        slots = basis.slots(j)
        sigma = 2.0 ** (-j * (s + 0.5 - inv_p)) * 2.0 ** (-j * inv_p)
        signs = rng.choice([-1.0, 1.0], size=slots)
        values[j] = (sigma * signs).astype(complex)
    coeffs = WaveletCoeffs(m0, J, values)
    raw_norm = besov_norm(coeffs, s, p, q)
    scale = radius * (1.0 - 1e-6) / raw_norm
    coeffs = WaveletCoeffs(m0, J, {j: v * scale for j, v in values.items()})
    return BesovSignal(
        signal=basis.synthesize(coeffs),
        coeffs=coeffs,
        norm=besov_norm(coeffs, s, p, q),
        s=s,
        p=p,
        q=q,
        radius=radius,
    )


def named_signal(name: str, n: int) -> PeriodicSignal:
    """Demo curves for qualitative runs (not used for rate acceptance)."""
    t = np.arange(n) / n
    if name == "smoothblob":
        f = (
            1.5 * np.exp(12.0 * (np.cos(2 * np.pi * (t - 0.3)) - 1.0))
            + np.exp(30.0 * (np.cos(2 * np.pi * (t - 0.62)) - 1.0))
            + 0.7 * np.exp(6.0 * (np.cos(2 * np.pi * (t - 0.85)) - 1.0))
        )
        return PeriodicSignal(f - f.mean())
    if name == "piecewise":
        f = np.where((t >= 0.1) & (t < 0.35), 1.2, 0.0)
        f = f - np.where((t >= 0.5) & (t < 0.62), 0.8, 0.0)
        bump = np.clip(1.0 - np.abs(t - 0.8) / 0.06, 0.0, None)
        f = f + 0.9 * bump
        return PeriodicSignal(f - f.mean())
    raise InvalidInputError(f"unknown named signal {name!r}")


# ---------------------------------------------------------------------------
# scenario


@dataclass(frozen=True)
class SignalSpec:
    kind: str = "besov"          # "besov" | "smoothblob" | "piecewise"
    s: float = 2.0
    p: float = 2.0
    q: float | None = None
    radius: float = 64.0
    seed: int = 11
    m0: int = 2
    j_top: int | None = None     # build levels up to j_top-1; None = grid maximum


@dataclass(frozen=True)
class KernelParams:
    nu: float = 1.0
    amplitude: float = 1.0
    family: str = "power"
    phase: float = 0.0


@dataclass(frozen=True)
class DeltaCoupling:
    """How the kernel-noise level follows the signal-noise grid."""

    mode: str = "zero"           # "zero" | "equal" | "power" | "fixed"
    gamma: float = 1.0           # delta = eps^gamma in "power" mode
    value: float = 0.0           # used in "fixed" mode

    def delta_for(self, eps: float) -> float:
        if self.mode == "zero":
            return 0.0
        if self.mode == "equal":
            return eps
        if self.mode == "power":
            return eps**self.gamma
        if self.mode == "fixed":
            return self.value
        raise InvalidInputError(f"unknown delta mode {self.mode!r}")


@dataclass(frozen=True)
class Scenario:
    n: int = 4096
    channels: int = 1
    signal: SignalSpec = field(default_factory=SignalSpec)
    kernels: tuple[KernelParams, ...] = (KernelParams(),)
    alpha1: tuple[float, ...] = (1.0,)
    alpha2: tuple[float, ...] = (1.0,)
    eps_grid: tuple[float, ...] = tuple(2.0**-k for k in range(3, 10))
    delta: DeltaCoupling = field(default_factory=DeltaCoupling)
    reps: int = 100
    base_seed: int = 2024
    oracle: bool = True
    collect_traces: bool = False
    config: EstimatorConfig = field(default_factory=EstimatorConfig)

    def __post_init__(self):
        if self.channels < 1:
            raise InvalidInputError("need at least one channel")
        object.__setattr__(self, "kernels", _broadcast(self.kernels, self.channels, "kernels"))
        object.__setattr__(self, "alpha1", _broadcast(self.alpha1, self.channels, "alpha1"))
        object.__setattr__(self, "alpha2", _broadcast(self.alpha2, self.channels, "alpha2"))
        grid = tuple(float(e) for e in self.eps_grid)
        if not grid:
            raise InvalidInputError("eps grid must be nonempty")
        if any(e <= 0 for e in grid):
            raise InvalidInputError("eps grid entries must be positive")
        if any(b >= a for a, b in zip(grid, grid[1:])):
            raise InvalidInputError("eps grid must be strictly decreasing")
        object.__setattr__(self, "eps_grid", grid)
        if self.reps < 1:
            raise InvalidInputError("reps must be >= 1")

    def kernel_bank(self) -> list[KernelSpec]:
        return list(_kernel_bank_cached(self.kernels, self.n))


def _broadcast(values, m: int, name: str):
    vals = tuple(values) if isinstance(values, (tuple, list)) else (values,)
    if len(vals) == 1:
        return vals * m
    if len(vals) != m:
        raise InvalidInputError(f"{name} must have 1 or {m} entries, got {len(vals)}")
    return vals


@lru_cache(maxsize=32)
def _kernel_bank_cached(params: tuple[KernelParams, ...], n: int) -> tuple[KernelSpec, ...]:
    return tuple(make_kernel(k.nu, k.amplitude, n, k.family, k.phase) for k in params)


@lru_cache(maxsize=32)
def _signal_cached(sig: SignalSpec, n: int) -> PeriodicSignal:
    if sig.kind == "besov":
        j_top = sig.j_top if sig.j_top is not None else max_wavelet_level(n)
        return build_besov_signal(sig.s, sig.p, sig.radius, sig.m0, j_top, sig.seed, n, sig.q).signal
    return named_signal(sig.kind, n)


def scenario_signal(scenario: Scenario) -> PeriodicSignal:
    return _signal_cached(scenario.signal, scenario.n)


def derive_seed(base: int, *keys: int) -> int:
    """Deterministic child seed from a base seed and integer keys."""
    ss = np.random.SeedSequence(entropy=int(base), spawn_key=tuple(int(k) for k in keys))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def default_scenario(**overrides) -> Scenario:
    """Blind two-channel reference scenario with coupled kernel noise.

    Smooth kernels (decay exponent 2) keep the kernel-noise stabilization
    meaningful across the grid and leave the periodogram's upper band
    noise-dominated, which the split-sample exponent plug-in relies on.
    The threshold constants are raised well above 1 so that pure-noise
    coefficients at deep levels are reliably killed (risk curves otherwise
    saturate); the radius puts the keep/kill boundary strictly inside the
    wavelet range over the whole noise grid.
    """
    base = dict(
        n=2**13,
        channels=2,
        signal=SignalSpec(kind="besov", s=2.0, p=2.0, q=2.0, radius=1000.0, seed=11),
        kernels=(KernelParams(nu=2.0, family="smooth-power"),),
        alpha1=(1.0,),
        alpha2=(1.0,),
        eps_grid=tuple(2.0**-k for k in range(6, 13)),
        delta=DeltaCoupling(mode="equal"),
        reps=100,
        base_seed=7,
        oracle=True,
        config=EstimatorConfig(rho1=6.2, rho2=2.5, besov_radius=1000.0),
    )
    base.update(overrides)
    return Scenario(**base)


def known_kernel_rate_scenario(alpha1: float = 1.0, **overrides) -> Scenario:
    """Single-channel known-kernel rate experiment (delta = 0).

    Same tuning logic as default_scenario; the coarser eps grid matches the
    classical noise range for convergence-rate regressions.
    """
    base = dict(
        n=2**13,
        channels=1,
        signal=SignalSpec(kind="besov", s=2.0, p=2.0, q=2.0, radius=3800.0, seed=11),
        kernels=(KernelParams(nu=1.0),),
        alpha1=(alpha1,),
        alpha2=(1.0,),
        eps_grid=tuple(2.0**-k for k in range(3, 10)),
        delta=DeltaCoupling(mode="zero"),
        reps=100,
        base_seed=7,
        oracle=False,
        config=EstimatorConfig(rho1=6.2, rho2=1.0, besov_radius=3800.0),
    )
    base.update(overrides)
    return Scenario(**base)


# ---------------------------------------------------------------------------
# observation synthesis


@dataclass(frozen=True)
class SimulatedObservations:
    channels: list[ChannelData]           # blind data (noisy kernels)
    oracle_channels: list[ChannelData]    # exact kernels, delta = 0
    y_samples: list[np.ndarray]
    g_samples: list[np.ndarray]


def simulate_observations(
    scenario: Scenario, eps: float, delta: float, seed: int
) -> SimulatedObservations:
    """Draw one replication of all channels at noise levels (eps, delta).

    Independent fGn paths per channel and per role (signal noise vs kernel
    noise), each with its own derived seed, so channels are independent and
    the whole draw is reproducible from `seed`.
    """
    f = scenario_signal(scenario)
    n = scenario.n
    bank = scenario.kernel_bank()
    channels: list[ChannelData] = []
    oracle: list[ChannelData] = []
    y_samples: list[np.ndarray] = []
    g_samples: list[np.ndarray] = []
    for l in range(scenario.channels):
        a1 = scenario.alpha1[l]
        a2 = scenario.alpha2[l]
        g_sig = kernel_signal(bank[l])
        conv = circular_convolve(f, g_sig)
        y = conv.samples.copy()
        if eps > 0.0:
            z1 = sample_fgn(FgnParams.from_alpha(a1, n, derive_seed(seed, l, 0)))
            y = y + eps**a1 * n ** (a1 / 2.0) * z1
        g_obs = g_sig.samples.copy()
        if delta > 0.0:
            z2 = sample_fgn(FgnParams.from_alpha(a2, n, derive_seed(seed, l, 1)))
            g_obs = g_obs + delta**a2 * n ** (a2 / 2.0) * z2
            g_obs_tilde = forward(PeriodicSignal(g_obs))
        else:
            g_obs_tilde = bank[l].g_tilde  # exact spectrum, no round trip
        y_samples.append(y)
        g_samples.append(g_obs)
        channels.append(
            ChannelData(
                y_tilde=forward(PeriodicSignal(y)),
                g_obs=g_obs_tilde,
                alpha1=a1,
                alpha2=a2,
                eps=eps,
                delta=delta,
            )
        )
        oracle.append(
            ChannelData(
                y_tilde=channels[-1].y_tilde,
                g_obs=bank[l].g_tilde,
                alpha1=a1,
                alpha2=a2,
                eps=eps,
                delta=0.0,
            )
        )
    return SimulatedObservations(channels, oracle, y_samples, g_samples)


# ---------------------------------------------------------------------------
# rate theory


@dataclass(frozen=True)
class RateExponents:
    """Risk-decay exponents on the eps^(2 alpha) and delta^(2 alpha) scales."""

    exponent_eps: float
    exponent_delta: float
    regime: str
    xi1: bool                  # log-factor flag at the eps-side boundary
    xi2: bool
    l1_star: int
    l2_star: int
    s1: float
    s2: float
    alpha1_star: float
    alpha2_star: float


def theoretical_exponent(
    s: float,
    p: float,
    nu_list,
    alpha1_list,
    alpha2_list,
) -> RateExponents:
    """Four-regime minimax exponents for the matched smoothness ball.

    The effective channel for each noise source minimizes 2 nu_l + alpha_l
    (ties to the lowest index); the eps-side branch is dense when
    s > s1 = (1/p - 1/2)(2 nu + alpha) and sparse otherwise, and likewise
    for the delta side with s2.  Dense exponent: 2s / (2s + 2 nu + alpha);
    sparse exponent: 2s* / (2s* + 2 nu + alpha - 1) with s* = s + 1/2 - 1/p.
    At s = s_i the two coincide and a log factor is flagged.
    """
    nus = np.asarray(list(nu_list), dtype=float)
    a1s = np.asarray(list(alpha1_list), dtype=float)
    a2s = np.asarray(list(alpha2_list), dtype=float)
    if not (nus.size == a1s.size == a2s.size) or nus.size == 0:
        raise InvalidInputError("nu, alpha1, alpha2 lists must be equal nonempty lengths")
    if p < 1:
        raise InvalidInputError(f"p must be >= 1, got {p}")
    inv_p = 0.0 if math.isinf(p) else 1.0 / p
    if s < max(inv_p, 0.5):
        raise InvalidInputError(f"need s >= max(1/p, 1/2), got s={s}, p={p}")
    l1 = int(np.argmin(2.0 * nus + a1s))
    l2 = int(np.argmin(2.0 * nus + a2s))
    s1 = (inv_p - 0.5) * (2.0 * nus[l1] + a1s[l1])
    s2 = (inv_p - 0.5) * (2.0 * nus[l2] + a2s[l2])
    s_star = s + 0.5 - inv_p

    def dense(nu: float, a: float) -> float:
        return 2.0 * s / (2.0 * s + 2.0 * nu + a)

    def sparse(nu: float, a: float) -> float:
        return 2.0 * s_star / (2.0 * s_star + 2.0 * nu + a - 1.0)

    eps_dense = s > s1
    del_dense = s > s2
    e1 = dense(nus[l1], a1s[l1]) if eps_dense else sparse(nus[l1], a1s[l1])
    e2 = dense(nus[l2], a2s[l2]) if del_dense else sparse(nus[l2], a2s[l2])
    if eps_dense and del_dense:
        regime = "dense"
    elif not eps_dense and not del_dense:
        regime = "sparse"
    elif eps_dense:
        regime = "eps-dense-delta-sparse"
    else:
        regime = "eps-sparse-delta-dense"
    return RateExponents(
        exponent_eps=float(e1),
        exponent_delta=float(e2),
        regime=regime,
        xi1=bool(s == s1),
        xi2=bool(s == s2),
        l1_star=l1,
        l2_star=l2,
        s1=float(s1),
        s2=float(s2),
        alpha1_star=float(a1s[l1]),
        alpha2_star=float(a2s[l2]),
    )


def scenario_exponents(scenario: Scenario) -> RateExponents | None:
    sig = scenario.signal
    if sig.kind != "besov":
        return None
    return theoretical_exponent(
        sig.s,
        sig.p,
        [k.nu for k in scenario.kernels],
        scenario.alpha1,
        scenario.alpha2,
    )


def theory_log_slope(theory: RateExponents, coupling: DeltaCoupling) -> float:
    """Predicted slope of log risk against log eps for a coupled grid.

    Risk tracks max((eps^(2a1))^e1, (delta^(2a2))^e2); with delta = eps^gamma
    the slower-decaying term dominates as eps -> 0, so the slope is the
    smaller of 2 a1 e1 and gamma * 2 a2 e2 (log factors ignored).
    """
    slope_eps = 2.0 * theory.alpha1_star * theory.exponent_eps
    if coupling.mode in ("zero", "fixed"):
        # a fixed (or absent) kernel-noise level adds a constant floor, not a slope
        return slope_eps
    gamma = 1.0 if coupling.mode == "equal" else coupling.gamma
    return min(slope_eps, gamma * 2.0 * theory.alpha2_star * theory.exponent_delta)


# ---------------------------------------------------------------------------
# experiment engine


@dataclass(frozen=True)
class RateFit:
    slope: float
    intercept: float
    r2: float
    theory_slope: float | None
    slope_vs_theory: float | None


@dataclass
class RiskReport:
    eps: np.ndarray
    delta: np.ndarray
    risk_mean: np.ndarray
    risk_se: np.ndarray
    oracle_mean: np.ndarray
    oracle_se: np.ndarray
    reps: int
    failures: int
    theory: RateExponents | None
    coupling: DeltaCoupling
    fit: RateFit | None = None
    traces: list | None = None   # per grid point, per rep summaries (opt-in)
    wall_seconds: float = 0.0


def run_experiment(scenario: Scenario) -> RiskReport:
    """Monte Carlo risk over the noise grid with per-replication seeds.

    Replication r at every grid point reuses seed derive(base, r), so grid
    points are matched in their noise paths; the oracle run shares the
    blind run's observations exactly.
    """
    t0 = time.perf_counter()
    f = scenario_signal(scenario)
    n_grid = len(scenario.eps_grid)
    risk_mean = np.zeros(n_grid)
    risk_se = np.zeros(n_grid)
    oracle_mean = np.full(n_grid, np.nan)
    oracle_se = np.full(n_grid, np.nan)
    failures = 0
    all_traces: list | None = [] if scenario.collect_traces else None
    for gi, eps in enumerate(scenario.eps_grid):
        delta = scenario.delta.delta_for(eps)
        risks = []
        oracle_risks = []
        point_traces = [] if scenario.collect_traces else None
        for r in range(scenario.reps):
            seed = derive_seed(scenario.base_seed, r)
            obs = simulate_observations(scenario, eps, delta, seed)
            try:
                fhat, trace = estimate(obs.channels, scenario.config)
                risks.append(float(np.mean((fhat.samples - f.samples) ** 2)))
                if point_traces is not None:
                    point_traces.append(
                        {
                            "rep": r,
                            "m0": trace.m0,
                            "J": trace.J,
                            "kept": trace.kept,
                            "killed": trace.killed,
                            "survivors": int(np.sum(trace.survive)),
                            "dead_levels": list(trace.dead_levels),
                        }
                    )
                if scenario.oracle:
                    ohat, _ = estimate_known_kernel(obs.oracle_channels, scenario.config)
                    oracle_risks.append(float(np.mean((ohat.samples - f.samples) ** 2)))
            except (InfeasibleLevelsError, EstimationFailureError):
                failures += 1
        if all_traces is not None:
            all_traces.append(point_traces)
        if not risks:
            raise EstimationFailureError(
                f"every replication failed at eps={eps}, delta={delta}"
            )
        arr = np.asarray(risks)
        risk_mean[gi] = arr.mean()
        risk_se[gi] = arr.std(ddof=1) / math.sqrt(arr.size) if arr.size > 1 else 0.0
        if oracle_risks:
            oarr = np.asarray(oracle_risks)
            oracle_mean[gi] = oarr.mean()
            oracle_se[gi] = oarr.std(ddof=1) / math.sqrt(oarr.size) if oarr.size > 1 else 0.0
    report = RiskReport(
        eps=np.asarray(scenario.eps_grid),
        delta=np.asarray([scenario.delta.delta_for(e) for e in scenario.eps_grid]),
        risk_mean=risk_mean,
        risk_se=risk_se,
        oracle_mean=oracle_mean,
        oracle_se=oracle_se,
        reps=scenario.reps,
        failures=failures,
        theory=scenario_exponents(scenario),
        coupling=scenario.delta,
        traces=all_traces,
    )
    if len(scenario.eps_grid) >= 4:
        report.fit = fit_rate(report)
    report.wall_seconds = time.perf_counter() - t0
    return report


def fit_rate(report: RiskReport) -> RateFit:
    """OLS of log risk on log eps, with the theory comparison attached.

    Log factors in the risk are not modeled, which biases the fitted slope
    slightly upward; rate checks use widened tolerances for this reason.
    """
    if report.eps.size < 4:
        raise InvalidInputError("need at least 4 grid points to fit a rate")
    if np.any(report.risk_mean <= 0):
        raise InvalidInputError("risks must be positive to fit a log-log rate")
    x = np.log(report.eps)
    y = np.log(report.risk_mean)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid**2)) / ss_tot if ss_tot > 0 else 1.0
    theory_slope = None
    ratio = None
    if report.theory is not None:
        theory_slope = theory_log_slope(report.theory, report.coupling)
        if theory_slope:
            ratio = float(slope) / theory_slope
    return RateFit(
        slope=float(slope),
        intercept=float(intercept),
        r2=float(r2),
        theory_slope=theory_slope,
        slope_vs_theory=ratio,
    )


def constant_sweep(scenario: Scenario, name: str, values) -> list[tuple[float, RateFit]]:
    """Sensitivity of the fitted rate to one estimator constant."""
    out = []
    for v in values:
        cfg = replace(scenario.config, **{name: v})
        rep = run_experiment(replace(scenario, config=cfg))
        if rep.fit is None:
            rep.fit = fit_rate(rep)
        out.append((float(v), rep.fit))
    return out


# ---------------------------------------------------------------------------
# serialization (deterministic, 17 significant digits)


def fmt17(x: float) -> str:
    if isinstance(x, float) and math.isnan(x):
        return "nan"
    return f"{x:.17g}"


def _render_json(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            f'{pad}  {json.dumps(str(k))}: {_render_json(v, indent + 1)}' for k, v in obj.items()
        ]
        return "{\n" + ",\n".join(items) + f"\n{pad}}}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [f"{pad}  {_render_json(v, indent + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + f"\n{pad}]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt17(float(obj))
    return json.dumps(obj)


def dumps_17g(obj) -> str:
    """JSON text with every float rendered at 17 significant digits."""
    return _render_json(obj) + "\n"


def report_csv(report: RiskReport) -> str:
    lines = ["eps,delta,risk_mean,risk_se,reps,oracle_risk_mean,oracle_risk_se"]
    for i in range(report.eps.size):
        lines.append(
            ",".join(
                [
                    fmt17(float(report.eps[i])),
                    fmt17(float(report.delta[i])),
                    fmt17(float(report.risk_mean[i])),
                    fmt17(float(report.risk_se[i])),
                    str(report.reps),
                    fmt17(float(report.oracle_mean[i])),
                    fmt17(float(report.oracle_se[i])),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def report_summary(report: RiskReport) -> dict:
    summary: dict = {
        "grid_points": int(report.eps.size),
        "reps": report.reps,
        "failures": report.failures,
    }
    if report.fit is not None:
        summary["fit"] = {
            "slope": report.fit.slope,
            "intercept": report.fit.intercept,
            "r2": report.fit.r2,
            "theory_slope": report.fit.theory_slope,
            "slope_vs_theory": report.fit.slope_vs_theory,
        }
    if report.theory is not None:
        summary["theory"] = {
            "exponent_eps": report.theory.exponent_eps,
            "exponent_delta": report.theory.exponent_delta,
            "regime": report.theory.regime,
            "xi1": report.theory.xi1,
            "xi2": report.theory.xi2,
            "s1": report.theory.s1,
            "s2": report.theory.s2,
        }
    summary["risk"] = [
        {
            "eps": float(report.eps[i]),
            "delta": float(report.delta[i]),
            "risk_mean": float(report.risk_mean[i]),
            "risk_se": float(report.risk_se[i]),
            "oracle_risk_mean": float(report.oracle_mean[i]),
            "oracle_risk_se": float(report.oracle_se[i]),
        }
        for i in range(report.eps.size)
    ]
    return summary


def write_report(report: RiskReport, prefix: str, plot: bool = False) -> list[str]:
    """Write <prefix>.csv and <prefix>.json (and optionally <prefix>.svg)."""
    paths = []
    csv_path = f"{prefix}.csv"
    with open(csv_path, "w", encoding="utf-8") as fh:
        fh.write(report_csv(report))
    paths.append(csv_path)
    json_path = f"{prefix}.json"
    with open(json_path, "w", encoding="utf-8") as fh:
        fh.write(dumps_17g(report_summary(report)))
    paths.append(json_path)
    if plot:
        svg_path = f"{prefix}.svg"
        plot_loglog(report, svg_path)
        paths.append(svg_path)
    return paths


def plot_loglog(report: RiskReport, path: str) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5.5, 4))
    ax.errorbar(report.eps, report.risk_mean, yerr=2 * report.risk_se, fmt="o-", label="blind")
    if np.any(np.isfinite(report.oracle_mean)):
        ax.errorbar(
            report.eps, report.oracle_mean, yerr=2 * report.oracle_se, fmt="s--",
            label="known kernel",
        )
    if report.fit is not None:
        xs = np.array([report.eps.min(), report.eps.max()])
        ax.plot(xs, np.exp(report.fit.intercept) * xs**report.fit.slope, "k:",
                label=f"fit slope {report.fit.slope:.3f}")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("eps")
    ax.set_ylabel("mean squared L2 risk")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, metadata={"Date": None})
    plt.close(fig)
