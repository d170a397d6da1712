"""Command-line entry points for the simulation laboratory.

Subcommands: simulate, estimate, rates, exponent, fgn-check, hurst.
Exit codes: 0 success, 2 invalid configuration, 3 runtime estimation failure.

Scenario files are JSON; see the README for the key reference.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .estimator import ChannelData, EstimatorConfig, estimate
from .exceptions import InvalidInputError
from .fgn import FgnParams, noise_fourier_diagnostic, sample_fgn
from .fourier import PeriodicSignal, forward
from .harness import (
    DeltaCoupling,
    KernelParams,
    Scenario,
    SignalSpec,
    dumps_17g,
    run_experiment,
    scenario_signal,
    simulate_observations,
    theoretical_exponent,
    write_report,
)
from .lrd import estimate_hurst

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RUNTIME = 3


def load_scenario(path: str, reps: int | None = None, seed: int | None = None) -> Scenario:
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    try:
        sig = SignalSpec(**raw.get("signal", {}))
        kernels = tuple(KernelParams(**k) for k in raw.get("kernels", [{}]))
        delta = DeltaCoupling(**raw.get("delta", {}))
        config = EstimatorConfig(**raw.get("estimator", {}))
        scenario = Scenario(
            n=raw.get("n", 4096),
            channels=raw.get("channels", 1),
            signal=sig,
            kernels=kernels,
            alpha1=tuple(np.atleast_1d(raw.get("alpha1", 1.0)).tolist()),
            alpha2=tuple(np.atleast_1d(raw.get("alpha2", 1.0)).tolist()),
            eps_grid=tuple(raw.get("eps_grid", Scenario().eps_grid)),
            delta=delta,
            reps=raw.get("reps", 100),
            base_seed=raw.get("base_seed", 2024),
            oracle=raw.get("oracle", True),
            config=config,
        )
    except TypeError as err:
        raise InvalidInputError(f"bad scenario key: {err}") from err
    if reps is not None:
        scenario = Scenario(**{**scenario.__dict__, "reps": reps})
    if seed is not None:
        scenario = Scenario(**{**scenario.__dict__, "base_seed": seed})
    return scenario


def _parse_floats(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok.strip()]


def cmd_simulate(args) -> int:
    scenario = load_scenario(args.scenario, seed=args.seed)
    eps = args.eps
    delta = scenario.delta.delta_for(eps) if args.delta is None else args.delta
    obs = simulate_observations(scenario, eps, delta, scenario.base_seed)
    f = scenario_signal(scenario)
    payload = {
        "n": scenario.n,
        "eps": eps,
        "delta": delta,
        "alpha1": np.asarray(scenario.alpha1),
        "alpha2": np.asarray(scenario.alpha2),
        "truth": f.samples,
    }
    for l in range(scenario.channels):
        payload[f"y_{l}"] = obs.y_samples[l]
        payload[f"g_{l}"] = obs.g_samples[l]
    np.savez(args.out, **payload)
    print(f"wrote {scenario.channels} channel(s) at eps={eps:g}, delta={delta:g} to {args.out}")
    return EXIT_OK


def cmd_estimate(args) -> int:
    data = np.load(args.input)
    n = int(data["n"])
    eps = float(data["eps"])
    delta = float(data["delta"])
    alpha1 = np.atleast_1d(data["alpha1"])
    alpha2 = np.atleast_1d(data["alpha2"])
    channels = []
    l = 0
    while f"y_{l}" in data:
        channels.append(
            ChannelData(
                y_tilde=forward(PeriodicSignal(data[f"y_{l}"])),
                g_obs=forward(PeriodicSignal(data[f"g_{l}"])),
                alpha1=float(alpha1[min(l, alpha1.size - 1)]),
                alpha2=float(alpha2[min(l, alpha2.size - 1)]),
                eps=eps,
                delta=delta,
            )
        )
        l += 1
    if not channels:
        raise InvalidInputError(f"no channels found in {args.input}")
    config = EstimatorConfig(**json.loads(args.config)) if args.config else EstimatorConfig()
    fhat, trace = estimate(channels, config)
    t = np.arange(n) / n
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write("t,fhat\n")
        for i in range(n):
            fh.write(f"{t[i]:.17g},{fhat.samples[i]:.17g}\n")
    summary = {
        "m0": trace.m0,
        "J": trace.J,
        "kept": trace.kept,
        "killed": trace.killed,
        "dead_levels": trace.dead_levels,
        "surviving_frequencies": int(np.sum(trace.survive)),
        "uniform_weights": trace.uniform_weights,
        "j_capped": trace.j_capped,
        "lambdas": [float(x) for x in trace.lambdas],
    }
    if "truth" in data:
        truth = np.asarray(data["truth"])
        summary["risk"] = float(np.mean((fhat.samples - truth) ** 2))
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            fh.write(dumps_17g(summary))
    print(dumps_17g(summary), end="")
    return EXIT_OK


def cmd_rates(args) -> int:
    scenario = load_scenario(args.scenario, reps=args.reps, seed=args.seed)
    report = run_experiment(scenario)
    paths = write_report(report, args.out, plot=args.plot)
    if report.fit is not None:
        print(
            f"fitted slope {report.fit.slope:.4f} (R2 {report.fit.r2:.4f}),"
            f" theory {report.fit.theory_slope}"
        )
    print("wrote " + ", ".join(paths))
    return EXIT_OK


def cmd_exponent(args) -> int:
    theory = theoretical_exponent(
        args.s, args.p, _parse_floats(args.nu), _parse_floats(args.alpha1),
        _parse_floats(args.alpha2),
    )
    print(
        dumps_17g(
            {
                "exponent_eps": theory.exponent_eps,
                "exponent_delta": theory.exponent_delta,
                "regime": theory.regime,
                "xi1": theory.xi1,
                "xi2": theory.xi2,
                "l1_star": theory.l1_star,
                "l2_star": theory.l2_star,
                "s1": theory.s1,
                "s2": theory.s2,
            }
        ),
        end="",
    )
    return EXIT_OK


def cmd_fgn_check(args) -> int:
    params = FgnParams(args.hurst, args.n, args.seed)
    rep = noise_fourier_diagnostic(params, args.reps, m_max=args.m_max)
    print(
        dumps_17g(
            {
                "hurst": rep.hurst,
                "reps": rep.reps,
                "m_max": rep.m_max,
                "max_ratio": rep.max_ratio,
                "max_pair": list(rep.max_pair),
                "diag_slope": rep.diag_slope,
                "slope_target": rep.slope_target,
                "low_precision": rep.low_precision,
            }
        ),
        end="",
    )
    return EXIT_OK


def cmd_hurst(args) -> int:
    if args.input:
        series = np.loadtxt(args.input, delimiter=",", ndmin=1).ravel()
    else:
        if args.synthetic_h is None:
            raise InvalidInputError("provide --in FILE or --synthetic-h H")
        series = sample_fgn(FgnParams(args.synthetic_h, args.n, args.seed))
    est = estimate_hurst(series)
    print(
        dumps_17g(
            {
                "H_hat": est.H_hat,
                "alpha_hat": est.alpha_hat,
                "stderr": est.stderr,
                "bandwidth": est.bandwidth,
            }
        ),
        end="",
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracdeconv",
        description="Adaptive wavelet deconvolution with long-memory noise: simulation lab",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="draw observations for one noise level")
    p.add_argument("--scenario", required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("estimate", help="run the estimator on stored observations")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--trace", default=None)
    p.add_argument("--config", default=None, help="estimator constants as JSON")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("rates", help="full Monte Carlo rate experiment")
    p.add_argument("--scenario", required=True)
    p.add_argument("--reps", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", required=True, help="output prefix (.csv/.json)")
    p.add_argument("--plot", action="store_true", help="also write an SVG log-log plot")
    p.set_defaults(func=cmd_rates)

    p = sub.add_parser("exponent", help="print theoretical rate exponents")
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--nu", required=True, help="comma-separated per-channel values")
    p.add_argument("--alpha1", required=True)
    p.add_argument("--alpha2", required=True)
    p.set_defaults(func=cmd_exponent)

    p = sub.add_parser("fgn-check", help="noise coefficient covariance diagnostics")
    p.add_argument("--hurst", type=float, required=True)
    p.add_argument("--n", type=int, default=1024)
    p.add_argument("--reps", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--m-max", type=int, default=None)
    p.set_defaults(func=cmd_fgn_check)

    p = sub.add_parser("hurst", help="long-memory exponent estimation")
    p.add_argument("--in", dest="input", default=None, help="CSV/text file with one series")
    p.add_argument("--synthetic-h", type=float, default=None)
    p.add_argument("--n", type=int, default=16384)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_hurst)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InvalidInputError, FileNotFoundError, json.JSONDecodeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as err:  # estimation/runtime failures
        print(f"runtime failure: {err}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
