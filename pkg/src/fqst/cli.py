"""Command-line entry point.

Subcommands: ``simulate`` (run a sweep), ``plan`` (print a fraction
schedule), ``pulse`` (dump a sampled control), ``describe`` (dump the
network basis and mode table), ``calibrate`` (depletion scan for the
waveguide-induced qubit shift).

Exit codes: 0 success, 1 runtime failure, 2 infeasible configuration or
bad usage.
"""

from __future__ import annotations

import argparse
import math
import sys

from .config import load_config
from .errors import ConfigError, DomainError, FqstError, InfeasiblePulseError
from .pulses import Direction, PhotonShape, PulseSpec, ShapeKind

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_CONFIG = 2

_SHAPES = {
    "sech": ShapeKind.SECH,
    "lorentzian": ShapeKind.LORENTZIAN,
    "gaussian": ShapeKind.GAUSSIAN,
    "reduced_bandwidth": ShapeKind.SECH_REDUCED,
}


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="fqst",
        description="Shaped-photon entanglement distribution: simulation, "
                    "planning, and pulse synthesis.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run a noise sweep from a config")
    sim.add_argument("--config", required=True, help="JSON run configuration")
    sim.add_argument("--output", help="override the sweep CSV path")
    sim.add_argument("--realizations", type=int, help="override the ensemble size")
    sim.add_argument("--seed", type=int, help="override the base seed")
    sim.add_argument("--trajectory", metavar="PATH",
                     help="also dump the first grid point's noiseless "
                          "trajectory as CSV t,label,re,im")
    sim.add_argument("--quiet", action="store_true",
                     help="suppress per-point progress lines")

    plan = sub.add_parser("plan", help="print a fraction schedule as CSV")
    plan.add_argument("--plan", required=True,
                      choices=["sequential_w", "bell_endpoint",
                               "even_site_w", "star_w"])
    plan.add_argument("--n", type=int, required=True,
                      help="qubit count (spoke count for star_w)")
    plan.add_argument("--include-emitter", action="store_true",
                      help="star_w only: keep 1/(N+1) on the emitter")

    pulse = sub.add_parser("pulse", help="dump a sampled control as CSV")
    pulse.add_argument("--shape", required=True, choices=sorted(_SHAPES))
    pulse.add_argument("--n", type=float, default=1.0,
                       help="transferred fraction parameter n")
    kap = pulse.add_mutually_exclusive_group(required=True)
    kap.add_argument("--kappa", type=float, help="bandwidth in rad/s")
    kap.add_argument("--kappa-hz", type=float, help="bandwidth in Hz")
    pulse.add_argument("--eta", type=float, default=1.0,
                       help="bandwidth reduction factor (reduced_bandwidth)")
    pulse.add_argument("--absorb", action="store_true",
                       help="emit the time-reversed absorption control")
    pulse.add_argument("--samples", type=int, default=1025)
    pulse.add_argument("--out", help="output CSV path (default stdout)")

    desc = sub.add_parser("describe",
                          help="dump the network basis index map and mode table")
    desc.add_argument("--config", required=True)
    desc.add_argument("--out", help="output CSV path (default stdout)")

    cal = sub.add_parser("calibrate",
                         help="depletion scan estimating the qubit shift")
    cal.add_argument("--config", required=True)
    cal.add_argument("--span", type=float, default=0.02,
                     help="scan half-range in units of kappa")
    cal.add_argument("--points", type=int, default=33)
    return parser


def _cmd_simulate(args):
    from .runner import run_sweep, run_trajectory

    overrides = {"output": args.output, "realizations": args.realizations,
                 "seed": args.seed}
    config = load_config(args.config, overrides)

    def progress(point, row):
        if not args.quiet:
            print(f"{point.topology} kappa={point.kappa:.6g} "
                  f"T2={point.t2:.6g} -> F={row['fidelity']:.6f}",
                  file=sys.stderr)

    run_sweep(config, progress=progress)
    if args.trajectory:
        with open(args.trajectory, "w", encoding="utf-8", newline="") as fh:
            run_trajectory(config, fh)
    if not args.quiet:
        print(f"sweep written to {config.output}", file=sys.stderr)
    return EXIT_OK


def _cmd_plan(args):
    from .planner import (
        bell_endpoint_fractions,
        even_site_w_fractions,
        sequential_w_fractions,
        star_w_fractions,
    )

    if args.plan == "sequential_w":
        plan = sequential_w_fractions(args.n)
    elif args.plan == "bell_endpoint":
        plan = bell_endpoint_fractions(args.n)
    elif args.plan == "even_site_w":
        plan = even_site_w_fractions(args.n)
    else:
        plan = star_w_fractions(args.n, include_emitter=args.include_emitter)
    print("step,numerator,denominator,fraction")
    for i, frac in enumerate(plan.fractions, start=1):
        print(f"{i},{frac.numerator},{frac.denominator},"
              f"{float(frac):.12g}")
    print("qubit,predicted_modulus")
    for i, m in enumerate(plan.predicted_moduli, start=1):
        print(f"{i},{m:.12g}")
    print(f"# {plan.description}; residual={plan.residual:.3g}")
    return EXIT_OK


def _cmd_pulse(args):
    from .runner import run_pulse_dump

    kappa = args.kappa if args.kappa is not None \
        else 2.0 * math.pi * args.kappa_hz
    shape = PhotonShape(_SHAPES[args.shape], kappa, args.n, eta=args.eta)
    direction = Direction.ABSORB if args.absorb else Direction.EMIT
    spec = PulseSpec(shape, direction=direction)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            run_pulse_dump(spec, fh, n_samples=args.samples)
    else:
        run_pulse_dump(spec, sys.stdout, n_samples=args.samples)
    return EXIT_OK


def _cmd_describe(args):
    from .runner import run_describe

    config = load_config(args.config)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            run_describe(config, fh)
    else:
        run_describe(config, sys.stdout)
    return EXIT_OK


def _cmd_calibrate(args):
    from .runner import run_depletion_calibration

    config = load_config(args.config)
    result = run_depletion_calibration(config, span=args.span,
                                       n_scan=args.points)
    print("detuning_rad_s,detuning_over_kappa")
    print(f"{result.detuning:.12g},{result.detuning_over_kappa:.12g}")
    print("# scan-based estimate: detuning maximizing the emitted fraction",
          file=sys.stderr)
    return EXIT_OK


_COMMANDS = {
    "simulate": _cmd_simulate,
    "plan": _cmd_plan,
    "pulse": _cmd_pulse,
    "describe": _cmd_describe,
    "calibrate": _cmd_calibrate,
}


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code not in (0, None) else EXIT_OK
    try:
        return _COMMANDS[args.command](args)
    except (ConfigError, InfeasiblePulseError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except FqstError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
