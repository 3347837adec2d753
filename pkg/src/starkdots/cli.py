"""Batch command-line front end for the figure-level scenarios.

One subcommand per scenario; each run writes CSV, a flat key=value summary
and (unless --no-plot) a PNG figure into the output directory.  Exit codes:
0 success, 1 configuration or validation error, 2 numerical failure.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from .dynamics import IntegrationError
from .floquet import FloquetConvergenceError
from .scenarios import SCENARIOS, ConfigError, load_config, run_scenario

_HELP = {
    "anticrossing": "sweep the driven single-exciton eigenvalues over Omega2",
    "rwa-populations": "rotating-frame transfer study (on / pulse / off)",
    "lindblad-populations": "dissipative lab-frame pulse study with EOF",
    "eof-sweep": "EOF versus time for a series of decay rates",
    "resonance-solve": "closed-form resonant drive strength and timings",
    "floquet-validate": "check the counter-rotating shift formula",
}


def _u64(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit int")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="starkdots",
        description="Simulations of entanglement generation in two "
                    "laser-driven, Forster-coupled quantum dots.")
    sub = parser.add_subparsers(dest="scenario", required=True)
    for name in SCENARIOS:
        sp = sub.add_parser(name, help=_HELP[name])
        sp.add_argument("--config", metavar="PATH", default=None,
                        help="flat JSON key-value config file")
        sp.add_argument("--out", metavar="DIR", default=".",
                        help="output directory (default: current)")
        sp.add_argument("--seed", type=_u64, default=0, metavar="U64",
                        help="seed for randomized sweeps (default 0)")
        sp.add_argument("--parallel", type=int, default=1, metavar="N",
                        help="worker threads for sweep evaluation")
        sp.add_argument("--no-plot", action="store_true",
                        help="skip figure rendering")
    return parser


def _render_plots(scenario, result, config):
    from . import plotting
    paths = []
    for csv_path in result.csv_paths:
        if scenario == "anticrossing":
            paths.append(plotting.plot_anticrossing(csv_path))
        elif scenario in ("rwa-populations", "lindblad-populations"):
            paths.append(plotting.plot_populations(csv_path))
        elif scenario == "eof-sweep":
            paths.append(plotting.plot_eof_sweep(
                csv_path, gamma2_values=config.overrides["gamma2_values"]))
        elif scenario == "floquet-validate":
            paths.append(plotting.plot_floquet_discrepancy(csv_path))
    return paths


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.scenario, config_path=args.config,
                             out_dir=args.out, seed=args.seed,
                             parallel=args.parallel)
        result = run_scenario(config)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (IntegrationError, FloquetConvergenceError,
            np.linalg.LinAlgError, FloatingPointError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2

    for path in result.csv_paths:
        print(f"wrote {path}")
    if not args.no_plot:
        for path in _render_plots(args.scenario, result, config):
            print(f"wrote {path}")
    print(f"wrote {result.summary_path}")
    for key, value in result.summary.items():
        print(f"  {key} = {value}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
