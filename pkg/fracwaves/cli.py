import argparse
import logging
import math
import sys

from pydantic import ValidationError

from fracwaves import __version__
from fracwaves.commands.crossings import CrossingsConfig, cmd_crossings
from fracwaves.commands.evolve import EvolveConfig, InitialCondition, cmd_evolve
from fracwaves.commands.figures import cmd_figures
from fracwaves.commands.ml_eval import MLEvalConfig, cmd_ml_eval
from fracwaves.commands.orders import cmd_orders
from fracwaves.commands.sweep import OutputFormat, SweepConfig, cmd_sweep
from fracwaves.CONSTANTS import CROSSING_TOL, GRID_LENGTH, GRID_POINTS, KDV_BRACKET
from fracwaves.dispersion import BranchMode, DispersionModel, ModelKind
from fracwaves.spectral.solver import PeriodicGrid
from fracwaves.utils import output_root, save_path


def _add_model_flags(parser: argparse.ArgumentParser, default: str | None = None) -> None:
    parser.add_argument(
        "--model",
        choices=[kind.value for kind in ModelKind],
        required=default is None,
        default=default,
    )
    parser.add_argument("--c0", type=float, default=1.0)
    parser.add_argument("--mu", type=float, default=1.0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracwaves",
        description="Dispersion, velocities and spectral evolution of time-fractional waves.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="tabulate omega, v_p and v_g over a range of k")
    _add_model_flags(sweep)
    sweep.add_argument("--alpha", type=float, required=True)
    sweep.add_argument("--kmin", type=float, required=True)
    sweep.add_argument("--kmax", type=float, required=True)
    sweep.add_argument("--n", type=int, default=200)
    sweep.add_argument("--output", help="output path without extension")
    sweep.add_argument("--format", choices=[f.value for f in OutputFormat], default="csv")
    sweep.add_argument(
        "--branch-mode", choices=[b.value for b in BranchMode], default=BranchMode.STRICT.value
    )

    evolve = sub.add_parser("evolve", help="evolve initial data with the exact propagator")
    _add_model_flags(evolve)
    evolve.add_argument("--alpha", type=float, required=True)
    evolve.add_argument("--n", type=int, default=GRID_POINTS)
    evolve.add_argument("--length", type=float, default=GRID_LENGTH)
    evolve.add_argument(
        "--initial", choices=[c.value for c in InitialCondition], default="cosine"
    )
    evolve.add_argument("--wave-index", type=int, default=1)
    evolve.add_argument("--k0", type=float, default=0.3)
    evolve.add_argument("--sigma", type=float, default=20.0)
    evolve.add_argument("--x0", type=float)
    evolve.add_argument("--times", type=float, nargs="+", required=True)
    evolve.add_argument("--output-dir")

    crossings = sub.add_parser("crossings", help="locate Re v_p = Re v_g crossings")
    _add_model_flags(crossings, default=ModelKind.KDV.value)
    crossings.add_argument("--alpha", type=float, nargs="+", required=True)
    crossings.add_argument("--bracket", type=float, nargs=2, default=list(KDV_BRACKET))
    crossings.add_argument("--tol", type=float, default=CROSSING_TOL)
    crossings.add_argument("--csv")

    ml_eval = sub.add_parser("ml-eval", help="evaluate the Mittag-Leffler function")
    ml_eval.add_argument("--alpha", type=float, required=True)
    ml_eval.add_argument("--z-re", type=float, default=0.0)
    ml_eval.add_argument("--z-im", type=float, default=0.0)

    orders = sub.add_parser("orders", help="list purely imaginary orders")
    orders.add_argument("--m-max", type=int, default=5)

    figures = sub.add_parser("figures", help="write CSV and SVG for every figure preset")
    figures.add_argument("--output-dir")

    return parser


def _model(args: argparse.Namespace) -> DispersionModel:
    return DispersionModel(kind=ModelKind(args.model), c0=args.c0, mu=args.mu)


def run(args: argparse.Namespace) -> int:
    if args.command == "sweep":
        output = args.output or save_path(
            "sweeps", f"{args.model}_alpha_{args.alpha:g}_k_{args.kmin:g}_{args.kmax:g}"
        )
        return cmd_sweep(
            SweepConfig(
                model=_model(args),
                alpha=args.alpha,
                k_min=args.kmin,
                k_max=args.kmax,
                n_samples=args.n,
                output_path=output,
                format=OutputFormat(args.format),
                branch_mode=BranchMode(args.branch_mode),
            )
        )
    if args.command == "evolve":
        output_dir = args.output_dir or str(
            output_root() / "snapshots" / f"{args.model}_alpha_{args.alpha:g}"
        )
        return cmd_evolve(
            EvolveConfig(
                model=_model(args),
                alpha=args.alpha,
                grid=PeriodicGrid(n_points=args.n, length=args.length),
                initial=InitialCondition(args.initial),
                wave_index=args.wave_index,
                k0=args.k0,
                sigma=args.sigma,
                x0=args.x0,
                times=args.times,
                output_dir=output_dir,
            )
        )
    if args.command == "crossings":
        return cmd_crossings(
            CrossingsConfig(
                model=_model(args),
                alphas=args.alpha,
                bracket=tuple(args.bracket),
                tol=args.tol,
                csv_path=args.csv,
            )
        )
    if args.command == "ml-eval":
        return cmd_ml_eval(MLEvalConfig(alpha=args.alpha, z_re=args.z_re, z_im=args.z_im))
    if args.command == "orders":
        return cmd_orders(args.m_max)
    return cmd_figures(args.output_dir)


def main(argv: list[str] | None = None) -> int:
    """
    Entry point of the `fracwaves` console script.

    Returns:
        int: 0 on success, 2 on a usage error or invalid configuration, 3 on a
        numeric or domain failure.
    """
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2

    for name in ("alpha", "kmin", "kmax", "c0", "mu", "length", "z_re", "z_im"):
        value = getattr(args, name, None)
        if isinstance(value, float) and not math.isfinite(value):
            print(f"error: --{name.replace('_', '-')} must be finite", file=sys.stderr)
            return 2

    try:
        return run(args)
    except ValidationError as exc:
        logging.error(f"Invalid configuration: {exc}")
        print(f"error: invalid configuration\n{exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
