"""
Command-line front end.

    pytelebench bench --n 1 --strategy projective --theta0-grid 0:pi/2:9 \
        --mean-n-grid 0.01:0.49:49
    pytelebench estimator --n 1 --kappa-grid 1 --grid-size 129
    pytelebench validate --samples 1000000 --seed 7
    pytelebench figure --figure fig3 --out fig3.csv

Exit status: 0 success, 1 usage error, 2 validation failure, 3 numerical failure.
"""

import argparse
import json
import logging
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd

from pytelebench.curves.get_curves import (
    FIGURE_IDS,
    get_estimator_curve,
    get_fidelity_curve,
    get_figure,
    get_validation_report,
)
from pytelebench.export.writer import CurveWriter, OutputFormat
from pytelebench.utils.config import ESTIMATOR_GRID_POINTS
from pytelebench.utils.data_loader import load_json, load_validation_grid
from pytelebench.utils.exceptions import (
    DomainError,
    NumericalError,
    ValidationFailure,
)
from pytelebench.utils.grids import parse_grid
from pytelebench.utils.logger import setup_logging

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_NUMERIC = 3

CONFIG_KEYS = (
    "n",
    "strategy",
    "theta0",
    "theta0_grid",
    "kappa_grid",
    "mean_n_grid",
    "grid_size",
    "samples",
    "seed",
    "figure",
    "out",
    "format",
    "workers",
    "verbose",
)
STRATEGY_CHOICES = {
    "bench": ("do-nothing", "projective", "povm", "no-prior"),
    "estimator": (),
    "validate": ("do-nothing", "projective", "povm"),
    "figure": (),
}


class CliParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with status 1."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RunConfig:
    """
    Resolved settings of one CLI run, after merging the config file and flags.

    Attributes:
        command (str): bench, estimator, validate or figure.
        n_particles (float | None): N, or math.inf for the asymptotic curve.
        particle_list (tuple[int, ...] | None): Qubit numbers of a validation run.
        kappa (np.ndarray | None): Concentration axis.
        mean_n (np.ndarray | None): Mean-excitation axis.
        strategy (str | None): Strategy selector.
        theta0 (np.ndarray | None): Projective axis angles.
        grid_size (int): Estimator grid size.
        n_samples (int | None): Monte Carlo trials per cell.
        seed (int | None): Root seed.
        figure (str | None): Figure id.
        out (Path | None): Output path; standard output when absent.
        fmt (OutputFormat | str): csv, json or parquet.
        workers (int): Worker processes.
        verbose (bool): Log progress at INFO.
        analytic_offset (float): Shift applied to analytic values in reports.
    """

    command: str
    n_particles: float | None = None
    particle_list: tuple[int, ...] | None = None
    kappa: np.ndarray | None = None
    mean_n: np.ndarray | None = None
    strategy: str | None = None
    theta0: np.ndarray | None = None
    grid_size: int = ESTIMATOR_GRID_POINTS
    n_samples: int | None = None
    seed: int | None = None
    figure: str | None = None
    out: Path | None = None
    fmt: OutputFormat | str = OutputFormat.CSV
    workers: int = 1
    verbose: bool = False
    analytic_offset: float = 0.0


def _common_options() -> argparse.ArgumentParser:
    common = CliParser(add_help=False)
    common.add_argument("--config", type=Path, help="JSON file with default flags.")
    common.add_argument("--out", help="Output file. Standard output if omitted.")
    common.add_argument("--format", choices=[f.value for f in OutputFormat])
    common.add_argument("--workers", type=int, help="Worker processes.")
    common.add_argument(
        "--verbose", action="store_true", default=None, help="Log progress."
    )
    return common


def _axis_options(parser: argparse.ArgumentParser) -> None:
    axis = parser.add_mutually_exclusive_group()
    axis.add_argument("--kappa-grid", help="Concentrations, start:stop:count.")
    axis.add_argument("--mean-n-grid", help="Mean excitations, start:stop:count.")


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = CliParser(
        prog="pytelebench",
        description="Entanglement-free teleportation fidelity benchmarks.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    bench = commands.add_parser("bench", parents=[common], help="Fidelity curves.")
    bench.add_argument("--n", help="Number of qubits, or inf.")
    bench.add_argument("--strategy", choices=STRATEGY_CHOICES["bench"])
    angle = bench.add_mutually_exclusive_group()
    angle.add_argument("--theta0", help="Projective axis angle, e.g. pi/4.")
    angle.add_argument("--theta0-grid", help="Projective axis angles.")
    _axis_options(bench)

    estimator = commands.add_parser(
        "estimator", parents=[common], help="Optimal guess angle curves."
    )
    estimator.add_argument("--n", help="Number of qubits.")
    estimator.add_argument("--grid-size", type=int, help="Measured-angle samples.")
    _axis_options(estimator)

    validate = commands.add_parser(
        "validate", parents=[common], help="Monte Carlo validation report."
    )
    validate.add_argument("--n", help="Qubit numbers, comma separated.")
    validate.add_argument("--strategy", choices=STRATEGY_CHOICES["validate"])
    validate_angle = validate.add_mutually_exclusive_group()
    validate_angle.add_argument("--theta0", help="Projective axis angle.")
    validate_angle.add_argument("--theta0-grid", help="Projective axis angles.")
    validate.add_argument("--kappa-grid", help="Concentrations.")
    validate.add_argument("--samples", type=int, help="Trials per cell.")
    validate.add_argument("--seed", type=int, help="Root seed.")
    validate.add_argument(
        "--analytic-offset", type=float, default=0.0, help=argparse.SUPPRESS
    )

    figure = commands.add_parser("figure", parents=[common], help="Figure curves.")
    figure.add_argument("--figure", choices=FIGURE_IDS)
    return parser


def _load_config_file(path: Path | None) -> dict[str, Any]:
    if path is None:
        return {}
    content = load_json(path)
    settings = {}
    for key, value in content.items():
        name = key.lstrip("-").replace("-", "_")
        if name not in CONFIG_KEYS:
            logging.error(f"Unknown key {key!r} in config file {path}.")
            raise DomainError(f"Unknown key {key!r} in config file {path}")
        settings[name] = value
    return settings


def _parse_particles(text: Any) -> float:
    if str(text).strip().lower() == "inf":
        return math.inf
    try:
        value = int(str(text))
    except ValueError as e:
        logging.error(f"Particle number {text!r} is not an integer.")
        raise DomainError(f"--n must be a positive integer or inf: {text!r}") from e
    if value < 1:
        logging.error(f"Particle number must be positive, got {value}.")
        raise DomainError(f"--n must be a positive integer or inf, got {value}")
    return float(value)


def _grid_or_none(text: Any) -> np.ndarray | None:
    return None if text is None else parse_grid(str(text))


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """
    Merge the config file with the command-line flags; flags win.

    Raises:
        DomainError: On conflicting or missing axes and malformed values.
    """
    settings = _load_config_file(getattr(args, "config", None))
    for key in CONFIG_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            settings[key] = value

    command = args.command
    kappa = _grid_or_none(settings.get("kappa_grid"))
    mean_n = _grid_or_none(settings.get("mean_n_grid"))
    if command in ("bench", "estimator") and (kappa is None) == (mean_n is None):
        logging.error("Exactly one of --kappa-grid and --mean-n-grid is required.")
        raise DomainError("Give exactly one of --kappa-grid and --mean-n-grid")

    if "theta0" in settings and "theta0_grid" in settings:
        logging.error("Both --theta0 and --theta0-grid given.")
        raise DomainError("Give at most one of --theta0 and --theta0-grid")
    theta0 = _grid_or_none(settings.get("theta0", settings.get("theta0_grid")))

    n_particles = None
    particle_list = None
    if command == "validate" and "n" in settings:
        values = [_parse_particles(v) for v in str(settings["n"]).split(",") if v]
        if not values or any(math.isinf(v) for v in values):
            logging.error(f"Validation needs finite qubit numbers: {settings['n']}.")
            raise DomainError("validate needs finite, comma-separated --n values")
        particle_list = tuple(int(v) for v in values)
    if command in ("bench", "estimator"):
        n_particles = _parse_particles(settings.get("n", 1))
        if command == "estimator" and math.isinf(n_particles):
            logging.error("Estimator curves need a finite particle number.")
            raise DomainError("estimator needs a finite --n")

    strategy = settings.get("strategy")
    if strategy is not None and strategy not in STRATEGY_CHOICES[command]:
        logging.error(f"Strategy {strategy!r} not available for {command}.")
        raise DomainError(f"Unknown strategy {strategy!r} for {command}")

    out = settings.get("out")
    return RunConfig(
        command=command,
        n_particles=n_particles,
        particle_list=particle_list,
        kappa=kappa,
        mean_n=mean_n,
        strategy=strategy,
        theta0=theta0,
        grid_size=int(settings.get("grid_size", ESTIMATOR_GRID_POINTS)),
        n_samples=settings.get("samples"),
        seed=settings.get("seed"),
        figure=settings.get("figure"),
        out=None if out is None else Path(out),
        fmt=settings.get("format", OutputFormat.CSV.value),
        workers=int(settings.get("workers", 1)),
        verbose=bool(settings.get("verbose", False)),
        analytic_offset=float(getattr(args, "analytic_offset", 0.0) or 0.0),
    )


def emit(frame: pd.DataFrame, config: RunConfig) -> None:
    writer = CurveWriter(config.fmt)
    if config.out is None:
        sys.stdout.write(writer.to_text(frame))
    else:
        writer.write(frame, config.out)


def run_bench(config: RunConfig) -> pd.DataFrame:
    """Fidelity curve rows: n_particles, kappa, mean_n, strategy, theta0, fidelity."""
    frame = get_fidelity_curve(
        config.n_particles,
        config.strategy or "povm",
        mean_n=config.mean_n,
        kappa=config.kappa,
        theta0=config.theta0,
        workers=config.workers,
        verbose=config.verbose,
    )
    emit(frame, config)
    return frame


def run_estimator(config: RunConfig) -> pd.DataFrame:
    frame = get_estimator_curve(
        int(config.n_particles),
        mean_n=config.mean_n,
        kappa=config.kappa,
        grid_size=config.grid_size,
        verbose=config.verbose,
    )
    emit(frame, config)
    return frame


def run_validate(config: RunConfig) -> pd.DataFrame:
    """
    Write the validation report, then fail if any cell has |z| above threshold.

    Raises:
        ValidationFailure: If the report has FAIL rows.
    """
    grid = load_validation_grid()
    if config.kappa is not None:
        grid["kappa"] = config.kappa.tolist()
    if config.strategy is not None:
        grid["strategies"] = [config.strategy]
    if config.theta0 is not None:
        grid["theta0"] = [repr(float(t)) for t in config.theta0]
    if config.particle_list is not None:
        grid["n_particles"] = list(config.particle_list)
    frame = get_validation_report(
        grid,
        n_samples=config.n_samples,
        seed=config.seed,
        analytic_offset=config.analytic_offset,
        workers=config.workers,
        verbose=config.verbose,
    )
    emit(frame, config)
    failures = int((frame["verdict"] == "FAIL").sum())
    if failures:
        logging.error(f"{failures} validation cells failed.")
        raise ValidationFailure(f"{failures} of {len(frame)} validation cells failed")
    return frame


def run_figure(config: RunConfig) -> pd.DataFrame:
    if config.figure is None:
        logging.error("No figure id given.")
        raise DomainError(f"--figure is required, one of {', '.join(FIGURE_IDS)}")
    frame = get_figure(config.figure, workers=config.workers, verbose=config.verbose)
    emit(frame, config)
    return frame


COMMANDS = {
    "bench": run_bench,
    "estimator": run_estimator,
    "validate": run_validate,
    "figure": run_figure,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = resolve_config(args)
        if config.verbose:
            setup_logging()
        COMMANDS[config.command](config)
    except ValidationFailure as e:
        print(f"pytelebench: validation failed: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except NumericalError as e:
        print(f"pytelebench: numerical failure: {e}", file=sys.stderr)
        return EXIT_NUMERIC
    except (DomainError, FileNotFoundError, json.JSONDecodeError) as e:
        print(f"pytelebench: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
