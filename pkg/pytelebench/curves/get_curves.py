import logging
import math
from collections.abc import Callable, Sequence
from typing import Any

import numpy as np
import pandas as pd

from pytelebench.benchmarks.nqubit_povm import (
    Strategy,
    estimator_curve,
    fidelity_curve,
)
from pytelebench.benchmarks.qubit_povm import (
    EstimatorVariant,
    estimator_turning_point,
    mean_fidelity_1q,
    optimal_estimator_1q,
)
from pytelebench.benchmarks.qubit_projective import (
    fidelity_axis,
    fidelity_do_nothing,
    fidelity_equatorial,
    fidelity_no_prior,
)
from pytelebench.prior.vmf import kappa_from_mean_n, mean_excitation
from pytelebench.schemas.curve_schema import (
    ComparisonFigureSchema,
    EstimatorFigureSchema,
    ParticleEstimatorFigureSchema,
    ParticleFigureSchema,
    ProjectiveFigureSchema,
)
from pytelebench.utils.config import ESTIMATOR_GRID_POINTS
from pytelebench.utils.data_loader import load_figures, load_validation_grid
from pytelebench.utils.exceptions import DomainError
from pytelebench.utils.grids import parse_grid
from pytelebench.utils.logger import silenced
from pytelebench.validate.report import build_report, validation_cells

FIGURE_IDS = ("fig1", "fig2", "fig3", "fig4", "figB1")


def _kappa_axis(
    n_particles: int,
    kappa: Sequence[float] | None,
    mean_n: Sequence[float] | None,
) -> np.ndarray:
    if (kappa is None) == (mean_n is None):
        logging.error("Exactly one of kappa and mean_n is required.")
        raise DomainError("Give exactly one of kappa and mean_n")
    if kappa is not None:
        return np.asarray(kappa, dtype=float)
    return np.array([kappa_from_mean_n(float(v), n_particles) for v in mean_n])


def get_fidelity_curve(
    n_particles: float,
    strategy: Strategy | str = Strategy.POVM,
    mean_n: Sequence[float] | None = None,
    kappa: Sequence[float] | None = None,
    theta0: Sequence[float] | None = None,
    workers: int = 1,
    verbose: bool = False,
) -> pd.DataFrame:
    """
    Benchmark fidelity of one strategy along a line of priors.

    Parameters:
    n_particles (float): Number of qubits, or math.inf for the asymptotic curve.
    strategy (Strategy | str): "do-nothing", "projective", "povm" or "no-prior".
    mean_n (Sequence[float] | None): Total mean excitations, each in (0, N/2).
    kappa (Sequence[float] | None): Concentrations; give exactly one of the two axes.
    theta0 (Sequence[float] | None): Axis angles for the projective strategy; one block
    of rows per angle, in order. Defaults to the equator.
    workers (int, optional): Processes used across points. Defaults to 1.
    verbose (bool, optional): If True, enables logging. Defaults to False.

    Returns:
    pd.DataFrame: Columns n_particles, kappa, mean_n, strategy, theta0, fidelity.

    Example:
        df = get_fidelity_curve(1, "projective", mean_n=[0.1, 0.2], theta0=[0.0])
    """
    with silenced(verbose):
        if math.isinf(n_particles):
            curve = fidelity_curve(math.inf, Strategy.ASYMPTOTIC, mean_n_values=mean_n)
            return curve.to_frame()

        axes: list[float | None] = [None]
        if Strategy(strategy) is Strategy.PROJECTIVE and theta0 is not None:
            axes = [float(t) for t in theta0]
        frames = [
            fidelity_curve(
                n_particles,
                strategy,
                mean_n_values=mean_n,
                kappa_values=kappa,
                theta0=axis,
                workers=workers,
            ).to_frame()
            for axis in axes
        ]
    return pd.concat(frames, ignore_index=True)


def get_estimator_curve(
    n_particles: int,
    mean_n: Sequence[float] | None = None,
    kappa: Sequence[float] | None = None,
    grid_size: int = ESTIMATOR_GRID_POINTS,
    verbose: bool = False,
) -> pd.DataFrame:
    """
    Optimal guess angle against measured angle, one block of rows per prior.

    Returns:
    pd.DataFrame: Columns n_particles, kappa, mean_n, theta_m, theta_tilde,
    small_angle_gain.

    Example:
        df = get_estimator_curve(1, kappa=[1.0], grid_size=9)
    """
    with silenced(verbose):
        kappas = _kappa_axis(n_particles, kappa, mean_n)
        frames = [
            estimator_curve(n_particles, float(k), grid_size).to_frame() for k in kappas
        ]
    return pd.concat(frames, ignore_index=True)


def get_validation_report(
    grid: dict[str, Any] | None = None,
    n_samples: int | None = None,
    seed: int | None = None,
    analytic_offset: float = 0.0,
    workers: int = 1,
    verbose: bool = False,
) -> pd.DataFrame:
    """
    Compare every analytic benchmark with the Monte Carlo oracle.

    The grid, sample count and seed default to the bundled validation grid.

    Returns:
    pd.DataFrame: One row per cell with analytic, mc_mean, mc_std_error, z_score and
    verdict.
    """
    with silenced(verbose):
        grid = load_validation_grid() if grid is None else grid
        samples = int(grid["n_samples"]) if n_samples is None else n_samples
        root_seed = int(grid["seed"]) if seed is None else seed
        return build_report(
            validation_cells(grid),
            samples,
            root_seed,
            analytic_offset=analytic_offset,
            workers=workers,
        )


def _grid(value: str | Sequence[float]) -> np.ndarray:
    if isinstance(value, str):
        return parse_grid(value)
    return np.asarray(value, dtype=float)


def projective_figure(conf: dict[str, Any], workers: int = 1) -> pd.DataFrame:
    """Projective axes from the pole to the equator with the reference curves."""
    mean_n = _grid(conf["mean_n"])
    kappa = np.array([kappa_from_mean_n(float(v)) for v in mean_n])
    frames = []
    for theta0 in _grid(conf["theta0"]):
        fidelity = [fidelity_axis(float(k), float(theta0)).fidelity for k in kappa]
        frames.append(
            pd.DataFrame(
                {"curve": "projective", "theta0": theta0, "fidelity": fidelity}
            ).assign(kappa=kappa, mean_n=mean_n)
        )
    references = {
        "do_nothing": np.asarray(fidelity_do_nothing(kappa)),
        "no_prior": np.asarray(fidelity_no_prior(kappa)),
        "uniform": np.full(len(kappa), 2.0 / 3.0),
    }
    for name, fidelity in references.items():
        frames.append(
            pd.DataFrame(
                {"curve": name, "theta0": np.nan, "fidelity": fidelity}
            ).assign(kappa=kappa, mean_n=mean_n)
        )
    frame = pd.concat(frames, ignore_index=True)
    columns = ["curve", "theta0", "kappa", "mean_n", "fidelity"]
    return ProjectiveFigureSchema.validate(frame[columns])


def _estimator_rows(
    label: str, kappa: float, grid_size: int, variant: EstimatorVariant
) -> pd.DataFrame:
    theta_m = np.linspace(0.0, math.pi, grid_size)
    return pd.DataFrame(
        {
            "curve": label,
            "kappa": kappa,
            "mean_n": mean_excitation(kappa),
            "theta_m": theta_m,
            "theta_tilde": optimal_estimator_1q(kappa, theta_m, variant),
        }
    )


def estimator_figure(conf: dict[str, Any], workers: int = 1) -> pd.DataFrame:
    """One-qubit guess curves, plus the curve at each estimator's turning point."""
    grid_size = int(conf.get("grid_size", ESTIMATOR_GRID_POINTS))
    posterior = EstimatorVariant.POSTERIOR
    frames = [
        _estimator_rows("posterior", kappa_from_mean_n(float(n)), grid_size, posterior)
        for n in _grid(conf["mean_n"])
    ]
    if conf.get("turning_point", True):
        for variant in EstimatorVariant:
            kappa0, _ = estimator_turning_point(variant)
            frames.append(
                _estimator_rows(
                    f"turning_point_{variant.value}", kappa0, grid_size, variant
                )
            )
    return EstimatorFigureSchema.validate(pd.concat(frames, ignore_index=True))


def comparison_figure(conf: dict[str, Any], workers: int = 1) -> pd.DataFrame:
    """POVM against the equatorial projective benchmark, with the inset difference."""
    mean_n = _grid(conf["mean_n"])
    kappa = np.array([kappa_from_mean_n(float(v)) for v in mean_n])
    povm = np.array([mean_fidelity_1q(float(k)) for k in kappa])
    projective = np.asarray(fidelity_equatorial(kappa))
    frame = pd.DataFrame(
        {
            "kappa": kappa,
            "mean_n": mean_n,
            "povm": povm,
            "projective": projective,
            "do_nothing": np.asarray(fidelity_do_nothing(kappa)),
            "uniform": np.full(len(kappa), 2.0 / 3.0),
            "difference": projective - povm,
        }
    )
    return ComparisonFigureSchema.validate(frame)


def particle_figure(conf: dict[str, Any], workers: int = 1) -> pd.DataFrame:
    """POVM benchmarks for several qubit numbers, then the N -> infinity curve."""
    fractions = _grid(conf["mean_n_fraction"])
    frames = []
    for n in conf["n_particles"]:
        curve = fidelity_curve(
            int(n), Strategy.POVM, mean_n_values=0.5 * n * fractions, workers=workers
        )
        frames.append(curve.to_frame().assign(curve="povm"))
    asymptotic = fidelity_curve(
        math.inf, Strategy.ASYMPTOTIC, mean_n_values=_grid(conf["asymptotic_mean_n"])
    )
    frames.append(asymptotic.to_frame().assign(curve="asymptotic"))
    frame = pd.concat(frames, ignore_index=True)
    columns = ["curve", "n_particles", "kappa", "mean_n", "fidelity"]
    return ParticleFigureSchema.validate(frame[columns])


def particle_estimator_figure(conf: dict[str, Any], workers: int = 1) -> pd.DataFrame:
    """Guess curves for several qubit numbers at fixed mean excitation per qubit."""
    grid_size = int(conf.get("grid_size", ESTIMATOR_GRID_POINTS))
    frames = []
    for n in conf["n_particles"]:
        for per_qubit in _grid(conf["mean_n_per_qubit"]):
            kappa = kappa_from_mean_n(float(per_qubit) * n, int(n))
            table = estimator_curve(int(n), kappa, grid_size).to_frame()
            table = table.drop(columns="small_angle_gain")
            frames.append(table.assign(curve="posterior"))
    frame = pd.concat(frames, ignore_index=True)
    columns = ["curve", "kappa", "mean_n", "theta_m", "theta_tilde", "n_particles"]
    return ParticleEstimatorFigureSchema.validate(frame[columns])


FIGURE_BUILDERS: dict[str, Callable[[dict[str, Any], int], pd.DataFrame]] = {
    "fig1": projective_figure,
    "fig2": estimator_figure,
    "fig3": comparison_figure,
    "fig4": particle_figure,
    "figB1": particle_estimator_figure,
}


def get_figure(
    figure_id: str,
    figures: dict[str, Any] | None = None,
    workers: int = 1,
    verbose: bool = False,
) -> pd.DataFrame:
    """
    Curve families of one reproducible figure.

    Parameters:
    figure_id (str): One of fig1, fig2, fig3, fig4, figB1.
    figures (dict | None): Figure definitions; defaults to the bundled figures.json.
    workers (int, optional): Processes used across points. Defaults to 1.
    verbose (bool, optional): If True, enables logging. Defaults to False.

    Raises:
    DomainError: If the figure id is unknown.

    Example:
        df = get_figure("fig3")
    """
    if figure_id not in FIGURE_BUILDERS:
        logging.error(f"Unknown figure id {figure_id!r}.")
        raise DomainError(
            f"Figure id must be one of {', '.join(FIGURE_IDS)}, got {figure_id!r}"
        )
    with silenced(verbose):
        figures = load_figures() if figures is None else figures
        frame = FIGURE_BUILDERS[figure_id](figures[figure_id], workers)
        logging.info(f"Built {figure_id} with {len(frame)} rows.")
    return frame
