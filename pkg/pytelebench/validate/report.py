"""
Validation report: analytic benchmarks against the Monte Carlo oracle, cell by cell.
"""

import logging
import math
from dataclasses import dataclass
from typing import Any

import pandas as pd

from pytelebench.benchmarks.nqubit_povm import (
    fidelity_do_nothing_nq,
    identity_estimator_fidelity,
    mean_fidelity_nq,
)
from pytelebench.benchmarks.qubit_povm import mean_fidelity_1q
from pytelebench.benchmarks.qubit_projective import fidelity_axis
from pytelebench.prior.vmf import mean_excitation
from pytelebench.schemas.curve_schema import ValidationReportSchema
from pytelebench.utils.config import Z_THRESHOLD
from pytelebench.utils.grids import parse_value
from pytelebench.validate.mc_oracle import StrategyKind, StrategySpec, simulate


@dataclass(frozen=True)
class ValidationCell:
    n_particles: int
    kappa: float
    strategy: StrategySpec


def validation_cells(grid: dict[str, Any]) -> list[ValidationCell]:
    """
    Expand a validation grid into cells in a fixed order.

    The projective strategy is defined for one qubit only and gets one cell per axis
    angle in ``grid["theta0"]``; the other strategies get one cell per (N, kappa).
    """
    axes = [parse_value(str(t)) for t in grid.get("theta0", ["pi/2"])]
    cells = []
    for n in grid["n_particles"]:
        for kappa in grid["kappa"]:
            for name in grid["strategies"]:
                kind = StrategyKind(name)
                if kind is StrategyKind.PROJECTIVE_AXIS:
                    if n != 1:
                        continue
                    specs = [StrategySpec.projective_axis(t) for t in axes]
                elif kind is StrategyKind.COHERENT_POVM:
                    specs = [StrategySpec.coherent_povm()]
                else:
                    specs = [StrategySpec.do_nothing()]
                cells.extend(ValidationCell(int(n), float(kappa), s) for s in specs)
    return cells


def analytic_value(cell: ValidationCell) -> float:
    """The analytic mean fidelity the oracle is compared against."""
    strategy, n, kappa = cell.strategy, cell.n_particles, cell.kappa
    if strategy.kind is StrategyKind.DO_NOTHING:
        return fidelity_do_nothing_nq(n, kappa)
    if strategy.kind is StrategyKind.PROJECTIVE_AXIS:
        return fidelity_axis(kappa, strategy.axis_theta0).fidelity
    if strategy.identity_estimator:
        return identity_estimator_fidelity(n, kappa)
    if n == 1:
        return mean_fidelity_1q(kappa)
    return mean_fidelity_nq(n, kappa)


def build_report(
    cells: list[ValidationCell],
    n_samples: int,
    seed: int,
    analytic_offset: float = 0.0,
    workers: int = 1,
    z_threshold: float = Z_THRESHOLD,
) -> pd.DataFrame:
    """
    Run every cell and tabulate analytic value, oracle estimate and verdict.

    Parameters:
        cells (list[ValidationCell]): Cells in report order.
        n_samples (int): Monte Carlo trials per cell.
        seed (int): Root seed shared by every cell.
        analytic_offset (float): Added to each analytic value; a nonzero offset makes
        the report fail on purpose.
        workers (int): Processes per simulation.
        z_threshold (float): Largest |z| that still passes.

    Returns:
        pd.DataFrame: One validated row per cell.
    """
    rows = []
    for cell in cells:
        analytic = analytic_value(cell) + analytic_offset
        estimate = simulate(
            cell.n_particles, cell.kappa, cell.strategy, n_samples, seed, workers
        )
        z = estimate.z_score(analytic)
        rows.append(
            {
                "n_particles": cell.n_particles,
                "kappa": cell.kappa,
                "mean_n": mean_excitation(cell.kappa, cell.n_particles),
                "strategy": cell.strategy.kind.value,
                "theta0": (
                    math.nan
                    if cell.strategy.axis_theta0 is None
                    else cell.strategy.axis_theta0
                ),
                "analytic": analytic,
                "mc_mean": estimate.mean_fidelity,
                "mc_std_error": estimate.std_error,
                "n_samples": estimate.n_samples,
                "seed": estimate.seed,
                "z_score": z,
                "verdict": "PASS" if abs(z) <= z_threshold else "FAIL",
            }
        )

    report = ValidationReportSchema.validate(pd.DataFrame(rows))
    failures = int((report["verdict"] == "FAIL").sum())
    logging.info(f"Validation report: {len(report)} cells, {failures} failing.")
    return report


def failed_cells(report: pd.DataFrame) -> pd.DataFrame:
    return report[report["verdict"] == "FAIL"]
