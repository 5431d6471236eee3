"""
Monte Carlo oracle and validation reports for the analytic benchmarks.

Available classes:
- StrategyKind: Do nothing, projective axis or coherent-spin POVM.
- StrategySpec: A strategy with its axis angle or estimator choice.
- McEstimate: Mean fidelity, standard error, sample count and seed.
- ValidationCell: One (N, kappa, strategy) cell of a validation grid.

Available functions:
- simulate
- povm_sample
- combine_moments
- validation_cells
- analytic_value
- build_report
- failed_cells
"""

from .mc_oracle import (
    McEstimate,
    StrategyKind,
    StrategySpec,
    combine_moments,
    povm_sample,
    simulate,
)
from .report import (
    ValidationCell,
    analytic_value,
    build_report,
    failed_cells,
    validation_cells,
)

__all__ = [
    "StrategyKind",
    "StrategySpec",
    "McEstimate",
    "ValidationCell",
    "simulate",
    "povm_sample",
    "combine_moments",
    "validation_cells",
    "analytic_value",
    "build_report",
    "failed_cells",
]

__version__ = "0.1.0"
__author__ = "Gutto França"
__email__ = "guttolaudie@gmail.com"
