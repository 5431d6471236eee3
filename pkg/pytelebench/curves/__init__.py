"""
DataFrame facade over the benchmarks, the Monte Carlo oracle and the figure builders.

Available functions:
- get_fidelity_curve
- get_estimator_curve
- get_validation_report
- get_figure
"""

from .get_curves import (
    FIGURE_IDS,
    get_estimator_curve,
    get_fidelity_curve,
    get_figure,
    get_validation_report,
)

__all__ = [
    "FIGURE_IDS",
    "get_fidelity_curve",
    "get_estimator_curve",
    "get_validation_report",
    "get_figure",
]

__version__ = "0.1.0"
__author__ = "Gutto França"
__email__ = "guttolaudie@gmail.com"
