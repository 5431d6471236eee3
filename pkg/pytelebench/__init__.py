"""
This module initializes the pytelebench package and exposes the DataFrame facade for
entanglement-free teleportation fidelity benchmarks under a von Mises–Fisher prior.

Available functions:
- get_fidelity_curve
- get_estimator_curve
- get_validation_report
- get_figure
"""

from .curves import (
    get_estimator_curve,
    get_fidelity_curve,
    get_figure,
    get_validation_report,
)

__all__ = [
    "get_fidelity_curve",
    "get_estimator_curve",
    "get_validation_report",
    "get_figure",
]

__version__ = "0.1.0"
__author__ = "Gutto França"
__email__ = "guttolaudie@gmail.com"
