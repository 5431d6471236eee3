"""
The von Mises–Fisher prior: density, normalization, mean excitation, the
kappa <-> <n> inversion and exact sampling.

Available classes:
- VmfPrior: Immutable prior with concentration kappa.

Available functions:
- density
- mean_cosine
- mean_cosine_over_kappa
- mean_excitation_per_qubit
- mean_excitation
- kappa_from_mean_n
- sample_direction
- sample_directions
- sample_cosines
"""

from .vmf import (
    VmfPrior,
    density,
    kappa_from_mean_n,
    mean_cosine,
    mean_cosine_over_kappa,
    mean_excitation,
    mean_excitation_per_qubit,
    sample_cosines,
    sample_direction,
    sample_directions,
)

__all__ = [
    "VmfPrior",
    "density",
    "mean_cosine",
    "mean_cosine_over_kappa",
    "mean_excitation_per_qubit",
    "mean_excitation",
    "kappa_from_mean_n",
    "sample_direction",
    "sample_directions",
    "sample_cosines",
]

__version__ = "0.1.0"
__author__ = "Gutto França"
__email__ = "guttolaudie@gmail.com"
