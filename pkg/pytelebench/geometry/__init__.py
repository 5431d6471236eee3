"""
Geometry of pure qubit and spin-coherent states on the Bloch sphere.

Available classes:
- BlochDirection: A normalized point (theta, phi) on the unit sphere.

Available functions:
- angle_between
- qubit_overlap_sq
- spin_overlap_sq
- cos_angle
- overlap_from_cos
- unit_vectors
"""

from .bloch import (
    BlochDirection,
    angle_between,
    cos_angle,
    overlap_from_cos,
    qubit_overlap_sq,
    spin_overlap_sq,
    unit_vectors,
)

__all__ = [
    "BlochDirection",
    "angle_between",
    "qubit_overlap_sq",
    "spin_overlap_sq",
    "cos_angle",
    "overlap_from_cos",
    "unit_vectors",
]

__version__ = "0.1.0"
__author__ = "Gutto França"
__email__ = "guttolaudie@gmail.com"
