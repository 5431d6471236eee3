import logging
import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from pytelebench.utils.exceptions import DomainError

TWO_PI = 2.0 * math.pi
# Polar angles this close outside [0, pi] are rounding noise and get clamped.
ANGLE_SLACK = 1e-12


@dataclass(frozen=True)
class BlochDirection:
    """
    A point (theta, phi) on the unit sphere.

    Carries input states, measurement outcomes and guesses alike. Construction
    normalizes phi into [0, 2*pi) and sets phi = 0 at either pole, so two directions
    compare equal exactly when they name the same point.

    Attributes:
        theta (float): Polar angle in [0, pi], radians.
        phi (float): Azimuthal angle in [0, 2*pi), radians.

    Methods:
        to_vector() -> np.ndarray: Cartesian unit vector.
        from_vector(vector) -> BlochDirection: Direction of a nonzero 3-vector.
        antipode() -> BlochDirection: The diametrically opposite direction.
    """

    theta: float
    phi: float = 0.0

    def __post_init__(self) -> None:
        theta, phi = float(self.theta), float(self.phi)
        if not (math.isfinite(theta) and math.isfinite(phi)):
            logging.error(f"Non-finite Bloch angles ({theta}, {phi}).")
            raise DomainError(f"Bloch angles must be finite, got ({theta}, {phi})")
        if not -ANGLE_SLACK <= theta <= math.pi + ANGLE_SLACK:
            logging.error(f"Polar angle {theta} outside [0, pi].")
            raise DomainError(f"Polar angle must lie in [0, pi], got {theta}")

        theta = min(max(theta, 0.0), math.pi)
        phi = math.fmod(phi, TWO_PI)
        if phi < 0.0:
            phi += TWO_PI
        if phi >= TWO_PI:
            phi = 0.0
        if theta in (0.0, math.pi):
            phi = 0.0
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi)

    def to_vector(self) -> NDArray[np.float64]:
        return unit_vectors(self.theta, self.phi)

    @classmethod
    def from_vector(cls, vector: ArrayLike) -> "BlochDirection":
        x, y, z = np.asarray(vector, dtype=float)
        norm = math.sqrt(x * x + y * y + z * z)
        if norm == 0.0:
            logging.error("Cannot take the direction of the zero vector.")
            raise DomainError("Cannot take the direction of the zero vector")
        theta = math.atan2(math.hypot(x, y), z)
        return cls(theta, math.atan2(y, x))

    def antipode(self) -> "BlochDirection":
        return BlochDirection(math.pi - self.theta, self.phi + math.pi)


def unit_vectors(theta: ArrayLike, phi: ArrayLike) -> NDArray[np.float64]:
    """Cartesian unit vectors, stacked on the last axis, for arrays of angles."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    sin_theta = np.sin(theta)
    return np.stack(
        [sin_theta * np.cos(phi), sin_theta * np.sin(phi), np.cos(theta)], axis=-1
    )


def cos_angle(
    theta_a: ArrayLike, phi_a: ArrayLike, theta_b: ArrayLike, phi_b: ArrayLike
) -> NDArray[np.float64]:
    """cos of the angle between directions, clamped to [-1, 1]. Broadcasts."""
    theta_a, theta_b = np.asarray(theta_a), np.asarray(theta_b)
    value = np.cos(theta_a) * np.cos(theta_b) + np.sin(theta_a) * np.sin(
        theta_b
    ) * np.cos(np.asarray(phi_a) - np.asarray(phi_b))
    return np.clip(value, -1.0, 1.0)


def overlap_from_cos(cos_alpha: ArrayLike, n_particles: int = 1) -> NDArray[np.float64]:
    """
    Spin-coherent overlap cos^(2N)(alpha/2) = ((1 + cos alpha)/2)^N.

    Evaluated as exp(N log((1 + cos alpha)/2)) with an exact 0 for antipodal pairs.
    """
    half = 0.5 * (1.0 + np.asarray(cos_alpha, dtype=float))
    with np.errstate(divide="ignore"):
        powered = np.exp(n_particles * np.log(half))
    return np.where(half > 0.0, powered, 0.0)


def angle_between(a: BlochDirection, b: BlochDirection) -> float:
    """Angle in [0, pi] between two directions."""
    return float(np.arccos(cos_angle(a.theta, a.phi, b.theta, b.phi)))


def qubit_overlap_sq(a: BlochDirection, b: BlochDirection) -> float:
    """Squared overlap cos^2(alpha/2) of the two pure qubit states."""
    return float(0.5 * (1.0 + cos_angle(a.theta, a.phi, b.theta, b.phi)))


def spin_overlap_sq(a: BlochDirection, b: BlochDirection, n_particles: int) -> float:
    """Squared overlap cos^(2N)(alpha/2) of the two N-qubit spin-coherent states."""
    if n_particles < 1:
        logging.error(f"Particle number must be positive, got {n_particles}.")
        raise DomainError(f"Particle number must be positive, got {n_particles}")
    cos_alpha = cos_angle(a.theta, a.phi, b.theta, b.phi)
    return float(overlap_from_cos(cos_alpha, n_particles))
