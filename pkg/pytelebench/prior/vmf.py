"""
The von Mises–Fisher prior on the Bloch sphere, peaked at the north pole.

Every closed form downstream is written in terms of the mean cosine
L(kappa) = <cos theta> = coth(kappa) - 1/kappa = 1 - 2<n>, so the series-stable
helpers here are the single place where small-kappa cancellation is handled.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.optimize import brentq

from pytelebench.geometry.bloch import BlochDirection
from pytelebench.utils.config import SERIES_THRESHOLD
from pytelebench.utils.exceptions import DomainError

FloatOrArray = float | NDArray[np.float64]


def _output(value: NDArray[np.float64]) -> FloatOrArray:
    return float(value) if np.ndim(value) == 0 else value


def check_kappa(kappa: ArrayLike) -> NDArray[np.float64]:
    k = np.asarray(kappa, dtype=float)
    if not np.all(np.isfinite(k)) or np.any(k <= 0.0):
        logging.error(f"Concentration must be finite and positive, got {kappa}.")
        raise DomainError(f"Concentration must be finite and positive, got {kappa}")
    return k


def mean_cosine(kappa: ArrayLike) -> FloatOrArray:
    """
    Prior mean of cos(theta), coth(kappa) - 1/kappa.

    Uses kappa/3 - kappa^3/45 + 2 kappa^5/945 below the series threshold.
    """
    k = check_kappa(kappa)
    small = k < SERIES_THRESHOLD
    safe = np.where(small, 1.0, k)
    direct = 1.0 / np.tanh(safe) - 1.0 / safe
    k2 = k * k
    series = k * (1.0 / 3.0 - k2 / 45.0 + 2.0 * k2 * k2 / 945.0)
    return _output(np.where(small, series, direct))


def mean_cosine_over_kappa(kappa: ArrayLike) -> FloatOrArray:
    """(coth(kappa) - 1/kappa) / kappa, finite as kappa -> 0 where it tends to 1/3."""
    k = check_kappa(kappa)
    small = k < SERIES_THRESHOLD
    safe = np.where(small, 1.0, k)
    direct = (1.0 / np.tanh(safe) - 1.0 / safe) / safe
    k2 = k * k
    series = 1.0 / 3.0 - k2 / 45.0 + 2.0 * k2 * k2 / 945.0
    return _output(np.where(small, series, direct))


def mean_excitation_per_qubit(kappa: ArrayLike) -> FloatOrArray:
    """Mean excitation (1 - coth(kappa) + 1/kappa)/2 of one qubit, in [0, 1/2)."""
    return _output(0.5 * (1.0 - np.asarray(mean_cosine(kappa))))


def mean_excitation(kappa: ArrayLike, n_particles: int = 1) -> FloatOrArray:
    """Total mean excitation of N qubits sharing one spin-coherent direction."""
    return _output(n_particles * np.asarray(mean_excitation_per_qubit(kappa)))


def kappa_from_mean_n(n: float, n_particles: int = 1) -> float:
    """
    Invert the mean-excitation formula.

    Parameters:
        n (float): Total mean excitation, 0 < n < N/2.
        n_particles (int): Number of qubits N.

    Returns:
        float: kappa with N * mean_excitation_per_qubit(kappa) = n.

    Raises:
        DomainError: If n lies outside (0, N/2), where no kappa > 0 reproduces it.
    """
    if n_particles < 1:
        logging.error(f"Particle number must be positive, got {n_particles}.")
        raise DomainError(f"Particle number must be positive, got {n_particles}")
    if not 0.0 < n < 0.5 * n_particles:
        logging.error(f"Mean excitation {n} outside (0, {0.5 * n_particles}).")
        raise DomainError(
            f"Mean excitation must lie in (0, {0.5 * n_particles}), got {n}"
        )

    target = 1.0 - 2.0 * n / n_particles
    # kappa/3 >= L(kappa) >= 1 - 1/kappa brackets the root.
    lo, hi = 1.5 * target, 2.0 / (1.0 - target)

    def residual(k: float) -> float:
        return float(mean_cosine(k)) - target

    kappa = float(brentq(residual, lo, hi, xtol=1e-300, rtol=4 * np.finfo(float).eps))
    logging.info(f"Converted <n> = {n} for N = {n_particles} into kappa = {kappa}.")
    return kappa


@dataclass(frozen=True)
class VmfPrior:
    """
    Von Mises–Fisher prior xi * exp(kappa cos(theta)) per steradian.

    Attributes:
        kappa (float): Concentration, > 0. Values down to 1e-8 stand in for the uniform
        prior.

    Methods:
        xi -> float: Normalization constant kappa / (4 pi sinh kappa).
        density(theta) -> float | np.ndarray: Prior density per steradian.
        marginal_cos(c) -> float | np.ndarray: Density of cos(theta) on [-1, 1].
    """

    kappa: float

    def __post_init__(self) -> None:
        check_kappa(self.kappa)
        object.__setattr__(self, "kappa", float(self.kappa))

    @property
    def xi(self) -> float:
        k = self.kappa
        return k * math.exp(-k) / (2.0 * math.pi * -math.expm1(-2.0 * k))

    def density(self, theta: ArrayLike) -> FloatOrArray:
        k = self.kappa
        scale = k / (2.0 * math.pi * -math.expm1(-2.0 * k))
        return _output(scale * np.exp(k * (np.cos(np.asarray(theta)) - 1.0)))

    def marginal_cos(self, c: ArrayLike) -> FloatOrArray:
        k = self.kappa
        return _output(k * np.exp(k * (np.asarray(c) - 1.0)) / -math.expm1(-2.0 * k))

    @property
    def mean_cosine(self) -> float:
        return float(mean_cosine(self.kappa))

    @property
    def mean_excitation_per_qubit(self) -> float:
        return float(mean_excitation_per_qubit(self.kappa))


def density(prior: VmfPrior, theta: ArrayLike) -> FloatOrArray:
    """Prior density per steradian at polar angle theta; independent of phi."""
    return prior.density(theta)


def sample_cosines(
    prior: VmfPrior, rng: np.random.Generator, size: int
) -> NDArray[np.float64]:
    """
    Exact inverse-CDF draws of cos(theta).

    cos(theta) = 1 + log1p(expm1(-2 kappa)(1 - u)) / kappa, the rearranged form of
    log(exp(-kappa) + 2 u sinh(kappa)) / kappa that survives both kappa limits.
    """
    u = rng.random(size)
    k = prior.kappa
    c = 1.0 + np.log1p(math.expm1(-2.0 * k) * (1.0 - u)) / k
    return np.clip(c, -1.0, 1.0)


def sample_directions(
    prior: VmfPrior, rng: np.random.Generator, size: int
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Vectorised prior draws; returns arrays (theta, phi)."""
    theta = np.arccos(sample_cosines(prior, rng, size))
    phi = rng.random(size) * (2.0 * math.pi)
    return theta, phi


def sample_direction(prior: VmfPrior, rng: np.random.Generator) -> BlochDirection:
    """One prior draw. Mutates only the caller's generator."""
    theta, phi = sample_directions(prior, rng, 1)
    return BlochDirection(float(theta[0]), float(phi[0]))
