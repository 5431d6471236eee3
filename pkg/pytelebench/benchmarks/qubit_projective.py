"""
Single-qubit entanglement-free benchmarks with one projective measurement.

The qubit is measured along an axis at polar angle theta0 in the x-z plane and a
state is guessed from the binary outcome. With L = <cos theta> the mean fidelity is
1/2 + sqrt(A+^2 + B^2) + sqrt(A-^2 + B^2), where

    A+- = (L +- (1 - 2L/kappa) cos theta0) / 4,    B = (L/kappa) sin theta0 / 4.
"""

import logging
import math
from dataclasses import dataclass
from typing import Literal

import numpy as np
from numpy.typing import ArrayLike
from scipy.optimize import bisect

from pytelebench.geometry.bloch import ANGLE_SLACK, BlochDirection
from pytelebench.prior.vmf import (
    FloatOrArray,
    mean_cosine,
    mean_cosine_over_kappa,
    mean_excitation_per_qubit,
)
from pytelebench.utils.exceptions import DomainError

Outcome = Literal["+", "-"]


@dataclass(frozen=True)
class AxisBenchmark:
    """
    Optimal guesses and mean fidelity for projection on an axis at polar angle theta0.

    Guess angles are signed polar angles in the x-z plane of the measurement axis:
    a negative value points to azimuth pi.

    Attributes:
        kappa (float): Prior concentration.
        theta0 (float): Measurement-axis polar angle in [0, pi/2].
        a_plus, a_minus (float): Cosine coefficients A+ and A-.
        b (float): Sine coefficient B.
        guess_plus, guess_minus (float): Optimal guess angles for outcomes + and -.
        fidelity (float): Mean fidelity, in [1/2, 1].

    Methods:
        outcome_probability(outcome) -> float: Prior probability of the outcome.
        guess_direction(outcome) -> BlochDirection: Guessed state for the outcome.
    """

    kappa: float
    theta0: float
    a_plus: float
    a_minus: float
    b: float
    guess_plus: float
    guess_minus: float
    fidelity: float

    def outcome_probability(self, outcome: Outcome) -> float:
        sign = _sign(outcome)
        mc = float(mean_cosine(self.kappa))
        return 0.5 * (1.0 + sign * mc * math.cos(self.theta0))

    def guess_direction(self, outcome: Outcome) -> BlochDirection:
        angle = self.guess_plus if _sign(outcome) > 0 else self.guess_minus
        return BlochDirection.from_vector([math.sin(angle), 0.0, math.cos(angle)])


def _sign(outcome: Outcome) -> int:
    if outcome == "+":
        return 1
    if outcome == "-":
        return -1
    logging.error(f"Unknown measurement outcome {outcome!r}.")
    raise DomainError(f"Outcome must be '+' or '-', got {outcome!r}")


def _guess(a: float, b: float) -> float:
    # Any guess is optimal when both coefficients vanish; pi/2 is the convention.
    if a == 0.0 and b == 0.0:
        return math.pi / 2.0
    return math.atan2(b, a)


def fidelity_do_nothing(kappa: ArrayLike) -> FloatOrArray:
    """Guess the pole without measuring: (1 + coth k - 1/k)/2 = 1 - <n>."""
    return 1.0 - mean_excitation_per_qubit(kappa)


def optimal_guess_equatorial(kappa: ArrayLike) -> FloatOrArray:
    """Guess angle arctan(1/kappa) after the + outcome of an equatorial measurement."""
    value = np.arctan2(1.0, np.asarray(kappa, dtype=float))
    return float(value) if np.ndim(value) == 0 else value


def fidelity_equatorial(kappa: ArrayLike) -> FloatOrArray:
    """(1 + L sqrt(1 + 1/kappa^2)) / 2, via L/kappa so that kappa -> 0 stays finite."""
    k = np.asarray(kappa, dtype=float)
    value = 0.5 * (1.0 + np.asarray(mean_cosine_over_kappa(k)) * np.hypot(k, 1.0))
    return float(value) if np.ndim(value) == 0 else value


def fidelity_no_prior(kappa: ArrayLike) -> FloatOrArray:
    """Measure along the pole and trust the outcome: 1 - (1 - 2<n>)/kappa."""
    return 1.0 - mean_cosine_over_kappa(kappa)


def fidelity_axis(kappa: float, theta0: float) -> AxisBenchmark:
    """
    Optimal guesses and mean fidelity for a measurement axis at polar angle theta0.

    Parameters:
        kappa (float): Prior concentration, > 0.
        theta0 (float): Axis polar angle in [0, pi/2]; reflect larger angles first.

    Returns:
        AxisBenchmark: Coefficients, guesses and fidelity.

    Raises:
        DomainError: If theta0 lies outside [0, pi/2] or kappa is not positive.
    """
    if not -ANGLE_SLACK <= theta0 <= math.pi / 2.0 + ANGLE_SLACK:
        logging.error(f"Axis angle {theta0} outside [0, pi/2].")
        raise DomainError(f"Axis angle must lie in [0, pi/2], got {theta0}")
    theta0 = min(max(theta0, 0.0), math.pi / 2.0)

    mc = float(mean_cosine(kappa))
    mc_over_k = float(mean_cosine_over_kappa(kappa))
    cos0, sin0 = math.cos(theta0), math.sin(theta0)
    if theta0 == math.pi / 2.0:
        cos0 = 0.0

    a_plus = 0.25 * (mc + (1.0 - 2.0 * mc_over_k) * cos0)
    a_minus = 0.25 * (mc - (1.0 - 2.0 * mc_over_k) * cos0)
    b = 0.25 * mc_over_k * sin0
    fidelity = 0.5 + math.hypot(a_plus, b) + math.hypot(a_minus, b)

    return AxisBenchmark(
        kappa=float(kappa),
        theta0=theta0,
        a_plus=a_plus,
        a_minus=a_minus,
        b=b,
        guess_plus=_guess(a_plus, b),
        guess_minus=_guess(a_minus, -b),
        fidelity=fidelity,
    )


def crossover_excitation() -> tuple[float, float]:
    """
    Cusp of the pole-aligned measurement, where do-nothing and no-prior tie.

    Solves <n>(kappa) = 1/(kappa + 2) by bisection.

    Returns:
        tuple: (kappa_c, n_c) with n_c = 1/(kappa_c + 2).
    """

    def gap(k: float) -> float:
        return float(mean_excitation_per_qubit(k)) - 1.0 / (k + 2.0)

    kappa_c = float(bisect(gap, 0.1, 10.0, xtol=1e-14))
    n_c = 1.0 / (kappa_c + 2.0)
    logging.info(f"Crossover at kappa_c = {kappa_c:.10f}, n_c = {n_c:.10f}.")
    return kappa_c, n_c
