"""
Single-qubit coherent-spin POVM benchmark.

The measurement returns a direction M with density (1 + r.M)/(4 pi) given the state
r. Writing L = coth k - 1/k and x = cos(theta_M), the posterior mean of r is
proportional to (sin theta_M L/k, 0, L + (1 - 2L/k) x), so a guess at polar angle
t (same azimuth as M) scores

    F(t) = 1/2 + (L/k)(sin t sin theta_M + cos t (k + b x)) / (2 (1 + L x)),

with b = k/L - 2 for the posterior-optimal estimator. The cubic variant
uses b = k^3/(k cosh k - sinh k) - 2 instead; both agree at theta_M = pi/2.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.optimize import bisect

from pytelebench.prior.vmf import (
    FloatOrArray,
    check_kappa,
    mean_cosine,
    mean_cosine_over_kappa,
    mean_excitation_per_qubit,
)
from pytelebench.utils.config import (
    CLOSED_FORM_MIN_KAPPA,
    QUBIT_QUADRATURE_TOL,
    RADICAND_TOLERANCE,
)
from pytelebench.utils.exceptions import NumericalError
from pytelebench.utils.quadrature import adaptive_gauss_legendre


class EstimatorVariant(str, Enum):
    """Denominator slope used in tan(theta~) = sin(theta_M) / (k + b cos(theta_M))."""

    POSTERIOR = "posterior"
    CUBIC = "cubic"


@dataclass(frozen=True)
class PovmClosedForm:
    """
    Coefficients and value of the closed-form mean fidelity of the POVM scheme.

    Attributes:
        kappa (float): Prior concentration.
        script_a (float): Coefficient A = 1 - k^2 L^2 / R, R = (3L - k)(L - k).
        script_b_plus, script_b_minus (float): B+- = k(k - 2L)/sqrt(R) +- sqrt(R)/L.
        script_c_plus, script_c_minus (float): C+- = sqrt(A + B+-^2).
        fidelity (float): Mean fidelity.
        method (str): "closed" when the printed formula produced the value,
        "quadrature" when small kappa sent it through the numerical average; the
        coefficients are nan in that case.
    """

    kappa: float
    script_a: float
    script_b_plus: float
    script_b_minus: float
    script_c_plus: float
    script_c_minus: float
    fidelity: float
    method: str = "closed"


def _kappa_over_mean_cosine(k: NDArray[np.float64]) -> NDArray[np.float64]:
    return 1.0 / np.asarray(mean_cosine_over_kappa(k))


def estimator_slope(kappa: ArrayLike, variant: EstimatorVariant) -> FloatOrArray:
    """
    The coefficient b multiplying cos(theta_M) in the estimator denominator.

    POSTERIOR: k/L - 2 = k^2 sinh k / (k cosh k - sinh k) - 2.
    CUBIC: k^3 / (k cosh k - sinh k) - 2 = (k / sinh k)(k/L) - 2.
    """
    k = check_kappa(kappa)
    ratio = _kappa_over_mean_cosine(k)
    if EstimatorVariant(variant) is EstimatorVariant.CUBIC:
        with np.errstate(over="ignore"):
            ratio = ratio * (k / np.sinh(k))
    value = ratio - 2.0
    return float(value) if np.ndim(value) == 0 else value


def evidence_1q(kappa: ArrayLike, theta_m: ArrayLike) -> FloatOrArray:
    """Marginal outcome density [1 + (1 - 2<n>) cos theta_M] / (4 pi)."""
    value = (1.0 + np.asarray(mean_cosine(kappa)) * np.cos(theta_m)) / (4.0 * math.pi)
    return float(value) if np.ndim(value) == 0 else value


def optimal_estimator_1q(
    kappa: ArrayLike,
    theta_m: ArrayLike,
    variant: EstimatorVariant = EstimatorVariant.POSTERIOR,
) -> FloatOrArray:
    """
    Guess angle theta~ in [0, pi] for measured polar angle theta_M.

    atan2 keeps the branch continuous through the pole of the tangent formula.
    """
    b = np.asarray(estimator_slope(kappa, variant))
    theta_m = np.asarray(theta_m, dtype=float)
    value = np.arctan2(np.sin(theta_m), np.asarray(kappa) + b * np.cos(theta_m))
    return float(value) if np.ndim(value) == 0 else value


def small_angle_gain_1q(
    kappa: float, variant: EstimatorVariant = EstimatorVariant.POSTERIOR
) -> float:
    """Slope d theta~ / d theta_M at theta_M = 0, which is 1/(k + b)."""
    return 1.0 / (kappa + float(estimator_slope(kappa, variant)))


def _weighted_fidelity(
    kappa: float, cos_m: NDArray[np.float64], theta_tilde: ArrayLike | None
) -> NDArray[np.float64]:
    # F(theta_M) * (1 + L x) / 2, free of the evidence denominator.
    mc = float(mean_cosine(kappa))
    mc_over_k = float(mean_cosine_over_kappa(kappa))
    sin_m = np.sqrt(np.clip(1.0 - cos_m * cos_m, 0.0, None))
    b = float(estimator_slope(kappa, EstimatorVariant.POSTERIOR))
    along = kappa + b * cos_m
    if theta_tilde is None:
        projection = np.hypot(along, sin_m)
    else:
        t = np.asarray(theta_tilde, dtype=float)
        projection = np.sin(t) * sin_m + np.cos(t) * along
    return 0.25 * (1.0 + mc * cos_m) + 0.25 * mc_over_k * projection


def conditional_fidelity_1q(
    kappa: float, theta_m: ArrayLike, theta_tilde: ArrayLike | None = None
) -> FloatOrArray:
    """
    Posterior mean fidelity given the measured polar angle theta_M.

    Parameters:
        kappa (float): Prior concentration.
        theta_m (float | np.ndarray): Measured polar angle(s) in [0, pi].
        theta_tilde (float | np.ndarray | None): Guess angle(s). None uses the
        posterior-optimal guess, giving {1 + (L/k)(k cos theta_M + sqrt D)} /
        {2 [1 + L cos theta_M]}.

    Returns:
        float | np.ndarray: Conditional fidelity, at least 1/2 for the optimal guess.
    """
    check_kappa(kappa)
    cos_m = np.cos(np.asarray(theta_m, dtype=float))
    half_evidence = 0.5 * (1.0 + float(mean_cosine(kappa)) * cos_m)
    value = _weighted_fidelity(kappa, cos_m, theta_tilde) / half_evidence
    return float(value) if np.ndim(value) == 0 else value


def mean_fidelity_1q_quadrature(
    kappa: float, variant: EstimatorVariant | None = None
) -> float:
    """
    Average the conditional fidelity over the evidence by adaptive Gauss–Legendre.

    Integrates over x = cos(theta_M) on [-1, 1] to absolute tolerance 1e-10.
    ``variant`` None (or POSTERIOR) scores the optimal guess; CUBIC scores the
    cubic-slope estimator instead.

    Raises:
        QuadratureError: If the adaptive rule fails to converge.
    """
    check_kappa(kappa)
    kappa = float(kappa)

    def integrand(x: NDArray[np.float64]) -> NDArray[np.float64]:
        if variant is None or EstimatorVariant(variant) is EstimatorVariant.POSTERIOR:
            return _weighted_fidelity(kappa, x, None)
        guess = optimal_estimator_1q(kappa, np.arccos(x), variant)
        return _weighted_fidelity(kappa, x, guess)

    value, error = adaptive_gauss_legendre(
        integrand, -1.0, 1.0, atol=QUBIT_QUADRATURE_TOL
    )
    logging.info(f"POVM quadrature at kappa = {kappa}: {value} (error {error:.1e}).")
    return float(value)


def mean_fidelity_1q_closed(kappa: float) -> PovmClosedForm:
    """
    Closed-form mean fidelity of the single-qubit POVM scheme.

    Evaluates

        1/2 + L^2 / (16 k sqrt(R)) [2 (B+ C+ - B- C-)
              + A ln((C+ + B+)(C- - B-) / ((C+ - B+)(C- + B-)))]

    with L = 1 - 2<n> and R = (3L - k)(L - k), the product of two negative factors.
    Below kappa = 5e-2 the terms cancel, so the value comes from quadrature and the
    coefficients are left as nan.

    Raises:
        NumericalError: If R is not positive, a radicand A + B^2 is negative beyond
        tolerance, or the log argument is not positive.
    """
    check_kappa(kappa)
    kappa = float(kappa)
    if kappa < CLOSED_FORM_MIN_KAPPA:
        logging.warning(
            f"kappa = {kappa} below {CLOSED_FORM_MIN_KAPPA}; "
            "closed form replaced by quadrature."
        )
        return PovmClosedForm(
            kappa=kappa,
            script_a=math.nan,
            script_b_plus=math.nan,
            script_b_minus=math.nan,
            script_c_plus=math.nan,
            script_c_minus=math.nan,
            fidelity=mean_fidelity_1q_quadrature(kappa),
            method="quadrature",
        )

    mc = float(mean_cosine(kappa))
    first = 3.0 * mc - kappa
    second = mc - kappa
    if not (first < 0.0 and second < 0.0):
        logging.error(
            f"Radicand factors at kappa = {kappa} are ({first}, {second}); "
            "both must be negative."
        )
        raise NumericalError(f"Closed-form radicand factors not negative at {kappa}")
    radicand = first * second
    root = math.sqrt(radicand)

    script_a = 1.0 - (kappa * mc) ** 2 / radicand
    centre = kappa * (kappa - 2.0 * mc) / root
    script_b_plus = centre + root / mc
    script_b_minus = centre - root / mc

    script_c = []
    for script_b in (script_b_plus, script_b_minus):
        value = script_a + script_b * script_b
        if value < -RADICAND_TOLERANCE * max(1.0, script_b * script_b):
            logging.error(f"Negative radicand {value} at kappa = {kappa}.")
            raise NumericalError(f"Negative radicand A + B^2 = {value} at {kappa}")
        script_c.append(math.sqrt(max(value, 0.0)))
    script_c_plus, script_c_minus = script_c

    ratio = (
        (script_c_plus + script_b_plus)
        * (script_c_minus - script_b_minus)
        / ((script_c_plus - script_b_plus) * (script_c_minus + script_b_minus))
    )
    if not ratio > 0.0:
        logging.error(f"Log argument {ratio} not positive at kappa = {kappa}.")
        raise NumericalError(f"Log argument of the closed form is {ratio} at {kappa}")

    bracket = 2.0 * (
        script_b_plus * script_c_plus - script_b_minus * script_c_minus
    ) + script_a * math.log(ratio)
    fidelity = 0.5 + mc * mc / (16.0 * kappa * root) * bracket

    return PovmClosedForm(
        kappa=kappa,
        script_a=script_a,
        script_b_plus=script_b_plus,
        script_b_minus=script_b_minus,
        script_c_plus=script_c_plus,
        script_c_minus=script_c_minus,
        fidelity=fidelity,
    )


def mean_fidelity_1q(kappa: float) -> float:
    """POVM benchmark value: closed form, or quadrature below the small-kappa switch."""
    return mean_fidelity_1q_closed(kappa).fidelity


def estimator_turning_point(
    variant: EstimatorVariant = EstimatorVariant.POSTERIOR,
) -> tuple[float, float]:
    """
    Concentration where theta~(theta_M) stops being monotone.

    theta~ is monotone on [0, pi] exactly when b(k) >= k; the boundary b(k) = k is
    found by bisection on [0.1, 10].

    Returns:
        tuple: (kappa0, n0) with n0 the mean excitation at kappa0.
    """

    def gap(k: float) -> float:
        return float(estimator_slope(k, variant)) - k

    kappa0 = float(bisect(gap, 0.1, 10.0, xtol=1e-14))
    n0 = float(mean_excitation_per_qubit(kappa0))
    logging.info(
        f"{EstimatorVariant(variant).value} estimator turns at kappa0 = {kappa0:.8f}, "
        f"n0 = {n0:.8f}."
    )
    return kappa0, n0


def is_monotone_estimator(
    kappa: float,
    variant: EstimatorVariant = EstimatorVariant.POSTERIOR,
    grid_size: int = 257,
) -> bool:
    """Whether the tabulated theta~(theta_M) is non-decreasing on [0, pi]."""
    theta_m = np.linspace(0.0, math.pi, grid_size)
    theta_tilde = np.asarray(optimal_estimator_1q(kappa, theta_m, variant))
    return bool(np.all(np.diff(theta_tilde) >= -1e-12))
