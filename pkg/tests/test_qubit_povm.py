import math

import numpy as np
import pytest

from pytelebench.benchmarks.qubit_povm import (
    EstimatorVariant,
    conditional_fidelity_1q,
    estimator_slope,
    estimator_turning_point,
    evidence_1q,
    is_monotone_estimator,
    mean_fidelity_1q,
    mean_fidelity_1q_closed,
    mean_fidelity_1q_quadrature,
    optimal_estimator_1q,
    small_angle_gain_1q,
)
from pytelebench.benchmarks.qubit_projective import (
    fidelity_do_nothing,
    fidelity_equatorial,
)
from pytelebench.utils.quadrature import adaptive_gauss_legendre


@pytest.mark.parametrize("kappa", np.geomspace(5e-2, 50.0, 31))
def test_closed_form_matches_quadrature(kappa: float) -> None:
    closed = mean_fidelity_1q_closed(kappa)
    assert closed.method == "closed"
    assert closed.fidelity == pytest.approx(
        mean_fidelity_1q_quadrature(kappa), abs=1e-8
    )


def test_small_kappa_switches_to_quadrature() -> None:
    closed = mean_fidelity_1q_closed(1e-2)
    assert closed.method == "quadrature"
    assert closed.fidelity == pytest.approx(mean_fidelity_1q_quadrature(1e-2))
    assert math.isnan(closed.script_a)


@pytest.mark.parametrize("kappa", [1e-20, 1e-100, 1e-300])
def test_tiny_kappa_reaches_uniform_value(kappa: float) -> None:
    closed = mean_fidelity_1q_closed(kappa)
    assert closed.method == "quadrature"
    assert mean_fidelity_1q(kappa) == pytest.approx(2.0 / 3.0, abs=1e-9)


def test_uniform_limit() -> None:
    assert mean_fidelity_1q(1e-6) == pytest.approx(2.0 / 3.0, abs=1e-5)


@pytest.mark.parametrize("kappa", [0.1, 1.0, 10.0])
def test_povm_between_references(kappa: float) -> None:
    fidelity = mean_fidelity_1q(kappa)
    assert fidelity >= fidelity_do_nothing(kappa)
    assert fidelity <= fidelity_equatorial(kappa) + 1e-12
    assert fidelity < 1.0


def test_evidence_normalized() -> None:
    value, _ = adaptive_gauss_legendre(
        lambda x: 2 * math.pi * np.asarray(evidence_1q(1.5, np.arccos(x))),
        -1.0,
        1.0,
        atol=1e-13,
    )
    assert value == pytest.approx(1.0, abs=1e-12)


def test_conditional_fidelity_on_equator() -> None:
    value = conditional_fidelity_1q(1.0, math.pi / 2)
    assert value == pytest.approx(fidelity_equatorial(1.0), abs=1e-12)


@pytest.mark.parametrize("kappa", [0.2, 1.0, 4.0])
def test_optimal_guess_beats_any_other(kappa: float) -> None:
    theta_m = np.linspace(0.0, math.pi, 17)
    best = conditional_fidelity_1q(kappa, theta_m)
    assert np.all(best >= 0.5 - 1e-12)
    guess = optimal_estimator_1q(kappa, theta_m)
    np.testing.assert_allclose(conditional_fidelity_1q(kappa, theta_m, guess), best)
    for shift in (-0.05, 0.05):
        other = conditional_fidelity_1q(kappa, theta_m, guess + shift)
        assert np.all(other < best)


def test_variants_agree_on_equator() -> None:
    for kappa in (0.3, 1.0, 3.0):
        posterior = optimal_estimator_1q(kappa, math.pi / 2, EstimatorVariant.POSTERIOR)
        cubic = optimal_estimator_1q(kappa, math.pi / 2, EstimatorVariant.CUBIC)
        assert posterior == pytest.approx(cubic, rel=1e-14)
        assert posterior == pytest.approx(math.atan2(1.0, kappa))


def test_estimator_range() -> None:
    theta_tilde = optimal_estimator_1q(3.0, np.linspace(0.0, math.pi, 33))
    assert np.all((theta_tilde >= 0.0) & (theta_tilde <= math.pi))
    assert theta_tilde[0] == 0.0


def test_small_angle_gain() -> None:
    kappa = 1.0
    gain = small_angle_gain_1q(kappa)
    h = 1e-6
    assert gain == pytest.approx(optimal_estimator_1q(kappa, h) / h, rel=1e-6)
    assert gain == pytest.approx(1.0 / (kappa + estimator_slope(kappa, "posterior")))


def test_cubic_turning_point() -> None:
    kappa0, n0 = estimator_turning_point(EstimatorVariant.CUBIC)
    assert kappa0 == pytest.approx(0.81, abs=0.01)
    assert n0 == pytest.approx(0.37, abs=0.01)
    assert is_monotone_estimator(0.5, EstimatorVariant.CUBIC)
    assert not is_monotone_estimator(2.0, EstimatorVariant.CUBIC)


def test_posterior_turning_point() -> None:
    kappa_c, _ = estimator_turning_point(EstimatorVariant.POSTERIOR)
    assert kappa_c == pytest.approx(1.344, abs=0.01)
    assert is_monotone_estimator(kappa_c * 0.9)
    assert not is_monotone_estimator(kappa_c * 1.1)


def test_cubic_estimator_scores_below_posterior() -> None:
    posterior = mean_fidelity_1q_quadrature(2.0)
    cubic = mean_fidelity_1q_quadrature(2.0, EstimatorVariant.CUBIC)
    assert cubic <= posterior + 1e-12
