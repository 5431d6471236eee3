import math

import numpy as np
import pandas as pd
import pytest

from pytelebench.benchmarks.nqubit_povm import (
    EstimatorCurve,
    PosteriorKernel,
    Strategy,
    asymptotic_fidelity,
    azimuth_moments,
    benchmark_fidelity,
    check_particles,
    conditional_fidelity_nq,
    estimator_curve,
    evidence_nq,
    fidelity_curve,
    fidelity_do_nothing_nq,
    identity_estimator_fidelity,
    mean_fidelity_nq,
    optimize_estimator,
    povm_likelihood,
    prior_window,
    reflect_axis,
    small_angle_gain,
    uniform_prior_benchmarks,
)
from pytelebench.benchmarks.qubit_povm import (
    conditional_fidelity_1q,
    evidence_1q,
    mean_fidelity_1q,
    optimal_estimator_1q,
    small_angle_gain_1q,
)
from pytelebench.benchmarks.qubit_projective import fidelity_axis, fidelity_equatorial
from pytelebench.prior.vmf import mean_cosine, mean_excitation
from pytelebench.utils.exceptions import DomainError
from pytelebench.utils.quadrature import gauss_legendre

THETA_M = [0.0, 0.3, 1.2, math.pi / 2, 2.4, math.pi]


@pytest.mark.parametrize("value", [0, -1, 2.5, True, math.inf])
def test_check_particles_rejects(value: float) -> None:
    with pytest.raises(DomainError):
        check_particles(value)  # type: ignore[arg-type]


def test_check_particles_accepts_integral_float() -> None:
    assert check_particles(3.0) == 3  # type: ignore[arg-type]


def test_azimuth_moments() -> None:
    moments = azimuth_moments(4)
    np.testing.assert_allclose(moments, [1.0, 0.0, 0.5, 0.0, 0.375])
    assert not moments.flags.writeable


def test_prior_window() -> None:
    assert prior_window(1, 0.5) == -1.0
    assert -1.0 < prior_window(1, 500.0) < 1.0
    assert prior_window(10, 500.0) < prior_window(1, 500.0)


def test_povm_likelihood_normalized() -> None:
    for n in (1, 3, 8):
        value = gauss_legendre(
            lambda x: 2 * math.pi * np.asarray(povm_likelihood(n, np.arccos(x))),
            -1.0,
            1.0,
            order=32,
        )
        assert value == pytest.approx(1.0, abs=1e-12)
    assert povm_likelihood(2, math.pi) == 0.0


@pytest.mark.parametrize("theta_m", THETA_M)
def test_one_qubit_evidence(theta_m: float) -> None:
    assert evidence_nq(1, 1.5, theta_m) == pytest.approx(
        evidence_1q(1.5, theta_m), abs=1e-10
    )


@pytest.mark.parametrize("n_particles", [2, 5])
def test_evidence_normalized(n_particles: int) -> None:
    value = gauss_legendre(
        lambda x: np.array(
            [2 * math.pi * evidence_nq(n_particles, 2.0, math.acos(c)) for c in x]
        ),
        -1.0,
        1.0,
        order=16,
    )
    assert value == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("theta_m", THETA_M)
def test_one_qubit_conditional_fidelity(theta_m: float) -> None:
    kappa = 2.0
    guess = optimal_estimator_1q(kappa, theta_m)
    assert conditional_fidelity_nq(1, kappa, theta_m, guess) == pytest.approx(
        conditional_fidelity_1q(kappa, theta_m), abs=1e-8
    )


def test_conditional_fidelity_vectorised() -> None:
    guesses = np.linspace(0.0, math.pi, 5)
    values = conditional_fidelity_nq(3, 1.0, 0.8, guesses)
    assert values.shape == (5,)
    assert np.all((values > 0.0) & (values < 1.0))


@pytest.mark.parametrize("n_particles", [2, 3])
@pytest.mark.parametrize("theta_m, theta_tilde", [(0.4, 0.3), (1.3, 0.9), (2.7, 1.1)])
def test_series_matches_quadrature(
    n_particles: int, theta_m: float, theta_tilde: float
) -> None:
    quadrature = conditional_fidelity_nq(n_particles, 2.0, theta_m, theta_tilde)
    series = conditional_fidelity_nq(
        n_particles, 2.0, theta_m, theta_tilde, method="series"
    )
    assert series == pytest.approx(quadrature, abs=1e-8)


def test_unknown_method() -> None:
    with pytest.raises(DomainError):
        conditional_fidelity_nq(2, 2.0, 1.0, 1.0, method="exact")


def test_kernel_rejects_bad_angle() -> None:
    with pytest.raises(DomainError):
        PosteriorKernel(2, 1.0, 3.5)


@pytest.mark.parametrize("theta_m", [0.3, 1.0, 2.0, 2.8])
@pytest.mark.parametrize("kappa", [0.5, 3.0])
def test_one_qubit_optimizer(theta_m: float, kappa: float) -> None:
    assert optimize_estimator(1, kappa, theta_m) == pytest.approx(
        optimal_estimator_1q(kappa, theta_m), abs=1e-6
    )


def test_optimizer_beats_grid_neighbours() -> None:
    kernel = PosteriorKernel(4, 3.0, 2.0)
    theta_tilde, best = kernel.maximize()
    grid = kernel.conditional_fidelity(np.linspace(0.0, math.pi, 513))
    assert best >= grid.max() - 1e-12
    assert kernel.conditional_fidelity(theta_tilde)[0] == pytest.approx(best)


def test_estimator_curve_one_qubit() -> None:
    curve = estimator_curve(1, 1.0, grid_size=9)
    assert len(curve.samples) == 9
    np.testing.assert_allclose(
        curve.theta_tilde, optimal_estimator_1q(1.0, curve.theta_m), atol=1e-6
    )
    assert curve.small_angle_gain == pytest.approx(small_angle_gain_1q(1.0), rel=1e-3)


def test_estimator_curve_uniform_prior_is_identity() -> None:
    curve = estimator_curve(2, 1e-6, grid_size=9)
    np.testing.assert_allclose(curve.theta_tilde, curve.theta_m, atol=1e-5)


def test_estimator_curve_frame() -> None:
    frame = estimator_curve(2, 1.0, grid_size=9).to_frame()
    assert list(frame.columns) == [
        "n_particles",
        "kappa",
        "mean_n",
        "theta_m",
        "theta_tilde",
        "small_angle_gain",
    ]
    assert len(frame) == 9
    assert (frame["n_particles"] == 2).all()


def test_estimator_curve_grid_too_small() -> None:
    with pytest.raises(DomainError):
        estimator_curve(2, 1.0, grid_size=8)


def test_estimate_interpolates_and_respects_branch_jumps() -> None:
    curve = EstimatorCurve(
        n_particles=2,
        kappa=5.0,
        theta_m=np.array([0.0, 1.0, 2.0, math.pi]),
        theta_tilde=np.array([0.0, 0.2, 2.5, math.pi]),
        small_angle_gain=0.5,
    )
    assert curve.estimate(0.5) == pytest.approx(0.1)
    assert curve.estimate(1.4) == 0.2
    assert curve.estimate(1.6) == 2.5
    np.testing.assert_allclose(curve.estimate(np.array([0.0, 2.0])), [0.0, 2.5])
    assert curve.estimate(5.0) == pytest.approx(math.pi)


def test_small_angle_gain_one_qubit() -> None:
    assert small_angle_gain(1, 2.0) == pytest.approx(small_angle_gain_1q(2.0), rel=1e-3)


def test_do_nothing_two_qubits() -> None:
    kappa = 2.0
    mc = float(mean_cosine(kappa))
    expected = 0.5 * (1.0 + mc - mc / kappa)
    assert fidelity_do_nothing_nq(2, kappa) == pytest.approx(expected, abs=1e-12)
    assert fidelity_do_nothing_nq(2, kappa) == pytest.approx(0.6343287, abs=1e-6)


@pytest.mark.parametrize("n_particles", [1, 2, 4])
def test_identity_estimator_ignores_prior(n_particles: int) -> None:
    expected = (n_particles + 1) / (2 * n_particles + 1)
    for kappa in (0.3, 2.0):
        assert identity_estimator_fidelity(n_particles, kappa) == pytest.approx(
            expected, abs=1e-6
        )


@pytest.mark.parametrize("kappa", [0.1, 1.0, 5.0, 20.0])
def test_one_qubit_mean_fidelity(kappa: float) -> None:
    expected = mean_fidelity_1q(kappa)
    assert mean_fidelity_nq(1, kappa) == pytest.approx(expected, abs=1e-6)


def test_two_qubit_mean_fidelity_bounds() -> None:
    kappa = 1.0
    fidelity = mean_fidelity_nq(2, kappa)
    assert fidelity >= identity_estimator_fidelity(2, kappa) - 1e-7
    assert fidelity >= fidelity_do_nothing_nq(2, kappa)
    assert fidelity < 1.0


@pytest.mark.parametrize(
    "n_particles", [1, 2, 3, 5, pytest.param(10, marks=pytest.mark.slow)]
)
def test_uniform_limit(n_particles: int) -> None:
    expected = (n_particles + 1) / (2 * n_particles + 1)
    assert mean_fidelity_nq(n_particles, 1e-6) == pytest.approx(expected, abs=1e-5)


@pytest.mark.slow
@pytest.mark.parametrize("kappa", [0.1, 2.0, 50.0])
@pytest.mark.parametrize("n_particles", [1, 2, 5, 10])
def test_benchmark_ordering(n_particles: int, kappa: float) -> None:
    fidelity = mean_fidelity_nq(n_particles, kappa)
    mean_n = mean_excitation(kappa, n_particles)
    assert fidelity_do_nothing_nq(n_particles, kappa) <= fidelity + 1e-9
    assert fidelity <= asymptotic_fidelity(mean_n) + 1e-6
    assert fidelity >= (n_particles + 1) / (2 * n_particles + 1) - 1e-7
    if n_particles == 1:
        assert fidelity <= fidelity_equatorial(kappa) + 1e-6


def test_asymptotic_and_uniform_limits() -> None:
    assert asymptotic_fidelity(0.0) == 1.0
    assert asymptotic_fidelity(1.0) == pytest.approx(2.0 / 3.0)
    np.testing.assert_allclose(asymptotic_fidelity([0.5, 2.0]), [0.75, 0.6])
    assert uniform_prior_benchmarks(1) == (2 / 3, 2 / 3)
    assert uniform_prior_benchmarks(3) == (0.8, 4 / 7)
    with pytest.raises(DomainError):
        asymptotic_fidelity(-0.1)


def test_reflect_axis() -> None:
    assert reflect_axis(0.3) == 0.3
    assert reflect_axis(math.pi - 0.3) == pytest.approx(0.3)
    with pytest.raises(DomainError):
        reflect_axis(4.0)


def test_benchmark_fidelity_dispatch() -> None:
    assert benchmark_fidelity(1, Strategy.PROJECTIVE, 1.0) == pytest.approx(
        fidelity_axis(1.0, math.pi / 2).fidelity
    )
    assert benchmark_fidelity(1, "projective", 1.0, 3 * math.pi / 4) == pytest.approx(
        fidelity_axis(1.0, math.pi / 4).fidelity
    )
    assert benchmark_fidelity(1, "povm", 2.0) == mean_fidelity_1q(2.0)
    with pytest.raises(DomainError):
        benchmark_fidelity(2, "projective", 1.0)
    with pytest.raises(DomainError):
        benchmark_fidelity(2, "no-prior", 1.0)
    with pytest.raises(DomainError):
        benchmark_fidelity(2, "asymptotic", 1.0)


def test_fidelity_curve_along_mean_n() -> None:
    mean_n = [0.05, 0.2, 0.45]
    curve = fidelity_curve(1, "projective", mean_n_values=mean_n, theta0=0.0)
    np.testing.assert_array_equal(curve.mean_n, mean_n)
    assert curve.theta0 == 0.0
    frame = curve.to_frame()
    assert list(frame.columns) == [
        "n_particles",
        "kappa",
        "mean_n",
        "strategy",
        "theta0",
        "fidelity",
    ]
    assert (frame["strategy"] == "projective").all()
    assert frame["fidelity"].is_monotonic_decreasing


def test_fidelity_curve_along_kappa() -> None:
    curve = fidelity_curve(3, Strategy.DO_NOTHING, kappa_values=[0.5, 2.0])
    assert curve.theta0 is None
    assert curve.to_frame()["theta0"].isna().all()
    assert curve.points[1][1] == pytest.approx(fidelity_do_nothing_nq(3, 2.0))


def test_fidelity_curve_asymptotic() -> None:
    curve = fidelity_curve(math.inf, "povm", mean_n_values=[0.5, 1.0])
    assert curve.strategy is Strategy.ASYMPTOTIC
    frame = curve.to_frame()
    assert np.isinf(frame["n_particles"]).all()
    assert frame["kappa"].isna().all()
    np.testing.assert_allclose(frame["fidelity"], [0.75, 2.0 / 3.0])


@pytest.mark.parametrize(
    "kwargs",
    [
        {},
        {"mean_n_values": [0.1], "kappa_values": [1.0]},
        {"mean_n_values": [0.6]},
        {"kappa_values": [-1.0]},
    ],
)
def test_fidelity_curve_rejects(kwargs: dict) -> None:
    with pytest.raises(DomainError):
        fidelity_curve(1, "do-nothing", **kwargs)


def test_asymptotic_curve_rejects_kappa_axis() -> None:
    with pytest.raises(DomainError):
        fidelity_curve(math.inf, "asymptotic", kappa_values=[1.0])
    with pytest.raises(DomainError):
        fidelity_curve(math.inf, "asymptotic", mean_n_values=[0.0])


def test_fidelity_curve_worker_count_does_not_matter() -> None:
    serial = fidelity_curve(2, "do-nothing", kappa_values=[0.5, 1.0, 2.0])
    parallel = fidelity_curve(2, "do-nothing", kappa_values=[0.5, 1.0, 2.0], workers=2)
    pd.testing.assert_frame_equal(serial.to_frame(), parallel.to_frame())
