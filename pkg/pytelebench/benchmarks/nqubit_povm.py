"""
N-qubit spin-coherent benchmark with the coherent-spin POVM.

With x = cos(theta_M) and c = cos(theta), the overlap kernels of the measured direction
and of a guess (theta~, phi_M) with the state share the relative azimuth psi:

    (1 + cos alpha)/2 = a + b cos psi,
    a = (1 + x c)/2,  b = sin(theta_M) sin(theta)/2.

Expanding (a + b cos psi)^N binomially and averaging cos^m(psi) over psi
(C(m, m/2)/2^m for even m, 0 for odd m) leaves one integral over c against the prior
marginal, in which every term is non-negative. That integral is done with a single
Gauss–Legendre rule per (N, kappa, theta_M), refined once and reused for every guess
angle the optimizer asks about.
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache, partial

import numpy as np
import pandas as pd
from numpy.typing import ArrayLike, NDArray
from scipy.special import binom

from pytelebench.benchmarks.nested_sums import NestedSums
from pytelebench.benchmarks.qubit_povm import mean_fidelity_1q
from pytelebench.benchmarks.qubit_projective import (
    fidelity_axis,
    fidelity_do_nothing,
    fidelity_no_prior,
)
from pytelebench.geometry.bloch import overlap_from_cos
from pytelebench.prior.vmf import (
    FloatOrArray,
    VmfPrior,
    check_kappa,
    kappa_from_mean_n,
    mean_excitation,
)
from pytelebench.schemas.curve_schema import EstimatorCurveSchema, FidelityCurveSchema
from pytelebench.utils.config import (
    BRANCH_JUMP,
    ESTIMATOR_GRID_POINTS,
    GAIN_STEP,
    GOLDEN_TOL,
    INNER_MAX_ORDER,
    INNER_QUADRATURE_RTOL,
    OUTER_QUADRATURE_ORDER,
    OUTER_QUADRATURE_TOL,
    PRIOR_TAIL_CUTOFF,
)
from pytelebench.utils.exceptions import DomainError
from pytelebench.utils.optimize import grid_golden_max
from pytelebench.utils.quadrature import adaptive_gauss_legendre, converged_rule

SAMPLE_ANGLES = np.linspace(0.0, math.pi, 5)


class Strategy(str, Enum):
    """Strategies a fidelity curve can be computed for."""

    DO_NOTHING = "do-nothing"
    PROJECTIVE = "projective"
    POVM = "povm"
    NO_PRIOR = "no-prior"
    ASYMPTOTIC = "asymptotic"


def check_particles(n_particles: int) -> int:
    integral = (
        not isinstance(n_particles, bool)
        and math.isfinite(n_particles)
        and int(n_particles) == n_particles
    )
    if not integral or n_particles < 1:
        logging.error(f"Particle number must be a positive integer, got {n_particles}.")
        raise DomainError(f"Particle number must be a positive integer: {n_particles}")
    return int(n_particles)


@lru_cache(maxsize=None)
def azimuth_moments(m_max: int) -> NDArray[np.float64]:
    """Averages of cos^m(psi) over a uniform psi, m = 0..m_max."""
    m = np.arange(m_max + 1)
    moments = binom(m, m // 2) / 2.0**m
    moments[m % 2 == 1] = 0.0
    moments.setflags(write=False)
    return moments


def prior_window(n_particles: int, kappa: float) -> float:
    """Lower end of the c-range that carries all but e^-50 of any posterior."""
    growth = n_particles * (1.0 + math.log1p(2.0 * kappa / n_particles))
    cutoff = PRIOR_TAIL_CUTOFF + growth
    return max(-1.0, 1.0 - cutoff / kappa)


def _kernel_terms(
    n_particles: int,
    c: NDArray[np.float64],
    cos_x: ArrayLike,
    sin_x: ArrayLike,
) -> NDArray[np.float64]:
    # C(N, k) a^(N-k) b^k, broadcast over leading axes of cos_x, trailing axis k.
    k = np.arange(n_particles + 1)
    s = np.sqrt(np.clip(1.0 - c * c, 0.0, None))
    a = 0.5 * (1.0 + np.multiply.outer(cos_x, c))
    b = 0.5 * np.multiply.outer(sin_x, s)
    return binom(n_particles, k) * a[..., None] ** (n_particles - k) * b[..., None] ** k


class PosteriorKernel:
    """
    Posterior integrals for one measured polar angle.

    Builds a Gauss–Legendre rule in c = cos(theta) once, accurate for the evidence and
    for the guess-weighted overlap at sample angles, and evaluates the conditional
    fidelity of any guess angle on it.

    Attributes:
        n_particles (int): Number of qubits N.
        kappa (float): Prior concentration.
        theta_m (float): Measured polar angle.
        evidence_weight (float): Prior average of the likelihood kernel; the outcome
        density is (N+1)/(4 pi) times this.

    Methods:
        unnormalized(theta_tilde) -> np.ndarray: Prior average of likelihood times
        fidelity.
        conditional_fidelity(theta_tilde) -> np.ndarray: The same divided by the
        evidence weight.
        maximize() -> tuple[float, float]: Optimal guess angle and its fidelity.
    """

    def __init__(self, n_particles: int, kappa: float, theta_m: float):
        self.n_particles = check_particles(n_particles)
        check_kappa(kappa)
        if not 0.0 <= theta_m <= math.pi:
            logging.error(f"Measured angle {theta_m} outside [0, pi].")
            raise DomainError(f"Measured angle must lie in [0, pi], got {theta_m}")
        self.kappa = float(kappa)
        self.theta_m = float(theta_m)
        self._prior = VmfPrior(self.kappa)
        self._cos_m = math.cos(theta_m)
        self._sin_m = math.sin(theta_m)

        m = np.arange(self.n_particles + 1)
        moments = azimuth_moments(2 * self.n_particles)
        self._hankel = moments[m[:, None] + m[None, :]]

        nodes, weights = converged_rule(
            self._sample_rows,
            prior_window(self.n_particles, self.kappa),
            1.0,
            rtol=INNER_QUADRATURE_RTOL,
            max_order=INNER_MAX_ORDER,
        )
        self._nodes = nodes
        self._weights = weights * self._prior.marginal_cos(nodes)
        self._coupled = self._coupled_likelihood(nodes)
        self.evidence_weight = float(self._weights @ self._coupled[:, 0])

    def _coupled_likelihood(self, c: NDArray[np.float64]) -> NDArray[np.float64]:
        # sum_k U[j, k] mu[k + k']
        terms = _kernel_terms(self.n_particles, c, self._cos_m, self._sin_m)
        return terms @ self._hankel

    def _overlap(
        self,
        c: NDArray[np.float64],
        coupled: NDArray[np.float64],
        theta_tilde: ArrayLike,
    ) -> NDArray[np.float64]:
        t = np.atleast_1d(np.asarray(theta_tilde, dtype=float))
        guess = _kernel_terms(self.n_particles, c, np.cos(t), np.sin(t))
        return np.einsum("jk,tjk->tj", coupled, guess)

    def _sample_rows(self, c: NDArray[np.float64]) -> NDArray[np.float64]:
        coupled = self._coupled_likelihood(c)
        prior = np.asarray(self._prior.marginal_cos(c))
        rows = np.vstack([coupled[:, 0], self._overlap(c, coupled, SAMPLE_ANGLES)])
        return rows * prior

    def unnormalized(self, theta_tilde: ArrayLike) -> NDArray[np.float64]:
        return self._overlap(self._nodes, self._coupled, theta_tilde) @ self._weights

    def conditional_fidelity(self, theta_tilde: ArrayLike) -> NDArray[np.float64]:
        return self.unnormalized(theta_tilde) / self.evidence_weight

    def evidence(self) -> float:
        return (self.n_particles + 1) / (4.0 * math.pi) * self.evidence_weight

    def maximize(self) -> tuple[float, float]:
        return grid_golden_max(
            self.conditional_fidelity,
            0.0,
            math.pi,
            grid_points=ESTIMATOR_GRID_POINTS,
            tol=GOLDEN_TOL,
        )


def povm_likelihood(n_particles: int, alpha: ArrayLike) -> FloatOrArray:
    """Outcome density (N+1)/(4 pi) cos^(2N)(alpha/2) at angular distance alpha."""
    n_particles = check_particles(n_particles)
    value = (n_particles + 1) / (4.0 * math.pi) * overlap_from_cos(
        np.cos(np.asarray(alpha, dtype=float)), n_particles
    )
    return float(value) if np.ndim(value) == 0 else value


def evidence_nq(n_particles: int, kappa: float, theta_m: float) -> float:
    """Marginal outcome density per steradian at measured polar angle theta_M."""
    return PosteriorKernel(n_particles, kappa, theta_m).evidence()


def conditional_fidelity_nq(
    n_particles: int,
    kappa: float,
    theta_m: float,
    theta_tilde: ArrayLike,
    method: str = "quadrature",
) -> FloatOrArray:
    """
    Posterior mean fidelity of the guess (theta~, phi_M) given the measured direction.

    The result does not depend on phi_M: the guess shares its azimuth and the prior is
    azimuthally symmetric.

    Parameters:
        n_particles (int): Number of qubits N.
        kappa (float): Prior concentration.
        theta_m (float): Measured polar angle.
        theta_tilde (float | np.ndarray): Guess polar angle(s).
        method (str): "quadrature" (production) or "series" (nested sums, kappa >= 1
        and N <= 12 only).

    Raises:
        SeriesStabilityError: If the series path is asked for outside its regime.
        QuadratureError: If the inner rule does not settle.
    """
    if method == "series":
        sums = NestedSums(check_particles(n_particles), kappa)
        guesses = np.atleast_1d(np.asarray(theta_tilde, dtype=float))
        values = np.array([sums.conditional_fidelity(theta_m, t) for t in guesses])
    elif method == "quadrature":
        values = PosteriorKernel(n_particles, kappa, theta_m).conditional_fidelity(
            theta_tilde
        )
    else:
        logging.error(f"Unknown evaluation method {method!r}.")
        raise DomainError(f"Method must be 'quadrature' or 'series', got {method!r}")
    return float(values[0]) if np.ndim(theta_tilde) == 0 else values


def optimize_estimator(n_particles: int, kappa: float, theta_m: float) -> float:
    """
    Optimal guess angle theta~ in [0, pi] for measured theta_M.

    A 129-point grid picks the global peak of the possibly multi-modal objective and
    golden-section search refines it to 1e-8.
    """
    theta_tilde, _ = PosteriorKernel(n_particles, kappa, theta_m).maximize()
    return theta_tilde


@dataclass(frozen=True, eq=False)
class EstimatorCurve:
    """
    Tabulated optimal guess theta~(theta_M) at fixed (N, kappa).

    Attributes:
        n_particles (int): Number of qubits N.
        kappa (float): Prior concentration.
        theta_m (np.ndarray): Strictly increasing measured angles covering [0, pi].
        theta_tilde (np.ndarray): Optimal guesses, each in [0, pi].
        small_angle_gain (float): Slope of theta~ against theta_M at theta_M -> 0.

    Methods:
        samples -> list[tuple[float, float]]: (theta_m, theta_tilde) pairs.
        estimate(theta_m) -> float | np.ndarray: Interpolated guess.
        to_frame() -> pd.DataFrame: Validated long table, one row per sample.
    """

    n_particles: int
    kappa: float
    theta_m: NDArray[np.float64] = field(repr=False)
    theta_tilde: NDArray[np.float64] = field(repr=False)
    small_angle_gain: float

    @property
    def samples(self) -> list[tuple[float, float]]:
        return list(zip(self.theta_m.tolist(), self.theta_tilde.tolist()))

    def estimate(self, theta_m: ArrayLike) -> FloatOrArray:
        """
        Guess for arbitrary measured angles.

        Linear interpolation between neighbouring samples, except across a branch jump
        (neighbours more than 0.25 rad apart) where the nearer sample is used.
        """
        x = np.clip(np.asarray(theta_m, dtype=float), 0.0, math.pi)
        grid, values = self.theta_m, self.theta_tilde
        i = np.clip(np.searchsorted(grid, x, side="right") - 1, 0, len(grid) - 2)
        left, right = values[i], values[i + 1]
        t = (x - grid[i]) / (grid[i + 1] - grid[i])
        linear = left + t * (right - left)
        nearest = np.where(t < 0.5, left, right)
        value = np.where(np.abs(right - left) > BRANCH_JUMP, nearest, linear)
        return float(value) if np.ndim(value) == 0 else value

    def to_frame(self) -> pd.DataFrame:
        size = len(self.theta_m)
        frame = pd.DataFrame(
            {
                "n_particles": np.full(size, self.n_particles),
                "kappa": np.full(size, self.kappa),
                "mean_n": np.full(size, mean_excitation(self.kappa, self.n_particles)),
                "theta_m": self.theta_m,
                "theta_tilde": self.theta_tilde,
                "small_angle_gain": np.full(size, self.small_angle_gain),
            }
        )
        return EstimatorCurveSchema.validate(frame)


def small_angle_gain(n_particles: int, kappa: float, step: float = GAIN_STEP) -> float:
    """
    theta~(h)/h at h = 1e-3.

    theta~ extends to an odd function of theta_M through the pole, so this is the
    centred difference (theta~(h) - theta~(-h)) / 2h.
    """
    return optimize_estimator(n_particles, kappa, step) / step


def estimator_curve(
    n_particles: int, kappa: float, grid_size: int = ESTIMATOR_GRID_POINTS
) -> EstimatorCurve:
    """
    Optimal guesses on a uniform theta_M grid over [0, pi], endpoints included.

    Raises:
        DomainError: If grid_size < 9.
    """
    if grid_size < 9:
        logging.error(f"Estimator grid needs at least 9 points, got {grid_size}.")
        raise DomainError(f"Estimator grid needs at least 9 points, got {grid_size}")
    n_particles = check_particles(n_particles)
    theta_m = np.linspace(0.0, math.pi, grid_size)
    theta_tilde = np.array([optimize_estimator(n_particles, kappa, x) for x in theta_m])
    gain = small_angle_gain(n_particles, kappa)
    logging.info(
        f"Estimator curve for N = {n_particles}, kappa = {kappa}: "
        f"{grid_size} points, gain {gain:.6f}."
    )
    return EstimatorCurve(
        n_particles=n_particles,
        kappa=float(kappa),
        theta_m=theta_m,
        theta_tilde=np.clip(theta_tilde, 0.0, math.pi),
        small_angle_gain=gain,
    )


def mean_fidelity_nq(n_particles: int, kappa: float) -> float:
    """
    Mean fidelity of the optimal-guess POVM scheme for N qubits.

    Averages the optimized conditional fidelity over the evidence:
    <F> = (N+1)/2 int_{-1}^{1} max_t W(x, t) dx, where W is the prior average of
    likelihood times fidelity, by adaptive quadrature in x = cos(theta_M) to 1e-7.

    Raises:
        QuadratureError: If the outer or an inner rule does not converge.
    """
    n_particles = check_particles(n_particles)
    check_kappa(kappa)
    scale = 0.5 * (n_particles + 1)

    def best_weight(x: NDArray[np.float64]) -> NDArray[np.float64]:
        values = []
        for cos_m in x:
            theta_m = math.acos(min(max(cos_m, -1.0), 1.0))
            kernel = PosteriorKernel(n_particles, kappa, theta_m)
            _, best = kernel.maximize()
            values.append(best * kernel.evidence_weight)
        return np.array(values)

    integral, error = adaptive_gauss_legendre(
        best_weight,
        -1.0,
        1.0,
        atol=OUTER_QUADRATURE_TOL / scale,
        order=OUTER_QUADRATURE_ORDER,
    )
    fidelity = scale * float(integral)
    logging.info(
        f"Mean POVM fidelity for N = {n_particles}, kappa = {kappa}: {fidelity:.10f} "
        f"(error {scale * error:.1e})."
    )
    return fidelity


def fidelity_do_nothing_nq(n_particles: int, kappa: float) -> float:
    """Guess the pole without measuring: prior average of ((1 + cos theta)/2)^N."""
    n_particles = check_particles(n_particles)
    if n_particles == 1:
        return float(fidelity_do_nothing(kappa))
    prior = VmfPrior(kappa)

    def integrand(c: NDArray[np.float64]) -> NDArray[np.float64]:
        return np.asarray(prior.marginal_cos(c)) * (0.5 * (1.0 + c)) ** n_particles

    lower = max(-1.0, 1.0 - PRIOR_TAIL_CUTOFF / prior.kappa)
    value, _ = adaptive_gauss_legendre(integrand, lower, 1.0, atol=1e-12)
    return float(value)


def identity_estimator_fidelity(n_particles: int, kappa: float) -> float:
    """
    Mean fidelity when the measured direction itself is the guess (theta~ = theta_M).

    Ignores the prior at the guessing stage. The score given the true direction does
    not depend on that direction, so the value is (N+1)/(2N+1) for every kappa.
    """
    n_particles = check_particles(n_particles)
    check_kappa(kappa)
    scale = 0.5 * (n_particles + 1)

    def weight(x: NDArray[np.float64]) -> NDArray[np.float64]:
        values = []
        for cos_m in x:
            theta_m = math.acos(min(max(cos_m, -1.0), 1.0))
            kernel = PosteriorKernel(n_particles, kappa, theta_m)
            values.append(float(kernel.unnormalized(theta_m)[0]))
        return np.array(values)

    integral, _ = adaptive_gauss_legendre(
        weight,
        -1.0,
        1.0,
        atol=OUTER_QUADRATURE_TOL / scale,
        order=OUTER_QUADRATURE_ORDER,
    )
    return scale * float(integral)


def asymptotic_fidelity(mean_n: ArrayLike) -> FloatOrArray:
    """N -> infinity benchmark (<n> + 1)/(2<n> + 1)."""
    n = np.asarray(mean_n, dtype=float)
    if np.any(n < 0.0) or not np.all(np.isfinite(n)):
        logging.error(f"Mean excitation must be finite and non-negative, got {mean_n}.")
        raise DomainError(f"Mean excitation must be finite and >= 0, got {mean_n}")
    value = (n + 1.0) / (2.0 * n + 1.0)
    return float(value) if np.ndim(value) == 0 else value


def uniform_prior_benchmarks(n_particles: int) -> tuple[float, float]:
    """
    Uniform-prior limits for N copies.

    Returns:
        tuple: ((N+1)/(N+2) for re-creating one qubit from N copies,
        (N+1)/(2N+1) for re-creating the whole N-qubit state).
    """
    n = check_particles(n_particles)
    return (n + 1) / (n + 2), (n + 1) / (2 * n + 1)


@dataclass(frozen=True, eq=False)
class FidelityCurve:
    """
    Benchmark fidelities of one strategy along a line of priors.

    Attributes:
        n_particles (float): N, or math.inf for the asymptotic curve.
        strategy (Strategy): The strategy scored.
        kappa (np.ndarray): Concentrations; NaN on the asymptotic curve.
        mean_n (np.ndarray): Total mean excitations.
        fidelity (np.ndarray): Mean fidelities.
        theta0 (float | None): Measurement-axis angle for the projective strategy.

    Methods:
        points -> list[tuple[float, float]]: (mean_n, fidelity) pairs.
        to_frame() -> pd.DataFrame: Validated table with one row per point.
    """

    n_particles: float
    strategy: Strategy
    kappa: NDArray[np.float64] = field(repr=False)
    mean_n: NDArray[np.float64] = field(repr=False)
    fidelity: NDArray[np.float64] = field(repr=False)
    theta0: float | None = None

    @property
    def points(self) -> list[tuple[float, float]]:
        return list(zip(self.mean_n.tolist(), self.fidelity.tolist()))

    def to_frame(self) -> pd.DataFrame:
        size = len(self.mean_n)
        frame = pd.DataFrame(
            {
                "n_particles": np.full(size, float(self.n_particles)),
                "kappa": self.kappa,
                "mean_n": self.mean_n,
                "strategy": [Strategy(self.strategy).value] * size,
                "theta0": np.full(size, np.nan if self.theta0 is None else self.theta0),
                "fidelity": self.fidelity,
            }
        )
        return FidelityCurveSchema.validate(frame)


def reflect_axis(theta0: float) -> float:
    """Map an axis angle in [0, pi] onto the equivalent one in [0, pi/2]."""
    if not 0.0 <= theta0 <= math.pi:
        logging.error(f"Axis angle {theta0} outside [0, pi].")
        raise DomainError(f"Axis angle must lie in [0, pi], got {theta0}")
    return math.pi - theta0 if theta0 > math.pi / 2.0 else theta0


def benchmark_fidelity(
    n_particles: int, strategy: Strategy, kappa: float, theta0: float | None = None
) -> float:
    """
    Mean fidelity of one strategy at one prior.

    Raises:
        DomainError: For the projective or no-prior strategy with N > 1.
    """
    strategy = Strategy(strategy)
    if strategy in (Strategy.PROJECTIVE, Strategy.NO_PRIOR) and n_particles != 1:
        logging.error(f"Strategy {strategy.value} is defined for one qubit only.")
        raise DomainError(f"Strategy {strategy.value} needs N = 1, got {n_particles}")
    if strategy is Strategy.DO_NOTHING:
        return fidelity_do_nothing_nq(n_particles, kappa)
    if strategy is Strategy.PROJECTIVE:
        axis = math.pi / 2.0 if theta0 is None else reflect_axis(theta0)
        return fidelity_axis(kappa, axis).fidelity
    if strategy is Strategy.NO_PRIOR:
        return float(fidelity_no_prior(kappa))
    if strategy is Strategy.POVM:
        if n_particles == 1:
            return mean_fidelity_1q(kappa)
        return mean_fidelity_nq(n_particles, kappa)
    logging.error("The asymptotic curve is parameterized by <n>, not kappa.")
    raise DomainError("The asymptotic strategy has no finite-N fidelity")


def fidelity_curve(
    n_particles: float,
    strategy: Strategy | str,
    mean_n_values: ArrayLike | None = None,
    kappa_values: ArrayLike | None = None,
    theta0: float | None = None,
    workers: int = 1,
) -> FidelityCurve:
    """
    Build a FidelityCurve along <n> or kappa values (exactly one must be given).

    ``n_particles = math.inf`` gives the asymptotic curve and needs <n> values.
    Points are independent; ``workers > 1`` spreads them over processes and keeps the
    input order.

    Raises:
        DomainError: On conflicting axes, <n> outside (0, N/2), or bad strategy/N pairs.
    """
    if (mean_n_values is None) == (kappa_values is None):
        logging.error("Exactly one of mean_n_values and kappa_values is required.")
        raise DomainError("Give exactly one of mean_n_values and kappa_values")

    if math.isinf(n_particles):
        if mean_n_values is None:
            logging.error("The asymptotic curve needs <n> values.")
            raise DomainError("The asymptotic curve needs <n> values")
        mean_n = np.atleast_1d(np.asarray(mean_n_values, dtype=float))
        if np.any(mean_n <= 0.0):
            logging.error(f"Asymptotic curve needs positive <n>, got {mean_n_values}.")
            raise DomainError("The asymptotic curve needs <n> > 0")
        return FidelityCurve(
            n_particles=math.inf,
            strategy=Strategy.ASYMPTOTIC,
            kappa=np.full(len(mean_n), np.nan),
            mean_n=mean_n,
            fidelity=np.asarray(asymptotic_fidelity(mean_n)).reshape(-1),
        )

    n = check_particles(n_particles)
    strategy = Strategy(strategy)
    if mean_n_values is not None:
        mean_n = np.atleast_1d(np.asarray(mean_n_values, dtype=float))
        kappa = np.array([kappa_from_mean_n(float(v), n) for v in mean_n])
    else:
        kappa = np.atleast_1d(np.asarray(kappa_values, dtype=float))
        check_kappa(kappa)
        mean_n = np.asarray(mean_excitation(kappa, n)).reshape(-1)

    compute = partial(_fidelity_at, n, strategy, theta0)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            fidelity = np.array(list(pool.map(compute, kappa.tolist())))
    else:
        fidelity = np.array([compute(k) for k in kappa.tolist()])

    axis = None
    if strategy is Strategy.PROJECTIVE:
        axis = math.pi / 2.0 if theta0 is None else reflect_axis(theta0)
    logging.info(f"Fidelity curve {strategy.value} for N = {n}: {len(kappa)} points.")
    return FidelityCurve(
        n_particles=n,
        strategy=strategy,
        kappa=kappa,
        mean_n=mean_n,
        fidelity=fidelity,
        theta0=axis,
    )


def _fidelity_at(
    n_particles: int, strategy: Strategy, theta0: float | None, kappa: float
) -> float:
    return benchmark_fidelity(n_particles, strategy, kappa, theta0)
