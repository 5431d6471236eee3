"""
Monte Carlo replay of prepare, measure, guess and score.

Trials run in blocks of MC_BLOCK_SIZE. Block b draws from a Philox stream keyed by
SeedSequence(seed, spawn_key=(b,)), and block statistics are merged in block order, so
an estimate depends only on (seed, parameters) and never on the worker count.
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from functools import partial

import numpy as np
from numpy.typing import NDArray

from pytelebench.benchmarks.nqubit_povm import (
    EstimatorCurve,
    check_particles,
    estimator_curve,
)
from pytelebench.benchmarks.qubit_povm import optimal_estimator_1q
from pytelebench.benchmarks.qubit_projective import fidelity_axis
from pytelebench.geometry.bloch import BlochDirection, overlap_from_cos, unit_vectors
from pytelebench.prior.vmf import VmfPrior, sample_directions
from pytelebench.utils.config import MC_BLOCK_SIZE, MC_ESTIMATOR_GRID, MC_MIN_SAMPLES
from pytelebench.utils.exceptions import DomainError

SEED_LIMIT = 2**64


class StrategyKind(str, Enum):
    DO_NOTHING = "do-nothing"
    PROJECTIVE_AXIS = "projective"
    COHERENT_POVM = "povm"


@dataclass(frozen=True)
class StrategySpec:
    """
    A measure-and-guess strategy to simulate.

    Attributes:
        kind (StrategyKind): Do nothing, one projective axis, or the coherent-spin POVM.
        axis_theta0 (float | None): Axis polar angle in [0, pi/2]; projective only.
        identity_estimator (bool): Guess the measured direction itself; POVM only.
    """

    kind: StrategyKind
    axis_theta0: float | None = None
    identity_estimator: bool = False

    def __post_init__(self) -> None:
        kind = StrategyKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind is StrategyKind.PROJECTIVE_AXIS:
            if self.axis_theta0 is None or not 0.0 <= self.axis_theta0 <= math.pi / 2.0:
                logging.error(f"Axis angle {self.axis_theta0} not in [0, pi/2].")
                raise DomainError(
                    f"Projective strategy needs theta0 in [0, pi/2], "
                    f"got {self.axis_theta0}"
                )
        elif self.axis_theta0 is not None:
            logging.error(f"Axis angle given for strategy {kind.value}.")
            raise DomainError(f"Only the projective strategy takes theta0, not {kind}")
        if self.identity_estimator and kind is not StrategyKind.COHERENT_POVM:
            logging.error(f"Identity estimator requested for strategy {kind.value}.")
            raise DomainError("The identity estimator needs the POVM strategy")

    @classmethod
    def do_nothing(cls) -> "StrategySpec":
        return cls(StrategyKind.DO_NOTHING)

    @classmethod
    def projective_axis(cls, theta0: float) -> "StrategySpec":
        return cls(StrategyKind.PROJECTIVE_AXIS, axis_theta0=float(theta0))

    @classmethod
    def coherent_povm(cls, identity_estimator: bool = False) -> "StrategySpec":
        return cls(StrategyKind.COHERENT_POVM, identity_estimator=identity_estimator)


@dataclass(frozen=True)
class McEstimate:
    """
    Attributes:
        mean_fidelity (float): Sample mean of the per-trial fidelity.
        std_error (float): Sample standard deviation over sqrt(n_samples).
        n_samples (int): Number of trials.
        seed (int): Root seed of the random streams.
    """

    mean_fidelity: float
    std_error: float
    n_samples: int
    seed: int

    def z_score(self, analytic: float) -> float:
        gap = self.mean_fidelity - analytic
        if self.std_error == 0.0:
            return 0.0 if gap == 0.0 else math.copysign(math.inf, gap)
        return gap / self.std_error


def block_generator(seed: int, block: int) -> np.random.Generator:
    sequence = np.random.SeedSequence(seed, spawn_key=(block,))
    return np.random.Generator(np.random.Philox(sequence))


def _frames(
    theta: NDArray[np.float64], phi: NDArray[np.float64]
) -> tuple[NDArray[np.float64], NDArray[np.float64], NDArray[np.float64]]:
    # Unit vector and two tangent vectors at each (theta, phi).
    cos_t, sin_t = np.cos(theta), np.sin(theta)
    cos_p, sin_p = np.cos(phi), np.sin(phi)
    r = np.stack([sin_t * cos_p, sin_t * sin_p, cos_t], axis=-1)
    e1 = np.stack([cos_t * cos_p, cos_t * sin_p, -sin_t], axis=-1)
    e2 = np.stack([-sin_p, cos_p, np.zeros_like(phi)], axis=-1)
    return r, e1, e2


def povm_offsets(
    n_particles: int, rng: np.random.Generator, size: int
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """
    Angular distance and relative azimuth of POVM outcomes from the true direction.

    alpha = 2 arccos(u^(1/(2N+2))) inverts the distribution whose density is
    proportional to cos^(2N)(alpha/2) sin(alpha).
    """
    u = rng.random(size)
    alpha = 2.0 * np.arccos(u ** (1.0 / (2 * n_particles + 2)))
    beta = rng.random(size) * (2.0 * math.pi)
    return alpha, beta


def _measure(
    n_particles: int,
    theta: NDArray[np.float64],
    phi: NDArray[np.float64],
    rng: np.random.Generator,
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    r, e1, e2 = _frames(theta, phi)
    alpha, beta = povm_offsets(n_particles, rng, len(theta))
    sin_a = np.sin(alpha)[:, None]
    m = (
        np.cos(alpha)[:, None] * r
        + sin_a * np.cos(beta)[:, None] * e1
        + sin_a * np.sin(beta)[:, None] * e2
    )
    theta_m = np.arctan2(np.hypot(m[:, 0], m[:, 1]), m[:, 2])
    phi_m = np.arctan2(m[:, 1], m[:, 0])
    return theta_m, phi_m


def povm_sample(
    n_particles: int, true_direction: BlochDirection, rng: np.random.Generator
) -> BlochDirection:
    """One coherent-spin POVM outcome for the given true direction."""
    n_particles = check_particles(n_particles)
    theta_m, phi_m = _measure(
        n_particles,
        np.array([true_direction.theta]),
        np.array([true_direction.phi]),
        rng,
    )
    return BlochDirection(float(theta_m[0]), float(phi_m[0]))


def _block_scores(
    n_particles: int,
    kappa: float,
    strategy: StrategySpec,
    curve: EstimatorCurve | None,
    rng: np.random.Generator,
    size: int,
) -> NDArray[np.float64]:
    theta, phi = sample_directions(VmfPrior(kappa), rng, size)
    truth = unit_vectors(theta, phi)

    if strategy.kind is StrategyKind.DO_NOTHING:
        cos_alpha = truth[:, 2]
    elif strategy.kind is StrategyKind.PROJECTIVE_AXIS:
        bench = fidelity_axis(kappa, strategy.axis_theta0)
        axis = unit_vectors(bench.theta0, 0.0)
        plus = rng.random(size) < 0.5 * (1.0 + truth @ axis)
        guess_angle = np.where(plus, bench.guess_plus, bench.guess_minus)
        guess = np.stack(
            [np.sin(guess_angle), np.zeros(size), np.cos(guess_angle)], axis=-1
        )
        cos_alpha = np.sum(guess * truth, axis=-1)
    else:
        theta_m, phi_m = _measure(n_particles, theta, phi, rng)
        if strategy.identity_estimator:
            theta_tilde = theta_m
        elif curve is None:
            theta_tilde = np.asarray(optimal_estimator_1q(kappa, theta_m))
        else:
            theta_tilde = np.asarray(curve.estimate(theta_m))
        cos_alpha = np.sum(unit_vectors(theta_tilde, phi_m) * truth, axis=-1)

    return np.asarray(overlap_from_cos(cos_alpha, n_particles))


def _block_moments(
    n_particles: int,
    kappa: float,
    strategy: StrategySpec,
    curve: EstimatorCurve | None,
    seed: int,
    n_samples: int,
    block: int,
) -> tuple[int, float, float]:
    size = min(MC_BLOCK_SIZE, n_samples - block * MC_BLOCK_SIZE)
    scores = _block_scores(
        n_particles, kappa, strategy, curve, block_generator(seed, block), size
    )
    mean = float(np.mean(scores))
    return size, mean, float(np.sum((scores - mean) ** 2))


def combine_moments(parts: list[tuple[int, float, float]]) -> tuple[int, float, float]:
    """Merge (count, mean, sum of squared deviations) triples left to right."""
    count, mean, m2 = 0, 0.0, 0.0
    for n_b, mean_b, m2_b in parts:
        total = count + n_b
        delta = mean_b - mean
        mean += delta * n_b / total
        m2 += m2_b + delta * delta * count * n_b / total
        count = total
    return count, mean, m2


def _check_run(
    n_particles: int, kappa: float, strategy: StrategySpec, n_samples: int, seed: int
) -> None:
    if n_samples < MC_MIN_SAMPLES:
        logging.error(f"Monte Carlo needs {MC_MIN_SAMPLES} samples, got {n_samples}.")
        raise DomainError(f"Need at least {MC_MIN_SAMPLES} samples, got {n_samples}")
    if not 0 <= seed < SEED_LIMIT:
        logging.error(f"Seed {seed} is not a 64-bit unsigned value.")
        raise DomainError(f"Seed must lie in [0, 2^64), got {seed}")
    if not math.isfinite(kappa) or kappa <= 0.0:
        logging.error(f"Concentration must be finite and positive, got {kappa}.")
        raise DomainError(f"Concentration must be finite and positive, got {kappa}")
    if strategy.kind is StrategyKind.PROJECTIVE_AXIS and n_particles != 1:
        logging.error(f"Projective strategy simulated with N = {n_particles}.")
        raise DomainError(f"The projective strategy needs N = 1, got {n_particles}")


def simulate(
    n_particles: int,
    kappa: float,
    strategy: StrategySpec,
    n_samples: int,
    seed: int,
    workers: int = 1,
) -> McEstimate:
    """
    Estimate the mean fidelity of a strategy by direct simulation.

    For N > 1 the optimal POVM guess is read off an estimator curve tabulated on
    MC_ESTIMATOR_GRID measured angles before any sampling starts.

    Parameters:
        n_particles (int): Number of qubits N.
        kappa (float): Prior concentration.
        strategy (StrategySpec): Strategy to replay.
        n_samples (int): Number of trials, at least 1000.
        seed (int): Root seed in [0, 2^64).
        workers (int): Processes to shard blocks over.

    Returns:
        McEstimate: Mean, standard error, sample count and seed.

    Raises:
        DomainError: On invalid strategy/parameter combinations, before sampling.
    """
    n_particles = check_particles(n_particles)
    _check_run(n_particles, kappa, strategy, n_samples, seed)

    curve = None
    if (
        strategy.kind is StrategyKind.COHERENT_POVM
        and not strategy.identity_estimator
        and n_particles > 1
    ):
        curve = estimator_curve(n_particles, kappa, MC_ESTIMATOR_GRID)

    n_blocks = -(-n_samples // MC_BLOCK_SIZE)
    run_block = partial(
        _block_moments, n_particles, kappa, strategy, curve, seed, n_samples
    )
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run_block, range(n_blocks)))
    else:
        parts = [run_block(block) for block in range(n_blocks)]

    count, mean, m2 = combine_moments(parts)
    std_error = math.sqrt(m2 / (count - 1)) / math.sqrt(count)
    logging.info(
        f"Simulated {strategy.kind.value} for N = {n_particles}, kappa = {kappa}: "
        f"{mean:.6f} +- {std_error:.1e} from {count} samples (seed {seed})."
    )
    return McEstimate(
        mean_fidelity=mean, std_error=std_error, n_samples=count, seed=seed
    )
