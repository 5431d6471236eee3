"""
Entanglement-free teleportation benchmarks under a von Mises–Fisher prior.

Available classes:
- AxisBenchmark: Guesses and fidelity for one projective measurement axis.
- PovmClosedForm: Coefficients of the single-qubit POVM closed form.
- EstimatorVariant: Posterior-optimal or cubic single-qubit estimator.
- PosteriorKernel: N-qubit posterior integrals for one measured angle.
- NestedSums: Extended-precision series evaluation of the N-qubit fidelity.
- EstimatorCurve: Tabulated optimal guess angle against measured angle.
- FidelityCurve: Benchmark fidelity along a line of priors.
- Strategy: Strategies a fidelity curve can be computed for.

Available functions:
- fidelity_do_nothing, fidelity_no_prior, fidelity_equatorial, fidelity_axis
- optimal_guess_equatorial, crossover_excitation
- evidence_1q, optimal_estimator_1q, conditional_fidelity_1q, small_angle_gain_1q
- mean_fidelity_1q, mean_fidelity_1q_closed, mean_fidelity_1q_quadrature
- estimator_turning_point, is_monotone_estimator
- povm_likelihood, evidence_nq, conditional_fidelity_nq, conditional_fidelity_series
- optimize_estimator, estimator_curve, small_angle_gain, mean_fidelity_nq
- fidelity_do_nothing_nq, identity_estimator_fidelity, asymptotic_fidelity
- uniform_prior_benchmarks
- benchmark_fidelity, fidelity_curve
"""

from .nested_sums import NestedSums, conditional_fidelity_series
from .nqubit_povm import (
    EstimatorCurve,
    FidelityCurve,
    PosteriorKernel,
    Strategy,
    asymptotic_fidelity,
    benchmark_fidelity,
    conditional_fidelity_nq,
    estimator_curve,
    evidence_nq,
    fidelity_curve,
    fidelity_do_nothing_nq,
    identity_estimator_fidelity,
    mean_fidelity_nq,
    optimize_estimator,
    povm_likelihood,
    small_angle_gain,
    uniform_prior_benchmarks,
)
from .qubit_povm import (
    EstimatorVariant,
    PovmClosedForm,
    conditional_fidelity_1q,
    estimator_turning_point,
    evidence_1q,
    is_monotone_estimator,
    mean_fidelity_1q,
    mean_fidelity_1q_closed,
    mean_fidelity_1q_quadrature,
    optimal_estimator_1q,
    small_angle_gain_1q,
)
from .qubit_projective import (
    AxisBenchmark,
    crossover_excitation,
    fidelity_axis,
    fidelity_do_nothing,
    fidelity_equatorial,
    fidelity_no_prior,
    optimal_guess_equatorial,
)

__all__ = [
    "AxisBenchmark",
    "PovmClosedForm",
    "EstimatorVariant",
    "PosteriorKernel",
    "NestedSums",
    "EstimatorCurve",
    "FidelityCurve",
    "Strategy",
    "fidelity_do_nothing",
    "fidelity_no_prior",
    "fidelity_equatorial",
    "fidelity_axis",
    "optimal_guess_equatorial",
    "crossover_excitation",
    "evidence_1q",
    "optimal_estimator_1q",
    "conditional_fidelity_1q",
    "small_angle_gain_1q",
    "mean_fidelity_1q",
    "mean_fidelity_1q_closed",
    "mean_fidelity_1q_quadrature",
    "estimator_turning_point",
    "is_monotone_estimator",
    "povm_likelihood",
    "evidence_nq",
    "conditional_fidelity_nq",
    "conditional_fidelity_series",
    "optimize_estimator",
    "estimator_curve",
    "small_angle_gain",
    "mean_fidelity_nq",
    "fidelity_do_nothing_nq",
    "identity_estimator_fidelity",
    "asymptotic_fidelity",
    "uniform_prior_benchmarks",
    "benchmark_fidelity",
    "fidelity_curve",
]

__version__ = "0.1.0"
__author__ = "Gutto França"
__email__ = "guttolaudie@gmail.com"
