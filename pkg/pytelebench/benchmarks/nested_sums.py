"""
Closed nested-sum evaluation of the N-qubit conditional fidelity.

Expanding both N-th powers binomially, integrating the azimuth with

    int_0^{2 pi} cos^{2m}(psi) d psi = 2 pi C(2m, m) / 2^{2m}

and substituting c = cos(theta) reduces everything to the moments

    J(q) = int_{-1}^{1} c^q e^{k c} dc
         = q! sum_p (-1)^p / (k^{p+1} (q-p)!) [e^k - (-1)^{q-p} e^{-k}].

The alternating p-sum cancels catastrophically as k -> 0 and the binomial weights grow
like (2N)!, so the whole evaluation runs in mpmath at SERIES_DPS digits, sums with
``mpmath.fsum`` and is refused outside k >= 1, N <= 12. It exists to cross-check the
quadrature path, not to replace it.
"""

import logging
import math
from functools import lru_cache

import mpmath

from pytelebench.utils.config import SERIES_DPS, SERIES_MAX_PARTICLES, SERIES_MIN_KAPPA
from pytelebench.utils.exceptions import DomainError, SeriesStabilityError


@lru_cache(maxsize=None)
def factorial_table(n_max: int) -> tuple[int, ...]:
    """Exact factorials 0!, ..., n_max!."""
    return tuple(math.factorial(i) for i in range(n_max + 1))


@lru_cache(maxsize=None)
def binomial_table(n_max: int) -> tuple[tuple[int, ...], ...]:
    """Exact binomial rows C(n, 0..n) for n = 0..n_max."""
    return tuple(tuple(math.comb(n, k) for k in range(n + 1)) for n in range(n_max + 1))


def check_series_regime(n_particles: int, kappa: float) -> None:
    """
    Raises:
        DomainError: If N < 1 or kappa is not positive.
        SeriesStabilityError: If kappa < 1 or N > 12.
    """
    if n_particles < 1 or not kappa > 0.0:
        logging.error(f"Invalid series arguments N = {n_particles}, kappa = {kappa}.")
        raise DomainError(f"Need N >= 1 and kappa > 0, got N={n_particles}, {kappa}")
    if kappa < SERIES_MIN_KAPPA or n_particles > SERIES_MAX_PARTICLES:
        logging.error(
            f"Nested sums refused for N = {n_particles}, kappa = {kappa}: "
            f"stable only for kappa >= {SERIES_MIN_KAPPA}, N <= {SERIES_MAX_PARTICLES}."
        )
        raise SeriesStabilityError(
            f"Nested sums are unstable for N={n_particles}, kappa={kappa}; "
            f"use kappa >= {SERIES_MIN_KAPPA} and N <= {SERIES_MAX_PARTICLES}"
        )


class NestedSums:
    """
    Moment tables and nested sums for one (N, kappa) pair.

    Attributes:
        n_particles (int): Number of qubits N.
        kappa (mpmath.mpf): Prior concentration.

    Methods:
        moment(q, m) -> mpf: int c^q (1 - c^2)^m e^{k c} dc over [-1, 1].
        evidence_sum(theta_m) -> mpf: Azimuth-integrated evidence sum E'.
        fidelity_sum(theta_m, theta_tilde) -> mpf: Azimuth-integrated numerator S.
        conditional_fidelity(theta_m, theta_tilde) -> float: S / (2^{3N} E').
    """

    def __init__(self, n_particles: int, kappa: float):
        check_series_regime(n_particles, kappa)
        self.n_particles = n_particles
        self._fact = factorial_table(4 * n_particles + 2)
        self._binom = binomial_table(2 * n_particles)
        with mpmath.workdps(SERIES_DPS):
            self.kappa = mpmath.mpf(kappa)
            self._exp_plus = mpmath.exp(self.kappa)
            self._exp_minus = mpmath.exp(-self.kappa)
            self._j = [self._raw_moment(q) for q in range(2 * n_particles + 1)]
        self._k: dict[tuple[int, int], mpmath.mpf] = {}

    def _raw_moment(self, q: int) -> mpmath.mpf:
        terms = []
        for p in range(q + 1):
            falling = self._fact[q] // self._fact[q - p]
            edge = self._exp_plus - (-1) ** (q - p) * self._exp_minus
            terms.append((-1) ** p * falling * edge / self.kappa ** (p + 1))
        return mpmath.fsum(terms)

    def moment(self, q: int, m: int) -> mpmath.mpf:
        key = (q, m)
        if key not in self._k:
            with mpmath.workdps(SERIES_DPS):
                row = self._binom[m]
                self._k[key] = mpmath.fsum(
                    (-1) ** j * row[j] * self._j[q + 2 * j] for j in range(m + 1)
                )
        return self._k[key]

    def evidence_sum(self, theta_m: float) -> mpmath.mpf:
        n = self.n_particles
        with mpmath.workdps(SERIES_DPS):
            cos_m, sin_m = mpmath.cos(theta_m), mpmath.sin(theta_m)
            terms = []
            for m in range(n // 2 + 1):
                k = n - 2 * m
                weight = (
                    self._binom[n][k]
                    * mpmath.mpf(self._binom[2 * m][m])
                    / 2 ** (2 * m)
                    * sin_m ** (2 * m)
                )
                inner = mpmath.fsum(
                    self._binom[k][q] * cos_m**q * self.moment(q, m)
                    for q in range(k + 1)
                )
                terms.append(weight * inner)
            return mpmath.fsum(terms)

    def fidelity_sum(self, theta_m: float, theta_tilde: float) -> mpmath.mpf:
        n = self.n_particles
        with mpmath.workdps(SERIES_DPS):
            cos_m, sin_m = mpmath.cos(theta_m), mpmath.sin(theta_m)
            cos_t, sin_t = mpmath.cos(theta_tilde), mpmath.sin(theta_tilde)
            terms = []
            for s in range(n + 1):
                outer = 2 ** (2 * s) * self._binom[2 * n - 2 * s][n - s]
                span = min(s, n - s)
                for r in range(-span, span + 1):
                    weight = (
                        outer
                        * self._binom[n][s + r]
                        * self._binom[n][s - r]
                        * sin_t ** (n - s - r)
                        * sin_m ** (n - s + r)
                    )
                    inner = mpmath.fsum(
                        self._binom[s + r][u]
                        * cos_t**u
                        * self._binom[s - r][v]
                        * cos_m**v
                        * self.moment(u + v, n - s)
                        for u in range(s + r + 1)
                        for v in range(s - r + 1)
                    )
                    terms.append(weight * inner)
            return mpmath.fsum(terms)

    def conditional_fidelity(self, theta_m: float, theta_tilde: float) -> float:
        with mpmath.workdps(SERIES_DPS):
            numerator = self.fidelity_sum(theta_m, theta_tilde)
            denominator = 2 ** (3 * self.n_particles) * self.evidence_sum(theta_m)
            return float(numerator / denominator)

    def evidence(self, theta_m: float) -> float:
        """Outcome density per steradian, (N+1) xi E' / 2^{N+1}."""
        with mpmath.workdps(SERIES_DPS):
            xi = self.kappa / (4 * mpmath.pi * mpmath.sinh(self.kappa))
            value = (self.n_particles + 1) * xi * self.evidence_sum(theta_m)
            return float(value / 2 ** (self.n_particles + 1))


def conditional_fidelity_series(
    n_particles: int, kappa: float, theta_m: float, theta_tilde: float
) -> float:
    """Conditional fidelity from the nested sums (kappa >= 1, N <= 12 only)."""
    return NestedSums(n_particles, kappa).conditional_fidelity(theta_m, theta_tilde)
