"""
Gauss–Legendre quadrature used by every analytic benchmark.

Two refinement strategies are provided:

- ``adaptive_gauss_legendre`` bisects panels until the fixed-order estimate on a panel
  agrees with the sum over its two halves (h-refinement). Integrands may be
  vector-valued: ``func`` receives the node array of shape ``(n,)`` and returns an
  array of shape ``(..., n)``; the error test uses the largest component.
- ``converged_rule`` doubles the order of a single rule until the estimate settles
  (p-refinement) and hands back the nodes and weights so the same rule can be reused
  for a whole family of smooth integrands.
"""

import logging
import math
from collections.abc import Callable
from functools import lru_cache

import numpy as np
from numpy.typing import NDArray

from pytelebench.utils.config import QUADRATURE_MAX_DEPTH, QUADRATURE_ORDER
from pytelebench.utils.exceptions import DomainError, QuadratureError

Integrand = Callable[[NDArray[np.float64]], NDArray[np.float64]]


@lru_cache(maxsize=64)
def legendre_rule(order: int) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Nodes and weights of the ``order``-point rule on [-1, 1], cached read-only."""
    nodes, weights = np.polynomial.legendre.leggauss(order)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def scaled_rule(
    a: float, b: float, order: int
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    nodes, weights = legendre_rule(order)
    half = 0.5 * (b - a)
    return 0.5 * (a + b) + half * nodes, half * weights


def gauss_legendre(
    func: Integrand, a: float, b: float, order: int = QUADRATURE_ORDER
) -> NDArray[np.float64]:
    """Fixed-order Gauss–Legendre estimate of the integral of ``func`` over [a, b]."""
    x, w = scaled_rule(a, b, order)
    return np.asarray(func(x)) @ w


def _two_halves(
    func: Integrand, a: float, b: float, order: int
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    mid = 0.5 * (a + b)
    x_left, w_left = scaled_rule(a, mid, order)
    x_right, w_right = scaled_rule(mid, b, order)
    values = np.asarray(func(np.concatenate([x_left, x_right])))
    return values[..., :order] @ w_left, values[..., order:] @ w_right


def adaptive_gauss_legendre(
    func: Integrand,
    a: float,
    b: float,
    atol: float = 1e-10,
    rtol: float = 0.0,
    order: int = QUADRATURE_ORDER,
    max_depth: int = QUADRATURE_MAX_DEPTH,
) -> tuple[NDArray[np.float64] | float, float]:
    """
    Integrate ``func`` over [a, b] by panel bisection.

    Parameters:
        func: Vectorised integrand, nodes of shape (n,) to values of shape (..., n).
        a, b: Integration limits, a < b.
        atol: Absolute tolerance on the whole integral.
        rtol: Relative tolerance, measured against the coarsest estimate.
        order: Points per panel.
        max_depth: Maximum number of bisections of any panel.

    Returns:
        tuple: (integral, error estimate). The integral is a float for scalar
        integrands and an array for vector-valued ones.

    Raises:
        QuadratureError: If a panel reaches ``max_depth`` and the accumulated error
        estimate exceeds the tolerance.
    """
    if not b > a:
        logging.error(f"Empty integration range [{a}, {b}].")
        raise DomainError(f"Integration limits must satisfy a < b, got [{a}, {b}]")

    width = b - a
    coarse = gauss_legendre(func, a, b, order)
    tolerance = max(atol, rtol * float(np.max(np.abs(coarse))))

    pieces: list[NDArray[np.float64]] = []
    error = 0.0
    exhausted = False
    stack = [(a, b, coarse, 0)]
    while stack:
        lo, hi, whole, depth = stack.pop()
        left, right = _two_halves(func, lo, hi, order)
        refined = left + right
        local_error = float(np.max(np.abs(refined - whole)))
        if local_error <= tolerance * (hi - lo) / width:
            pieces.append(refined)
            error += local_error
        elif depth >= max_depth:
            pieces.append(refined)
            error += local_error
            exhausted = True
        else:
            mid = 0.5 * (lo + hi)
            stack.append((mid, hi, right, depth + 1))
            stack.append((lo, mid, left, depth + 1))

    total = np.sum(np.asarray(pieces), axis=0)
    if exhausted and error > tolerance:
        logging.error(
            f"Adaptive quadrature on [{a}, {b}] stopped at depth {max_depth} "
            f"with error estimate {error:.3e} > {tolerance:.3e}."
        )
        raise QuadratureError(
            "Adaptive Gauss-Legendre quadrature did not converge",
            estimate=float(np.max(np.abs(total))),
            error_estimate=error,
        )

    if np.ndim(total) == 0:
        return float(total), error
    return total, error


def converged_rule(
    func: Integrand,
    a: float,
    b: float,
    rtol: float,
    start_order: int = 32,
    max_order: int = 512,
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """
    Double the order of a single Gauss–Legendre rule until ``func`` integrates stably.

    Returns the nodes and weights of the first rule whose estimate agrees with the
    previous one to ``rtol`` relative to the largest component.

    Raises:
        QuadratureError: If ``max_order`` is reached without agreement.
    """
    order = start_order
    previous = gauss_legendre(func, a, b, order)
    change = math.inf
    while order < max_order:
        order *= 2
        current = gauss_legendre(func, a, b, order)
        scale = float(np.max(np.abs(current)))
        change = float(np.max(np.abs(current - previous)))
        if change <= rtol * scale or scale == 0.0:
            return scaled_rule(a, b, order)
        previous = current

    logging.error(f"Gauss-Legendre rule on [{a}, {b}] unsettled at order {order}.")
    raise QuadratureError(
        "Gauss-Legendre order doubling did not converge",
        estimate=float(np.max(np.abs(previous))),
        error_estimate=change,
    )
