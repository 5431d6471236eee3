import logging
import math
from collections.abc import Callable

import numpy as np
from numpy.typing import NDArray

from pytelebench.utils.config import ESTIMATOR_GRID_POINTS, GOLDEN_TOL
from pytelebench.utils.exceptions import NumericalError

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
INV_PHI_SQUARE = (3.0 - math.sqrt(5.0)) / 2.0

VectorObjective = Callable[[NDArray[np.float64]], NDArray[np.float64]]


def golden_section_max(
    func: Callable[[float], float], a: float, b: float, tol: float = GOLDEN_TOL
) -> tuple[float, float]:
    """
    Golden-section search for the maximum of a unimodal function on [a, b].

    One new evaluation per iteration; the bracket shrinks until b - a <= tol.

    Returns:
        tuple: (argmax, maximum).
    """
    h = b - a
    if h <= tol:
        x = 0.5 * (a + b)
        return x, func(x)

    n_steps = int(math.ceil(math.log(tol / h) / math.log(INV_PHI)))
    c = a + INV_PHI_SQUARE * h
    d = a + INV_PHI * h
    fc = func(c)
    fd = func(d)
    for _ in range(n_steps):
        h *= INV_PHI
        if fc > fd:
            b, d, fd = d, c, fc
            c = a + INV_PHI_SQUARE * h
            fc = func(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * h
            fd = func(d)

    return (c, fc) if fc > fd else (d, fd)


def grid_golden_max(
    func: VectorObjective,
    a: float,
    b: float,
    grid_points: int = ESTIMATOR_GRID_POINTS,
    tol: float = GOLDEN_TOL,
) -> tuple[float, float]:
    """
    Maximize ``func`` on [a, b]: coarse uniform grid, then golden-section refinement.

    The grid picks the best sample and the search runs on the bracket formed by its
    two neighbours, so a multi-modal objective is refined around its global peak.
    ``func`` is vectorised: it maps an array of abscissae to an array of values.

    Returns:
        tuple: (argmax, maximum). The grid optimum is kept if refinement does worse.
    """
    grid = np.linspace(a, b, grid_points)
    values = np.asarray(func(grid), dtype=float)
    if not np.all(np.isfinite(values)):
        logging.error(f"Objective returned non-finite values on [{a}, {b}].")
        raise NumericalError("Objective is not finite on the optimisation grid")

    best = int(np.argmax(values))
    lo = grid[max(best - 1, 0)]
    hi = grid[min(best + 1, grid_points - 1)]

    def scalar(x: float) -> float:
        return float(func(np.array([x]))[0])

    x_star, f_star = golden_section_max(scalar, lo, hi, tol)
    if f_star < values[best]:
        return float(grid[best]), float(values[best])
    return x_star, f_star
