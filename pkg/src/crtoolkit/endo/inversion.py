import logging
from typing import Callable

import numpy as np
from scipy.optimize import brentq
from sympy import Rational

from crtoolkit.endo.consts import EX, EY, INVERSION_GRID, INVERSION_RANGES, MU0
from crtoolkit.endo.moduli import Modulus, ex_modulus, ey_modulus
from crtoolkit.errors import InvalidInput, OutOfRange
from crtoolkit.exact.scalars import formatRational, rational
from crtoolkit.settings import Settings


logger = logging.getLogger("crtoolkit.endo.inversion")


def _forward(cls: str) -> Callable[[float], Modulus]:
    """Exact modulus of the family member with parameter x"""
    if cls == EY:
        return lambda x: ey_modulus(Rational(x))
    if cls == EX:
        return lambda x: ex_modulus(Rational(x))
    raise InvalidInput(f"Only EY and EX moduli can be inverted :: {cls}")


def _grid(cls: str) -> np.ndarray:
    low, high = INVERSION_RANGES[cls]
    grid = np.geomspace(low, high, INVERSION_GRID)
    if cls == EX:
        # θ = 2 is the progression {0, 1, 2}
        grid = 2.0 + grid
    return grid


def invert_modulus(cls: str, target) -> float:
    """Family parameter (ω for EY, θ for EX) whose modulus equals `target`.

    Scans a geometric grid for a sign change of μ(x) − target, then refines it
    with Brent's method on the exact modulus evaluated at rational x.
    """
    forward = _forward(cls)
    target = rational(target)
    if cls == EY and not target < MU0:
        raise OutOfRange(f"EY moduli lie below 27/4 :: {formatRational(target)}")
    if cls == EX and not target > MU0:
        raise OutOfRange(f"EX moduli lie above 27/4 :: {formatRational(target)}")

    def residual(x: float) -> float:
        mu = forward(x)
        return float(mu.value - target)

    grid = _grid(cls)
    values = [residual(x) for x in grid]
    brackets = [
        (grid[i], grid[i + 1])
        for i in range(len(grid) - 1)
        if values[i] == 0 or values[i] * values[i + 1] < 0
    ]
    if not brackets:
        raise OutOfRange(
            f"No bracketing interval for {cls} modulus :: {formatRational(target)}"
        )
    if len(brackets) > 1:
        logger.warning(
            f"Multiple sign changes while inverting {cls} :: {len(brackets)}, using the first"
        )

    low, high = brackets[0]
    if residual(low) == 0:
        root = float(low)
    else:
        root = brentq(residual, low, high, xtol=1e-15, rtol=4 * np.finfo(float).eps)

    error = abs(forward(root).value - target)
    if error >= Settings.inversion_tolerance:
        logger.warning(f"Inversion residual above tolerance :: {float(error)}")
    logger.debug(f"Inverted {cls} modulus :: {formatRational(target)} -> {root}")
    return root
