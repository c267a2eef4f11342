"""Numeric oracles.

Nothing in the exact code paths imports this module; it exists so tests and
reports can cross-check exact answers against floating point roots.
"""

import logging
from typing import Optional, Sequence

import numpy as np
from sympy import ImmutableMatrix

from crtoolkit.settings import Settings


logger = logging.getLogger("crtoolkit.exact.approx")


def toArray(matrix: ImmutableMatrix) -> np.ndarray:
    return np.array(
        [[float(matrix[i, j]) for j in range(matrix.cols)] for i in range(matrix.rows)],
        dtype=float,
    )


def eigenvalues(matrix: ImmutableMatrix) -> np.ndarray:
    return np.linalg.eigvals(toArray(matrix))


def _scale(roots: np.ndarray) -> float:
    if len(roots) == 0:
        return 1.0
    return max(1.0, float(np.max(np.abs(roots))))


def clusters(roots: Sequence[complex], tolerance: Optional[float] = None) -> list:
    """Group roots closer than the (scaled) tolerance, single linkage"""
    tolerance = Settings.tolerance if tolerance is None else tolerance
    roots = np.asarray(roots, dtype=complex)
    bound = tolerance * _scale(roots)

    parent = list(range(len(roots)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            if abs(roots[i] - roots[j]) <= bound:
                parent[find(i)] = find(j)

    groups = {}
    for i in range(len(roots)):
        groups.setdefault(find(i), []).append(roots[i])
    return list(groups.values())


def multiplicity_profile_numeric(
    roots: Sequence[complex], tolerance: Optional[float] = None
) -> dict:
    profile = {}
    for group in clusters(roots, tolerance):
        profile[len(group)] = profile.get(len(group), 0) + 1
    return profile


def _matches(roots: np.ndarray, targets: np.ndarray, bound: float) -> bool:
    remaining = list(roots)
    for target in targets:
        distances = [abs(r - target) for r in remaining]
        best = int(np.argmin(distances))
        if distances[best] > bound:
            return False
        remaining.pop(best)
    return True


def is_progression_numeric(
    roots: Sequence[complex], tolerance: Optional[float] = None
) -> bool:
    """Multiset test: roots = {center + (k − (n−1)/2)·β : k = 0..n−1}.

    Every progression has its two end points among the roots, so β is
    searched among (rᵢ − rⱼ)/(n − 1) over all ordered pairs.
    """
    tolerance = Settings.tolerance if tolerance is None else tolerance
    roots = np.asarray(roots, dtype=complex)
    n = len(roots)
    if n <= 2:
        return True
    bound = tolerance * _scale(roots)
    center = complex(np.mean(roots))
    offsets = np.arange(n) - (n - 1) / 2.0

    if _matches(roots, np.full(n, center), bound):
        return True

    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            step = (roots[i] - roots[j]) / (n - 1)
            if abs(step) <= bound:
                continue
            if _matches(roots, center + offsets * step, bound):
                logger.debug(f"Numeric progression step :: {step}")
                return True
    return False
