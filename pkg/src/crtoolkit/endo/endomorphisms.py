import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Any, Optional, Sequence

import numpy as np
from sympy import ImmutableMatrix, Poly, Rational
from sympy.polys.domains import QQ
from yaml import safe_load

from crtoolkit.endo.consts import CYCLIC_SEARCH_RANGE
from crtoolkit.errors import DimensionError, InvalidInput, PreconditionError
from crtoolkit.exact.matrices import (
    X,
    Vector,
    charpoly,
    flatten,
    formatMatrix,
    identity,
    krylov,
    parseMatrix,
    rank,
)
from crtoolkit.exact.polynomials import distinct_root_count
from crtoolkit.exact.scalars import formatRational, sign
from crtoolkit.settings import Settings


logger = logging.getLogger("crtoolkit.endo.endomorphisms")


@dataclass(frozen=True)
class Endo:
    matrix: ImmutableMatrix
    name: Optional[str] = None

    def __post_init__(self):
        if self.matrix.rows != self.matrix.cols:
            raise DimensionError(
                f"Endomorphism must be square :: {self.matrix.rows}x{self.matrix.cols}"
            )

    def __str__(self) -> str:
        if self.name:
            return f"Endo('{self.name}', n={self.n})"
        return f"Endo(n={self.n})"

    def __repr__(self) -> str:
        return self.__str__()

    @property
    def n(self) -> int:
        return self.matrix.rows

    @property
    def trace(self) -> Rational:
        return Rational(self.matrix.trace())

    def is_trace_free(self) -> bool:
        return self.trace == 0

    def scaled(self, r: Rational) -> "Endo":
        return Endo(ImmutableMatrix(r * self.matrix), self.name)

    def conjugated(self, g: ImmutableMatrix) -> "Endo":
        """g·φ·g⁻¹"""
        return Endo(ImmutableMatrix(g * self.matrix * g.inv()), self.name)

    @staticmethod
    def fromDict(data: Any, pointer: str = "") -> "Endo":
        if not isinstance(data, dict):
            raise InvalidInput("Expected an endomorphism object", pointer)
        matrix = parseMatrix(data.get("matrix"), f"{pointer}/matrix", square=True)
        return Endo(matrix, data.get("name"))

    @staticmethod
    def load(path: str) -> "Endo":
        with open(path, "r") as handle:
            data = safe_load(handle)
        logger.debug(f"Loaded endomorphism :: {path}")
        return Endo.fromDict(data)

    def toDict(self) -> dict:
        data = {"matrix": formatMatrix(self.matrix)}
        if self.name:
            data["name"] = self.name
        return data


@dataclass(frozen=True)
class SigmaInvariants:
    """σ₂…σₙ of a trace-free φ, with χ_φ = Xⁿ + Σⱼ (−1)ʲ σⱼ X^{n−j}"""

    n: int
    sigma: tuple

    def __getitem__(self, j: int) -> Rational:
        if j == 1:
            return Rational(0)
        if j < 1 or j > self.n:
            raise IndexError(f"σ index out of range :: {j}")
        return self.sigma[j - 2]

    @property
    def is_nilpotent(self) -> bool:
        return all(s == 0 for s in self.sigma)

    @property
    def odd_vanish(self) -> bool:
        return all(self[j] == 0 for j in range(3, self.n + 1, 2))

    def toDict(self) -> dict:
        return {f"sigma{j}": formatRational(self[j]) for j in range(2, self.n + 1)}


def _check_pair(phi: Endo, a: Sequence[Rational]) -> None:
    if len(a) != phi.n:
        raise DimensionError(f"Vector of length {len(a)} for a {phi.n}x{phi.n} endomorphism")


def is_cyclic_pair(phi: Endo, a: Sequence[Rational]) -> bool:
    """Krylov test: a, φa, …, φⁿ⁻¹a span Rⁿ"""
    _check_pair(phi, a)
    return rank(krylov(phi.matrix, a, phi.n)) == phi.n


def is_cyclic(phi: Endo) -> bool:
    """Minimal polynomial equals χ_φ, i.e. I, φ, …, φⁿ⁻¹ are independent"""
    powers = [identity(phi.n)]
    for _ in range(phi.n - 1):
        powers.append(powers[-1] * phi.matrix)
    return rank([flatten(p) for p in powers]) == phi.n


def find_cyclic_vector(phi: Endo) -> Optional[Vector]:
    if not is_cyclic(phi):
        return None
    n = phi.n
    unit = [tuple(Rational(1 if i == j else 0) for j in range(n)) for i in range(n)]
    for candidate in unit:
        if is_cyclic_pair(phi, candidate):
            return candidate
    for u, w in combinations(unit, 2):
        candidate = tuple(x + y for x, y in zip(u, w))
        if is_cyclic_pair(phi, candidate):
            return candidate

    logger.warning(f"No structured cyclic vector, trying random ones :: {phi}")
    rng = np.random.default_rng(Settings.seed)
    low, high = CYCLIC_SEARCH_RANGE
    for _ in range(Settings.cyclic_attempts):
        candidate = tuple(Rational(int(x)) for x in rng.integers(low, high, size=n))
        if is_cyclic_pair(phi, candidate):
            return candidate
    raise PreconditionError(
        f"No cyclic vector found within {Settings.cyclic_attempts} attempts :: {phi}"
    )


def trace_free(phi: Endo) -> Endo:
    """φ − (tr φ / n)·Id"""
    shift = phi.trace / phi.n
    if shift == 0:
        return phi
    return Endo(ImmutableMatrix(phi.matrix - shift * identity(phi.n)), phi.name)


def _sigma_from_poly(p: Poly) -> list:
    coefficients = p.all_coeffs()
    return [(-1) ** j * Rational(c) for j, c in enumerate(coefficients)]


def sigma_invariants(phi: Endo) -> SigmaInvariants:
    if not phi.is_trace_free():
        raise PreconditionError(
            f"σ invariants need a trace-free endomorphism :: trace {formatRational(phi.trace)}"
        )
    sigma = _sigma_from_poly(charpoly(phi.matrix))
    return SigmaInvariants(phi.n, tuple(sigma[2:]))


@lru_cache(maxsize=None)
def progression_constants(n: int) -> tuple:
    """(c₀, c₁, …, cₙ): elementary symmetric functions of k − (n−1)/2, k = 0..n−1"""
    p = Poly(1, X, domain=QQ)
    for k in range(n):
        p = p * Poly(X - (Rational(k) - Rational(n - 1, 2)), X, domain=QQ)
    return tuple(_sigma_from_poly(p))


def _is_progression(sigma: SigmaInvariants) -> bool:
    if sigma.is_nilpotent:
        return True
    if not sigma.odd_vanish:
        return False
    c = progression_constants(sigma.n)
    for k in range(2, sigma.n // 2 + 1):
        if sigma[2 * k] * c[2] ** k != sigma[2] ** k * c[2 * k]:
            return False
    return True


def is_arithmetic_progression(phi: Endo) -> bool:
    """Exact test whether the characteristic roots form an arithmetic progression.

    Trace-free progressions are {(k − (n−1)/2)·β}, so their σⱼ equal βʲ·cⱼ.
    The roots form one exactly when every odd σⱼ vanishes and
    σ₂ₖ·c₂ᵏ = σ₂ᵏ·c₂ₖ for 2k ≤ n.
    """
    if phi.n <= 2:
        return True
    return _is_progression(sigma_invariants(trace_free(phi)))


def require_cyclic(phi: Endo) -> None:
    if not is_cyclic(phi):
        raise PreconditionError(f"Endomorphism is not cyclic :: {phi}")


def general_position(phi: Endo, d: int) -> bool:
    require_cyclic(phi)
    if not 1 < d < phi.n:
        raise PreconditionError(f"Expected 1 < d < n :: d={d}, n={phi.n}")
    if d == 2:
        return not is_arithmetic_progression(phi)
    return distinct_root_count(charpoly(phi.matrix)) > d


def _scales(sigma: SigmaInvariants, other: SigmaInvariants) -> bool:
    """Is there a real r ≠ 0 with σ′ⱼ = rʲσⱼ for every j?"""
    if sigma.n != other.n:
        return False
    n = sigma.n
    nonzero = [j for j in range(2, n + 1) if sigma[j] != 0]
    if not nonzero:
        return other.is_nilpotent
    j0 = nonzero[0]
    if other[j0] == 0:
        return False
    t = other[j0] / sigma[j0]
    for j in range(2, n + 1):
        if other[j] ** j0 != t ** j * sigma[j] ** j0:
            return False
    if j0 % 2 == 1:
        return True
    if t <= 0:
        return False
    for s in (1, -1):
        if all(
            sign(other[j]) == s ** j * sign(sigma[j]) for j in nonzero
        ):
            return True
    return False


def locally_equivalent(phi: Endo, other: Endo) -> bool:
    if phi.n != other.n:
        raise DimensionError(f"Endomorphisms of sizes {phi.n} and {other.n}")
    require_cyclic(phi)
    require_cyclic(other)
    if is_arithmetic_progression(phi) and is_arithmetic_progression(other):
        return True
    return _scales(
        sigma_invariants(trace_free(phi)), sigma_invariants(trace_free(other))
    )


def globally_equivalent(phi: Endo, other: Endo) -> bool:
    """g·φ′·g⁻¹ = r·φ for some invertible g and real r ≠ 0.

    Cyclic endomorphisms with equal characteristic polynomials are similar to
    the same companion matrix, so the σ scaling test decides this.
    """
    if phi.n != other.n:
        raise DimensionError(f"Endomorphisms of sizes {phi.n} and {other.n}")
    require_cyclic(phi)
    require_cyclic(other)
    return _scales(
        sigma_invariants(trace_free(phi)), sigma_invariants(trace_free(other))
    )


@dataclass(frozen=True)
class ScaleInvariants:
    """Complete invariant of σ under σⱼ ↦ rʲσⱼ.

    `j0` is None for the nilpotent class. Ratios are σⱼ^{j0}/σ_{j0}ʲ for
    j > j0. Sign data is only recorded for even j0, where ±r give the same
    scale factor.
    """

    n: int
    j0: Optional[int]
    ratios: tuple = ()
    leading_sign: int = 0
    even_signs: tuple = ()
    odd_signs: tuple = ()

    def toDict(self) -> dict:
        return {
            "n": self.n,
            "j0": self.j0,
            "ratios": [formatRational(r) for r in self.ratios],
            "leading_sign": self.leading_sign,
            "even_signs": list(self.even_signs),
            "odd_signs": list(self.odd_signs),
        }


def scale_invariants(phi: Endo) -> ScaleInvariants:
    require_cyclic(phi)
    sigma = sigma_invariants(trace_free(phi))
    n = sigma.n
    nonzero = [j for j in range(2, n + 1) if sigma[j] != 0]
    if not nonzero:
        return ScaleInvariants(n, None)
    j0 = nonzero[0]
    ratios = tuple(
        sigma[j] ** j0 / sigma[j0] ** j for j in range(j0 + 1, n + 1)
    )
    if j0 % 2 == 1:
        return ScaleInvariants(n, j0, ratios)

    even_signs = tuple(sign(sigma[j]) for j in range(2, n + 1, 2))
    odd = [sign(sigma[j]) for j in range(3, n + 1, 2)]
    first = next((s for s in odd if s != 0), 1)
    odd_signs = tuple(s * first for s in odd)
    return ScaleInvariants(n, j0, ratios, sign(sigma[j0]), even_signs, odd_signs)


def stability_order(phi: Endo, d: int) -> int:
    """Order of the stability group at the base point: 2 iff the spectrum is symmetric"""
    if 2 * d > phi.n + 1:
        raise PreconditionError(f"Stability order needs 2d ≤ n + 1 :: d={d}, n={phi.n}")
    require_cyclic(phi)
    if not general_position(phi, d):
        raise PreconditionError(f"Endomorphism is not in general position :: d={d}")
    sigma = sigma_invariants(trace_free(phi))
    return 2 if sigma.odd_vanish else 1


def expected_aut_dim(phi: Endo) -> int:
    require_cyclic(phi)
    n = phi.n
    sigma = sigma_invariants(trace_free(phi))
    if sigma.is_nilpotent:
        return n + 3
    if n >= 2 and _is_progression(sigma):
        c = progression_constants(n)
        distinct = distinct_root_count(charpoly(phi.matrix)) == n
        if distinct and sigma[2] / c[2] < 0:
            return n + 4
    return n + 2
