import logging
from dataclasses import dataclass
from typing import Optional, Sequence

from sympy import Matrix, Rational

from crtoolkit.errors import PreconditionError
from crtoolkit.exact.matrices import Vector, apply, formatVector
from crtoolkit.exact.subspaces import Subspace, constrain
from crtoolkit.tube.fields import TubeDatum


logger = logging.getLogger("crtoolkit.tube.kernels")

DEGREE = "degree"
STABILIZED = "stabilized_nonzero"

HOLDS = "holds"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class KernelChain:
    """K⁰ = T_aF ⊃ K¹ ⊃ … ending at {0} or at a repeated nonzero space"""

    spaces: tuple
    verdict: str

    def __str__(self) -> str:
        return f"KernelChain({self.verdict}, dims={self.dims})"

    def __repr__(self) -> str:
        return self.__str__()

    @property
    def dims(self) -> list:
        return [space.dim for space in self.spaces]

    @property
    def degree(self) -> Optional[int]:
        if self.verdict == DEGREE:
            return len(self.spaces) - 1
        return None

    def toDict(self) -> dict:
        return {
            "verdict": self.verdict,
            "degree": self.degree,
            "dims": self.dims,
            "spaces": [space.toDict() for space in self.spaces],
        }


@dataclass(frozen=True)
class LeviValue:
    """ℓ(v, w) as a coset representative plus quotient coordinates"""

    representative: Vector
    coordinates: Vector
    complement: tuple

    @property
    def is_zero(self) -> bool:
        return all(x == 0 for x in self.coordinates)

    def toDict(self) -> dict:
        return {
            "representative": formatVector(self.representative),
            "coordinates": formatVector(self.coordinates),
            "complement": list(self.complement),
        }


def tangent_space(td: TubeDatum) -> Subspace:
    return Subspace.span(td.values(), td.n)


def _linear_maps(td: TubeDatum) -> list:
    return [lambda v, m=f.linear: apply(m, v) for f in td.fields]


def kernel_chain(td: TubeDatum) -> KernelChain:
    """K^{r+1} = {v ∈ K^r : ξ^lin v ∈ K^r for every field ξ}"""
    maps = _linear_maps(td)
    spaces = [tangent_space(td)]
    while True:
        current = spaces[-1]
        if current.dim == 0:
            verdict = DEGREE
            break
        following = constrain(current, maps, current)
        spaces.append(following)
        logger.debug(f"Kernel stage {len(spaces) - 1} :: dim {following.dim}")
        if following == current:
            verdict = STABILIZED
            break
    chain = KernelChain(tuple(spaces), verdict)
    logger.debug(f"Kernel chain :: {chain}")
    return chain


def degeneracy_degree(td: TubeDatum) -> Optional[int]:
    """Nondegeneracy degree k, or None when the chain stabilizes above {0}"""
    return kernel_chain(td).degree


def minimal_closure(td: TubeDatum) -> Subspace:
    """Smallest space containing T_aF and stable under every ξ^lin"""
    closure = tangent_space(td)
    while True:
        images = [apply(f.linear, v) for f in td.fields for v in closure.basis]
        grown = Subspace.span(closure.basis + tuple(images), td.n)
        if grown == closure:
            return closure
        closure = grown


def is_minimal_sufficient(td: TubeDatum) -> str:
    closure = minimal_closure(td)
    logger.debug(f"Minimality closure :: dim {closure.dim} of {td.n}")
    return HOLDS if closure.dim == td.n else INCONCLUSIVE


def _field_coefficients(td: TubeDatum, v: Sequence[Rational]) -> list:
    values = Matrix([list(value) for value in td.values()]).T
    solution, _ = values.gauss_jordan_solve(Matrix(list(v)))
    return list(solution)


def levi_form(td: TubeDatum, v: Sequence[Rational], w: Sequence[Rational]) -> LeviValue:
    """ℓ(v, w) = (Σ cⱼ ξⱼ^lin)(w) mod T_aF where v = Σ cⱼ ξⱼ(a)"""
    tangent = tangent_space(td)
    for name, vector in (("v", v), ("w", w)):
        if len(vector) != td.n or not tangent.contains(vector):
            raise PreconditionError(
                f"Levi form arguments must be tangent :: {name}={formatVector(vector)}"
            )
    coefficients = _field_coefficients(td, v)
    image = [Rational(0)] * td.n
    for c, f in zip(coefficients, td.fields):
        if c != 0:
            image = [x + c * y for x, y in zip(image, apply(f.linear, w))]
    representative = tangent.reduce(image)
    complement = tangent.complement_indices
    coordinates = tuple(representative[j] for j in complement)
    return LeviValue(representative, coordinates, complement)


def levi_matrices(td: TubeDatum) -> list:
    """One symmetric matrix per quotient coordinate, over the echelon basis of T_aF"""
    tangent = tangent_space(td)
    basis = tangent.basis
    complement = tangent.complement_indices
    entries = [
        [levi_form(td, u, w).coordinates for w in basis] for u in basis
    ]
    return [
        [[entries[i][j][k] for j in range(len(basis))] for i in range(len(basis))]
        for k in range(len(complement))
    ]


def levi_kernel(td: TubeDatum) -> Subspace:
    """First Levi kernel, i.e. the kernel chain entry K¹"""
    tangent = tangent_space(td)
    return constrain(tangent, _linear_maps(td), tangent)


def conical_check(td: TubeDatum) -> bool:
    return tangent_space(td).contains(td.basepoint)
