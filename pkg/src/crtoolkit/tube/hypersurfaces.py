"""Defining-equation checks: Lie derivatives, invariance witnesses and the
first Levi kernel of a hypersurface read off the Hessian."""

import logging
from typing import Sequence

from sympy import ImmutableMatrix, Poly, Rational

from crtoolkit.errors import DimensionError, PreconditionError
from crtoolkit.exact.matrices import apply, formatVector
from crtoolkit.exact.polynomials import evaluate, ideal_contains
from crtoolkit.exact.subspaces import Subspace, constrain, kernel
from crtoolkit.tube.fields import AffineField


logger = logging.getLogger("crtoolkit.tube.hypersurfaces")


def lie_derivative(p: Poly, xi: AffineField) -> Poly:
    return xi.derive(p)


def invariance_witness(p: Poly, xi: AffineField) -> bool:
    """True iff p divides L_ξ p"""
    derivative = lie_derivative(p, xi)
    if derivative.is_zero:
        return True
    if p.is_zero:
        return False
    # {p} is a Groebner basis of (p), so the remainder decides divisibility
    return derivative.rem(p).is_zero


def ideal_invariance_witness(ps: Sequence[Poly], xi: AffineField) -> bool:
    """True iff L_ξ maps every p into the ideal (ps)"""
    return all(ideal_contains(ps, lie_derivative(p, xi)) for p in ps)


def gradient(p: Poly, point: Sequence[Rational]) -> tuple:
    if len(point) != len(p.gens):
        raise DimensionError(
            f"Point of length {len(point)} for polynomial in {len(p.gens)} variables"
        )
    return tuple(evaluate(p.diff(x), point) for x in p.gens)


def hessian(p: Poly, point: Sequence[Rational]) -> ImmutableMatrix:
    gens = p.gens
    return ImmutableMatrix(
        [[evaluate(p.diff(x).diff(y), point) for y in gens] for x in gens]
    )


def hypersurface_levi_kernel(p: Poly, a: Sequence[Rational]) -> Subspace:
    """{w ∈ T_a : Hess p(a)(v, w) = 0 for all v ∈ T_a} with T_a = ker ∇p(a)"""
    if evaluate(p, a) != 0:
        raise PreconditionError(f"Polynomial does not vanish at :: {formatVector(a)}")
    grad = gradient(p, a)
    if all(x == 0 for x in grad):
        raise PreconditionError(f"Singular point :: {formatVector(a)}")
    n = len(grad)
    tangent = kernel(ImmutableMatrix([list(grad)]))
    hess = hessian(p, a)
    # Hess(·, w) vanishes on T_a exactly when Hess·w is a multiple of ∇p(a)
    normal = Subspace.span([grad], n)
    result = constrain(tangent, [lambda w: apply(hess, w)], normal)
    logger.debug(f"Hypersurface Levi kernel :: dim {result.dim}")
    return result
