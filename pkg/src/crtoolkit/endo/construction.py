import logging
from typing import Optional, Sequence

from sympy import ImmutableMatrix, Rational

from crtoolkit.endo.endomorphisms import Endo, is_cyclic_pair
from crtoolkit.errors import PreconditionError
from crtoolkit.exact.matrices import identity
from crtoolkit.exact.scalars import formatRational
from crtoolkit.tube.fields import AffineField, TubeDatum


logger = logging.getLogger("crtoolkit.endo.construction")


def power_labels(d: int) -> tuple:
    labels = ["id", "phi"] + [f"phi^{k}" for k in range(2, d)]
    return tuple(labels[:d])


def make_tube(
    phi: Endo, d: int, a: Sequence[Rational], name: Optional[str] = None
) -> TubeDatum:
    """Tube datum spanned by the linear fields x ↦ φᵏx, 0 ≤ k < d, at base point a"""
    if not 1 < d < phi.n:
        raise PreconditionError(f"Expected 1 < d < n :: d={d}, n={phi.n}")
    a = tuple(Rational(x) for x in a)
    if not is_cyclic_pair(phi, a):
        raise PreconditionError(
            f"Base point is not cyclic :: {[formatRational(x) for x in a]}"
        )
    powers = [identity(phi.n)]
    for _ in range(d - 1):
        powers.append(ImmutableMatrix(powers[-1] * phi.matrix))
    fields = tuple(AffineField(p) for p in powers)
    datum = TubeDatum(
        phi.n, a, fields, name=name or phi.name, labels=power_labels(d)
    )
    logger.debug(f"Constructed tube :: {datum}")
    return datum
