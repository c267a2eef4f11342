"""CR-algebra of a tube M = F + iRⁿ from an affine tube datum.

g is spanned by the fields ξ of the datum, extended holomorphically, and the
imaginary translations τₖ = i·eₖ. The isotropy at the base point consists of
q_ξ = ξ + i·Σₖ ξ(a)ₖ τₖ, which vanish at a.
"""

import logging

from sympy import Matrix, Rational

from crtoolkit.cralgebra.cralgebras import CRAlgebra
from crtoolkit.cralgebra.lie import RealLieAlgebra
from crtoolkit.errors import InvalidDatum
from crtoolkit.exact.subspaces import complex_span_real
from crtoolkit.tube.fields import TubeDatum


logger = logging.getLogger("crtoolkit.cralgebra.bridge")


def field_brackets(td: TubeDatum) -> dict:
    """{(i, j): coefficients of [ξᵢ, ξⱼ] in the fields}; InvalidDatum if not closed"""
    fields = td.fields
    span = Matrix([list(f.flatten()) for f in fields]).T
    brackets = {}
    for i in range(len(fields)):
        for j in range(i + 1, len(fields)):
            target = fields[i].bracket(fields[j]).flatten()
            try:
                solution, _ = span.gauss_jordan_solve(Matrix(list(target)))
            except ValueError:
                raise InvalidDatum(
                    f"Fields are not closed under the bracket :: [{i},{j}]"
                )
            brackets[(i, j)] = tuple(solution)
    return brackets


def tube_to_cralgebra(td: TubeDatum) -> CRAlgebra:
    m, n = len(td.fields), td.n
    dim = m + n
    brackets = {}
    for (i, j), coefficients in field_brackets(td).items():
        brackets[(i, j)] = tuple(coefficients) + tuple(Rational(0) for _ in range(n))

    # [ξ, τₖ] = −Σₘ A[m, k] τₘ with A the linear part of ξ
    for i, f in enumerate(td.fields):
        for k in range(n):
            coefficients = [Rational(0)] * dim
            for row in range(n):
                coefficients[m + row] = -f.linear[row, k]
            if any(c != 0 for c in coefficients):
                brackets[(i, m + k)] = tuple(coefficients)

    labels = td.labels or tuple(f"xi{i + 1}" for i in range(m))
    labels = tuple(labels) + tuple(f"tau{k + 1}" for k in range(n))
    g = RealLieAlgebra.fromBrackets(dim, brackets, labels)

    isotropy = []
    for i, value in enumerate(td.values()):
        re = [Rational(0)] * dim
        im = [Rational(0)] * dim
        re[i] = Rational(1)
        for k in range(n):
            im[m + k] = value[k]
        isotropy.append(tuple(re) + tuple(im))
    q = complex_span_real(isotropy, dim)

    cra = CRAlgebra(g, q, td.name)
    logger.debug(f"Bridged tube datum :: {td} -> {cra}")
    return cra
