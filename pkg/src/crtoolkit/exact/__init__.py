from crtoolkit.exact.scalars import (
    rational,
    formatRational,
    gaussian,
    parseGaussian,
    formatGaussian,
)
from crtoolkit.exact.matrices import (
    toMatrix,
    toVector,
    parseMatrix,
    parseVector,
    charpoly,
    krylov,
)
from crtoolkit.exact.subspaces import (
    Subspace,
    kernel,
    image,
    intersect,
    sum_spaces,
    contains,
    real_points,
    complex_span,
)
from crtoolkit.exact.polynomials import (
    distinct_root_count,
    multiplicity_profile,
    parsePolynomial,
    formatPolynomial,
)
