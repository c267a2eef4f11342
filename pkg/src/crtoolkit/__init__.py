__name__ = "crtoolkit"
__title__ = "CR Toolkit"

__version__ = "0.1.0"

__description__ = "Exact invariants of tube manifolds, cyclic endomorphisms and CR algebras"
__summary__ = """\
Exact invariants of tube manifolds, cyclic endomorphisms and CR algebras
"""

__license__ = "MIT License"

__author__ = "crtoolkit contributors"


from crtoolkit.settings import Settings
from crtoolkit.errors import (
    CRToolkitError,
    InvalidInput,
    DimensionError,
    InvalidDatum,
    PreconditionError,
    OutOfRange,
)

# Affine tubes
from crtoolkit.tube.fields import AffineField, TubeDatum
from crtoolkit.tube.kernels import (
    kernel_chain,
    degeneracy_degree,
    is_minimal_sufficient,
    levi_form,
    conical_check,
)
from crtoolkit.tube.hypersurfaces import invariance_witness, hypersurface_levi_kernel

# Cyclic endomorphisms
from crtoolkit.endo.endomorphisms import (
    Endo,
    is_cyclic,
    is_arithmetic_progression,
    locally_equivalent,
    globally_equivalent,
    stability_order,
    expected_aut_dim,
)
from crtoolkit.endo.moduli import Modulus, modulus, classify3
from crtoolkit.endo.construction import make_tube

# CR algebras
from crtoolkit.cralgebra.lie import RealLieAlgebra
from crtoolkit.cralgebra.cralgebras import (
    CRAlgebra,
    condition_report,
    nondegeneracy_degree_alg,
)
from crtoolkit.cralgebra.bridge import tube_to_cralgebra

# Catalog
from crtoolkit.catalog.entries import Catalog, CatalogEntry, entry
from crtoolkit.catalog.verify import verify, inequivalence_matrix
