from crtoolkit.endo.endomorphisms import (
    Endo,
    SigmaInvariants,
    ScaleInvariants,
    is_cyclic_pair,
    is_cyclic,
    find_cyclic_vector,
    trace_free,
    sigma_invariants,
    is_arithmetic_progression,
    general_position,
    locally_equivalent,
    globally_equivalent,
    scale_invariants,
    stability_order,
    expected_aut_dim,
)
from crtoolkit.endo.moduli import (
    Modulus,
    Classification,
    modulus,
    classify3,
    eastwood_ezhov,
    eastwood_ezhov_inverse,
)
from crtoolkit.endo.construction import make_tube
from crtoolkit.endo.inversion import invert_modulus
