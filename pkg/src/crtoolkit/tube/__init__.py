from crtoolkit.tube.fields import AffineField, TubeDatum
from crtoolkit.tube.kernels import (
    KernelChain,
    LeviValue,
    tangent_space,
    kernel_chain,
    degeneracy_degree,
    is_minimal_sufficient,
    levi_form,
    conical_check,
)
from crtoolkit.tube.hypersurfaces import (
    lie_derivative,
    invariance_witness,
    ideal_invariance_witness,
    hypersurface_levi_kernel,
)
