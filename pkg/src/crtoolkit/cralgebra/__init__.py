from crtoolkit.cralgebra.lie import (
    RealLieAlgebra,
    jacobi_check,
    derived_series,
    lower_central_series,
    is_solvable,
    is_nilpotent,
    center,
    largest_ideal_in,
    nilradical_solvable,
    nilcenter_solvable,
    sl2_triple_check,
)
from crtoolkit.cralgebra.cralgebras import (
    CRAlgebra,
    ConditionReport,
    QChain,
    q_chain,
    nondegeneracy_degree_alg,
    spaces,
    condition_report,
)
from crtoolkit.cralgebra.bridge import tube_to_cralgebra
