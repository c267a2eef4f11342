import logging
from dataclasses import dataclass
from typing import Any, Optional, Sequence

from yaml import safe_load

from crtoolkit.cralgebra.lie import (
    RealLieAlgebra,
    bracket_space,
    bracket_space_complex,
    derived_series,
    generated_subalgebra,
    is_solvable,
    largest_ideal_in,
    nilcenter_solvable,
)
from crtoolkit.errors import DimensionError, InvalidDatum, InvalidInput
from crtoolkit.exact.scalars import formatGaussian, gaussian, parseGaussian, toGaussian
from crtoolkit.exact.subspaces import (
    Subspace,
    complex_dim,
    complex_span,
    complex_span_real,
    conjugate,
    constrain,
    real_points,
)


logger = logging.getLogger("crtoolkit.cralgebra.cralgebras")

# report entries that approximate their condition
PARTIAL_CONDITIONS = ("minimal_generation",)


@dataclass(frozen=True)
class CRAlgebra:
    """Real Lie algebra g with a complex subalgebra q of l = g ⊗ C.

    q is stored realified: a J-stable subspace of R²ⁿ with coordinates
    (re…, im…) over the basis of g. Conjugation σ negates the im half.
    """

    g: RealLieAlgebra
    q: Subspace
    name: Optional[str] = None

    def __post_init__(self):
        if self.q.ambient_dim != 2 * self.g.dim:
            raise DimensionError(
                f"q lives in R^{self.q.ambient_dim}, expected R^{2 * self.g.dim}"
            )
        if complex_span_real(self.q.basis, self.g.dim) != self.q:
            raise InvalidDatum("q is not a complex subspace")
        if not bracket_space_complex(self.g, self.q, self.q).issubset(self.q):
            raise InvalidDatum(f"q is not a subalgebra of g ⊗ C :: {self}")

    def __str__(self) -> str:
        name = self.name or "anonymous"
        return f"CRAlgebra('{name}', dim={self.g.dim}, q={complex_dim(self.q)})"

    def __repr__(self) -> str:
        return self.__str__()

    @staticmethod
    def fromBasis(
        g: RealLieAlgebra, vectors: Sequence[Sequence[Any]], name: Optional[str] = None
    ) -> "CRAlgebra":
        """From Gaussian-rational q-basis vectors in coordinates of g's basis"""
        vectors = [tuple(toGaussian(z) for z in v) for v in vectors]
        q = complex_span(vectors, g.dim)
        if complex_dim(q) != len(vectors):
            raise InvalidDatum("q basis vectors are dependent over C")
        return CRAlgebra(g, q, name)

    @staticmethod
    def fromDict(data: Any, pointer: str = "") -> "CRAlgebra":
        if not isinstance(data, dict):
            raise InvalidInput("Expected a CR algebra object", pointer)
        g = RealLieAlgebra.fromDict(data, pointer)
        raw = data.get("q")
        if not isinstance(raw, list) or not raw:
            raise InvalidInput("Expected a non-empty `q` array", f"{pointer}/q")
        vectors = []
        for i, vector in enumerate(raw):
            where = f"{pointer}/q/{i}"
            if not isinstance(vector, list) or len(vector) != g.dim:
                raise DimensionError(f"Expected {g.dim} complex coordinates", where)
            vectors.append(
                tuple(parseGaussian(z, f"{where}/{j}") for j, z in enumerate(vector))
            )
        return CRAlgebra.fromBasis(g, vectors, data.get("name"))

    @staticmethod
    def load(path: str) -> "CRAlgebra":
        with open(path, "r") as handle:
            data = safe_load(handle)
        logger.debug(f"Loaded CR algebra :: {path}")
        return CRAlgebra.fromDict(data)

    def q_basis(self) -> list:
        """Complex basis of q: realified echelon vectors that stay independent over C"""
        chosen = []
        span = Subspace.zero(self.q.ambient_dim)
        for v in self.q.basis:
            if not span.contains(v):
                chosen.append(v)
                span = complex_span_real(chosen, self.g.dim)
        return chosen

    def toDict(self) -> dict:
        n = self.g.dim
        data = self.g.toDict()
        data["q"] = [
            [formatGaussian(gaussian(v[j], v[n + j])) for j in range(n)]
            for v in self.q_basis()
        ]
        if self.name:
            data["name"] = self.name
        return data

    @property
    def sigma_q(self) -> Subspace:
        return conjugate(self.q)


@dataclass(frozen=True)
class QChain:
    """q⁽⁰⁾ = q ⊃ q⁽¹⁾ = f ⊃ … up to the first repeated stage, plus q^(∞) = q ∩ σq"""

    stages: tuple
    infinity: Subspace

    @property
    def dims(self) -> list:
        return [complex_dim(s) for s in self.stages]

    @property
    def stable(self) -> Subspace:
        return self.stages[-1]

    @property
    def degree(self) -> Optional[int]:
        for k, stage in enumerate(self.stages):
            if stage == self.infinity:
                return k
        return None

    def toDict(self) -> dict:
        return {
            "dims": self.dims,
            "infinity_dim": complex_dim(self.infinity),
            "degree": self.degree,
        }


def q_chain(cra: CRAlgebra) -> QChain:
    """q^{(k+1)} = {w ∈ q^{(k)} : [w, σq] ⊂ q^{(k)} + σq}"""
    g = cra.g
    sigma_q = cra.sigma_q
    maps = [lambda w, v=v: g.bracket_complex(w, v) for v in sigma_q.basis]
    stages = [cra.q]
    while True:
        current = stages[-1]
        following = constrain(current, maps, current.sum(sigma_q))
        logger.debug(f"q chain stage {len(stages)} :: dim {complex_dim(following)}")
        if following == current:
            break
        stages.append(following)
    return QChain(tuple(stages), cra.q.intersect(sigma_q))


def nondegeneracy_degree_alg(cra: CRAlgebra) -> Optional[int]:
    """Smallest k with q⁽ᵏ⁾ = q^(∞); None when the chain stabilizes above it"""
    return q_chain(cra).degree


@dataclass(frozen=True)
class Spaces:
    g0: Subspace
    l0: Subspace
    f: Subspace
    q: Subspace
    H: Subspace
    F: Subspace

    def dims(self) -> dict:
        return {
            "g0": self.g0.dim,
            "l0": complex_dim(self.l0),
            "f": complex_dim(self.f),
            "q": complex_dim(self.q),
            "H": self.H.dim,
            "F": self.F.dim,
        }


def spaces(cra: CRAlgebra, chain: Optional[QChain] = None) -> Spaces:
    chain = chain or q_chain(cra)
    sigma_q = cra.sigma_q
    l0 = cra.q.intersect(sigma_q)
    f = chain.stages[1] if len(chain.stages) > 1 else chain.stages[0]
    return Spaces(
        g0=real_points(l0),
        l0=l0,
        f=f,
        q=cra.q,
        H=real_points(cra.q.sum(sigma_q)),
        F=real_points(f.sum(conjugate(f))),
    )


@dataclass(frozen=True)
class ConditionReport:
    """Conditions I to V with effectivity and solvability diagnostics.

    Checks listed in `partial` only approximate the condition they stand
    for; `minimal_generation` tests that H generates g, which is necessary
    but not sufficient for the absence of a smaller transitive subalgebra.
    """

    dim: int
    dims: dict
    conditions: dict
    k: Optional[int]
    chain_dims: tuple
    derived_dim: int
    nilcenter_dim: Optional[int] = None
    partial: tuple = PARTIAL_CONDITIONS

    def __str__(self) -> str:
        passed = [name for name, value in self.conditions.items() if value]
        return f"ConditionReport(dim={self.dim}, k={self.k}, true={passed})"

    def toDict(self) -> dict:
        data = dict(self.conditions)
        data.update(
            {
                "k": self.k,
                "dim": self.dim,
                "dims": self.dims,
                "chain_dims": list(self.chain_dims),
                "derived_dim": self.derived_dim,
                "nilcenter_dim": self.nilcenter_dim,
                "partial": list(self.partial),
            }
        )
        return data


def condition_report(cra: CRAlgebra) -> ConditionReport:
    g = cra.g
    n = g.dim
    chain = q_chain(cra)
    found = spaces(cra, chain)
    sigma_q = cra.sigma_q
    q_plus = cra.q.sum(sigma_q)
    dims = found.dims()

    dims_ok = (
        dims["F"] - dims["g0"] == 2
        and dims["H"] - dims["F"] == 2
        and n - dims["H"] == 1
        and dims["f"] - dims["l0"] == 1
        and dims["q"] - dims["f"] == 1
    )
    brackets_ok = (
        bracket_space(g, found.g0, found.F).issubset(found.F)
        and bracket_space(g, found.F, found.F).issubset(found.F)
        and bracket_space(g, found.F, found.H).issubset(found.H)
    )
    q_sigma = bracket_space_complex(g, cra.q, sigma_q)
    f_sigma = bracket_space_complex(g, found.f, sigma_q)

    solvable = is_solvable(g)
    conditions = {
        "I_dims": dims_ok,
        "II_brackets": brackets_ok,
        "III_not_levi_flat": not q_sigma.issubset(q_plus),
        "IV_levi_degenerate": f_sigma.issubset(q_plus) and found.f != found.l0,
        "V_two_nondegenerate": not f_sigma.issubset(found.f.sum(sigma_q)),
        "effective": largest_ideal_in(g, found.g0).dim == 0,
        "minimal_generation": generated_subalgebra(g, found.H).dim == n,
        "solvable": solvable,
    }
    series = derived_series(g)
    derived_dim = series[1].dim if len(series) > 1 else series[0].dim
    report = ConditionReport(
        dim=n,
        dims=dims,
        conditions=conditions,
        k=chain.degree,
        chain_dims=tuple(chain.dims),
        derived_dim=derived_dim,
        nilcenter_dim=nilcenter_solvable(g).dim if solvable else None,
    )
    logger.debug(f"Condition report :: {report}")
    return report
