import logging
from dataclasses import dataclass, field
from typing import Any, Sequence

from sympy import ImmutableMatrix, Rational

from crtoolkit.errors import CRToolkitError, DimensionError, InvalidDatum, InvalidInput, PreconditionError
from crtoolkit.exact.matrices import Vector, flatten, formatVector, identity, parseVector
from crtoolkit.exact.subspaces import Subspace, constrain, realify


logger = logging.getLogger("crtoolkit.cralgebra.lie")


@dataclass(frozen=True)
class RealLieAlgebra:
    """Real Lie algebra with basis b₀…b_{n−1} and [bᵢ, bⱼ] = Σₖ c[i][j][k] bₖ"""

    dim: int
    constants: tuple
    labels: tuple = field(default=(), compare=False)

    def __post_init__(self):
        n = self.dim
        if n < 1:
            raise DimensionError(f"Lie algebra dimension must be positive :: {n}")
        if len(self.constants) != n or any(len(row) != n for row in self.constants):
            raise DimensionError(f"Structure constants must form an {n}x{n} table")
        for i in range(n):
            for j in range(n):
                if len(self.constants[i][j]) != n:
                    raise DimensionError(f"Bracket [{i},{j}] needs {n} coefficients")
        for i in range(n):
            if any(x != 0 for x in self.constants[i][i]):
                raise InvalidDatum(f"Bracket of a basis vector with itself is nonzero :: {i}")
            for j in range(i + 1, n):
                if any(x + y != 0 for x, y in zip(self.constants[i][j], self.constants[j][i])):
                    raise InvalidDatum(f"Structure constants are not antisymmetric :: [{i},{j}]")
        if self.labels and len(self.labels) != n:
            raise DimensionError("One label per basis vector expected")

    def __str__(self) -> str:
        return f"RealLieAlgebra(dim={self.dim})"

    def __repr__(self) -> str:
        return self.__str__()

    @staticmethod
    def fromBrackets(dim: int, brackets: dict, labels: Sequence[str] = ()) -> "RealLieAlgebra":
        """Build from {(i, j): coefficients} with i < j; the rest follows by antisymmetry"""
        zero = tuple(Rational(0) for _ in range(dim))
        table = [[zero for _ in range(dim)] for _ in range(dim)]
        for (i, j), coeffs in brackets.items():
            if not (0 <= i < dim and 0 <= j < dim) or i == j:
                raise InvalidInput(f"Invalid bracket indices :: ({i}, {j})")
            coeffs = tuple(Rational(x) for x in coeffs)
            if len(coeffs) != dim:
                raise DimensionError(f"Bracket [{i},{j}] needs {dim} coefficients")
            table[i][j] = coeffs
            table[j][i] = tuple(-x for x in coeffs)
        return RealLieAlgebra(dim, tuple(tuple(row) for row in table), tuple(labels))

    @staticmethod
    def abelian(dim: int) -> "RealLieAlgebra":
        return RealLieAlgebra.fromBrackets(dim, {})

    @staticmethod
    def fromDict(data: Any, pointer: str = "") -> "RealLieAlgebra":
        if not isinstance(data, dict):
            raise InvalidInput("Expected a Lie algebra object", pointer)
        dim = data.get("dim")
        if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
            raise InvalidInput("Expected a positive integer `dim`", f"{pointer}/dim")
        brackets = {}
        for index, entry in enumerate(data.get("brackets") or []):
            where = f"{pointer}/brackets/{index}"
            if not isinstance(entry, dict):
                raise InvalidInput("Expected a bracket object", where)
            i, j = entry.get("i"), entry.get("j")
            for key, value in (("i", i), ("j", j)):
                if not isinstance(value, int) or isinstance(value, bool) or not 0 <= value < dim:
                    raise InvalidInput(f"Expected a basis index below {dim}", f"{where}/{key}")
            if i == j:
                raise InvalidInput("Bracket of a basis vector with itself", where)
            coeffs = parseVector(entry.get("coeffs"), f"{where}/coeffs", dim)
            if i > j:
                i, j, coeffs = j, i, tuple(-x for x in coeffs)
            if (i, j) in brackets:
                raise InvalidInput(f"Bracket [{i},{j}] given twice", where)
            brackets[(i, j)] = coeffs
        labels = tuple(str(label) for label in data.get("labels") or [])
        return RealLieAlgebra.fromBrackets(dim, brackets, labels)

    def toDict(self) -> dict:
        brackets = []
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                coeffs = self.constants[i][j]
                if any(x != 0 for x in coeffs):
                    brackets.append({"i": i, "j": j, "coeffs": formatVector(coeffs)})
        data = {"dim": self.dim, "brackets": brackets}
        if self.labels:
            data["labels"] = list(self.labels)
        return data

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else f"b{i}"

    def bracket(self, x: Sequence[Rational], y: Sequence[Rational]) -> Vector:
        n = self.dim
        if len(x) != n or len(y) != n:
            raise DimensionError(f"Vectors must have {n} coordinates")
        result = [Rational(0)] * n
        for i in range(n):
            if x[i] == 0:
                continue
            for j in range(n):
                if y[j] == 0:
                    continue
                factor = x[i] * y[j]
                row = self.constants[i][j]
                for k in range(n):
                    if row[k] != 0:
                        result[k] += factor * row[k]
        return tuple(result)

    def bracket_complex(self, u: Sequence[Rational], w: Sequence[Rational]) -> Vector:
        """Bracket on l = g ⊗ C for realified vectors (re…, im…)"""
        n = self.dim
        ur, ui = u[:n], u[n:]
        wr, wi = w[:n], w[n:]
        re = [a - b for a, b in zip(self.bracket(ur, wr), self.bracket(ui, wi))]
        im = [a + b for a, b in zip(self.bracket(ur, wi), self.bracket(ui, wr))]
        return tuple(re) + tuple(im)

    def ad(self, x: Sequence[Rational]) -> ImmutableMatrix:
        """Matrix of y ↦ [x, y]"""
        columns = [self.bracket(x, self.unit(j)) for j in range(self.dim)]
        return ImmutableMatrix(
            [[columns[j][k] for j in range(self.dim)] for k in range(self.dim)]
        )

    def unit(self, i: int) -> Vector:
        return tuple(Rational(1 if i == j else 0) for j in range(self.dim))

    def full(self) -> Subspace:
        return Subspace.full(self.dim)


def bracket_space(g: RealLieAlgebra, u: Subspace, w: Subspace) -> Subspace:
    return Subspace.span(
        [g.bracket(x, y) for x in u.basis for y in w.basis], g.dim
    )


def bracket_space_complex(g: RealLieAlgebra, u: Subspace, w: Subspace) -> Subspace:
    return Subspace.span(
        [g.bracket_complex(x, y) for x in u.basis for y in w.basis], 2 * g.dim
    )


def jacobi_check(g: RealLieAlgebra) -> tuple:
    """(True, None) or (False, first (i, j, k) with a nonzero Jacobiator)"""
    n = g.dim
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                bi, bj, bk = g.unit(i), g.unit(j), g.unit(k)
                terms = (
                    g.bracket(bi, g.bracket(bj, bk)),
                    g.bracket(bj, g.bracket(bk, bi)),
                    g.bracket(bk, g.bracket(bi, bj)),
                )
                if any(sum(values) != 0 for values in zip(*terms)):
                    logger.debug(f"Jacobi identity fails :: ({i}, {j}, {k})")
                    return False, (i, j, k)
    return True, None


def _series(g: RealLieAlgebra, step) -> list:
    series = [g.full()]
    while True:
        following = step(series[-1])
        if following == series[-1]:
            return series
        series.append(following)


def derived_series(g: RealLieAlgebra) -> list:
    """[g, g⁽¹⁾, …] up to the first repeated term"""
    return _series(g, lambda s: bracket_space(g, s, s))


def lower_central_series(g: RealLieAlgebra) -> list:
    full = g.full()
    return _series(g, lambda s: bracket_space(g, full, s))


def is_solvable(g: RealLieAlgebra) -> bool:
    return derived_series(g)[-1].dim == 0


def is_nilpotent(g: RealLieAlgebra) -> bool:
    return lower_central_series(g)[-1].dim == 0


def centralizer(g: RealLieAlgebra, space: Subspace, of: Subspace) -> Subspace:
    """{x ∈ space : [x, y] = 0 for every y ∈ of}"""
    maps = [lambda x, y=y: g.bracket(x, y) for y in of.basis]
    return constrain(space, maps, Subspace.zero(g.dim))


def center(g: RealLieAlgebra) -> Subspace:
    return centralizer(g, g.full(), g.full())


def is_ideal(g: RealLieAlgebra, space: Subspace) -> bool:
    return bracket_space(g, g.full(), space).issubset(space)


def largest_ideal_in(g: RealLieAlgebra, space: Subspace) -> Subspace:
    """Iterate h ↦ {x ∈ h : [g, x] ⊆ h} from h = space until stable"""
    units = [g.unit(j) for j in range(g.dim)]
    maps = [lambda x, b=b: g.bracket(b, x) for b in units]
    current = space
    while True:
        following = constrain(current, maps, current)
        if following == current:
            return current
        current = following


def generated_subalgebra(g: RealLieAlgebra, space: Subspace) -> Subspace:
    current = space
    while True:
        following = current.sum(bracket_space(g, current, current))
        if following == current:
            return current
        current = following


def _associative_closure(matrices: Sequence[ImmutableMatrix], n: int) -> list:
    """Basis of the unital associative algebra generated by `matrices`"""
    basis = [identity(n)]
    span = Subspace.span([flatten(identity(n))], n * n)
    frontier = [identity(n)]
    while frontier:
        following = []
        for p in frontier:
            for m in matrices:
                product = ImmutableMatrix(m * p)
                vector = flatten(product)
                if not span.contains(vector):
                    span = span.sum(Subspace.span([vector], n * n))
                    basis.append(product)
                    following.append(product)
        frontier = following
    return basis


def _nilpotent_on(g: RealLieAlgebra, space: Subspace) -> bool:
    current = space
    while current.dim > 0:
        following = bracket_space(g, space, current)
        if following == current:
            return False
        current = following
    return True


def nilradical_solvable(g: RealLieAlgebra) -> Subspace:
    """{x : ad x nilpotent} for solvable g.

    Computed as the common kernel of x ↦ tr(ad x · P) with P ranging over the
    associative algebra generated by ad g. The result is verified to be a
    nilpotent ideal containing [g, g].
    """
    if not is_solvable(g):
        raise PreconditionError(f"Nilradical computation needs a solvable algebra :: {g}")
    n = g.dim
    ads = [g.ad(g.unit(i)) for i in range(n)]
    algebra = _associative_closure(ads, n)
    rows = [[(ads[i] * p).trace() for i in range(n)] for p in algebra]
    functionals = Subspace.span(rows, n)
    nilradical = Subspace.span(functionals.annihilator(), n)

    derived = bracket_space(g, g.full(), g.full())
    if not derived.issubset(nilradical) or not is_ideal(g, nilradical):
        raise CRToolkitError(f"Nilradical verification failed, not an ideal over [g,g] :: {g}")
    if not _nilpotent_on(g, nilradical):
        raise CRToolkitError(f"Nilradical verification failed, not nilpotent :: {g}")
    logger.debug(f"Nilradical :: dim {nilradical.dim}")
    return nilradical


def nilcenter_solvable(g: RealLieAlgebra) -> Subspace:
    """Center of the nilradical"""
    nilradical = nilradical_solvable(g)
    return centralizer(g, nilradical, nilradical)


def sl2_triple_check(g: RealLieAlgebra, h, e_plus, e_minus) -> bool:
    """[h, e±] = ±2e± and [e⁺, e⁻] = h on Gaussian-rational vectors of l"""
    h, e_plus, e_minus = realify(h), realify(e_plus), realify(e_minus)
    if any(len(v) != 2 * g.dim for v in (h, e_plus, e_minus)):
        raise DimensionError(f"Vectors must have {g.dim} complex coordinates")
    if all(x == 0 for x in h):
        return False
    checks = (
        (g.bracket_complex(h, e_plus), tuple(2 * x for x in e_plus)),
        (g.bracket_complex(h, e_minus), tuple(-2 * x for x in e_minus)),
        (g.bracket_complex(e_plus, e_minus), h),
    )
    return all(tuple(left) == tuple(right) for left, right in checks)

