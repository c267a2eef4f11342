import logging
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from sympy import ImmutableMatrix, Matrix, Rational
from sympy.polys.domains.gaussiandomains import GaussianRational

from crtoolkit.errors import DimensionError
from crtoolkit.exact.matrices import Vector, apply, formatVector
from crtoolkit.exact.scalars import imag_part, real_part


logger = logging.getLogger("crtoolkit.exact.subspaces")


def _dot(u: Sequence[Rational], v: Sequence[Rational]) -> Rational:
    return sum((a * b for a, b in zip(u, v)), Rational(0))


def _combine(vectors: Sequence[Vector], coefficients: Sequence[Rational]) -> Vector:
    length = len(vectors[0])
    return tuple(
        sum((c * v[i] for c, v in zip(coefficients, vectors)), Rational(0))
        for i in range(length)
    )


def _nullspace(rows: Sequence[Sequence[Rational]], columns: int) -> list:
    """Basis of {c : row·c = 0 for every row}"""
    if not rows:
        return [
            tuple(Rational(1) if i == j else Rational(0) for j in range(columns))
            for i in range(columns)
        ]
    return [tuple(column) for column in Matrix([list(row) for row in rows]).nullspace()]


@dataclass(frozen=True)
class Subspace:
    """A subspace of Qⁿ stored by its reduced row echelon basis.

    Two instances are equal exactly when they span the same subspace.
    """

    ambient_dim: int
    basis: tuple = ()

    @staticmethod
    def span(vectors: Iterable[Sequence[Rational]], ambient_dim: int) -> "Subspace":
        vectors = [tuple(Rational(x) for x in v) for v in vectors]
        for v in vectors:
            if len(v) != ambient_dim:
                raise DimensionError(
                    f"Vector of length {len(v)} in ambient dimension {ambient_dim}"
                )
        vectors = [v for v in vectors if any(x != 0 for x in v)]
        if not vectors:
            return Subspace(ambient_dim)
        reduced, pivots = Matrix([list(v) for v in vectors]).rref()
        basis = tuple(
            tuple(reduced[i, j] for j in range(ambient_dim)) for i in range(len(pivots))
        )
        return Subspace(ambient_dim, basis)

    @staticmethod
    def zero(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim)

    @staticmethod
    def full(ambient_dim: int) -> "Subspace":
        return Subspace.span(_nullspace([], ambient_dim), ambient_dim)

    def __str__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def __repr__(self) -> str:
        return self.__str__()

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple:
        return tuple(
            next(j for j, x in enumerate(row) if x != 0) for row in self.basis
        )

    @property
    def complement_indices(self) -> tuple:
        """Non-pivot coordinates; their unit vectors span a complement"""
        pivots = set(self.pivots)
        return tuple(j for j in range(self.ambient_dim) if j not in pivots)

    def _check(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise DimensionError(
                f"Ambient dimensions differ :: {self.ambient_dim} != {other.ambient_dim}"
            )

    def reduce(self, vector: Sequence[Rational]) -> Vector:
        """Canonical coset representative of `vector` modulo this subspace"""
        if len(vector) != self.ambient_dim:
            raise DimensionError(
                f"Vector of length {len(vector)} in ambient dimension {self.ambient_dim}"
            )
        result = [Rational(x) for x in vector]
        for row, pivot in zip(self.basis, self.pivots):
            factor = result[pivot]
            if factor != 0:
                result = [x - factor * r for x, r in zip(result, row)]
        return tuple(result)

    def contains(self, vector: Sequence[Rational]) -> bool:
        return all(x == 0 for x in self.reduce(vector))

    def issubset(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.contains(v) for v in self.basis)

    def sum(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(self.basis + other.basis, self.ambient_dim)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return constrain(self, [lambda v: v], other)

    def annihilator(self) -> list:
        """Rows spanning {y : y·b = 0 for every basis vector b}"""
        return _nullspace(self.basis, self.ambient_dim)

    def image(self, matrix: ImmutableMatrix) -> "Subspace":
        return Subspace.span([apply(matrix, v) for v in self.basis], matrix.rows)

    def coordinates(self, vector: Sequence[Rational]) -> Vector:
        """Coefficients of `vector` against the echelon basis"""
        if not self.contains(vector):
            raise DimensionError("Vector does not lie in the subspace")
        return tuple(Rational(vector[p]) for p in self.pivots)

    def toDict(self) -> dict:
        return {
            "ambient_dim": self.ambient_dim,
            "dim": self.dim,
            "basis": [formatVector(v) for v in self.basis],
        }


def constrain(
    space: Subspace,
    maps: Sequence[Callable[[Vector], Sequence[Rational]]],
    target: Subspace,
) -> Subspace:
    """{v ∈ space : f(v) ∈ target for every linear f in maps}"""
    if space.dim == 0:
        return space
    annihilator = target.annihilator()
    if not annihilator:
        return space
    rows = []
    for f in maps:
        images = [f(b) for b in space.basis]
        for row in annihilator:
            rows.append([_dot(row, image) for image in images])
    solutions = _nullspace(rows, space.dim)
    return Subspace.span(
        [_combine(space.basis, c) for c in solutions], space.ambient_dim
    )


def kernel(matrix: ImmutableMatrix) -> Subspace:
    rows = [[matrix[i, j] for j in range(matrix.cols)] for i in range(matrix.rows)]
    return Subspace.span(_nullspace(rows, matrix.cols), matrix.cols)


def image(matrix: ImmutableMatrix) -> Subspace:
    columns = [[matrix[i, j] for i in range(matrix.rows)] for j in range(matrix.cols)]
    return Subspace.span(columns, matrix.rows)


def intersect(u: Subspace, w: Subspace) -> Subspace:
    return u.intersect(w)


def sum_spaces(u: Subspace, w: Subspace) -> Subspace:
    return u.sum(w)


def contains(u: Subspace, vector: Sequence[Rational]) -> bool:
    return u.contains(vector)


# Complex subspaces of Cⁿ are stored as J-stable subspaces of R²ⁿ with
# coordinates (re₁…reₙ, im₁…imₙ).


def realify(vector: Sequence[GaussianRational]) -> Vector:
    return tuple(real_part(z) for z in vector) + tuple(imag_part(z) for z in vector)


def multiply_i(vector: Sequence[Rational]) -> Vector:
    n = len(vector) // 2
    return tuple(-x for x in vector[n:]) + tuple(vector[:n])


def complex_span(vectors: Iterable[Sequence[GaussianRational]], n: int) -> Subspace:
    real = []
    for v in vectors:
        if len(v) != n:
            raise DimensionError(f"Complex vector of length {len(v)} in C^{n}")
        r = realify(v)
        real.append(r)
        real.append(multiply_i(r))
    return Subspace.span(real, 2 * n)


def complex_span_real(vectors: Iterable[Sequence[Rational]], n: int) -> Subspace:
    """Complex span of already realified vectors"""
    real = []
    for r in vectors:
        real.append(tuple(r))
        real.append(multiply_i(r))
    return Subspace.span(real, 2 * n)


def complex_dim(space: Subspace) -> int:
    return space.dim // 2


def conjugate_vector(vector: Sequence[Rational]) -> Vector:
    n = len(vector) // 2
    return tuple(vector[:n]) + tuple(-x for x in vector[n:])


def conjugate(space: Subspace) -> Subspace:
    return Subspace.span([conjugate_vector(v) for v in space.basis], space.ambient_dim)


def complexify(space: Subspace) -> Subspace:
    n = space.ambient_dim
    zeros = tuple(Rational(0) for _ in range(n))
    vectors = [tuple(v) + zeros for v in space.basis]
    vectors += [zeros + tuple(v) for v in space.basis]
    return Subspace.span(vectors, 2 * n)


def real_points(space: Subspace) -> Subspace:
    """{w ∈ W : w̄ = w} as a subspace of Rⁿ"""
    n = space.ambient_dim // 2
    zeros = tuple(Rational(0) for _ in range(n))
    reals = Subspace.span(
        [
            tuple(Rational(1) if i == j else Rational(0) for j in range(n)) + zeros
            for i in range(n)
        ],
        2 * n,
    )
    points = space.intersect(reals)
    return Subspace.span([v[:n] for v in points.basis], n)
