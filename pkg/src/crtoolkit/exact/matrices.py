import logging
from typing import Any, Sequence

from sympy import ImmutableMatrix, Poly, Rational, Symbol, eye
from sympy.polys.domains import QQ

from crtoolkit.errors import DimensionError, InvalidInput
from crtoolkit.exact.scalars import formatRational, rational


logger = logging.getLogger("crtoolkit.exact.matrices")

X = Symbol("X")

Vector = tuple


def toMatrix(rows: Sequence[Sequence[Any]]) -> ImmutableMatrix:
    """Build an immutable rational matrix from nested rows"""
    rows = [[rational(value) for value in row] for row in rows]
    if not rows or not rows[0]:
        raise DimensionError("Matrix must have at least one row and one column")
    width = len(rows[0])
    for row in rows:
        if len(row) != width:
            raise DimensionError("Matrix rows have different lengths")
    return ImmutableMatrix(rows)


def toVector(values: Sequence[Any]) -> Vector:
    return tuple(rational(value) for value in values)


def parseMatrix(data: Any, pointer: str = "", square: bool = False) -> ImmutableMatrix:
    if not isinstance(data, list) or not data:
        raise InvalidInput("Expected a non-empty array of rows", pointer)
    rows = []
    for i, row in enumerate(data):
        if not isinstance(row, list) or not row:
            raise InvalidInput("Expected a non-empty array", f"{pointer}/{i}")
        rows.append([rational(value, f"{pointer}/{i}/{j}") for j, value in enumerate(row)])
    width = len(rows[0])
    for i, row in enumerate(rows):
        if len(row) != width:
            raise DimensionError(
                f"Row has {len(row)} entries, expected {width}", f"{pointer}/{i}"
            )
    if square and len(rows) != width:
        raise DimensionError(f"Expected a square matrix, got {len(rows)}x{width}", pointer)
    return ImmutableMatrix(rows)


def parseVector(data: Any, pointer: str = "", length: int = -1) -> Vector:
    if not isinstance(data, list) or not data:
        raise InvalidInput("Expected a non-empty array", pointer)
    vector = tuple(rational(value, f"{pointer}/{i}") for i, value in enumerate(data))
    if length >= 0 and len(vector) != length:
        raise DimensionError(f"Expected {length} entries, got {len(vector)}", pointer)
    return vector


def formatMatrix(matrix: ImmutableMatrix) -> list:
    return [
        [formatRational(matrix[i, j]) for j in range(matrix.cols)]
        for i in range(matrix.rows)
    ]


def formatVector(vector: Sequence[Rational]) -> list:
    return [formatRational(value) for value in vector]


def apply(matrix: ImmutableMatrix, vector: Sequence[Rational]) -> Vector:
    if matrix.cols != len(vector):
        raise DimensionError(
            f"Cannot apply {matrix.rows}x{matrix.cols} matrix to vector of length {len(vector)}"
        )
    return tuple(
        sum((matrix[i, j] * vector[j] for j in range(matrix.cols)), Rational(0))
        for i in range(matrix.rows)
    )


def identity(n: int) -> ImmutableMatrix:
    return ImmutableMatrix(eye(n))


def charpoly(matrix: ImmutableMatrix) -> Poly:
    """Characteristic polynomial det(X·I − m) as a monic Poly in X over QQ.

    sympy computes it with the division-free Berkowitz algorithm, so no
    intermediate fractions beyond the entries themselves appear.
    """
    if matrix.rows != matrix.cols:
        raise DimensionError(
            f"Characteristic polynomial needs a square matrix, got {matrix.rows}x{matrix.cols}"
        )
    return Poly(matrix.charpoly(X).as_expr(), X, domain=QQ)


def krylov(matrix: ImmutableMatrix, vector: Sequence[Rational], count: int) -> list:
    """[v, m v, …, m^(count−1) v]"""
    vectors = [tuple(vector)]
    for _ in range(count - 1):
        vectors.append(apply(matrix, vectors[-1]))
    return vectors


def rank(vectors: Sequence[Sequence[Rational]]) -> int:
    if not vectors:
        return 0
    return ImmutableMatrix([list(v) for v in vectors]).rank()


def flatten(matrix: ImmutableMatrix) -> Vector:
    return tuple(matrix[i, j] for i in range(matrix.rows) for j in range(matrix.cols))
