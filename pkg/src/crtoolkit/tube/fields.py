import logging
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

from sympy import ImmutableMatrix, Poly, Rational, zeros
from sympy.polys.domains import QQ
from yaml import safe_load

from crtoolkit.errors import DimensionError, InvalidDatum, InvalidInput
from crtoolkit.exact.matrices import (
    Vector,
    apply,
    formatMatrix,
    formatVector,
    identity,
    parseMatrix,
    parseVector,
    rank,
)
from crtoolkit.exact.polynomials import (
    evaluate,
    formatPolynomial,
    ideal_contains,
    parsePolynomial,
)


logger = logging.getLogger("crtoolkit.tube.fields")


@dataclass(frozen=True)
class AffineField:
    """Affine vector field x ↦ linear·x + translation on Rⁿ"""

    linear: ImmutableMatrix
    translation: Vector = ()

    def __post_init__(self):
        if self.linear.rows != self.linear.cols:
            raise DimensionError(
                f"Linear part must be square :: {self.linear.rows}x{self.linear.cols}"
            )
        if not self.translation:
            object.__setattr__(
                self, "translation", tuple(Rational(0) for _ in range(self.n))
            )
        elif len(self.translation) != self.n:
            raise DimensionError(
                f"Translation of length {len(self.translation)} for n={self.n}"
            )

    def __str__(self) -> str:
        return f"AffineField(n={self.n})"

    def __repr__(self) -> str:
        return self.__str__()

    @property
    def n(self) -> int:
        return self.linear.rows

    @staticmethod
    def euler(n: int) -> "AffineField":
        return AffineField(identity(n))

    @staticmethod
    def constant(vector: Sequence[Rational]) -> "AffineField":
        n = len(vector)
        return AffineField(ImmutableMatrix(zeros(n, n)), tuple(Rational(x) for x in vector))

    @staticmethod
    def fromDict(data: Any, n: int, pointer: str = "") -> "AffineField":
        if not isinstance(data, dict):
            raise InvalidInput("Expected a field object", pointer)
        linear = parseMatrix(data.get("linear"), f"{pointer}/linear", square=True)
        if linear.rows != n:
            raise DimensionError(
                f"Linear part is {linear.rows}x{linear.cols}, expected n={n}",
                f"{pointer}/linear",
            )
        translation = ()
        if data.get("translation") is not None:
            translation = parseVector(data["translation"], f"{pointer}/translation", n)
        return AffineField(linear, translation)

    def toDict(self) -> dict:
        return {
            "linear": formatMatrix(self.linear),
            "translation": formatVector(self.translation),
        }

    def value(self, point: Sequence[Rational]) -> Vector:
        """ξ(point) = linear·point + translation"""
        image = apply(self.linear, point)
        return tuple(x + t for x, t in zip(image, self.translation))

    def bracket(self, other: "AffineField") -> "AffineField":
        """Vector-field bracket; for X = (A, a), Y = (B, b) it is (BA − AB, Ba − Ab)"""
        if other.n != self.n:
            raise DimensionError(f"Fields on R^{self.n} and R^{other.n}")
        a, b = self.translation, other.translation
        linear = other.linear * self.linear - self.linear * other.linear
        translation = tuple(
            x - y for x, y in zip(apply(other.linear, a), apply(self.linear, b))
        )
        return AffineField(ImmutableMatrix(linear), translation)

    def transport(self, g: ImmutableMatrix) -> "AffineField":
        """Push forward along x ↦ g·x"""
        linear = ImmutableMatrix(g * self.linear * g.inv())
        return AffineField(linear, apply(g, self.translation))

    def flatten(self) -> Vector:
        """Coordinates (linear entries row-major, then translation)"""
        return tuple(self.linear) + tuple(self.translation)

    def derive(self, p: Poly) -> Poly:
        """Lie derivative Σⱼ ξ(x)ⱼ ∂p/∂xⱼ"""
        if len(p.gens) != self.n:
            raise DimensionError(
                f"Polynomial in {len(p.gens)} variables for a field on R^{self.n}"
            )
        gens = p.gens
        result = Poly(0, *gens, domain=QQ)
        for j, x in enumerate(gens):
            component = Poly(self.translation[j], *gens, domain=QQ)
            for k, y in enumerate(gens):
                if self.linear[j, k] != 0:
                    component += Poly(self.linear[j, k] * y, *gens, domain=QQ)
            if not component.is_zero:
                result += component * p.diff(x)
        return result


def combine(fields: Sequence[AffineField], coefficients: Sequence[Rational]) -> AffineField:
    n = fields[0].n
    linear = zeros(n, n)
    translation = [Rational(0)] * n
    for f, c in zip(fields, coefficients):
        if c == 0:
            continue
        linear += c * f.linear
        translation = [t + c * x for t, x in zip(translation, f.translation)]
    return AffineField(ImmutableMatrix(linear), tuple(translation))


@dataclass(frozen=True)
class TubeDatum:
    """Affinely homogeneous germ (F, a) given by a base point and spanning fields.

    The field values at the base point must be linearly independent. Optional
    witnesses are defining polynomials of F; each must vanish at the base
    point and the ideal they generate must be invariant under every field.
    """

    n: int
    basepoint: Vector
    fields: tuple
    witnesses: tuple = ()
    name: Optional[str] = None
    labels: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise DimensionError(f"Ambient dimension must be positive :: {self.n}")
        if len(self.basepoint) != self.n:
            raise DimensionError(
                f"Base point of length {len(self.basepoint)} for n={self.n}"
            )
        if not self.fields:
            raise InvalidDatum("A tube datum needs at least one field")
        for i, f in enumerate(self.fields):
            if f.n != self.n:
                raise DimensionError(f"Field {i} lives on R^{f.n}, expected n={self.n}")

        values = self.values()
        if rank(values) != len(values):
            raise InvalidDatum(
                f"Field values at the base point are linearly dependent :: {self}"
            )
        if self.labels and len(self.labels) != len(self.fields):
            raise DimensionError("One label per field expected")

        for i, p in enumerate(self.witnesses):
            if len(p.gens) != self.n:
                raise DimensionError(
                    f"Witness {i} uses {len(p.gens)} variables, expected {self.n}"
                )
            if evaluate(p, self.basepoint) != 0:
                raise InvalidDatum(f"Witness {i} does not vanish at the base point")
        if self.witnesses:
            for j, f in enumerate(self.fields):
                for i, p in enumerate(self.witnesses):
                    if not ideal_contains(self.witnesses, f.derive(p)):
                        raise InvalidDatum(
                            f"Field {j} does not preserve the witness ideal :: witness {i}"
                        )
            logger.debug(f"Witnesses checked :: {len(self.witnesses)}")

    def __str__(self) -> str:
        name = self.name or "anonymous"
        return f"TubeDatum('{name}', n={self.n}, fields={len(self.fields)})"

    def __repr__(self) -> str:
        return self.__str__()

    def values(self) -> list:
        return [f.value(self.basepoint) for f in self.fields]

    def transport(self, g: ImmutableMatrix) -> "TubeDatum":
        """Image of the datum under the linear map g (witnesses are dropped)"""
        if g.rows != self.n or g.cols != self.n:
            raise DimensionError(f"Transport matrix must be {self.n}x{self.n}")
        if g.det() == 0:
            raise InvalidInput("Transport matrix is singular")
        return TubeDatum(
            self.n,
            apply(g, self.basepoint),
            tuple(f.transport(g) for f in self.fields),
            name=self.name,
            labels=self.labels,
        )

    @staticmethod
    def fromDict(data: Any, pointer: str = "") -> "TubeDatum":
        if not isinstance(data, dict):
            raise InvalidInput("Expected a tube datum object", pointer)
        n = data.get("n")
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise InvalidInput("Expected a positive integer `n`", f"{pointer}/n")
        basepoint = parseVector(data.get("basepoint"), f"{pointer}/basepoint", n)
        raw_fields = data.get("fields")
        if not isinstance(raw_fields, list) or not raw_fields:
            raise InvalidInput("Expected a non-empty `fields` array", f"{pointer}/fields")
        fields = tuple(
            AffineField.fromDict(f, n, f"{pointer}/fields/{i}")
            for i, f in enumerate(raw_fields)
        )
        witnesses = tuple(
            parsePolynomial(p, f"{pointer}/witnesses/{i}")
            for i, p in enumerate(data.get("witnesses") or [])
        )
        labels = tuple(str(label) for label in data.get("labels") or [])
        return TubeDatum(n, basepoint, fields, witnesses, data.get("name"), labels)

    @staticmethod
    def load(path: str) -> "TubeDatum":
        with open(path, "r") as handle:
            data = safe_load(handle)
        logger.debug(f"Loaded tube datum :: {path}")
        return TubeDatum.fromDict(data)

    def toDict(self) -> dict:
        data = {
            "n": self.n,
            "basepoint": formatVector(self.basepoint),
            "fields": [f.toDict() for f in self.fields],
        }
        if self.witnesses:
            data["witnesses"] = [formatPolynomial(p) for p in self.witnesses]
        if self.name:
            data["name"] = self.name
        if self.labels:
            data["labels"] = list(self.labels)
        return data
