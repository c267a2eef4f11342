import logging
from dataclasses import dataclass
from typing import Any, Optional, Union

from sympy import Rational, integer_nthroot

from crtoolkit.endo.consts import EX, EY, EZ, INFINITY, LIGHT_CONE, MU0
from crtoolkit.endo.endomorphisms import (
    Endo,
    require_cyclic,
    sigma_invariants,
    trace_free,
)
from crtoolkit.errors import OutOfRange, PreconditionError
from crtoolkit.exact.scalars import formatRational, rational


logger = logging.getLogger("crtoolkit.endo.moduli")


@dataclass(frozen=True)
class Modulus:
    """Exact modulus; `value` None stands for the infinite modulus"""

    value: Optional[Rational] = None

    def __str__(self) -> str:
        return INFINITY if self.is_infinite else formatRational(self.value)

    def __repr__(self) -> str:
        return f"Modulus({self})"

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    @staticmethod
    def parse(data: Any, pointer: str = "") -> "Modulus":
        if data == INFINITY:
            return Modulus()
        return Modulus(rational(data, pointer))

    def toJSON(self) -> str:
        return str(self)


@dataclass(frozen=True)
class Classification:
    cls: str
    modulus: Modulus

    def __str__(self) -> str:
        return f"{self.cls} (μ = {self.modulus})"

    def toDict(self) -> dict:
        return {
            "class": self.cls,
            "modulus": self.modulus.toJSON(),
            "mu0": formatRational(MU0),
        }


def modulus_from_sigma(sigma2: Rational, sigma3: Rational) -> Modulus:
    """−σ₂³/σ₃², infinite when σ₃ = 0"""
    if sigma3 == 0:
        return Modulus()
    return Modulus(-(sigma2 ** 3) / sigma3 ** 2)


def _require_three(phi: Endo) -> None:
    if phi.n != 3:
        raise PreconditionError(f"Modulus is defined for 3x3 endomorphisms :: n={phi.n}")


def modulus(phi: Endo) -> Modulus:
    _require_three(phi)
    require_cyclic(phi)
    sigma = sigma_invariants(trace_free(phi))
    return modulus_from_sigma(sigma[2], sigma[3])


def discriminant(phi: Endo) -> Rational:
    """Discriminant −4σ₂³ − 27σ₃² of the trace-free χ_φ = X³ + σ₂X − σ₃"""
    _require_three(phi)
    sigma = sigma_invariants(trace_free(phi))
    return -4 * sigma[2] ** 3 - 27 * sigma[3] ** 2


def classify3(phi: Endo) -> Classification:
    mu = modulus(phi)
    if mu.is_infinite:
        cls = LIGHT_CONE
    elif mu.value > MU0:
        cls = EX
    elif mu.value == MU0:
        cls = EZ
    else:
        cls = EY
    logger.debug(f"Classified :: {phi} -> {cls}")
    return Classification(cls, mu)


def roots_modulus(e1: Rational, e2: Rational, e3: Rational) -> Modulus:
    """Modulus of a cubic with elementary symmetric functions e1, e2, e3 of its roots"""
    sigma2 = e2 - e1 ** 2 / 3
    sigma3 = e3 - e1 * e2 / 3 + 2 * e1 ** 3 / 27
    return modulus_from_sigma(sigma2, sigma3)


def ey_modulus(omega: Union[Rational, int]) -> Modulus:
    """Roots {i, −i, ω}"""
    omega = Rational(omega)
    return roots_modulus(omega, Rational(1), omega)


def ex_modulus(theta: Union[Rational, int]) -> Modulus:
    """Roots {0, 1, θ}"""
    theta = Rational(theta)
    return roots_modulus(1 + theta, theta, Rational(0))


def eastwood_ezhov(a: Union[Rational, int, str]) -> Modulus:
    """Modulus of the normal-form parameter a, 100μ = (28a)³"""
    a = rational(a)
    return Modulus((28 * a) ** 3 / 100)


def eastwood_ezhov_inverse(mu: Modulus) -> Union[Rational, float]:
    """Parameter a with 100μ = (28a)³; exact when 100μ is a rational cube"""
    if mu.is_infinite:
        raise OutOfRange("Infinite modulus has no normal-form parameter")
    value = 100 * mu.value
    negative = value < 0
    value = abs(value)
    numerator, exact_numerator = integer_nthroot(int(value.p), 3)
    denominator, exact_denominator = integer_nthroot(int(value.q), 3)
    if exact_numerator and exact_denominator:
        root = Rational(numerator, denominator)
        return (-root if negative else root) / 28
    root = float(value) ** (1.0 / 3.0)
    logger.debug(f"Normal-form parameter is irrational :: 100μ = {formatRational(100 * mu.value)}")
    return (-root if negative else root) / 28

