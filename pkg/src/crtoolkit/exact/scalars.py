import logging
import numbers
from fractions import Fraction
from typing import Any, Union

from sympy import Rational, SympifyError
from sympy.polys.domains import QQ, QQ_I
from sympy.polys.domains.gaussiandomains import GaussianRational

from crtoolkit.errors import InvalidInput


logger = logging.getLogger("crtoolkit.exact.scalars")

RationalLike = Union[Rational, int, str, Fraction]

ZERO = Rational(0)
ONE = Rational(1)


def rational(value: Any, pointer: str = "") -> Rational:
    """Convert a wire value ("p/q", "p" or an integer) to an exact Rational"""
    if isinstance(value, bool) or isinstance(value, float):
        # exact inputs only
        raise InvalidInput(f"Expected an exact rational, got `{value!r}`", pointer)
    if isinstance(value, Rational):
        return value
    if isinstance(value, Fraction):
        return Rational(value.numerator, value.denominator)
    if isinstance(value, numbers.Integral):
        return Rational(int(value))
    if isinstance(value, str):
        try:
            result = Rational(value)
        except (TypeError, ValueError, ZeroDivisionError, SympifyError):
            raise InvalidInput(f"Expected a rational, got `{value}`", pointer)
        if not isinstance(result, Rational):
            raise InvalidInput(f"Expected a rational, got `{value}`", pointer)
        return result
    raise InvalidInput(f"Expected a rational, got `{value!r}`", pointer)


def formatRational(value: Rational) -> str:
    value = Rational(value)
    if value.q == 1:
        return f"{value.p}"
    return f"{value.p}/{value.q}"


def gaussian(re: Any = 0, im: Any = 0) -> GaussianRational:
    return QQ_I(rational(re), rational(im))


def real_part(value: GaussianRational) -> Rational:
    return QQ.to_sympy(value.x)


def imag_part(value: GaussianRational) -> Rational:
    return QQ.to_sympy(value.y)


def conjugate(value: GaussianRational) -> GaussianRational:
    return QQ_I(value.x, -value.y)


def parseGaussian(data: Any, pointer: str = "") -> GaussianRational:
    """Parse {"re": "p/q", "im": "p/q"}; a plain rational is read as real"""
    if isinstance(data, dict):
        unknown = set(data.keys()) - {"re", "im"}
        if unknown:
            raise InvalidInput(f"Unknown keys {sorted(unknown)}", pointer)
        re = rational(data.get("re", 0), f"{pointer}/re")
        im = rational(data.get("im", 0), f"{pointer}/im")
        return gaussian(re, im)
    return gaussian(rational(data, pointer), 0)


def formatGaussian(value: GaussianRational) -> dict:
    return {
        "re": formatRational(real_part(value)),
        "im": formatRational(imag_part(value)),
    }


def sign(value: Rational) -> int:
    if value > 0:
        return 1
    if value < 0:
        return -1
    return 0


def toGaussian(value: Any) -> GaussianRational:
    """Accepts a GaussianRational, an (re, im) pair or a real rational"""
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, tuple) and len(value) == 2:
        return gaussian(*value)
    return gaussian(value, 0)
