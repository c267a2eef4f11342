import logging
from typing import Any, Sequence

from sympy import Poly, Rational, Symbol, groebner
from sympy.polys.domains import QQ

from crtoolkit.errors import CRToolkitError, DimensionError, InvalidInput
from crtoolkit.exact.scalars import formatRational, rational


logger = logging.getLogger("crtoolkit.exact.polynomials")


def variables(n: int, prefix: str = "x", start: int = 1) -> tuple:
    return tuple(Symbol(f"{prefix}{i}") for i in range(start, start + n))


def polynomial(terms: dict, gens: Sequence[Symbol]) -> Poly:
    """Poly over QQ from {exponent tuple: coefficient}"""
    rep = {}
    for exps, coef in terms.items():
        if len(exps) != len(gens):
            raise DimensionError(
                f"Exponent tuple {exps} does not match {len(gens)} variables"
            )
        value = rational(coef)
        if value != 0:
            rep[tuple(exps)] = value
    if not rep:
        return Poly(0, *gens, domain=QQ)
    return Poly.from_dict(rep, *gens, domain=QQ)


def parsePolynomial(data: Any, pointer: str = "") -> Poly:
    if not isinstance(data, dict):
        raise InvalidInput("Expected a polynomial object", pointer)
    names = data.get("vars")
    if not isinstance(names, list) or not names:
        raise InvalidInput("Expected a non-empty `vars` array", f"{pointer}/vars")
    if len(set(names)) != len(names):
        raise InvalidInput("Variable names must be distinct", f"{pointer}/vars")
    gens = tuple(Symbol(str(name)) for name in names)
    terms = {}
    for i, term in enumerate(data.get("terms", [])):
        where = f"{pointer}/terms/{i}"
        if not isinstance(term, dict):
            raise InvalidInput("Expected a term object", where)
        exps = term.get("exps")
        if not isinstance(exps, list) or len(exps) != len(names):
            raise DimensionError(f"Expected {len(names)} exponents", f"{where}/exps")
        if any(not isinstance(e, int) or isinstance(e, bool) or e < 0 for e in exps):
            raise InvalidInput("Exponents must be non-negative integers", f"{where}/exps")
        key = tuple(exps)
        terms[key] = terms.get(key, Rational(0)) + rational(term.get("coef"), f"{where}/coef")
    return polynomial(terms, gens)


def formatPolynomial(p: Poly) -> dict:
    return {
        "vars": [str(g) for g in p.gens],
        "terms": [
            {"exps": list(exps), "coef": formatRational(coef)}
            for exps, coef in p.terms()
            if coef != 0
        ],
    }


def distinct_root_count(p: Poly) -> int:
    """Number of distinct complex roots, deg p − deg gcd(p, p′)"""
    if p.is_zero:
        raise InvalidInput("Zero polynomial has no root count")
    if len(p.gens) != 1:
        raise DimensionError("Root counts need a univariate polynomial")
    return p.degree() - p.gcd(p.diff()).degree()


def multiplicity_profile(p: Poly) -> dict:
    """{multiplicity: number of distinct roots with that multiplicity}"""
    if p.is_zero:
        raise InvalidInput("Zero polynomial has no multiplicity profile")
    if len(p.gens) != 1:
        raise DimensionError("Multiplicity profiles need a univariate polynomial")
    _, factors = p.sqf_list()
    profile = {}
    for factor, multiplicity in factors:
        if factor.degree() > 0:
            profile[multiplicity] = profile.get(multiplicity, 0) + factor.degree()
    if sum(m * c for m, c in profile.items()) != p.degree():
        raise CRToolkitError(f"Multiplicities do not add up to the degree :: {p}")
    return profile


def evaluate(p: Poly, point: Sequence[Rational]) -> Rational:
    if len(point) != len(p.gens):
        raise DimensionError(
            f"Point of length {len(point)} for polynomial in {len(p.gens)} variables"
        )
    return Rational(p.as_expr().subs(dict(zip(p.gens, point))))


def ideal_contains(generators: Sequence[Poly], p: Poly) -> bool:
    """Exact ideal membership of p in (generators) over QQ"""
    if p.is_zero:
        return True
    generators = [g for g in generators if not g.is_zero]
    if not generators:
        return False
    gens = p.gens
    basis = groebner([g.as_expr() for g in generators], *gens, domain=QQ, order="grevlex")
    return bool(basis.contains(p.as_expr()))
