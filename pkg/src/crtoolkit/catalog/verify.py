"""Runs the analyzers over catalog entries and compares against expectations."""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Optional, Sequence

from sympy import Integer, Rational

from crtoolkit.catalog.consts import CROSS_ORACLE, FAIL, META, PASS, SKIPPED
from crtoolkit.catalog.entries import CatalogEntry, catalog, entry
from crtoolkit.cralgebra.bridge import tube_to_cralgebra
from crtoolkit.cralgebra.cralgebras import (
    CRAlgebra,
    ConditionReport,
    condition_report,
    nondegeneracy_degree_alg,
)
from crtoolkit.cralgebra.lie import is_solvable, jacobi_check, sl2_triple_check
from crtoolkit.endo.endomorphisms import (
    Endo,
    expected_aut_dim,
    is_arithmetic_progression,
    is_cyclic,
    locally_equivalent,
    stability_order,
)
from crtoolkit.endo.moduli import Modulus, classify3, modulus
from crtoolkit.errors import CRToolkitError, InvalidDatum, InvalidInput
from crtoolkit.exact.scalars import formatRational, rational
from crtoolkit.tube.hypersurfaces import ideal_invariance_witness
from crtoolkit.tube.kernels import (
    KernelChain,
    conical_check,
    is_minimal_sufficient,
    kernel_chain,
    tangent_space,
)


logger = logging.getLogger("crtoolkit.catalog.verify")

ALL = "ALL"


def wire(value: Any) -> Any:
    """Computed value in the JSON wire format"""
    if isinstance(value, (bool, str)) or value is None:
        return value
    if isinstance(value, Modulus):
        return str(value)
    if isinstance(value, Integer):
        return int(value)
    if isinstance(value, Rational):
        return formatRational(value)
    if isinstance(value, (list, tuple)):
        return [wire(v) for v in value]
    return value


def canonical(value: Any) -> Any:
    """Comparison key: numbers and numeric strings collapse to "p/q" text"""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, (list, tuple)):
        return [canonical(v) for v in value]
    if isinstance(value, Modulus):
        return str(value)
    if isinstance(value, (int, Rational)):
        return formatRational(value)
    if isinstance(value, str):
        try:
            return formatRational(rational(value))
        except InvalidInput:
            return value
    return value


class Analysis:
    """Lazily computed invariants of one catalog entry"""

    def __init__(self, subject: CatalogEntry):
        self.entry = subject

    @property
    def tube(self):
        if self.entry.kind != "tube":
            raise InvalidInput(f"Entry is not a tube :: {self.entry.name}")
        return self.entry.payload

    @property
    def endo(self) -> Endo:
        if self.entry.endo is None:
            raise InvalidInput(f"Entry has no generating endomorphism :: {self.entry.name}")
        return self.entry.endo

    @cached_property
    def chain(self) -> KernelChain:
        return kernel_chain(self.tube)

    @cached_property
    def bridge(self) -> CRAlgebra:
        return tube_to_cralgebra(self.tube)

    @property
    def algebra(self) -> CRAlgebra:
        if self.entry.kind == "cralgebra":
            return self.entry.payload
        return self.bridge

    @cached_property
    def report(self) -> ConditionReport:
        return condition_report(self.algebra)

    def _witness(self) -> bool:
        td = self.tube
        if not td.witnesses:
            return False
        return all(ideal_invariance_witness(td.witnesses, f) for f in td.fields)

    def _condition(self, name: str) -> Callable[[], Any]:
        return lambda: self.report.conditions[name]

    @cached_property
    def analyzers(self) -> dict:
        analyzers = {
            "tangent_dim": lambda: tangent_space(self.tube).dim,
            "degree": lambda: self.chain.degree,
            "kernel_dims": lambda: self.chain.dims,
            "minimal": lambda: is_minimal_sufficient(self.tube),
            "conical": lambda: conical_check(self.tube),
            "witness": self._witness,
            "algebra_degree": lambda: nondegeneracy_degree_alg(self.bridge),
            "bridge_dim": lambda: self.bridge.g.dim,
            "bridge_solvable": lambda: is_solvable(self.bridge.g),
            "cyclic": lambda: is_cyclic(self.endo),
            "modulus": lambda: modulus(self.endo),
            "class": lambda: classify3(self.endo).cls,
            "arithmetic_progression": lambda: is_arithmetic_progression(self.endo),
            "aut_dim": lambda: expected_aut_dim(self.endo),
            "stability_order": lambda: stability_order(
                self.endo, self.entry.params.get("d", 2)
            ),
            "jacobi": lambda: jacobi_check(self.algebra.g)[0],
            "dim": lambda: self.algebra.g.dim,
            "k": lambda: self.report.k,
            "derived_dim": lambda: self.report.derived_dim,
            "nilcenter_dim": lambda: self.report.nilcenter_dim,
            "sl2_triple": lambda: sl2_triple_check(
                self.algebra.g, *self.entry.extras["sl2_triple"]
            ),
        }
        for name in (
            "I_dims",
            "II_brackets",
            "III_not_levi_flat",
            "IV_levi_degenerate",
            "V_two_nondegenerate",
            "effective",
            "minimal_generation",
            "solvable",
        ):
            analyzers[name] = self._condition(name)
        return analyzers

    def compute(self, invariant: str) -> Any:
        return self.analyzers[invariant]()


@dataclass
class InvariantResult:
    invariant: str
    expected: Any
    computed: Any
    source: str
    status: str
    error: Optional[str] = None

    def toDict(self) -> dict:
        data = {
            "invariant": self.invariant,
            "expected": self.expected,
            "computed": self.computed,
            "source": self.source,
            "status": self.status,
        }
        if self.error:
            data["error"] = self.error
        return data


@dataclass
class EntryReport:
    name: str
    kind: str
    results: list = field(default_factory=list)

    def __str__(self) -> str:
        status = PASS if self.passed else FAIL
        return f"EntryReport('{self.name}', {status})"

    @property
    def passed(self) -> bool:
        return all(r.status != FAIL for r in self.results)

    def failures(self) -> list:
        return [r for r in self.results if r.status == FAIL]

    def toDict(self) -> dict:
        return {
            "name": self.name,
            "kind": self.kind,
            "status": PASS if self.passed else FAIL,
            "results": [r.toDict() for r in self.results],
        }


@dataclass
class VerificationReport:
    entries: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def toDict(self) -> dict:
        return {
            "status": PASS if self.passed else FAIL,
            "entries": [e.toDict() for e in self.entries],
        }


def _check(analysis: Analysis, invariant: str, expected: Any, source: str, meta: bool) -> InvariantResult:
    if meta:
        return InvariantResult(invariant, expected, None, source, META)
    try:
        computed = wire(analysis.compute(invariant))
    except CRToolkitError as err:
        logger.warning(f"Analyzer failed :: {analysis.entry.name} {invariant} {err}")
        return InvariantResult(invariant, expected, None, source, FAIL, str(err))
    status = PASS if canonical(expected) == canonical(computed) else FAIL
    if status == FAIL:
        logger.warning(
            f"Mismatch :: {analysis.entry.name} {invariant} expected={expected} computed={computed}"
        )
    return InvariantResult(invariant, expected, computed, source, status)


def _cross_oracle(analysis: Analysis) -> InvariantResult:
    """Tube degree against the degree of the bridged CR algebra"""
    source = "DERIVED: tube kernel chain"
    try:
        tube_degree = analysis.chain.degree
    except CRToolkitError as err:
        return InvariantResult(CROSS_ORACLE, None, None, source, FAIL, str(err))
    try:
        algebra_degree = nondegeneracy_degree_alg(analysis.bridge)
    except InvalidDatum as err:
        # fields not closed under the bracket
        return InvariantResult(CROSS_ORACLE, tube_degree, None, source, SKIPPED, str(err))
    status = PASS if tube_degree == algebra_degree else FAIL
    return InvariantResult(CROSS_ORACLE, tube_degree, algebra_degree, source, status)


def verify_entry(subject: CatalogEntry) -> EntryReport:
    analysis = Analysis(subject)
    report = EntryReport(subject.name, subject.kind)
    for invariant, expectation in subject.expected.items():
        report.results.append(
            _check(
                analysis,
                invariant,
                expectation.value,
                expectation.source,
                expectation.metadata,
            )
        )
    if subject.kind == "tube":
        report.results.append(_cross_oracle(analysis))
    logger.info(f"Verified :: {report}")
    return report


def verify(name: str = ALL) -> VerificationReport:
    """Verify one named entry, or every fixture for ALL"""
    subjects = list(catalog()) if name == ALL else [entry(name)]
    return VerificationReport([verify_entry(s) for s in subjects])


def inequivalence_matrix(names: Sequence[str]) -> dict:
    """Pairwise local equivalence of endomorphism-backed entries"""
    endos = []
    for name in names:
        subject = entry(name)
        if subject.endo is None:
            raise InvalidInput(f"Entry has no generating endomorphism :: {name}")
        endos.append(subject.endo)
    matrix = [[locally_equivalent(a, b) for b in endos] for a in endos]
    return {"names": list(names), "matrix": matrix}
