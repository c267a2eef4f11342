import json
import os
import sys
import logging
import argparse
from typing import Any, Optional

from crtoolkit import __name__ as name
from crtoolkit.settings import Settings
from crtoolkit.errors import CRToolkitError, InvalidInput, PreconditionError
from crtoolkit.exact.matrices import formatVector, parseVector
from crtoolkit.exact.polynomials import formatPolynomial
from crtoolkit.tube.fields import TubeDatum
from crtoolkit.tube.kernels import (
    conical_check,
    is_minimal_sufficient,
    kernel_chain,
    levi_kernel,
    levi_matrices,
    tangent_space,
)
from crtoolkit.tube.hypersurfaces import ideal_invariance_witness, invariance_witness
from crtoolkit.endo.endomorphisms import (
    Endo,
    expected_aut_dim,
    find_cyclic_vector,
    general_position,
    globally_equivalent,
    is_arithmetic_progression,
    is_cyclic,
    is_cyclic_pair,
    locally_equivalent,
    scale_invariants,
    sigma_invariants,
    stability_order,
    trace_free,
)
from crtoolkit.endo.moduli import classify3
from crtoolkit.endo.construction import make_tube
from crtoolkit.cralgebra.cralgebras import CRAlgebra, condition_report, q_chain
from crtoolkit.cralgebra.lie import jacobi_check
from crtoolkit.cralgebra.bridge import tube_to_cralgebra
from crtoolkit.catalog.entries import catalog, entry
from crtoolkit.catalog.verify import ALL, verify


logger = logging.getLogger("crtoolkit.cli")

SUCCESS = 0
FAILURE = 1
INVALID = 2


def header(name: str):
    print("#" * 32)
    print(f"    {name}")
    print("#" * 32)
    print("")


def render(data: Any, indent: int = 0):
    pad = " " * indent
    if isinstance(data, dict):
        for key in sorted(data):
            value = data[key]
            if isinstance(value, dict):
                print(f"{pad}{key}:")
                render(value, indent + 2)
            else:
                print(f"{pad}{key:<28} :: {json.dumps(value, sort_keys=True)}")
    else:
        print(f"{pad}{json.dumps(data, sort_keys=True)}")


def emit(arguments: argparse.Namespace, title: str, data: Any):
    if arguments.json:
        print(json.dumps(data, sort_keys=True, indent=2))
        return
    header(title)
    render(data)


def write(path: str, data: Any):
    with open(path, "w") as handle:
        json.dump(data, handle, sort_keys=True, indent=2)
    logger.info(f"Written :: {path}")


def vector_argument(value: Optional[str], pointer: str) -> Optional[tuple]:
    if value is None:
        return None
    return parseVector([part.strip() for part in value.split(",")], pointer)


# Tube commands


def tube_analyze(arguments: argparse.Namespace) -> int:
    td = TubeDatum.load(arguments.file)
    chain = kernel_chain(td)
    report = {
        "name": td.name,
        "n": td.n,
        "basepoint": formatVector(td.basepoint),
        "tangent_space": tangent_space(td).toDict(),
        "kernel_chain": chain.toDict(),
        "degree": chain.degree,
        "minimal": is_minimal_sufficient(td),
        "conical": conical_check(td),
        "levi_kernel": levi_kernel(td).toDict(),
        "levi_matrices": [
            [[str(x) for x in row] for row in matrix] for matrix in levi_matrices(td)
        ],
    }
    emit(arguments, f"Tube :: {td.name or arguments.file}", report)
    return SUCCESS


def tube_witness(arguments: argparse.Namespace) -> int:
    td = TubeDatum.load(arguments.file)
    if not td.witnesses:
        raise InvalidInput("Tube datum has no witnesses", "/witnesses")
    labels = td.labels or tuple(f"xi{i + 1}" for i in range(len(td.fields)))
    witnesses = []
    for p in td.witnesses:
        witnesses.append(
            {
                "polynomial": formatPolynomial(p),
                "fields": {
                    label: invariance_witness(p, f) for label, f in zip(labels, td.fields)
                },
            }
        )
    ideal = {
        label: ideal_invariance_witness(td.witnesses, f)
        for label, f in zip(labels, td.fields)
    }
    report = {
        "witnesses": witnesses,
        "ideal": ideal,
        "invariant": all(ideal.values()),
    }
    emit(arguments, "Invariance witnesses", report)
    return SUCCESS


# Endomorphism commands


def endo_analyze(arguments: argparse.Namespace) -> int:
    phi = Endo.load(arguments.file)
    cyclic = is_cyclic(phi)
    report = {"n": phi.n, "cyclic": cyclic}
    a = vector_argument(arguments.a, "/--a")
    if a is not None:
        report["cyclic_pair"] = is_cyclic_pair(phi, a)

    if cyclic:
        report["sigma"] = sigma_invariants(trace_free(phi)).toDict()
        report["arithmetic_progression"] = is_arithmetic_progression(phi)
        report["scale_invariants"] = scale_invariants(phi).toDict()
        report["expected_aut_dim"] = expected_aut_dim(phi)
        if phi.n == 3:
            report.update(classify3(phi).toDict())
        if a is None:
            vector = find_cyclic_vector(phi)
            report["cyclic_vector"] = formatVector(vector) if vector else None

        d = arguments.d
        if 1 < d < phi.n:
            report["general_position"] = general_position(phi, d)
        try:
            report["stability_order"] = stability_order(phi, d)
        except PreconditionError as err:
            report["stability_order"] = None
            report["stability_note"] = str(err)

    emit(arguments, f"Endomorphism :: {phi.name or arguments.file}", report)
    return SUCCESS


def endo_compare(arguments: argparse.Namespace) -> int:
    phi, other = Endo.load(arguments.first), Endo.load(arguments.second)
    report = {"locally_equivalent": locally_equivalent(phi, other)}
    if arguments.glob:
        report["globally_equivalent"] = globally_equivalent(phi, other)
    emit(arguments, "Equivalence", report)
    return SUCCESS


def endo_make_tube(arguments: argparse.Namespace) -> int:
    phi = Endo.load(arguments.file)
    a = vector_argument(arguments.a, "/--a")
    td = make_tube(phi, arguments.d, a)
    write(arguments.output, td.toDict())
    report = {"output": arguments.output, "n": td.n, "fields": len(td.fields)}
    emit(arguments, "Tube construction", report)
    return SUCCESS


# CR algebra commands


def cralgebra_check(arguments: argparse.Namespace) -> int:
    cra = CRAlgebra.load(arguments.file)
    ok, triple = jacobi_check(cra.g)
    if not ok:
        report = {"jacobi": False, "jacobi_failure": list(triple)}
        emit(arguments, "CR algebra", report)
        return FAILURE
    report = condition_report(cra).toDict()
    report["jacobi"] = True
    report["q_chain"] = q_chain(cra).toDict()
    emit(arguments, f"CR algebra :: {cra.name or arguments.file}", report)
    return SUCCESS


def cralgebra_from_tube(arguments: argparse.Namespace) -> int:
    td = TubeDatum.load(arguments.file)
    cra = tube_to_cralgebra(td)
    write(arguments.output, cra.toDict())
    report = {
        "output": arguments.output,
        "dim": cra.g.dim,
        "degree": q_chain(cra).degree,
    }
    emit(arguments, "CR algebra from tube", report)
    return SUCCESS


# Catalog commands


def catalog_list(arguments: argparse.Namespace) -> int:
    entries = [
        {
            "name": e.name,
            "family": e.family,
            "params": e.params,
            "description": e.description,
        }
        for e in catalog()
    ]
    if arguments.json:
        print(json.dumps(entries, sort_keys=True, indent=2))
        return SUCCESS
    header("Catalog")
    for e in entries:
        print(f"{e['name']:<12} :: {e['family']:<6} {e['description'] or ''}")
    return SUCCESS


def catalog_dump(arguments: argparse.Namespace) -> int:
    emit(arguments, f"Catalog entry :: {arguments.name}", entry(arguments.name).toDict())
    return SUCCESS


def catalog_verify(arguments: argparse.Namespace) -> int:
    report = verify(arguments.name)
    if arguments.json:
        print(json.dumps(report.toDict(), sort_keys=True, indent=2))
    else:
        header(f"Verification :: {arguments.name}")
        for e in report.entries:
            print(f"{e.name:<12} :: {'pass' if e.passed else 'FAIL'}")
            for failure in e.failures():
                print(
                    f"    {failure.invariant} :: expected {failure.expected}, "
                    f"computed {failure.computed} {failure.error or ''}"
                )
    return SUCCESS if report.passed else FAILURE


# global flags, accepted before the group or after the leaf command
DEFAULTS = {"debug": False, "json": False, "seed": 0, "tol": 1e-9}


def common_arguments() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--debug", action="store_true")
    common.add_argument("--json", action="store_true", help="Emit JSON reports")
    common.add_argument("--seed", type=int, help="Seed for randomized searches")
    common.add_argument("--tol", type=float, help="Numeric oracle tolerance")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = common_arguments()
    parser = argparse.ArgumentParser(name, parents=[common])

    groups = parser.add_subparsers(dest="group", required=True)

    # tube
    tube = groups.add_parser("tube", help="Affine tube data")
    tube_commands = tube.add_subparsers(dest="command", required=True)
    analyze = tube_commands.add_parser(
        "analyze", help="Tangent space, kernel chain, Levi form", parents=[common]
    )
    analyze.add_argument("file")
    analyze.set_defaults(handler=tube_analyze)
    witness = tube_commands.add_parser(
        "witness", help="Polynomial invariance", parents=[common]
    )
    witness.add_argument("file")
    witness.set_defaults(handler=tube_witness)

    # endo
    endo = groups.add_parser("endo", help="Cyclic endomorphisms")
    endo_commands = endo.add_subparsers(dest="command", required=True)
    analyze = endo_commands.add_parser(
        "analyze", help="Invariants of an endomorphism", parents=[common]
    )
    analyze.add_argument("file")
    analyze.add_argument("--d", type=int, default=2, help="Number of powers")
    analyze.add_argument("--a", help="Base point, comma separated rationals")
    analyze.set_defaults(handler=endo_analyze)
    compare = endo_commands.add_parser(
        "compare", help="Local and global equivalence", parents=[common]
    )
    compare.add_argument("first")
    compare.add_argument("second")
    compare.add_argument("--global", dest="glob", action="store_true")
    compare.set_defaults(handler=endo_compare)
    make = endo_commands.add_parser(
        "make-tube", help="Tube datum of (φ, d, a)", parents=[common]
    )
    make.add_argument("file")
    make.add_argument("--d", type=int, required=True)
    make.add_argument("--a", required=True, help="Base point, comma separated rationals")
    make.add_argument("-o", "--output", required=True)
    make.set_defaults(handler=endo_make_tube)

    # cralgebra
    cralgebra = groups.add_parser("cralgebra", help="CR algebras")
    cralgebra_commands = cralgebra.add_subparsers(dest="command", required=True)
    check = cralgebra_commands.add_parser(
        "check", help="Conditions I to V and degree", parents=[common]
    )
    check.add_argument("file")
    check.set_defaults(handler=cralgebra_check)
    from_tube = cralgebra_commands.add_parser(
        "from-tube", help="CR algebra of a tube", parents=[common]
    )
    from_tube.add_argument("file")
    from_tube.add_argument("-o", "--output", required=True)
    from_tube.set_defaults(handler=cralgebra_from_tube)

    # catalog
    cat = groups.add_parser("catalog", help="Worked examples")
    cat_commands = cat.add_subparsers(dest="command", required=True)
    listing = cat_commands.add_parser("list", parents=[common])
    listing.set_defaults(handler=catalog_list)
    dump = cat_commands.add_parser("dump", parents=[common])
    dump.add_argument("name")
    dump.set_defaults(handler=catalog_dump)
    check = cat_commands.add_parser("verify", parents=[common])
    check.add_argument("name", nargs="?", default=ALL)
    check.set_defaults(handler=catalog_verify)

    return parser


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    try:
        arguments = parser.parse_args(argv)
    except SystemExit as err:
        return INVALID if err.code else SUCCESS
    for key, value in DEFAULTS.items():
        if not hasattr(arguments, key):
            setattr(arguments, key, value)

    # logger
    logging.basicConfig(
        level=logging.DEBUG
        if arguments.debug or os.environ.get("DEBUG")
        else logging.INFO,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )

    try:
        Settings.init(seed=arguments.seed, tolerance=arguments.tol)
        return arguments.handler(arguments)
    except CRToolkitError as err:
        logger.error(f"{type(err).__name__} :: {err}")
        return INVALID
    except OSError as err:
        logger.error(f"Unable to access file :: {err}")
        return INVALID


if __name__ == "__main__":
    sys.exit(main())
