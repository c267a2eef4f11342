"""Builders for every parametrized family in the catalog.

Each builder validates its parameters and returns a `Built` record: the
payload (tube datum, CR algebra or endomorphism), the generating
endomorphism when there is one, default expectations, and extra vectors
used by certificates.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Optional, Union

from sympy import ImmutableMatrix, Rational, diag, zeros
from sympy.polys.domains import QQ_I

from crtoolkit.cralgebra.cralgebras import CRAlgebra
from crtoolkit.cralgebra.lie import RealLieAlgebra
from crtoolkit.endo.construction import make_tube
from crtoolkit.endo.endomorphisms import Endo
from crtoolkit.endo.moduli import ex_modulus, ey_modulus
from crtoolkit.errors import InvalidDatum, InvalidInput, OutOfRange
from crtoolkit.exact.matrices import parseMatrix, toMatrix
from crtoolkit.exact.polynomials import polynomial, variables
from crtoolkit.exact.scalars import conjugate, gaussian, imag_part, parseGaussian, rational, real_part
from crtoolkit.tube.fields import AffineField, TubeDatum


logger = logging.getLogger("crtoolkit.catalog.families")

Payload = Union[TubeDatum, CRAlgebra, Endo]


@dataclass
class Built:
    payload: Payload
    endo: Optional[Endo] = None
    expected: dict = field(default_factory=dict)
    extras: dict = field(default_factory=dict)


def derived(value: Any, oracle: str = "catalog family defaults") -> dict:
    return {"value": value, "source": f"DERIVED: {oracle}"}


def _integer(params: dict, key: str, minimum: int) -> int:
    value = params.get(key)
    if not isinstance(value, int) or isinstance(value, bool):
        raise InvalidInput(f"Expected an integer parameter `{key}`", f"/params/{key}")
    if value < minimum:
        raise OutOfRange(f"Parameter `{key}` must be at least {minimum} :: {value}")
    return value


def _rational(params: dict, key: str) -> Rational:
    if key not in params:
        raise InvalidInput(f"Missing parameter `{key}`", f"/params/{key}")
    return rational(params[key], f"/params/{key}")


def _with_witnesses(datum: TubeDatum, witnesses: tuple) -> TubeDatum:
    return TubeDatum(
        datum.n, datum.basepoint, datum.fields, witnesses, datum.name, datum.labels
    )


def _endo_tube(name: str, phi: ImmutableMatrix, a: tuple, witnesses: tuple = ()) -> Built:
    endo = Endo(phi, name)
    datum = make_tube(endo, 2, a, name)
    if witnesses:
        datum = _with_witnesses(datum, witnesses)
    expected = {
        "degree": derived(2, "construction guarantee for cyclic pairs"),
        "kernel_dims": derived([2, 1, 0], "construction guarantee for cyclic pairs"),
        "minimal": derived("holds", "construction guarantee for cyclic pairs"),
        "conical": derived(True),
        "cyclic": derived(True),
        "algebra_degree": derived(2, "tube kernel chain"),
    }
    if witnesses:
        expected["witness"] = derived(True)
    return Built(datum, endo, expected)


# Endomorphism-generated tubes in R³


def light_cone(params: dict) -> Built:
    x1, x2, x3 = variables(3)
    witness = polynomial({(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): -1}, (x1, x2, x3))
    phi = toMatrix([[0, 1, 0], [-1, 0, 0], [0, 0, 0]])
    built = _endo_tube("EI", phi, (1, 0, 1), (witness,))
    built.expected.update(
        {
            "modulus": derived("inf"),
            "class": derived("LIGHT_CONE"),
            "arithmetic_progression": derived(True),
            "aut_dim": derived(7),
        }
    )
    return built


def ey(params: dict) -> Built:
    omega = _rational(params, "omega")
    if omega <= 0:
        raise OutOfRange(f"EY needs ω > 0 :: {omega}")
    phi = toMatrix([[0, -1, 0], [1, 0, 0], [0, 0, omega]])
    built = _endo_tube(f"EY({omega})", phi, (1, 0, 1))
    built.expected.update(
        {
            "modulus": derived(str(ey_modulus(omega)), "roots {i, -i, omega}"),
            "class": derived("EY"),
            "arithmetic_progression": derived(False),
            "aut_dim": derived(5),
            "stability_order": derived(1),
        }
    )
    return built


def ez(params: dict) -> Built:
    phi = toMatrix([[0, 0, 0], [1, 0, 0], [0, 0, 1]])
    built = _endo_tube("EZ", phi, (1, 0, 1))
    built.expected.update(
        {
            "modulus": derived("27/4"),
            "class": derived("EZ"),
            "arithmetic_progression": derived(False),
            "aut_dim": derived(5),
            "stability_order": derived(1),
        }
    )
    return built


def ex(params: dict) -> Built:
    theta = _rational(params, "theta")
    if theta <= 2:
        raise OutOfRange(f"EX needs θ > 2 :: {theta}")
    phi = toMatrix([[0, 0, 0], [0, 1, 0], [0, 0, theta]])
    built = _endo_tube(f"EX({theta})", phi, (1, 1, 1))
    built.expected.update(
        {
            "modulus": derived(str(ex_modulus(theta)), "roots {0, 1, theta}"),
            "class": derived("EX"),
            "arithmetic_progression": derived(False),
            "aut_dim": derived(5),
            "stability_order": derived(1),
        }
    )
    return built


def raising(m: int) -> ImmutableMatrix:
    """e_j ↦ (j+1)·e_{j+1} on R^{m+1}"""
    matrix = zeros(m + 1, m + 1)
    for j in range(1, m + 1):
        matrix[j, j - 1] = j
    return ImmutableMatrix(matrix)


def lowering(m: int) -> ImmutableMatrix:
    """e_{j+1} ↦ (m−j)·e_j on R^{m+1}"""
    matrix = zeros(m + 1, m + 1)
    for j in range(m):
        matrix[j, j + 1] = m - j
    return ImmutableMatrix(matrix)


def normal_curve_cone(params: dict) -> Built:
    """Cone over the rational normal curve, x₀x_{j+1} = x₁x_j"""
    m = _integer(params, "m", 2)
    gens = variables(m + 1, start=0)
    witnesses = []
    for j in range(1, m):
        terms = {}
        left = [0] * (m + 1)
        left[0] += 1
        left[j + 1] += 1
        right = [0] * (m + 1)
        right[1] += 1
        right[j] += 1
        terms[tuple(left)] = 1
        terms[tuple(right)] = terms.get(tuple(right), 0) - 1
        witnesses.append(polynomial(terms, gens))
    a = tuple(1 if j == 0 else 0 for j in range(m + 1))
    built = _endo_tube(f"IP({m})", raising(m), a, tuple(witnesses))
    built.expected.update(
        {
            "arithmetic_progression": derived(True),
            "aut_dim": derived(m + 4, "nilpotent cyclic endomorphism"),
        }
    )
    if m == 2:
        built.expected["modulus"] = derived("inf")
        built.expected["class"] = derived("LIGHT_CONE")
    return built


# Tubes given directly by affine fields


def development(params: dict) -> Built:
    """Fields ζ = diag(1..m) and ξ(x) = (1, 2x₁, 3x₂, …, m·x_{m−1}) at e₁"""
    m = _integer(params, "m", 3)
    zeta = AffineField(ImmutableMatrix(diag(*range(1, m + 1))))
    linear = zeros(m, m)
    for j in range(1, m):
        linear[j, j - 1] = j + 1
    xi = AffineField(
        ImmutableMatrix(linear), tuple(Rational(1 if j == 0 else 0) for j in range(m))
    )
    witnesses = ()
    if m == 3:
        x, y, z = variables(3)
        witnesses = (
            polynomial(
                {
                    (2, 2, 0): 3,
                    (3, 0, 1): -4,
                    (0, 3, 0): -4,
                    (1, 1, 1): 6,
                    (0, 0, 2): -1,
                },
                (x, y, z),
            ),
        )
    a = tuple(Rational(1 if j == 0 else 0) for j in range(m))
    datum = TubeDatum(m, a, (zeta, xi), witnesses, f"KU({m})", ("zeta", "xi"))
    expected = {
        "tangent_dim": derived(2),
        "degree": derived(2),
        "kernel_dims": derived([2, 1, 0]),
        "minimal": derived("holds"),
        "conical": derived(True),
        "algebra_degree": derived(2, "tube kernel chain"),
        "bridge_dim": derived(m + 2),
        "bridge_solvable": derived(True),
    }
    if witnesses:
        expected["witness"] = derived(True)
    return Built(datum, None, expected)


def binary_forms(params: dict) -> Built:
    """sl₂-type fields on R^{m+1}, m = k + c − 1, at e₀ + … + e_{k−2}"""
    k = _integer(params, "k", 2)
    c = _integer(params, "c", 1)
    if k > 4:
        raise OutOfRange(f"JP is available for k = 2, 3, 4 :: {k}")
    m = k + c - 1
    zeta1 = AffineField(ImmutableMatrix(diag(*range(0, m + 1))))
    zeta2 = AffineField(ImmutableMatrix(diag(*range(m, -1, -1))))
    raise_ = AffineField(raising(m))
    lower = AffineField(lowering(m))
    if k == 2:
        fields, labels = (zeta2, raise_), ("zeta2", "raise")
    elif k == 3:
        fields, labels = (zeta1, zeta2, raise_), ("zeta1", "zeta2", "raise")
    else:
        fields = (zeta1, zeta2, raise_, lower)
        labels = ("zeta1", "zeta2", "raise", "lower")
    a = tuple(Rational(1 if j < k - 1 else 0) for j in range(m + 1))

    witnesses = ()
    if k == 3 and c == 1:
        gens = variables(4, start=0)
        witnesses = (
            polynomial(
                {
                    (2, 0, 0, 2): 1,
                    (1, 0, 3, 0): 4,
                    (1, 1, 1, 1): -6,
                    (0, 2, 2, 0): -3,
                    (0, 3, 0, 1): 4,
                },
                gens,
            ),
        )
    datum = TubeDatum(m + 1, a, fields, witnesses, f"JP({k},{c})", labels)
    expected = {
        "tangent_dim": derived(k),
        "degree": derived(k),
        "kernel_dims": derived(list(range(k, -1, -1))),
        "algebra_degree": derived(k, "tube kernel chain"),
    }
    if witnesses:
        expected["witness"] = derived(True)
    return Built(datum, None, expected)


def quadric_cone(params: dict) -> Built:
    """2x₁xₙ − Σ_{j=2}^{n−1} x_j² at e₁ with Euler and x₁∂_j + x_j∂ₙ"""
    n = _integer(params, "n", 3)
    gens = variables(n)
    terms = {}
    corner = [0] * n
    corner[0] += 1
    corner[n - 1] += 1
    terms[tuple(corner)] = 2
    for j in range(1, n - 1):
        square = [0] * n
        square[j] = 2
        terms[tuple(square)] = -1
    witness = polynomial(terms, gens)

    fields = [AffineField.euler(n)]
    for j in range(1, n - 1):
        linear = zeros(n, n)
        linear[j, 0] = 1
        linear[n - 1, j] = 1
        fields.append(AffineField(ImmutableMatrix(linear)))
    labels = ("euler",) + tuple(f"n{j + 1}" for j in range(1, n - 1))
    a = tuple(Rational(1 if j == 0 else 0) for j in range(n))
    datum = TubeDatum(n, a, tuple(fields), (witness,), f"QC({n})", labels)
    expected = {
        "tangent_dim": derived(n - 1),
        "degree": derived(2),
        "kernel_dims": derived([n - 1, 1, 0]),
        "minimal": derived("holds"),
        "conical": derived(True),
        "witness": derived(True),
        "algebra_degree": derived(2, "tube kernel chain"),
    }
    return Built(datum, None, expected)


# Perfect-basis CR algebras on (z, x, x̄, y, ȳ) with σz = −z

Z, XX, XB, YY, YB = range(5)


def _vector(**coefficients) -> list:
    index = {"z": Z, "x": XX, "xb": XB, "y": YY, "yb": YB}
    vector = [QQ_I(0)] * 5
    for key, value in coefficients.items():
        vector[index[key]] = value
    return vector


def _sigma(vector: list) -> list:
    return [
        -conjugate(vector[Z]),
        conjugate(vector[XB]),
        conjugate(vector[XX]),
        conjugate(vector[YB]),
        conjugate(vector[YY]),
    ]


def _scale(c, vector: list) -> list:
    return [c * v for v in vector]


def _add(*vectors) -> list:
    return [sum(values, QQ_I(0)) for values in zip(*vectors)]


# b₀ = iz, b₁ = x + x̄, b₂ = i(x − x̄), b₃ = y + ȳ, b₄ = i(y − ȳ)
O = QQ_I(0)
I = QQ_I(0, 1)
HALF = QQ_I(QQ_I.dom(1, 2), 0)

TO_REAL = {
    Z: [-I, O, O, O, O],
    XX: [O, HALF, -I * HALF, O, O],
    XB: [O, HALF, I * HALF, O, O],
    YY: [O, O, O, HALF, -I * HALF],
    YB: [O, O, O, HALF, I * HALF],
}


def to_real_basis(vector: list) -> list:
    result = [O] * 5
    for c, coefficient in enumerate(vector):
        if coefficient == O:
            continue
        for k, entry in enumerate(TO_REAL[c]):
            if entry != O:
                result[k] += coefficient * entry
    return result


def perfect_basis(
    beta1, a1, a2, b3, b4, name: str
) -> tuple:
    """CR algebra of a perfect basis; the remaining constants follow from Jacobi.

    Returns the algebra and a converter from (z, x, x̄, y, ȳ) coordinates to
    Gaussian vectors over the real basis b₀…b₄.
    """
    d1 = 1 - beta1
    if d1 == QQ_I(0):
        raise OutOfRange(f"Perfect basis needs β₁ ≠ 1 :: {name}")
    d2 = conjugate(b3) + d1 * b4
    cy = 2 * beta1 - 1
    cx = -d2 * cy * QQ_I.revert(d1)

    table = {
        (XX, XB): _vector(z=QQ_I(1), x=a1, xb=-conjugate(a1), y=a2, yb=-conjugate(a2)),
        (XX, YB): _vector(x=beta1, xb=QQ_I(1), y=b3, yb=b4),
        (YY, YB): _vector(y=QQ_I(1), yb=QQ_I(-1)),
        (YY, XX): _vector(x=d1, y=d2),
        (Z, XX): _vector(z=cx),
        (Z, XB): _vector(z=conjugate(cx)),
        (Z, YY): _vector(z=cy),
        (Z, YB): _vector(z=conjugate(cy)),
    }
    table[(XB, YY)] = _sigma(table[(XX, YB)])
    table[(YB, XB)] = _sigma(table[(YY, XX)])
    for (c, d), value in list(table.items()):
        table[(d, c)] = _scale(QQ_I(-1), value)

    def bracket(u: list, w: list) -> list:
        result = [QQ_I(0)] * 5
        for c in range(5):
            if u[c] == O:
                continue
            for d in range(5):
                if w[d] == O or (c, d) not in table:
                    continue
                result = _add(result, _scale(u[c] * w[d], table[(c, d)]))
        return result

    real_basis = [
        _vector(z=I),
        _vector(x=QQ_I(1), xb=QQ_I(1)),
        _vector(x=I, xb=-I),
        _vector(y=QQ_I(1), yb=QQ_I(1)),
        _vector(y=I, yb=-I),
    ]
    brackets = {}
    for i in range(5):
        for j in range(i + 1, 5):
            coefficients = to_real_basis(bracket(real_basis[i], real_basis[j]))
            if any(imag_part(v) != 0 for v in coefficients):
                raise InvalidDatum(f"Perfect basis brackets are not real :: [{i},{j}] in {name}")
            brackets[(i, j)] = tuple(real_part(v) for v in coefficients)
    g = RealLieAlgebra.fromBrackets(5, brackets, ("iz", "x+xb", "i(x-xb)", "y+yb", "i(y-yb)"))
    q = [to_real_basis(_vector(x=QQ_I(1))), to_real_basis(_vector(y=QQ_I(1)))]
    return CRAlgebra.fromBasis(g, q, name), to_real_basis


def _gaussian_param(params: dict, key: str):
    if key not in params:
        raise InvalidInput(f"Missing parameter `{key}`", f"/params/{key}")
    return parseGaussian(params[key], f"/params/{key}")


def _q(value) -> "QQ_I":
    return gaussian(value, 0)


def _perfect_expected(derived_dim: Optional[int] = 4) -> dict:
    expected = {
        "jacobi": derived(True),
        "dim": derived(5),
        "I_dims": derived(True),
        "II_brackets": derived(True),
        "III_not_levi_flat": derived(True),
        "IV_levi_degenerate": derived(True),
        "V_two_nondegenerate": derived(True),
        "effective": derived(True),
        "solvable": derived(True),
        "k": derived(2),
    }
    if derived_dim is not None:
        expected["derived_dim"] = derived(derived_dim)
    return expected


def gu(params: dict) -> Built:
    gamma = _rational(params, "gamma")
    if gamma == 0:
        raise OutOfRange("GU needs γ ≠ 0")
    cra, _ = perfect_basis(
        _q(2),
        _q(0),
        _q(-2 * gamma ** 2),
        gaussian(0, -2 * gamma),
        gaussian(0, 3 * gamma),
        f"GU({gamma})",
    )
    return Built(cra, None, _perfect_expected())


def gx(params: dict) -> Built:
    beta4 = _rational(params, "beta4")
    gamma = _rational(params, "gamma")
    cra, _ = perfect_basis(
        _q(-1),
        _q(beta4),
        gaussian((3 * beta4 ** 2 + gamma ** 2) / 4, -gamma * beta4 / 2),
        gaussian(-beta4, gamma),
        _q(beta4),
        f"GX({beta4},{gamma})",
    )
    return Built(cra, None, _perfect_expected())


def aii(params: dict) -> Built:
    beta4 = _rational(params, "beta4")
    if beta4 == 0:
        raise OutOfRange("AII needs β₄ ≠ 0")
    cra, convert = perfect_basis(_q(0), _q(0), _q(0), _q(0), _q(beta4), f"AII({beta4})")
    b = _q(beta4)
    inverse = QQ_I.revert(b)
    e_plus = _vector(y=QQ_I(1), yb=QQ_I(-1))
    h = _scale(
        -inverse,
        _vector(x=QQ_I(1), xb=QQ_I(1), y=b - 1, yb=b + 1),
    )
    e_minus = _scale(
        inverse * inverse / 4,
        _vector(
            z=QQ_I(2),
            x=2 - 2 * b,
            xb=2 + 2 * b,
            y=-(1 - b) * (1 - b),
            yb=(1 + b) * (1 + b),
        ),
    )
    extras = {"sl2_triple": tuple(convert(v) for v in (h, e_plus, e_minus))}
    expected = {
        "jacobi": derived(True),
        "dim": derived(5),
        "solvable": derived(False),
        "sl2_triple": derived(True),
    }
    return Built(cra, None, expected, extras)


def fq(params: dict) -> Built:
    """sl(2,R) ⊕ r on (H₀, E₀, F₀, X, Z) with q spanned by (0,−i,i,2,μ), (½,i/2,i/2,0,ν)"""
    mu = _gaussian_param(params, "mu")
    nu = _gaussian_param(params, "nu")
    if abs(imag_part(mu)) != 2:
        raise OutOfRange(f"FQ needs Im μ = ±2 :: {mu}")
    if nu not in (QQ_I(1), QQ_I(-1), QQ_I(0, 1), QQ_I(0, -1)):
        raise OutOfRange(f"FQ needs ν ∈ {{±1, ±i}} :: {nu}")
    brackets = {
        (0, 1): (0, 2, 0, 0, 0),
        (0, 2): (0, 0, -2, 0, 0),
        (1, 2): (1, 0, 0, 0, 0),
        (3, 4): (0, 0, 0, 0, 1),
    }
    g = RealLieAlgebra.fromBrackets(5, brackets, ("H0", "E0", "F0", "X", "Z"))
    half = QQ_I.dom(1, 2)
    q = [
        [QQ_I(0), QQ_I(0, -1), QQ_I(0, 1), QQ_I(2), mu],
        [QQ_I(half, 0), QQ_I(0, half), QQ_I(0, half), QQ_I(0), nu],
    ]
    cra = CRAlgebra.fromBasis(g, q, "FQ")
    expected = _perfect_expected(derived_dim=None)
    expected["solvable"] = derived(False, "contains sl(2,R)")
    return Built(cra, None, expected)


def endomorphism(params: dict) -> Built:
    matrix = parseMatrix(params.get("matrix"), "/params/matrix", square=True)
    endo = Endo(matrix, params.get("name"))
    return Built(endo, endo, {"cyclic": derived(True)})


FAMILIES: dict = {
    "EI": light_cone,
    "EY": ey,
    "EZ": ez,
    "EX": ex,
    "IP": normal_curve_cone,
    "KU": development,
    "JP": binary_forms,
    "QC": quadric_cone,
    "GU": gu,
    "GX": gx,
    "AII": aii,
    "FQ": fq,
    "ENDO": endomorphism,
}


def build(family: str, params: Optional[dict] = None) -> Built:
    builder: Optional[Callable[[dict], Built]] = FAMILIES.get(family)
    if builder is None:
        raise InvalidInput(f"Unknown catalog family :: {family}")
    built = builder(dict(params or {}))
    logger.debug(f"Built family member :: {family} {params or {}}")
    return built
