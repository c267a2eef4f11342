import unittest

import numpy as np
from sympy import ImmutableMatrix, Rational, diag

from crtoolkit.endo.consts import EX, EY, EZ, LIGHT_CONE, MU0
from crtoolkit.endo.endomorphisms import Endo, is_cyclic
from crtoolkit.endo.inversion import invert_modulus
from crtoolkit.endo.moduli import (
    Modulus,
    classify3,
    discriminant,
    eastwood_ezhov,
    eastwood_ezhov_inverse,
    ex_modulus,
    ey_modulus,
    modulus,
)
from crtoolkit.errors import InvalidInput, OutOfRange, PreconditionError
from crtoolkit.exact.matrices import toMatrix
from crtoolkit.exact.scalars import sign


def ey_matrix(omega) -> ImmutableMatrix:
    return toMatrix([[0, -1, 0], [1, 0, 0], [0, 0, omega]])


class TestModulus(unittest.TestCase):
    def test_wire(self):
        self.assertTrue(Modulus.parse("inf").is_infinite)
        self.assertEqual(Modulus.parse("27/4").value, Rational(27, 4))
        self.assertEqual(str(Modulus(Rational(1, 2))), "1/2")
        self.assertEqual(Modulus().toJSON(), "inf")

    def test_families(self):
        self.assertEqual(ey_modulus(3), Modulus(Rational(1, 2)))
        self.assertEqual(ey_modulus(1), Modulus(Rational(-27, 50)))
        self.assertEqual(ey_modulus(Rational(1, 2)), Modulus(Rational(-35937, 5476)))
        self.assertEqual(ex_modulus(3), Modulus(Rational(9261, 400)))
        self.assertEqual(ex_modulus(Rational(5, 2)), Modulus(Rational(185193, 3136)))
        self.assertTrue(ex_modulus(2).is_infinite)

    def test_matrix_agrees_with_roots(self):
        self.assertEqual(modulus(Endo(ey_matrix(5))), ey_modulus(5))
        self.assertEqual(modulus(Endo(ImmutableMatrix(diag(0, 1, 7)))), ex_modulus(7))


class TestClassify(unittest.TestCase):
    def test_classes(self):
        light_cone = classify3(Endo(toMatrix([[0, 1, 0], [-1, 0, 0], [0, 0, 0]])))
        self.assertEqual(light_cone.cls, LIGHT_CONE)
        self.assertEqual(
            light_cone.toDict(), {"class": LIGHT_CONE, "modulus": "inf", "mu0": "27/4"}
        )

        ez = classify3(Endo(toMatrix([[0, 0, 0], [1, 0, 0], [0, 0, 1]])))
        self.assertEqual(ez.cls, EZ)
        self.assertEqual(str(ez.modulus), "27/4")

        self.assertEqual(classify3(Endo(ey_matrix(3))).cls, EY)
        self.assertEqual(classify3(Endo(ImmutableMatrix(diag(0, 1, 3)))).cls, EX)

    def test_discriminant(self):
        ez = Endo(toMatrix([[0, 0, 0], [1, 0, 0], [0, 0, 1]]))
        self.assertEqual(discriminant(ez), 0)
        self.assertGreater(discriminant(Endo(ImmutableMatrix(diag(0, 1, 3)))), 0)
        self.assertLess(discriminant(Endo(ey_matrix(3))), 0)

    def test_discriminant_sign(self):
        rng = np.random.default_rng(23)
        checked = 0
        while checked < 100:
            phi = Endo(
                toMatrix([[int(x) for x in row] for row in rng.integers(-3, 4, size=(3, 3))])
            )
            if not is_cyclic(phi):
                continue
            checked += 1
            mu, disc = modulus(phi), discriminant(phi)
            if mu.is_infinite:
                self.assertEqual(classify3(phi).cls, LIGHT_CONE)
                continue
            difference = mu.value - MU0
            self.assertEqual(sign(difference), sign(disc), f"{phi.matrix}")
            self.assertEqual(classify3(phi).cls == EZ, disc == 0)

    def test_family_sweeps(self):
        for k in range(1, 40):
            omega = Rational(k, 4)
            self.assertEqual(classify3(Endo(ey_matrix(omega))).cls, EY, f"ω = {omega}")
            theta = 2 + Rational(k, 7)
            self.assertEqual(
                classify3(Endo(ImmutableMatrix(diag(0, 1, theta)))).cls, EX, f"θ = {theta}"
            )

    def test_preconditions(self):
        with self.assertRaises(PreconditionError):
            modulus(Endo(ImmutableMatrix(diag(1, 1, 2))))
        with self.assertRaises(PreconditionError):
            modulus(Endo(ImmutableMatrix(diag(0, 1, 2, 3))))


class TestNormalForm(unittest.TestCase):
    def test_forward(self):
        self.assertEqual(eastwood_ezhov(Rational(5, 28)), Modulus(Rational(5, 4)))
        self.assertEqual(eastwood_ezhov("0"), Modulus(Rational(0)))

    def test_inverse(self):
        self.assertEqual(eastwood_ezhov_inverse(Modulus(Rational(5, 4))), Rational(5, 28))
        self.assertEqual(eastwood_ezhov_inverse(Modulus(Rational(-5, 4))), Rational(-5, 28))
        self.assertAlmostEqual(
            eastwood_ezhov_inverse(Modulus(Rational(1))), 100 ** (1 / 3) / 28, places=12
        )
        with self.assertRaises(OutOfRange):
            eastwood_ezhov_inverse(Modulus())


class TestInversion(unittest.TestCase):
    def test_ey(self):
        self.assertAlmostEqual(invert_modulus(EY, Rational(1, 2)), 3.0, places=9)
        self.assertAlmostEqual(invert_modulus(EY, Rational(-27, 50)), 1.0, places=9)

    def test_ex(self):
        self.assertAlmostEqual(invert_modulus(EX, Rational(9261, 400)), 3.0, places=9)
        self.assertAlmostEqual(invert_modulus(EX, "2146689/270400"), 7.0, places=8)

    def test_near_threshold(self):
        target = Rational(6749999, 1000000)
        omega = invert_modulus(EY, target)
        self.assertGreater(omega, 1e4)
        self.assertLess(abs(float(ey_modulus(Rational(float(omega))).value - target)), 1e-12)

        target = MU0 + Rational(1, 1000000)
        theta = invert_modulus(EX, target)
        self.assertGreater(theta, 2)
        self.assertLess(abs(float(ex_modulus(Rational(float(theta))).value - target)), 1e-12)

    def test_ranges(self):
        with self.assertRaises(OutOfRange):
            invert_modulus(EY, 7)
        with self.assertRaises(OutOfRange):
            invert_modulus(EX, 1)
        with self.assertRaises(InvalidInput):
            invert_modulus(EZ, Rational(27, 4))
