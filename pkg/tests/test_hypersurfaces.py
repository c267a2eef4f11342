import unittest

import numpy as np
from sympy import ImmutableMatrix, Rational, diag

from crtoolkit.catalog.families import binary_forms, lowering, raising
from crtoolkit.errors import PreconditionError
from crtoolkit.exact.matrices import toMatrix
from crtoolkit.exact.polynomials import polynomial, variables
from crtoolkit.exact.subspaces import Subspace
from crtoolkit.tube.fields import AffineField
from crtoolkit.tube.hypersurfaces import (
    gradient,
    hypersurface_levi_kernel,
    ideal_invariance_witness,
    invariance_witness,
    lie_derivative,
)


GENS = variables(3)


class TestWitnesses(unittest.TestCase):
    def setUp(self):
        self.cone = polynomial({(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): -1}, GENS)

    def test_euler(self):
        # homogeneous of degree 2
        derivative = lie_derivative(self.cone, AffineField.euler(3))
        self.assertEqual(derivative, self.cone * 2)

    def test_rotation(self):
        rotation = AffineField(toMatrix([[0, -1, 0], [1, 0, 0], [0, 0, 0]]))
        self.assertTrue(lie_derivative(self.cone, rotation).is_zero)
        self.assertTrue(invariance_witness(self.cone, rotation))

    def test_not_invariant(self):
        shift = AffineField.constant((1, 0, 0))
        self.assertFalse(invariance_witness(self.cone, shift))
        self.assertFalse(ideal_invariance_witness([self.cone], shift))

    def test_twisted_cubic(self):
        # twisted cubic ideal under the flow of (1, t, t², t³) along t
        x0, x1, x2, x3 = variables(4, start=0)
        gens = (x0, x1, x2, x3)
        ideal = [
            polynomial({(1, 0, 1, 0): 1, (0, 2, 0, 0): -1}, gens),
            polynomial({(1, 0, 0, 1): 1, (0, 1, 1, 0): -1}, gens),
            polynomial({(0, 1, 0, 1): 1, (0, 0, 2, 0): -1}, gens),
        ]
        raising = AffineField(
            toMatrix([[0, 0, 0, 0], [1, 0, 0, 0], [0, 2, 0, 0], [0, 0, 3, 0]])
        )
        self.assertTrue(ideal_invariance_witness(ideal, raising))
        self.assertTrue(invariance_witness(ideal[0], raising))
        self.assertFalse(invariance_witness(ideal[1], raising))


class TestBinaryCubics(unittest.TestCase):
    def setUp(self):
        self.datum = binary_forms({"k": 3, "c": 1}).payload
        self.discriminant = self.datum.witnesses[0]

    def test_all_fields(self):
        fields = [
            AffineField(ImmutableMatrix(diag(0, 1, 2, 3))),
            AffineField(ImmutableMatrix(diag(3, 2, 1, 0))),
            AffineField(raising(3)),
            AffineField(lowering(3)),
        ]
        for xi in fields:
            self.assertTrue(invariance_witness(self.discriminant, xi))

    def test_weights(self):
        # weight 6 under ζ₁ = diag(0, 1, 2, 3)
        zeta = AffineField(ImmutableMatrix(diag(0, 1, 2, 3)))
        self.assertEqual(
            lie_derivative(self.discriminant, zeta), self.discriminant * 6
        )
        self.assertTrue(lie_derivative(self.discriminant, AffineField(raising(3))).is_zero)


class TestHomogeneous(unittest.TestCase):
    def test_euler(self):
        rng = np.random.default_rng(5)
        for alpha in range(2, 7):
            for n in (2, 3, 4):
                with self.subTest(alpha=alpha, n=n):
                    gens = variables(n)
                    terms = {}
                    for j in range(n):
                        exps = [0] * n
                        exps[j] = alpha
                        terms[tuple(exps)] = int(rng.choice([-1, 1]))
                    p = polynomial(terms, gens)
                    derivative = lie_derivative(p, AffineField.euler(n))
                    self.assertEqual(derivative, p * alpha)
                    self.assertTrue(invariance_witness(p, AffineField.euler(n)))

    def test_scaling(self):
        cone = polynomial({(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): -1}, GENS)
        rotation = AffineField(toMatrix([[0, -1, 0], [1, 0, 0], [0, 0, 0]]))
        boost = AffineField(toMatrix([[0, 0, 1], [0, 0, 0], [1, 0, 0]]))
        shift = AffineField.constant((1, 0, 0))
        skew = AffineField(toMatrix([[0, 1, 0], [0, 0, 0], [0, 0, 0]]))
        for r in (Rational(-3), Rational(1, 2), Rational(7, 5)):
            scaled = cone * r
            for xi in (rotation, boost, shift, skew, AffineField.euler(3)):
                self.assertEqual(
                    invariance_witness(scaled, xi), invariance_witness(cone, xi)
                )
        self.assertFalse(invariance_witness(cone, skew))


class TestLeviKernel(unittest.TestCase):
    def test_cone(self):
        cone = polynomial({(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): -1}, GENS)
        self.assertEqual(gradient(cone, (1, 0, 1)), (2, 0, -2))
        self.assertEqual(
            hypersurface_levi_kernel(cone, (1, 0, 1)), Subspace.span([(1, 0, 1)], 3)
        )

    def test_cubic(self):
        cubic = polynomial({(3, 0, 0): 1, (0, 3, 0): 1, (0, 0, 3): -2}, GENS)
        self.assertEqual(hypersurface_levi_kernel(cubic, (1, 1, 1)).dim, 1)

    def test_sphere(self):
        sphere = polynomial({(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): 1, (0, 0, 0): -1}, GENS)
        self.assertEqual(hypersurface_levi_kernel(sphere, (0, 0, 1)).dim, 0)

    def test_preconditions(self):
        cone = polynomial({(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): -1}, GENS)
        with self.assertRaises(PreconditionError):
            hypersurface_levi_kernel(cone, (1, 0, 0))
        with self.assertRaises(PreconditionError):
            hypersurface_levi_kernel(cone, (0, 0, 0))
