import unittest

import numpy as np
from sympy import ImmutableMatrix, Rational, diag, eye

from crtoolkit.endo.construction import make_tube
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
    progression_constants,
    scale_invariants,
    sigma_invariants,
    stability_order,
    trace_free,
)
from crtoolkit.endo.moduli import modulus
from crtoolkit.errors import DimensionError, PreconditionError
from crtoolkit.exact.approx import eigenvalues, is_progression_numeric
from crtoolkit.exact.matrices import toMatrix
from crtoolkit.exact.subspaces import Subspace
from crtoolkit.settings import Settings
from crtoolkit.tube.kernels import HOLDS, is_minimal_sufficient, kernel_chain


def D(*values) -> ImmutableMatrix:
    return ImmutableMatrix(diag(*values))


IDENTITY = ImmutableMatrix(eye(3))
ROTATION = toMatrix([[0, 1, 0], [-1, 0, 0], [0, 0, 0]])
SHIFT = toMatrix([[0, 0, 0], [1, 0, 0], [0, 1, 0]])


def unitriangular(rng: np.random.Generator, n: int, lower_only: bool = False) -> ImmutableMatrix:
    """Random integer matrix with determinant 1"""
    lower = eye(n)
    upper = eye(n)
    for i in range(n):
        for j in range(i):
            lower[i, j] = int(rng.integers(-1, 2))
            upper[j, i] = int(rng.integers(-1, 2))
    if lower_only:
        return ImmutableMatrix(lower)
    return ImmutableMatrix(lower * upper)


def block_diagonal(real: list, pairs: list) -> ImmutableMatrix:
    """Real roots plus one rotation block per (re, im) pair"""
    blocks = [toMatrix([[x]]) for x in real]
    blocks += [toMatrix([[re, -im], [im, re]]) for re, im in pairs]
    return ImmutableMatrix(diag(*blocks))


def progression_sample(rng: np.random.Generator, n: int) -> ImmutableMatrix:
    center = int(rng.integers(-3, 4))
    step = int(rng.integers(1, 4))
    if rng.random() < 0.5:
        return block_diagonal([center + k * step for k in range(n)], [])
    # imaginary step: center ± i·o·step for the positive offsets o
    doubled = [2 * k - (n - 1) for k in range(n) if 2 * k > n - 1]
    real = [center] if n % 2 == 1 else []
    return block_diagonal(real, [(center, o * step) for o in doubled])


def distinct_sample(rng: np.random.Generator, n: int) -> ImmutableMatrix:
    pairs = int(rng.integers(0, n // 2 + 1))
    real = rng.choice(np.arange(-6, 7), size=n - 2 * pairs, replace=False)
    ims = rng.choice(np.arange(1, 7), size=pairs, replace=False)
    return block_diagonal(
        [int(x) for x in real], [(int(rng.integers(-3, 4)), int(b)) for b in ims]
    )


def random_cyclic(rng: np.random.Generator, n: int, bound: int = 3) -> Endo:
    while True:
        matrix = toMatrix(
            [[int(x) for x in row] for row in rng.integers(-bound, bound + 1, size=(n, n))]
        )
        phi = Endo(matrix)
        if is_cyclic(phi):
            return phi


class TestCyclic(unittest.TestCase):
    def tearDown(self):
        Settings.reset()

    def test_cyclic(self):
        self.assertTrue(is_cyclic(Endo(SHIFT)))
        self.assertFalse(is_cyclic(Endo(IDENTITY)))
        self.assertTrue(is_cyclic_pair(Endo(SHIFT), (1, 0, 0)))
        self.assertFalse(is_cyclic_pair(Endo(SHIFT), (0, 0, 1)))
        with self.assertRaises(DimensionError):
            is_cyclic_pair(Endo(SHIFT), (1, 0))

    def test_find_cyclic_vector(self):
        self.assertIsNone(find_cyclic_vector(Endo(IDENTITY)))
        self.assertEqual(find_cyclic_vector(Endo(SHIFT)), (1, 0, 0))

        Settings.init(seed=3)
        phi = Endo(D(1, 2, 3))
        vector = find_cyclic_vector(phi)
        self.assertTrue(is_cyclic_pair(phi, vector))


class TestSigma(unittest.TestCase):
    def test_sigma(self):
        sigma = sigma_invariants(Endo(ROTATION))
        self.assertEqual(sigma[1], 0)
        self.assertEqual(sigma[2], 1)
        self.assertEqual(sigma[3], 0)
        self.assertTrue(sigma.odd_vanish)
        self.assertEqual(sigma.toDict(), {"sigma2": "1", "sigma3": "0"})

    def test_trace_free(self):
        phi = Endo(toMatrix([[1, 0, 0], [0, 2, 0], [0, 0, 6]]))
        with self.assertRaises(PreconditionError):
            sigma_invariants(phi)
        self.assertTrue(trace_free(phi).is_trace_free())
        self.assertEqual(trace_free(phi).matrix, toMatrix([[-2, 0, 0], [0, -1, 0], [0, 0, 3]]))

    def test_constants(self):
        # offsets −1, 0, 1
        self.assertEqual(progression_constants(3), (1, 0, -1, 0))


class TestProgression(unittest.TestCase):
    def test_examples(self):
        self.assertTrue(is_arithmetic_progression(Endo(ROTATION)))
        self.assertTrue(is_arithmetic_progression(Endo(SHIFT)))
        self.assertTrue(is_arithmetic_progression(Endo(D(-3, -1, 1, 3))))
        self.assertFalse(is_arithmetic_progression(Endo(D(-2, -1, 1, 2))))
        self.assertFalse(is_arithmetic_progression(Endo(D(0, 1, 3))))

    def test_numeric_agreement(self):
        rng = np.random.default_rng(2024)
        for sample in range(200):
            n = int(rng.integers(3, 7))
            if sample % 2 == 0:
                spectrum = progression_sample(rng, n)
            else:
                spectrum = distinct_sample(rng, n)
            g = unitriangular(rng, n, lower_only=True)
            phi = Endo(ImmutableMatrix(g * spectrum * g.inv()))

            exact = is_arithmetic_progression(phi)
            numeric = is_progression_numeric(eigenvalues(phi.matrix))
            self.assertEqual(exact, numeric, f"sample {sample}: {phi.matrix}")
            if sample % 2 == 0:
                self.assertTrue(exact)


class TestEquivalence(unittest.TestCase):
    def test_scaling(self):
        rng = np.random.default_rng(7)
        scales = [Rational(p, q) for p in (-3, -2, -1, 1, 2, 3) for q in (1, 2, 5)]
        for sample in range(100):
            phi = random_cyclic(rng, 3)
            r = scales[int(rng.integers(0, len(scales)))]
            self.assertTrue(globally_equivalent(phi, phi.scaled(r)))

            if sample % 2 == 0:
                g = unitriangular(rng, 3)
                shift = int(rng.integers(-2, 3))
                other = Endo(ImmutableMatrix(r * g * phi.matrix * g.inv() + shift * eye(3)))
            else:
                other = random_cyclic(rng, 3)

            local = locally_equivalent(phi, other)
            self.assertEqual(local, modulus(phi) == modulus(other), f"sample {sample}")

            same = scale_invariants(phi) == scale_invariants(other)
            self.assertEqual(same, globally_equivalent(phi, other), f"sample {sample}")
            if sample % 2 == 0:
                self.assertTrue(same)

    def test_equivalence_relation(self):
        rng = np.random.default_rng(17)
        for sample in range(30):
            phi = random_cyclic(rng, 3 + sample % 2)
            n = phi.n
            g, h = unitriangular(rng, n), unitriangular(rng, n)
            shift = int(rng.integers(-2, 3))
            psi = phi.scaled(Rational(-2, 3)).conjugated(g)
            chi = Endo(ImmutableMatrix(3 * h * psi.matrix * h.inv() + shift * eye(n)))
            other = random_cyclic(rng, n)

            self.assertTrue(globally_equivalent(phi, phi))
            self.assertTrue(globally_equivalent(phi, psi))
            self.assertTrue(globally_equivalent(psi, chi))
            self.assertTrue(globally_equivalent(phi, chi))
            self.assertTrue(globally_equivalent(chi, phi))
            self.assertEqual(
                globally_equivalent(phi, other), globally_equivalent(other, phi)
            )
            self.assertEqual(
                globally_equivalent(chi, other), globally_equivalent(phi, other)
            )

    def test_progressions(self):
        # {i, 0, −i} and {−1, 0, 1} are locally but not globally equivalent
        real = Endo(D(-1, 0, 1))
        self.assertTrue(locally_equivalent(Endo(ROTATION), real))
        self.assertFalse(globally_equivalent(Endo(ROTATION), real))

    def test_preconditions(self):
        with self.assertRaises(PreconditionError):
            locally_equivalent(Endo(IDENTITY), Endo(SHIFT))
        with self.assertRaises(DimensionError):
            globally_equivalent(Endo(SHIFT), Endo(D(1, 2)))


class TestStability(unittest.TestCase):
    def test_symmetric(self):
        self.assertEqual(stability_order(Endo(D(-2, -1, 1, 2)), 2), 2)
        self.assertEqual(stability_order(Endo(D(0, 1, 3)), 2), 1)

    def test_symmetric_spectrum(self):
        rng = np.random.default_rng(19)
        symmetric = 0
        for sample in range(40):
            n = 3 + sample % 2
            if sample % 2 == 1:
                a, b = [int(x) for x in rng.choice(np.arange(1, 7), 2, replace=False)]
                spectrum = D(-a, -b, b, a)
            else:
                spectrum = distinct_sample(rng, n)
            g = unitriangular(rng, n)
            phi = Endo(ImmutableMatrix(g * spectrum * g.inv()))
            if not general_position(phi, 2):
                continue
            order = stability_order(phi, 2)
            if order == 2:
                symmetric += 1
                self.assertTrue(globally_equivalent(phi, phi.scaled(-1)), f"sample {sample}")
            if sample % 2 == 1:
                self.assertEqual(order, 2, f"sample {sample}")
        self.assertGreater(symmetric, 0)

    def test_general_position(self):
        self.assertFalse(general_position(Endo(D(-1, 0, 1)), 2))
        self.assertTrue(general_position(Endo(D(0, 1, 3)), 2))
        self.assertTrue(general_position(Endo(D(0, 1, 2, 3, 4)), 3))
        with self.assertRaises(PreconditionError):
            stability_order(Endo(D(-1, 0, 1)), 2)
        with self.assertRaises(PreconditionError):
            stability_order(Endo(D(0, 1, 2, 5)), 3)

    def test_aut_dim(self):
        self.assertEqual(expected_aut_dim(Endo(ROTATION)), 7)
        self.assertEqual(expected_aut_dim(Endo(SHIFT)), 6)
        self.assertEqual(expected_aut_dim(Endo(D(-1, 0, 1))), 5)
        self.assertEqual(expected_aut_dim(Endo(D(0, 1, 3))), 5)


class TestMakeTube(unittest.TestCase):
    def test_light_cone(self):
        datum = make_tube(Endo(ROTATION, "EI"), 2, (1, 0, 1))
        self.assertEqual(datum.labels, ("id", "phi"))
        self.assertEqual(kernel_chain(datum).dims, [2, 1, 0])

    def test_random(self):
        rng = np.random.default_rng(11)
        for sample in range(50):
            n = int(rng.integers(4, 7))
            d = 2 + sample % 2
            while True:
                phi = random_cyclic(rng, n, bound=2)
                a = tuple(int(x) for x in rng.integers(-2, 3, size=n))
                if is_cyclic_pair(phi, a):
                    break

            datum = make_tube(phi, d, a)
            chain = kernel_chain(datum)
            self.assertEqual(chain.degree, 2, f"sample {sample}")
            self.assertEqual(chain.spaces[1], Subspace.span([a], n))
            self.assertEqual(is_minimal_sufficient(datum), HOLDS)

    def test_preconditions(self):
        with self.assertRaises(PreconditionError):
            make_tube(Endo(ROTATION), 3, (1, 0, 1))
        with self.assertRaises(PreconditionError):
            make_tube(Endo(ROTATION), 2, (0, 0, 1))
