import random

import numpy as np
from django.test import SimpleTestCase

from graded import fields
from graded.algebra import AlgebraPresentation, GradedDims, Height
from graded.exceptions import PresentationError
from graded.rewriting import TruncationRule, monomial_order_key


def ravenel_wilson_factor(height, name, k):
    """R(name_k) with the degree p^k * 2(p^n - 1)/(p - 1) and rule g^p -> c*g."""
    p, n = height.p, height.n
    degree = p ** k * 2 * (p ** n - 1) // (p - 1)
    coefficient = (-1) ** (n - 1) % p
    return AlgebraPresentation(height, ((f"{name}{k}", degree),), (TruncationRule(p, coefficient),))


def tensor_of_factors(height, name, count):
    return AlgebraPresentation.tensor_all(height, (ravenel_wilson_factor(height, name, k) for k in range(count)))


class HeightTests(SimpleTestCase):
    def test_modulus(self):
        self.assertEqual(Height(2, 1).modulus, 2)
        self.assertEqual(Height(2, 2).modulus, 6)
        self.assertEqual(Height(3, 2).modulus, 16)

    def test_rejects_composite_prime_and_zero_height(self):
        with self.assertRaises(PresentationError):
            Height(4, 1)
        with self.assertRaises(PresentationError):
            Height(2, 0)


class GradedDimsTests(SimpleTestCase):
    def test_keys_are_reduced_and_zeros_dropped(self):
        dims = GradedDims(Height(2, 2), {8: 1, 2: 1, 3: 0})
        self.assertEqual(dims.as_dict(), {2: 2})
        self.assertEqual(dims[14], 2)
        self.assertEqual(dims[1], 0)

    def test_equality_ignores_presentation(self):
        height = Height(2, 2)
        self.assertEqual(GradedDims(height, {0: 1, 6: 1}), GradedDims(height, [(0, 2)]))

    def test_convolution(self):
        height = Height(2, 2)
        left = GradedDims(height, {0: 1, 2: 1})
        right = GradedDims(height, {4: 2})
        self.assertEqual(left.convolve(right).as_dict(), {4: 2, 0: 2})

    def test_rows_list_every_residue(self):
        self.assertEqual(GradedDims.zero(Height(2, 1)).rows(), [(0, 0), (1, 0)])


class NormalFormTests(SimpleTestCase):
    def setUp(self):
        self.height = Height(2, 2)
        self.r_a0 = ravenel_wilson_factor(self.height, "a", 0)
        self.truncated = AlgebraPresentation.truncated_polynomial(self.height, "x", 6, 4)

    def test_idempotent_rule(self):
        square = self.r_a0.monomial({"a0": 2})
        self.assertEqual(self.r_a0.normal_form({square: 1}), {(1,): 1})

    def test_unit(self):
        self.assertEqual(self.r_a0.normal_form({(0,): 1}), {(0,): 1})

    def test_truncation_kills_high_powers(self):
        x = self.truncated
        product = x.multiply(x.normal_form({(3,): 1}), x.normal_form({(2,): 1}))
        self.assertEqual(product, {})

    def test_unknown_generator(self):
        with self.assertRaises(PresentationError):
            self.r_a0.monomial({"b0": 1})
        with self.assertRaises(PresentationError):
            self.r_a0.parse("a0 + b3")

    def test_wrong_length_monomial(self):
        with self.assertRaises(PresentationError):
            self.r_a0.normal_form({(1, 0): 1})

    def test_odd_prime_coefficient(self):
        # p = 3, n = 2: a0^3 -> -a0, i.e. 2*a0.
        height = Height(3, 2)
        algebra = ravenel_wilson_factor(height, "a", 0)
        self.assertEqual(algebra.normal_form({(3,): 1}), {(1,): 2})
        self.assertEqual(algebra.normal_form({(5,): 1}), {(1,): 1})

    def test_normal_form_matches_random_single_step_rewriting(self):
        for height, seed in ((Height(2, 1), 7), (Height(3, 2), 20240611)):
            rng = random.Random(seed)
            algebra = tensor_of_factors(height, "b", 2).tensor(
                AlgebraPresentation.truncated_polynomial(height, "x", 2, 3)
            )
            for _ in range(200):
                original = tuple(rng.randrange(0, 9) for _ in algebra.names)
                current, scalar = list(original), 1
                while scalar and not algebra.is_reduced(tuple(current)):
                    i = rng.choice([i for i, rule in enumerate(algebra.rules) if current[i] >= rule.exponent])
                    rule = algebra.rules[i]
                    current[i] -= rule.exponent - 1
                    scalar = scalar * rule.coefficient % height.p
                expected = {tuple(current): scalar} if scalar else {}
                self.assertEqual(algebra.normal_form({original: 1}), expected)


class MultiplicationTests(SimpleTestCase):
    def random_element(self, algebra, rng):
        basis = algebra.monomial_basis
        return algebra.normal_form({rng.choice(basis): rng.randrange(1, algebra.p) for _ in range(3)})

    def test_associative_and_commutative(self):
        rng = random.Random(3)
        for height in (Height(2, 2), Height(3, 1)):
            algebra = tensor_of_factors(height, "a", 2).tensor(
                AlgebraPresentation.truncated_polynomial(height, "x", 4, 3)
            )
            for _ in range(50):
                x, y, z = (self.random_element(algebra, rng) for _ in range(3))
                self.assertEqual(
                    algebra.multiply(algebra.multiply(x, y), z),
                    algebra.multiply(x, algebra.multiply(y, z)),
                )
                self.assertEqual(algebra.multiply(x, y), algebra.multiply(y, x))

    def test_exterior_generators_anticommute_at_odd_prime(self):
        height = Height(3, 1)
        algebra = AlgebraPresentation(
            height, (("e", 1), ("f", 3)), (TruncationRule(2), TruncationRule(2))
        )
        e, f = algebra.generator("e"), algebra.generator("f")
        self.assertEqual(algebra.multiply(e, f), {(1, 1): 1})
        self.assertEqual(algebra.multiply(f, e), {(1, 1): 2})
        self.assertEqual(algebra.multiply(e, e), {})

    def test_odd_generator_needs_exterior_rule(self):
        with self.assertRaises(PresentationError):
            AlgebraPresentation(Height(3, 1), (("e", 1),), (TruncationRule(3),))

    def test_inhomogeneous_rule_rejected(self):
        with self.assertRaises(PresentationError):
            AlgebraPresentation(Height(2, 2), (("y", 2),), (TruncationRule(2, 1),))


class BasisTests(SimpleTestCase):
    def test_two_factor_basis(self):
        height = Height(2, 2)
        algebra = tensor_of_factors(height, "b", 2)
        basis = algebra.basis(0)
        self.assertEqual([algebra.format_monomial(m) for m in basis], ["1", "b0", "b1", "b0*b1"])
        for residue in range(1, height.modulus):
            self.assertEqual(algebra.basis(residue), [])

    def test_empty_presentation(self):
        algebra = AlgebraPresentation.trivial(Height(2, 3))
        self.assertEqual(algebra.basis(0), [()])
        self.assertEqual(algebra.hilbert().as_dict(), {0: 1})

    def test_truncated_polynomial_collapses(self):
        algebra = AlgebraPresentation.truncated_polynomial(Height(2, 2), "x", 6, 4)
        self.assertEqual(algebra.basis(0), [(0,), (1,), (2,), (3,)])

    def test_hilbert_examples(self):
        self.assertEqual(ravenel_wilson_factor(Height(2, 2), "a", 0).hilbert().as_dict(), {0: 2})
        self.assertEqual(tensor_of_factors(Height(2, 1), "b", 3).hilbert().as_dict(), {0: 8})
        # p = 3, n = 1: |a0| = 2 in Z/4, so 1, a0, a0^2 sit in 0, 2, 0.
        self.assertEqual(ravenel_wilson_factor(Height(3, 1), "a", 0).hilbert().as_dict(), {0: 2, 2: 1})

    def test_hilbert_of_tensor_is_convolution(self):
        height = Height(3, 2)
        left = tensor_of_factors(height, "a", 2)
        right = AlgebraPresentation.truncated_polynomial(height, "x", 4, 5)
        self.assertEqual(left.tensor(right).hilbert(), left.hilbert().convolve(right.hilbert()))

    def test_total_dimension_is_p_to_the_j(self):
        for p in (2, 3):
            for n in (1, 2):
                for j in range(4):
                    algebra = tensor_of_factors(Height(p, n), "a", j)
                    self.assertEqual(algebra.hilbert().total, p ** j)


class TextTests(SimpleTestCase):
    def test_parse_and_format(self):
        algebra = tensor_of_factors(Height(2, 2), "b", 3)
        element = algebra.parse("b0^2*b1 + b2 + b2 + 1")
        self.assertEqual(algebra.format(element), "1 + b0*b1")
        self.assertEqual(algebra.format({}), "0")

    def test_parse_rejects_non_polynomials(self):
        algebra = tensor_of_factors(Height(3, 1), "b", 1)
        with self.assertRaises(PresentationError):
            algebra.parse("1/b0")
        with self.assertRaises(PresentationError):
            algebra.parse("b0 + (")
        for text in ("[b0]", "b0**-1", "b0**b0"):
            with self.subTest(text=text), self.assertRaises(PresentationError):
                algebra.parse(text)

    def test_each_generator_has_its_own_slot(self):
        algebra = tensor_of_factors(Height(2, 2), "b", 3)
        self.assertEqual(algebra.parse("b2*b0^3 + b1"), {(0, 1, 0): 1, (1, 0, 1): 1})
        self.assertEqual(algebra.format(algebra.parse("b2*b0^3 + b1")), "b1 + b0*b2")
        self.assertEqual(algebra.parse("b1^2 + b1"), {})

    def test_monomial_order_is_degree_first(self):
        monomials = [(2, 0), (0, 1), (0, 0), (1, 0), (1, 1)]
        self.assertEqual(sorted(monomials, key=monomial_order_key), [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1)])


class FieldTests(SimpleTestCase):
    def test_rank_and_nullspace(self):
        matrix = np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
        self.assertEqual(fields.rank(matrix, 2), 2)
        kernel = fields.nullspace(matrix, 2)
        self.assertEqual(kernel.shape, (1, 3))
        self.assertFalse((fields.matmul(matrix, kernel.T, 2)).any())
        self.assertEqual(fields.rank(matrix, 3), 3)

    def test_reduce_vector(self):
        reduced = fields.row_reduce(np.array([[1, 2, 0], [0, 0, 1]]), 3)
        self.assertFalse(fields.reduce_vector(reduced, [2, 1, 2], 3).any())
        self.assertTrue(fields.reduce_vector(reduced, [0, 1, 0], 3).any())

    def test_empty_matrices(self):
        self.assertEqual(fields.rank(np.zeros((0, 4), dtype=np.int64), 2), 0)
        self.assertEqual(fields.nullspace(np.zeros((0, 2), dtype=np.int64), 2).shape, (2, 2))

    def test_matrix_power(self):
        matrix = np.array([[1, 1], [0, 1]])
        self.assertEqual(fields.matrix_power(matrix, 3, 5).tolist(), [[1, 3], [0, 1]])
