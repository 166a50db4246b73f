import random

from django.test import SimpleTestCase

from ahss.exceptions import AHSSError
from ahss.pages import (
    converged,
    differential_length,
    e2,
    euler_characteristic,
    first_differential,
    leibniz_defect,
    next_possible_length,
    twist_class,
    twisted_differential,
)
from graded import fields
from graded.algebra import Height
from steenrod.standard import product, rp_infinity, sphere_ring


def turn(ring, n, value, multiplier=1, degree=None):
    height = Height(2, n)
    twist = twist_class(ring, value, multiplier, degree=degree)
    return first_differential(e2(ring, height), twist), twist


class E2Tests(SimpleTestCase):
    def test_spheres(self):
        self.assertEqual(e2(sphere_ring(4), Height(2, 2)).entries, {0: 1, 4: 1})
        self.assertEqual(e2(sphere_ring(3), Height(2, 1)).entries, {0: 1, 3: 1})

    def test_rp3(self):
        page = e2(rp_infinity(3), Height(2, 1))
        self.assertEqual(page.entries, {0: 1, 1: 1, 2: 1, 3: 1})
        self.assertEqual(page.r, 2)
        self.assertEqual(page.differentials, {})
        self.assertIsNone(page.previous)

    def test_infinite_ring_refused(self):
        with self.assertRaises(AHSSError):
            e2(rp_infinity(), Height(2, 1))

    def test_odd_prime_refused(self):
        with self.assertRaises(AHSSError):
            e2(sphere_ring(3), Height(3, 1))

    def test_collapsed_grading(self):
        page = e2(rp_infinity(3), Height(2, 1))
        self.assertEqual(page.collapsed().as_dict(), {0: 2, 1: 2})


class FirstDifferentialTests(SimpleTestCase):
    def test_three_sphere_odd_twist_vanishes(self):
        for multiplier in (1, 3, 5):
            page, _ = turn(sphere_ring(3), 1, "sigma3", multiplier)
            self.assertEqual(page.r, 4)
            self.assertEqual(page.entries, {})
            self.assertTrue(converged(page))

    def test_three_sphere_even_twist_survives(self):
        for multiplier in (0, 2, 4):
            page, twist = turn(sphere_ring(3), 1, "sigma3", multiplier)
            self.assertTrue(twist.is_zero)
            self.assertEqual(page.entries, {0: 1, 3: 1})
            self.assertEqual(page.total, 2)

    def test_d3_on_three_sphere(self):
        ring = sphere_ring(3)
        twist = twist_class(ring, "sigma3")
        height = Height(2, 1)
        self.assertEqual(twisted_differential(ring, height, twist, ring.one()), ring.parse("sigma3"))
        self.assertEqual(twisted_differential(ring, height, twist, ring.parse("sigma3")), {})

    def test_sphere_collapse(self):
        for n in (2, 3):
            m = n + 2
            page, _ = turn(sphere_ring(m), n, f"sigma{m}")
            self.assertEqual(page.r, 2 ** (n + 1))
            self.assertEqual(page.entries, {0: 1, m: 1})
            self.assertTrue(converged(page))

    def test_history(self):
        page, _ = turn(sphere_ring(3), 1, "sigma3")
        pages = page.history()
        self.assertEqual([p.r for p in pages], [2, 3, 4])
        self.assertEqual(pages[1].entries, {0: 1, 3: 1})
        self.assertEqual(pages[1].differential_ranks(), {0: 1})

    def test_wrong_twist_degree(self):
        ring = sphere_ring(4)
        with self.assertRaises(AHSSError):
            first_differential(e2(ring, Height(2, 1)), twist_class(ring, "sigma4"))

    def test_only_from_e2(self):
        page, twist = turn(sphere_ring(3), 1, "sigma3", 2)
        with self.assertRaises(AHSSError):
            first_differential(page, twist)

    def test_zero_twist_needs_degree(self):
        ring = sphere_ring(3)
        with self.assertRaises(AHSSError):
            twist_class(ring, "0")
        self.assertEqual(twist_class(ring, "0", degree=3).degree, 3)

    def test_unknown_class_refused(self):
        with self.assertRaises(AHSSError):
            twist_class(sphere_ring(3), "tau3")

    def test_product_with_sphere_vanishes(self):
        ring = product(rp_infinity(3), sphere_ring(3))
        page, _ = turn(ring, 1, "sigma3")
        self.assertEqual(page.entries, {})

    def test_untwisted_rp7(self):
        page, _ = turn(rp_infinity(7), 1, "0", degree=3)
        self.assertEqual(page.entries, {0: 1, 2: 1, 5: 1, 7: 1})


class ConvergenceTests(SimpleTestCase):
    def test_examples(self):
        four, _ = turn(sphere_ring(4), 2, "sigma4")
        self.assertEqual(four.r, 8)
        self.assertTrue(converged(four))

        three, _ = turn(sphere_ring(3), 1, "sigma3", 2)
        self.assertTrue(converged(three))

    def test_rp7_has_a_possible_d5(self):
        page, _ = turn(rp_infinity(7), 1, "0", degree=3)
        self.assertEqual(next_possible_length(page), 5)
        self.assertFalse(converged(page))

    def test_first_possible_length_on_e2(self):
        page = e2(sphere_ring(3), Height(2, 1))
        self.assertEqual(next_possible_length(page), 3)


class DifferentialPropertyTests(SimpleTestCase):
    """d o d, the degree law, the module Leibniz rule and the Euler characteristic."""

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.cases = [
            (product(rp_infinity(7), sphere_ring(3)), 1, "sigma3"),
            (product(rp_infinity(5, "t"), rp_infinity(3, "u"), sphere_ring(3)), 1, "sigma3"),
            (product(rp_infinity(9), sphere_ring(4)), 2, "sigma4"),
            (product(rp_infinity(15), sphere_ring(5)), 3, "sigma5"),
            (rp_infinity(7), 1, "0"),
        ]

    def test_square_zero(self):
        for ring, n, value in self.cases:
            page, _ = turn(ring, n, value, degree=n + 2)
            acting = page.previous
            length = acting.r
            for s, matrix in acting.differentials.items():
                following = acting.differentials.get(s + length)
                if following is not None and following.size and matrix.size:
                    self.assertFalse(fields.matmul(following, matrix, 2).any())

    def test_degree_law(self):
        for ring, n, value in self.cases:
            height = Height(2, n)
            twist = twist_class(ring, value, degree=n + 2)
            for s in range(ring.top_degree + 1):
                for monomial in ring.monomials_of_degree(s):
                    image = twisted_differential(ring, height, twist, {monomial: 1})
                    if image:
                        self.assertEqual(ring.degree_of(image), s + differential_length(height))

    def test_leibniz_defect_vanishes(self):
        rng = random.Random(2718)
        for ring, n, value in self.cases:
            page = e2(ring, Height(2, n))
            twist = twist_class(ring, value, degree=n + 2)
            for _ in range(15):
                x = {rng.choice(ring.monomials_of_degree(rng.randrange(0, 4)) or [ring.monomial()]): 1}
                y = {rng.choice(ring.monomials_of_degree(rng.randrange(0, 4)) or [ring.monomial()]): 1}
                self.assertEqual(leibniz_defect(page, twist, x, y), {})

    def test_euler_characteristic_preserved(self):
        for ring, n, value in self.cases:
            page, _ = turn(ring, n, value, degree=n + 2)
            start = page.history()[0]
            self.assertEqual(euler_characteristic(page), euler_characteristic(start))

    def test_zero_twist_is_the_primitive(self):
        ring = product(rp_infinity(7), sphere_ring(3))
        height = Height(2, 1)
        twist = twist_class(ring, "sigma3", multiplier=2)
        for s in range(ring.top_degree + 1):
            for monomial in ring.monomials_of_degree(s):
                self.assertEqual(
                    twisted_differential(ring, height, twist, {monomial: 1}),
                    ring.milnor_q(1, {monomial: 1}),
                )

    def test_spheres_collapse_without_twist(self):
        for m, n in ((3, 1), (4, 2), (5, 3)):
            page, _ = turn(sphere_ring(m), n, f"sigma{m}", multiplier=0)
            self.assertEqual(page.entries, {0: 1, m: 1})

