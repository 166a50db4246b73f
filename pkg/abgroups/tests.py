import random

from django.test import SimpleTestCase

from abgroups.exceptions import AbGroupError
from abgroups.groups import (
    Bounds,
    FinAbGroup,
    invariant_factors,
    k1_sandwich,
    k1_total_bounds,
    khorami_kz3,
    khorami_s3,
)
from ahss.pages import e2, first_differential, twist_class
from graded.algebra import Height
from steenrod.standard import sphere_ring


class InvariantFactorTests(SimpleTestCase):
    def test_chain(self):
        self.assertEqual(invariant_factors([2, 3]), (6,))
        self.assertEqual(invariant_factors([4, 6]), (2, 12))
        self.assertEqual(invariant_factors([2, 2, 4]), (2, 2, 4))
        self.assertEqual(invariant_factors([]), ())

    def test_isomorphic_groups_compare_equal(self):
        self.assertEqual(FinAbGroup(0, (2, 3)), FinAbGroup.cyclic(6))
        self.assertEqual(FinAbGroup(1, (6, 4)), FinAbGroup.parse("Z + Z/12 + Z/2"))

    def test_units_dropped(self):
        self.assertEqual(FinAbGroup(0, (1, 1)), FinAbGroup.zero())

    def test_bad_orders_refused(self):
        with self.assertRaises(AbGroupError):
            FinAbGroup(0, (0,))
        with self.assertRaises(AbGroupError):
            FinAbGroup(-1)


class RelationTests(SimpleTestCase):
    def test_cokernel(self):
        self.assertEqual(FinAbGroup.from_relations([[2, 0], [0, 3]]), FinAbGroup.cyclic(6))
        self.assertEqual(FinAbGroup.from_relations([[2, 4]]), FinAbGroup(1, (2,)))
        self.assertEqual(FinAbGroup.from_relations([[0, 0]]), FinAbGroup(2))

    def test_no_relations(self):
        self.assertEqual(FinAbGroup.from_relations([], generators=3), FinAbGroup(3))
        with self.assertRaises(AbGroupError):
            FinAbGroup.from_relations([])

    def test_ragged_rows_refused(self):
        with self.assertRaises(AbGroupError):
            FinAbGroup.from_relations([[1, 2], [3]])

    def test_diagonal_presentations_match_direct_sums(self):
        rng = random.Random(31)
        for _ in range(30):
            orders = [rng.randint(0, 12) for _ in range(rng.randint(1, 4))]
            matrix = [[order if i == j else 0 for j in range(len(orders))] for i, order in enumerate(orders)]
            expected = FinAbGroup.zero()
            for order in orders:
                expected = expected + FinAbGroup.cyclic(order)
            self.assertEqual(FinAbGroup.from_relations(matrix), expected)

    def test_row_operations_preserve_the_group(self):
        # adding a multiple of one relation to another changes nothing
        self.assertEqual(
            FinAbGroup.from_relations([[4, 0], [0, 6]]),
            FinAbGroup.from_relations([[4, 0], [12, 6]]),
        )


class ParseTests(SimpleTestCase):
    def test_forms(self):
        self.assertEqual(FinAbGroup.parse("0"), FinAbGroup.zero())
        self.assertEqual(FinAbGroup.parse("Z"), FinAbGroup(1))
        self.assertEqual(FinAbGroup.parse("Z^3"), FinAbGroup(3))
        self.assertEqual(FinAbGroup.parse("Z/0"), FinAbGroup(1))
        self.assertEqual(FinAbGroup.parse("Z^2 ⊕ Z/4"), FinAbGroup(2, (4,)))

    def test_str(self):
        self.assertEqual(str(FinAbGroup(2, (4, 2))), "Z^2 ⊕ Z/2 ⊕ Z/4")
        self.assertEqual(str(FinAbGroup.zero()), "0")
        self.assertEqual(FinAbGroup.parse(str(FinAbGroup(1, (6,)))), FinAbGroup(1, (6,)))

    def test_garbage_refused(self):
        for text in ("Q", "Z/x", "Z^", "Z/2 + "):
            with self.assertRaises(AbGroupError):
                FinAbGroup.parse(text)


class SandwichTests(SimpleTestCase):
    def test_tensor_and_tor(self):
        self.assertEqual((FinAbGroup.cyclic(6).tensor_z2, FinAbGroup.cyclic(6).tor_z2), (1, 1))
        self.assertEqual((FinAbGroup(1).tensor_z2, FinAbGroup(1).tor_z2), (1, 0))
        self.assertEqual((FinAbGroup.cyclic(5).tensor_z2, FinAbGroup.cyclic(5).tor_z2), (0, 0))

    def test_additive(self):
        a, b = FinAbGroup.parse("Z + Z/4"), FinAbGroup.parse("Z/6 + Z/9")
        self.assertEqual((a + b).tensor_z2, a.tensor_z2 + b.tensor_z2)
        self.assertEqual((a + b).tor_z2, a.tor_z2 + b.tor_z2)

    def test_single_degree(self):
        self.assertEqual(k1_sandwich(FinAbGroup.cyclic(4), FinAbGroup.cyclic(2)), Bounds(1, 2))
        self.assertTrue(k1_sandwich(FinAbGroup(1), FinAbGroup.zero()).exact)

    def test_three_sphere(self):
        for k in (1, 3, 5, 7):
            self.assertEqual(k1_total_bounds(khorami_s3(k)), Bounds(0, 0))
        for k in (2, 4, 6):
            self.assertEqual(k1_total_bounds(khorami_s3(k)), Bounds(1, 2))
        self.assertEqual(k1_total_bounds(khorami_s3(0)), Bounds(2, 2))

    def test_eilenberg_maclane_space(self):
        self.assertEqual(k1_total_bounds(khorami_kz3(3)), Bounds(0, 0))
        with self.assertRaises(AbGroupError):
            khorami_kz3(0)

    def test_non_periodic_degrees_refused(self):
        with self.assertRaises(AbGroupError):
            k1_total_bounds({2: FinAbGroup(1)})

    def test_bounds(self):
        self.assertIn(2, Bounds(1, 2))
        self.assertNotIn(3, Bounds(1, 2))
        self.assertEqual(str(Bounds(1, 2)), "[1, 2]")
        self.assertEqual(str(Bounds(0, 0)), "0")
        with self.assertRaises(AbGroupError):
            Bounds(2, 1)


class SpectralSequenceAgreementTests(SimpleTestCase):
    def test_three_sphere_at_height_one(self):
        ring = sphere_ring(3)
        height = Height(2, 1)
        for k in range(1, 9):
            page = first_differential(e2(ring, height), twist_class(ring, "sigma3", k))
            self.assertIn(page.total, k1_total_bounds(khorami_s3(k)), msg=f"k = {k}")
        self.assertIn(e2(ring, height).total, k1_total_bounds(khorami_s3(0)))
