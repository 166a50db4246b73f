import random

from django.test import SimpleTestCase

from graded.rewriting import TruncationRule
from steenrod.exceptions import SteenrodError
from steenrod.rings import SteenrodRing
from steenrod.standard import binom_mod2, product, rp_infinity, sphere_ring, wu_bo


def random_homogeneous(ring, rng, max_degree):
    """A nonzero homogeneous element of random degree at most ``max_degree``, if one exists."""
    for _ in range(20):
        degree = rng.randrange(0, max_degree + 1)
        monomials = ring.monomials_of_degree(degree)
        if not monomials:
            continue
        chosen = {m: 1 for m in monomials if rng.random() < 0.5}
        if chosen:
            return ring.normal_form(chosen)
        return ring.normal_form({rng.choice(monomials): 1})
    return ring.one()


class SquareTests(SimpleTestCase):
    def setUp(self):
        self.rp = rp_infinity()
        self.t = self.rp.generator("t")

    def test_cartan_on_powers(self):
        rp = self.rp
        self.assertEqual(rp.sq(1, rp.power(self.t, 3)), rp.parse("t^4"))
        self.assertEqual(rp.sq(2, rp.power(self.t, 2)), rp.parse("t^4"))
        self.assertEqual(rp.sq(1, rp.power(self.t, 2)), {})

    def test_parse_powers(self):
        self.assertEqual(self.rp.parse("t^3"), {(3,): 1})
        self.assertEqual(self.rp.parse("t^3 + t + t^3"), {(1,): 1})

    def test_sq_zero_is_identity(self):
        element = self.rp.parse("t^5")
        self.assertEqual(self.rp.sq(0, element), element)

    def test_instability(self):
        rp = self.rp
        self.assertEqual(rp.sq(4, rp.parse("t^3")), {})
        self.assertEqual(rp.sq(3, rp.parse("t^3")), rp.parse("t^6"))

    def test_non_homogeneous_rejected(self):
        with self.assertRaises(SteenrodError):
            self.rp.sq(1, self.rp.parse("t + t^2"))

    def test_truncated_projective_space(self):
        rp3 = rp_infinity(3)
        self.assertEqual(rp3.hilbert(), {0: 1, 1: 1, 2: 1, 3: 1})
        self.assertEqual(rp3.sq(1, rp3.parse("t^3")), {})
        self.assertEqual(rp3.sq(2, rp3.parse("t")), {})

    def test_total_square(self):
        rp = self.rp
        self.assertEqual(rp.total_square(rp.parse("t^2")), rp.parse("t^2 + t^4"))
        self.assertEqual(rp.total_square(rp.parse("t^3")), rp.parse("t^3 + t^4 + t^5 + t^6"))

    def test_sphere_squares_vanish(self):
        sphere = sphere_ring(4)
        sigma = sphere.generator("sigma4")
        for i in range(1, 6):
            self.assertEqual(sphere.sq(i, sigma), {})
        self.assertEqual(sphere.hilbert(), {0: 1, 4: 1})


class RingValidationTests(SimpleTestCase):
    def test_top_square_must_be_the_square(self):
        with self.assertRaises(SteenrodError):
            SteenrodRing((("x", 2),), (None,), {"x": {2: "0"}})

    def test_square_degree_checked(self):
        with self.assertRaises(SteenrodError):
            SteenrodRing((("x", 2), ("y", 3)), (None, None), {"x": {1: "x^2"}})

    def test_square_index_range(self):
        with self.assertRaises(SteenrodError):
            SteenrodRing((("x", 2),), (None,), {"x": {3: "0"}})

    def test_non_truncating_rule_rejected(self):
        with self.assertRaises(SteenrodError):
            SteenrodRing((("x", 2),), (TruncationRule(2, 1),))

    def test_zero_degree_rejected(self):
        with self.assertRaises(SteenrodError):
            SteenrodRing((("x", 0),), (None,))

    def test_infinite_ring_has_no_top_degree(self):
        with self.assertRaises(SteenrodError):
            rp_infinity().top_degree

    def test_product(self):
        ring = product(rp_infinity(3, "t"), sphere_ring(2, "s"))
        self.assertEqual(ring.names, ("t", "s"))
        self.assertEqual(ring.hilbert(), {0: 1, 1: 1, 2: 2, 3: 2, 4: 1, 5: 1})
        self.assertEqual(ring.sq(1, ring.parse("t*s")), ring.parse("t^2*s"))
        with self.assertRaises(SteenrodError):
            product(rp_infinity(), rp_infinity())


class MilnorPrimitiveTests(SimpleTestCase):
    def setUp(self):
        self.rp = rp_infinity()

    def test_low_primitives_on_t(self):
        rp = self.rp
        t = rp.generator("t")
        self.assertEqual(rp.milnor_q(0, t), rp.parse("t^2"))
        self.assertEqual(rp.milnor_q(1, t), rp.parse("t^4"))
        for j in range(4):
            self.assertEqual(rp.milnor_q(j, t), rp.parse(f"t^{2 ** (j + 1)}"))

    def test_unit_is_killed(self):
        for j in range(4):
            self.assertEqual(self.rp.milnor_q(j, self.rp.one()), {})

    def test_closed_form_on_powers(self):
        rp = self.rp
        for j in range(4):
            for k in range(1, 9):
                expected = rp.parse(f"{k}*t^{k + 2 ** (j + 1) - 1}")
                self.assertEqual(rp.milnor_q(j, rp.parse(f"t^{k}")), expected)

    def test_composite_applies_rightmost_first(self):
        rp = self.rp
        t = rp.generator("t")
        self.assertEqual(rp.milnor_composite([1, 0], t), rp.milnor_q(1, rp.milnor_q(0, t)))
        self.assertEqual(rp.milnor_composite([], t), t)


class WuFormulaTests(SimpleTestCase):
    def test_binomials(self):
        self.assertEqual([binom_mod2(4, k) for k in range(5)], [1, 0, 0, 0, 1])
        self.assertEqual(binom_mod2(-1, 0), 1)
        self.assertEqual(binom_mod2(-1, 1), 0)

    def test_sq1_w2(self):
        bo = wu_bo(4)
        self.assertEqual(bo.sq(1, bo.generator("w2")), bo.parse("w1*w2 + w3"))
        bso = wu_bo(4, oriented=True)
        self.assertEqual(bso.sq(1, bso.generator("w2")), bso.parse("w3"))

    def test_top_square(self):
        bo = wu_bo(4)
        self.assertEqual(bo.sq(2, bo.generator("w2")), bo.parse("w2^2"))

    def test_q0_w2_in_bso(self):
        bso = wu_bo(3, oriented=True)
        self.assertEqual(bso.milnor_q(0, bso.generator("w2")), bso.parse("w3"))

    def test_oriented_primitives_end_to_end(self):
        bso = wu_bo(4, oriented=True)
        self.assertEqual(bso.names, ("w2", "w3", "w4"))
        w2 = bso.generator("w2")
        self.assertEqual(bso.milnor_q(0, w2), bso.parse("w3"))
        self.assertEqual(bso.milnor_q(1, w2), bso.parse("w2*w3"))
        self.assertEqual(bso.milnor_q(0, bso.milnor_q(0, w2)), {})

    def test_sq2_w3(self):
        bo = wu_bo(5)
        self.assertEqual(bo.sq(2, bo.generator("w3")), bo.parse("w2*w3 + w1*w4 + w5"))

    def test_truncation_drops_high_classes(self):
        bo = wu_bo(2)
        self.assertEqual(bo.sq(1, bo.generator("w2")), bo.parse("w1*w2"))

    def test_adem_sq1_sq1(self):
        rng = random.Random(4)
        bo = wu_bo(4)
        for _ in range(30):
            element = random_homogeneous(bo, rng, 5)
            self.assertEqual(bo.sq(1, bo.sq(1, element)), {})


class PrimitivePropertyTests(SimpleTestCase):
    """Randomized checks of the derivation law, nilpotence, degree law and commutation."""

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.rings = [
            (rp_infinity(), 6, 3),
            (product(rp_infinity(name="t"), rp_infinity(name="u")), 4, 3),
            (product(rp_infinity(7, "t"), sphere_ring(3)), 6, 3),
            (wu_bo(4, oriented=True), 4, 2),
            (wu_bo(3), 3, 2),
        ]

    def test_randomized_properties(self):
        rng = random.Random(1000)
        cases = 0
        for _ in range(250):
            ring, max_degree, max_j = rng.choice(self.rings)
            j = rng.randrange(0, max_j + 1)
            a = random_homogeneous(ring, rng, max_degree)
            b = random_homogeneous(ring, rng, max_degree)

            product_ab = ring.multiply(a, b)
            derivation = ring.add(
                ring.multiply(ring.milnor_q(j, a), b), ring.multiply(a, ring.milnor_q(j, b))
            )
            self.assertEqual(ring.milnor_q(j, product_ab), derivation)

            self.assertEqual(ring.milnor_q(j, ring.milnor_q(j, a)), {})

            image = ring.milnor_q(j, a)
            if image:
                self.assertEqual(ring.degree_of(image), ring.degree_of(a) + 2 ** (j + 1) - 1)

            top = ring.degree_of(a)
            self.assertEqual(ring.sq(top, a), ring.multiply(a, a))
            cases += 4
        self.assertEqual(cases, 1000)

    def test_primitives_commute(self):
        rng = random.Random(17)
        rings = [rp_infinity(), product(rp_infinity(name="t"), rp_infinity(name="u"))]
        for _ in range(40):
            ring = rng.choice(rings)
            element = random_homogeneous(ring, rng, 4)
            i, j = rng.sample(range(3), 2)
            self.assertEqual(
                ring.milnor_q(i, ring.milnor_q(j, element)),
                ring.milnor_q(j, ring.milnor_q(i, element)),
            )

    def test_cartan_formula(self):
        rng = random.Random(23)
        ring = wu_bo(4)
        for _ in range(30):
            a = random_homogeneous(ring, rng, 3)
            b = random_homogeneous(ring, rng, 3)
            i = rng.randrange(0, 5)
            expected = ring.add(*(ring.multiply(ring.sq(k, a), ring.sq(i - k, b)) for k in range(i + 1)))
            self.assertEqual(ring.sq(i, ring.multiply(a, b)), expected)
