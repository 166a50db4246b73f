import random

from django.test import SimpleTestCase

from catalog.algebras import em_algebra, mod2_twist_character, twist_character
from catalog.descriptors import SpaceDescriptor, SpaceKind
from catalog.documents import Catalog
from graded.algebra import GradedDims, Height
from hopf_modules.characters import Character, tensor_character
from hopf_modules.freeness import freeness_certificate
from hopf_modules.modules import cyclic_module, free_module, regular_module, tensor_dims, unit_module
from uct.exceptions import RefusedComputation, UCTError
from uct.twists import TwistSpec, classify_twists, parse_twist_expression, resolve_twist
from uct.verdicts import (
    Outcome,
    acyclic_fiber,
    clash_vanishing,
    em_verdict,
    generated_by_kernel,
    k_equivalent,
    mod2_twisted,
    twisted_cover,
    twisted_em,
    twisted_homology,
    twisted_module,
    two_local_part,
)

K1 = Height(2, 1)
K2 = Height(2, 2)


def random_dims(rng, height, size):
    return GradedDims(height, [(rng.randrange(height.modulus), 1) for _ in range(size)])


class TwistedEilenbergMacLaneTests(SimpleTestCase):
    def test_examples(self):
        for height, k in ((K2, 1), (K2, 2), (K1, 3)):
            self.assertTrue(twisted_em(height, k, 2).is_zero)

    def test_vanishing_sweep(self):
        for n in (1, 2, 3):
            for k in range(1, 9):
                for truncation in range(1, 5):
                    self.assertTrue(twisted_em(Height(2, n), k, truncation).is_zero, (n, k, truncation))

    def test_verdict(self):
        verdict = em_verdict(K2, 1, 2)
        self.assertEqual(verdict.outcome, Outcome.ZERO)
        self.assertEqual(verdict.statement, "K(2)_*(K(Z, 4); 1) = 0")
        self.assertTrue(verdict.j_stable)
        self.assertIn("k = 12 = 2^2 * 3", em_verdict(K1, 12, 1).certificate)

    def test_two_local_part(self):
        self.assertEqual(two_local_part(12), (2, 3))
        self.assertEqual(two_local_part(7), (0, 7))
        self.assertEqual(two_local_part(8), (3, 1))
        with self.assertRaises(UCTError):
            two_local_part(0)

    def test_refused(self):
        with self.assertRaises(UCTError):
            twisted_em(K1, 0, 2)
        with self.assertRaises(UCTError):
            twisted_em(K1, 1, 0)
        with self.assertRaises(UCTError):
            twisted_em(Height(3, 1), 1, 2)


class UntwistingTests(SimpleTestCase):
    def test_random_free_modules(self):
        rng = random.Random(4242)
        for _ in range(50):
            height = Height(2, rng.randint(1, 3))
            truncation = rng.randint(1, 3)
            algebra = em_algebra(height, None, height.n + 1, truncation)
            classes = random_dims(rng, height, rng.randint(1, 6))
            module = free_module(algebra, classes)
            certificate = freeness_certificate(module)
            self.assertTrue(certificate)
            self.assertEqual(certificate.classes, classes)
            self.assertEqual(tensor_character(module, twist_character(height, truncation)), classes)
            self.assertEqual(tensor_character(module, Character.augmentation(algebra)), classes)

    def test_shipped_covers(self):
        catalog = Catalog()
        bo = catalog.load("BO8-n6")
        verdict = twisted_cover(bo, resolve_twist(bo, "p2/6"))
        self.assertEqual(verdict.outcome, Outcome.UNTWISTED)
        self.assertEqual(verdict.statement, "K(6)_*(BString; p2/6) ≅ K(6)_*(BString)")
        self.assertEqual(verdict.looped, "K(5)_*(O<7>; H_7) ≅ K(5)_*(O<7>)")
        self.assertIsNone(verdict.dims)

        bu = catalog.load("BU2-n1")
        verdict = twisted_cover(bu, resolve_twist(bu, "H3"))
        self.assertEqual(verdict.statement, "K(1)_*(BU<2>; H3) ≅ K(1)_*(BU<2>)")
        self.assertEqual(verdict.looped, "K(0)_*(U<2>; H_2) ≅ K(0)_*(U<2>)")

    def test_synthetic_stand_in(self):
        space = Catalog().load("synthetic-free-n1")
        for expression in ("H3", "2*H3"):
            verdict = twisted_cover(space, resolve_twist(space, expression))
            self.assertEqual(verdict.outcome, Outcome.UNTWISTED)
            self.assertEqual(verdict.dims.as_dict(), {0: 1, 1: 1})

    def test_flag_required(self):
        space = Catalog().load("BString-n2")
        with self.assertRaises(RefusedComputation):
            twisted_cover(space, resolve_twist(space, "p1/2"))

    def test_hypotheses_checked(self):
        wrong_height = SpaceDescriptor(
            "BO8-n5", SpaceKind.STRUCTURAL_COVER, Height(2, 5), family="BO", cover=8, flavor="integral",
            flags=("free-over-A",),
        )
        with self.assertRaises(RefusedComputation):
            twisted_cover(wrong_height, TwistSpec(Height(2, 5)))
        wrong_cover = SpaceDescriptor(
            "BO12-n6", SpaceKind.STRUCTURAL_COVER, Height(2, 6), family="BO", cover=12, flavor="integral",
            flags=("free-over-A",),
        )
        with self.assertRaises(RefusedComputation):
            twisted_cover(wrong_cover, TwistSpec(Height(2, 6)))
        even_bu = SpaceDescriptor(
            "BU3-n2", SpaceKind.STRUCTURAL_COVER, K2, family="BU", cover=3, flavor="integral",
            flags=("free-over-A",),
        )
        with self.assertRaises(RefusedComputation):
            twisted_cover(even_bu, TwistSpec(K2))

    def test_non_free_module_refused(self):
        algebra = em_algebra(K1, None, 2, 1)
        space = SpaceDescriptor(
            "half", SpaceKind.STRUCTURAL_COVER, K1, family="synthetic", flavor="integral",
            flags=("free-over-A",), module=unit_module(algebra),
        )
        with self.assertRaises(RefusedComputation):
            twisted_cover(space, TwistSpec(K1))


class ClashTests(SimpleTestCase):
    def test_unit_module(self):
        algebra = em_algebra(K2, None, 3, 1)
        self.assertTrue(tensor_character(unit_module(algebra), twist_character(K2, 1)).is_zero)
        verdict = twisted_module(unit_module(algebra), twist_character(K2, 1))
        self.assertEqual(verdict.outcome, Outcome.ZERO)

    def test_random_clashing_modules(self):
        rng = random.Random(1717)
        for case in range(50):
            height = Height(2, rng.randint(1, 3))
            j = rng.randint(1, 3)
            if case % 2:
                algebra = em_algebra(height, None, height.n + 1, j)
                generator, character = "b0", twist_character(height, j)
            else:
                algebra = em_algebra(height, 2 ** j, height.n)
                generator, character = "a0", mod2_twist_character(height, j)
            relations = [algebra.generator(generator)]
            for _ in range(rng.randint(0, 2)):
                relation = {m: 1 for m in algebra.monomial_basis if any(m) and rng.random() < 0.5}
                if relation:
                    relations.append(relation)
            quotient = cyclic_module(algebra, relations)
            module = tensor_dims(quotient, random_dims(rng, height, rng.randint(1, 4)))
            self.assertTrue(generated_by_kernel(module, generator))
            self.assertTrue(tensor_character(module, character).is_zero)

    def test_bspin(self):
        space = Catalog().load("BString-n2")
        verdict = clash_vanishing(space, resolve_twist(space, "p1/2"))
        self.assertEqual(verdict.outcome, Outcome.ZERO)
        self.assertEqual(verdict.statement, "K(2)_*(BSpin; p1/2) = 0")
        self.assertIn("1 ⊗ 1 = 1 ⊗ b0 = b0 ⊗ 1 = 0 ⊗ 1 = 0", verdict.certificate)
        self.assertTrue(verdict.dims.is_zero)

    def test_bso(self):
        space = Catalog().load("BSO-n1")
        verdict = mod2_twisted(space, resolve_twist(space, "w2"))
        self.assertEqual(verdict.statement, "K(1)_*(BSO; w2) = 0")
        self.assertIn("1 ⊗ 1 = 1 ⊗ a0 = a0 ⊗ 1 = 0 ⊗ 1 = 0", verdict.certificate)

    def test_even_multiple_refused(self):
        space = Catalog().load("BString-n2")
        with self.assertRaises(RefusedComputation):
            clash_vanishing(space, resolve_twist(space, "2*p1/2"))

    def test_flag_required(self):
        space = Catalog().load("BO8-n6")
        with self.assertRaises(RefusedComputation):
            clash_vanishing(space, resolve_twist(space, "p2/6"))

    def test_generation_hypothesis(self):
        algebra = em_algebra(K1, None, 2, 1)
        space = SpaceDescriptor(
            "regular", SpaceKind.STRUCTURAL_COVER, K1, family="synthetic", flavor="integral",
            flags=("b0-killed",), module=regular_module(algebra),
        )
        self.assertFalse(generated_by_kernel(space.module, "b0"))
        with self.assertRaises(RefusedComputation):
            clash_vanishing(space, TwistSpec(K1))

    def test_flavor_mismatch(self):
        space = Catalog().load("BSO-n1")
        with self.assertRaises(UCTError):
            clash_vanishing(space, TwistSpec(K1))


class ModTwoTests(SimpleTestCase):
    def test_free_stand_in(self):
        rng = random.Random(99)
        algebra = em_algebra(K2, 2, 2)
        classes = random_dims(rng, K2, 3)
        verdict = mod2_twisted(free_module(algebra, classes), TwistSpec(K2, "mod-2", 1, "h"))
        self.assertEqual(verdict.outcome, Outcome.DIMS)
        self.assertEqual(verdict.dims, classes)

    def test_unit_module_clash(self):
        algebra = em_algebra(K1, 2, 1)
        verdict = mod2_twisted(unit_module(algebra), TwistSpec(K1, "mod-2"))
        self.assertEqual(verdict.outcome, Outcome.ZERO)

    def test_cover_theorem(self):
        space = Catalog().load("BO9-n9")
        verdict = mod2_twisted(space, resolve_twist(space, "h10"))
        self.assertEqual(verdict.outcome, Outcome.UNTWISTED)
        self.assertEqual(verdict.statement, "K(9)_*(BO<9>; h10) ≅ K(9)_*(BO<9>)")
        self.assertEqual(verdict.looped, "K(9)_*(O<9>; h_9) ≅ K(9)_*(O<9>)")

    def test_integral_twist_refused(self):
        with self.assertRaises(UCTError):
            mod2_twisted(unit_module(em_algebra(K1, 2, 1)), TwistSpec(K1))


class DispatchTests(SimpleTestCase):
    def test_eilenberg_maclane(self):
        space = Catalog().load("K(Z,3)").at_height(1)
        verdict = twisted_homology(space, resolve_twist(space, "2*iota3"))
        self.assertEqual(verdict.statement, "K(1)_*(K(Z, 3); 2) = 0")

    def test_eilenberg_maclane_wrong_height(self):
        space = Catalog().load("K(Z,3)")
        with self.assertRaises(UCTError):
            twisted_homology(space, TwistSpec(K2))

    def test_covers(self):
        catalog = Catalog()
        for name, expression, outcome in (
            ("BString-n2", "p1/2", Outcome.ZERO),
            ("BSO-n1", "w2", Outcome.ZERO),
            ("BO8-n6", "p2/6", Outcome.UNTWISTED),
            ("BO9-n9", "h10", Outcome.UNTWISTED),
            ("synthetic-free-n1", "H3", Outcome.UNTWISTED),
        ):
            space = catalog.load(name)
            self.assertEqual(twisted_homology(space, resolve_twist(space, expression)).outcome, outcome, name)

    def test_trivial_action_table(self):
        space = SpaceDescriptor(
            "trivial", SpaceKind.STRUCTURAL_COVER, K1, family="synthetic", flavor="integral",
            dims=GradedDims(K1, {0: 1, 1: 2}),
        )
        self.assertEqual(twisted_homology(space, TwistSpec(K1)).outcome, Outcome.ZERO)
        untwisted = twisted_homology(space, TwistSpec(K1, multiplier=2))
        self.assertEqual(untwisted.outcome, Outcome.DIMS)
        self.assertEqual(untwisted.dims.as_dict(), {0: 1, 1: 2})
        with self.assertRaises(RefusedComputation):
            twisted_cover(space, TwistSpec(K1))

    def test_free_module_needs_no_flag(self):
        space = Catalog().load("synthetic-free-n1")
        self.assertEqual(space.flags, ())
        self.assertTrue(freeness_certificate(space.numeric_module))
        self.assertEqual(twisted_homology(space, resolve_twist(space, "H3")).outcome, Outcome.UNTWISTED)

    def test_finite_complex_refused(self):
        space = Catalog().load("S3")
        with self.assertRaises(UCTError):
            twisted_homology(space, resolve_twist(space, "sigma3"))


class TwistTests(SimpleTestCase):
    def test_parse(self):
        self.assertEqual(parse_twist_expression("3*sigma3"), (3, "sigma3"))
        self.assertEqual(parse_twist_expression("w2"), (1, "w2"))
        self.assertEqual(parse_twist_expression(" 2 * p1/2 "), (2, "p1/2"))
        for text in ("3*", "", "a b", "*w2"):
            with self.assertRaises(UCTError):
                parse_twist_expression(text)

    def test_resolve(self):
        space = Catalog().load("S3")
        twist = resolve_twist(space, "3*sigma3")
        self.assertEqual((twist.flavor, twist.multiplier, twist.degree), ("integral", 3, 3))
        self.assertEqual(str(twist), "3*sigma3")
        with self.assertRaises(UCTError):
            resolve_twist(space, "tau3")

    def test_degree_checked(self):
        with self.assertRaises(UCTError):
            TwistSpec.for_class(K2, 3, "Z", "H")
        self.assertEqual(TwistSpec.for_class(K2, 3, "Z/2", "h").flavor, "mod-2")

    def test_odd_prime_refused(self):
        with self.assertRaises(UCTError):
            TwistSpec(Height(3, 1))

    def test_character(self):
        self.assertEqual(TwistSpec(K2, multiplier=3).character(2).as_dict(), {"b0": 1, "b1": 0})
        self.assertEqual(TwistSpec(K2, multiplier=2).character(2).as_dict(), {"b0": 0, "b1": 0})
        self.assertEqual(TwistSpec(K1, "mod-2").character().as_dict(), {"a0": 1})


class ClassificationTests(SimpleTestCase):
    def test_integral(self):
        for n in (1, 2, 3):
            height = Height(2, n)
            self.assertEqual(classify_twists(height, n + 2).group, "Z_2")
            self.assertTrue(classify_twists(height, n + 3).trivial)
            self.assertTrue(classify_twists(Height(3, n), n + 2).trivial)
            with self.assertRaises(UCTError):
                classify_twists(height, n + 1)

    def test_character_count(self):
        for j in (1, 2, 3, 4):
            classification = classify_twists(K2, 3, 2 ** j)
            self.assertEqual(len(classification.characters), 2 ** j)
            self.assertEqual(classification.group, f"Z/{2 ** j}")

    def test_finite_trivial_cases(self):
        self.assertTrue(classify_twists(K2, 3, 3).trivial)
        self.assertTrue(classify_twists(K2, 4, 4).trivial)
        self.assertTrue(classify_twists(Height(3, 2), 3, 9).trivial)
        with self.assertRaises(UCTError):
            classify_twists(K2, 2, 4)


class EquivalenceTests(SimpleTestCase):
    def test_acyclic_fiber(self):
        self.assertTrue(acyclic_fiber(K1, 3))
        self.assertFalse(acyclic_fiber(K1, 2))
        with self.assertRaises(UCTError):
            acyclic_fiber(K1, 0)

    def test_whitehead_tower(self):
        # BSpin <- BString has fibre K(Z, 3)
        self.assertTrue(k_equivalent(K1, 3))
        self.assertFalse(k_equivalent(K2, 3))
        # String <- Fivebrane, fibre K(Z, 6)
        self.assertTrue(k_equivalent(Height(2, 4), 6))
        self.assertFalse(k_equivalent(Height(2, 5), 6))
        # BString <- BFivebrane, fibre K(Z, 7)
        self.assertTrue(k_equivalent(Height(2, 5), 7))
        self.assertFalse(k_equivalent(Height(2, 6), 7))
