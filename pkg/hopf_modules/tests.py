import random

import numpy as np
from django.test import SimpleTestCase

from graded import fields
from graded.algebra import AlgebraPresentation, GradedDims, Height
from graded.rewriting import TruncationRule
from hopf_modules.characters import Character, enumerate_characters, tensor_character, tensor_character_oracle
from hopf_modules.exceptions import ModuleError
from hopf_modules.freeness import freeness_certificate
from hopf_modules.modules import (
    ModuleOverAlgebra,
    cyclic_module,
    direct_sum,
    free_module,
    regular_module,
    shift,
    tensor_dims,
    unit_module,
    verify_action,
)

K2 = Height(2, 2)


def idempotent_tensor(height, name, count):
    """Tensor of R(name_i), i < count, at p = 2 (every generator has degree 0)."""
    factors = (
        AlgebraPresentation(height, ((f"{name}{i}", 2 ** i * height.modulus),), (TruncationRule(2, 1),))
        for i in range(count)
    )
    return AlgebraPresentation.tensor_all(height, factors)


def invert(matrix, p):
    size = matrix.shape[0]
    reduced = fields.row_reduce(np.hstack([matrix, np.eye(size, dtype=np.int64)]), p)
    return reduced.matrix[:, size:]


def scramble(module, rng):
    """Change to a random homogeneous basis of the same degrees."""
    p, size = module.p, module.dimension
    change = np.zeros((size, size), dtype=np.int64)
    for residue in set(module.degrees):
        block = module.indices(residue)
        while True:
            candidate = np.array([[rng.randrange(p) for _ in block] for _ in block], dtype=np.int64)
            if fields.rank(candidate, p) == len(block):
                break
        change[np.ix_(block, block)] = candidate
    inverse = invert(change, p)
    actions = tuple(fields.matmul(fields.matmul(change, a, p), inverse, p) for a in module.actions)
    return ModuleOverAlgebra(module.algebra, module.basis, actions)


def random_relation(rng, algebra):
    degree = rng.choice(sorted({algebra.degree(m) for m in algebra.monomial_basis}))
    return {m: rng.randrange(algebra.p) for m in algebra.basis(degree)}


def random_module(rng, algebra, max_dimension=12):
    summands, total = [], 0
    for _ in range(3):
        relations = [random_relation(rng, algebra) for _ in range(rng.randrange(3))]
        quotient = cyclic_module(algebra, relations)
        if quotient.dimension and total + quotient.dimension <= max_dimension:
            summands.append(shift(quotient, rng.randrange(algebra.height.modulus)))
            total += quotient.dimension
        if rng.random() < 0.4:
            break
    if not summands:
        return unit_module(algebra)
    return scramble(direct_sum(*summands), rng)


class ConstructionTests(SimpleTestCase):
    def test_free_module_dims(self):
        algebra = idempotent_tensor(K2, "b", 1)
        module = free_module(algebra, GradedDims(K2, {2: 1}))
        self.assertEqual(module.dimension, 2)
        self.assertEqual(module.hilbert().as_dict(), {2: 2})
        self.assertEqual([name for name, _ in module.basis], ["c0", "b0*c0"])

    def test_free_module_on_one_class_is_regular(self):
        algebra = idempotent_tensor(K2, "b", 2)
        module = free_module(algebra, GradedDims.point(K2))
        regular = regular_module(algebra)
        self.assertEqual(module.hilbert(), regular.hilbert())
        for left, right in zip(module.actions, regular.actions):
            self.assertTrue(np.array_equal(left, right))

    def test_free_module_total(self):
        algebra = idempotent_tensor(K2, "b", 2)
        self.assertEqual(free_module(algebra, GradedDims(K2, {0: 2})).dimension, 8)

    def test_actions_respect_rules(self):
        algebra = idempotent_tensor(K2, "b", 2)
        module = free_module(algebra, GradedDims(K2, {0: 1, 4: 2}))
        b0 = module.action("b0")
        self.assertTrue(np.array_equal(fields.matmul(b0, b0, 2), b0))
        for residue in range(K2.modulus):
            block = module.slice_action("b0", residue)
            self.assertTrue(np.array_equal(fields.matmul(block, block, 2), block))

    def test_degree_incompatible_action_rejected(self):
        algebra = AlgebraPresentation.truncated_polynomial(K2, "x", 2, 3)
        with self.assertRaises(ModuleError):
            ModuleOverAlgebra(algebra, (("u", 0), ("v", 4)), {"x": [[0, 0], [1, 0]]})

    def test_unknown_generator_in_actions(self):
        algebra = idempotent_tensor(K2, "b", 1)
        with self.assertRaises(ModuleError):
            ModuleOverAlgebra(algebra, (("u", 0),), {"b7": [[1]]})

    def test_cyclic_quotient(self):
        algebra = idempotent_tensor(K2, "b", 2)
        quotient = cyclic_module(algebra, [algebra.generator("b0")])
        self.assertEqual([name for name, _ in quotient.basis], ["1", "b1"])
        self.assertFalse(quotient.action("b0").any())
        self.assertTrue(verify_action(quotient))

    def test_element_matrix(self):
        algebra = idempotent_tensor(K2, "b", 2)
        module = regular_module(algebra)
        product = module.element_matrix(algebra.parse("b0*b1"))
        self.assertTrue(np.array_equal(product, fields.matmul(module.action("b0"), module.action("b1"), 2)))
        self.assertTrue(np.array_equal(module.element_matrix(algebra.one()), np.eye(4, dtype=np.int64)))

    def test_direct_sum_renames_clashes(self):
        algebra = idempotent_tensor(K2, "b", 1)
        module = direct_sum(regular_module(algebra), shift(regular_module(algebra), 2))
        self.assertEqual(module.basis, (("1[0]", 0), ("b0[0]", 0), ("1[1]", 2), ("b0[1]", 2)))


class VerifyActionTests(SimpleTestCase):
    def setUp(self):
        self.algebra = idempotent_tensor(K2, "b", 1)

    def test_free_module_passes(self):
        self.assertTrue(verify_action(free_module(self.algebra, GradedDims(K2, {0: 1, 3: 1}))))

    def test_identity_action_is_idempotent(self):
        module = ModuleOverAlgebra(self.algebra, (("u", 0), ("v", 0)), {"b0": np.eye(2, dtype=np.int64)})
        self.assertTrue(verify_action(module).passed)

    def test_non_idempotent_action_fails(self):
        module = ModuleOverAlgebra(self.algebra, (("u", 0), ("v", 0)), {"b0": [[0, 1], [0, 0]]})
        result = verify_action(module)
        self.assertFalse(result.passed)
        self.assertEqual(result.witness, ("b0",))
        self.assertEqual(result.degree, 0)

    def test_non_commuting_pair_fails(self):
        algebra = idempotent_tensor(K2, "b", 2)
        module = ModuleOverAlgebra(
            algebra, (("u", 0), ("v", 0)), {"b0": [[1, 0], [0, 0]], "b1": [[1, 1], [0, 0]]}
        )
        result = verify_action(module)
        self.assertEqual(result.witness, ("b0", "b1"))


class CharacterTests(SimpleTestCase):
    def test_enumeration_counts(self):
        self.assertEqual(len(enumerate_characters(idempotent_tensor(K2, "a", 1))), 2)
        self.assertEqual(len(enumerate_characters(AlgebraPresentation.trivial(K2))), 1)
        for j in range(1, 5):
            self.assertEqual(len(enumerate_characters(idempotent_tensor(K2, "a", j))), 2 ** j)

    def test_augmentation_first(self):
        characters = enumerate_characters(idempotent_tensor(K2, "a", 2))
        self.assertTrue(characters[0].is_augmentation)
        self.assertEqual(str(characters[1]), "a0 -> 0, a1 -> 1")

    def test_truncating_and_shifted_generators_only_map_to_zero(self):
        algebra = AlgebraPresentation.truncated_polynomial(K2, "x", 0, 4).tensor(
            AlgebraPresentation.truncated_polynomial(K2, "y", 2, 2)
        )
        self.assertEqual(len(enumerate_characters(algebra)), 1)
        with self.assertRaises(ModuleError):
            Character.from_mapping(algebra, {"x": 1})

    def test_odd_prime_roots(self):
        # x^3 - x splits over F_3.
        algebra = AlgebraPresentation(Height(3, 1), (("a0", 4),), (TruncationRule(3, 1),))
        self.assertEqual([c.values for c in enumerate_characters(algebra)], [(0,), (1,), (2,)])

    def test_evaluate(self):
        algebra = idempotent_tensor(K2, "b", 2)
        character = Character.from_mapping(algebra, {"b0": 1})
        self.assertEqual(character.evaluate(algebra.parse("b0 + b0*b1 + 1")), 0)
        self.assertEqual(character.evaluate(algebra.parse("b0")), 1)

    def test_unknown_generator(self):
        with self.assertRaises(ModuleError):
            Character.from_mapping(idempotent_tensor(K2, "b", 1), {"b4": 1})


class TensorCharacterTests(SimpleTestCase):
    def setUp(self):
        self.algebra = idempotent_tensor(K2, "b", 3)
        self.twist = Character.from_mapping(self.algebra, {"b0": 1})
        self.augmentation = Character.augmentation(self.algebra)

    def test_unit_module_with_twist_vanishes(self):
        result = tensor_character(unit_module(self.algebra), self.twist)
        self.assertTrue(result.is_zero)

    def test_unit_module_with_augmentation(self):
        self.assertEqual(tensor_character(unit_module(self.algebra), self.augmentation).as_dict(), {0: 1})

    def test_free_module_returns_classes(self):
        classes = GradedDims(K2, {0: 1, 1: 2, 4: 1})
        module = free_module(self.algebra, classes)
        for character in enumerate_characters(self.algebra):
            self.assertEqual(tensor_character(module, character), classes)

    def test_trivial_algebra_returns_dims(self):
        algebra = AlgebraPresentation.trivial(K2)
        module = ModuleOverAlgebra(algebra, (("u", 0), ("v", 3), ("w", 3)), ())
        self.assertEqual(tensor_character(module, Character(algebra)), module.hilbert())

    def test_algebra_mismatch(self):
        other = idempotent_tensor(K2, "b", 2)
        with self.assertRaises(ModuleError):
            tensor_character(unit_module(other), self.twist)

    def test_result_never_exceeds_module(self):
        rng = random.Random(11)
        algebra = idempotent_tensor(K2, "b", 2)
        for _ in range(30):
            module = random_module(rng, algebra)
            result = tensor_character(module, rng.choice(enumerate_characters(algebra)))
            for residue in range(K2.modulus):
                self.assertLessEqual(result[residue], module.hilbert()[residue])

    def test_oracle_equivalence(self):
        rng = random.Random(2024)
        algebras = [
            idempotent_tensor(K2, "b", 2),
            idempotent_tensor(K2, "b", 1).tensor(AlgebraPresentation.truncated_polynomial(K2, "x", 2, 3)),
            AlgebraPresentation(
                Height(3, 1), (("a0", 2), ("e", 1)), (TruncationRule(3, 1), TruncationRule(2))
            ),
            AlgebraPresentation(Height(3, 1), (("a0", 4),), (TruncationRule(3, 1),)),
        ]
        for trial in range(200):
            algebra = algebras[trial % len(algebras)]
            module = random_module(rng, algebra)
            self.assertLessEqual(module.dimension, 12)
            self.assertTrue(verify_action(module))
            character = rng.choice(enumerate_characters(algebra))
            self.assertEqual(tensor_character(module, character), tensor_character_oracle(module, character))


class FreenessTests(SimpleTestCase):
    def test_round_trip(self):
        algebra = idempotent_tensor(K2, "b", 2)
        classes = GradedDims(K2, {0: 1, 4: 2})
        certificate = freeness_certificate(free_module(algebra, classes))
        self.assertTrue(certificate.free)
        self.assertEqual(certificate.classes, classes)
        self.assertEqual(len(certificate.generators), 3)

    def test_unit_module_refused(self):
        certificate = freeness_certificate(unit_module(idempotent_tensor(K2, "b", 1)))
        self.assertFalse(certificate)
        self.assertTrue(certificate.reason)

    def test_shifted_copies(self):
        algebra = idempotent_tensor(K2, "b", 1)
        module = direct_sum(shift(regular_module(algebra), 1), shift(regular_module(algebra), 3))
        certificate = freeness_certificate(module)
        self.assertEqual(certificate.classes.as_dict(), {1: 1, 3: 1})

    def test_truncated_polynomial(self):
        algebra = AlgebraPresentation.truncated_polynomial(K2, "x", 2, 3)
        classes = GradedDims(K2, {0: 1, 2: 1})
        module = scramble(free_module(algebra, classes), random.Random(5))
        self.assertEqual(freeness_certificate(module).classes, classes)
        self.assertFalse(freeness_certificate(cyclic_module(algebra, [algebra.parse("x^2")])))

    def test_trivial_algebra(self):
        algebra = AlgebraPresentation.trivial(K2)
        module = ModuleOverAlgebra(algebra, (("u", 0), ("v", 5)), ())
        self.assertEqual(freeness_certificate(module).classes, module.hilbert())

    def test_random_free_modules_untwist(self):
        rng = random.Random(50)
        for _ in range(50):
            j = rng.randrange(1, 4)
            algebra = idempotent_tensor(K2, "b", j)
            classes = GradedDims(
                K2, [(rng.randrange(K2.modulus), 1) for _ in range(rng.randrange(1, 7))]
            )
            module = scramble(free_module(algebra, classes), rng)
            certificate = freeness_certificate(module)
            self.assertTrue(certificate.free, certificate.reason)
            self.assertEqual(certificate.classes, classes)
            twist = Character.from_mapping(algebra, {"b0": 1})
            self.assertEqual(tensor_character(module, twist), classes)
            self.assertEqual(tensor_character(module, Character.augmentation(algebra)), classes)

    def test_freeness_implies_character_independence(self):
        rng = random.Random(8)
        algebra = idempotent_tensor(K2, "b", 2)
        for _ in range(40):
            module = random_module(rng, algebra)
            if not freeness_certificate(module):
                continue
            results = {tensor_character(module, c) for c in enumerate_characters(algebra)}
            self.assertEqual(len(results), 1)

    def test_clash_vanishing_on_cyclic_modules(self):
        rng = random.Random(5)
        for name in ("b", "a"):
            algebra = idempotent_tensor(K2, name, 3)
            twist = Character.from_mapping(algebra, {f"{name}0": 1})
            for _ in range(25):
                relations = [algebra.generator(f"{name}0")]
                relations += [random_relation(rng, algebra) for _ in range(rng.randrange(3))]
                quotient = cyclic_module(algebra, relations)
                classes = GradedDims(
                    K2, [(rng.randrange(K2.modulus), 1) for _ in range(rng.randrange(1, 4))]
                )
                module = tensor_dims(quotient, classes)
                self.assertTrue(tensor_character(module, twist).is_zero)
