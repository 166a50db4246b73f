"""
Algebra characters and the tensor product M tensor_A F_p(chi)

A character sends each generator to a scalar compatible with its rule and
grading. The tensor product of a module with the one-dimensional module
F_p(chi) is the quotient of M by the span of ``g*m - chi(g)*m`` over
generators ``g`` and basis elements ``m``; since every relation is
homogeneous the quotient is computed one degree slice at a time.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from graded import fields
from graded.algebra import AlgebraPresentation, GradedDims
from graded.exceptions import PresentationError
from graded.rewriting import Monomial, TruncationRule
from hopf_modules.exceptions import ModuleError
from hopf_modules.modules import ModuleOverAlgebra, verify_action

logger = logging.getLogger(__name__)


def rule_roots(rule: TruncationRule, p: int) -> list[int]:
    """Scalars ``v`` in F_p with ``v^e = c*v``, in increasing order."""
    return [v for v in range(p) if (pow(v, rule.exponent, p) - rule.coefficient * v) % p == 0]


@dataclass(frozen=True)
class Character:
    """An algebra map A -> F_p, given by its values on generators.

    Attributes
    ----------
    algebra : AlgebraPresentation
        The algebra the character is defined on.
    values : tuple of int
        ``values[i]`` is the image of the i-th generator.
    """

    algebra: AlgebraPresentation
    values: tuple[int, ...] = ()

    def __post_init__(self):
        algebra = self.algebra
        values = tuple(int(v) for v in self.values) or (0,) * len(algebra.names)
        object.__setattr__(self, "values", values)
        if len(values) != len(algebra.names):
            raise ModuleError(
                {"values": f"expected {len(algebra.names)} values, got {len(values)}"}
            )
        for (name, degree), rule, value in zip(algebra.generators, algebra.rules, values):
            if value not in range(algebra.p):
                raise ModuleError({"values": f"value of '{name}' must lie in range({algebra.p})"})
            if value and degree:
                raise ModuleError({"values": f"'{name}' has degree {degree} and must map to 0"})
            if value not in rule_roots(rule, algebra.p):
                raise ModuleError(
                    {"values": f"value {value} of '{name}' violates {name}^{rule.exponent} -> {rule.coefficient}*{name}"}
                )

    @classmethod
    def from_mapping(cls, algebra: AlgebraPresentation, values: Mapping[str, int]) -> "Character":
        """Build from ``{generator name: value}``; unnamed generators map to 0."""
        result = [0] * len(algebra.names)
        for name, value in values.items():
            try:
                result[algebra.index(name)] = int(value) % algebra.p
            except PresentationError as exc:
                raise ModuleError({"values": exc.messages}) from exc
        return cls(algebra, tuple(result))

    @classmethod
    def augmentation(cls, algebra: AlgebraPresentation) -> "Character":
        """Every generator maps to 0."""
        return cls(algebra)

    def value(self, name: str) -> int:
        return self.values[self.algebra.index(name)]

    def evaluate(self, element: Mapping[Monomial, int]) -> int:
        """Image of an algebra element."""
        p = self.algebra.p
        total = 0
        for monomial, coefficient in self.algebra.normal_form(element).items():
            term = coefficient
            for value, power in zip(self.values, monomial):
                term = term * pow(value, power, p)
            total += term
        return total % p

    @property
    def is_augmentation(self) -> bool:
        return not any(self.values)

    def as_dict(self) -> dict[str, int]:
        return dict(zip(self.algebra.names, self.values))

    def __str__(self):
        if not self.values:
            return "trivial"
        return ", ".join(f"{name} -> {value}" for name, value in self.as_dict().items())


def enumerate_characters(algebra: AlgebraPresentation) -> list[Character]:
    """Every rule-respecting, degree-compatible character of ``algebra``.

    The list follows the product order of the per-generator value lists,
    each increasing from 0, so the augmentation comes first.
    """
    options = []
    for (_, degree), rule in zip(algebra.generators, algebra.rules):
        options.append(rule_roots(rule, algebra.p) if degree == 0 else [0])
    characters = [Character(algebra, values) for values in itertools.product(*options)]
    logger.debug("%d characters on %s", len(characters), algebra)
    return characters


def _check_pair(module: ModuleOverAlgebra, character: Character, check: bool):
    if module.algebra != character.algebra:
        raise ModuleError({"character": "module and character are over different algebras"})
    if check:
        result = verify_action(module)
        if not result:
            raise ModuleError({"actions": f"action check failed on {result.witness}: {result.reason}"})


def relation_vectors(module: ModuleOverAlgebra, character: Character) -> list[np.ndarray]:
    """Every ``g*m_j - chi(g)*m_j`` as a column of coordinates, in (generator, basis) order."""
    p = module.p
    identity = np.eye(module.dimension, dtype=np.int64)
    relations = []
    for matrix, value in zip(module.actions, character.values):
        shifted = (matrix - value * identity) % p
        relations.extend(shifted[:, j] for j in range(module.dimension))
    return relations


def tensor_character(module: ModuleOverAlgebra, character: Character, check: bool = True) -> GradedDims:
    """Dimensions of M tensor_A F_p(chi), degree by degree.

    Parameters
    ----------
    module : ModuleOverAlgebra
        The left factor.
    character : Character
        Makes F_p an A-module.
    check : bool
        Run ``verify_action`` first.

    Returns
    -------
    GradedDims
        ``dim M_d`` minus the rank of the relations landing in degree ``d``.

    Raises
    ------
    ModuleError
        On an algebra mismatch or a failed action check.
    """
    _check_pair(module, character, check)
    p = module.p
    height = module.height
    identity = np.eye(module.dimension, dtype=np.int64)
    dims = {}
    for residue in range(height.modulus):
        targets = module.indices(residue)
        if not targets:
            continue
        blocks = []
        for name, matrix, value in zip(module.algebra.names, module.actions, character.values):
            sources = module.indices(residue - module.algebra.generator_degree(name))
            if sources:
                shifted = (matrix - value * identity) % p
                blocks.append(shifted[np.ix_(targets, sources)])
        rank = fields.rank(np.hstack(blocks), p) if blocks else 0
        logger.debug("degree %d: slice %d, relation rank %d", residue, len(targets), rank)
        dims[residue] = len(targets) - rank
    return GradedDims(height, dims)


def tensor_character_oracle(module: ModuleOverAlgebra, character: Character) -> GradedDims:
    """The same quotient from one relation matrix over all degrees at once.

    With U the relation span and V_d the degree-d slice,
    ``dim (U cap V_d) = rank U + dim V_d - rank (U + V_d)``.
    """
    _check_pair(module, character, check=False)
    p = module.p
    relations = relation_vectors(module, character)
    size = module.dimension
    relation_matrix = np.array(relations, dtype=np.int64).reshape(len(relations), size)
    relation_rank = fields.rank(relation_matrix, p)
    dims = {}
    for residue in range(module.height.modulus):
        targets = module.indices(residue)
        if not targets:
            continue
        slice_rows = np.eye(size, dtype=np.int64)[targets]
        combined = fields.rank(np.vstack([relation_matrix, slice_rows]), p)
        intersection = relation_rank + len(targets) - combined
        dims[residue] = len(targets) - intersection
    return GradedDims(module.height, dims)
