"""
Finite graded modules over an AlgebraPresentation

A module is an ordered basis of homogeneous elements together with one
N x N action matrix per algebra generator over F_p. Column ``j`` of the
matrix of ``g`` is ``g * m_j``; an entry may be nonzero only where the
degrees differ by ``|g|``, so every matrix is a sum of its slice blocks.

Classes:
    ModuleOverAlgebra: Basis, degrees and generator actions
    ActionCheck: Result of verify_action

Functions:
    verify_action: Rule and commutativity check with a witness
    unit_module: One class in degree 0, generators act by a scalar
    cyclic_module: A/(relations) with the left regular action
    tensor_dims: M tensor a trivial module with the given dims
    free_module: A tensor C
    direct_sum / shift: Synthetic instances
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from graded import fields
from graded.algebra import AlgebraPresentation, GradedDims
from graded.exceptions import PresentationError
from graded.rewriting import Element, Monomial
from hopf_modules.exceptions import ModuleError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ModuleOverAlgebra:
    """A finite-dimensional graded left module over ``algebra``.

    Attributes
    ----------
    algebra : AlgebraPresentation
        The acting algebra.
    basis : tuple of (str, int)
        Basis element names with degrees, reduced mod the grading modulus.
    actions : tuple of numpy.ndarray
        One N x N matrix per algebra generator, in generator order. A
        mapping ``{generator name: matrix}`` is accepted; missing generators
        act by zero.
    """

    algebra: AlgebraPresentation
    basis: tuple[tuple[str, int], ...] = ()
    actions: tuple[np.ndarray, ...] = field(default=())

    def __post_init__(self):
        height = self.algebra.height
        basis = tuple((str(name), height.reduce(int(degree))) for name, degree in self.basis)
        object.__setattr__(self, "basis", basis)
        size = len(basis)
        p = self.algebra.p

        if isinstance(self.actions, Mapping):
            unknown = set(self.actions) - set(self.algebra.names)
            if unknown:
                raise ModuleError({"actions": f"unknown generator(s) {sorted(unknown)}"})
            given = [self.actions.get(name) for name in self.algebra.names]
        else:
            given = list(self.actions) or [None] * len(self.algebra.names)
        if len(given) != len(self.algebra.names):
            raise ModuleError(
                {"actions": f"expected {len(self.algebra.names)} action matrices, got {len(given)}"}
            )

        matrices = []
        degrees = np.array([degree for _, degree in basis], dtype=np.int64)
        for name, matrix in zip(self.algebra.names, given):
            if matrix is None:
                matrix = np.zeros((size, size), dtype=np.int64)
            matrix = fields.as_fp(matrix, p).reshape(size, size) if size else np.zeros((0, 0), dtype=np.int64)
            if matrix.shape != (size, size):
                raise ModuleError({"actions": f"action of '{name}' must be {size}x{size}"})
            shift = self.algebra.generator_degree(name)
            rows, cols = np.nonzero(matrix)
            for i, j in zip(rows, cols):
                if height.reduce(int(degrees[j]) + shift) != degrees[i]:
                    raise ModuleError(
                        {
                            "actions": f"'{name}' sends {basis[j][0]} (degree {degrees[j]}) "
                            f"into {basis[i][0]} (degree {degrees[i]})"
                        }
                    )
            matrix.setflags(write=False)
            matrices.append(matrix)
        object.__setattr__(self, "actions", tuple(matrices))

    def __eq__(self, other):
        if not isinstance(other, ModuleOverAlgebra):
            return NotImplemented
        return (
            self.algebra == other.algebra
            and self.basis == other.basis
            and all(np.array_equal(a, b) for a, b in zip(self.actions, other.actions))
        )

    __hash__ = None

    @property
    def height(self):
        return self.algebra.height

    @property
    def p(self) -> int:
        return self.algebra.p

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(degree for _, degree in self.basis)

    def indices(self, degree: int) -> list[int]:
        """Basis indices of the given residue."""
        residue = self.height.reduce(degree)
        return [i for i, (_, d) in enumerate(self.basis) if d == residue]

    def hilbert(self) -> GradedDims:
        return GradedDims(self.height, [(d, 1) for d in self.degrees])

    def action(self, name: str) -> np.ndarray:
        return self.actions[self.algebra.index(name)]

    def slice_action(self, name: str, degree: int) -> np.ndarray:
        """Block of the action of ``name`` from the degree slice into degree + |name|."""
        source = self.indices(degree)
        target = self.indices(degree + self.algebra.generator_degree(name))
        return self.action(name)[np.ix_(target, source)]

    def monomial_matrix(self, monomial: Monomial) -> np.ndarray:
        result = np.eye(self.dimension, dtype=np.int64)
        for matrix, power in zip(self.actions, monomial):
            if power:
                result = fields.matmul(result, fields.matrix_power(matrix, power, self.p), self.p)
        return result

    def element_matrix(self, element: Mapping[Monomial, int]) -> np.ndarray:
        """Action matrix of an arbitrary algebra element."""
        result = np.zeros((self.dimension, self.dimension), dtype=np.int64)
        for monomial, coefficient in self.algebra.normal_form(element).items():
            result = (result + coefficient * self.monomial_matrix(monomial)) % self.p
        return result

    def vector(self, name: str) -> np.ndarray:
        """Coordinate vector of a basis element given by name."""
        for i, (basis_name, _) in enumerate(self.basis):
            if basis_name == name:
                vec = np.zeros(self.dimension, dtype=np.int64)
                vec[i] = 1
                return vec
        raise ModuleError({"basis": f"unknown basis element '{name}'"})

    def __str__(self):
        return f"module of dimension {self.dimension} over {self.algebra}"


@dataclass(frozen=True)
class ActionCheck:
    """Outcome of ``verify_action``.

    ``witness`` names the generator (rule failure) or the generator pair
    (commutativity failure); ``degree`` is the residue of the first basis
    element where the failure shows.
    """

    passed: bool
    witness: tuple[str, ...] = ()
    degree: int | None = None
    reason: str = ""

    def __bool__(self):
        return self.passed


def _first_failure(module: ModuleOverAlgebra, difference: np.ndarray) -> int | None:
    columns = np.nonzero(difference.any(axis=0))[0]
    if columns.size == 0:
        return None
    return module.degrees[int(columns[0])]


def verify_action(module: ModuleOverAlgebra) -> ActionCheck:
    """Check every rule and every graded commutator on the action matrices.

    Returns
    -------
    ActionCheck
        ``passed`` is True when ``g^e`` acts as ``c*g`` for each rule and
        ``g h = (+-) h g`` for each pair; otherwise the witness of the
        first violation.
    """
    algebra, p = module.algebra, module.p
    for name, matrix, rule in zip(algebra.names, module.actions, algebra.rules):
        power = fields.matrix_power(matrix, rule.exponent, p)
        difference = (power - rule.coefficient * matrix) % p
        degree = _first_failure(module, difference)
        if degree is not None:
            logger.debug("rule on %s fails in degree %s", name, degree)
            return ActionCheck(False, (name,), degree, f"{name}^{rule.exponent} does not act as {rule.coefficient}*{name}")

    parities = algebra.generator_parities
    for (i, g), (j, h) in itertools.combinations(enumerate(algebra.names), 2):
        sign = -1 if p != 2 and parities[i] and parities[j] else 1
        gh = fields.matmul(module.actions[i], module.actions[j], p)
        hg = fields.matmul(module.actions[j], module.actions[i], p)
        difference = (gh - sign * hg) % p
        degree = _first_failure(module, difference)
        if degree is not None:
            logger.debug("%s and %s fail to commute in degree %s", g, h, degree)
            return ActionCheck(False, (g, h), degree, f"{g} and {h} do not commute")
    return ActionCheck(True)


def unit_module(algebra: AlgebraPresentation, character=None) -> ModuleOverAlgebra:
    """K(n)_* as an A-module: one class in degree 0, each generator acting by ``character``.

    With no character every generator acts by zero (the augmentation).
    """
    if character is not None and character.algebra != algebra:
        raise ModuleError({"character": "character is defined over a different algebra"})
    values = character.values if character is not None else (0,) * len(algebra.names)
    return ModuleOverAlgebra(algebra, (("1", 0),), tuple(np.array([[v]]) for v in values))


def _left_multiplication(algebra, basis: list[Monomial], coordinates) -> tuple[np.ndarray, ...]:
    """Matrices of left multiplication by each generator on ``span(basis)``.

    ``coordinates`` maps an algebra element to its coordinate vector.
    """
    size = len(basis)
    matrices = []
    for name in algebra.names:
        generator = algebra.generator(name)
        matrix = np.zeros((size, size), dtype=np.int64)
        for j, monomial in enumerate(basis):
            product = algebra.multiply(generator, {monomial: 1})
            matrix[:, j] = coordinates(product)
        matrices.append(matrix)
    return tuple(matrices)


def cyclic_module(algebra: AlgebraPresentation, relations: Iterable[Element] = ()) -> ModuleOverAlgebra:
    """The quotient A/(relations) generated by the class of 1.

    Raises
    ------
    ModuleError
        If a relation is not homogeneous.
    """
    p = algebra.p
    monomials = list(algebra.monomial_basis)
    position = {m: i for i, m in enumerate(monomials)}

    def to_vector(element) -> np.ndarray:
        vec = np.zeros(len(monomials), dtype=np.int64)
        for monomial, coefficient in element.items():
            vec[position[monomial]] = coefficient
        return vec

    rows = []
    for relation in relations:
        relation = algebra.normal_form(relation)
        try:
            algebra.degree_of(relation)
        except PresentationError as exc:
            raise ModuleError({"relations": f"relation '{algebra.format(relation)}' is not homogeneous"}) from exc
        for monomial in monomials:
            rows.append(to_vector(algebra.multiply({monomial: 1}, relation)))
    ideal = fields.row_reduce(np.array(rows, dtype=np.int64).reshape(len(rows), len(monomials)), p)
    pivots = set(ideal.pivots)
    kept = [i for i in range(len(monomials)) if i not in pivots]
    quotient_basis = [monomials[i] for i in kept]
    logger.debug("cyclic module: %d of %d monomials survive", len(kept), len(monomials))

    def coordinates(element) -> np.ndarray:
        return fields.reduce_vector(ideal, to_vector(element), p)[kept]

    actions = _left_multiplication(algebra, quotient_basis, coordinates)
    basis = tuple((algebra.format_monomial(m), algebra.degree(m)) for m in quotient_basis)
    return ModuleOverAlgebra(algebra, basis, actions)


def regular_module(algebra: AlgebraPresentation) -> ModuleOverAlgebra:
    """A acting on itself by left multiplication."""
    return cyclic_module(algebra)


def direct_sum(*modules: ModuleOverAlgebra) -> ModuleOverAlgebra:
    """Block-diagonal sum; clashing basis names get a ``[i]`` suffix."""
    if not modules:
        raise ModuleError({"modules": "direct sum of no modules"})
    algebra = modules[0].algebra
    if any(m.algebra != algebra for m in modules):
        raise ModuleError({"algebra": "direct sum of modules over different algebras"})
    names = [name for m in modules for name, _ in m.basis]
    clash = len(set(names)) != len(names)
    basis = tuple(
        (f"{name}[{i}]" if clash else name, degree)
        for i, m in enumerate(modules)
        for name, degree in m.basis
    )
    size = len(basis)
    actions = []
    for g in range(len(algebra.names)):
        matrix = np.zeros((size, size), dtype=np.int64)
        offset = 0
        for m in modules:
            matrix[offset:offset + m.dimension, offset:offset + m.dimension] = m.actions[g]
            offset += m.dimension
        actions.append(matrix)
    return ModuleOverAlgebra(algebra, basis, tuple(actions))


def shift(module: ModuleOverAlgebra, degree: int) -> ModuleOverAlgebra:
    basis = tuple((name, d + degree) for name, d in module.basis)
    return ModuleOverAlgebra(module.algebra, basis, module.actions)


def tensor_dims(module: ModuleOverAlgebra, dims: GradedDims, label: str = "c") -> ModuleOverAlgebra:
    """``module`` tensored over F_p with a trivial module of the given dims.

    The i-th class of ``dims`` is named ``{label}{i}``; basis names become
    ``name*{label}{i}`` (or just the class name for the unit ``1``).
    """
    if dims.height != module.height:
        raise ModuleError({"dims": f"dims over {dims.height}, module over {module.height}"})
    copies = []
    index = 0
    for degree, rank in dims.dims:
        for _ in range(rank):
            tag = f"{label}{index}"
            renamed = tuple(
                (tag if name == "1" else f"{name}*{tag}", d + degree) for name, d in module.basis
            )
            copies.append(ModuleOverAlgebra(module.algebra, renamed, module.actions))
            index += 1
    if not copies:
        return ModuleOverAlgebra(module.algebra, (), ())
    return direct_sum(*copies)


def free_module(algebra: AlgebraPresentation, dims: GradedDims) -> ModuleOverAlgebra:
    """The free module A tensor C with A acting on the left factor."""
    return tensor_dims(regular_module(algebra), dims)
