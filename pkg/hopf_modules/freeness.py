"""
Freeness certificates: detecting M = A tensor C as A-modules

The algebras in play split as S tensor L. The generators of S have a rule
``g^e -> c*g`` in degree 0 whose polynomial ``x^e - c*x`` has e distinct
roots in F_p, so S is a product of copies of F_p cut out by Lagrange
idempotents, one per character of S. The generators of L truncate
(``g^e -> 0``), so L is local with nilpotent maximal ideal m.

M is free over A exactly when every piece ``e_chi M`` is free over L with
the same graded rank. In each piece a minimal generating set is read off
greedily modulo ``m e_chi M`` (minimal degree first, ties by basis index);
summing the k-th generator of every piece gives A-module generators of M,
and the induced map from A tensor C is checked to be bijective.
"""

import itertools
import logging
import math
from dataclasses import dataclass

import numpy as np

from graded import fields
from graded.algebra import GradedDims
from hopf_modules.characters import rule_roots
from hopf_modules.modules import ModuleOverAlgebra, verify_action

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FreenessCertificate:
    """Result of ``freeness_certificate``.

    Attributes
    ----------
    free : bool
        Whether M is free over its algebra.
    classes : GradedDims or None
        The graded rank C with M = A tensor C, when free.
    generators : tuple of numpy.ndarray
        Homogeneous A-module generators of M, one per class of C.
    reason : str
        Why freeness was refused.
    """

    free: bool
    classes: GradedDims | None = None
    generators: tuple[np.ndarray, ...] = ()
    reason: str = ""

    def __bool__(self):
        return self.free


def _refuse(reason: str) -> FreenessCertificate:
    logger.info("freeness refused: %s", reason)
    return FreenessCertificate(False, reason=reason)


def _vector_degree(module: ModuleOverAlgebra, vector: np.ndarray) -> int:
    return module.degrees[int(np.flatnonzero(vector)[0])]


def _span(rows: list[np.ndarray], size: int, p: int) -> fields.RowReduceResult:
    return fields.row_reduce(np.array(rows, dtype=np.int64).reshape(len(rows), size), p)


def _idempotent(module: ModuleOverAlgebra, split, values) -> np.ndarray:
    """Matrix of the Lagrange idempotent of the split character ``values``."""
    p, size = module.p, module.dimension
    identity = np.eye(size, dtype=np.int64)
    result = identity
    for (index, roots), root in zip(split, values):
        action = module.actions[index]
        for other in roots:
            if other == root:
                continue
            factor = fields.inverse(root - other, p)
            result = fields.matmul(result, factor * (action - other * identity), p)
    return result


def _minimal_generators(module: ModuleOverAlgebra, piece: np.ndarray, local: list[int]) -> list[np.ndarray]:
    """Homogeneous generators of a piece modulo its maximal-ideal part."""
    p, size = module.p, module.dimension
    radical = [fields.matmul(module.actions[i], v, p) for i in local for v in piece]
    candidates = sorted(piece, key=lambda v: (_vector_degree(module, v), int(np.flatnonzero(v)[0])))
    chosen = []
    span = _span(radical, size, p)
    for vector in candidates:
        if fields.reduce_vector(span, vector, p).any():
            chosen.append(vector)
            radical.append(vector)
            span = _span(radical, size, p)
    return chosen


def freeness_certificate(module: ModuleOverAlgebra) -> FreenessCertificate:
    """Decide whether ``module`` is free over its algebra.

    Returns
    -------
    FreenessCertificate
        The graded rank and a generator witness on success; a refusal with
        a reason otherwise (never raises for a well-formed module).
    """
    check = verify_action(module)
    if not check:
        return _refuse(f"action check failed: {check.reason}")

    algebra, p, size = module.algebra, module.p, module.dimension
    split, local = [], []
    for index, ((name, degree), rule) in enumerate(zip(algebra.generators, algebra.rules)):
        if rule.truncating:
            local.append(index)
            continue
        roots = rule_roots(rule, p)
        if degree or len(roots) != rule.exponent:
            return _refuse(f"'{name}' does not split into idempotents over F_{p}")
        split.append((index, roots))
    local_dimension = math.prod(algebra.rules[i].exponent for i in local)

    pieces = []
    for values in itertools.product(*(roots for _, roots in split)):
        idempotent = _idempotent(module, split, values)
        piece = fields.row_reduce(idempotent.T, p).rows
        generators = _minimal_generators(module, piece, local)
        if len(generators) * local_dimension != len(piece):
            return _refuse(
                f"piece {values} has dimension {len(piece)}, "
                f"but {len(generators)} generators span {len(generators) * local_dimension}"
            )
        pieces.append(generators)

    degree_lists = [[_vector_degree(module, v) for v in generators] for generators in pieces]
    if any(degrees != degree_lists[0] for degrees in degree_lists):
        return _refuse(f"graded ranks differ across characters: {degree_lists}")

    count = len(degree_lists[0])
    generators = [sum(piece[k] for piece in pieces) % p for k in range(count)]
    columns = [
        fields.matmul(module.monomial_matrix(monomial), vector, p)
        for vector in generators
        for monomial in algebra.monomial_basis
    ]
    if len(columns) != size or fields.rank(np.array(columns).reshape(len(columns), size), p) != size:
        return _refuse("induced map from the free module is not an isomorphism")

    classes = GradedDims(module.height, [(d, 1) for d in degree_lists[0]])
    logger.info("module of dimension %d is free with classes %s", size, classes)
    return FreenessCertificate(True, classes, tuple(generators))
