"""
Collapsed Morava grading and finitely presented graded-commutative algebras

K(n)_* = F_p[v_n, v_n^-1] is a graded field. Setting v_n = 1 records every
K(n)_*-module as an F_p vector space graded by Z/2(p^n - 1); ranks,
vanishing and isomorphism type survive the collapse.

Classes:
    Height: The prime and chromatic height, with the grading modulus
    GradedDims: Dimension table over the collapsed grading
    AlgebraPresentation: Generators with one truncation rule each
"""

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

import sympy

from graded.exceptions import PresentationError
from graded.rewriting import Element, Monomial, TruncatedAlgebra, TruncationRule

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Height:
    """Morava K-theory K(n) at the prime p.

    Attributes
    ----------
    p : int
        The prime.
    n : int
        Chromatic height, at least 1.
    """

    p: int
    n: int

    def __post_init__(self):
        if not sympy.isprime(self.p):
            raise PresentationError({"prime": f"{self.p} is not prime"})
        if self.n < 1:
            raise PresentationError({"height": f"height must be at least 1, got {self.n}"})

    @property
    def modulus(self) -> int:
        """Degree of v_n, 2(p^n - 1)."""
        return 2 * (self.p ** self.n - 1)

    def reduce(self, degree: int) -> int:
        return degree % self.modulus

    def __str__(self):
        return f"K({self.n}) at p={self.p}"


@dataclass(frozen=True)
class GradedDims:
    """Ranks of a graded F_p vector space over Z/modulus.

    ``dims`` may be passed as any mapping or iterable of ``(degree, rank)``
    pairs; degrees are reduced, repeated residues are summed and zero ranks
    dropped, so two tables compare equal exactly when they agree in every
    residue.
    """

    height: Height
    dims: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        pairs = self.dims.items() if isinstance(self.dims, Mapping) else self.dims
        table: dict[int, int] = {}
        for degree, rank in pairs:
            if rank < 0:
                raise PresentationError({"dims": f"negative rank {rank} in degree {degree}"})
            residue = self.height.reduce(int(degree))
            table[residue] = table.get(residue, 0) + int(rank)
        object.__setattr__(self, "dims", tuple(sorted((d, r) for d, r in table.items() if r)))

    @classmethod
    def zero(cls, height: Height) -> "GradedDims":
        return cls(height, ())

    @classmethod
    def point(cls, height: Height) -> "GradedDims":
        """K(n)_* itself: rank one in degree 0."""
        return cls(height, {0: 1})

    def __getitem__(self, degree: int) -> int:
        return dict(self.dims).get(self.height.reduce(degree), 0)

    def as_dict(self) -> dict[int, int]:
        return dict(self.dims)

    @property
    def total(self) -> int:
        return sum(rank for _, rank in self.dims)

    @property
    def is_zero(self) -> bool:
        return not self.dims

    def rows(self) -> list[tuple[int, int]]:
        """``(residue, rank)`` for every residue, zeros included."""
        return [(d, self[d]) for d in range(self.height.modulus)]

    def _check_height(self, other: "GradedDims"):
        if other.height != self.height:
            raise PresentationError({"height": f"cannot combine {self.height} with {other.height}"})

    def __add__(self, other: "GradedDims") -> "GradedDims":
        self._check_height(other)
        return GradedDims(self.height, self.dims + other.dims)

    def shift(self, degree: int) -> "GradedDims":
        return GradedDims(self.height, [(d + degree, r) for d, r in self.dims])

    def convolve(self, other: "GradedDims") -> "GradedDims":
        """Dimensions of the tensor product over F_p."""
        self._check_height(other)
        return GradedDims(
            self.height,
            [(d1 + d2, r1 * r2) for (d1, r1), (d2, r2) in itertools.product(self.dims, other.dims)],
        )

    def __str__(self):
        inner = ", ".join(f"{d}: {r}" for d, r in self.dims)
        return "{" + inner + "}"


@dataclass(frozen=True)
class AlgebraPresentation(TruncatedAlgebra):
    """A graded-commutative F_p algebra with one truncation rule per generator.

    Attributes
    ----------
    height : Height
        Fixes p and the grading modulus.
    generators : tuple of (str, int)
        Generator names with degrees, reduced mod the modulus.
    rules : tuple of TruncationRule
        ``rules[i]`` rewrites the i-th generator.

    Notes
    -----
    Houses R(a_k) = F_p[a_k]/(a_k^p - c a_k), R(b_k) and truncated
    polynomial rings F_p[x]/x^e. At odd p the sign (-1)^(n-1) is folded
    into ``c``; at p = 2 it is 1.
    """

    height: Height
    generators: tuple[tuple[str, int], ...] = ()
    rules: tuple[TruncationRule, ...] = ()

    def __post_init__(self):
        generators = tuple((str(name), self.height.reduce(int(degree))) for name, degree in self.generators)
        rules = tuple(self.rules)
        object.__setattr__(self, "generators", generators)
        object.__setattr__(self, "rules", rules)

        names = [name for name, _ in generators]
        if len(set(names)) != len(names):
            raise PresentationError({"generators": f"duplicate generator names in {names}"})
        if len(rules) != len(generators):
            raise PresentationError(
                {"rules": f"need exactly one rule per generator ({len(generators)}), got {len(rules)}"}
            )
        p = self.height.p
        for (name, degree), rule in zip(generators, rules):
            coefficient = rule.coefficient % p
            if coefficient != rule.coefficient:
                raise PresentationError({"rules": f"coefficient of the rule on '{name}' must lie in range({p})"})
            if not rule.truncating and self.height.reduce((rule.exponent - 1) * degree):
                raise PresentationError(
                    {"rules": f"rule {name}^{rule.exponent} -> {coefficient}*{name} is not homogeneous"}
                )
            if p != 2 and degree % 2 and not (rule.truncating and rule.exponent == 2):
                raise PresentationError({"rules": f"odd generator '{name}' needs the exterior rule {name}^2 -> 0"})

    # -- TruncatedAlgebra hooks -----------------------------------------

    @property
    def p(self) -> int:
        return self.height.p

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.generators)

    @property
    def rule_list(self) -> tuple[TruncationRule, ...]:
        return self.rules

    @property
    def generator_parities(self) -> tuple[bool, ...]:
        return tuple(bool(degree % 2) for _, degree in self.generators)

    # -- constructors ----------------------------------------------------

    @classmethod
    def trivial(cls, height: Height) -> "AlgebraPresentation":
        """The ground field K(n)_* (no generators)."""
        return cls(height)

    @classmethod
    def truncated_polynomial(cls, height: Height, name: str, degree: int, exponent: int) -> "AlgebraPresentation":
        """F_p[name]/(name^exponent)."""
        return cls(height, ((name, degree),), (TruncationRule(exponent),))

    def tensor(self, other: "AlgebraPresentation") -> "AlgebraPresentation":
        """Tensor product over F_p; generator names must be disjoint."""
        if other.height != self.height:
            raise PresentationError({"height": f"cannot tensor {self.height} with {other.height}"})
        return AlgebraPresentation(self.height, self.generators + other.generators, self.rules + other.rules)

    @classmethod
    def tensor_all(cls, height: Height, factors: Iterable["AlgebraPresentation"]) -> "AlgebraPresentation":
        result = cls.trivial(height)
        for factor in factors:
            result = result.tensor(factor)
        return result

    # -- degrees ---------------------------------------------------------

    def generator_degree(self, name: str) -> int:
        return self.generators[self.index(name)][1]

    def degree(self, monomial: Monomial) -> int:
        return self.height.reduce(sum(e * d for e, (_, d) in zip(monomial, self.generators)))

    def degree_of(self, element: Mapping[Monomial, int]) -> int | None:
        """Residue of a homogeneous element; ``None`` for zero.

        Raises
        ------
        PresentationError
            If the element is not homogeneous.
        """
        degrees = {self.degree(m) for m in element}
        if len(degrees) > 1:
            raise PresentationError({"element": f"'{self.format(element)}' is not homogeneous"})
        return degrees.pop() if degrees else None

    # -- bases -----------------------------------------------------------

    @cached_property
    def monomial_basis(self) -> tuple[Monomial, ...]:
        """Every reduced monomial in the deterministic monomial order."""
        return tuple(self.reduced_monomials())

    @property
    def dimension(self) -> int:
        return len(self.monomial_basis)

    def basis(self, degree: int) -> list[Monomial]:
        """Reduced monomials of the given residue, in monomial order."""
        residue = self.height.reduce(degree)
        return [m for m in self.monomial_basis if self.degree(m) == residue]

    def hilbert(self) -> GradedDims:
        counts: dict[int, int] = {}
        for monomial in self.monomial_basis:
            residue = self.degree(monomial)
            counts[residue] = counts.get(residue, 0) + 1
        return GradedDims(self.height, counts)

    def element_from_monomial(self, monomial: Monomial) -> Element:
        return self.normal_form({monomial: 1})

    def __str__(self):
        if not self.generators:
            return f"F_{self.p}"
        parts = []
        for (name, degree), rule in zip(self.generators, self.rules):
            tail = f"{rule.coefficient}*{name}" if rule.coefficient else "0"
            parts.append(f"{name}[{degree}]: {name}^{rule.exponent} -> {tail}")
        return "; ".join(parts)
