"""
Mod-2 cohomology rings with Steenrod squares

A SteenrodRing is a Z-graded F_2 algebra on generators of positive degree,
each either polynomial or truncated (``g^e -> 0``), together with the
values ``Sq^i(g)`` for ``1 <= i <= |g|``. Squares of products follow from
the Cartan formula; Milnor primitives from

    Q_0 = Sq^1,    Q_{j+1} = Sq^(2^(j+1)) Q_j + Q_j Sq^(2^(j+1)).

Classes:
    SteenrodRing: Generators, truncations and the square table
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Mapping

from graded.exceptions import PresentationError
from graded.rewriting import Element, Monomial, TruncatedAlgebra, TruncationRule, monomial_order_key
from steenrod.exceptions import SteenrodError

logger = logging.getLogger(__name__)

SquareEntry = tuple[str, int, tuple[tuple[Monomial, int], ...]]


@dataclass(frozen=True)
class SteenrodRing(TruncatedAlgebra):
    """A finitely presented graded F_2 algebra with Steenrod squares on generators.

    Attributes
    ----------
    generators : tuple of (str, int)
        Generator names with degrees at least 1.
    rules : tuple of TruncationRule or None
        ``None`` leaves the generator polynomial.
    squares : tuple of (str, int, terms)
        ``(g, i, Sq^i(g))`` entries. A mapping
        ``{g: {i: value}}`` with polynomial strings or elements is accepted.
        Missing entries below the top are zero; ``Sq^|g|(g)`` defaults to ``g^2``.
    """

    generators: tuple[tuple[str, int], ...] = ()
    rules: tuple[TruncationRule | None, ...] = ()
    squares: tuple[SquareEntry, ...] = ()

    p = 2

    def __post_init__(self):
        generators = tuple((str(name), int(degree)) for name, degree in self.generators)
        object.__setattr__(self, "generators", generators)
        rules = tuple(self.rules) or (None,) * len(generators)
        object.__setattr__(self, "rules", rules)

        names = [name for name, _ in generators]
        if len(set(names)) != len(names):
            raise SteenrodError({"generators": f"duplicate generator names in {names}"})
        if len(rules) != len(generators):
            raise SteenrodError({"rules": f"need one rule (or None) per generator, got {len(rules)}"})
        for (name, degree), rule in zip(generators, rules):
            if degree < 1:
                raise SteenrodError({"generators": f"'{name}' must have positive degree, got {degree}"})
            if rule is not None and not rule.truncating:
                raise SteenrodError({"rules": f"rule on '{name}' must truncate in a Z-graded ring"})

        object.__setattr__(self, "squares", self._normalize_squares(self.squares))

    def _normalize_squares(self, squares) -> tuple[SquareEntry, ...]:
        if isinstance(squares, Mapping):
            items = [(g, i, value) for g, values in squares.items() for i, value in values.items()]
        else:
            items = [(g, i, dict(terms)) for g, i, terms in squares]

        table: dict[tuple[int, int], Element] = {}
        for name, i, value in items:
            try:
                index = self.index(name)
                element = self.parse(value) if isinstance(value, str) else self.normal_form(value)
            except PresentationError as exc:
                raise SteenrodError({"squares": exc.messages}) from exc
            degree = self.generators[index][1]
            i = int(i)
            if not 1 <= i <= degree:
                raise SteenrodError({"squares": f"Sq^{i}({name}) is outside 1..{degree}"})
            if element and self.degree_of(element) != degree + i:
                raise SteenrodError(
                    {"squares": f"Sq^{i}({name}) = {self.format(element)} is not of degree {degree + i}"}
                )
            table[index, i] = element

        for index, (name, degree) in enumerate(self.generators):
            square = self.power(self.generator(name), 2)
            top = table.setdefault((index, degree), square)
            if top != square:
                raise SteenrodError({"squares": f"Sq^{degree}({name}) must equal {name}^2"})

        return tuple(
            (self.generators[index][0], i, tuple(element.items()))
            for (index, i), element in sorted(table.items())
            if element
        )

    # -- TruncatedAlgebra hooks -----------------------------------------

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.generators)

    @property
    def rule_list(self) -> tuple[TruncationRule | None, ...]:
        return self.rules

    # -- degrees and bases -----------------------------------------------

    def generator_degree(self, name: str) -> int:
        return self.generators[self.index(name)][1]

    def degree(self, monomial: Monomial) -> int:
        return sum(e * d for e, (_, d) in zip(monomial, self.generators))

    def degree_of(self, element: Mapping[Monomial, int]) -> int | None:
        """Degree of a homogeneous element; ``None`` for zero."""
        degrees = {self.degree(m) for m in element}
        if len(degrees) > 1:
            raise SteenrodError({"element": f"'{self.format(element)}' is not homogeneous"})
        return degrees.pop() if degrees else None

    @property
    def is_finite(self) -> bool:
        return all(rule is not None for rule in self.rules)

    def monomials_of_degree(self, degree: int) -> list[Monomial]:
        """Reduced monomials of the given degree, in monomial order."""

        def extend(index: int, remaining: int) -> Iterator[tuple[int, ...]]:
            if index == len(self.generators):
                if remaining == 0:
                    yield ()
                return
            step = self.generators[index][1]
            rule = self.rules[index]
            top = remaining // step
            if rule is not None:
                top = min(top, rule.exponent - 1)
            for power in range(top + 1):
                for tail in extend(index + 1, remaining - power * step):
                    yield (power,) + tail

        if degree < 0:
            return []
        return sorted(extend(0, degree), key=monomial_order_key)

    @cached_property
    def top_degree(self) -> int:
        """Largest degree of a nonzero class; finite rings only."""
        if not self.is_finite:
            raise SteenrodError({"rules": "ring has infinite total dimension"})
        return sum((rule.exponent - 1) * d for (_, d), rule in zip(self.generators, self.rules))

    def hilbert(self) -> dict[int, int]:
        """``{degree: dimension}`` over all nonzero degrees; finite rings only."""
        counts = {}
        for degree in range(self.top_degree + 1):
            size = len(self.monomials_of_degree(degree))
            if size:
                counts[degree] = size
        return counts

    @property
    def dimension(self) -> int:
        return sum(self.hilbert().values())

    # -- squares ---------------------------------------------------------

    @cached_property
    def _generator_squares(self) -> dict[tuple[int, int], Element]:
        return {(self.index(name), i): dict(terms) for name, i, terms in self.squares}

    @cached_property
    def _square_cache(self) -> dict:
        return {}

    @cached_property
    def _primitive_cache(self) -> dict:
        return {}

    def generator_square(self, index: int, i: int) -> Element:
        if i == 0:
            return self.generator(self.names[index])
        return self._generator_squares.get((index, i), {})

    def _sq_monomial(self, i: int, monomial: Monomial) -> Element:
        key = (i, monomial)
        if key in self._square_cache:
            return self._square_cache[key]
        if i == 0:
            result = self.normal_form({monomial: 1})
        elif i > self.degree(monomial):
            result = {}
        else:
            index = next(k for k, power in enumerate(monomial) if power)
            rest = tuple(power - (k == index) for k, power in enumerate(monomial))
            result = {}
            for j in range(min(i, self.generators[index][1]) + 1):
                left = self.generator_square(index, j)
                if left:
                    result = self.add(result, self.multiply(left, self._sq_monomial(i - j, rest)))
        self._square_cache[key] = result
        return result

    def _homogeneous(self, element: Mapping[Monomial, int]) -> Element:
        element = self.normal_form(element)
        self.degree_of(element)
        return element

    def sq(self, i: int, element: Mapping[Monomial, int]) -> Element:
        """``Sq^i`` of a homogeneous element, by the Cartan formula.

        Raises
        ------
        SteenrodError
            If ``i`` is negative or the element is not homogeneous.
        """
        if i < 0:
            raise SteenrodError({"i": f"square index must be non-negative, got {i}"})
        element = self._homogeneous(element)
        return self.add(*(self._sq_monomial(i, m) for m, c in element.items() if c))

    def total_square(self, element: Mapping[Monomial, int]) -> Element:
        """``Sq = Sq^0 + Sq^1 + ...``, applied degree component by component."""
        element = self.normal_form(element)
        terms = []
        for monomial in element:
            terms.extend(self._sq_monomial(i, monomial) for i in range(self.degree(monomial) + 1))
        return self.add(*terms)

    def _q_monomial(self, j: int, monomial: Monomial) -> Element:
        key = (j, monomial)
        if key in self._primitive_cache:
            return self._primitive_cache[key]
        if j == 0:
            result = self._sq_monomial(1, monomial)
        else:
            step = 2 ** j
            before = self._q_monomial(j - 1, monomial)
            after = self._sq_monomial(step, monomial)
            result = self.add(
                *(self._sq_monomial(step, m) for m in before),
                *(self._q_monomial(j - 1, m) for m in after),
            )
        self._primitive_cache[key] = result
        return result

    def milnor_q(self, j: int, element: Mapping[Monomial, int]) -> Element:
        """The Milnor primitive ``Q_j``, of degree ``2^(j+1) - 1``."""
        if j < 0:
            raise SteenrodError({"j": f"primitive index must be non-negative, got {j}"})
        element = self._homogeneous(element)
        return self.add(*(self._q_monomial(j, m) for m in element))

    def milnor_composite(self, indices, element: Mapping[Monomial, int]) -> Element:
        """Apply ``Q_{indices[0]} ... Q_{indices[-1]}``, rightmost first."""
        for j in reversed(list(indices)):
            element = self.milnor_q(j, element)
        return element

    # -- combination -----------------------------------------------------

    def tensor(self, other: "SteenrodRing") -> "SteenrodRing":
        """Product ring (cohomology of a product by Kunneth)."""
        left, right = len(self.generators), len(other.generators)
        squares: dict[str, dict[int, Element]] = {}
        for name, i, terms in self.squares:
            squares.setdefault(name, {})[i] = {m + (0,) * right: c for m, c in terms}
        for name, i, terms in other.squares:
            squares.setdefault(name, {})[i] = {(0,) * left + m: c for m, c in terms}
        return SteenrodRing(self.generators + other.generators, self.rules + other.rules, squares)

    def __str__(self):
        parts = []
        for (name, degree), rule in zip(self.generators, self.rules):
            parts.append(f"{name}[{degree}]" + (f"/{name}^{rule.exponent}" if rule else ""))
        return " ".join(parts) or "F_2"
