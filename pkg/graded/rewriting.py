"""
Truncation rewriting for commutative monomial algebras

Both the collapsed-grading presentations of the Morava side and the
Z-graded cohomology rings of the Steenrod side are quotients of a
polynomial ring by one rule per generator, ``g^e -> c*g`` or ``g^e -> 0``.
Rules on distinct generators commute, so rewriting each exponent on its own
is confluent and terminating.

Elements are plain dicts ``{monomial: coefficient}`` where a monomial is a
tuple of exponents in generator order and coefficients lie in ``range(p)``.

Classes:
    TruncationRule: One rewrite rule on a single generator
    TruncatedAlgebra: Mixin with normal forms, products, parsing, formatting
"""

import itertools
from dataclasses import dataclass
from typing import Iterator, Mapping

import sympy
from sympy.polys.polyerrors import CoercionFailed, NotInvertible, PolynomialError

from graded.exceptions import PresentationError

Monomial = tuple[int, ...]
Element = dict[Monomial, int]


@dataclass(frozen=True)
class TruncationRule:
    """The rule ``g^exponent -> coefficient * g`` (``coefficient == 0`` means ``g^exponent -> 0``)."""

    exponent: int
    coefficient: int = 0

    def __post_init__(self):
        if self.exponent < 2:
            raise PresentationError({"rule": f"truncation exponent must be at least 2, got {self.exponent}"})

    @property
    def truncating(self) -> bool:
        return self.coefficient == 0

    def reduce_power(self, power: int) -> tuple[int, int]:
        """Rewrite ``g^power`` to ``coefficient * g^exponent`` with the exponent below the rule's.

        Returns
        -------
        tuple of int
            ``(scalar, reduced_power)``; scalar 0 means the power vanishes.
        """
        scalar = 1
        while power >= self.exponent:
            if self.truncating:
                return 0, 0
            power -= self.exponent - 1
            scalar *= self.coefficient
        return scalar, power

    def __str__(self):
        return f"g^{self.exponent} -> {self.coefficient or 0}" + ("*g" if self.coefficient else "")


def monomial_order_key(monomial: Monomial):
    """Total exponent first, then earlier generators before later ones."""
    return sum(monomial), tuple(-e for e in monomial)


class TruncatedAlgebra:
    """Rewriting, products and text conversion shared by the algebra types.

    Subclasses provide ``p``, ``names`` (generator names in order),
    ``rule_list`` (one ``TruncationRule`` or ``None`` per generator) and
    ``generator_parities`` (odd-degree flags used for Koszul signs at odd p).
    """

    p: int

    @property
    def names(self) -> tuple[str, ...]:
        raise NotImplementedError

    @property
    def rule_list(self) -> tuple[TruncationRule | None, ...]:
        raise NotImplementedError

    @property
    def generator_parities(self) -> tuple[bool, ...]:
        return tuple(False for _ in self.names)

    # -- monomials -------------------------------------------------------

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise PresentationError({"generator": f"unknown generator '{name}'"}) from None

    def monomial(self, exponents: Mapping[str, int] | None = None) -> Monomial:
        """Build an (unreduced) exponent tuple from ``{name: exponent}``."""
        result = [0] * len(self.names)
        for name, exponent in (exponents or {}).items():
            if exponent < 0:
                raise PresentationError({"exponent": f"negative exponent on '{name}'"})
            result[self.index(name)] += exponent
        return tuple(result)

    def one(self) -> Element:
        return {tuple(0 for _ in self.names): 1}

    def generator(self, name: str) -> Element:
        return self.normal_form({self.monomial({name: 1}): 1})

    def _check_monomial(self, monomial) -> Monomial:
        monomial = tuple(int(e) for e in monomial)
        if len(monomial) != len(self.names):
            raise PresentationError(
                {"monomial": f"expected {len(self.names)} exponents, got {len(monomial)}"}
            )
        if any(e < 0 for e in monomial):
            raise PresentationError({"monomial": f"negative exponent in {monomial}"})
        return monomial

    def reduce_monomial(self, monomial: Monomial) -> tuple[int, Monomial]:
        """Apply every rule to exhaustion on a single monomial."""
        scalar = 1
        reduced = []
        for power, rule in zip(monomial, self.rule_list):
            if rule is None:
                reduced.append(power)
                continue
            factor, power = rule.reduce_power(power)
            if factor % self.p == 0:
                return 0, monomial
            scalar *= factor
            reduced.append(power)
        return scalar % self.p, tuple(reduced)

    def is_reduced(self, monomial: Monomial) -> bool:
        return all(rule is None or power < rule.exponent for power, rule in zip(monomial, self.rule_list))

    # -- elements --------------------------------------------------------

    def normal_form(self, terms: Mapping[Monomial, int]) -> Element:
        """Canonical F_p-combination of reduced monomials equal to ``terms``."""
        result: Element = {}
        for monomial, coefficient in terms.items():
            monomial = self._check_monomial(monomial)
            scalar, reduced = self.reduce_monomial(monomial)
            value = (result.get(reduced, 0) + scalar * int(coefficient)) % self.p
            if value:
                result[reduced] = value
            else:
                result.pop(reduced, None)
        return dict(sorted(result.items(), key=lambda item: monomial_order_key(item[0])))

    def _sign(self, left: Monomial, right: Monomial) -> int:
        """Koszul sign of moving ``right`` past ``left`` into generator order."""
        if self.p == 2:
            return 1
        odd = self.generator_parities
        swaps = 0
        for i, a in enumerate(left):
            if not a or not odd[i]:
                continue
            swaps += a * sum(b for j, b in enumerate(right) if j < i and odd[j])
        return -1 if swaps % 2 else 1

    def multiply(self, x: Mapping[Monomial, int], y: Mapping[Monomial, int]) -> Element:
        terms: dict[Monomial, int] = {}
        for (mx, cx), (my, cy) in itertools.product(x.items(), y.items()):
            scalar, reduced = self.reduce_monomial(tuple(a + b for a, b in zip(mx, my)))
            if not scalar:
                continue
            coefficient = scalar * cx * cy * self._sign(mx, my)
            terms[reduced] = (terms.get(reduced, 0) + coefficient) % self.p
        return self.normal_form(terms)

    def add(self, *elements: Mapping[Monomial, int]) -> Element:
        terms: dict[Monomial, int] = {}
        for element in elements:
            for monomial, coefficient in element.items():
                terms[monomial] = terms.get(monomial, 0) + coefficient
        return self.normal_form(terms)

    def scale(self, scalar: int, element: Mapping[Monomial, int]) -> Element:
        return self.normal_form({m: scalar * c for m, c in element.items()})

    def power(self, element: Mapping[Monomial, int], exponent: int) -> Element:
        result = self.one()
        for _ in range(exponent):
            result = self.multiply(result, element)
        return result

    # -- enumeration -----------------------------------------------------

    def reduced_monomials(self) -> Iterator[Monomial]:
        """Every reduced monomial, in monomial order; requires every generator truncated."""
        if any(rule is None for rule in self.rule_list):
            raise PresentationError({"rules": "monomial basis is infinite: some generator has no rule"})
        ranges = [range(rule.exponent) for rule in self.rule_list]
        yield from sorted(itertools.product(*ranges), key=monomial_order_key)

    # -- text ------------------------------------------------------------

    def parse(self, text: str) -> Element:
        """Parse a polynomial string such as ``'b0*b1 + b2^2'`` into normal form."""
        symbols = [sympy.Symbol(name) for name in self.names]
        namespace = dict(zip(self.names, symbols))
        try:
            expression = sympy.sympify(text, locals=namespace)
        except (sympy.SympifyError, SyntaxError, TypeError, ValueError, AttributeError) as exc:
            raise PresentationError({"polynomial": f"cannot parse '{text}': {exc}"}) from exc
        if not isinstance(expression, sympy.Expr):
            raise PresentationError({"polynomial": f"'{text}' is not a polynomial"})
        unknown = {str(s) for s in expression.free_symbols} - set(self.names)
        if unknown:
            raise PresentationError({"generator": f"unknown generator(s) {sorted(unknown)} in '{text}'"})
        if not symbols:
            if not expression.is_Integer:
                raise PresentationError({"polynomial": f"'{text}' is not an integer"})
            return self.normal_form({(): int(expression)})
        try:
            polynomial = sympy.Poly(expression, *symbols, modulus=self.p)
            terms = {tuple(m): int(c) for m, c in polynomial.terms()}
        except (PolynomialError, CoercionFailed, NotInvertible, TypeError, ValueError) as exc:
            raise PresentationError({"polynomial": f"'{text}' is not a polynomial over F_{self.p}"}) from exc
        return self.normal_form(terms)

    def format_monomial(self, monomial: Monomial) -> str:
        factors = []
        for name, power in zip(self.names, monomial):
            if power == 1:
                factors.append(name)
            elif power > 1:
                factors.append(f"{name}^{power}")
        return "*".join(factors) or "1"

    def format(self, element: Mapping[Monomial, int]) -> str:
        if not element:
            return "0"
        parts = []
        for monomial, coefficient in sorted(element.items(), key=lambda item: monomial_order_key(item[0])):
            text = self.format_monomial(monomial)
            if coefficient != 1:
                text = f"{coefficient}" if text == "1" else f"{coefficient}*{text}"
            parts.append(text)
        return " + ".join(parts)