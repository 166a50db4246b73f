"""
Twists and their characters

An integral twist ``k*H`` with H in H^(n+2)(X; Z) is pulled back from
K(Z, n+2) and makes K(n)_* a module over K(n)_* K(Z, n+1) = R(b_0) R(b_1) ...;
a mod-2 twist h in H^(n+1)(X; Z/2) does the same over
K(n)_* K(Z/2, n) = R(a_0). At p = 2 multiplication by k acts on the
bottom generator as k mod 2, so odd multiples send b_0 (or a_0) to 1 and
even ones give the augmentation.

Classes:
    TwistSpec: Flavor, multiplier and class of a twist at a height
    TwistClassification: The group of twists of an Eilenberg-MacLane space

Functions:
    parse_twist_expression: ``3*sigma3``, ``w2``, ``p1/2``
    resolve_twist: Expression to TwistSpec against a catalog entry
    classify_twists: Twists of K(Z, m) and K(Z/p^j, m)
"""

import logging
import re
from dataclasses import dataclass

from catalog.algebras import em_algebra
from catalog.descriptors import SpaceDescriptor, TwistFlavor, fibre_algebra
from catalog.exceptions import CatalogError
from graded.algebra import AlgebraPresentation, Height
from hopf_modules.characters import Character, enumerate_characters
from uct.exceptions import UCTError

logger = logging.getLogger(__name__)

TWIST_EXPRESSION = re.compile(r"^\s*(?:(?P<multiplier>[+-]?\d+)\s*\*\s*)?(?P<name>[^\s*]+)\s*$")


def parse_twist_expression(text: str) -> tuple[int, str]:
    """Split ``'3*sigma3'`` into ``(3, 'sigma3')``; a bare name has multiplier 1.

    Raises
    ------
    UCTError
        If the text is not ``[integer*]name``.
    """
    match = TWIST_EXPRESSION.match(text or "")
    if match is None:
        raise UCTError({"twist": f"'{text}' is not of the form [k*]class"})
    multiplier = int(match["multiplier"]) if match["multiplier"] is not None else 1
    return multiplier, match["name"]


@dataclass(frozen=True)
class TwistSpec:
    """``multiplier * name`` as an integral or mod-2 twist at ``height``.

    Attributes
    ----------
    height : Height
        Must be at p = 2.
    flavor : str
        ``'integral'`` (class in degree n+2) or ``'mod-2'`` (degree n+1).
    multiplier : int
        The k in k*H; only its parity reaches the character.
    name : str
        Name of the class, for statements.
    """

    height: Height
    flavor: str = TwistFlavor.INTEGRAL
    multiplier: int = 1
    name: str = "H"

    def __post_init__(self):
        if self.height.p != 2:
            raise UCTError({"prime": f"twisted K(n) is defined at p = 2 only, got p = {self.height.p}"})
        if self.flavor not in TwistFlavor.values:
            raise UCTError({"flavor": f"flavor must be one of {TwistFlavor.values}, got '{self.flavor}'"})

    @classmethod
    def for_class(cls, height: Height, degree: int, coefficients: str, name: str, multiplier: int = 1) -> "TwistSpec":
        """The twist by ``multiplier`` times a class of the given degree and coefficients."""
        flavor = TwistFlavor.INTEGRAL if coefficients == 'Z' else TwistFlavor.MOD_2
        spec = cls(height, flavor, multiplier, name)
        if degree != spec.degree:
            raise UCTError(
                {"twist": f"'{name}' has degree {degree}; a {flavor} twist of {height} lives in degree {spec.degree}"}
            )
        return spec

    @property
    def degree(self) -> int:
        n = self.height.n
        return n + 2 if self.flavor == TwistFlavor.INTEGRAL else n + 1

    @property
    def generator(self) -> str:
        """The bottom generator the twist character can move."""
        return "b0" if self.flavor == TwistFlavor.INTEGRAL else "a0"

    @property
    def is_odd(self) -> bool:
        return self.multiplier % 2 == 1

    def algebra(self, truncation: int = 1) -> AlgebraPresentation:
        """The fibre algebra the twist is a character of."""
        return fibre_algebra(self.height, self.flavor, truncation)

    def character(self, truncation: int = 1) -> Character:
        return self.character_on(self.algebra(truncation))

    def character_on(self, algebra: AlgebraPresentation) -> Character:
        """The twist character on ``algebra``: the bottom generator goes to k mod 2, the rest to 0."""
        if self.generator not in algebra.names:
            raise UCTError({"algebra": f"{algebra} has no generator {self.generator} for a {self.flavor} twist"})
        return Character.from_mapping(algebra, {self.generator: self.multiplier % 2})

    def __str__(self):
        return self.name if self.multiplier == 1 else f"{self.multiplier}*{self.name}"


def resolve_twist(space: SpaceDescriptor, expression: str) -> TwistSpec:
    """Read ``[k*]class`` against the class table of ``space``.

    Raises
    ------
    UCTError
        For a malformed expression, an unknown class or a class in the wrong degree.
    """
    multiplier, name = parse_twist_expression(expression)
    try:
        entry = space.twist_class(name)
    except CatalogError as exc:
        raise UCTError({"twist": exc.messages}) from exc
    return TwistSpec.for_class(space.height, entry.degree, entry.coefficients, name, multiplier)


@dataclass(frozen=True)
class TwistClassification:
    """The twists of an Eilenberg-MacLane space in K(n).

    ``characters`` lists the twists as characters of the fibre algebra when
    the group is finite.
    """

    space: str
    group: str
    characters: tuple[Character, ...] = ()

    @property
    def trivial(self) -> bool:
        return self.group == "0"

    def __str__(self):
        return f"twists of {self.space}: {self.group}"


def classify_twists(height: Height, m: int, order: int | None = None) -> TwistClassification:
    """Twists of K(n) on K(Z, m) (``order=None``) or K(Z/order, m).

    K(Z, n+2) at p = 2 has the dyadic integers as twists, generated by the
    universal twist; K(Z/2^j, n+1) has Z/2^j, one twist per character of
    K(n)_* K(Z/2^j, n). Higher degrees and odd primes have none.

    Raises
    ------
    UCTError
        Below the degrees where the twists are known.
    """
    n, p = height.n, height.p
    if order is None:
        space = f"K(Z, {m})"
        if m > n + 2 or p != 2:
            return TwistClassification(space, "0")
        if m == n + 2:
            return TwistClassification(space, "Z_2")
        raise UCTError({"m": f"twists of {space} at height {n} are not classified here"})

    space = f"K(Z/{order}, {m})"
    if order < 1:
        raise UCTError({"order": f"group order must be positive, got {order}"})
    if m > n + 1 or p != 2:
        return TwistClassification(space, "0")
    if m < n + 1:
        raise UCTError({"m": f"twists of {space} at height {n} are not classified here"})
    algebra = em_algebra(height, order, n)
    characters = tuple(enumerate_characters(algebra))
    logger.debug("%s has %d twists", space, len(characters))
    if len(characters) == 1:
        return TwistClassification(space, "0", characters)
    return TwistClassification(space, f"Z/{len(characters)}", characters)
