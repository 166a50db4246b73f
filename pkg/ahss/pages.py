"""
The twisted Atiyah-Hirzebruch spectral sequence for finite complexes

With v_n := 1 the coefficients K(n)^* sit in degrees divisible by the
modulus 2(2^n - 1), so each page is singly graded by the filtration s and
E_2^s = H^s(X; F_2). A differential d_r can be nonzero only when
r = 1 mod the modulus; the first one is

    d(x) = Q_n(x) + x * Q_{n-1} ... Q_1(H)

of length 2^(n+1) - 1, where H is the mod-2 reduction of the twist.

Each page stores E_r^s as a subquotient Z_s / B_s of H^s, written in the
monomial basis of H^s, and keeps the page it was computed from.
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Mapping

import numpy as np

from ahss.exceptions import AHSSError
from graded import fields
from graded.algebra import GradedDims, Height
from graded.exceptions import PresentationError
from graded.rewriting import Element, Monomial
from steenrod.exceptions import SteenrodError
from steenrod.rings import SteenrodRing

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class TwistClass:
    """Mod-2 reduction of an integral twist class.

    Attributes
    ----------
    degree : int
        Degree of the integral class; must be n + 2.
    element : dict
        The reduction in the ring; empty when the multiplier is even.
    label : str
        How the twist was written, e.g. ``3*sigma3``.
    """

    degree: int
    element: Element = field(default_factory=dict)
    label: str = "H"

    @property
    def is_zero(self) -> bool:
        return not self.element


def twist_class(ring: SteenrodRing, value: Mapping[Monomial, int] | str, multiplier: int = 1, label: str | None = None, degree: int | None = None) -> TwistClass:
    """Reduce ``multiplier * value`` mod 2.

    ``degree`` is required only when ``value`` itself is zero mod 2.
    """
    try:
        element = ring.parse(value) if isinstance(value, str) else ring.normal_form(value)
        natural = ring.degree_of(element)
    except (PresentationError, SteenrodError) as exc:
        raise AHSSError({"twist": exc.messages}) from exc
    if natural is None and degree is None:
        raise AHSSError({"twist": "cannot infer the degree of a zero twist class"})
    if natural is not None and degree is not None and natural != degree:
        raise AHSSError({"twist": f"class has degree {natural}, not {degree}"})
    text = label or (value if isinstance(value, str) else ring.format(element))
    if multiplier != 1 and label is None:
        text = f"{multiplier}*{text}"
    return TwistClass(natural if natural is not None else degree, ring.scale(multiplier, element), text)


def differential_length(height: Height) -> int:
    """Length 2^(n+1) - 1 of the first possible twisted differential."""
    return 2 ** (height.n + 1) - 1


@dataclass(frozen=True, eq=False)
class AHSSPage:
    """The page E_r, with the differential d_r once computed.

    Attributes
    ----------
    height : Height
        K(n) at p = 2.
    ring : SteenrodRing
        Mod-2 cohomology of the complex; finite.
    r : int
        Page index.
    cycles, boundaries : tuple of numpy.ndarray
        Row bases of Z_s and B_s inside H^s for s = 0 .. top degree.
    differentials : dict
        ``{s: matrix}`` of d_r from H^s to H^(s+r), when computed.
    previous : AHSSPage or None
        The page this one was computed from.
    """

    height: Height
    ring: SteenrodRing
    r: int
    cycles: tuple[np.ndarray, ...]
    boundaries: tuple[np.ndarray, ...]
    differentials: dict = field(default_factory=dict)
    previous: "AHSSPage | None" = None

    @property
    def top(self) -> int:
        return self.ring.top_degree

    def entry(self, s: int) -> int:
        if not 0 <= s <= self.top:
            return 0
        return fields.rank(self.cycles[s], 2) - fields.rank(self.boundaries[s], 2)

    @property
    def entries(self) -> dict[int, int]:
        """``{s: dim E_r^s}`` over the nonzero filtrations."""
        result = {}
        for s in range(self.top + 1):
            size = self.entry(s)
            if size:
                result[s] = size
        return result

    @property
    def total(self) -> int:
        return sum(self.entries.values())

    def collapsed(self) -> GradedDims:
        """Entries regraded mod the modulus, the K(n)^* rank table."""
        return GradedDims(self.height, self.entries)

    def history(self) -> list["AHSSPage"]:
        """Every page from E_2 up to this one."""
        pages = []
        page = self
        while page is not None:
            pages.append(page)
            page = page.previous
        return list(reversed(pages))

    def differential_ranks(self) -> dict[int, int]:
        return {s: fields.rank(matrix, 2) for s, matrix in self.differentials.items() if matrix.size}

    def __str__(self):
        return f"E_{self.r} {self.entries}"


def e2(ring: SteenrodRing, height: Height) -> AHSSPage:
    """E_2^s = H^s(X; F_2), with K(n)^* collapsed.

    Raises
    ------
    AHSSError
        If the ring is infinite or the prime is odd.
    """
    if height.p != 2:
        raise AHSSError({"height": "the twisted spectral sequence is implemented at p = 2 only"})
    if not ring.is_finite:
        raise AHSSError({"ring": f"{ring} has infinite total dimension"})
    cycles, boundaries = [], []
    for s in range(ring.top_degree + 1):
        size = len(ring.monomials_of_degree(s))
        cycles.append(np.eye(size, dtype=np.int64))
        boundaries.append(np.zeros((0, size), dtype=np.int64))
    return AHSSPage(height, ring, 2, tuple(cycles), tuple(boundaries))


def twisted_differential(ring: SteenrodRing, height: Height, twist: TwistClass, element: Mapping[Monomial, int]) -> Element:
    """``Q_n(x) + x * Q_{n-1} ... Q_1(H)`` on a ring element."""
    n = height.n
    correction = ring.milnor_composite(range(n - 1, 0, -1), twist.element) if twist.element else {}
    total = ring.milnor_q(n, element)
    if correction:
        total = ring.add(total, ring.multiply(element, correction))
    return total


def _coordinates(ring: SteenrodRing, element: Element, degree: int) -> np.ndarray:
    basis = ring.monomials_of_degree(degree)
    position = {m: i for i, m in enumerate(basis)}
    vector = np.zeros(len(basis), dtype=np.int64)
    for monomial, coefficient in element.items():
        vector[position[monomial]] = coefficient % 2
    return vector


def first_differential(page: AHSSPage, twist: TwistClass) -> AHSSPage:
    """Apply d_(2^(n+1)-1) to E_2 and return the next page.

    Returns
    -------
    AHSSPage
        E_(2^(n+1)), whose ``previous`` is the page E_(2^(n+1)-1) carrying the
        differential matrices.

    Raises
    ------
    AHSSError
        If ``page`` is not E_2, the twist has the wrong degree, or d o d != 0.
    """
    height, ring = page.height, page.ring
    if page.r != 2:
        raise AHSSError({"page": f"the first differential acts on E_2, got E_{page.r}"})
    if twist.degree != height.n + 2:
        raise AHSSError({"twist": f"twist of degree {twist.degree} at height {height.n}; need {height.n + 2}"})

    length = differential_length(height)
    top = ring.top_degree
    matrices = {}
    for s in range(top + 1):
        sources = ring.monomials_of_degree(s)
        target_size = len(ring.monomials_of_degree(s + length)) if s + length <= top else 0
        matrix = np.zeros((target_size, len(sources)), dtype=np.int64)
        for j, monomial in enumerate(sources):
            image = twisted_differential(ring, height, twist, {monomial: 1})
            if image:
                matrix[:, j] = _coordinates(ring, image, s + length)
        matrices[s] = matrix
        logger.debug("d_%d on H^%d: rank %d", length, s, fields.rank(matrix, 2))

    for s, matrix in matrices.items():
        following = matrices.get(s + length)
        if following is not None and following.size and matrix.size:
            if fields.matmul(following, matrix, 2).any():
                raise AHSSError({"twist": f"d_{length} o d_{length} is nonzero on H^{s} for twist {twist.label}"})

    acting = replace(page, r=length, differentials=matrices, previous=page)
    cycles, boundaries = [], []
    for s in range(top + 1):
        size = len(ring.monomials_of_degree(s))
        matrix = matrices[s]
        cycles.append(fields.nullspace(matrix, 2) if matrix.shape[0] else np.eye(size, dtype=np.int64))
        incoming = matrices.get(s - length)
        if incoming is not None and incoming.size:
            boundaries.append(fields.row_reduce(incoming.T, 2).rows)
        else:
            boundaries.append(np.zeros((0, size), dtype=np.int64))
    result = AHSSPage(height, ring, length + 1, tuple(cycles), tuple(boundaries), previous=acting)
    logger.info("%s with twist %s: %s", height, twist.label, result)
    return result


def next_possible_length(page: AHSSPage) -> int | None:
    """Smallest r' >= page.r with r' = 1 mod the modulus and a nonzero source and target."""
    entries = page.entries
    if not entries:
        return None
    modulus = page.height.modulus
    span = max(entries) - min(entries)
    length = page.r + (1 - page.r) % modulus
    while length <= span:
        if any(s + length in entries for s in entries):
            return length
        length += modulus
    return None


def converged(page: AHSSPage) -> bool:
    """True when no later differential can connect two nonzero entries."""
    return next_possible_length(page) is None


def euler_characteristic(page: AHSSPage) -> int:
    return sum((-1) ** s * size for s, size in page.entries.items())


def leibniz_defect(page: AHSSPage, twist: TwistClass, x: Mapping[Monomial, int], y: Mapping[Monomial, int]) -> Element:
    """``d(xy) - (Q_n(x) y + x d(y))``, zero for the twisted differential."""
    ring, height = page.ring, page.height
    left = twisted_differential(ring, height, twist, ring.multiply(x, y))
    right = ring.add(
        ring.multiply(ring.milnor_q(height.n, x), y),
        ring.multiply(x, twisted_differential(ring, height, twist, y)),
    )
    return ring.add(left, ring.scale(-1, right))
