"""
Finitely generated abelian groups and the twisted mod-2 K-theory sandwich

For a space X with twist H_3, twisted K-theory and its mod-2 reduction
K(1) sit in

    0 -> K_n^H(X) (x) Z/2 -> K(1)_n(X; H) -> Tor(K_(n-1)^H(X), Z/2)

with no terminal zero asserted, so the dimension of K(1)_n(X; H) is only
bounded: below by the left term and above by the sum of both.

Classes:
    FinAbGroup: Free rank and invariant factors
    Bounds: A closed integer interval

Functions:
    k1_sandwich: Bounds on dim K(1)_n from K_n and K_(n-1)
    k1_total_bounds: Bounds on the total dimension over both parities
    khorami_s3 / khorami_kz3: Twisted K-homology at level one
"""

import itertools
import logging
import re
from dataclasses import dataclass
from math import prod

import sympy
from sympy.matrices.normalforms import smith_normal_form
from sympy.polys.domains import ZZ

from abgroups.exceptions import AbGroupError

logger = logging.getLogger(__name__)

SUMMAND = re.compile(r"^Z(?:\^(?P<power>\d+)|/(?P<order>\d+))?$")


def invariant_factors(orders) -> tuple[int, ...]:
    """The divisibility chain d_1 | d_2 | ... of a sum of cyclic groups Z/d, d >= 1.

    Each order is split into prime powers; the k-th largest power of every
    prime goes into the k-th largest factor.
    """
    powers: dict[int, list[int]] = {}
    for order in orders:
        for p, e in sympy.factorint(order).items():
            powers.setdefault(p, []).append(p ** e)
    columns = [sorted(values, reverse=True) for values in powers.values()]
    factors = [prod(values) for values in itertools.zip_longest(*columns, fillvalue=1)]
    return tuple(sorted(factors))


@dataclass(frozen=True)
class FinAbGroup:
    """Z^rank plus the cyclic groups Z/d for d in ``torsion``.

    ``torsion`` is normalized to its invariant factors on construction, so
    isomorphic groups compare equal.
    """

    rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise AbGroupError({"rank": f"free rank must be non-negative, got {self.rank}"})
        orders = [int(d) for d in self.torsion]
        if any(d < 1 for d in orders):
            raise AbGroupError({"torsion": f"torsion orders must be positive, got {orders}"})
        object.__setattr__(self, "torsion", invariant_factors(orders))

    @classmethod
    def zero(cls) -> "FinAbGroup":
        return cls()

    @classmethod
    def cyclic(cls, k: int) -> "FinAbGroup":
        """Z/k, with Z/0 = Z."""
        k = abs(k)
        return cls(1) if k == 0 else cls(0, (k,))

    @classmethod
    def from_relations(cls, matrix, generators: int | None = None) -> "FinAbGroup":
        """The cokernel of an integer relation matrix (rows are relations on the generators).

        ``generators`` is needed only when there are no relations.
        """
        rows = [list(row) for row in matrix]
        width = len(rows[0]) if rows else generators
        if width is None:
            raise AbGroupError({"generators": "a group with no relations needs its number of generators"})
        if not rows or width == 0:
            return cls(width)
        if any(len(row) != width for row in rows):
            raise AbGroupError({"matrix": "relation rows must have equal length"})
        normal = smith_normal_form(sympy.Matrix(rows), domain=ZZ)
        diagonal = [abs(int(normal[i, i])) for i in range(min(normal.shape))]
        nonzero = [d for d in diagonal if d]
        logger.debug("Smith diagonal %s for %d generators", diagonal, width)
        return cls(width - len(nonzero), tuple(nonzero))

    @classmethod
    def parse(cls, text: str) -> "FinAbGroup":
        """Read ``'0'``, ``'Z'``, ``'Z/6'``, ``'Z^2 + Z/4 + Z/6'`` (``⊕`` also separates).

        Raises
        ------
        AbGroupError
            For a summand that is not Z, Z^r or Z/d.
        """
        text = (text or "").strip()
        if text in ("0", ""):
            return cls()
        rank, torsion = 0, []
        for summand in re.split(r"[+⊕]", text):
            match = SUMMAND.match(summand.strip())
            if match is None:
                raise AbGroupError({"group": f"'{summand.strip()}' is not Z, Z^r or Z/d"})
            if match["order"] is not None:
                order = int(match["order"])
                if order == 0:
                    rank += 1
                elif order > 1:
                    torsion.append(order)
            else:
                rank += int(match["power"] or 1)
        return cls(rank, tuple(torsion))

    def __add__(self, other: "FinAbGroup") -> "FinAbGroup":
        return FinAbGroup(self.rank + other.rank, self.torsion + other.torsion)

    @property
    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    @property
    def tensor_z2(self) -> int:
        """dim over F_2 of G (x) Z/2."""
        return self.rank + sum(1 for d in self.torsion if d % 2 == 0)

    @property
    def tor_z2(self) -> int:
        """dim over F_2 of Tor(G, Z/2)."""
        return sum(1 for d in self.torsion if d % 2 == 0)

    def __str__(self):
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " ⊕ ".join(parts) or "0"


def tensor_z2(group: FinAbGroup) -> int:
    return group.tensor_z2


def tor_z2(group: FinAbGroup) -> int:
    return group.tor_z2


@dataclass(frozen=True)
class Bounds:
    lower: int
    upper: int

    def __post_init__(self):
        if not 0 <= self.lower <= self.upper:
            raise AbGroupError({"bounds": f"[{self.lower}, {self.upper}] is not an interval of dimensions"})

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    def __contains__(self, value: int) -> bool:
        return self.lower <= value <= self.upper

    def __add__(self, other: "Bounds") -> "Bounds":
        return Bounds(self.lower + other.lower, self.upper + other.upper)

    def __str__(self):
        return str(self.lower) if self.exact else f"[{self.lower}, {self.upper}]"


def k1_sandwich(current: FinAbGroup, previous: FinAbGroup) -> Bounds:
    """Bounds on dim K(1)_n(X; H) from K_n^H(X) and K_(n-1)^H(X)."""
    lower = current.tensor_z2
    return Bounds(lower, lower + previous.tor_z2)


def k1_total_bounds(groups: dict[int, FinAbGroup]) -> Bounds:
    """Bounds on the total dimension of K(1)_*(X; H) from ``{0: K_0, 1: K_1}``."""
    unknown = set(groups) - {0, 1}
    if unknown:
        raise AbGroupError({"groups": f"twisted K-theory is 2-periodic; got degrees {sorted(unknown)}"})
    even = groups.get(0, FinAbGroup.zero())
    odd = groups.get(1, FinAbGroup.zero())
    return k1_sandwich(even, odd) + k1_sandwich(odd, even)


def khorami_s3(k: int) -> dict[int, FinAbGroup]:
    """Twisted K-homology of S^3 with twist k: Z/k in even degree, 0 in odd; Z and Z untwisted."""
    if k == 0:
        return {0: FinAbGroup(1), 1: FinAbGroup(1)}
    return {0: FinAbGroup.cyclic(k), 1: FinAbGroup.zero()}


def khorami_kz3(k: int) -> dict[int, FinAbGroup]:
    """Twisted K-homology of K(Z, 3) with twist k != 0: zero in both degrees.

    Raises
    ------
    AbGroupError
        For k = 0, which the table does not cover.
    """
    if k == 0:
        raise AbGroupError({"k": "untwisted K-homology of K(Z, 3) is not tabulated"})
    return {0: FinAbGroup.zero(), 1: FinAbGroup.zero()}
