"""
Ravenel-Wilson algebras and the twist characters on them

K(n)_* of an Eilenberg-MacLane space is a tensor product of factors

    R(x_k) = F_p[x_k]/(x_k^p - (-1)^(n-1) x_k),    |x_k| = p^k * 2(p^n - 1)/(p - 1),

written a_k for K(Z/p^j, n) and b_k = (Bockstein)_* a_k for K(Z, n+1).
K(Z, n+1) needs all k >= 0; the tensor is truncated at J factors.

Functions:
    rw_degree: Degree of a_k or b_k, reduced mod the modulus
    rw_factor: One factor R(x_k)
    em_algebra: K(n)_* K(G, q) for G = Z or Z/k
    parse_em_space: ``K(Z/k, q)`` to (k, q)
    twist_character: b_0 -> 1, b_i -> 0 (integral twists)
    mod2_twist_character: a_0 -> 1, a_i -> 0 (mod-2 twists)
"""

import logging
import re

import sympy

from catalog.exceptions import CatalogError
from graded.algebra import AlgebraPresentation, Height
from graded.rewriting import TruncationRule
from hopf_modules.characters import Character

logger = logging.getLogger(__name__)

EM_SPACE = re.compile(r"^\s*K\(\s*Z\s*(?:/\s*(?P<order>\d+)\s*)?,\s*(?P<q>\d+)\s*\)\s*$")


def rw_degree(height: Height, k: int) -> int:
    p, n = height.p, height.n
    return height.reduce(p ** k * 2 * (p ** n - 1) // (p - 1))


def rw_factor(height: Height, name: str, k: int) -> AlgebraPresentation:
    """R(name_k) with the rule ``x^p -> (-1)^(n-1) x``."""
    coefficient = (-1) ** (height.n - 1) % height.p
    return AlgebraPresentation(height, ((f"{name}{k}", rw_degree(height, k)),), (TruncationRule(height.p, coefficient),))


def _rw_tensor(height: Height, name: str, count: int) -> AlgebraPresentation:
    return AlgebraPresentation.tensor_all(height, (rw_factor(height, name, k) for k in range(count)))


def em_algebra(height: Height, order: int | None, q: int, truncation: int | None = None) -> AlgebraPresentation:
    """K(n)_* K(G, q) for G = Z (``order=None``) or the cyclic group Z/order.

    Parameters
    ----------
    height : Height
        Prime and chromatic height.
    order : int or None
        Order of the cyclic group; only its p-primary part p^j is seen by
        K(n). ``None`` is the integers.
    q : int
        Degree of the Eilenberg-MacLane space.
    truncation : int, optional
        Number J of factors R(b_i) kept for K(Z, n+1). Required in that case.

    Returns
    -------
    AlgebraPresentation
        ``R(a_0) ... R(a_(j-1))`` for Z/p^j at q = n,
        ``R(b_0) ... R(b_(J-1))`` for Z at q = n + 1,
        and the trivial algebra when the space is K(n)-acyclic.

    Raises
    ------
    CatalogError
        For q < 1, a non-positive order, or a case outside the computed range.
    """
    n = height.n
    if q < 1:
        raise CatalogError({"q": f"degree must be at least 1, got {q}"})

    if order is None:
        if q > n + 1:
            return AlgebraPresentation.trivial(height)
        if q < n + 1:
            raise CatalogError({"q": f"K(Z, {q}) at height {n} is not a finite Ravenel-Wilson algebra"})
        if truncation is None or truncation < 1:
            raise CatalogError({"truncation": f"K(Z, {q}) needs a truncation J >= 1, got {truncation}"})
        return _rw_tensor(height, "b", truncation)

    if order < 1:
        raise CatalogError({"order": f"group order must be positive, got {order}"})
    j = sympy.multiplicity(height.p, order) if order > 1 else 0
    if j == 0 or q > n:
        logger.debug("K(Z/%d, %d) is acyclic for %s", order, q, height)
        return AlgebraPresentation.trivial(height)
    if q < n:
        raise CatalogError({"q": f"K(Z/{order}, {q}) at height {n} is outside the computed range q >= n"})
    return _rw_tensor(height, "a", j)


def parse_em_space(text: str) -> tuple[int | None, int]:
    """Read ``'K(Z, 3)'`` or ``'K(Z/8, 2)'`` as ``(order, q)``, order None for Z.

    Raises
    ------
    CatalogError
        If the text is not of that form.
    """
    match = EM_SPACE.match(text or "")
    if match is None:
        raise CatalogError({"algebra": f"'{text}' is not of the form K(Z, q) or K(Z/k, q)"})
    order = int(match["order"]) if match["order"] is not None else None
    return order, int(match["q"])


def _require_two(height: Height):
    if height.p != 2:
        raise CatalogError({"prime": f"twisted K(n) is defined at p = 2 only, got p = {height.p}"})


def twist_character(height: Height, truncation: int) -> Character:
    """The character of the universal integral twist on R(b_0) ... R(b_(J-1))."""
    _require_two(height)
    algebra = em_algebra(height, None, height.n + 1, truncation)
    return Character.from_mapping(algebra, {"b0": 1})


def mod2_twist_character(height: Height, j: int = 1) -> Character:
    """The character a_0 -> 1 on R(a_0) ... R(a_(j-1)), the universal mod-2 twist."""
    _require_two(height)
    if j < 1:
        raise CatalogError({"j": f"need at least one factor, got {j}"})
    algebra = em_algebra(height, 2 ** j, height.n)
    return Character.from_mapping(algebra, {"a0": 1})
