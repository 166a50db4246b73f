"""
Standard rings: projective spaces, spheres, products and H*(BO(m))

Functions:
    rp_infinity: H*(RP^infinity) = F_2[t], or RP^m when truncated
    sphere_ring: H*(S^m) = F_2[sigma]/sigma^2
    product: Kunneth product of rings
    wu_bo: H*(BO(m)) or H*(BSO(m)) with squares from the Wu formula
"""

from functools import reduce

from graded.rewriting import TruncationRule
from steenrod.exceptions import SteenrodError
from steenrod.rings import SteenrodRing


def binom_mod2(top: int, bottom: int) -> int:
    """``C(top, bottom)`` mod 2 by Lucas, with ``C(-1, 0) = 1``."""
    if bottom < 0:
        return 0
    if top < 0:
        return 1 if bottom == 0 else 0
    return 0 if (top - bottom) & bottom else 1


def rp_infinity(truncate_at: int | None = None, name: str = "t") -> SteenrodRing:
    """F_2[t] with |t| = 1 and Sq^1 t = t^2; ``truncate_at = m`` gives RP^m."""
    if truncate_at is not None and truncate_at < 1:
        raise SteenrodError({"truncate_at": f"RP^{truncate_at} has no generator"})
    rule = TruncationRule(truncate_at + 1) if truncate_at is not None else None
    return SteenrodRing(((name, 1),), (rule,))


def sphere_ring(m: int, name: str | None = None) -> SteenrodRing:
    """H*(S^m): one class of degree m squaring to zero, all squares zero."""
    if m < 1:
        raise SteenrodError({"m": f"sphere dimension must be positive, got {m}"})
    return SteenrodRing(((name or f"sigma{m}", m),), (TruncationRule(2),))


def product(*rings: SteenrodRing) -> SteenrodRing:
    return reduce(SteenrodRing.tensor, rings, SteenrodRing())


def wu_bo(maxdeg: int, oriented: bool = False) -> SteenrodRing:
    """H*(BO(maxdeg)) = F_2[w_1, ..., w_maxdeg] with Wu-formula squares.

    ``Sq^i w_j = sum_t C(j - i + t - 1, t) w_{i-t} w_{j+t}`` with w_0 = 1 and
    w_k = 0 beyond ``maxdeg``. ``oriented`` drops w_1 (BSO).
    """
    if maxdeg < 1:
        raise SteenrodError({"maxdeg": f"maxdeg must be at least 1, got {maxdeg}"})
    first = 2 if oriented else 1
    if oriented and maxdeg < 2:
        raise SteenrodError({"maxdeg": "BSO needs maxdeg at least 2"})
    available = range(first, maxdeg + 1)

    def w(k: int) -> str | None:
        if k == 0:
            return "1"
        return f"w{k}" if k in available else None

    squares = {}
    for j in available:
        values = {}
        for i in range(1, j):
            terms = []
            for t in range(i + 1):
                left, right = w(i - t), w(j + t)
                if left is None or right is None or not binom_mod2(j - i + t - 1, t):
                    continue
                terms.append(right if left == "1" else f"{left}*{right}")
            values[i] = " + ".join(terms) or "0"
        squares[f"w{j}"] = values
    generators = tuple((f"w{k}", k) for k in available)
    return SteenrodRing(generators, (None,) * len(generators), squares)
