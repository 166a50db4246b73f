"""
Linear algebra over the prime field F_p

All matrices are numpy ``int64`` arrays with entries reduced into
``range(p)``. Matrices act on column vectors: column ``j`` of an action
matrix is the image of basis vector ``j``.

Functions:
    as_fp: Coerce and reduce an array mod p
    inverse: Multiplicative inverse in F_p
    row_reduce: Reduced row echelon form with pivot columns
    rank: Rank over F_p
    nullspace: Basis of the right kernel
    reduce_vector: Reduce a vector against a row-reduced spanning set
    matmul / matrix_power: Products mod p
"""

from dataclasses import dataclass

import numpy as np


def as_fp(matrix, p: int) -> np.ndarray:
    """Return ``matrix`` as an int64 array reduced mod ``p``."""
    return np.asarray(matrix, dtype=np.int64) % p


def inverse(value: int, p: int) -> int:
    """Return the inverse of ``value`` in F_p.

    Raises
    ------
    ZeroDivisionError
        If ``value`` is divisible by ``p``.
    """
    value = int(value) % p
    if value == 0:
        raise ZeroDivisionError(f"0 has no inverse mod {p}")
    return pow(value, -1, p)


@dataclass(frozen=True)
class RowReduceResult:
    matrix: np.ndarray
    rank: int
    pivots: tuple[int, ...]

    @property
    def rows(self) -> np.ndarray:
        """The nonzero rows of the reduced matrix."""
        return self.matrix[: self.rank]


def row_reduce(matrix, p: int) -> RowReduceResult:
    """Bring ``matrix`` to reduced row echelon form over F_p.

    Parameters
    ----------
    matrix : array_like
        Two-dimensional integer array.
    p : int
        The prime.

    Returns
    -------
    RowReduceResult
        Reduced matrix, its rank and the pivot column of each nonzero row.
    """
    mat = as_fp(matrix, p)
    if mat.ndim != 2:
        mat = mat.reshape(1, -1) if mat.size else mat.reshape(0, 0)
    mat = mat.copy()
    m, n = mat.shape
    pivots = []
    row = 0
    for col in range(n):
        if row == m:
            break
        candidates = np.nonzero(mat[row:, col])[0]
        if candidates.size == 0:
            continue
        pivot = row + int(candidates[0])
        if pivot != row:
            mat[[row, pivot]] = mat[[pivot, row]]
        mat[row] = (mat[row] * inverse(mat[row, col], p)) % p
        factors = mat[:, col].copy()
        factors[row] = 0
        mat = (mat - np.outer(factors, mat[row])) % p
        pivots.append(col)
        row += 1
    return RowReduceResult(matrix=mat, rank=len(pivots), pivots=tuple(pivots))


def rank(matrix, p: int) -> int:
    """Rank of ``matrix`` over F_p."""
    mat = np.asarray(matrix)
    if mat.size == 0:
        return 0
    return row_reduce(mat, p).rank


def nullspace(matrix, p: int) -> np.ndarray:
    """Return a basis of ``{v : matrix @ v = 0}`` as the rows of an array."""
    mat = as_fp(matrix, p)
    n = mat.shape[1]
    if mat.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    reduced = row_reduce(mat, p)
    pivot_set = set(reduced.pivots)
    basis = []
    for free in range(n):
        if free in pivot_set:
            continue
        vec = np.zeros(n, dtype=np.int64)
        vec[free] = 1
        for row, col in enumerate(reduced.pivots):
            vec[col] = (-reduced.matrix[row, free]) % p
        basis.append(vec)
    if not basis:
        return np.zeros((0, n), dtype=np.int64)
    return np.vstack(basis)


def reduce_vector(reduced: RowReduceResult, vector, p: int) -> np.ndarray:
    """Reduce ``vector`` modulo the row space of a row-reduced matrix.

    The result vanishes in every pivot column; it is zero exactly when
    ``vector`` lies in the row space.
    """
    vec = as_fp(vector, p).copy()
    for row, col in enumerate(reduced.pivots):
        if vec[col]:
            vec = (vec - vec[col] * reduced.matrix[row]) % p
    return vec


def matmul(a, b, p: int) -> np.ndarray:
    return (as_fp(a, p) @ as_fp(b, p)) % p


def matrix_power(matrix, exponent: int, p: int) -> np.ndarray:
    """``matrix ** exponent`` over F_p by repeated squaring."""
    mat = as_fp(matrix, p)
    result = np.eye(mat.shape[0], dtype=np.int64)
    while exponent:
        if exponent & 1:
            result = matmul(result, mat, p)
        mat = matmul(mat, mat, p)
        exponent >>= 1
    return result
