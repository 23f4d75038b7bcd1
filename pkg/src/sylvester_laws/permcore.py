"""Exact permanents and determinants of small dense matrices.

Integer inputs give integer outputs (Python ints, so no overflow).  The same
routines accept Fractions or complex floats for the Fourier and
distinguishable-particle cases.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache
from typing import Sequence

import numpy as np

MAX_RYSER_ORDER = 30
MAX_NAIVE_ORDER = 9

Matrix = Sequence[Sequence]


class OrderCapError(ValueError):
    """Raised when a matrix is too large for the requested algorithm."""


def _check_square(A: Matrix) -> int:
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("matrix must be square")
    return n


def permanent_ryser(A: Matrix, max_order: int = MAX_RYSER_ORDER):
    """Permanent by Ryser's inclusion-exclusion formula with Gray-code updates.

    perm A = (-1)^n sum over column subsets S of (-1)^|S| prod_i sum_{j in S} a_ij.

    Consecutive subsets differ by one column, so each step updates the ``n``
    row sums in place and costs O(n).
    """
    n = _check_square(A)
    if n > max_order:
        raise OrderCapError(f"order {n} exceeds Ryser cap {max_order}")
    if n == 0:
        return 1
    cols = [[A[i][j] for i in range(n)] for j in range(n)]
    row_sums = [0 * A[0][0]] * n
    in_set = [False] * n
    total = 0 * A[0][0]
    size = 0
    for k in range(1, 1 << n):
        j = (k & -k).bit_length() - 1
        col = cols[j]
        if in_set[j]:
            in_set[j] = False
            size -= 1
            row_sums = [s - c for s, c in zip(row_sums, col)]
        else:
            in_set[j] = True
            size += 1
            row_sums = [s + c for s, c in zip(row_sums, col)]
        term = math.prod(row_sums)
        if size & 1:
            total -= term
        else:
            total += term
    return -total if n & 1 else total


def permanent_naive(A: Matrix, max_order: int = MAX_NAIVE_ORDER):
    """Literal sum over all n! permutations."""
    n = _check_square(A)
    if n > max_order:
        raise OrderCapError(f"order {n} exceeds naive cap {max_order}")
    if n == 0:
        return 1
    total = 0
    for sigma in itertools.permutations(range(n)):
        total += math.prod(A[i][s] for i, s in enumerate(sigma))
    return total


@lru_cache(maxsize=1 << 16)
def permanent_cached(A: tuple[tuple, ...]):
    """Ryser permanent memoized on the exact matrix contents."""
    return permanent_ryser(A)


def determinant_exact(A: Matrix) -> int:
    """Integer determinant by Bareiss fraction-free elimination.

    Every intermediate value is itself a minor of ``A``, so the divisions are
    exact and no rationals appear.
    """
    n = _check_square(A)
    if n == 0:
        return 1
    M = [[int(x) for x in row] for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for r in range(k + 1, n):
                if M[r][k] != 0:
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = M[k][k]
        top = M[k]
        for i in range(k + 1, n):
            row = M[i]
            lead = row[k]
            M[i] = row[: k + 1] + [(x * pivot - lead * y) // prev for x, y in zip(row[k + 1 :], top[k + 1 :])]
        prev = pivot
    return sign * M[n - 1][n - 1]


def determinant(A: Matrix):
    """Exact determinant for integer matrices, LAPACK otherwise."""
    if all(isinstance(x, (int, np.integer)) for row in A for x in row):
        return determinant_exact(A)
    _check_square(A)
    if len(A) == 0:
        return 1
    return complex(np.linalg.det(np.array(A, dtype=np.complex128)))


def xor_rows(rows: Sequence[int], bits: int | None = None) -> int:
    """XOR of 0-based row indices, optionally truncated to the low ``bits`` bits."""
    acc = 0
    for r in rows:
        acc ^= r
    if bits is not None:
        acc &= (1 << bits) - 1
    return acc


def xor_vanishing_test(rows: Sequence[int], p: int) -> bool:
    """True when the XOR of the 0-based row indices is nonzero.

    For a square matrix built from those rows of H(2**p) (rows may repeat), a
    True result means its permanent is exactly zero; a False result means the
    permanent is nonzero.
    """
    m = 1 << p
    for r in rows:
        if not 0 <= r < m:
            raise IndexError(f"row {r} out of range for H({m})")
    return xor_rows(rows) != 0
