"""Dense matrices over Q, Q_p or a local field, as lists of rows.

Entries may be Fractions, PAdicNumbers or LocalFieldElements; the helpers
only use ring operations plus a zero test and a valuation for pivoting.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable

from .errors import PrecisionExhausted
from .localfield import LocalFieldElement
from .padic import INF, PAdicNumber

Matrix = list


def is_zero(x) -> bool:
    if isinstance(x, (PAdicNumber, LocalFieldElement)):
        return x.is_zero()
    return x == 0


def _size(x):
    """Pivot key: smaller is better (valuation for p-adics)."""
    if isinstance(x, PAdicNumber):
        return x.v
    if isinstance(x, LocalFieldElement):
        return x.valuation()
    return 0 if x != 0 else INF


def identity(n: int, one=Fraction(1), zero=Fraction(0)) -> Matrix:
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def convert(A: Matrix, conv: Callable) -> Matrix:
    return [[conv(x) for x in row] for row in A]


def add(A: Matrix, B: Matrix) -> Matrix:
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def sub(A: Matrix, B: Matrix) -> Matrix:
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def scale(A: Matrix, c) -> Matrix:
    return [[c * a for a in row] for row in A]


def mul(A: Matrix, B: Matrix) -> Matrix:
    n, m, k = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(k):
            acc = A[i][0] * B[0][j]
            for t in range(1, m):
                acc = acc + A[i][t] * B[t][j]
            row.append(acc)
        out.append(row)
    return out


def mat_vec(A: Matrix, v: list) -> list:
    return [row[0] for row in mul(A, [[x] for x in v])]


def power(A: Matrix, n: int, one, zero) -> Matrix:
    result = identity(len(A), one, zero)
    base = A
    while n:
        if n & 1:
            result = mul(result, base)
        n >>= 1
        if n:
            base = mul(base, base)
    return result


def is_zero_matrix(A: Matrix) -> bool:
    return all(is_zero(x) for row in A for x in row)


def equal(A: Matrix, B: Matrix) -> bool:
    return is_zero_matrix(sub(A, B))


def inverse(A: Matrix, one, zero) -> Matrix:
    """Gauss-Jordan inverse, pivoting on the entry of smallest valuation."""
    n = len(A)
    M = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(A)]
    for col in range(n):
        piv = min(range(col, n), key=lambda r: _size(M[r][col]))
        if is_zero(M[piv][col]):
            raise PrecisionExhausted("matrix is singular at the working precision")
        M[col], M[piv] = M[piv], M[col]
        inv = one / M[col][col]
        M[col] = [x * inv for x in M[col]]
        for r in range(n):
            if r != col and not is_zero(M[r][col]):
                c = M[r][col]
                M[r] = [x - c * y for x, y in zip(M[r], M[col])]
    return [row[n:] for row in M]


def charpoly(A: Matrix, one, zero) -> list:
    """Coefficients of det(x I - A), constant term first (Berkowitz, division free)."""
    n = len(A)
    # vector of coefficients, highest degree first
    C = [one, zero - A[0][0]] if n else [one]
    for r in range(1, n):
        R = [A[r][j] for j in range(r)]       # row r, columns < r
        S = [A[i][r] for i in range(r)]       # column r, rows < r
        Am = [row[:r] for row in A[:r]]
        a = A[r][r]
        # Toeplitz column: 1, -a, -R S, -R A S, -R A^2 S, ...
        col = [one, zero - a]
        vec = S
        for _ in range(r):
            acc = zero
            for x, y in zip(R, vec):
                acc = acc + x * y
            col.append(zero - acc)
            vec = [sum((Am[i][j] * vec[j] for j in range(1, r)), Am[i][0] * vec[0]) for i in range(r)]
        # multiply the (r+2) x (r+1) lower-triangular Toeplitz matrix by C
        newC = []
        for i in range(r + 2):
            acc = zero
            for j in range(min(i, r) + 1):
                if i - j < len(col):
                    acc = acc + col[i - j] * C[j]
            newC.append(acc)
        C = newC
    return list(reversed(C))


def det(A: Matrix, one, zero):
    cp = charpoly(A, one, zero)
    return cp[0] if len(A) % 2 == 0 else zero - cp[0]


def det_elimination(A: Matrix, one, zero):
    """Determinant by Gaussian elimination (an independent route to :func:`det`)."""
    n = len(A)
    M = [list(row) for row in A]
    acc = one
    for col in range(n):
        piv = min(range(col, n), key=lambda r: _size(M[r][col]))
        if is_zero(M[piv][col]):
            return M[piv][col] * acc
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            acc = zero - acc
        d = M[col][col]
        acc = acc * d
        for r in range(col + 1, n):
            if not is_zero(M[r][col]):
                c = M[r][col] / d
                M[r] = [x - c * y for x, y in zip(M[r], M[col])]
    return acc
