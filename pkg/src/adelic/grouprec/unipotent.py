"""Unipotent matrices and their n-th roots by the binomial series.

A unipotent matrix is stored as its nilpotent part ``X = M - I`` so the
diagonal ones stay exact whatever the precision of the entries.  The root
``w = sum_k C(1/n, k) X^k`` is a finite sum because ``X^size = 0``.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .. import linalg
from ..errors import DomainViolation, PrecisionExhausted
from ..localfield import LocalFieldElement
from ..padic import INF, PAdicNumber, vp_int


def binomial_root_coefficient(n: int, k: int) -> Fraction:
    """C(1/n, k) = prod_{j<k} (1 - j n) / (n^k k!)."""
    num = 1
    for j in range(k):
        num *= 1 - j * n
    return Fraction(num, n ** k * math.factorial(k))


def binomial_root_valuation(n: int, k: int, p: int) -> int:
    """v_p(C(1/n, k)) computed from the product formula, without forming it."""
    v = sum(vp_int(1 - j * n, p) for j in range(1, k))
    return v - k * vp_int(n, p) - sum(vp_int(i, p) for i in range(2, k + 1))


def _entry_data(x):
    """(valuation, absolute precision) of a matrix entry."""
    if isinstance(x, PAdicNumber):
        return x.v, x.absprec
    if isinstance(x, LocalFieldElement):
        return x.valuation(), x.absprec
    return (INF if x == 0 else 0), INF


def _prime_of(x) -> int | None:
    if isinstance(x, PAdicNumber):
        return x.p
    if isinstance(x, LocalFieldElement):
        return x.parent.p
    return None


class UnipotentMatrix:
    """``I + X`` with X nilpotent (strictly upper triangular for builders)."""

    __slots__ = ("nil", "size")

    def __init__(self, nil: Sequence[Sequence], check: bool = True):
        self.nil = [list(row) for row in nil]
        self.size = len(self.nil)
        if any(len(row) != self.size for row in self.nil):
            raise ValueError("matrix must be square")
        if check and self.size:
            power = self.nil
            for _ in range(self.size - 1):
                power = linalg.mul(power, self.nil)
            if not linalg.is_zero_matrix(power):
                raise DomainViolation("matrix is not unipotent")

    def _zero(self):
        x = next((y for row in self.nil for y in row if _prime_of(y) is not None), None)
        if isinstance(x, PAdicNumber):
            return PAdicNumber.zero(x.p)
        if isinstance(x, LocalFieldElement):
            return x.parent.zero()
        return Fraction(0)

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence]) -> UnipotentMatrix:
        n = len(rows)
        return cls([[rows[i][j] - (1 if i == j else 0) for j in range(n)] for i in range(n)])

    @classmethod
    def upper(cls, entries: dict, size: int, zero) -> UnipotentMatrix:
        """Unitriangular matrix with ``entries[(i, j)]`` above the diagonal."""
        nil = [[entries.get((i, j), zero) if j > i else zero for j in range(size)] for i in range(size)]
        return cls(nil, check=False)

    @classmethod
    def identity(cls, size: int, zero=Fraction(0)) -> UnipotentMatrix:
        return cls([[zero] * size for _ in range(size)], check=False)

    def rows(self) -> list[list]:
        return [[x + 1 if i == j else x for j, x in enumerate(row)] for i, row in enumerate(self.nil)]

    def __mul__(self, other: UnipotentMatrix) -> UnipotentMatrix:
        if not isinstance(other, UnipotentMatrix):
            return NotImplemented
        xy = linalg.mul(self.nil, other.nil)
        return UnipotentMatrix(linalg.add(linalg.add(self.nil, other.nil), xy), check=False)

    def __pow__(self, n: int) -> UnipotentMatrix:
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        if n == 0:
            return UnipotentMatrix.identity(self.size, self._zero())
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, UnipotentMatrix) or other.size != self.size:
            return False
        return linalg.equal(self.nil, other.nil)

    __hash__ = None

    def precision(self) -> int | float:
        """Smallest absolute precision among the entries."""
        return min((_entry_data(x)[1] for row in self.nil for x in row), default=INF)

    def to_json(self) -> list:
        def enc(x):
            if isinstance(x, (PAdicNumber, LocalFieldElement)):
                return x.to_json()
            return str(x)
        return [[enc(x) for x in row] for row in self.rows()]


def root_budget(v: UnipotentMatrix, n: int) -> int | float:
    """Guaranteed absolute precision of the entries of the n-th root of ``v``.

    Term k of the series is ``C(1/n, k) X^k``; its entries are known to
    ``A + (k - 1) min(0, m) + v_p(C(1/n, k))`` where A and m are the least
    absolute precision and valuation among the entries of X.
    """
    entries = [x for row in v.nil for x in row]
    p = next((q for q in map(_prime_of, entries) if q is not None), None)
    if p is None:
        return INF
    data = [_entry_data(x) for x in entries]
    A = min(a for _, a in data)
    m = min(val for val, _ in data)
    m = 0 if m == INF else min(0, m)
    budget = INF
    for k in range(1, v.size):
        budget = min(budget, A + (k - 1) * m + binomial_root_valuation(n, k, p))
    return budget


def unipotent_nth_root(v: UnipotentMatrix, n: int) -> UnipotentMatrix:
    """The unique unipotent ``w`` with ``w**n == v``."""
    if n < 1:
        raise ValueError("n must be positive")
    if not isinstance(v, UnipotentMatrix):
        v = UnipotentMatrix.from_matrix(v)
    budget = root_budget(v, n)
    if budget < 1:
        raise PrecisionExhausted(
            f"the binomial series for an {n}-th root loses more digits than the input carries")
    term = v.nil
    total = [[x * Fraction(1, n) for x in row] for row in v.nil]
    for k in range(2, v.size):
        term = linalg.mul(term, v.nil)
        c = binomial_root_coefficient(n, k)
        total = linalg.add(total, [[x * c for x in row] for row in term])
    return UnipotentMatrix(total, check=False)
