"""Writing an element as an integer combination of n-th powers.

For n! invertible, with ``a = z / n!``::

    z = sum_{k=0}^{n-1} (-1)^(n-k-1) C(n-1, k) ((a + k)^n - k^n)

The inner sum is the (n-1)-st finite difference of ``x -> (x + a)^n - x^n``
at 0, which equals ``n! a``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from ..errors import PrecisionExhausted
from ..padic import INF, PAdicNumber, vp_factorial

Scalar = Union[Fraction, PAdicNumber]


@dataclass(frozen=True)
class SiegelDecomposition:
    """Pairs ``(c_i, b_i)`` with ``z = sum c_i * b_i**n``.

    ``budget`` is the absolute precision at which the sum is guaranteed to
    reproduce ``z`` (infinite over Q).
    """

    z: Scalar
    n: int
    terms: tuple[tuple[int, Scalar], ...]
    budget: Union[int, float]

    def evaluate(self) -> Scalar:
        total = None
        for c, b in self.terms:
            t = c * b ** self.n
            total = t if total is None else total + t
        return total

    def check(self) -> bool:
        diff = self.evaluate() - self.z
        if isinstance(diff, PAdicNumber):
            return diff.is_zero() and diff.absprec >= self.budget
        return diff == 0

    def to_json(self) -> dict:
        def enc(x):
            if isinstance(x, PAdicNumber):
                return x.to_json()
            return str(x)
        return {
            "z": enc(self.z),
            "n": self.n,
            "terms": [{"coefficient": c, "base": enc(b)} for c, b in self.terms],
            "budget": "inf" if self.budget == INF else self.budget,
        }


def siegel_budget(z: PAdicNumber, n: int) -> Union[int, float]:
    """Absolute precision to which the formula reproduces a p-adic ``z``."""
    if z.absprec == INF:
        return INF
    loss = vp_factorial(n, z.p)
    w = z.v - loss if not z.is_zero() else INF
    return z.absprec - loss + (n - 1) * min(0, w)


def siegel_decompose(z, n: int) -> SiegelDecomposition:
    if n < 1:
        raise ValueError("n must be positive")
    if isinstance(z, PAdicNumber):
        budget = siegel_budget(z, n)
        if not z.is_zero() and budget <= z.v:
            raise PrecisionExhausted(
                f"dividing by {n}! leaves no significant digits of z at precision {z.N}")
        a = z / math.factorial(n)
    else:
        z = Fraction(z)
        budget = INF
        a = z / math.factorial(n)
    terms = []
    for k in range(n):
        c = (-1) ** (n - k - 1) * math.comb(n - 1, k)
        terms.append((c, a + k))
        if k:
            terms.append((-c, k))
    return SiegelDecomposition(z, n, tuple(terms), budget)
