"""Torus characters on the abelianised unipotent part, read off commutators.

The unipotent subgroup U of the matrix model is normalised by the diagonal
torus.  Slots reached by commutators of elementary unipotents span [U, U];
the remaining slots carry the module.  Commutators are computed with exact
rational matrices, and the character of a slot is recovered by conjugating
with the torus element whose i-th coordinate is the i-th prime, then
factoring the resulting scalar.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import sympy

from .. import linalg
from ..errors import UnsupportedDescriptor
from ..padic import PAdicNumber
from .descriptors import GroupDescriptor


@dataclass(frozen=True)
class CharacterModule:
    characters: tuple[tuple[tuple[int, ...], int], ...]  # (exponent vector, multiplicity)
    field: object = None
    window: tuple = ()

    @property
    def ell(self) -> int:
        return len(self.characters)

    def to_json(self) -> dict:
        return {"characters": [{"exponents": list(v), "multiplicity": m} for v, m in self.characters],
                "ell": self.ell}


def _elementary(size: int, slot: tuple[int, int], x=Fraction(1)):
    m = linalg.identity(size)
    m[slot[0]][slot[1]] = x
    return m


def _commutator(a, b):
    one, zero = Fraction(1), Fraction(0)
    return linalg.mul(linalg.mul(a, b), linalg.mul(linalg.inverse(a, one, zero), linalg.inverse(b, one, zero)))


def _off_diagonal_support(m) -> set[tuple[int, int]]:
    n = len(m)
    return {(i, j) for i in range(n) for j in range(n) if i != j and m[i][j] != 0}


def _exponents(x: Fraction, primes: Sequence[int]) -> tuple[int, ...]:
    num, den = sympy.factorint(x.numerator), sympy.factorint(x.denominator)
    if (set(num) | set(den)) - set(primes):
        raise UnsupportedDescriptor("torus action is not by characters of the diagonal")
    return tuple(num.get(q, 0) - den.get(q, 0) for q in primes)


def commutator_module_characters(G: GroupDescriptor) -> CharacterModule:
    model = G.model
    if model is None:
        raise UnsupportedDescriptor(f"{G.name} has no concrete matrix model")
    size, positions = model.size, model.positions
    # [U, U]: slots reached by commutators of elementary unipotents
    derived: set[tuple[int, int]] = set()
    for a in positions:
        for b in positions:
            derived |= _off_diagonal_support(_commutator(_elementary(size, a), _elementary(size, b)))
    primes = list(sympy.primerange(2, sympy.prime(G.torus_rank) + 1)) if G.torus_rank else []
    diag_vals = []
    for vec in model.diagonal:
        val = Fraction(1)
        for q, k in zip(primes, vec):
            val *= Fraction(q) ** k
        diag_vals.append(val)
    t = [[diag_vals[i] if i == j else Fraction(0) for j in range(size)] for i in range(size)]
    found: list[tuple[int, ...]] = []
    for slot in positions:
        if slot in derived:
            continue
        c = _commutator(t, _elementary(size, slot))
        # t u t^-1 u^-1 = 1 + (chi(t) - 1) E_slot
        if _off_diagonal_support(c) - {slot}:
            raise UnsupportedDescriptor("torus does not normalise the unipotent slots")
        chi_t = c[slot[0]][slot[1]] + 1
        found.append(_exponents(chi_t, primes))
    if not found:
        raise UnsupportedDescriptor(f"{G.name}: V is trivial")
    return CharacterModule(tuple(Counter(found).items()))


# -- Hom_T between character lines ------------------------------------------


@dataclass(frozen=True)
class HomReport:
    kind: str  # zero | full-ring
    separating_t: object = None
    checks: int = 0

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.separating_t is not None:
            out["separating_t"] = self.separating_t
        if self.checks:
            out["ring_map_checks"] = self.checks
        return out


def _evaluate(chi: Sequence[int], t: Sequence[int]) -> Fraction:
    out = Fraction(1)
    for base, k in zip(t, chi):
        out *= Fraction(base) ** k
    return out


def hom_T(chi_i: Sequence[int], chi_j: Sequence[int], samples: int = 8, seed: int = 0) -> HomReport:
    """T-equivariant additive maps between the lines of two characters.

    Such a map f satisfies ``f(t u) = t f(u)`` on the module, so it is
    multiplication by ``f(1)``.  Equivariance forces ``chi_i(t) f(1) =
    chi_j(t) f(1)`` for every t: zero unless the characters agree.
    """
    chi_i, chi_j = tuple(chi_i), tuple(chi_j)
    if len(chi_i) != len(chi_j):
        raise ValueError("characters of different torus ranks")
    if not any(chi_i) or not any(chi_j):
        raise ValueError("characters must be nontrivial")
    if chi_i != chi_j:
        r = len(chi_i)
        if sum(chi_i) != sum(chi_j):
            t, shown = [2] * r, 2
        else:
            t = list(sympy.primerange(2, sympy.prime(r) + 1))
            shown = t
        if _evaluate(chi_i, t) == _evaluate(chi_j, t):
            raise AssertionError("separating element failed")
        return HomReport("zero", shown)
    # every f_c(u) = c u is equivariant and f -> f(1) respects + and
    # composition; sampled on components at 2, 3, 5 of finite adeles of Q
    rng = random.Random(seed)
    checks = 0
    for _ in range(samples):
        for p in (2, 3, 5):
            c, d, u = (PAdicNumber.from_rational(rng.randint(1, 10 ** 6), p, 30) for _ in range(3))
            t = [rng.randint(2, 9) for _ in chi_i]
            s = _evaluate(chi_i, t)
            one = PAdicNumber.from_rational(1, p, 30)
            ok = (c * (s * u) == s * (c * u)
                  and c * (d * one) == (c * d) * one
                  and (c + d) * one == c * one + d * one)
            if not ok:
                raise AssertionError("multiplication operator failed the ring-map check")
            checks += 1
    return HomReport("full-ring", None, checks)
