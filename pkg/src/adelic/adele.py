"""Finite adeles of a number field, truncated to a finite set of places.

A place is a pair ``(p, i)``: the i-th prime above p in the order returned
by :func:`adelic.numberfield.decompose`.  A :class:`TruncatedAdele` stores
explicit components on finitely many places; every other component equals
the integer ``tail_value`` (1 by default), which is integral everywhere.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import sympy

from . import linalg
from .errors import FieldMismatch, NonUnitDivisor, Unsupported
from .localfield import LocalField, LocalFieldElement, UnitParts, decompose_unit, recompose_unit
from .numberfield import NumberField, completion, decompose, embedding_root
from .padic import DEFAULT_PRECISION, PAdicNumber

Place = tuple[int, int]


def places_over(K: NumberField, p: int) -> list[Place]:
    d = decompose(K, p)
    if not d.supported:
        raise Unsupported(d.reason)
    return [(p, i) for i in range(len(d.pairs))]


class TruncatedAdele:
    __slots__ = ("field", "components", "tail_value")

    def __init__(self, K: NumberField, components: Mapping[Place, LocalFieldElement], tail_value: int = 1):
        self.field = K
        self.components = dict(sorted(components.items()))
        self.tail_value = int(tail_value)

    @classmethod
    def from_values(cls, K: NumberField, values: Mapping[Place, object], tail_value: int = 1,
                    N: int = DEFAULT_PRECISION) -> TruncatedAdele:
        comps = {}
        for (p, i), x in values.items():
            F = completion(K, p, i, N)
            comps[(p, i)] = F(x) if not isinstance(x, LocalFieldElement) else x
        return cls(K, comps, tail_value)

    @property
    def support(self) -> tuple[Place, ...]:
        return tuple(self.components)

    def component(self, place: Place) -> LocalFieldElement:
        return self.components[place]

    def _at(self, place: Place, F: LocalField) -> LocalFieldElement:
        x = self.components.get(place)
        return F(self.tail_value) if x is None else x

    def _combine(self, other, op, tail_op=None) -> TruncatedAdele:
        if isinstance(other, int):
            other = TruncatedAdele(self.field, {}, other)
        if not isinstance(other, TruncatedAdele):
            return NotImplemented
        if other.field != self.field:
            raise FieldMismatch("adeles of different number fields")
        comps = {}
        for place in sorted(set(self.components) | set(other.components)):
            src = self.components.get(place)
            F = (src if src is not None else other.components[place]).parent
            comps[place] = op(self._at(place, F), other._at(place, F))
        tail = (tail_op or op)(self.tail_value, other.tail_value)
        return TruncatedAdele(self.field, comps, tail)

    def __add__(self, other):
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a - b)

    def __mul__(self, other):
        return self._combine(other, lambda a, b: a * b)

    __radd__ = __add__
    __rmul__ = __mul__

    def __neg__(self) -> TruncatedAdele:
        return TruncatedAdele(self.field, {k: -v for k, v in self.components.items()}, -self.tail_value)

    def is_unit(self) -> bool:
        return abs(self.tail_value) == 1 and all(x.is_unit() for x in self.components.values())

    def __truediv__(self, other):
        if isinstance(other, int):
            other = TruncatedAdele(self.field, {}, other)
        if abs(other.tail_value) != 1:
            raise NonUnitDivisor("divisor's omitted components are not units")
        for place, x in other.components.items():
            if x.is_zero():
                raise NonUnitDivisor(f"divisor vanishes at {place}")
        return self._combine(other, lambda a, b: a / b, lambda a, b: a * b)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedAdele) or other.field != self.field:
            return False
        if self.tail_value != other.tail_value:
            return False
        diff = self - other
        return all(x.is_zero() for x in diff.components.values())

    __hash__ = None

    def to_json(self) -> dict:
        return {
            "field": list(self.field.defining_poly),
            "places": [{"p": p, "index": i, "element": x.to_json()} for (p, i), x in self.components.items()],
            "tail": "integral",
            "tail_value": self.tail_value,
        }

    @classmethod
    def from_json(cls, d: dict, N: int = DEFAULT_PRECISION) -> TruncatedAdele:
        K = NumberField(d["field"])
        comps = {}
        for entry in d["places"]:
            place = (int(entry["p"]), int(entry["index"]))
            F = completion(K, place[0], place[1], N)
            comps[place] = LocalFieldElement.from_json(F, entry["element"])
        return cls(K, comps, int(d.get("tail_value", 1)))


def adele_arith(a: TruncatedAdele, b: TruncatedAdele, op: str) -> TruncatedAdele:
    ops = {"add": a.__add__, "sub": a.__sub__, "mul": a.__mul__, "div": a.__truediv__}
    if op not in ops:
        raise ValueError(f"unknown operation {op!r}")
    return ops[op](b)


# -- principal maximal ideals -------------------------------------------------


@dataclass(frozen=True)
class PrincipalMaximalIdeal:
    """The kernel of evaluation at one finite place."""

    field: NumberField
    place: Place

    def contains(self, a: TruncatedAdele) -> bool:
        return evaluate(a, self.place).is_zero()

    def quotient(self, N: int = DEFAULT_PRECISION) -> LocalField:
        return maximal_ideal_quotient(self.field, self.place, N)


def evaluate(a: TruncatedAdele, place: Place, N: int = DEFAULT_PRECISION) -> LocalFieldElement:
    """Image of ``a`` in the completion at ``place``."""
    x = a.components.get(place)
    if x is not None:
        return x
    return completion(a.field, place[0], place[1], N)(a.tail_value)


def maximal_ideal_quotient(K: NumberField, place: Place, N: int = DEFAULT_PRECISION) -> LocalField:
    """The residue ring of the ideal at ``place``: the completion there."""
    return completion(K, place[0], place[1], N)


def principal_maximal_ideals(K: NumberField, bound: int) -> tuple[list[PrincipalMaximalIdeal], list[int]]:
    ideals, skipped = [], []
    for p in sympy.primerange(2, bound + 1):
        d = decompose(K, p)
        if not d.supported:
            skipped.append(p)
            continue
        ideals.extend(PrincipalMaximalIdeal(K, (p, i)) for i in range(len(d.pairs)))
    return ideals, skipped


# -- additive structure -------------------------------------------------------


@dataclass
class AdditiveIsomorphism:
    """Coordinates of ``sum over primes above p`` of the completions versus Q_p^n.

    Column j of ``matrix`` holds the local coordinates (over each power
    basis ``pi^i w^j``, places in order) of the image of ``theta^j``.  So
    ``forward`` sends local components to coordinates in the basis
    ``1, theta, ..., theta^(n-1)`` of ``K tensor Q_p`` and ``inverse`` goes back.
    """

    field: NumberField
    p: int
    places: list[Place]
    fields: list[LocalField]
    matrix: list
    inverse_matrix: list = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.matrix)

    def local_coordinates(self, components: Sequence[LocalFieldElement]) -> list[PAdicNumber]:
        out = []
        for F, x in zip(self.fields, components):
            out.extend(F(x).coordinates)
        return out

    def forward(self, components: Sequence[LocalFieldElement]) -> list[PAdicNumber]:
        return linalg.mat_vec(self.inverse_matrix, self.local_coordinates(components))

    def inverse(self, vector: Sequence) -> list[LocalFieldElement]:
        p = self.p
        vec = [x if isinstance(x, PAdicNumber) else PAdicNumber.from_rational(Fraction(x), p, self.fields[0].N)
               for x in vector]
        coords = linalg.mat_vec(self.matrix, vec)
        out, pos = [], 0
        for F in self.fields:
            out.append(F.from_coordinates(coords[pos:pos + F.degree]))
            pos += F.degree
        return out


def additive_isomorphism(K: NumberField, p: int, N: int = DEFAULT_PRECISION) -> AdditiveIsomorphism:
    places = places_over(K, p)
    fields = [completion(K, p, i, N) for _, i in places]
    roots = [embedding_root(K, p, i, F) for (_, i), F in zip(places, fields)]
    n = K.degree
    columns = []
    powers = [F(1) for F in fields]
    for _ in range(n):
        col = []
        for F, x in zip(fields, powers):
            col.extend(x.coordinates)
        columns.append(col)
        powers = [x * r for x, r in zip(powers, roots)]
    matrix = [[columns[j][i] for j in range(n)] for i in range(n)]
    one = PAdicNumber.from_rational(1, p, N)
    zero = PAdicNumber.zero(p)
    inv = linalg.inverse(matrix, one, zero)
    return AdditiveIsomorphism(K, p, places, fields, matrix, inv)


# -- multiplicative structure -------------------------------------------------


def multiplicative_decomposition(a: TruncatedAdele) -> dict[Place, UnitParts]:
    """Per-place ``pi^k * teichmueller * zeta^j * exp(log part)`` data."""
    return {place: decompose_unit(x) for place, x in a.components.items()}


def recompose(K: NumberField, parts: Mapping[Place, UnitParts], fields: Mapping[Place, LocalField]) -> TruncatedAdele:
    return TruncatedAdele(K, {pl: recompose_unit(fields[pl], pt) for pl, pt in parts.items()})


# -- torsion ------------------------------------------------------------------


@dataclass(frozen=True)
class TorsionReport:
    bound: int
    multiset: tuple[int, ...]
    skipped_primes: tuple[int, ...]

    def to_json(self) -> dict:
        return {"bound": self.bound, "multiset": list(self.multiset), "skipped_primes": list(self.skipped_primes)}


def torsion_multiset(K: NumberField, bound: int, N: int = DEFAULT_PRECISION) -> TorsionReport:
    """Orders ``p^f - 1`` and ``|mu_(p^inf)|`` for every supported place over p <= bound."""
    if bound < 2:
        raise ValueError("bound must be at least 2")
    out, skipped = [], []
    for p in sympy.primerange(2, bound + 1):
        d = decompose(K, p)
        if not d.supported:
            skipped.append(p)
            continue
        local = []
        try:
            for i, (e, f) in enumerate(d.pairs):
                if e % (p - 1):
                    mu = 1  # p-th roots of unity need (p - 1) | e
                else:
                    mu = completion(K, p, i, N).mu_p_power()
                local.extend([p ** f - 1, mu])
        except Unsupported:
            skipped.append(p)
            continue
        out.extend(local)
    return TorsionReport(bound, tuple(sorted(out)), tuple(skipped))
