"""Split groups described by a torus acting on an abelianised unipotent part.

A :class:`GroupDescriptor` records the torus rank r, the dimension k of the
abelianised unipotent radical, and the k x r matrix whose rows are the
exponent vectors of the characters through which the torus acts.  Builtins
with a concrete matrix model (GL(n), its Borel subgroup, the ax+b group
over Q) also carry a :class:`MatrixModel` used to compute commutators.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from ..errors import UnsupportedDescriptor


@dataclass(frozen=True)
class MatrixModel:
    """Torus embedded diagonally, unipotent part supported on ``positions``.

    ``diagonal[i]`` is the exponent vector of the i-th diagonal entry as a
    character of the torus; ``positions`` are the (row, column) slots of the
    unipotent subgroup, all above the diagonal.
    """

    size: int
    diagonal: tuple[tuple[int, ...], ...]
    positions: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class GroupDescriptor:
    name: str
    torus_rank: int
    unipotent_ab_dim: int
    exponent_matrix: tuple[tuple[int, ...], ...]
    simple_rows: tuple[int, ...] = ()
    model: MatrixModel | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.torus_rank < 0 or self.unipotent_ab_dim < 0:
            raise ValueError("ranks must be non-negative")
        if len(self.exponent_matrix) != self.unipotent_ab_dim:
            raise ValueError(f"exponent matrix needs {self.unipotent_ab_dim} rows")
        if any(len(row) != self.torus_rank for row in self.exponent_matrix):
            raise ValueError(f"exponent matrix rows need {self.torus_rank} entries")

    def to_json(self) -> dict:
        out = {"name": self.name, "r": self.torus_rank, "k": self.unipotent_ab_dim,
               "matrix": [list(row) for row in self.exponent_matrix]}
        if self.simple_rows:
            out["simple_rows"] = list(self.simple_rows)
        return out


def explicit(r: int, k: int, matrix: Sequence[Sequence[int]], name: str = "explicit") -> GroupDescriptor:
    return GroupDescriptor(name, r, k, tuple(tuple(int(x) for x in row) for row in matrix))


def _root_rows(n: int) -> tuple[list[tuple[int, ...]], list[tuple[int, int]]]:
    """Characters e_i - e_j for i < j, superdiagonal (simple roots) first."""
    slots = sorted(((i, j) for i in range(n) for j in range(i + 1, n)), key=lambda s: (s[1] - s[0], s[0]))
    rows = []
    for i, j in slots:
        v = [0] * n
        v[i] += 1
        v[j] -= 1
        rows.append(tuple(v))
    return rows, slots


def _gl_model(n: int) -> MatrixModel:
    diag = tuple(tuple(1 if t == i else 0 for t in range(n)) for i in range(n))
    return MatrixModel(n, diag, tuple((i, j) for i in range(n) for j in range(i + 1, n)))


def general_linear(n: int) -> GroupDescriptor:
    if n < 1:
        raise ValueError("n must be positive")
    rows, _ = _root_rows(n)
    return GroupDescriptor(f"GL{n}", n, len(rows), tuple(rows), tuple(range(n - 1)), _gl_model(n))


def borel(n: int) -> GroupDescriptor:
    """Upper triangular matrices in GL(n): same torus and unipotent part as GL(n)."""
    if n < 1:
        raise ValueError("n must be positive")
    rows, _ = _root_rows(n)
    return GroupDescriptor(f"B{n}", n, len(rows), tuple(rows), tuple(range(n - 1)), _gl_model(n))


def additive_times_multiplicative(a: int, b: int) -> GroupDescriptor:
    """G_a^a x G_m^b: the torus acts trivially."""
    return GroupDescriptor(f"Ga^{a}xGm^{b}", b, a, tuple((0,) * b for _ in range(a)))


def affine(d: int = 1) -> GroupDescriptor:
    """x -> a x + b over a degree-d field, restricted to Q.

    After splitting, the torus is G_m^d and the translations G_a^d, with the
    i-th torus coordinate scaling the i-th translation coordinate.
    """
    if d < 1:
        raise ValueError("degree must be positive")
    rows = tuple(tuple(1 if t == i else 0 for t in range(d)) for i in range(d))
    model = MatrixModel(2, ((1,), (0,)), ((0, 1),)) if d == 1 else None
    return GroupDescriptor(f"Aff{d}", d, d, rows, (), model)


def parse_descriptor(text: str) -> GroupDescriptor:
    """``GL2``, ``GL(3)``, ``B2``, ``Ga^1xGm^2``, ``Aff``, ``Aff2`` or JSON ``{"r":..,"k":..,"matrix":..}``."""
    s = text.strip().replace(" ", "").replace("(", "").replace(")", "")
    if s.startswith("{"):
        d = json.loads(s)
        return explicit(int(d["r"]), int(d["k"]), d["matrix"], d.get("name", "explicit"))
    low = s.lower()
    try:
        if low.startswith("gl"):
            return general_linear(int(low[2:]))
        if low.startswith("borel"):
            return borel(int(low[5:]))
        if low.startswith("b"):
            return borel(int(low[1:]))
        if low in ("ax+b", "aff"):
            return affine(1)
        if low.startswith("aff"):
            return affine(int(low[3:]))
        if low.startswith("ga"):
            left, right = low.split("x", 1)
            a = int(left[3:]) if left.startswith("ga^") else 1
            b = int(right[3:]) if right.startswith("gm^") else 1
            return additive_times_multiplicative(a, b)
    except (ValueError, IndexError) as exc:
        raise UnsupportedDescriptor(f"cannot parse group {text!r}") from exc
    raise UnsupportedDescriptor(f"unknown group {text!r}")


# -- fertility --------------------------------------------------------------


@dataclass(frozen=True)
class FertilityReport:
    fertile: bool
    witness: object  # a nonzero row, or the failing condition

    def to_json(self) -> dict:
        w = list(self.witness) if isinstance(self.witness, tuple) else self.witness
        return {"fertile": self.fertile, "witness": w}


def is_fertile(G: GroupDescriptor) -> FertilityReport:
    """Fertile iff the torus acts non-trivially on the abelianised unipotent part."""
    if G.torus_rank == 0:
        return FertilityReport(False, "r = 0")
    if G.unipotent_ab_dim == 0:
        return FertilityReport(False, "k = 0")
    for row in G.exponent_matrix:
        if any(row):
            return FertilityReport(True, row)
    return FertilityReport(False, "zero exponent matrix")
