"""Recovering the multiset of local fields of K from the point group data.

The centre of the endomorphism ring of the commutator module over the
finite adeles of K is a product of ell copies of the finite adeles, one per
distinct torus character.  Its principal maximal ideals are (place, copy)
pairs and each quotient is the completion at the place.  Counting quotients
and dividing by ell gives one local field per finite place in the window.
"""
from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import sympy

from ..errors import NotFertile, Unsupported, UnsupportedDescriptor
from ..localfield import LocalField
from ..numberfield import NumberField, completion, decompose
from ..padic import DEFAULT_PRECISION
from .characters import CharacterModule, commutator_module_characters
from .descriptors import GroupDescriptor, is_fertile


@dataclass(frozen=True)
class LocalPlace:
    p: int
    index: int
    e: int
    f: int
    field: LocalField | None = field(default=None, compare=False, repr=False)

    @property
    def invariants(self) -> tuple[int, int, int]:
        return (self.p, self.e, self.f)

    def to_json(self) -> dict:
        return {"p": self.p, "index": self.index, "e": self.e, "f": self.f,
                "presented": self.field is not None}


@dataclass
class Reconstruction:
    group: str
    field: NumberField
    bound: int
    ell: int
    characters: CharacterModule | None
    raw_ideal_count: int
    places: list[LocalPlace]
    skipped_primes: list[int]
    normalization_exact: bool

    @property
    def multiset(self) -> list[tuple[int, int, int]]:
        return sorted(pl.invariants for pl in self.places)

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "field": str(self.field),
            "window": self.bound,
            "ell": self.ell,
            "characters": self.characters.to_json()["characters"] if self.characters else None,
            "raw_ideal_count": self.raw_ideal_count,
            "normalization_exact": self.normalization_exact,
            "multiset": [list(x) for x in self.multiset],
            "skipped_primes": self.skipped_primes,
        }


def _places_at(args) -> tuple[int, list[LocalPlace] | None]:
    K, p, N = args
    d = decompose(K, p)
    if not d.supported:
        return p, None
    out = []
    for i, (e, f) in enumerate(d.pairs):
        try:
            F = completion(K, p, i, N)
        except Unsupported:
            F = None  # wild place without an Eisenstein presentation
        out.append(LocalPlace(p, i, e, f, F))
    return p, out


def _scan(K: NumberField, bound: int, N: int, jobs: int):
    tasks = [(K, p, N) for p in sympy.primerange(2, bound + 1)]
    if jobs > 1 and len(tasks) > 8:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_places_at, tasks))
    else:
        results = [_places_at(t) for t in tasks]
    return sorted(results)


def reconstruct_local_fields(G: GroupDescriptor, K: NumberField, bound: int, N: int = DEFAULT_PRECISION,
                             jobs: int = 1, require_fertile: bool = True) -> Reconstruction:
    if bound < 2:
        raise ValueError("bound must be at least 2")
    if not is_fertile(G).fertile:
        if require_fertile:
            raise NotFertile(f"{G.name} is not fertile")
        module, ell = None, 1
    else:
        try:
            module = commutator_module_characters(G)
            ell = module.ell
        except UnsupportedDescriptor:
            if require_fertile:
                raise
            module, ell = None, 1
    per_place, skipped = [], []
    for p, places in _scan(K, bound, N, jobs):
        if places is None:
            skipped.append(p)
        else:
            per_place.extend(places)
    # maximal ideals of the centre: one per (place, copy)
    ideals = [(pl, c) for pl in per_place for c in range(ell)]
    counts = Counter((pl.p, pl.index) for pl, _ in ideals)
    exact = all(m % ell == 0 and m // ell == 1 for m in counts.values())
    return Reconstruction(G.name, K, bound, ell, module, len(ideals), per_place, skipped, exact)


# -- comparison ---------------------------------------------------------------


@dataclass
class ComparisonReport:
    verdict: str
    window: int
    per_place: list[dict]
    flags: list[str]
    witness: dict | None = None
    theorem_backed: bool = True
    skipped_primes: list[int] = field(default_factory=list)
    ell: int | None = None

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "window": self.window,
            "per_place": self.per_place,
            "flags": self.flags,
            "witness": self.witness,
            "theorem_backed": self.theorem_backed,
            "skipped_primes": self.skipped_primes,
            "ell": self.ell,
        }


def _match(a: LocalPlace, b: LocalPlace) -> str | None:
    """How ``a`` and ``b`` were matched, or None if they are not isomorphic."""
    if (a.e, a.f) != (b.e, b.f):
        return None
    if a.field is not None and b.field is not None:
        if a.field == b.field:
            return "identical"
        if a.e % a.p:
            return "tame" if a.field.is_isomorphic_tame(b.field) == "isomorphic" else None
    if a.e % a.p == 0:
        return "invariants-only"
    return "tame"  # unramified: decided by (p, f)


def _compare_prime(p: int, left: list[LocalPlace], right: list[LocalPlace]):
    free = list(right)
    methods = []
    for a in left:
        for j, b in enumerate(free):
            how = _match(a, b)
            if how is not None:
                methods.append(how)
                free.pop(j)
                break
        else:
            return False, methods
    return not free, methods


def compare_point_groups(G: GroupDescriptor, K: NumberField, L: NumberField, bound: int,
                         N: int = DEFAULT_PRECISION, jobs: int = 1) -> ComparisonReport:
    flags = []
    backed = is_fertile(G).fertile
    if not backed:
        flags.append("not-theorem-backed")
    RK = reconstruct_local_fields(G, K, bound, N, jobs, require_fertile=False)
    RL = reconstruct_local_fields(G, L, bound, N, jobs, require_fertile=False)
    if RK.characters is None and backed:
        flags.append("descriptor-without-matrix-model")
    skipped = sorted(set(RK.skipped_primes) | set(RL.skipped_primes))
    by_prime_K, by_prime_L = {}, {}
    for pl in RK.places:
        by_prime_K.setdefault(pl.p, []).append(pl)
    for pl in RL.places:
        by_prime_L.setdefault(pl.p, []).append(pl)
    primes = [p for p in sympy.primerange(2, bound + 1) if p not in skipped]
    if not primes:
        return ComparisonReport("incomparable", bound, [], flags, None, backed, skipped, RK.ell)
    per_place, wild = [], []
    for p in primes:
        left, right = by_prime_K[p], by_prime_L[p]
        ok, methods = _compare_prime(p, left, right)
        if sorted((pl.e, pl.f) for pl in left) != sorted((pl.e, pl.f) for pl in right):
            method = "invariants"  # the (e, f) data already differ
        elif "invariants-only" in methods:
            method = "invariants-only"
            wild.append(p)
        elif methods and all(m == "identical" for m in methods):
            method = "identical"
        else:
            method = "tame"
        entry = {"p": p, "K_side": [[pl.e, pl.f] for pl in left], "L_side": [[pl.e, pl.f] for pl in right],
                 "matched": ok, "method": method}
        per_place.append(entry)
        if not ok:
            if wild:
                flags.append("wild-invariants-only")
            witness = {"p": p, "K_side": entry["K_side"], "L_side": entry["L_side"]}
            return ComparisonReport("distinguished", bound, per_place, flags, witness, backed, skipped, RK.ell)
    if wild:
        flags.append("wild-invariants-only")
    return ComparisonReport(f"locally-isomorphic-up-to-{bound}", bound, per_place, flags, None, backed,
                            skipped, RK.ell)
