"""Number fields given by monic irreducible integer polynomials.

Primes not dividing the polynomial discriminant are decomposed by factoring
mod p.  For the remaining primes we run one round of Newton-polygon analysis:
for each irreducible factor phi of f mod p the phi-adic Newton polygon and
its residual polynomials are computed; when every residual polynomial is
squarefree the (e, f) data is certified, otherwise the prime is reported as
unsupported.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import sympy

from . import ffield, zpoly
from .errors import InvalidPolynomial, PrecisionExhausted, Unsupported
from .localfield import LocalField
from .padic import DEFAULT_PRECISION, is_prime, vp_int


class NumberField:
    """Q[x]/(f) for a monic irreducible integer polynomial f."""

    def __init__(self, poly):
        coeffs = zpoly.parse_poly(poly)
        if len(coeffs) < 2:
            raise InvalidPolynomial("defining polynomial must have degree at least 1")
        if coeffs[-1] != 1:
            raise InvalidPolynomial("defining polynomial must be monic")
        sp = zpoly.to_sympy(coeffs)
        if not sp.is_irreducible:
            raise InvalidPolynomial(f"{zpoly.format_poly(coeffs)} is reducible over Q")
        self.defining_poly = tuple(coeffs)
        self.degree = len(coeffs) - 1
        self.poly_discriminant = int(sympy.discriminant(sp)) if self.degree > 1 else 1

    def __eq__(self, other) -> bool:
        return isinstance(other, NumberField) and self.defining_poly == other.defining_poly

    def __hash__(self) -> int:
        return hash(self.defining_poly)

    def __str__(self) -> str:
        return zpoly.format_poly(self.defining_poly)

    def __repr__(self) -> str:
        return f"NumberField({str(self)!r})"

    def to_json(self) -> dict:
        return {
            "defining_poly": list(self.defining_poly),
            "degree": self.degree,
            "poly_discriminant": str(self.poly_discriminant),
        }


@dataclass(frozen=True)
class LocalFactor:
    """Data for one prime above p, enough to present its completion."""

    e: int
    f: int
    kind: str  # unramified | tame | wild
    unramified_poly: tuple | None = None
    eisenstein_poly: tuple | None = None
    # which roots of f belong to this prime: phi(theta) = 0 mod p, and for
    # Newton-polygon factors v(phi(theta)) = h/e with the residue of
    # phi(theta)^e / p^h a root of psi (coefficients in F_p[x]/phi)
    phi: tuple = ()
    h: int | None = None
    psi: tuple | None = None


@dataclass(frozen=True)
class DecompositionType:
    p: int
    pairs: tuple[tuple[int, int], ...]
    supported: bool
    reason: str | None = None
    factors: tuple[LocalFactor, ...] = field(default=(), compare=False, repr=False)

    def to_json(self) -> dict:
        out = {"p": self.p, "pairs": [list(pr) for pr in self.pairs], "supported": self.supported}
        if self.reason:
            out["reason"] = self.reason
        return out


def _fp_poly_ints(F: ffield.GF, g) -> list[int]:
    return [c[0] for c in g]


def _residue(Fq: ffield.GF, a: Sequence[int], v: int, p: int) -> tuple:
    return Fq.elem([(c // p ** v) % p for c in a])


def _tame_eisenstein(p: int, e: int, h: int, phi: list[int], psi, Fq: ffield.GF, fdeg: int):
    """Unramified modulus and Eisenstein polynomial for a tame prime.

    If ``z`` is the residue of ``phi(theta)^e / p^h`` (a root of the residual
    polynomial) and ``a h = 1 mod e``, then ``phi(theta)^a / p^b`` is a
    uniformizer whose e-th power is p times a unit with residue ``z^a``.
    """
    M = ffield.find_irreducible(p, fdeg)
    big = ffield.GF(p, M)
    t = ffield.roots(big, ffield.poly_from_ints(big, [c % p for c in phi]))[0]

    def embed(x: tuple) -> tuple:
        acc, power = big.zero, big.one
        for c in x:
            acc = big.add(acc, big.mul(big.from_int(c), power))
            power = big.mul(power, t)
        return acc

    psi_big = [embed(c) for c in psi]
    z = ffield.roots(big, psi_big)[0]
    a = pow(h, -1, e) if e > 1 else 1
    c = big.pow(z, a)
    eis = [[-p * x for x in c]] + [[0] * fdeg for _ in range(e - 1)] + [[1] + [0] * (fdeg - 1)]
    return tuple(M), tuple(tuple(row) for row in eis)


def _montes(coeffs: tuple[int, ...], p: int) -> tuple[list[LocalFactor], str | None]:
    Fp = ffield.GF(p)
    n = len(coeffs) - 1
    fbar = ffield.poly_from_ints(Fp, [c % p for c in coeffs])
    out: list[LocalFactor] = []
    for gbar, m in ffield.factor(Fp, fbar):
        phi = _fp_poly_ints(Fp, gbar)
        d = len(phi) - 1
        if m == 1:
            out.append(LocalFactor(1, d, "unramified", tuple(phi), phi=tuple(phi)))
            continue
        digits = zpoly.phi_expansion(list(coeffs), phi)[: m + 1]
        vals = [zpoly.content_valuation(a, p) for a in digits]
        points = [(i, v) for i, v in enumerate(vals) if v != math.inf]
        Fq = ffield.GF(p, phi)
        for s, t, slope in zpoly.newton_sides(points):
            if s >= m:
                break
            h, e = -slope.numerator, slope.denominator
            degree = (t - s) // e
            R = []
            for k in range(degree + 1):
                i = s + k * e
                vi = vals[i] if i < len(vals) else math.inf
                if vi != math.inf and vi == vals[s] - h * k:
                    R.append(_residue(Fq, digits[i], vi, p))
                else:
                    R.append(Fq.zero)
            for psi, mult in ffield.factor(Fq, R):
                if mult > 1:
                    return out, (f"residual polynomial at p={p} is not squarefree; "
                                 "a second Newton-polygon round would be needed")
                g = len(psi) - 1
                fdeg = d * g
                tag = dict(phi=tuple(phi), h=h, psi=tuple(tuple(c) for c in psi))
                if e == 1:
                    out.append(LocalFactor(1, fdeg, "unramified", tuple(ffield.find_irreducible(p, fdeg)), **tag))
                elif e % p:
                    up, eis = _tame_eisenstein(p, e, h, phi, psi, Fq, fdeg)
                    out.append(LocalFactor(e, fdeg, "tame", up, eis, **tag))
                else:
                    eis = None
                    if d == 1 and h == 1 and e == n:
                        shifted = zpoly.taylor_shift(list(coeffs), (-phi[0]) % p)
                        if zpoly.is_eisenstein(shifted, p):
                            eis = tuple((c,) for c in shifted)
                    out.append(LocalFactor(e, fdeg, "wild", (0, 1), eis, **tag))
    return out, None


@lru_cache(maxsize=4096)
def _decompose(coeffs: tuple[int, ...], disc: int, p: int) -> DecompositionType:
    if disc % p:
        Fp = ffield.GF(p)
        facs = ffield.factor(Fp, ffield.poly_from_ints(Fp, [c % p for c in coeffs]))
        factors = []
        for g, _ in facs:
            phi = tuple(_fp_poly_ints(Fp, g))
            factors.append(LocalFactor(1, len(phi) - 1, "unramified", phi, phi=phi))
        reason = None
    else:
        factors, reason = _montes(coeffs, p)
    factors.sort(key=lambda lf: (lf.f, lf.e))
    pairs = tuple((lf.e, lf.f) for lf in factors)
    n = len(coeffs) - 1
    if reason is None and sum(e * f for e, f in pairs) != n:
        reason = f"local degrees at p={p} do not add up to {n}"
    if reason is not None:
        return DecompositionType(p, (), False, reason)
    return DecompositionType(p, pairs, True, None, tuple(factors))


def decompose(K: NumberField, p: int) -> DecompositionType:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return _decompose(K.defining_poly, K.poly_discriminant, p)


def split_type(K: NumberField, p: int) -> tuple[int, ...]:
    d = decompose(K, p)
    if not d.supported:
        raise Unsupported(d.reason)
    return tuple(sorted(f for _, f in d.pairs))


def completion(K: NumberField, p: int, index: int, N: int = DEFAULT_PRECISION) -> LocalField:
    """The completion at the ``index``-th prime above p (order of ``pairs``)."""
    d = decompose(K, p)
    if not d.supported:
        raise Unsupported(d.reason)
    if not 0 <= index < len(d.factors):
        raise IndexError(f"prime index {index} out of range for p={p}")
    lf = d.factors[index]
    if lf.kind == "unramified":
        return LocalField(p, f=lf.f, unramified_poly=lf.unramified_poly, N=N)
    if lf.eisenstein_poly is None:
        raise Unsupported(f"wild completion at p={p} needs a non-trivial slope factorization")
    if lf.kind == "wild":
        return LocalField(p, e=lf.e, eisenstein_poly=[c[0] for c in lf.eisenstein_poly], N=N)
    return LocalField(p, f=lf.f, e=lf.e, unramified_poly=lf.unramified_poly,
                      eisenstein_poly=[list(c) for c in lf.eisenstein_poly], N=N)


def _belongs(lf: LocalFactor, F: LocalField, root) -> bool:
    p = F.p
    phi_val = F._poly_eval(list(lf.phi), root)
    v = phi_val.valuation()
    if lf.h is None:
        return v > 0
    if v != Fraction(lf.h, lf.e):
        return False
    z = (phi_val ** lf.e / F(p) ** lf.h).residue()
    k = F.residue_field
    tbar = root.residue()

    def embed(x):
        acc, power = k.zero, k.one
        for c in x:
            acc = k.add(acc, k.mul(k.from_int(c), power))
            power = k.mul(power, tbar)
        return acc

    return k.is_zero(ffield.poly_eval(k, [embed(c) for c in lf.psi], z))


def embedding_root(K: NumberField, p: int, index: int, F: LocalField | None = None):
    """Image of the generator of K in the completion at the ``index``-th prime above p."""
    d = decompose(K, p)
    if F is None:
        F = completion(K, p, index)
    lf = d.factors[index]
    for root in F.find_roots(list(K.defining_poly)):
        if _belongs(lf, F, root):
            return root
    raise PrecisionExhausted(f"no root of {K} in the completion at ({p}, {index})")


# -- arithmetic equivalence -------------------------------------------------


@dataclass(frozen=True)
class EquivalenceReport:
    verdict: str
    bound: int
    witness: object = None
    skipped_primes: tuple[int, ...] = ()

    @property
    def equivalent(self) -> bool:
        return self.verdict.startswith("equivalent")

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "bound": self.bound,
            "witness": self.witness,
            "skipped_primes": list(self.skipped_primes),
        }


def _first_mismatch(args) -> int | None:
    f, g, primes = args
    for p in primes:
        if ffield.fp_split_degrees([c % p for c in f], p) != ffield.fp_split_degrees([c % p for c in g], p):
            return p
    return None


def arithmetically_equivalent(K: NumberField, L: NumberField, bound: int, jobs: int = 1) -> EquivalenceReport:
    """Compare split types at every prime up to ``bound`` not dividing either discriminant."""
    if bound < 2:
        raise ValueError("bound must be at least 2")
    if K.degree != L.degree:
        return EquivalenceReport("incomparable", bound, f"degree {K.degree} != {L.degree}")
    D = K.poly_discriminant * L.poly_discriminant
    primes = list(sympy.primerange(2, bound + 1))
    skipped = tuple(p for p in primes if D % p == 0)
    usable = [p for p in primes if D % p]
    if not usable:
        return EquivalenceReport("incomparable", bound, None, skipped)
    f, g = K.defining_poly, L.defining_poly
    if jobs > 1 and len(usable) > 64:
        size = -(-len(usable) // (4 * jobs))
        chunks = [(f, g, usable[i:i + size]) for i in range(0, len(usable), size)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            hits = [w for w in pool.map(_first_mismatch, chunks) if w is not None]
        witness = min(hits) if hits else None
    else:
        witness = _first_mismatch((f, g, usable))
    if witness is not None:
        return EquivalenceReport("inequivalent", bound, witness, skipped)
    return EquivalenceReport(f"equivalent-up-to-{bound}", bound, None, skipped)


# -- non-isomorphism certificates -------------------------------------------


def no_root_certificate(K: NumberField, h: Sequence[int], bound: int = 2000) -> dict | None:
    """A prime showing that the monic polynomial h has no root in K.

    A root of h in K would reduce to a root of h mod p in every residue
    field of K above an unramified p; so a residue field F_{p^f} of K in
    which h mod p has no root rules it out.
    """
    h = list(h)
    if len(h) <= 2:
        return None
    hd = int(sympy.discriminant(zpoly.to_sympy(h)))
    D = K.poly_discriminant * hd
    for p in sympy.primerange(2, bound + 1):
        if D % p == 0:
            continue
        degs = ffield.fp_split_degrees([c % p for c in h], p)
        for fdeg in sorted(set(ffield.fp_split_degrees([c % p for c in K.defining_poly], p))):
            if not any(fdeg % d == 0 for d in degs):
                return {"prime": p, "residue_degree": fdeg, "factor_degrees_mod_p": degs}
    return None


def _binomial(coeffs: Sequence[int]) -> int | None:
    if coeffs[-1] == 1 and all(c == 0 for c in coeffs[1:-1]) and coeffs[0] != 0:
        return -coeffs[0]
    return None


def _kummer_direction(K: NumberField, a: int, b: int, n: int, bound: int) -> dict | None:
    # a root y of x^n - b in K gives (y/x)^n = b/a with x^n = a
    r = Fraction(b, a)
    u, w = r.numerator, r.denominator
    target = [-u * w ** (n - 1)] + [0] * (n - 1) + [1]
    factors = []
    for fac, _ in zpoly.to_sympy(target).factor_list()[1]:
        h = [int(c) for c in reversed(fac.all_coeffs())]
        cert = no_root_certificate(K, h, bound)
        if cert is None:
            return None
        factors.append({"factor": zpoly.format_poly(h), **cert})
    return {"field": str(K), "ratio_polynomial": zpoly.format_poly(target), "factors": factors}


def non_isomorphism_certificate(K: NumberField, L: NumberField, bound: int = 2000) -> dict | None:
    """Certificate that neither defining polynomial has a root in the other field."""
    if K.degree != L.degree:
        return {"method": "degree", "degrees": [K.degree, L.degree]}
    direct = [no_root_certificate(K, L.defining_poly, bound), no_root_certificate(L, K.defining_poly, bound)]
    if all(direct):
        return {"method": "direct", "K_has_no_root_of_L": direct[0], "L_has_no_root_of_K": direct[1]}
    a, b = _binomial(K.defining_poly), _binomial(L.defining_poly)
    if a is None or b is None:
        return None
    n = K.degree
    forward = _kummer_direction(K, a, b, n, bound)
    backward = _kummer_direction(L, b, a, n, bound)
    if forward is None or backward is None:
        return None
    return {"method": "kummer-ratio", "K_has_no_root_of_L": forward, "L_has_no_root_of_K": backward}
