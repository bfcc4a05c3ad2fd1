"""Finite fields F_q = F_p[t]/(m) and factorization of polynomials over them.

Field elements are tuples of ints (coefficients in t, lowest first).
Polynomials over a field are lists of elements, lowest degree first, with no
trailing zeros; the zero polynomial is ``[]``.  Polynomials over the prime
field used by the fast paths are plain lists of ints.
"""
from __future__ import annotations

import random
from itertools import product
from typing import Iterator, Sequence

Elem = tuple
Poly = list


def _trim_ints(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


# -- polynomials over F_p as int lists -------------------------------------


def fp_reduce(f: Sequence[int], p: int) -> list[int]:
    return _trim_ints([c % p for c in f])


def fp_mul(f: list[int], g: list[int], p: int) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return _trim_ints([c % p for c in out])


def fp_divmod(f: list[int], g: list[int], p: int) -> tuple[list[int], list[int]]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    dg = len(g) - 1
    inv = pow(g[-1], -1, p)
    q = [0] * max(len(r) - dg, 0)
    while len(r) - 1 >= dg and r:
        c = r[-1] * inv % p
        shift = len(r) - 1 - dg
        q[shift] = c
        for i, b in enumerate(g):
            r[shift + i] = (r[shift + i] - c * b) % p
        _trim_ints(r)
    return _trim_ints(q), r


def fp_mod(f: list[int], g: list[int], p: int) -> list[int]:
    return fp_divmod(f, g, p)[1]


def fp_monic(f: list[int], p: int) -> list[int]:
    if not f:
        return f
    inv = pow(f[-1], -1, p)
    return [c * inv % p for c in f]


def fp_gcd(f: list[int], g: list[int], p: int) -> list[int]:
    while g:
        f, g = g, fp_mod(f, g, p)
    return fp_monic(f, p)


def fp_powmod(base: list[int], e: int, mod: list[int], p: int) -> list[int]:
    result = [1]
    base = fp_mod(base, mod, p)
    while e:
        if e & 1:
            result = fp_mod(fp_mul(result, base, p), mod, p)
        base = fp_mod(fp_mul(base, base, p), mod, p)
        e >>= 1
    return result


def fp_sub(f: list[int], g: list[int], p: int) -> list[int]:
    n = max(len(f), len(g))
    return _trim_ints([((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) % p for i in range(n)])


def fp_deriv(f: list[int], p: int) -> list[int]:
    return _trim_ints([(i * c) % p for i, c in enumerate(f)][1:])


def fp_is_squarefree(f: list[int], p: int) -> bool:
    d = fp_deriv(f, p)
    if not d:
        return len(f) <= 1
    return len(fp_gcd(f, d, p)) == 1


def fp_split_degrees(f: Sequence[int], p: int) -> list[int]:
    """Degrees of the irreducible factors of a squarefree ``f`` mod p, sorted.

    Distinct-degree factorization only; used by the prime scans where the
    factors themselves are not needed.
    """
    f = fp_monic(fp_reduce(f, p), p)
    degrees: list[int] = []
    x = [0, 1]
    h = x
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = fp_powmod(h, p, f, p)
        g = fp_gcd(f, fp_sub(h, x, p), p)
        if len(g) > 1:
            degrees.extend([d] * ((len(g) - 1) // d))
            f = fp_divmod(f, g, p)[0]
            h = fp_mod(h, f, p)
    if len(f) > 1:
        degrees.append(len(f) - 1)
    return sorted(degrees)


def fp_is_irreducible(f: Sequence[int], p: int) -> bool:
    f = fp_reduce(f, p)
    if len(f) <= 1:
        return False
    return fp_is_squarefree(f, p) and fp_split_degrees(f, p) == [len(f) - 1]


def find_irreducible(p: int, d: int) -> list[int]:
    """The first monic irreducible of degree d over F_p (lexicographic order).

    Deterministic, so every caller asking for "the" degree-d unramified
    modulus gets the same polynomial.
    """
    if d == 1:
        return [0, 1]
    for tail in product(range(p), repeat=d):
        f = list(reversed(tail)) + [1]
        if f[0] == 0:
            continue
        if fp_is_irreducible(f, p):
            return f
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# -- the field F_q ---------------------------------------------------------


class GF:
    """The finite field F_p[t]/(modulus) with elements as coefficient tuples."""

    def __init__(self, p: int, modulus: Sequence[int] | None = None):
        if modulus is None:
            modulus = [0, 1]
        modulus = fp_monic(fp_reduce(modulus, p), p)
        if not fp_is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is not irreducible mod {p}")
        self.p = p
        self.modulus = modulus
        self.degree = len(modulus) - 1
        self.q = p ** self.degree
        self.zero = (0,) * self.degree
        self.one = (1,) + (0,) * (self.degree - 1)

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.degree})"

    def __eq__(self, other) -> bool:
        return isinstance(other, GF) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, tuple(self.modulus)))

    def elem(self, coeffs: Sequence[int]) -> Elem:
        c = fp_mod(fp_reduce(coeffs, self.p), self.modulus, self.p)
        return tuple(c) + (0,) * (self.degree - len(c))

    def from_int(self, a: int) -> Elem:
        return self.elem([a])

    def add(self, a: Elem, b: Elem) -> Elem:
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a: Elem, b: Elem) -> Elem:
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a: Elem) -> Elem:
        p = self.p
        return tuple((-x) % p for x in a)

    def mul(self, a: Elem, b: Elem) -> Elem:
        if self.degree == 1:
            return (a[0] * b[0] % self.p,)
        return self.elem(fp_mul(_trim_ints(list(a)), _trim_ints(list(b)), self.p))

    def pow(self, a: Elem, e: int) -> Elem:
        if e < 0:
            a = self.inv(a)
            e = -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def inv(self, a: Elem) -> Elem:
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self.pow(a, self.q - 2)

    def div(self, a: Elem, b: Elem) -> Elem:
        return self.mul(a, self.inv(b))

    def is_zero(self, a: Elem) -> bool:
        return not any(a)

    def frobenius(self, a: Elem, times: int = 1) -> Elem:
        return self.pow(a, self.p ** (times % self.degree) if self.degree > 1 else 1)

    def is_nth_power(self, a: Elem, n: int) -> bool:
        """Whether a nonzero ``a`` lies in (F_q^*)^n."""
        from math import gcd

        g = gcd(n, self.q - 1)
        return self.pow(a, (self.q - 1) // g) == self.one

    def elements(self) -> Iterator[Elem]:
        for digits in product(range(self.p), repeat=self.degree):
            yield tuple(digits)

    def random(self, rng: random.Random) -> Elem:
        return tuple(rng.randrange(self.p) for _ in range(self.degree))


# -- polynomials over GF ---------------------------------------------------


def _trim(F: GF, f: Poly) -> Poly:
    while f and F.is_zero(f[-1]):
        f.pop()
    return f


def poly_from_ints(F: GF, coeffs: Sequence[int]) -> Poly:
    return _trim(F, [F.from_int(c) for c in coeffs])


def poly_add(F: GF, f: Poly, g: Poly) -> Poly:
    n = max(len(f), len(g))
    z = F.zero
    return _trim(F, [F.add(f[i] if i < len(f) else z, g[i] if i < len(g) else z) for i in range(n)])


def poly_sub(F: GF, f: Poly, g: Poly) -> Poly:
    n = max(len(f), len(g))
    z = F.zero
    return _trim(F, [F.sub(f[i] if i < len(f) else z, g[i] if i < len(g) else z) for i in range(n)])


def poly_mul(F: GF, f: Poly, g: Poly) -> Poly:
    if not f or not g:
        return []
    out = [F.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if F.is_zero(a):
            continue
        for j, b in enumerate(g):
            out[i + j] = F.add(out[i + j], F.mul(a, b))
    return _trim(F, out)


def poly_scale(F: GF, f: Poly, c: Elem) -> Poly:
    return _trim(F, [F.mul(a, c) for a in f])


def poly_divmod(F: GF, f: Poly, g: Poly) -> tuple[Poly, Poly]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    dg = len(g) - 1
    inv = F.inv(g[-1])
    q = [F.zero] * max(len(r) - dg, 0)
    while r and len(r) - 1 >= dg:
        c = F.mul(r[-1], inv)
        shift = len(r) - 1 - dg
        q[shift] = c
        for i, b in enumerate(g):
            r[shift + i] = F.sub(r[shift + i], F.mul(c, b))
        _trim(F, r)
    return _trim(F, q), r


def poly_mod(F: GF, f: Poly, g: Poly) -> Poly:
    return poly_divmod(F, f, g)[1]


def poly_monic(F: GF, f: Poly) -> Poly:
    if not f:
        return f
    return poly_scale(F, f, F.inv(f[-1]))


def poly_gcd(F: GF, f: Poly, g: Poly) -> Poly:
    while g:
        f, g = g, poly_mod(F, f, g)
    return poly_monic(F, f)


def poly_powmod(F: GF, base: Poly, e: int, mod: Poly) -> Poly:
    result: Poly = [F.one]
    base = poly_mod(F, base, mod)
    while e:
        if e & 1:
            result = poly_mod(F, poly_mul(F, result, base), mod)
        base = poly_mod(F, poly_mul(F, base, base), mod)
        e >>= 1
    return poly_mod(F, result, mod)


def poly_deriv(F: GF, f: Poly) -> Poly:
    return _trim(F, [F.mul(F.from_int(i), c) for i, c in enumerate(f)][1:])


def poly_eval(F: GF, f: Poly, x: Elem) -> Elem:
    acc = F.zero
    for c in reversed(f):
        acc = F.add(F.mul(acc, x), c)
    return acc


def _pth_root_poly(F: GF, f: Poly) -> Poly:
    """g with g^p = f, for f a polynomial in x^p."""
    p = F.p
    inv_frob = F.q // p  # a -> a^(q/p) inverts Frobenius on F_q
    return _trim(F, [F.pow(f[i], inv_frob) for i in range(0, len(f), p)])


def squarefree_decomposition(F: GF, f: Poly) -> list[tuple[Poly, int]]:
    """Yun-style decomposition of a monic f into (squarefree part, multiplicity)."""
    f = poly_monic(F, f)
    if len(f) <= 1:
        return []
    out: list[tuple[Poly, int]] = []
    d = poly_deriv(F, f)
    if not d:
        return [(g, m * F.p) for g, m in squarefree_decomposition(F, _pth_root_poly(F, f))]
    c = poly_gcd(F, f, d)
    w = poly_divmod(F, f, c)[0]
    i = 1
    while len(w) > 1:
        y = poly_gcd(F, w, c)
        z = poly_divmod(F, w, y)[0]
        if len(z) > 1:
            out.append((z, i))
        i += 1
        w = y
        c = poly_divmod(F, c, y)[0]
    if len(c) > 1:
        out.extend((g, m * F.p) for g, m in squarefree_decomposition(F, _pth_root_poly(F, c)))
    merged: dict[tuple, int] = {}
    for g, m in out:
        merged[tuple(g)] = merged.get(tuple(g), 0) + m
    return [(list(g), m) for g, m in merged.items()]


def distinct_degree(F: GF, f: Poly) -> list[tuple[Poly, int]]:
    """For squarefree monic f: pairs (product of all degree-d factors, d)."""
    out = []
    x = [F.zero, F.one]
    h = x
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = poly_powmod(F, h, F.q, f)
        g = poly_gcd(F, f, poly_sub(F, h, x))
        if len(g) > 1:
            out.append((g, d))
            f = poly_divmod(F, f, g)[0]
            h = poly_mod(F, h, f)
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def _trace_poly(F: GF, a: Poly, f: Poly, d: int) -> Poly:
    # a + a^2 + ... + a^(2^(kd-1)): the absolute trace of each F_{q^d} component
    k = F.degree * d
    t = a
    acc = a
    for _ in range(k - 1):
        t = poly_mod(F, poly_mul(F, t, t), f)
        acc = poly_add(F, acc, t)
    return acc


def equal_degree(F: GF, f: Poly, d: int, rng: random.Random) -> list[Poly]:
    """Cantor-Zassenhaus splitting of a product of distinct degree-d factors."""
    n = len(f) - 1
    if n == d:
        return [poly_monic(F, f)]
    while True:
        a = _trim(F, [F.random(rng) for _ in range(n)])
        if len(a) <= 1:
            continue
        if F.p == 2:
            b = _trace_poly(F, a, f, d)
        else:
            b = poly_powmod(F, a, (F.q ** d - 1) // 2, f)
            b = poly_sub(F, b, [F.one])
        g = poly_gcd(F, f, b)
        if 1 < len(g) < len(f):
            h = poly_divmod(F, f, g)[0]
            return equal_degree(F, g, d, rng) + equal_degree(F, h, d, rng)


def _poly_key(f: Poly):
    return (len(f), [list(c) for c in reversed(f)])


def factor(F: GF, f: Poly, seed: int = 0) -> list[tuple[Poly, int]]:
    """Monic irreducible factors with multiplicities, in a canonical order."""
    rng = random.Random(seed)
    out = []
    for g, m in squarefree_decomposition(F, f):
        for h, d in distinct_degree(F, g):
            for irr in equal_degree(F, h, d, rng):
                out.append((irr, m))
    out.sort(key=lambda fm: (_poly_key(fm[0]), fm[1]))
    return out


def roots(F: GF, f: Poly, seed: int = 0) -> list[Elem]:
    """Distinct roots of f in F."""
    f = poly_monic(F, f)
    if not f:
        raise ValueError("roots of the zero polynomial")
    x = [F.zero, F.one]
    g = poly_gcd(F, f, poly_sub(F, poly_powmod(F, x, F.q, f), x)) if len(f) > 1 else [F.one]
    if len(g) <= 1:
        return []
    found = []
    for lin in equal_degree(F, g, 1, random.Random(seed)):
        found.append(F.neg(lin[0]))
    return sorted(found)
