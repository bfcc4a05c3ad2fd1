"""Capped relative precision arithmetic in Q_p.

An element is stored as ``p^v * u`` where ``u`` is a unit known modulo
``p^N``.  ``N`` is the *relative* precision; ``v + N`` is the absolute
precision.  Zero is stored with ``v = INF``, ``u = 0`` and ``N`` holding its
absolute precision (``INF`` for an exact zero).

Precision rules (every operation below obeys exactly these):

* ``a * b``: valuation ``va + vb``, relative precision ``min(Na, Nb)``.
* ``a / b``: valuation ``va - vb``, relative precision ``min(Na, Nb)``.
* ``a + b``: absolute precision ``min(abs(a), abs(b))``; the valuation is
  recomputed from the sum, so cancellation shows up as lost relative
  precision.  A sum whose known digits all cancel is a zero carrying that
  absolute precision.
* ``x ** n``: valuation ``n * v``, relative precision ``N``.
* Exact zero is absorbing for ``*`` and neutral for ``+``.
* Python ``int`` and ``Fraction`` operands are exact; they are coerced at
  an absolute precision no lower than the other operand's.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from sympy import isprime as _sympy_isprime

from .errors import (
    DivisionByZero,
    DomainViolation,
    InvalidResidue,
    PrecisionExhausted,
    PrimeMismatch,
)

INF = math.inf
DEFAULT_PRECISION = 40

Rational = Union[int, Fraction]


@lru_cache(maxsize=4096)
def is_prime(n: int) -> bool:
    return n >= 2 and bool(_sympy_isprime(n))


def vp_int(n: int, p: int) -> Union[int, float]:
    """p-adic valuation of an integer (INF for 0)."""
    if n == 0:
        return INF
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def vp_rational(x: Rational, p: int) -> Union[int, float]:
    x = Fraction(x)
    if x == 0:
        return INF
    return vp_int(x.numerator, p) - vp_int(x.denominator, p)


def vp_factorial(k: int, p: int) -> int:
    """Legendre's formula."""
    total = 0
    while k:
        k //= p
        total += k
    return total


@dataclass(frozen=True, eq=False)
class PAdicNumber:
    p: int
    v: Union[int, float]
    u: int
    N: Union[int, float]

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.u == 0:
            if self.v != INF:
                raise ValueError("zero must carry the infinite valuation sentinel")
            if not (self.N == INF or isinstance(self.N, int)):
                raise ValueError("bad absolute precision for zero")
        else:
            if not isinstance(self.N, int) or self.N < 1:
                raise ValueError("relative precision must be a positive integer")
            if self.u % self.p == 0 or not 0 < self.u < self.p ** self.N:
                raise ValueError("mantissa must be a unit reduced mod p^N")
            if not isinstance(self.v, int):
                raise ValueError("valuation of a nonzero element must be an integer")

    # -- construction -----------------------------------------------------

    @classmethod
    def zero(cls, p: int, absprec: Union[int, float] = INF) -> PAdicNumber:
        return cls(p, INF, 0, absprec)

    @classmethod
    def from_rational(cls, x: Rational, p: int, N: int = DEFAULT_PRECISION) -> PAdicNumber:
        """Exact rational ``x`` rounded to relative precision ``N``."""
        x = Fraction(x)
        if x == 0:
            return cls.zero(p)
        num, den = x.numerator, x.denominator
        vn, vd = vp_int(num, p), vp_int(den, p)
        num //= p ** vn
        den //= p ** vd
        mod = p ** N
        return cls(p, vn - vd, num * pow(den, -1, mod) % mod, N)

    @classmethod
    def from_integer_mod(cls, s: int, p: int, absprec: int) -> PAdicNumber:
        """The element known as ``s`` modulo ``p^absprec``."""
        mod = p ** absprec
        s %= mod
        if s == 0:
            return cls.zero(p, absprec)
        k = vp_int(s, p)
        N = absprec - k
        return cls(p, k, (s // p ** k) % p ** N, N)

    # -- basic queries ----------------------------------------------------

    @property
    def absprec(self) -> Union[int, float]:
        return self.N if self.u == 0 else self.v + self.N

    def is_zero(self) -> bool:
        return self.u == 0

    def is_exact_zero(self) -> bool:
        return self.u == 0 and self.N == INF

    def is_unit(self) -> bool:
        return self.u != 0 and self.v == 0

    def is_integral(self) -> bool:
        return self.v >= 0

    def unit_part(self) -> PAdicNumber:
        if self.is_zero():
            raise DivisionByZero("zero has no unit part")
        return PAdicNumber(self.p, 0, self.u, self.N)

    def residue(self) -> int:
        """Image in F_p of an integral element."""
        if self.v < 0:
            raise DomainViolation("residue of a non-integral element")
        if self.v > 0:
            return 0
        return self.u % self.p

    def lift(self) -> Fraction:
        """The rational ``p^v * u`` (an exact representative)."""
        if self.is_zero():
            return Fraction(0)
        return Fraction(self.u) * Fraction(self.p) ** self.v

    def rational(self) -> Fraction | None:
        """The rational a/b with |a|, |b| <= sqrt(p^N / 2) matching this element, if any.

        Found by the extended Euclidean algorithm on (p^N, u); such a
        rational is unique when it exists.
        """
        if self.is_zero():
            return Fraction(0)
        mod = self.p ** self.N
        bound = math.isqrt(mod // 2)
        r0, r1, t0, t1 = mod, self.u, 0, 1
        while r1 > bound:
            q = r0 // r1
            r0, r1 = r1, r0 - q * r1
            t0, t1 = t1, t0 - q * t1
        if t1 == 0 or abs(t1) > bound or math.gcd(r1, t1) != 1:
            return None
        return Fraction(r1, t1) * Fraction(self.p) ** self.v

    def lift_int(self) -> int:
        """Integer representative of an integral element, in [0, p^absprec)."""
        if self.is_zero():
            return 0
        if self.v < 0:
            raise DomainViolation("non-integral element has no integer lift")
        return self.u * self.p ** self.v

    def identical(self, other: PAdicNumber) -> bool:
        """Bit-exact comparison of the stored representation."""
        return (self.p, self.v, self.u, self.N) == (other.p, other.v, other.u, other.N)

    def with_precision(self, N: int) -> PAdicNumber:
        """Truncate to relative precision ``N`` (never extends precision)."""
        if self.is_zero():
            return self
        if N >= self.N:
            return self
        if N < 1:
            raise PrecisionExhausted("cannot truncate below one digit")
        return PAdicNumber(self.p, self.v, self.u % self.p ** N, N)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> PAdicNumber:
        if isinstance(other, PAdicNumber):
            if other.p != self.p:
                raise PrimeMismatch(f"cannot combine {self.p}-adic and {other.p}-adic numbers")
            return other
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return PAdicNumber.zero(self.p)
            v = vp_rational(other, self.p)
            if self.absprec == INF:
                N = DEFAULT_PRECISION
            else:
                N = max(int(self.absprec - v), 1)
                if not self.is_zero():
                    N = max(N, self.N)
            return PAdicNumber.from_rational(other, self.p, N)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return _add(self, other)

    __radd__ = __add__

    def __neg__(self) -> PAdicNumber:
        if self.is_zero():
            return self
        return PAdicNumber(self.p, self.v, (-self.u) % self.p ** self.N, self.N)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return _add(self, -other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return _add(other, -self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return _mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return _div(self, other)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return _div(other, self)

    def __pow__(self, n: int) -> PAdicNumber:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return _div(PAdicNumber.from_rational(1, self.p, self.N if not self.is_zero() else DEFAULT_PRECISION), self ** (-n))
        if n == 0:
            return PAdicNumber.from_rational(1, self.p, self.N if not self.is_zero() else DEFAULT_PRECISION)
        if self.is_zero():
            return PAdicNumber.zero(self.p, self.N * n if self.N != INF else INF)
        return PAdicNumber(self.p, self.v * n, pow(self.u, n, self.p ** self.N), self.N)

    def __eq__(self, other) -> bool:
        """Equality at the jointly known precision."""
        try:
            other = self._coerce(other)
        except PrimeMismatch:
            return False
        if other is NotImplemented:
            return NotImplemented
        return _add(self, -other).is_zero()

    __hash__ = None

    # -- display / serialisation -----------------------------------------

    def __str__(self) -> str:
        p = self.p
        if self.is_zero():
            return "0" if self.N == INF else f"0 + O({p}^{self.N})"
        return f"{p}^{self.v} * {self.u} + O({p}^({self.absprec}))"

    def __repr__(self) -> str:
        return f"PAdicNumber({self})"

    def to_json(self) -> dict:
        def enc(x):
            return "inf" if x == INF else x
        return {"p": self.p, "v": enc(self.v), "u": str(self.u), "N": enc(self.N)}

    @classmethod
    def from_json(cls, d: dict) -> PAdicNumber:
        def dec(x):
            return INF if x == "inf" else int(x)
        return cls(int(d["p"]), dec(d["v"]), int(d["u"]), dec(d["N"]))


def padic(x: Rational, p: int, N: int = DEFAULT_PRECISION) -> PAdicNumber:
    return PAdicNumber.from_rational(x, p, N)


def valuation(x: PAdicNumber) -> Union[int, float]:
    return x.v


def _add(a: PAdicNumber, b: PAdicNumber) -> PAdicNumber:
    p = a.p
    if a.is_exact_zero():
        return b
    if b.is_exact_zero():
        return a
    absprec = min(a.absprec, b.absprec)
    m = min(a.v, b.v)
    if m == INF or absprec <= m:
        return PAdicNumber.zero(p, absprec)
    s = 0
    if not a.is_zero():
        s += a.u * p ** (a.v - m)
    if not b.is_zero():
        s += b.u * p ** (b.v - m)
    s %= p ** (absprec - m)
    if s == 0:
        return PAdicNumber.zero(p, absprec)
    k = vp_int(s, p)
    N = absprec - m - k
    return PAdicNumber(p, m + k, (s // p ** k) % p ** N, N)


def _mul(a: PAdicNumber, b: PAdicNumber) -> PAdicNumber:
    p = a.p
    if a.is_zero() or b.is_zero():
        if a.is_exact_zero() or b.is_exact_zero():
            return PAdicNumber.zero(p)
        if a.is_zero() and b.is_zero():
            return PAdicNumber.zero(p, a.absprec + b.absprec)
        if a.is_zero():
            return PAdicNumber.zero(p, a.absprec + b.v)
        return PAdicNumber.zero(p, b.absprec + a.v)
    N = min(a.N, b.N)
    return PAdicNumber(p, a.v + b.v, a.u * b.u % p ** N, N)


def _div(a: PAdicNumber, b: PAdicNumber) -> PAdicNumber:
    p = a.p
    if b.is_exact_zero():
        raise DivisionByZero("division by zero")
    if b.is_zero():
        raise PrecisionExhausted(f"divisor is indistinguishable from zero at O({p}^{b.N})")
    if a.is_zero():
        return PAdicNumber.zero(p, a.absprec - b.v)
    N = min(a.N, b.N)
    mod = p ** N
    return PAdicNumber(p, a.v - b.v, a.u * pow(b.u, -1, mod) % mod, N)


# -- roots of unity and n-th roots -----------------------------------------


def teichmueller(a: int, p: int, N: int = DEFAULT_PRECISION) -> PAdicNumber:
    """The (p-1)-st root of unity congruent to ``a`` mod p."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not 1 <= a <= p - 1:
        raise InvalidResidue(f"residue {a} not in [1, {p - 1}]")
    mod = p ** N
    x = a
    while True:
        y = pow(x, p, mod)
        if y == x:
            return PAdicNumber(p, 0, x, N)
        x = y


@dataclass(frozen=True)
class RootObstruction:
    """Certificate that an element has no n-th root in Q_p.

    ``kind`` is ``"valuation"`` (v(x) not divisible by n), ``"residue"`` (no
    solution mod p) or ``"hensel"`` (no solution mod ``p**depth``, the depth at
    which the strengthened Hensel criterion would certify a root).
    """

    kind: str
    n: int
    depth: int
    message: str


def _nth_power_residues(n: int, p: int) -> list[int]:
    return sorted({pow(a, n, p) for a in range(1, p)})


def _solutions_mod_prime(c: int, n: int, p: int) -> list[int]:
    if p < 5000:
        return [a for a in range(1, p) if pow(a, n, p) == c % p]
    from sympy.ntheory.residue_ntheory import nthroot_mod

    roots = nthroot_mod(c % p, n, p, all_roots=True)
    return sorted(int(r) for r in roots or [] if r % p)


def _seed_roots(c: int, n: int, p: int, depth: int) -> list[int]:
    """All a mod p^depth (units) with a^n = c mod p^depth, by digit extension."""
    sols = _solutions_mod_prime(c, n, p)
    for j in range(1, depth):
        mod = p ** (j + 1)
        pj = p ** j
        sols = [a + t * pj for a in sols for t in range(p) if pow(a + t * pj, n, mod) == c % mod]
        if not sols:
            break
    return sols


def _root_search(x: PAdicNumber, n: int):
    """Shared work of :func:`nth_root` and :func:`root_obstruction`.

    Returns ``(seed, obstruction)`` with exactly one of them not None.
    """
    p = x.p
    if x.v % n != 0:
        return None, RootObstruction(
            "valuation", n, 0, f"valuation {x.v} not divisible by {n}")
    k = vp_int(n, p)
    depth = 2 * k + 1
    if depth > x.N:
        raise PrecisionExhausted(
            f"need {depth} digits to decide {n}-th powers in Q_{p}, have {x.N}")
    c = x.u % p ** depth
    sols = _solutions_mod_prime(c, n, p)
    if not sols:
        shown = ""
        if p <= 50:
            shown = " = {" + ",".join(map(str, _nth_power_residues(n, p))) + "}"
        return None, RootObstruction(
            "residue", n, 1,
            f"{c % p} is not in the {n}-th powers mod {p}{shown}")
    seeds = _seed_roots(c, n, p, depth)
    if not seeds:
        return None, RootObstruction(
            "hensel", n, depth,
            f"{c} is not an {n}-th power mod {p}^{depth}")
    return seeds[0], None


def root_obstruction(x: PAdicNumber, n: int) -> RootObstruction | None:
    """Certificate that ``x`` has no n-th root, or None if a root exists."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1 or x.is_zero():
        return None
    return _root_search(x, n)[1]


def nth_root(x: PAdicNumber, n: int) -> PAdicNumber | None:
    """An n-th root of ``x`` in Q_p, or None when none exists.

    Output relative precision is ``x.N - v_p(n)``.  Raises
    PrecisionExhausted when ``x.N < 2 v_p(n) + 1`` so that a missing root is
    never reported by mistake.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return x
    p = x.p
    if x.is_zero():
        absprec = x.N if x.N == INF else -(-x.N // n)
        return PAdicNumber.zero(p, absprec)
    seed, obstruction = _root_search(x, n)
    if obstruction is not None:
        return None
    k = vp_int(n, p)
    m = n // p ** k
    M = x.N + k
    mod = p ** M
    c = x.u
    a = seed
    for _ in range(4 * M.bit_length() + 8):
        fa = (pow(a, n, mod) - c) % mod
        if fa == 0:
            break
        step = (fa // p ** k) * pow(m * pow(a, n - 1, mod), -1, mod)
        a = (a - step) % mod
    else:  # pragma: no cover - Newton converges quadratically from a certified seed
        raise PrecisionExhausted("Newton iteration failed to converge")
    Nout = x.N - k
    return PAdicNumber(p, x.v // n, a % p ** Nout, Nout)


# -- one-unit logarithm and exponential ------------------------------------


def _min_one_unit_valuation(p: int) -> int:
    return 2 if p == 2 else 1


def _last_needed_term(vy: int, A: int, p: int, loss) -> int:
    """Largest k whose term y^k/(...) may still matter at absolute precision A."""
    k = 1
    last = 0
    bound = (A + 64) // max(vy, 1) + 64
    while k <= bound:
        if k * vy - loss(k) < A:
            last = k
        k += 1
    return last


def one_unit_log(x: PAdicNumber) -> PAdicNumber:
    """p-adic logarithm on ``1 + p Z_p`` (``1 + 4 Z_2`` when p = 2).

    The result has the same absolute precision as ``x``.
    """
    p = x.p
    if x.is_zero() or x.v != 0:
        raise DomainViolation("logarithm needs a unit argument")
    y = x - 1
    vmin = _min_one_unit_valuation(p)
    if not y.is_zero() and y.v < vmin:
        raise DomainViolation(f"log(1+y) needs v(y) >= {vmin} for p = {p}")
    A = x.absprec
    if y.is_zero():
        return PAdicNumber.zero(p, A)
    Y = y.lift_int()
    K = _last_needed_term(y.v, A, p, lambda k: vp_int(k, p))
    mod = p ** A
    total = 0
    for k in range(1, K + 1):
        e = vp_int(k, p)
        t = pow(Y, k, p ** (A + e)) // p ** e
        t = t * pow(k // p ** e, -1, mod)
        total += t if k % 2 else -t
    return PAdicNumber.from_integer_mod(total, p, A)


def one_unit_exp(y: PAdicNumber) -> PAdicNumber:
    """p-adic exponential on ``p Z_p`` (``4 Z_2`` when p = 2)."""
    p = y.p
    vmin = _min_one_unit_valuation(p)
    if not y.is_zero() and y.v < vmin:
        raise DomainViolation(f"exp(y) needs v(y) >= {vmin} for p = {p}")
    A = y.absprec
    if A == INF:
        A = DEFAULT_PRECISION
    if y.is_zero():
        return PAdicNumber.from_integer_mod(1, p, A)
    Y = y.lift_int()
    K = _last_needed_term(y.v, A, p, lambda k: vp_factorial(k, p))
    mod = p ** A
    total = 1
    fact = 1
    for k in range(1, K + 1):
        fact *= k
        e = vp_factorial(k, p)
        t = pow(Y, k, p ** (A + e)) // p ** e
        total += t * pow(fact // p ** e, -1, mod)
    return PAdicNumber.from_integer_mod(total, p, A)
