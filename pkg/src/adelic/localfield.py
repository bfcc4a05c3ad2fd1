"""Finite extensions of Q_p presented as an unramified step followed by an
Eisenstein step.

A field ``F`` with invariants ``(p, e, f)`` is ``U(pi)`` where ``U = Q_p(w)``
with ``w`` a root of a monic degree-``f`` polynomial irreducible mod p and
``pi`` a root of a degree-``e`` Eisenstein polynomial over ``O_U``.  The
power basis ``pi^i w^j`` (``i < e``, ``j < f``) is a Z_p-basis of ``O_F``.

Elements are stored as ``p^scale * X`` with X integral and known modulo
``pi^prec``; precision is counted in pi-adic digits so that multiplying by
elements of fractional valuation does not round it away.  A product is
known to ``min(prec_x + v_pi(y), prec_y + v_pi(x))``, a sum to the smaller
absolute precision.  Relative precision is capped at ``e * N``.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence, Union

from . import ffield
from .errors import DivisionByZero, DomainViolation, FieldMismatch, PrecisionExhausted, Unsupported
from .padic import DEFAULT_PRECISION, INF, PAdicNumber, is_prime, vp_int

Block = list  # e lists of f ints


def _vp_list(c: Sequence[int], p: int):
    return min((vp_int(x, p) for x in c if x), default=INF)


class LocalField:
    """A finite extension of Q_p as an unramified-then-Eisenstein tower."""

    def __init__(
        self,
        p: int,
        f: int = 1,
        e: int = 1,
        unramified_poly: Sequence[int] | None = None,
        eisenstein_poly: Sequence | None = None,
        N: int = DEFAULT_PRECISION,
    ):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if f < 1 or e < 1:
            raise ValueError("ramification and residue degrees must be positive")
        self.p, self.f, self.e, self.N = p, f, e, N
        if unramified_poly is None:
            unramified_poly = ffield.find_irreducible(p, f)
        upoly = [int(c) for c in unramified_poly]
        if len(upoly) != f + 1 or upoly[-1] != 1:
            raise ValueError(f"unramified polynomial must be monic of degree {f}")
        if not ffield.fp_is_irreducible(upoly, p):
            raise ValueError(f"{upoly} is not irreducible mod {p}")
        self.unramified_poly = tuple(upoly)

        if eisenstein_poly is None:
            eisenstein_poly = [-p] + [0] * (e - 1) + [1]
        if len(eisenstein_poly) != e + 1:
            raise ValueError(f"Eisenstein polynomial must have degree {e}")
        coeffs = []
        for c in eisenstein_poly:
            if isinstance(c, (int, PAdicNumber)):
                c = [c]
            c = [x.lift_int() if isinstance(x, PAdicNumber) else int(x) for x in c]
            if len(c) > f:
                raise ValueError("Eisenstein coefficient has too many unramified coordinates")
            coeffs.append(c + [0] * (f - len(c)))
        if coeffs[-1] != [1] + [0] * (f - 1):
            raise ValueError("Eisenstein polynomial must be monic")
        for c in coeffs[:-1]:
            if any(x % p for x in c):
                raise ValueError("non-leading Eisenstein coefficients must be divisible by p")
        if all((x // p) % p == 0 for x in coeffs[0]):
            raise ValueError("Eisenstein constant term must have valuation exactly 1")
        self.eisenstein_poly = tuple(tuple(c) for c in coeffs)
        self._eis = [list(c) for c in coeffs[:-1]]

    # -- identity -----------------------------------------------------------

    def _key(self):
        return (self.p, self.f, self.e, self.unramified_poly, self.eisenstein_poly, self.N)

    def __eq__(self, other) -> bool:
        return isinstance(other, LocalField) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __str__(self) -> str:
        return f"Q_{self.p}(f={self.f}, e={self.e})"

    def __repr__(self) -> str:
        return (f"LocalField(p={self.p}, f={self.f}, e={self.e}, "
                f"unramified_poly={list(self.unramified_poly)}, "
                f"eisenstein_poly={[list(c) for c in self.eisenstein_poly]})")

    def invariants(self) -> tuple[int, int, int]:
        return (self.p, self.e, self.f)

    @property
    def degree(self) -> int:
        return self.e * self.f

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "f": self.f,
            "unramified_poly": list(self.unramified_poly),
            "e": self.e,
            "eisenstein_poly": [[str(x) for x in c] for c in self.eisenstein_poly],
            "N": self.N,
        }

    @classmethod
    def from_json(cls, d: dict) -> LocalField:
        return cls(
            int(d["p"]), int(d["f"]), int(d["e"]),
            [int(c) for c in d["unramified_poly"]],
            [[int(x) for x in c] for c in d["eisenstein_poly"]],
            int(d.get("N", DEFAULT_PRECISION)),
        )

    # -- raw coordinate arithmetic ----------------------------------------

    def _umul(self, a: list[int], b: list[int], mod: int) -> list[int]:
        f = self.f
        if f == 1:
            return [a[0] * b[0] % mod]
        out = [0] * (2 * f - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        up = self.unramified_poly
        for k in range(2 * f - 2, f - 1, -1):
            c = out[k]
            if c:
                for j in range(f):
                    out[k - f + j] -= c * up[j]
        return [x % mod for x in out[:f]]

    def _blocks(self, coeffs: Sequence[int]) -> Block:
        f = self.f
        return [list(coeffs[i * f:(i + 1) * f]) for i in range(self.e)]

    def _mul_coeffs(self, a: Sequence[int], b: Sequence[int], mod: int) -> tuple[int, ...]:
        e, f = self.e, self.f
        A, B = self._blocks(a), self._blocks(b)
        prod = [[0] * f for _ in range(2 * e - 1)]
        for i in range(e):
            if not any(A[i]):
                continue
            for j in range(e):
                if not any(B[j]):
                    continue
                t = self._umul(A[i], B[j], mod)
                row = prod[i + j]
                for k in range(f):
                    row[k] += t[k]
        for k in range(2 * e - 2, e - 1, -1):
            c = [x % mod for x in prod[k]]
            if any(c):
                for i in range(e):
                    t = self._umul(c, self._eis[i], mod)
                    row = prod[k - e + i]
                    for m in range(f):
                        row[m] -= t[m]
        return tuple(x % mod for row in prod[:e] for x in row)

    # -- element constructors --------------------------------------------

    def element(self, coeffs: Sequence[int], scale: int = 0, prec: int | None = None) -> LocalFieldElement:
        """``p^scale * sum coeffs[i*f+j] pi^i w^j`` with coordinates mod p^prec."""
        if len(coeffs) != self.degree:
            raise ValueError(f"expected {self.degree} coordinates")
        prec = self.N if prec is None else prec
        return LocalFieldElement._make(self, scale, tuple(int(c) for c in coeffs), self.e * prec)

    def __call__(self, x) -> LocalFieldElement:
        if isinstance(x, LocalFieldElement):
            if x.parent != self:
                raise FieldMismatch("element belongs to a different field")
            return x
        if isinstance(x, PAdicNumber):
            return self.from_padic(x)
        if isinstance(x, (int, Fraction)):
            return self.from_padic(PAdicNumber.from_rational(x, self.p, self.N))
        raise TypeError(f"cannot convert {type(x).__name__} to {self}")

    def from_padic(self, x: PAdicNumber) -> LocalFieldElement:
        if x.p != self.p:
            raise FieldMismatch("prime mismatch")
        zeros = [0] * (self.degree - 1)
        if x.is_zero():
            absprec = self.N if x.N == INF else x.N
            return LocalFieldElement._make(self, 0, (0,) + tuple(zeros), self.e * absprec)
        return LocalFieldElement._make(self, x.v, (x.u,) + tuple(zeros), self.e * min(x.N, self.N))

    def from_coordinates(self, coords: Sequence[PAdicNumber]) -> LocalFieldElement:
        if len(coords) != self.degree:
            raise ValueError(f"expected {self.degree} coordinates")
        absprec = min(c.absprec for c in coords)
        if absprec == INF:
            absprec = self.N
        nonzero = [c.v for c in coords if not c.is_zero()]
        scale = min(nonzero) if nonzero else absprec
        scale = min(scale, absprec)
        ints = []
        for c in coords:
            if c.is_zero():
                ints.append(0)
            else:
                ints.append(c.u * self.p ** (c.v - scale))
        return LocalFieldElement._make(self, scale, tuple(ints), self.e * min(int(absprec - scale), self.N))

    def zero(self) -> LocalFieldElement:
        return self(0)

    def one(self) -> LocalFieldElement:
        return self(1)

    def uniformizer(self) -> LocalFieldElement:
        if self.e == 1:
            return self.element([-x for x in self._eis[0]])
        coeffs = [0] * self.degree
        coeffs[self.f] = 1
        return self.element(coeffs)

    def generator(self) -> LocalFieldElement:
        """The unramified generator w (equal to 0 when f = 1 with modulus x)."""
        coeffs = [0] * self.degree
        if self.f > 1:
            coeffs[1] = 1
        else:
            coeffs[0] = -self.unramified_poly[0]
        return self.element(coeffs)

    def random_integral(self, rng: random.Random, prec: int | None = None) -> LocalFieldElement:
        prec = self.N if prec is None else prec
        return self.element([rng.randrange(self.p ** prec) for _ in range(self.degree)], 0, prec)

    def random_unit(self, rng: random.Random, prec: int | None = None) -> LocalFieldElement:
        while True:
            x = self.random_integral(rng, prec)
            if x.valuation() == 0:
                return x

    # -- residue field ------------------------------------------------------

    @cached_property
    def residue_field(self) -> ffield.GF:
        return ffield.GF(self.p, self.unramified_poly)

    def lift_residue(self, r: Sequence[int]) -> LocalFieldElement:
        coeffs = [0] * self.degree
        for j, c in enumerate(r):
            coeffs[j] = int(c)
        return self.element(coeffs)

    def teichmueller(self, r: Sequence[int]) -> LocalFieldElement:
        """The (q-1)-st root of unity with residue ``r``."""
        k = self.residue_field
        r = k.elem(r)
        if k.is_zero(r):
            raise DomainViolation("zero residue has no Teichmueller lift")
        x = self.lift_residue(r)
        q = k.q
        for _ in range(self.N + 2):
            y = x ** q
            if y == x and y.prec >= self.e * self.N:
                return y
            x = y
        return x

    def eisenstein_constant_class(self) -> tuple:
        """Residue of ``-a_0/p``; pi^e equals p times a unit with this residue."""
        a0 = self._eis[0]
        return self.residue_field.elem([(-c // self.p) for c in a0])

    # -- polynomial roots ---------------------------------------------------

    def _poly_eval(self, poly: Sequence, x: LocalFieldElement) -> LocalFieldElement:
        acc = self(0) if not poly else self._coerce_coeff(poly[-1])
        for c in reversed(poly[:-1]):
            acc = acc * x + self._coerce_coeff(c)
        return acc

    def _coerce_coeff(self, c) -> LocalFieldElement:
        if isinstance(c, LocalFieldElement):
            return c
        return self(c)

    def find_root(self, poly: Sequence, max_depth: int | None = None) -> LocalFieldElement | None:
        """A root in ``O_F`` of a monic integral polynomial, or None if there is none."""
        found = self.find_roots(poly, max_depth, limit=1)
        return found[0] if found else None

    def find_roots(self, poly: Sequence, max_depth: int | None = None, limit: int | None = None) -> list[LocalFieldElement]:
        """Distinct roots in ``O_F`` of a monic polynomial with integral coefficients.

        Partial roots are extended one pi-adic digit at a time.  A branch is
        certified once ``v(g(a)) > 2 v(g'(a))`` with ``v(g'(a))`` already
        fixed by the known digits; the branch then holds exactly one root,
        which Newton iteration refines.  Raises PrecisionExhausted when some
        branch is still undecided at ``max_depth``.
        """
        poly = list(poly)
        if len(poly) < 2:
            raise ValueError("constant polynomial has no roots")
        deriv = [self._coerce_coeff(c) * i for i, c in enumerate(poly)][1:]
        e = self.e
        depth_cap = max_depth if max_depth is not None else e * (self.N // 2)
        pi = self.uniformizer()
        digits = None  # pi-adic digit set, built only if some branch survives depth 1
        partial = [self(0)]
        pi_pow = self(1)
        roots: list[LocalFieldElement] = []
        for depth in range(1, depth_cap + 1):
            candidates = []
            if depth == 1 and all(isinstance(c, int) for c in poly):
                k = self.residue_field
                fbar = ffield.poly_from_ints(k, [c % self.p for c in poly])
                candidates = [self.lift_residue(r) for r in ffield.roots(k, fbar)]
                partial = []
            if partial and digits is None:
                digits = [self.lift_residue(r) for r in self.residue_field.elements()]
            for a in partial:
                for d in digits:
                    cand = a + d * pi_pow
                    if self._poly_eval(poly, cand).valuation() * e >= depth:
                        candidates.append(cand)
            pi_pow = pi_pow * pi
            partial = []
            for a in candidates:
                ga = self._poly_eval(poly, a)
                dv = self._poly_eval(deriv, a).valuation()
                if dv * e < depth and ga.valuation() > 2 * dv:
                    roots.append(self._newton(poly, deriv, a))
                    if limit is not None and len(roots) >= limit:
                        return roots
                else:
                    partial.append(a)
            if not partial:
                return roots
        raise PrecisionExhausted(f"root search undecided at pi-adic depth {depth_cap}")

    def _newton(self, poly, deriv, a: LocalFieldElement) -> LocalFieldElement:
        for _ in range(4 * (self.N * self.e).bit_length() + 8):
            ga = self._poly_eval(poly, a)
            if ga.is_zero():
                return a
            a = a - ga / self._poly_eval(deriv, a)
        return a

    # -- roots of unity, units --------------------------------------------

    @cached_property
    def _mu_data(self) -> tuple[int, LocalFieldElement]:
        p, e = self.p, self.e
        m = 0
        zeta = self(1)
        while True:
            nxt = m + 1
            ram = p ** (nxt - 1) * (p - 1)
            if e % ram or ram > self.degree:
                break
            cyclo = [0] * (p ** nxt + 1)
            for i in range(p):
                cyclo[i * p ** (nxt - 1)] = 1
            if nxt == 1 and p == 2:
                root = self(-1)
            else:
                root = self.find_root(cyclo)
            if root is None:
                break
            m, zeta = nxt, root
        return p ** m, zeta

    def mu_p_power(self) -> int:
        """Order of the group of p-power roots of unity in this field."""
        return self._mu_data[0]

    def mu_generator(self) -> LocalFieldElement:
        return self._mu_data[1]

    def unit_group_structure(self) -> UnitGroupDescription:
        return UnitGroupDescription(self.residue_field.q - 1, self.degree, self.mu_p_power())

    @property
    def log_domain_level(self) -> int:
        """Smallest c with exp(log(u)) = u on ``1 + pi^c O``: c > e/(p-1)."""
        return self.e // (self.p - 1) + 1

    def torsion_covers_one_units(self) -> bool:
        """Whether mu_{p^inf} maps onto (1 + pi O)/(1 + pi^c O)."""
        c = self.log_domain_level
        return self.mu_p_power() == self.residue_field.q ** (c - 1)

    # -- tame isomorphism -------------------------------------------------

    def is_isomorphic_tame(self, other: LocalField) -> str:
        """'isomorphic', 'non-isomorphic' or 'unsupported' (wild ramification)."""
        if self.invariants() != other.invariants():
            return "non-isomorphic"
        if self.e == 1:
            return "isomorphic"
        if self.e % self.p == 0:
            return "unsupported"
        k1, k2 = self.residue_field, other.residue_field
        c1, c2 = self.eisenstein_constant_class(), other.eisenstein_constant_class()
        # carry c1 into k2 by sending the generator of k1 to a root of k1's modulus
        images = ffield.roots(k2, ffield.poly_from_ints(k2, list(self.unramified_poly)))
        t = images[0]
        image = k2.zero
        power = k2.one
        for coeff in c1:
            image = k2.add(image, k2.mul(k2.from_int(coeff), power))
            power = k2.mul(power, t)
        for j in range(self.f):
            ratio = k2.div(k2.frobenius(image, j), c2)
            if k2.is_nth_power(ratio, self.e):
                return "isomorphic"
        return "non-isomorphic"


def is_isomorphic_tame(F: LocalField, G: LocalField) -> str:
    return F.is_isomorphic_tame(G)


def invariants(F: LocalField) -> tuple[int, int, int]:
    return F.invariants()


def unit_group_structure(F: LocalField) -> UnitGroupDescription:
    return F.unit_group_structure()


def mu_p_power(F: LocalField) -> int:
    return F.mu_p_power()


@dataclass(frozen=True)
class UnitGroupDescription:
    """O_F^* ~ (cyclic of order q-1) x Z_p^(ef) x mu_{p^inf}."""

    cyclic_prime_to_p_order: int
    free_rank: int
    mu_p_power_order: int

    def to_json(self) -> dict:
        return {
            "cyclic_prime_to_p_order": self.cyclic_prime_to_p_order,
            "free_rank": self.free_rank,
            "mu_p_power_order": self.mu_p_power_order,
        }


class LocalFieldElement:
    """``p^scale * X`` where X is an integral combination of the power basis
    known modulo ``pi^prec``.

    In coordinates, knowing X mod ``pi^(a*e + b)`` means the coordinates of
    ``pi^i w^j`` are known mod ``p^(a+1)`` for ``i < b`` and mod ``p^a``
    otherwise.  X is normalized so that not every coordinate is divisible by
    p, hence its pi-adic valuation lies in ``[0, e)``.
    """

    __slots__ = ("parent", "scale", "coeffs", "prec")

    def __init__(self, parent: LocalField, scale: int, coeffs: tuple, prec: int):
        self.parent = parent
        self.scale = scale
        self.coeffs = coeffs
        self.prec = prec

    @staticmethod
    def _reduce(parent: LocalField, coeffs, prec: int) -> tuple:
        p, e, f = parent.p, parent.e, parent.f
        a, b = divmod(prec, e)
        lo, hi = p ** a, p ** (a + 1)
        return tuple(c % (hi if idx // f < b else lo) for idx, c in enumerate(coeffs))

    @classmethod
    def _make(cls, parent: LocalField, scale: int, coeffs: tuple, prec: int) -> LocalFieldElement:
        p, e = parent.p, parent.e
        zeros = (0,) * parent.degree
        if prec <= 0:
            return cls(parent, scale + prec // e, zeros, prec % e)
        coeffs = cls._reduce(parent, coeffs, prec)
        if not any(coeffs):
            return cls(parent, scale + prec // e, zeros, prec % e)
        k = _vp_list(coeffs, p)
        if k:
            coeffs = tuple(c // p ** k for c in coeffs)
            scale += k
            prec -= e * k
        cap = e * parent.N
        if prec > cap:
            prec = cap
            coeffs = cls._reduce(parent, coeffs, prec)
        return cls(parent, scale, coeffs, prec)

    def _pi_val(self) -> int:
        """pi-adic valuation of the normalized part X (in ``[0, e)``)."""
        F = self.parent
        best = INF
        for i, block in enumerate(F._blocks(self.coeffs)):
            vb = _vp_list(block, F.p)
            if vb != INF:
                best = min(best, F.e * vb + i)
        return best

    # -- queries ----------------------------------------------------------

    @property
    def absprec(self) -> Fraction:
        """Absolute precision in units of v(p)."""
        return self.scale + Fraction(self.prec, self.parent.e)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def valuation(self) -> Union[Fraction, float]:
        """Valuation normalized so that v(p) = 1."""
        if self.is_zero():
            return INF
        return self.scale + Fraction(self._pi_val(), self.parent.e)

    def is_unit(self) -> bool:
        return self.valuation() == 0

    def residue(self) -> tuple:
        v = self.valuation()
        F = self.parent
        if v < 0:
            raise DomainViolation("residue of a non-integral element")
        if v > 0:
            return F.residue_field.zero
        return F.residue_field.elem(self.coeffs[:F.f])

    @property
    def coordinates(self) -> list[PAdicNumber]:
        F = self.parent
        p = F.p
        a, b = divmod(self.prec, F.e)
        out = []
        for idx, c in enumerate(self.coeffs):
            m = a + 1 if idx // F.f < b else a
            if c == 0:
                out.append(PAdicNumber.zero(p, self.scale + m))
            else:
                k = vp_int(c, p)
                out.append(PAdicNumber(p, self.scale + k, (c // p ** k) % p ** (m - k), m - k))
        return out

    def to_json(self) -> dict:
        return {"scale": self.scale, "coeffs": [str(c) for c in self.coeffs], "prec": self.prec}

    @classmethod
    def from_json(cls, parent: LocalField, d: dict) -> LocalFieldElement:
        return cls._make(parent, int(d["scale"]), tuple(int(c) for c in d["coeffs"]), int(d["prec"]))

    def __repr__(self) -> str:
        return f"LocalFieldElement({self.parent}, scale={self.scale}, coeffs={list(self.coeffs)}, prec={self.prec})"

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> LocalFieldElement:
        if isinstance(other, LocalFieldElement):
            if other.parent != self.parent:
                raise FieldMismatch("elements of different local fields")
            return other
        if isinstance(other, (int, Fraction, PAdicNumber)):
            return self.parent(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.parent
        p, e = F.p, F.e
        s = min(self.scale, other.scale)
        prec = min(self.prec + e * (self.scale - s), other.prec + e * (other.scale - s))
        a = p ** (self.scale - s)
        b = p ** (other.scale - s)
        coeffs = tuple(x * a + y * b for x, y in zip(self.coeffs, other.coeffs))
        return LocalFieldElement._make(F, s, coeffs, prec)

    __radd__ = __add__

    def __neg__(self) -> LocalFieldElement:
        return LocalFieldElement._make(self.parent, self.scale, tuple(-c for c in self.coeffs), self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.parent
        e = F.e
        zeros = (0,) * F.degree
        if self.is_zero() or other.is_zero():
            # absolute pi-adic precision of the product
            if self.is_zero() and other.is_zero():
                absp = e * (self.scale + other.scale) + self.prec + other.prec
            elif self.is_zero():
                absp = e * (self.scale + other.scale) + self.prec + other._pi_val()
            else:
                absp = e * (self.scale + other.scale) + other.prec + self._pi_val()
            return LocalFieldElement._make(F, 0, zeros, absp)
        t1, t2 = self._pi_val(), other._pi_val()
        prec = min(self.prec + t2, other.prec + t1)
        work = -(-max(self.prec, other.prec) // e) + 1
        coeffs = F._mul_coeffs(self.coeffs, other.coeffs, F.p ** work)
        return LocalFieldElement._make(F, self.scale + other.scale, coeffs, prec)

    __rmul__ = __mul__

    def _unit_inverse(self) -> LocalFieldElement:
        F = self.parent
        k = F.residue_field
        y = F.lift_residue(k.inv(self.residue()))
        for _ in range(2 * (F.e * F.N).bit_length() + 4):
            err = 1 - self * y
            if err.is_zero():
                break
            y = y + y * err
        else:
            raise PrecisionExhausted("Newton inversion did not converge")
        return LocalFieldElement._make(F, y.scale, y.coeffs, min(y.prec, self.prec))

    def inverse(self) -> LocalFieldElement:
        F = self.parent
        if self.is_zero():
            if self.absprec >= F.N:
                raise DivisionByZero("inverse of zero")
            raise PrecisionExhausted("element indistinguishable from zero")
        X = LocalFieldElement(F, 0, self.coeffs, self.prec)
        t = X._pi_val()
        if t == 0:
            inv = X._unit_inverse()
            return LocalFieldElement._make(F, inv.scale - self.scale, inv.coeffs, inv.prec)
        # X = pi^t W; X pi^(e-t) = p Y with Y a unit, so 1/X = pi^(e-t) / (p Y)
        shift = F.uniformizer() ** (F.e - t)
        Y = X * shift
        if Y.scale != 1:
            raise PrecisionExhausted("could not isolate the unit part")
        Yunit = LocalFieldElement(F, 0, Y.coeffs, Y.prec)
        inv = shift * Yunit._unit_inverse()
        return LocalFieldElement._make(F, inv.scale - self.scale - 1, inv.coeffs, inv.prec)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n: int) -> LocalFieldElement:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = self.parent(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        try:
            other = self._coerce(other)
        except FieldMismatch:
            return False
        if other is NotImplemented:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def identical(self, other: LocalFieldElement) -> bool:
        return (self.parent == other.parent and self.scale == other.scale
                and self.coeffs == other.coeffs and self.prec == other.prec)


# -- logarithm and exponential on one-units --------------------------------


def _series_bound(vy: Fraction, A: int, p: int, loss) -> int:
    last = 0
    k = 1
    limit = int((A + 64) / vy) + 64
    while k <= limit:
        if k * vy - loss(k) < A:
            last = k
        k += 1
    return last


def one_unit_log(x: LocalFieldElement) -> LocalFieldElement:
    """log(1 + y) for v(y) > 0, as a truncated series."""
    F = x.parent
    p = F.p
    y = x - 1
    if y.is_zero():
        return y
    vy = y.valuation()
    if vy <= 0:
        raise DomainViolation("logarithm needs a one-unit")
    A = y.absprec if y.absprec < x.absprec else x.absprec
    K = _series_bound(vy, A, p, lambda k: vp_int(k, p))
    total = F(0)
    power = F(1)
    for k in range(1, K + 1):
        power = power * y
        term = power / k
        total = total + term if k % 2 else total - term
    return total


def one_unit_exp(y: LocalFieldElement) -> LocalFieldElement:
    """exp(y) for v(y) > 1/(p-1)."""
    F = y.parent
    p = F.p
    if y.is_zero():
        return F(1) + y
    vy = y.valuation()
    if vy <= Fraction(1, p - 1):
        raise DomainViolation(f"exp needs v(y) > 1/{p - 1}")
    A = y.absprec

    def loss(k):
        total = 0
        while k:
            k //= p
            total += k
        return total

    K = _series_bound(vy, A, p, loss)
    total = F(1)
    power = F(1)
    fact = 1
    for k in range(1, K + 1):
        power = power * y
        fact *= k
        total = total + power / fact
    return total


@dataclass(frozen=True)
class UnitParts:
    """``x = pi^exponent * teich(residue) * zeta^torsion_index * exp(log_part)``."""

    exponent: int
    residue: tuple
    torsion_index: int
    log_part: LocalFieldElement

    @property
    def log_coordinates(self) -> list[PAdicNumber]:
        return self.log_part.coordinates


def decompose_unit(x: LocalFieldElement) -> UnitParts:
    """Split a nonzero element into ideal, Teichmueller, torsion and free parts."""
    F = x.parent
    if x.is_zero():
        raise DomainViolation("zero has no multiplicative decomposition")
    if not F.torsion_covers_one_units():
        raise Unsupported(
            f"{F}: p-power roots of unity do not reach the log domain 1 + pi^{F.log_domain_level}")
    k = int(x.valuation() * F.e)
    u = x / F.uniformizer() ** k if k else x
    r = u.residue()
    one_unit = u / F.teichmueller(r)
    c = F.log_domain_level
    zeta = F.mu_generator()
    order = F.mu_p_power()
    z_inv = zeta.inverse()
    cur = one_unit
    for j in range(order):
        if (cur - 1).valuation() * F.e >= c:
            return UnitParts(k, tuple(r), j, one_unit_log(cur))
        cur = cur * z_inv
    raise PrecisionExhausted("no torsion representative reached the log domain")


def recompose_unit(F: LocalField, parts: UnitParts) -> LocalFieldElement:
    x = F.uniformizer() ** parts.exponent * F.teichmueller(parts.residue)
    if parts.torsion_index:
        x = x * F.mu_generator() ** parts.torsion_index
    return x * one_unit_exp(parts.log_part)
