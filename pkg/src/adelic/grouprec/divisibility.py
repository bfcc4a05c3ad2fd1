"""Deciding n-divisibility of matrices over local fields, up to a bound.

Unipotent matrices are divisible by every n (the binomial series gives the
roots).  For other matrices we look for an obstruction that any n-th root
would violate:

* ``determinant``: det(g) must be an n-th power in the base field;
* ``newton-slope``: every eigenvalue of g is an n-th power of an eigenvalue
  of the root, which lies in an extension of degree at most ``size``, so
  every slope of the Newton polygon of the characteristic polynomial times
  ``e * lcm(1..size) / n`` must be an integer.

Both tests are sound but not complete; when neither fires up to ``n_max``
the report says so instead of guessing.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .. import linalg, zpoly
from ..errors import DomainViolation, PrecisionExhausted
from ..localfield import LocalFieldElement
from ..padic import INF, PAdicNumber, root_obstruction
from .unipotent import UnipotentMatrix, unipotent_nth_root

_NAMES = {2: "square", 3: "cube"}


def _nth(n: int) -> str:
    return _NAMES.get(n, f"{n}-th")


def _ambient(g: Sequence[Sequence]):
    """(one, zero, p, e) for the entries of ``g``."""
    for row in g:
        for x in row:
            if isinstance(x, PAdicNumber):
                return PAdicNumber.from_rational(1, x.p, max(int(x.N), 1) if x.N != INF else 40), PAdicNumber.zero(x.p), x.p, 1
            if isinstance(x, LocalFieldElement):
                F = x.parent
                return F(1), F.zero(), F.p, F.e
    raise DomainViolation("matrix entries must be p-adic or local-field elements")


def _show(x) -> str:
    if isinstance(x, PAdicNumber) and not x.is_zero() and x.N != INF:
        mod = x.p ** x.N
        u = x.u if x.u <= mod // 2 else x.u - mod
        if abs(u) < 10 ** 6:
            return str(Fraction(u) * Fraction(x.p) ** x.v)
    if isinstance(x, LocalFieldElement):
        return f"<element of valuation {x.valuation()}>"
    return str(x)


def _valuation(x):
    return x.v if isinstance(x, PAdicNumber) else x.valuation()


@dataclass(frozen=True)
class DivisibilityCertificate:
    kind: str          # determinant | newton-slope
    n: int
    obstruction: str   # valuation | residue | hensel | slope
    message: str
    data: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        return {"kind": self.kind, "n": self.n, "obstruction": self.obstruction,
                "message": self.message, "data": self.data}


@dataclass
class DivisibilityReport:
    verdict: str
    n_max: int
    unipotent: bool
    certificate: DivisibilityCertificate | None = None
    roots: dict = field(default_factory=dict, repr=False)

    @property
    def divisible(self) -> bool:
        return self.certificate is None

    @property
    def certified(self) -> bool:
        """True when the verdict rests on constructed roots or a certificate."""
        return self.unipotent or self.certificate is not None

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "n_max": self.n_max, "unipotent": self.unipotent,
               "certified": self.certified}
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        if self.roots:
            out["roots_constructed"] = sorted(self.roots)
        if not self.certified:
            out["note"] = f"no certificate found up to n = {self.n_max}"
        return out


def _is_unipotent(g) -> UnipotentMatrix | None:
    try:
        return UnipotentMatrix.from_matrix(g)
    except DomainViolation:
        return None


def _determinant_obstruction(d, n: int, e: int):
    """(obstruction kind, message detail) or None."""
    if isinstance(d, PAdicNumber):
        obs = root_obstruction(d, n)
        if obs is None:
            return None
        if obs.kind == "residue":
            r = d.u % d.p
            return obs.kind, {"depth": 1}, f"{r} is not a{'n' if n > 3 else ''} {_nth(n)} mod {d.p}"
        return obs.kind, {"depth": obs.depth}, obs.message
    t = d.valuation() * e
    if t % n:
        return "valuation", {}, f"normalized valuation {t} not divisible by {n}"
    if t == 0:
        k = d.parent.residue_field
        r = d.residue()
        if not k.is_nth_power(r, n):
            return "residue", {"residue": list(r)}, f"residue {list(r)} is not an {n}-th power in F_{k.q}"
    return None


def _slopes(cp: Sequence) -> list[Fraction] | None:
    """Eigenvalue valuations from the Newton polygon, or None if undetermined."""
    points = []
    for i, c in enumerate(cp):
        if c.is_zero():
            if isinstance(c, PAdicNumber) and c.N == INF:
                continue
            if isinstance(c, LocalFieldElement) and c.absprec == INF:
                continue
            return None
        points.append((i, Fraction(_valuation(c))))
    if points[0][0] != 0:
        return None
    out = []
    for s, t, slope in zpoly.newton_sides(points):
        out.extend([-slope] * (t - s))
    return out


def _slope_obstruction(slopes: Sequence[Fraction], n: int, e: int, size: int):
    L = math.lcm(*range(1, size + 1))
    for s in slopes:
        if (s * e * L / n).denominator != 1:
            return s
    return None


def is_divisible(g: Sequence[Sequence], n_max: int = 30) -> DivisibilityReport:
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    size = len(g)
    if any(len(row) != size for row in g):
        raise ValueError("matrix must be square")
    one, zero, p, e = _ambient(g)
    u = _is_unipotent(g)
    if u is not None:
        roots = {}
        for n in range(2, n_max + 1):
            w = unipotent_nth_root(u, n)
            if not w ** n == u:
                raise PrecisionExhausted(f"{_nth(n)} root lost too much precision to verify")
            roots[n] = w
        return DivisibilityReport(f"divisible-up-to-{n_max}", n_max, True, None, roots)

    d = linalg.det(g, one, zero)
    if d.is_zero():
        if _valuation(d) == INF and d.absprec == INF:
            raise DomainViolation("matrix is singular")
        raise PrecisionExhausted("determinant indistinguishable from zero")
    slopes = _slopes(linalg.charpoly(g, one, zero))
    for n in range(2, n_max + 1):
        obs = _determinant_obstruction(d, n, e)
        if obs is not None:
            kind, data, detail = obs
            msg = f"det = {_show(d)} has no {_nth(n)} root: {detail}"
            data = {"det": _show(d), **data}
            cert = DivisibilityCertificate("determinant", n, kind, msg, data)
            return DivisibilityReport("not-divisible", n_max, False, cert)
        if slopes is not None:
            s = _slope_obstruction(slopes, n, e, size)
            if s is not None:
                msg = (f"an eigenvalue has valuation {s}, which is not n times a valuation "
                       f"in an extension of degree <= {size} (n = {n})")
                cert = DivisibilityCertificate("newton-slope", n, "slope", msg,
                                               {"slope": str(s), "slopes": [str(x) for x in slopes]})
                return DivisibilityReport("not-divisible", n_max, False, cert)
    return DivisibilityReport(f"divisible-up-to-{n_max}", n_max, False, None)


# -- independent re-verification --------------------------------------------


def _brute_force_no_root(c: int, n: int, p: int, depth: int) -> bool:
    mod = p ** depth
    return all(pow(a, n, mod) != c % mod for a in range(1, mod) if a % p)


def verify_certificate(g: Sequence[Sequence], cert: DivisibilityCertificate) -> bool:
    """Re-check a certificate along routes disjoint from :func:`is_divisible`.

    The determinant is recomputed by elimination; residue and Hensel claims
    are checked by exhausting the residues; a slope claim is checked by
    confirming the characteristic polynomial at ``size + 1`` points.
    """
    one, zero, p, e = _ambient(g)
    size = len(g)
    n = cert.n
    if cert.kind == "determinant":
        d = linalg.det_elimination(g, one, zero)
        if d.is_zero():
            return False
        if isinstance(d, PAdicNumber):
            if cert.obstruction == "valuation":
                return d.v % n != 0
            depth = 1 if cert.obstruction == "residue" else cert.data["depth"]
            if d.v % n or depth > d.N:
                return False
            return _brute_force_no_root(d.u, n, p, depth)
        t = d.valuation() * e
        if cert.obstruction == "valuation":
            return t % n != 0
        k = d.parent.residue_field
        r = d.residue()
        return t == 0 and all(k.pow(a, n) != tuple(r) for a in k.elements() if not k.is_zero(a))
    if cert.kind == "newton-slope":
        cp = linalg.charpoly(g, one, zero)
        for x in range(size + 1):
            shifted = [[(x if i == j else 0) - g[i][j] for j in range(size)] for i in range(size)]
            value = linalg.det_elimination(shifted, one, zero)
            poly = sum((c * x ** i for i, c in enumerate(cp[1:], 1)), cp[0])
            if not (value - poly).is_zero():
                return False
        slopes = _slopes(cp)
        if slopes is None or Fraction(cert.data["slope"]) not in slopes:
            return False
        L = math.lcm(*range(1, size + 1))
        return (Fraction(cert.data["slope"]) * e * L / n).denominator != 1
    return False
