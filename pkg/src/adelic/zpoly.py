"""Integer polynomials as coefficient lists, constant term first."""
from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Sequence

import sympy

from .errors import InvalidPolynomial
from .padic import INF, vp_int

_X = sympy.Symbol("x")


def parse_poly(text) -> list[int]:
    """Read ``"x^8 - 15"`` or ``"[-15,0,...,1]"`` (or a list) into coefficients."""
    if isinstance(text, (list, tuple)):
        coeffs = [int(c) for c in text]
    else:
        s = str(text).strip().replace("−", "-")
        if s.startswith("["):
            try:
                coeffs = [int(c) for c in json.loads(s)]
            except (ValueError, TypeError) as exc:
                raise InvalidPolynomial(f"bad coefficient list {text!r}") from exc
        else:
            s = re.sub(r"(\d)\s*x", r"\1*x", s.replace("^", "**"))
            try:
                expr = sympy.sympify(s, locals={"x": _X})
                poly = sympy.Poly(expr, _X)
            except (sympy.SympifyError, sympy.PolynomialError, TypeError, SyntaxError) as exc:
                raise InvalidPolynomial(f"cannot parse {text!r}") from exc
            if not all(c.is_integer for c in poly.all_coeffs()):
                raise InvalidPolynomial(f"{text!r} does not have integer coefficients")
            coeffs = [int(c) for c in reversed(poly.all_coeffs())]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs or (len(coeffs) == 1 and coeffs[0] == 0):
        raise InvalidPolynomial("zero polynomial")
    return coeffs


def to_sympy(coeffs: Sequence[int]) -> sympy.Poly:
    return sympy.Poly(list(reversed(coeffs)), _X)


def format_poly(coeffs: Sequence[int]) -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if i == 0:
            body = str(a)
        else:
            mono = "x" if i == 1 else f"x^{i}"
            body = mono if a == 1 else f"{a}*{mono}"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def trim(a: list[int]) -> list[int]:
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def add(a: Sequence[int], b: Sequence[int]) -> list[int]:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def sub(a: Sequence[int], b: Sequence[int]) -> list[int]:
    return add(a, [-c for c in b])


def mul(a: Sequence[int], b: Sequence[int], mod: int | None = None) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    if mod is not None:
        out = [c % mod for c in out]
    return trim(out)


def divmod_monic(a: Sequence[int], b: Sequence[int], mod: int | None = None) -> tuple[list[int], list[int]]:
    if b[-1] != 1:
        raise ValueError("divisor must be monic")
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [0], trim(r)
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        if mod is not None:
            c %= mod
        if c:
            q[k - db] = c
            for j in range(db + 1):
                r[k - db + j] -= c * b[j]
    r = r[:db] if db else [0]
    if mod is not None:
        r = [c % mod for c in r]
        q = [c % mod for c in q]
    return trim(q), trim(r)


def taylor_shift(a: Sequence[int], c: int) -> list[int]:
    """Coefficients of a(x + c)."""
    out = list(a)
    n = len(out)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            out[j] += c * out[j + 1]
    return out


def content_valuation(a: Sequence[int], p: int):
    return min((vp_int(c, p) for c in a if c), default=INF)


def phi_expansion(f: Sequence[int], phi: Sequence[int]) -> list[list[int]]:
    """Digits a_i with ``f = sum a_i phi^i`` and ``deg a_i < deg phi``."""
    digits = []
    cur = list(f)
    while True:
        q, r = divmod_monic(cur, phi)
        digits.append(r)
        if q == [0]:
            break
        cur = q
    return digits


def lower_hull(points: Sequence[tuple[int, int]]) -> list[tuple[int, int]]:
    """Vertices of the lower convex hull, left to right."""
    pts = sorted(points)
    hull: list[tuple[int, int]] = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] if it lies on or above the segment hull[-2] -> pt
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


def newton_sides(points: Sequence[tuple[int, int]]) -> list[tuple[int, int, Fraction]]:
    """Sides ``(start, end, slope)`` of the lower hull of finite points."""
    hull = lower_hull(points)
    return [
        (x1, x2, Fraction(y2 - y1, x2 - x1))
        for (x1, y1), (x2, y2) in zip(hull, hull[1:])
    ]


def is_eisenstein(a: Sequence[int], p: int) -> bool:
    return (a[-1] == 1 and all(c % p == 0 for c in a[:-1])
            and a[0] % (p * p) != 0)
