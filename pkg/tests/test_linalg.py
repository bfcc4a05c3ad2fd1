import random
from fractions import Fraction

import pytest
import sympy

from adelic import linalg
from adelic.errors import PrecisionExhausted
from adelic.padic import PAdicNumber

ONE, ZERO = Fraction(1), Fraction(0)


def _rand(rng, n):
    return [[Fraction(rng.randint(-9, 9)) for _ in range(n)] for _ in range(n)]


def test_charpoly_matches_sympy():
    rng = random.Random(0)
    lam = sympy.Symbol("lam")
    for _ in range(60):
        n = rng.randint(1, 5)
        A = _rand(rng, n)
        want = sympy.Matrix(A).charpoly(lam).all_coeffs()
        assert linalg.charpoly(A, ONE, ZERO) == [Fraction(int(c)) for c in reversed(want)]


def test_two_determinant_routes_agree():
    rng = random.Random(1)
    for _ in range(100):
        A = _rand(rng, rng.randint(1, 5))
        assert linalg.det(A, ONE, ZERO) == linalg.det_elimination(A, ONE, ZERO)


def test_inverse():
    rng = random.Random(2)
    for _ in range(40):
        A = _rand(rng, rng.randint(1, 4))
        if linalg.det(A, ONE, ZERO) == 0:
            continue
        assert linalg.mul(A, linalg.inverse(A, ONE, ZERO)) == linalg.identity(len(A))


def test_padic_inverse_and_singular():
    p = 5
    q = lambda x: PAdicNumber.from_rational(x, p, 30)
    A = [[q(5), q(1)], [q(2), q(3)]]
    inv = linalg.inverse(A, q(1), PAdicNumber.zero(p))
    assert linalg.equal(linalg.mul(A, inv), [[q(1), q(0)], [q(0), q(1)]])
    with pytest.raises(PrecisionExhausted):
        linalg.inverse([[q(1), q(2)], [q(2), q(4)]], q(1), PAdicNumber.zero(p))
