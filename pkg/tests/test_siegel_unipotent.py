import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from adelic.errors import DomainViolation, PrecisionExhausted
from adelic.grouprec import (
    UnipotentMatrix,
    binomial_root_coefficient,
    binomial_root_valuation,
    root_budget,
    siegel_budget,
    siegel_decompose,
    unipotent_nth_root,
)
from adelic.padic import INF, PAdicNumber


def P(x, p, N=40):
    return PAdicNumber.from_rational(Fraction(x), p, N)


# -- Siegel ------------------------------------------------------------------


def test_siegel_square_example():
    z = Fraction(7, 3)
    dec = siegel_decompose(z, 2)
    # z = -(z/2)^2 + ((z/2 + 1)^2 - 1^2)
    assert sorted(dec.terms) == sorted([(-1, z / 2), (1, z / 2 + 1), (-1, 1)])
    assert dec.evaluate() == z and dec.check()


def test_siegel_six_cubed():
    dec = siegel_decompose(Fraction(6), 3)
    assert dec.terms == ((1, Fraction(1)), (-2, Fraction(2)), (2, 1), (1, Fraction(3)), (-1, 2))
    assert sum(c * sympy.Rational(str(b)) ** 3 for c, b in dec.terms) == 6


def test_siegel_padic_budget():
    z = P(6, 5)
    dec = siegel_decompose(z, 4)
    assert dec.budget == 40 - 0  # v_5(4!) = 0
    assert dec.check()
    z2 = P(6, 2)
    dec2 = siegel_decompose(z2, 4)
    # v_2(4!) = 3, v(a) = 1 - 3 = -2, three extra factors of a in the n-th powers
    assert dec2.budget == 41 - 3 + 3 * (-2)
    assert dec2.check()


def test_siegel_precision_exhausted():
    with pytest.raises(PrecisionExhausted):
        siegel_decompose(P(1, 2, 3), 6)


def test_siegel_budget_exact():
    assert siegel_budget(PAdicNumber.from_rational(3, 5, 10), 2) == 10
    assert siegel_decompose(Fraction(5), 3).budget == INF


@given(st.fractions(max_denominator=50).filter(lambda q: abs(q) < 10 ** 4), st.integers(1, 6))
def test_siegel_identity_over_Q(z, n):
    assert siegel_decompose(z, n).evaluate() == z


@given(st.integers(-10 ** 6, 10 ** 6), st.integers(1, 6), st.sampled_from([2, 3, 5, 7]))
def test_siegel_identity_over_Qp(m, n, p):
    z = P(m, p) if m else PAdicNumber.from_rational(0, p, 40)
    try:
        dec = siegel_decompose(z, n)
    except PrecisionExhausted:
        return
    assert dec.check()


# -- binomial coefficients ------------------------------------------------------


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 12])
def test_binomial_root_coefficient_matches_sympy(n):
    for k in range(8):
        ref = sympy.binomial(sympy.Rational(1, n), k)
        assert binomial_root_coefficient(n, k) == Fraction(int(ref.p), int(ref.q))


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_binomial_root_valuation_matches_direct(p):
    for n in range(2, 9):
        for k in range(1, 9):
            c = binomial_root_coefficient(n, k)
            direct = sympy.multiplicity(p, c.numerator) - sympy.multiplicity(p, c.denominator)
            assert binomial_root_valuation(n, k, p) == direct


# -- unipotent roots -------------------------------------------------------------


def _log_exp_root(rows, n):
    """Independent route over Q: exp(log(v) / n) with exact nilpotent series."""
    M = sympy.Matrix(rows)
    size = M.shape[0]
    X = M - sympy.eye(size)
    L = sympy.zeros(size)
    Xk = sympy.eye(size)
    for k in range(1, size):
        Xk = Xk * X
        L += sympy.Rational((-1) ** (k + 1), k) * Xk
    L = L / n
    E, Lk = sympy.eye(size), sympy.eye(size)
    for k in range(1, size):
        Lk = Lk * L
        E += Lk / sympy.factorial(k)
    return E


def test_two_by_two_example():
    v = UnipotentMatrix.from_matrix([[1, 1], [0, 1]])
    w = unipotent_nth_root(v, 2)
    assert w.rows() == [[1, Fraction(1, 2)], [0, 1]]
    assert w ** 2 == v


def test_identity_root():
    v = UnipotentMatrix.identity(3)
    assert unipotent_nth_root(v, 7) == v


def test_heisenberg_cube_root_over_Q5():
    rows = [[P(1, 5), P(1, 5), PAdicNumber.zero(5)],
            [PAdicNumber.zero(5), P(1, 5), P(1, 5)],
            [PAdicNumber.zero(5), PAdicNumber.zero(5), P(1, 5)]]
    v = UnipotentMatrix.from_matrix(rows)
    w = unipotent_nth_root(v, 3)
    assert w ** 3 == v
    expected = [[1, Fraction(1, 3), Fraction(-1, 9)], [0, 1, Fraction(1, 3)], [0, 0, 1]]
    got = [[x.rational() if isinstance(x, PAdicNumber) else Fraction(x) for x in row] for row in w.rows()]
    assert got == expected


def test_not_unipotent_rejected():
    with pytest.raises(DomainViolation):
        UnipotentMatrix.from_matrix([[2, 0], [0, 1]])
    with pytest.raises(DomainViolation):
        UnipotentMatrix.from_matrix([[1, 1], [1, 1]])


def test_lower_triangular_unipotent_accepted():
    v = UnipotentMatrix.from_matrix([[1, 0, 0], [3, 1, 0], [1, 2, 1]])
    assert unipotent_nth_root(v, 4) ** 4 == v


def test_root_budget_loss_at_p():
    # the 2nd root over Q_2 divides X by 2 and X^2 by 8
    rows = [[P(1, 2, 20), P(1, 2, 20), P(0, 2, 20)], [P(0, 2, 20), P(1, 2, 20), P(1, 2, 20)],
            [P(0, 2, 20), P(0, 2, 20), P(1, 2, 20)]]
    v = UnipotentMatrix.from_matrix(rows)
    assert root_budget(v, 2) == 20 - 3
    w = unipotent_nth_root(v, 2)
    assert w.precision() >= 17 and w ** 2 == v


def test_root_precision_exhausted():
    rows = [[P(1, 2, 2), P(1, 2, 2)], [PAdicNumber.zero(2), P(1, 2, 2)]]
    with pytest.raises(PrecisionExhausted):
        unipotent_nth_root(UnipotentMatrix.from_matrix(rows), 8)


@given(st.integers(2, 5), st.integers(1, 5), st.integers(0, 10 ** 6))
def test_root_matches_log_exp_over_Q(size, n, seed):
    rng = random.Random(seed)
    rows = [[Fraction(int(i == j)) if i >= j else Fraction(rng.randint(-9, 9), rng.randint(1, 4))
             for j in range(size)] for i in range(size)]
    w = unipotent_nth_root(UnipotentMatrix.from_matrix(rows), n)
    ref = _log_exp_root([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in rows], n)
    assert [[sympy.Rational(x.numerator, x.denominator) for x in row] for row in w.rows()] == ref.tolist()


@given(st.integers(2, 5), st.integers(1, 5), st.sampled_from([2, 3, 5, 7]), st.integers(0, 10 ** 6))
def test_root_power_round_trip_padic(size, n, p, seed):
    rng = random.Random(seed)
    zero = PAdicNumber.zero(p)
    entries = {(i, j): P(rng.randint(-10 ** 6, 10 ** 6), p, 60)
               for i in range(size) for j in range(i + 1, size)}
    v = UnipotentMatrix.upper(entries, size, zero)
    w = unipotent_nth_root(v, n)
    assert w ** n == v
    assert w.precision() >= 40
