import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from adelic.errors import DomainViolation, PrecisionExhausted
from adelic.grouprec import DivisibilityCertificate, UnipotentMatrix, is_divisible, verify_certificate
from adelic.localfield import LocalField
from adelic.padic import PAdicNumber


def mat(rows, p, N=40):
    return [[PAdicNumber.zero(p) if x == 0 else PAdicNumber.from_rational(Fraction(x), p, N) for x in row]
            for row in rows]


def test_identity_divisible():
    rep = is_divisible(mat([[1, 0], [0, 1]], 5))
    assert rep.verdict == "divisible-up-to-30" and rep.unipotent and rep.certified
    assert set(rep.roots) == set(range(2, 31))


def test_diag_two_one_over_Q5():
    g = mat([[2, 0], [0, 1]], 5)
    rep = is_divisible(g)
    assert rep.verdict == "not-divisible"
    cert = rep.certificate
    assert (cert.kind, cert.n, cert.obstruction) == ("determinant", 2, "residue")
    assert cert.message == "det = 2 has no square root: 2 is not a square mod 5"
    assert verify_certificate(g, cert)


def test_unitriangular_over_Q7():
    g = mat([[1, 3, -2], [0, 1, 5], [0, 0, 1]], 7)
    rep = is_divisible(g)
    assert rep.verdict == "divisible-up-to-30" and rep.unipotent
    v = UnipotentMatrix.from_matrix(g)
    assert all(w ** n == v for n, w in rep.roots.items())


def test_valuation_obstruction():
    g = mat([[7, 0], [0, 1]], 7)
    rep = is_divisible(g)
    assert rep.certificate.obstruction == "valuation" and rep.certificate.n == 2
    assert verify_certificate(g, rep.certificate)


def test_hensel_obstruction_at_two():
    # 3 is a square mod 2 but not in Q_2 (not 1 mod 8)
    g = mat([[3, 0], [0, 1]], 2)
    rep = is_divisible(g)
    assert rep.certificate.n == 2 and rep.certificate.obstruction == "hensel"
    assert verify_certificate(g, rep.certificate)


def test_slope_obstruction():
    # det 1 carries no obstruction; an eigenvalue of valuation 1 has a square root
    # in a quadratic extension, but no cube root in any extension of degree <= 2
    h = mat([[5, 0], [0, Fraction(1, 5)]], 5)
    rep = is_divisible(h)
    assert rep.certificate.kind == "newton-slope" and rep.certificate.n == 3
    assert verify_certificate(h, rep.certificate)


def test_uncertified_reported_honestly():
    g = mat([[2, 1], [1, 1]], 5)  # det 1, unit eigenvalues
    rep = is_divisible(g, 6)
    assert rep.verdict == "divisible-up-to-6" and not rep.certified and not rep.unipotent
    assert "no certificate" in rep.to_json()["note"]


def test_forged_certificates_rejected():
    g = mat([[4, 0], [0, 1]], 5)
    assert not verify_certificate(g, DivisibilityCertificate("determinant", 2, "residue", ""))
    assert not verify_certificate(g, DivisibilityCertificate("determinant", 2, "valuation", ""))
    assert not verify_certificate(g, DivisibilityCertificate("newton-slope", 2, "slope", "", {"slope": "1"}))


def test_singular_rejected():
    with pytest.raises(DomainViolation):
        is_divisible(mat([[1, 2], [0, 0]], 5))
    # determinant zero only to the working precision
    with pytest.raises(PrecisionExhausted):
        is_divisible(mat([[1, 2], [2, 4]], 5))


def test_local_field_entries():
    F = LocalField(5, e=2)
    pi = F.uniformizer()
    g = [[pi, F(0)], [F(0), F(1)]]
    rep = is_divisible(g)
    assert rep.certificate.obstruction == "valuation" and rep.certificate.n == 2
    assert verify_certificate(g, rep.certificate)
    # a non-square unit residue in F_5
    g2 = [[F(2), F(0)], [F(0), F(1)]]
    rep2 = is_divisible(g2)
    assert rep2.certificate.obstruction == "residue"
    assert verify_certificate(g2, rep2.certificate)


@given(st.integers(2, 4), st.sampled_from([2, 3, 5, 7]), st.integers(0, 10 ** 6))
def test_random_obstructed_samples_certified(size, p, seed):
    rng = random.Random(seed)
    # upper triangular with one diagonal entry p * unit: determinant valuation 1
    rows = [[rng.randint(-20, 20) if j > i else 0 for j in range(size)] for i in range(size)]
    rows[0][0] = p * rng.choice([1, 2, 3, 4])
    for i in range(1, size):
        rows[i][i] = rng.choice([u for u in (1, -1, 2, 3) if u % p])
    g = mat(rows, p)
    rep = is_divisible(g)
    assert rep.verdict == "not-divisible"
    assert verify_certificate(g, rep.certificate)


@given(st.integers(2, 5), st.sampled_from([2, 3, 5, 7]), st.integers(0, 10 ** 6))
def test_unipotent_always_divisible(size, p, seed):
    rng = random.Random(seed)
    rows = [[int(i == j) if i >= j else rng.randint(-50, 50) for j in range(size)] for i in range(size)]
    rep = is_divisible(mat(rows, p, 60), 10)
    assert rep.verdict == "divisible-up-to-10" and rep.unipotent
