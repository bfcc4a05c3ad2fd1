import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from adelic.errors import DivisionByZero, FieldMismatch, Unsupported
from adelic.localfield import (
    LocalField,
    decompose_unit,
    is_isomorphic_tame,
    one_unit_exp,
    one_unit_log,
    recompose_unit,
)

TOWERS = [
    LocalField(5),
    LocalField(2),
    LocalField(3, f=2),
    LocalField(7, e=2),
    LocalField(5, e=2),
    LocalField(3, e=2, eisenstein_poly=[3, 3, 1]),
    LocalField(5, f=3),
    LocalField(7, e=3),
    LocalField(3, f=2, e=2),
]
ids = [repr(F.invariants()) for F in TOWERS]


def test_invariants_examples():
    assert LocalField(5).invariants() == (5, 1, 1)
    assert LocalField(2, e=2, eisenstein_poly=[-2, 0, 1]).invariants() == (2, 2, 1)
    assert LocalField(3, f=2, unramified_poly=[1, 0, 1]).invariants() == (3, 1, 2)


def test_unit_group_examples():
    def triple(F):
        u = F.unit_group_structure()
        return (u.cyclic_prime_to_p_order, u.free_rank, u.mu_p_power_order)

    assert triple(LocalField(5)) == (4, 1, 1)
    assert triple(LocalField(2)) == (1, 1, 2)
    assert triple(LocalField(3, f=2)) == (8, 2, 1)


def test_mu_examples():
    assert LocalField(5).mu_p_power() == 1
    assert LocalField(2).mu_p_power() == 2
    assert LocalField(3, e=2, eisenstein_poly=[3, 3, 1]).mu_p_power() == 3


def test_tame_isomorphism_examples():
    F5 = LocalField(5, e=2, eisenstein_poly=[-5, 0, 1])
    assert is_isomorphic_tame(F5, LocalField(5, e=2, eisenstein_poly=[-20, 0, 1])) == "isomorphic"
    assert is_isomorphic_tame(F5, LocalField(5, e=2, eisenstein_poly=[-10, 0, 1])) == "non-isomorphic"
    F2 = LocalField(2, e=2, eisenstein_poly=[-2, 0, 1])
    assert is_isomorphic_tame(F2, LocalField(2, e=2, eisenstein_poly=[-6, 0, 1])) == "unsupported"


def test_tame_isomorphism_with_frobenius_twist():
    # over the unramified quadratic, classes differing by Frobenius agree
    F = LocalField(7, f=2, e=3)
    k = F.residue_field
    for a in k.elements():
        if k.is_zero(a):
            continue
        b = k.frobenius(a)
        G = LocalField(7, f=2, e=3, eisenstein_poly=[[-7 * c for c in a], [0, 0], [0, 0], [1, 0]])
        H = LocalField(7, f=2, e=3, eisenstein_poly=[[-7 * c for c in b], [0, 0], [0, 0], [1, 0]])
        assert is_isomorphic_tame(G, H) == "isomorphic"


def test_tame_isomorphism_is_an_equivalence():
    fields = [LocalField(7, e=3, eisenstein_poly=[-7 * c, 0, 0, 1]) for c in range(1, 7)]
    rel = [[is_isomorphic_tame(F, G) == "isomorphic" for G in fields] for F in fields]
    for i in range(6):
        assert rel[i][i]
        for j in range(6):
            assert rel[i][j] == rel[j][i]
            for k in range(6):
                if rel[i][j] and rel[j][k]:
                    assert rel[i][k]
    # F_7^*/(F_7^*)^3 has three classes
    assert len({tuple(row) for row in rel}) == 3


@pytest.mark.parametrize("F", TOWERS, ids=ids)
def test_uniformizer_and_generator(F):
    pi = F.uniformizer()
    assert pi.valuation() == Fraction(1, F.e)
    assert pi ** F.e / F.p == pi ** F.e * F(Fraction(1, F.p))
    # the residue of the unramified generator has f distinct conjugates
    r = F.generator().residue()
    orbit = {tuple(r)}
    for _ in range(F.f - 1):
        r = F.residue_field.frobenius(r)
        orbit.add(tuple(r))
    assert len(orbit) == F.f


@pytest.mark.parametrize("F", TOWERS, ids=ids)
def test_field_axioms(F):
    rng = random.Random(7)
    for _ in range(20):
        a, b, c = (F.random_integral(rng) for _ in range(3))
        assert (a + b) * c == a * c + b * c
        assert (a * b) * c == a * (b * c)
        if not b.is_zero():
            assert (a / b) * b == a
        u = F.random_unit(rng) * F.uniformizer() ** rng.randint(-3, 3)
        assert u * u.inverse() == F(1)


def test_division_by_zero_and_mismatch():
    F = LocalField(5, e=2)
    with pytest.raises(DivisionByZero):
        F(1) / F(0)
    with pytest.raises(FieldMismatch):
        F(1) + LocalField(7)(1)


@pytest.mark.parametrize("F", TOWERS, ids=ids)
def test_unit_decomposition_round_trip(F):
    rng = random.Random(11)
    if (F.p, F.e, F.f) == (3, 2, 2):
        with pytest.raises(Unsupported):
            decompose_unit(F(1))
        return
    for _ in range(12):
        x = F.random_unit(rng) * F.uniformizer() ** rng.randint(-2, 2)
        parts = decompose_unit(x)
        assert recompose_unit(F, parts) == x
        assert len(parts.log_coordinates) == F.degree


def test_unit_decomposition_examples():
    F = LocalField(5)
    parts = decompose_unit(F(50))
    assert parts.exponent == 2
    assert list(parts.residue) == [2]
    assert decompose_unit(LocalField(2)(-1)).torsion_index == 1


@pytest.mark.parametrize("F", TOWERS, ids=ids)
def test_log_exp(F):
    rng = random.Random(3)
    c = F.log_domain_level
    pi = F.uniformizer()
    for _ in range(8):
        x = 1 + pi ** c * F.random_integral(rng)
        y = 1 + pi ** c * F.random_integral(rng)
        assert one_unit_exp(one_unit_log(x)) == x
        assert one_unit_log(x * y) == one_unit_log(x) + one_unit_log(y)


@pytest.mark.parametrize("F", TOWERS, ids=ids)
def test_mu_generator_order(F):
    m = F.mu_p_power()
    z = F.mu_generator()
    assert z ** m == F(1)
    if m > 1:
        assert not z ** (m // F.p) == F(1)


def test_json_round_trip():
    F = LocalField(3, f=2, e=2)
    assert LocalField.from_json(F.to_json()) == F
    x = F.random_unit(random.Random(1))
    from adelic.localfield import LocalFieldElement
    assert LocalFieldElement.from_json(F, x.to_json()).identical(x)


@given(st.sampled_from(TOWERS), st.integers(0, 10 ** 6), st.integers(0, 10 ** 6))
def test_isomorphic_fields_share_invariants(F, a, b):
    G = LocalField(F.p, f=F.f, e=F.e)
    verdict = is_isomorphic_tame(F, G)
    if verdict == "isomorphic":
        assert F.invariants() == G.invariants()
    x, y = F(a), F(b)
    assert x + y == F(a + b) and x * y == F(a * b)
