"""The ten acceptance criteria, each with its runtime limit.

Every criterion appends one PASS/FAIL line to the terminal summary.
"""
import random
import time
from contextlib import contextmanager
from fractions import Fraction

import sympy

from cli_cases import CASES, read_golden, run
from conftest import ACCEPTANCE_LINES

from adelic.adele import additive_isomorphism, torsion_multiset
from adelic.grouprec import (
    UnipotentMatrix,
    additive_times_multiplicative,
    affine,
    compare_point_groups,
    general_linear,
    is_divisible,
    is_fertile,
    reconstruct_local_fields,
    siegel_decompose,
    unipotent_nth_root,
    verify_certificate,
)
from adelic.localfield import LocalField, decompose_unit, recompose_unit
from adelic.numberfield import NumberField, arithmetically_equivalent, non_isomorphism_certificate
from adelic.padic import PAdicNumber

PRIMES = [2, 3, 5, 7]


@contextmanager
def criterion(number, title, limit):
    start = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        elapsed = time.perf_counter() - start
        ACCEPTANCE_LINES.append(f"FAIL  {number:>2}. {title} ({elapsed:.2f} s): {type(exc).__name__}: {exc}")
        raise
    elapsed = time.perf_counter() - start
    ok = elapsed < limit
    status = "PASS" if ok else "FAIL"
    ACCEPTANCE_LINES.append(f"{status}  {number:>2}. {title} ({elapsed:.2f} s, limit {limit} s)")
    assert ok, f"took {elapsed:.2f} s, limit {limit} s"


def padic_matrix(rows, p, N):
    return [[PAdicNumber.zero(p) if x == 0 else PAdicNumber.from_rational(Fraction(x), p, N) for x in row]
            for row in rows]


def random_unitriangular(rng, size, p, N):
    entries = {(i, j): PAdicNumber.from_rational(rng.randint(-10 ** 8, 10 ** 8) or 1, p, N)
               for i in range(size) for j in range(i + 1, size)}
    return UnipotentMatrix.upper(entries, size, PAdicNumber.zero(p))


def test_01_siegel_identity():
    rng = random.Random(101)
    with criterion(1, "Siegel identity over Q and Q_p", 5):
        for _ in range(100):
            z = Fraction(rng.randint(-10 ** 6, 10 ** 6), rng.randint(1, 10 ** 3))
            n = rng.randint(1, 6)
            dec = siegel_decompose(z, n)
            assert dec.evaluate() == z
        for _ in range(100):
            p, n = rng.choice(PRIMES), rng.randint(1, 6)
            z = PAdicNumber.from_rational(Fraction(rng.randint(1, 10 ** 6), rng.randint(1, 10 ** 3)), p, 40)
            dec = siegel_decompose(z, n)
            assert dec.check(), (z, n)


def test_02_unipotent_roots():
    rng = random.Random(202)
    with criterion(2, "unipotent roots w^n = v at precision >= 40", 30):
        for _ in range(200):
            size, p, n = rng.randint(2, 5), rng.choice(PRIMES), rng.randint(1, 5)
            v = random_unitriangular(rng, size, p, 60)
            w = unipotent_nth_root(v, n)
            assert w.precision() >= 40
            assert w ** n == v


def test_03_divisibility_dichotomy():
    rng = random.Random(303)
    with criterion(3, "divisibility dichotomy with re-verified certificates", 10):
        for _ in range(20):
            size, p = rng.randint(2, 4), rng.choice(PRIMES)
            v = random_unitriangular(rng, size, p, 60)
            rep = is_divisible(v.rows(), 30)
            assert rep.verdict == "divisible-up-to-30" and rep.unipotent
        g = padic_matrix([[2, 0], [0, 1]], 5, 40)
        rep = is_divisible(g)
        assert rep.verdict == "not-divisible" and verify_certificate(g, rep.certificate)
        for _ in range(50):
            size, p = rng.randint(2, 4), rng.choice(PRIMES)
            rows = [[rng.randint(-30, 30) for _ in range(size)] for _ in range(size)]
            # force a determinant obstruction: valuation 1 at p
            rows = [[x * p if i == 0 else x for x in row] for i, row in enumerate(rows)]
            det = sympy.Matrix(rows).det()
            if det == 0 or sympy.multiplicity(p, det) != 1:
                rows = [[p * rng.choice([1, 2]) if (i, j) == (0, 0) else (1 if i == j else 0)
                         for j in range(size)] for i in range(size)]
            g = padic_matrix(rows, p, 40)
            rep = is_divisible(g)
            assert rep.verdict == "not-divisible" and not rep.unipotent
            assert verify_certificate(g, rep.certificate)


def test_04_arithmetic_equivalence():
    with criterion(4, "arithmetic equivalence: cube roots and a Gassmann pair", 120):
        rep = arithmetically_equivalent(NumberField("x^3-2"), NumberField("x^3-3"), 100)
        golden = read_golden("equiv_cube_roots")
        assert rep.verdict == "inequivalent" and rep.witness <= 100
        assert f'"witness": {rep.witness}' in golden
        K, L = NumberField("x^8-15"), NumberField("x^8-240")
        rep = arithmetically_equivalent(K, L, 10 ** 4)
        assert rep.verdict == "equivalent-up-to-10000"
        assert non_isomorphism_certificate(K, L) is not None


def test_05_additive_structure():
    rng = random.Random(505)
    with criterion(5, "additive isomorphism round trips", 5):
        for poly in ("x^2+1", "x^2+5"):
            K = NumberField(poly)
            for p in (2, 3, 5, 7, 11):
                iso = additive_isomorphism(K, p)
                assert iso.size == K.degree
                for _ in range(100):
                    vec = [rng.randint(-10 ** 9, 10 ** 9) for _ in range(K.degree)]
                    back = iso.forward(iso.inverse(vec))
                    assert all((x - y).is_zero() for x, y in zip(back, vec))


TOWER_SET = [
    LocalField(5), LocalField(2), LocalField(3, f=2), LocalField(7, e=2), LocalField(5, e=2),
    LocalField(3, e=2, eisenstein_poly=[3, 3, 1]), LocalField(5, f=3), LocalField(7, e=3),
]


def test_06_unit_decomposition():
    rng = random.Random(606)
    with criterion(6, "unit decomposition recomposes exactly", 30):
        for F in TOWER_SET:
            u = F.unit_group_structure()
            assert (u.cyclic_prime_to_p_order, u.free_rank, u.mu_p_power_order) == (
                F.p ** F.f - 1, F.e * F.f, F.mu_p_power())
        for i in range(100):
            F = TOWER_SET[i % len(TOWER_SET)]
            x = F.random_unit(rng)
            assert recompose_unit(F, decompose_unit(x)) == x


def test_07_torsion_probe():
    with criterion(7, "torsion multiset divisible by every n <= 20", 60):
        for poly in ("x^2+5", "x^2+7"):
            rep = torsion_multiset(NumberField(poly), 10 ** 4)
            for n in range(1, 21):
                assert any(m % n == 0 for m in rep.multiset), (poly, n)


def test_08_reconstruction():
    with criterion(8, "reconstruction end to end", 60):
        rep = compare_point_groups(general_linear(2), NumberField("x^3-2"), NumberField("x^3-3"), 100)
        assert rep.verdict == "distinguished"
        for poly in ("x^2+1", "x^2+5"):
            K = NumberField(poly)
            assert compare_point_groups(general_linear(2), K, K, 50).verdict == "locally-isomorphic-up-to-50"
        R = reconstruct_local_fields(general_linear(3), NumberField("x"), 100)
        assert R.ell == 2 and R.normalization_exact


def test_09_fertility_table():
    with criterion(9, "fertility table", 5):
        for n in (2, 3, 4):
            assert is_fertile(general_linear(n)).fertile
        for r in range(3):
            for s in range(3):
                assert not is_fertile(additive_times_multiplicative(r, s)).fertile
        assert is_fertile(affine(1)).fertile


def test_10_cli_determinism():
    with criterion(10, "CLI golden files reproduce byte-identically", 60):
        for name, argv in CASES.items():
            first = run(argv)[1]
            second = run(argv)[1]
            assert first == second == read_golden(name), name
