import pytest
import sympy

from adelic.errors import NotFertile
from adelic.grouprec import (
    additive_times_multiplicative,
    affine,
    compare_point_groups,
    general_linear,
    reconstruct_local_fields,
)
from adelic.numberfield import NumberField, completion, decompose

QI = NumberField("x^2+1")


def completion_multiset(K, bound):
    out = []
    for p in sympy.primerange(2, bound + 1):
        d = decompose(K, p)
        for i in range(len(d.pairs)):
            out.append(completion(K, p, i).invariants())
    return sorted(out)


def test_gl2_gaussian_window_seven():
    R = reconstruct_local_fields(general_linear(2), QI, 7)
    assert R.ell == 1
    assert R.multiset == [(2, 2, 1), (3, 1, 2), (5, 1, 1), (5, 1, 1), (7, 1, 2)]
    assert R.multiset == completion_multiset(QI, 7)
    assert R.normalization_exact


def test_gl3_over_Q():
    R = reconstruct_local_fields(general_linear(3), NumberField("x"), 5)
    assert R.ell == 2
    assert R.raw_ideal_count == 2 * 3
    assert R.multiset == [(2, 1, 1), (3, 1, 1), (5, 1, 1)]
    assert R.normalization_exact


@pytest.mark.parametrize("poly", ["x^2+5", "x^3-2", "x^4+4x^3-12x^2+7x-7"])
def test_normalization_bookkeeping(poly):
    K = NumberField(poly)
    for G in (general_linear(2), general_linear(3), general_linear(4)):
        R = reconstruct_local_fields(G, K, 30)
        assert R.raw_ideal_count == R.ell * len(R.places)
        assert R.normalization_exact


def test_non_fertile_rejected():
    with pytest.raises(NotFertile):
        reconstruct_local_fields(additive_times_multiplicative(1, 1), QI, 10)


def test_reconstruction_json():
    d = reconstruct_local_fields(general_linear(2), QI, 5).to_json()
    assert d["multiset"] == [[2, 2, 1], [3, 1, 2], [5, 1, 1], [5, 1, 1]]
    assert d["characters"] == [{"exponents": [1, -1], "multiplicity": 1}]


def test_compare_cube_roots():
    rep = compare_point_groups(general_linear(2), NumberField("x^3-2"), NumberField("x^3-3"), 100)
    assert rep.verdict == "distinguished"
    assert rep.witness == {"p": 2, "K_side": [[3, 1]], "L_side": [[1, 1], [1, 2]]}
    assert rep.theorem_backed and rep.flags == []


@pytest.mark.parametrize("poly", ["x^2+1", "x^2+5"])
def test_compare_field_with_itself(poly):
    K = NumberField(poly)
    rep = compare_point_groups(general_linear(2), K, K, 50)
    assert rep.verdict == "locally-isomorphic-up-to-50"
    assert rep.witness is None


def test_compare_tame_presentations():
    # the same field: at 5 the Eisenstein polynomials x^2+5 and x^2+45 differ by a square
    K, L = NumberField("x^2+5"), NumberField("x^2+45")
    rep = compare_point_groups(general_linear(2), K, L, 30)
    assert rep.verdict == "locally-isomorphic-up-to-30"
    methods = {e["p"]: e["method"] for e in rep.per_place}
    assert methods[5] == "tame" and methods[2] == "invariants-only"
    assert rep.flags == ["wild-invariants-only"]


def test_compare_not_fertile_is_labelled():
    rep = compare_point_groups(additive_times_multiplicative(1, 1), NumberField("x^2+5"), NumberField("x^2+7"), 50)
    assert "not-theorem-backed" in rep.flags and not rep.theorem_backed
    assert rep.verdict == "distinguished"


def test_compare_without_matrix_model():
    rep = compare_point_groups(affine(2), QI, QI, 20)
    assert "descriptor-without-matrix-model" in rep.flags
    assert rep.verdict == "locally-isomorphic-up-to-20"
