import itertools

import pytest
from hypothesis import given, strategies as st

from adelic.errors import UnsupportedDescriptor
from adelic.grouprec import (
    additive_times_multiplicative,
    affine,
    borel,
    commutator_module_characters,
    explicit,
    general_linear,
    hom_T,
    is_fertile,
    parse_descriptor,
)


def test_fertility_examples():
    rep = is_fertile(general_linear(2))
    assert rep.fertile and rep.witness == (1, -1)
    for r, s in itertools.product(range(3), repeat=2):
        assert not is_fertile(additive_times_multiplicative(r, s)).fertile
    assert is_fertile(affine(1)).fertile
    assert is_fertile(affine(3)).fertile


@pytest.mark.parametrize("n", [2, 3, 4])
def test_general_linear_fertile(n):
    G = general_linear(n)
    assert is_fertile(G).fertile
    assert G.torus_rank == n and G.unipotent_ab_dim == n * (n - 1) // 2
    assert [G.exponent_matrix[i] for i in G.simple_rows] == [
        tuple(1 if t == i else -1 if t == i + 1 else 0 for t in range(n)) for i in range(n - 1)]


def test_gl1_not_fertile():
    rep = is_fertile(general_linear(1))
    assert not rep.fertile and rep.witness == "k = 0"


def test_fertility_witness_strings():
    assert is_fertile(additive_times_multiplicative(2, 0)).witness == "r = 0"
    assert is_fertile(additive_times_multiplicative(0, 2)).witness == "k = 0"
    assert is_fertile(additive_times_multiplicative(2, 2)).witness == "zero exponent matrix"


@given(st.integers(0, 3), st.integers(0, 3), st.data())
def test_fertility_iff_nonzero_matrix(r, k, data):
    matrix = [[data.draw(st.integers(-2, 2)) for _ in range(r)] for _ in range(k)]
    G = explicit(r, k, matrix)
    expected = r >= 1 and k >= 1 and any(any(row) for row in matrix)
    assert is_fertile(G).fertile == expected


@pytest.mark.parametrize("text,name", [("GL2", "GL2"), ("GL(3)", "GL3"), ("B2", "B2"), ("borel2", "B2"),
                                       ("ax+b", "Aff1"), ("Aff2", "Aff2"), ("Ga^1xGm^2", "Ga^1xGm^2"),
                                       ("GaxGm", "Ga^1xGm^1")])
def test_parse_descriptor(text, name):
    assert parse_descriptor(text).name == name


def test_parse_json_and_rejects():
    G = parse_descriptor('{"r": 1, "k": 2, "matrix": [[1], [2]]}')
    assert G.exponent_matrix == ((1,), (2,))
    for bad in ["SL2", "GLx", "", "Sp4"]:
        with pytest.raises(UnsupportedDescriptor):
            parse_descriptor(bad)
    with pytest.raises(ValueError):
        explicit(2, 1, [[1]])


def test_characters_examples():
    gl2 = commutator_module_characters(general_linear(2))
    assert gl2.characters == (((1, -1), 1),) and gl2.ell == 1
    gl3 = commutator_module_characters(general_linear(3))
    assert sorted(v for v, _ in gl3.characters) == [(0, 1, -1), (1, -1, 0)] and gl3.ell == 2
    assert commutator_module_characters(borel(2)).characters == gl2.characters
    assert commutator_module_characters(affine(1)).characters == (((1,), 1),)


def test_characters_gl4():
    m = commutator_module_characters(general_linear(4))
    assert sorted(v for v, _ in m.characters) == [(0, 0, 1, -1), (0, 1, -1, 0), (1, -1, 0, 0)]


def test_characters_need_a_model():
    with pytest.raises(UnsupportedDescriptor):
        commutator_module_characters(affine(2))
    with pytest.raises(UnsupportedDescriptor):
        commutator_module_characters(additive_times_multiplicative(1, 1))


def test_hom_examples():
    rep = hom_T((1, -1), (1, -1))
    assert rep.kind == "full-ring" and rep.checks > 0
    rep = hom_T((1, -1), (0, 1))
    assert rep.kind == "zero" and rep.separating_t == 2
    assert hom_T((2, 0), (3, 0)).kind == "zero"


def test_hom_equal_sums_use_primes():
    rep = hom_T((1, -1, 0), (0, 1, -1))
    assert rep.kind == "zero" and rep.separating_t == [2, 3, 5]


def test_hom_rejects_trivial_characters():
    with pytest.raises(ValueError):
        hom_T((0, 0), (1, -1))


@pytest.mark.parametrize("G", [general_linear(2), general_linear(3), general_linear(4), borel(3), affine(1)],
                         ids=lambda G: G.name)
def test_hom_dichotomy_on_builtin_characters(G):
    chars = [v for v, _ in commutator_module_characters(G).characters]
    for a in chars:
        for b in chars:
            assert (hom_T(a, b, samples=2).kind == "full-ring") == (a == b)
