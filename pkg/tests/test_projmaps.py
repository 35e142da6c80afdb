import random

import pytest

from comproj.algebra import AlgebraError
from comproj.exactlin import matmul
from comproj.projmaps import HomMatrix, compose, direct_sum, invert, is_iso, permutation
from comproj.randgen import random_iso


def rand_matrix(A, src, tgt, rng):
    F = A.field
    return HomMatrix(A, src, tgt, [[tuple(F.random(rng, 3) for _ in range(A.hom_dim(a, b))) for a in src]
                                   for b in tgt])


def test_from_elems_checks_types(loop_q):
    A = loop_q
    b = A.path("b")
    m = HomMatrix.from_elems(A, [1], [2], [[b]])
    assert m.elem(0, 0) == b
    with pytest.raises(AlgebraError):
        HomMatrix.from_elems(A, [2], [1], [[b]])
    with pytest.raises(AlgebraError):
        HomMatrix.from_elems(A, [1], [2], [[1]])


def test_composition_matches_linearization(loop_q):
    rng = random.Random(1)
    A = loop_q
    for _ in range(20):
        f = rand_matrix(A, [1, 2], [2, 1, 1], rng)
        g = rand_matrix(A, [2, 1, 1], [1, 2], rng)
        for v in A.vertices:
            assert compose(g, f).linearize_at(v) == matmul(g.linearize_at(v), f.linearize_at(v))


def test_composition_associative(loop_q):
    rng = random.Random(2)
    A = loop_q
    for _ in range(20):
        f = rand_matrix(A, [1], [2, 1], rng)
        g = rand_matrix(A, [2, 1], [1, 2], rng)
        h = rand_matrix(A, [1, 2], [2], rng)
        assert compose(h, compose(g, f)) == compose(compose(h, g), f)


def test_invert_random_isos(loop_q, a2_f2):
    rng = random.Random(3)
    for A, types in ((loop_q, (1, 1, 2)), (a2_f2, (1, 2, 2))):
        for _ in range(20):
            f = random_iso(A, types, rng)
            g = invert(f)
            assert compose(f, g) == HomMatrix.identity(A, types)
            assert compose(g, f) == HomMatrix.identity(A, types)


def test_radical_map_is_not_iso(loop_q):
    A = loop_q
    m = HomMatrix.from_elems(A, [1], [1], [[A.path("b", "a")]])
    assert not is_iso(m)
    with pytest.raises(AlgebraError):
        invert(m)


def test_permutation_and_direct_sum(loop_q):
    A = loop_q
    p = permutation(A, (1, 2), [1, 0])
    assert p.src == (1, 2) and p.tgt == (2, 1)
    assert compose(invert(p), p) == HomMatrix.identity(A, (1, 2))
    d = direct_sum(HomMatrix.identity(A, (1,)), HomMatrix.identity(A, (2,)))
    assert d == HomMatrix.identity(A, (1, 2))
