import random

import pytest

from comproj import corpus
from comproj.complexes import (ChainMap, ComplexError, ProjComplex, cone, contractible, direct_sum, disk,
                               equalize, format_array, homology, homology_dims, identity_map, is_minimal,
                               k0_of_array, make_complex, minimize, shift, splice, stalk, truncate,
                               truncate_below, zero_complex, zero_map)
from comproj.amod import simple, truncated_resolution
from comproj.homcalc import is_isomorphic
from comproj.projmaps import HomMatrix
from comproj.randgen import random_array, random_complex


def test_a2_points_are_valid(a2_q):
    M, N = corpus.a2_pair(a2_q)
    assert M.array() == N.array() == {1: (0, 1), 0: (1, 1)}


def test_dd_checked(loop_q):
    A = loop_q
    b, a = A.path("b"), A.path("a")
    # P1 -b-> P2 -a-> P1 composes to ba != 0
    with pytest.raises(ComplexError):
        ProjComplex(A, {2: (1,), 1: (2,), 0: (1,)},
                    {2: HomMatrix.from_elems(A, [1], [2], [[b]]), 1: HomMatrix.from_elems(A, [2], [1], [[a]])})
    # P1 -b-> P2 -ab-> P2 composes to bab = 0
    ProjComplex(A, {2: (1,), 1: (2,), 0: (2,)},
                {2: HomMatrix.from_elems(A, [1], [2], [[b]]),
                 1: HomMatrix.from_elems(A, [2], [2], [[A.path("a", "b")]])})


def test_wrong_types_rejected(a2_q):
    with pytest.raises(ComplexError):
        ProjComplex(a2_q, {1: (2,), 0: (1,)}, {1: HomMatrix.identity(a2_q, (2,))})
    with pytest.raises(ComplexError):
        ProjComplex(a2_q, {0: (3,)})


def test_shift(a2_q):
    A = a2_q
    X = corpus.a2_witness(A)
    assert shift(shift(X, 1), -1) == X
    assert shift(stalk(A, 1), 2) == stalk(A, 1, 2)
    Y = shift(X, 1)
    assert Y.diff(2) == X.diff(1).scale(-1)
    assert shift(X, 2).diff(3) == X.diff(1)


def test_cone_examples(a2_q):
    A = a2_q
    X = corpus.a2_witness(A)
    assert minimize(cone(identity_map(X))).complex.is_zero()
    Y = stalk(A, 2)
    c = cone(zero_map(X, Y))
    assert is_isomorphic(c, direct_sum(Y, shift(X, 1))).status == "yes"
    iota = ChainMap(stalk(A, 2), stalk(A, 1), 0, {0: HomMatrix.from_elems(A, [2], [1], [[A.path("a")]])})
    c = cone(iota)
    assert c.array() == {1: (0, 1), 0: (1, 0)}
    assert homology_dims(c, 0) == (1, 0)


def test_truncate(a2_q):
    A = a2_q
    M, N = corpus.a2_pair(A)
    assert truncate(N, 3) == N
    assert truncate(N, 0) == stalk(A, [1, 2])
    assert truncate(truncate(N, 1), 0) == truncate(N, 0)
    assert truncate_below(N, 1) == stalk(A, 2, 1)


def test_minimize_examples(a2_q, loop_q):
    M, N = corpus.a2_pair(a2_q)
    r = minimize(M)
    assert r.complex == stalk(a2_q, 1)
    assert r.stripped == {1: (0, 1), 0: (0, 1)}
    assert r.automorphism.act(M) == direct_sum(r.complex, r.contractible)
    assert minimize(N).complex == N and is_minimal(N)
    S = corpus.two_loop_S(loop_q)
    assert is_isomorphic(minimize(S).complex, corpus.two_loop_S_min(loop_q)).status == "yes"


def test_minimize_is_idempotent_on_random(a2_f2, loop_f2):
    rng = random.Random(5)
    for A in (a2_f2, loop_f2):
        for _ in range(15):
            X = random_complex(A, random_array(2, rng), rng)
            m = minimize(X).complex
            assert is_minimal(m)
            assert minimize(m).complex == m


def test_equalize_examples(a2_q):
    A = a2_q
    M, N = corpus.a2_pair(A)
    e = equalize(M, N)
    assert (e.X, e.Y) == (M, N) and not e.pad_x and not e.pad_y
    X = stalk(A, 1)
    Y = direct_sum(X, cone(identity_map(stalk(A, 2))))
    e = equalize(X, Y)
    assert e.X.array() == Y.array() and e.Y == Y
    assert e.pad_x == [(1, 2)]
    with pytest.raises(ComplexError):
        equalize(stalk(A, 1), stalk(A, 1, 1))


def test_homology_examples(a2_q):
    M, N = corpus.a2_pair(a2_q)
    assert homology(N, 0).dims == (1, 1)
    assert homology(N, 1).dims == (0, 0)
    assert homology(M, 0).dims == (1, 1)
    assert homology_dims(M, 0) == (1, 1)
    C = cone(identity_map(N))
    assert all(homology_dims(C, i) == (0, 0) for i in range(-1, 4))


def test_homology_module_structure(a2_q):
    # H_0 of the split complex is P1, on which the arrow acts nontrivially
    M, N = corpus.a2_pair(a2_q)
    assert not homology(M, 0).module.maps["a"].is_zero()
    assert homology(N, 0).module.maps["a"].is_zero()


def test_splice(loop_q, a2_q):
    A = loop_q
    res = truncated_resolution(simple(A, 1), 4)
    for n in range(1, 4):
        X = truncate(res, n)
        Y = splice(X, 4 - n)
        for i in range(n):
            assert homology_dims(Y, i) == homology_dims(res, i)
        assert is_isomorphic(Y, res).status == "yes"
    # nothing to attach above the top degree
    P = stalk(a2_q, 1)
    assert splice(P, 2, top=1) == P
    # covering the cycles in the top degree kills H_top
    Y = splice(P, 1)
    assert homology_dims(Y, 0) == (0, 0)


def test_k0(a2_q):
    X = stalk(a2_q, 1)
    assert k0_of_array(X.array(), 2) == (1, 0)
    assert k0_of_array(shift(X, 1).array(), 2) == (-1, 0)


def test_contractible_and_disks(a2_q):
    C = contractible(a2_q, [(1, 2), (0, 1)])
    assert C.array() == {1: (0, 1), 0: (1, 1), -1: (1, 0)}
    assert minimize(C).complex.is_zero()
    assert disk(a2_q, 1, 0).diff(0) == HomMatrix.identity(a2_q, (1,))
    assert zero_complex(a2_q).is_zero()


def test_make_complex_canonical_order(a2_q):
    X = make_complex(a2_q, {0: (2, 1)})
    assert X.term(0) == (1, 1, 2)
    assert format_array(X.array()) == "{0:(2,1)}"
