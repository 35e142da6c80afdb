import random

from comproj import corpus
from comproj.complexes import (ChainMap, cone, direct_sum, identity_map, make_complex, minimize, shift,
                               stalk, zero_complex)
from comproj.homcalc import (TestObject, chain_map_space, default_tests, hom_dim, hom_order_leq, hom_space,
                             is_homotopy_equivalent, is_isomorphic, is_null_homotopic, is_rigid,
                             tangent_dims, verify_iso_witness)
from comproj.projmaps import HomMatrix
from comproj.randgen import random_array, random_automorphism, random_complex


def test_chain_map_spaces(a2_q, loop_q):
    assert len(chain_map_space(stalk(a2_q, 1), stalk(a2_q, 1))) == 1
    assert len(chain_map_space(stalk(loop_q, 1), stalk(loop_q, 1))) == 2
    X = corpus.a2_witness(a2_q)
    C = cone(identity_map(X))
    basis = chain_map_space(X, C)
    assert basis and all(f.is_chain_map() for f in basis)
    # the inclusion of X as the second summand of each X_{i-1} + X_i
    incl = ChainMap(X, C, 0, {i: HomMatrix.from_elems(a2_q, X.term(i), C.term(i),
                                                      [[0]] * len(X.term(i - 1)) + [[1]])
                              for i in X.terms if len(X.term(i)) == 1})
    assert incl.is_chain_map()


def test_hom_dims_a2(a2_q):
    M, N = corpus.a2_pair(a2_q)
    assert hom_dim(N, M, 0) == 1
    assert hom_dim(N, N, 0) == 2
    assert hom_dim(N, N, 1) == 1
    assert hom_dim(M, M, 1) == 0


def test_hom_dims_loop(loop_q):
    U = corpus.two_loop_U(loop_q)
    assert hom_dim(U, U, 1) == 0
    assert hom_dim(U, U, 2) == 1


def test_identity_survives_homotopy(loop_q):
    rng = random.Random(4)
    for _ in range(10):
        X = minimize(random_complex(loop_q, random_array(2, rng), rng)).complex
        if not X.is_zero():
            assert hom_dim(X, X, 0) >= 1
            assert not is_null_homotopic(identity_map(X))


def test_contractible_has_no_homs(a2_q):
    X = corpus.a2_witness(a2_q)
    C = cone(identity_map(X))
    assert hom_dim(C, C, 0) == 0
    assert is_null_homotopic(identity_map(C))


def test_iso_examples(a2_q, loop_q):
    M, N = corpus.a2_pair(a2_q)
    assert is_isomorphic(M, N).status == "no"
    T, S = corpus.two_loop_T(loop_q), corpus.two_loop_S(loop_q)
    assert T.array() == S.array()
    assert is_isomorphic(T, S).status == "no"
    rng = random.Random(7)
    for _ in range(10):
        g = random_automorphism(T, rng)
        v = is_isomorphic(T, g.act(T))
        assert v.status == "yes" and verify_iso_witness(v.witness)


def test_homotopy_equivalence(a2_q):
    M, _ = corpus.a2_pair(a2_q)
    assert is_homotopy_equivalent(M, stalk(a2_q, 1)).status == "yes"
    assert is_homotopy_equivalent(M, stalk(a2_q, 2)).status == "no"


def test_rigidity(a2_q, loop_q):
    assert is_rigid(stalk(a2_q, 2))
    assert is_rigid(corpus.two_loop_T(loop_q))
    assert is_rigid(corpus.two_loop_S(loop_q))
    _, N = corpus.a2_pair(a2_q)
    assert not is_rigid(N)


def test_hom_order(a2_q):
    M, N = corpus.a2_pair(a2_q)
    r = hom_order_leq(M, N, [TestObject("Y", N)])
    assert r.consistent and r.table == [("Y", 1, 2)]
    r = hom_order_leq(N, M, [TestObject("Y", N)])
    assert not r.consistent and r.violation.name == "Y" and r.dims == (2, 1)
    assert hom_order_leq(M, M).consistent
    r = hom_order_leq(N, M)
    assert not r.consistent


def test_default_tests_cover_stalks(a2_q):
    M, N = corpus.a2_pair(a2_q)
    names = [t.name for t in default_tests(M, N)]
    assert names[:2] == ["X", "Y"]
    assert "P1[-1]" in names and "P2[2]" in names


def test_tangent_examples(a2_q):
    M, _ = corpus.a2_pair(a2_q)
    assert tangent_dims(M) == (2, 2)
    Z = make_complex(a2_q, {1: (0, 1), 0: (1, 1)})
    assert tangent_dims(Z) == (2, 0)
    assert tangent_dims(zero_complex(a2_q)) == (0, 0)


def test_hom_space_dims_consistent(loop_f2):
    rng = random.Random(8)
    for _ in range(10):
        X = random_complex(loop_f2, random_array(2, rng, maxmult=1), rng)
        Y = random_complex(loop_f2, random_array(2, rng, maxmult=1), rng)
        for k in (0, 1):
            hs = hom_space(X, Y, k)
            assert hs.dim == hom_dim(X, Y, k)
            assert hom_dim(X, Y, k) == hom_dim(shift(X, -k), Y, 0)
            assert hom_dim(direct_sum(X, X), Y, k) == 2 * hs.dim
