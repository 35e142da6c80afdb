"""The library's Hom dimensions against exhaustive enumeration over F_2."""
import pytest

from bruteforce import ambient_sizes, brute_hom_dim, dd_is_zero, random_cases
from comproj import corpus
from comproj.complexes import direct_sum
from comproj.exactlin import Field
from comproj.homcalc import hom_dim

F2 = Field.prime(2)
CASES = random_cases(30, seed=0)


def test_enough_cases():
    assert len(CASES) == 30
    assert {k for _, _, k in CASES} == {0, 1, 2}
    assert {X.algebra.num_vertices for X, _, _ in CASES} == {2}
    assert max(max(ambient_sizes(X, Y, k)) for X, Y, k in CASES) <= 16


@pytest.mark.parametrize("n", range(len(CASES)))
def test_hom_dim_matches_enumeration(n):
    X, Y, k = CASES[n]
    assert dd_is_zero(X) and dd_is_zero(Y)
    assert hom_dim(X, Y, k) == brute_hom_dim(X, Y, k)


def test_a2_constants():
    A = corpus.a2(F2)
    M, N = corpus.a2_pair(A)
    assert [brute_hom_dim(M, M, 0), brute_hom_dim(N, N, 0), brute_hom_dim(N, N, 1)] == [1, 2, 1]
    assert brute_hom_dim(M, M, 1) == 0
    assert [hom_dim(M, M, 0), hom_dim(N, N, 0), hom_dim(N, N, 1), hom_dim(M, M, 1)] == [1, 2, 1, 0]


def test_two_loop_constants():
    A = corpus.two_loop(F2)
    U, S = corpus.two_loop_U(A), corpus.two_loop_S_min(A)
    pairs = [(U, U, 1), (U, U, 2), (U, U, -1), (S, S, 1), (S, U, 0)]
    want = [brute_hom_dim(*p) for p in pairs]
    # Hom(P1, P2) is spanned by a; a map P2 + P2 -> P2 killing b has 1 + 2 free coordinates
    assert want == [0, 1, 0, 0, 3]
    assert [hom_dim(*p) for p in pairs] == want


def test_oracle_rejects_large_spaces():
    T = corpus.two_loop_T(corpus.two_loop(F2))
    big = direct_sum(T, T, T)
    assert max(ambient_sizes(big, big, 0)) > 16
    with pytest.raises(ValueError):
        brute_hom_dim(big, big, 0)
