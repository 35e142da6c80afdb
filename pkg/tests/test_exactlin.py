import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from comproj.exactlin import (Field, Mat, SearchConfig, coordinates, det, extend_to_basis,
                              find_invertible_combination, independent_subset, inverse, is_invertible,
                              kernel_basis, rank, rref, solve)

Q = Field.rationals()
F5 = Field.prime(5)

small_ints = st.integers(min_value=-4, max_value=4)


def matrices(nrows=st.integers(1, 4), ncols=st.integers(1, 4)):
    return st.tuples(nrows, ncols).flatmap(
        lambda s: st.lists(st.lists(small_ints, min_size=s[1], max_size=s[1]), min_size=s[0], max_size=s[0]))


def test_field_parse_and_literals():
    assert Field.parse("Q") == Q
    assert Field.parse("Fp:7") == Field.prime(7)
    with pytest.raises(ValueError):
        Field.parse("Fp:6")
    with pytest.raises(ValueError):
        Field.parse("R")
    assert Q("3/4") == Fraction(3, 4)
    assert Q.format(Fraction(-1, 2)) == "-1/2"
    assert Q.format(Fraction(4)) == 4
    assert F5(7) == 2
    assert F5.inv(2) == 3
    assert F5.format(4) == 4


def test_field_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        F5.inv(0)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_matches_sympy(rows):
    m = Mat.from_rows(Q, rows)
    assert rank(m) == sympy.Matrix(rows).rank()


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_kernel_is_kernel(rows):
    m = Mat.from_rows(Q, rows)
    ker = kernel_basis(m)
    assert len(ker) == m.ncols - rank(m)
    for v in ker:
        assert all(x == 0 for x in m.apply(v))


@settings(max_examples=60, deadline=None)
@given(matrices(st.just(3), st.just(3)))
def test_det_and_inverse(rows):
    m = Mat.from_rows(Q, rows)
    assert det(m) == sympy.Matrix(rows).det()
    inv = inverse(m)
    if det(m) == 0:
        assert inv is None and not is_invertible(m)
    else:
        assert (m @ inv) == Mat.identity(Q, 3)


def test_rref_over_fp():
    m = Mat.from_rows(F5, [[1, 2, 3], [2, 4, 0]])
    r, piv, red = rref(m)
    assert r == 2 and piv == [0, 2]
    assert red.rows[0][0] == 1 and red.rows[1][2] == 1


def test_solve_consistent_and_not():
    m = Mat.from_rows(Q, [[1, 1], [1, -1]])
    x = solve(m, [2, 0])
    assert x == (1, 1)
    assert solve(Mat.from_rows(Q, [[1, 1], [2, 2]]), [1, 0]) is None


def test_independent_subset_and_coordinates():
    vecs = [(1, 0, 0), (2, 0, 0), (0, 1, 0), (1, 1, 0)]
    vecs = [tuple(Q(x) for x in v) for v in vecs]
    assert independent_subset(Q, vecs, 3) == [0, 2]
    assert coordinates(Q, [vecs[0], vecs[2]], vecs[3], 3) == (1, 1)
    assert coordinates(Q, [vecs[0]], vecs[2], 3) is None
    assert extend_to_basis(Q, [vecs[0]], vecs, 3) == [vecs[2]]


def test_invertible_combination_exhaustive():
    F2 = Field.prime(2)
    # span of [[1,0],[0,0]] and [[0,0],[0,1]]: the sum is invertible
    b1 = [Mat.from_rows(F2, [[1, 0], [0, 0]])]
    b2 = [Mat.from_rows(F2, [[0, 0], [0, 1]])]
    res = find_invertible_combination(F2, [b1, b2], [(2, 2)])
    assert res.status == "yes" and res.coeffs == (1, 1)
    # nilpotent span has no invertible member
    n = [Mat.from_rows(F2, [[0, 1], [0, 0]])]
    assert find_invertible_combination(F2, [n], [(2, 2)]).status == "no"


def test_invertible_combination_over_q_and_nonsquare():
    b1 = [Mat.from_rows(Q, [[1, 0], [0, 0]])]
    b2 = [Mat.from_rows(Q, [[0, 0], [0, 1]])]
    res = find_invertible_combination(Q, [b1, b2], [(2, 2)], SearchConfig(seed=3))
    assert res.status == "yes"
    assert find_invertible_combination(Q, [[Mat.zeros(Q, 1, 2)]], [(1, 2)]).status == "no"


def test_random_elements_in_range():
    rng = random.Random(0)
    assert all(0 <= F5.random(rng) < 5 for _ in range(50))
    assert all(-2 <= Q.random(rng, 2) <= 2 for _ in range(50))
