import pytest

from comproj.amod import (Module, ModuleError, ModuleMap, ModuleSES, identity_map, is_isomorphic_modules,
                          module_hom_space, module_sum, projective, projective_cover, simple, split_ses,
                          truncated_resolution)
from comproj.algebra import Quiver, build_algebra
from comproj.complexes import homology, make_complex
from comproj.exactlin import Field, Mat
from comproj.homcalc import is_isomorphic

Q = Field.rationals()


def a2_ses(A):
    """0 -> S2 + S1 -> P1 + S1 -> S1 -> 0 (not split)."""
    F = A.field
    S1, S2, P1 = simple(A, 1), simple(A, 2), projective(A, 1)
    N, mid = module_sum(S2, S1), module_sum(P1, S1)
    inj = ModuleMap(N, mid, (Mat.from_rows(F, [[0], [1]]), Mat.from_rows(F, [[1]])))
    surj = ModuleMap(mid, S1, (Mat.from_rows(F, [[1, 0]]), Mat.zeros(F, 0, 1)))
    return ModuleSES(N, P1, S1, inj, surj)


def test_projective_dims(a2_q, loop_q):
    assert projective(a2_q, 1).dims == (1, 1)
    assert projective(a2_q, 2).dims == (0, 1)
    assert projective(loop_q, 1).dims == (2, 1)
    point = build_algebra(Quiver.from_triples(1, []), [], 0, Q)
    assert projective(point, 1).dims == (1,)


def test_relations_are_checked(loop_q):
    F = loop_q.field
    one = Mat.from_rows(F, [[1]])
    with pytest.raises(ModuleError):
        Module(loop_q, [1, 1], {"a": one, "b": one})
    Module(loop_q, [1, 1], {"a": one})


def test_hom_dims(a2_q):
    A = a2_q
    S1, S2, P1 = simple(A, 1), simple(A, 2), projective(A, 1)
    assert len(module_hom_space(S2, P1)) == 1
    assert len(module_hom_space(S1, P1)) == 0
    for M in (S1, P1, module_sum(S1, S2)):
        basis = module_hom_space(M, M)
        assert all(f.is_morphism() for f in basis)
        assert identity_map(M).is_morphism()


def test_projective_covers(a2_q):
    A = a2_q
    assert projective_cover(projective(A, 1)).types == (1,)
    c = projective_cover(simple(A, 1))
    assert c.types == (1,) and c.map.is_morphism()
    assert projective_cover(module_sum(simple(A, 1), simple(A, 2))).multiplicities == (1, 1)


def test_resolutions(a2_q):
    A = a2_q
    R = truncated_resolution(projective(A, 1), 1)
    assert R.array() == {0: (1, 0)}
    R = truncated_resolution(simple(A, 1), 1)
    assert R.array() == {1: (0, 1), 0: (1, 0)}
    assert homology(R, 0).dims == (1, 0)
    R = truncated_resolution(module_sum(simple(A, 1), simple(A, 2)), 1)
    N = make_complex(A, {1: (0, 1), 0: (1, 1)}, {1: [[A.path("a")], [0]]})
    assert is_isomorphic(R, N).status == "yes"


def test_loop_resolution(loop_q):
    # rad P1 = <a, ba> is covered by P2 with kernel <ab> = S2; the next kernel <b, ab> needs P1
    R = truncated_resolution(simple(loop_q, 1), 3)
    assert R.array() == {3: (1, 0), 2: (0, 1), 1: (0, 1), 0: (1, 0)}
    for i in range(1, 3):
        assert homology(R, i).dims == (0, 0)
    assert homology(R, 0).dims == (1, 0)


def test_module_iso(a2_q):
    A = a2_q
    M = module_sum(simple(A, 1), simple(A, 2))
    N = module_sum(simple(A, 2), simple(A, 1))
    assert is_isomorphic_modules(M, N)[0] == "yes"
    assert is_isomorphic_modules(M, projective(A, 1))[0] == "no"


def test_ses_verify(a2_q):
    assert a2_ses(a2_q).verify()
    s = split_ses(simple(a2_q, 1), simple(a2_q, 2))
    assert s.verify()
    bad = a2_ses(a2_q)
    F = a2_q.field
    broken = ModuleSES(bad.N, bad.M, bad.Z, bad.inj,
                       ModuleMap(bad.middle, bad.Z, (Mat.from_rows(F, [[0, 1]]), Mat.zeros(F, 0, 1))))
    assert not broken.verify()
