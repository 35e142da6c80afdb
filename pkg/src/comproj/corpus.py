"""Small algebras and complexes used in demos, tests and the CLI examples."""
from __future__ import annotations

from .algebra import PathAlgebra, Quiver, build_algebra
from .complexes import ProjComplex, direct_sum, make_complex, stalk
from .exactlin import Field
from .projmaps import HomMatrix


def a2(field: Field | None = None) -> PathAlgebra:
    """The path algebra of ``1 --a--> 2``."""
    F = field or Field.rationals()
    return build_algebra(Quiver.from_triples(2, [("a", 1, 2)]), [], 1, F)


def two_loop(field: Field | None = None) -> PathAlgebra:
    """``1 --a--> 2 --b--> 1`` with ``aba = bab = 0``."""
    F = field or Field.rationals()
    q = Quiver.from_triples(2, [("a", 1, 2), ("b", 2, 1)])
    return build_algebra(q, [[(1, ["a", "b", "a"])], [(1, ["b", "a", "b"])]], 3, F)


# --- A2: P2 -> P1 + P2 -------------------------------------------------------------

def a2_pair(A: PathAlgebra) -> tuple[ProjComplex, ProjComplex]:
    """``(M, N)`` with ``M = (P2 -> P1 + P2, d = (0, 1))`` and ``N`` using ``d = (a, 0)``.

    ``M`` is the split one (``P1`` plus a disk) and degenerates to ``N``.
    """
    arr = {1: (0, 1), 0: (1, 1)}
    M = make_complex(A, arr, {1: [[0], [1]]})
    N = make_complex(A, arr, {1: [[A.path("a")], [0]]})
    return M, N


def a2_witness(A: PathAlgebra) -> ProjComplex:
    """The complex ``P2 --a--> P1`` used as the middle correction term."""
    return make_complex(A, {1: (0, 1), 0: (1, 0)}, {1: [[A.path("a")]]})


# --- two-loop algebra: tilting complexes ---------------------------------------------

def two_loop_T(A: PathAlgebra) -> ProjComplex:
    """``T1 + T2`` with ``T1 = P1 -ba-> P1 -b-> P2`` (degrees 2, 1, 0) and ``T2 = P1 -b-> P2``."""
    b, ba = A.path("b"), A.path("b", "a")
    T1 = ProjComplex(A, {2: (1,), 1: (1,), 0: (2,)},
                     {2: HomMatrix.from_elems(A, [1], [1], [[ba]]),
                      1: HomMatrix.from_elems(A, [1], [2], [[b]])})
    T2 = ProjComplex(A, {1: (1,), 0: (2,)}, {1: HomMatrix.from_elems(A, [1], [2], [[b]])})
    return direct_sum(T1, T2)


def two_loop_S(A: PathAlgebra) -> ProjComplex:
    """A complex with the same array as :func:`two_loop_T` splitting off a disk."""
    b = A.path("b")
    return ProjComplex(A, {2: (1,), 1: (1, 1), 0: (2, 2)},
                       {2: HomMatrix.from_elems(A, [1], [1, 1], [[0], [1]]),
                        1: HomMatrix.from_elems(A, [1, 1], [2, 2], [[b, 0], [0, 0]])})


def two_loop_S_min(A: PathAlgebra) -> ProjComplex:
    """``P1 -(b, 0)-> P2 + P2``, the minimal part of :func:`two_loop_S`."""
    return ProjComplex(A, {1: (1,), 0: (2, 2)}, {1: HomMatrix.from_elems(A, [1], [2, 2], [[A.path("b")], [0]])})


def two_loop_U(A: PathAlgebra) -> ProjComplex:
    """``P1[2] + P2``."""
    return direct_sum(stalk(A, 1, 2), stalk(A, 2, 0))


ALGEBRAS = {"a2": a2, "two-loop": two_loop}
