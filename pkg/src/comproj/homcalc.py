"""Chain-map spaces, derived Hom dimensions and related tests.

All complexes are bounded complexes of projectives, so homotopy classes of
chain maps compute morphisms in the derived category.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Sequence

from .amod import simple, truncated_resolution
from .complexes import (ChainMap, ProjComplex, minimize, shift, stalk)
from .exactlin import (DEFAULT_SEARCH, Mat, SearchConfig, find_invertible_combination, kernel_basis, rank)
from .projmaps import HomMatrix, compose, invert


class GradedMaps:
    """Coordinates on all graded maps ``f_i: X_i -> Y_{i+offset}``.

    Entries are flattened degree by degree, row-major, each entry over the
    path basis of its hom space.
    """

    def __init__(self, X: ProjComplex, Y: ProjComplex, offset: int):
        if X.algebra is not Y.algebra:
            raise ValueError("complexes over different algebras")
        self.X, self.Y, self.offset = X, Y, offset
        A = X.algebra
        self.blocks = []  # (degree, start, [(r, c, start, length)])
        n = 0
        for i in X.terms:
            src, tgt = X.term(i), Y.term(i + offset)
            if not tgt:
                continue
            start = n
            cells = []
            for r, b in enumerate(tgt):
                for c, a in enumerate(src):
                    d = A.hom_dim(a, b)
                    if d:
                        cells.append((r, c, n, d))
                        n += d
            self.blocks.append((i, start, n, cells))
        self.dim = n

    def to_comps(self, vec: Sequence) -> dict[int, HomMatrix]:
        A = self.X.algebra
        z = A.field.zero
        out = {}
        for i, _, _, cells in self.blocks:
            src, tgt = self.X.term(i), self.Y.term(i + self.offset)
            rows = [[(z,) * A.hom_dim(a, b) for a in src] for b in tgt]
            for r, c, s, d in cells:
                rows[r][c] = tuple(vec[s:s + d])
            out[i] = HomMatrix(A, src, tgt, rows)
        return out

    def from_comps(self, comps: dict[int, HomMatrix]) -> list:
        z = self.X.algebra.field.zero
        vec = [z] * self.dim
        for i, _, _, cells in self.blocks:
            m = comps.get(i)
            if m is None:
                continue
            for r, c, s, d in cells:
                vec[s:s + d] = m.entries[r][c]
        return vec

    def unit_comps(self, k: int) -> tuple[int, HomMatrix]:
        """The degree and component of the ``k``-th coordinate vector."""
        F = self.X.algebra.field
        for i, s0, s1, cells in self.blocks:
            if s0 <= k < s1:
                vec = [F.zero] * self.dim
                vec[k] = F.one
                return i, self.to_comps(vec)[i]
        raise IndexError(k)


def _linear_map(src: GradedMaps, tgt: GradedMaps,
                image: Callable[[int, HomMatrix], dict[int, HomMatrix]]) -> Mat:
    """Matrix of a linear map given on single-degree inputs.

    ``image(i, f_i)`` returns the output components it touches.
    """
    F = src.X.algebra.field
    cols = []
    for k in range(src.dim):
        i, m = src.unit_comps(k)
        cols.append(tgt.from_comps(image(i, m)))
    return Mat.from_columns(F, cols, tgt.dim) if cols else Mat.zeros(F, tgt.dim, 0)


def _chain_condition(X: ProjComplex, Yk: ProjComplex) -> Mat:
    """``f -> (∂^Y f_i - f_{i-1} ∂^X_i)_i`` for degree-0 graded maps ``X -> Yk``."""
    src = GradedMaps(X, Yk, 0)
    tgt = GradedMaps(X, Yk, -1)

    def image(i, f):
        out = {}
        if Yk.term(i - 1):
            out[i] = compose(Yk.diff(i), f)
        if X.term(i + 1):
            g = compose(f, X.diff(i + 1))
            out[i + 1] = out[i + 1] - g if i + 1 in out else -g
        return out

    # outputs indexed by source degree: degree i holds ∂f_i - f_{i-1}∂_i
    # which lives in Hom(X_i, Yk_{i-1}); both terms above land there
    return _linear_map(src, tgt, image)


def _homotopy_map(X: ProjComplex, Yk: ProjComplex) -> Mat:
    """``h -> ∂^Y h + h ∂^X`` from ``h_i: X_i -> Yk_{i+1}`` to degree-0 maps."""
    src = GradedMaps(X, Yk, 1)
    tgt = GradedMaps(X, Yk, 0)

    def image(i, h):
        out = {}
        if Yk.term(i):
            out[i] = compose(Yk.diff(i + 1), h)
        if X.term(i + 1):
            g = compose(h, X.diff(i + 1))
            out[i + 1] = out[i + 1] + g if i + 1 in out else g
        return out

    return _linear_map(src, tgt, image)


@dataclass
class HomSpace:
    """Chain maps ``X -> Y[k]`` with the dimension of their homotopy quotient."""

    source: ProjComplex
    target: ProjComplex
    k: int
    basis: list
    null_dim: int

    @property
    def cycle_dim(self) -> int:
        return len(self.basis)

    @property
    def dim(self) -> int:
        return len(self.basis) - self.null_dim


def chain_map_space(X: ProjComplex, Y: ProjComplex, k: int = 0) -> list[ChainMap]:
    """Basis of the chain maps ``X -> Y[k]``."""
    Yk = shift(Y, k)
    space = GradedMaps(X, Yk, 0)
    D = _chain_condition(X, Yk)
    return [ChainMap(X, Y, k, space.to_comps(v)) for v in kernel_basis(D)]


def hom_space(X: ProjComplex, Y: ProjComplex, k: int = 0) -> HomSpace:
    basis = chain_map_space(X, Y, k)
    phi = _homotopy_map(X, shift(Y, k))
    return HomSpace(X, Y, k, basis, rank(phi))


def hom_dim(X: ProjComplex, Y: ProjComplex, k: int = 0) -> int:
    """``dim Hom(X, Y[k])`` in the derived category."""
    return hom_space(X, Y, k).dim


def is_null_homotopic(f: ChainMap) -> bool:
    from .exactlin import solve

    Yk = shift(f.target, f.k)
    phi = _homotopy_map(f.source, Yk)
    vec = GradedMaps(f.source, Yk, 0).from_comps(f.comps)
    return solve(phi, vec) is not None


# --- isomorphism -----------------------------------------------------------------

@dataclass
class IsoVerdict:
    status: str  # "yes", "no" or "inconclusive"
    witness: ChainMap | None = None
    method: str = ""

    def __bool__(self) -> bool:
        return self.status == "yes"


def _unit_blocks(f: ChainMap, degrees: Sequence[int], vertices) -> list[Mat]:
    out = []
    for i in degrees:
        m = f.comp(i)
        for j in vertices:
            rs = [r for r, t in enumerate(m.tgt) if t == j]
            cs = [c for c, t in enumerate(m.src) if t == j]
            if rs or cs:
                out.append(Mat(m.algebra.field, len(rs), len(cs),
                               tuple(tuple(m.entries[r][c][0] for c in cs) for r in rs)))
    return out


def is_isomorphic(X: ProjComplex, Y: ProjComplex, config: SearchConfig = DEFAULT_SEARCH) -> IsoVerdict:
    """Search for a chain map ``X -> Y`` that is invertible in every degree."""
    if X.algebra is not Y.algebra:
        raise ValueError("complexes over different algebras")
    if X.array() != Y.array():
        return IsoVerdict("no", method="graded pieces differ")
    A = X.algebra
    degrees = list(X.terms)
    if not degrees:
        return IsoVerdict("yes", ChainMap(X, Y, 0, {}), method="zero complexes")
    basis = chain_map_space(X, Y, 0)
    blocks = [_unit_blocks(f, degrees, A.vertices) for f in basis]
    if not basis:
        return IsoVerdict("no", method="no chain maps")
    shapes = [(m.nrows, m.ncols) for m in blocks[0]]
    found = find_invertible_combination(A.field, blocks, shapes, config)
    if found.status != "yes":
        return IsoVerdict(found.status, method=found.method)
    w = None
    for c, f in zip(found.coeffs, basis):
        if c != 0:
            w = f.scale(c) if w is None else w + f.scale(c)
    return IsoVerdict("yes", w, method=found.method)


def verify_iso_witness(f: ChainMap) -> bool:
    """Check a claimed isomorphism by inverting it degreewise."""
    if f.k != 0 or not f.is_chain_map() or not f.is_degreewise_iso():
        return False
    inv = ChainMap(f.target, f.source, 0, {i: invert(m) for i, m in f.comps.items()})
    if not inv.is_chain_map():
        return False
    for i, m in f.comps.items():
        if compose(inv.comp(i), m) != HomMatrix.identity(f.source.algebra, f.source.term(i)):
            return False
    return True


def is_homotopy_equivalent(X: ProjComplex, Y: ProjComplex, config: SearchConfig = DEFAULT_SEARCH) -> IsoVerdict:
    return is_isomorphic(minimize(X).complex, minimize(Y).complex, config)


def is_rigid(X: ProjComplex) -> bool:
    return hom_dim(X, X, 1) == 0


# --- hom order -------------------------------------------------------------------

@dataclass
class TestObject:
    __test__ = False  # not a pytest class

    name: str
    complex: ProjComplex


@dataclass
class HomOrderResult:
    consistent: bool
    tests: list
    violation: TestObject | None = None
    dims: tuple | None = None  # (dim Hom(U, X), dim Hom(U, Y)) at the violation
    table: list = dc_field(default_factory=list)

    def summary(self) -> str:
        if self.consistent:
            return f"consistent on {len(self.tests)} tests"
        a, b = self.dims
        return f"violated at U = {self.violation.name}: dim Hom(U, X) = {a} > {b} = dim Hom(U, Y)"


def default_tests(X: ProjComplex, Y: ProjComplex, names: tuple[str, str] = ("X", "Y")) -> list[TestObject]:
    """X, Y, shifted stalks of all P_j around their degrees, and resolutions of simples.

    Stalks cover the degrees ``lo-1 .. hi+1`` of ``X ⊕ Y``; the simples are
    resolved up to degree ``max(1, hi-lo+1)``.
    """
    A = X.algebra
    tests = [TestObject(names[0], X), TestObject(names[1], Y)]
    degs = set(X.terms) | set(Y.terms)
    lo, hi = (min(degs), max(degs)) if degs else (0, 0)
    for s in range(lo - 1, hi + 2):
        for j in A.vertices:
            tests.append(TestObject(f"P{j}[{s}]", stalk(A, j, s)))
    n = max(1, hi - lo + 1)
    for j in A.vertices:
        tests.append(TestObject(f"res(S{j}) to degree {n}", truncated_resolution(simple(A, j), n)))
    return tests


def hom_order_leq(X: ProjComplex, Y: ProjComplex, tests: Sequence[TestObject] | None = None) -> HomOrderResult:
    """Compare ``dim Hom(U, X) <= dim Hom(U, Y)`` over the tests, stopping at the first failure."""
    if tests is None:
        tests = default_tests(X, Y)
    tests = [t if isinstance(t, TestObject) else TestObject(f"U{n}", t) for n, t in enumerate(tests)]
    if not tests:
        raise ValueError("the test set is empty")
    table = []
    for U in tests:
        a, b = hom_dim(U.complex, X, 0), hom_dim(U.complex, Y, 0)
        table.append((U.name, a, b))
        if a > b:
            return HomOrderResult(False, tests, U, (a, b), table)
    return HomOrderResult(True, tests, None, None, table)


# --- tangent spaces --------------------------------------------------------------

def tangent_dims(X: ProjComplex) -> tuple[int, int]:
    """``(scheme tangent dimension, orbit tangent dimension)`` at ``X``."""
    amb = GradedMaps(X, X, -1)
    eq_space = GradedMaps(X, X, -2)

    def lin(i, delta):
        # ∂_{i-1} δ_i + δ_{i-1} ∂_i as a map X_i -> X_{i-2}, and δ_i ∂_{i+1} on X_{i+1}
        out = {}
        if X.term(i - 2):
            out[i] = compose(X.diff(i - 1), delta)
        if X.term(i + 1):
            g = compose(delta, X.diff(i + 1))
            out[i + 1] = out[i + 1] + g if i + 1 in out else g
        return out

    scheme = amb.dim - rank(_linear_map(amb, eq_space, lin))
    endo = GradedMaps(X, X, 0)

    def orbit(i, xi):
        # ξ_{i-1} ∂_i - ∂_i ξ_i lives in degree i; ξ_i also enters degree i+1
        out = {}
        if X.term(i - 1):
            out[i] = -compose(X.diff(i), xi)
        if X.term(i + 1):
            g = compose(xi, X.diff(i + 1))
            out[i + 1] = out[i + 1] + g if i + 1 in out else g
        return out

    orbit_dim = rank(_linear_map(endo, amb, orbit))
    return scheme, orbit_dim
