"""Finite-dimensional A-modules as quiver representations.

Submodules are passed around as ``{vertex: [basis vectors]}`` dictionaries of
vectors in the ambient vertex spaces.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .algebra import PathAlgebra
from .exactlin import (DEFAULT_SEARCH, Mat, SearchConfig, block_diag, coordinates, extend_to_basis,
                       find_invertible_combination, independent_subset, kernel_basis, linear_map_matrix,
                       matmul, rank, rref)
from .projmaps import HomMatrix


class ModuleError(ValueError):
    pass


class Module:
    """A representation: one vector space per vertex and one matrix per arrow."""

    def __init__(self, algebra: PathAlgebra, dims: Sequence[int], maps: Mapping[str, Mat] | None = None,
                 check: bool = True):
        self.algebra = algebra
        self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != algebra.num_vertices or any(d < 0 for d in self.dims):
            raise ModuleError("dimension vector must have one nonnegative entry per vertex")
        F = algebra.field
        maps = dict(maps or {})
        full = {}
        for a in algebra.quiver.arrows:
            shape = (self.dims[a.target - 1], self.dims[a.source - 1])
            m = maps.pop(a.name, None)
            if m is None:
                m = Mat.zeros(F, *shape)
            elif not isinstance(m, Mat):
                m = Mat.from_rows(F, m, shape[1])
            if m.shape != shape:
                raise ModuleError(f"arrow {a.name!r} needs a {shape[0]}x{shape[1]} matrix, got {m.shape}")
            full[a.name] = m
        if maps:
            raise ModuleError(f"unknown arrows {sorted(maps)}")
        self.maps = full
        if check:
            for (t, s), terms in algebra.relations:
                acc = Mat.zeros(F, self.dims[t - 1], self.dims[s - 1])
                for c, word in terms:
                    acc = acc + self.action(word).scale(c)
                if not acc.is_zero():
                    raise ModuleError("a relation of the algebra does not act as zero")

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.dim == 0

    def action(self, word: Sequence[str], source: int | None = None) -> Mat:
        """Matrix of a path word (composition order); ``source`` needed for trivial paths."""
        F = self.algebra.field
        if not word:
            return Mat.identity(F, self.dims[source - 1])
        m = self.maps[word[0]]
        for name in word[1:]:
            m = matmul(m, self.maps[name])
        return m

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Module) and self.algebra is other.algebra and self.dims == other.dims
                and self.maps == other.maps)

    def __repr__(self) -> str:
        return f"Module(dims={self.dims})"


@dataclass(frozen=True)
class ModuleMap:
    """A module homomorphism, one matrix per vertex (``mats[v-1]``)."""

    source: Module
    target: Module
    mats: tuple

    def at(self, v: int) -> Mat:
        return self.mats[v - 1]

    def is_morphism(self) -> bool:
        for a in self.source.algebra.quiver.arrows:
            lhs = matmul(self.target.maps[a.name], self.at(a.source))
            rhs = matmul(self.at(a.target), self.source.maps[a.name])
            if lhs != rhs:
                return False
        return True

    def compose(self, first: "ModuleMap") -> "ModuleMap":
        """``self ∘ first``."""
        return ModuleMap(first.source, self.target, tuple(matmul(a, b) for a, b in zip(self.mats, first.mats)))

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.mats)


def identity_map(M: Module) -> ModuleMap:
    F = M.algebra.field
    return ModuleMap(M, M, tuple(Mat.identity(F, d) for d in M.dims))


# --- constructors --------------------------------------------------------------

def projective_sum(A: PathAlgebra, types: Sequence[int]) -> Module:
    """``⊕_r P_{types[r]}``; the vertex-``v`` space is ``⊕_r e_v A e_{types[r]}``."""
    F = A.field
    dims = [sum(A.hom_dim(v, t) for t in types) for v in A.vertices]
    maps = {}
    for a in A.quiver.arrows:
        u, v = a.source, a.target
        gamma = A.path(a.name).coeffs
        blocks_ = []
        for t in types:
            du = A.hom_dim(u, t)
            cols = []
            for x in range(du):
                unit = tuple(F.one if y == x else F.zero for y in range(du))
                cols.append(A.prod(v, u, t, gamma, unit))
            blocks_.append(Mat.from_columns(F, cols, A.hom_dim(v, t)) if cols
                           else Mat.zeros(F, A.hom_dim(v, t), 0))
        maps[a.name] = block_diag(F, blocks_)
    return Module(A, dims, maps, check=False)


def projective(A: PathAlgebra, j: int) -> Module:
    """The indecomposable projective ``P_j = A e_j``."""
    return projective_sum(A, [j])


def simple(A: PathAlgebra, j: int) -> Module:
    return Module(A, [1 if v == j else 0 for v in A.vertices])


def module_sum(*mods: Module) -> Module:
    A = mods[0].algebra
    F = A.field
    dims = [sum(M.dims[v - 1] for M in mods) for v in A.vertices]
    maps = {a.name: block_diag(F, [M.maps[a.name] for M in mods]) for a in A.quiver.arrows}
    return Module(A, dims, maps, check=False)


def sum_injection(mods: Sequence[Module], k: int) -> ModuleMap:
    """Inclusion of the ``k``-th summand into ``module_sum(*mods)``."""
    total = module_sum(*mods)
    F = total.algebra.field
    mats = []
    for v in total.algebra.vertices:
        off = sum(M.dims[v - 1] for M in mods[:k])
        d = mods[k].dims[v - 1]
        rows = [[F.one if (r - off) == c else F.zero for c in range(d)] for r in range(total.dims[v - 1])]
        mats.append(Mat(F, total.dims[v - 1], d, tuple(map(tuple, rows))))
    return ModuleMap(mods[k], total, tuple(mats))


def sum_projection(mods: Sequence[Module], k: int) -> ModuleMap:
    inj = sum_injection(mods, k)
    return ModuleMap(inj.target, inj.source, tuple(m.transpose() for m in inj.mats))


# --- hom spaces -----------------------------------------------------------------

def module_hom_space(M: Module, N: Module) -> list[ModuleMap]:
    """Basis of ``Hom_A(M, N)`` as kernel of the commutation constraints."""
    if M.algebra is not N.algebra:
        raise ModuleError("modules over different algebras")
    A = M.algebra
    F = A.field
    offs = []
    n = 0
    for v in A.vertices:
        offs.append(n)
        n += N.dims[v - 1] * M.dims[v - 1]

    def unpack(vec) -> list[Mat]:
        mats = []
        for v in A.vertices:
            r, c = N.dims[v - 1], M.dims[v - 1]
            o = offs[v - 1]
            mats.append(Mat(F, r, c, tuple(tuple(vec[o + i * c + j] for j in range(c)) for i in range(r))))
        return mats

    arrows = A.quiver.arrows
    out_dim = sum(N.dims[a.target - 1] * M.dims[a.source - 1] for a in arrows)

    def image(k: int):
        vec = [F.zero] * n
        vec[k] = F.one
        mats = unpack(vec)
        out = []
        for a in arrows:
            d = matmul(N.maps[a.name], mats[a.source - 1]) - matmul(mats[a.target - 1], M.maps[a.name])
            out.extend(x for row in d.rows for x in row)
        return out

    D = linear_map_matrix(F, n, out_dim, image)
    return [ModuleMap(M, N, tuple(unpack(v))) for v in kernel_basis(D)]


def is_isomorphic_modules(M: Module, N: Module, config: SearchConfig = DEFAULT_SEARCH):
    """``(status, witness)`` with status ``"yes"``, ``"no"`` or ``"inconclusive"``."""
    if M.dims != N.dims:
        return "no", None
    basis = module_hom_space(M, N)
    A = M.algebra
    shapes = [(d, d) for d in M.dims]
    found = find_invertible_combination(A.field, [list(f.mats) for f in basis], shapes, config)
    if found.status != "yes":
        return found.status, None
    F = A.field
    mats = []
    for k, (d, _) in enumerate(shapes):
        acc = Mat.zeros(F, d, d)
        for c, f in zip(found.coeffs, basis):
            if c != 0:
                acc = acc + f.mats[k].scale(c)
        mats.append(acc)
    return "yes", ModuleMap(M, N, tuple(mats))


# --- submodules, tops, covers ---------------------------------------------------

def _span_basis(F, vectors, dim):
    if not vectors:
        return []
    keep = independent_subset(F, vectors, dim)
    return [tuple(vectors[i]) for i in keep]


def radical_of(M: Module, sub: Mapping[int, Sequence] | None = None) -> dict[int, list]:
    """``rad`` of a submodule: the span of arrow images landing in each vertex."""
    A = M.algebra
    F = A.field
    if sub is None:
        sub = {v: _unit_vectors(F, M.dims[v - 1]) for v in A.vertices}
    rad = {}
    for v in A.vertices:
        vecs = []
        for a in A.quiver.arrows:
            if a.target == v:
                m = M.maps[a.name]
                vecs.extend(m.apply(x) for x in sub[a.source])
        rad[v] = _span_basis(F, vecs, M.dims[v - 1])
    return rad


def _unit_vectors(F, d):
    return [tuple(F.one if i == j else F.zero for i in range(d)) for j in range(d)]


def _row_reduced(F, vectors, dim):
    if not vectors:
        return []
    r, _, red = rref(Mat(F, len(vectors), dim, tuple(tuple(v) for v in vectors)))
    return [red.rows[i] for i in range(r)]


def top_generators(M: Module, sub: Mapping[int, Sequence] | None = None) -> list[tuple[int, tuple]]:
    """Vectors spanning ``sub / rad(sub)``, as ``(vertex, vector)`` in vertex order."""
    A = M.algebra
    F = A.field
    if sub is None:
        sub = {v: _unit_vectors(F, M.dims[v - 1]) for v in A.vertices}
    rad = radical_of(M, sub)
    gens = []
    for j in A.vertices:
        base = rad[j]
        cands = _row_reduced(F, list(sub[j]), M.dims[j - 1])
        for x in extend_to_basis(F, base, cands, M.dims[j - 1]):
            gens.append((j, x))
    return gens


def generated_map(M: Module, gens: Sequence[tuple[int, tuple]]) -> ModuleMap:
    """The map ``⊕ P_j -> M`` sending the generator of summand ``k`` to ``gens[k]``."""
    A = M.algebra
    F = A.field
    types = [j for j, _ in gens]
    P = projective_sum(A, types)
    mats = []
    for v in A.vertices:
        cols = []
        for j, x in gens:
            for p in A.hom_paths(v, j):
                cols.append(M.action(p.arrows, source=j).apply(x))
        mats.append(Mat.from_columns(F, cols, M.dims[v - 1]) if cols else Mat.zeros(F, M.dims[v - 1], 0))
    return ModuleMap(P, M, tuple(mats))


@dataclass(frozen=True)
class Cover:
    types: tuple[int, ...]
    map: ModuleMap

    @property
    def multiplicities(self) -> tuple[int, ...]:
        l = self.map.target.algebra.num_vertices
        return tuple(self.types.count(j) for j in range(1, l + 1))


def projective_cover(M: Module) -> Cover:
    """Projective cover ``⊕ P_j^{m_j} -> M`` with ``m_j = dim top(M)_j``.

    The zero module gets the empty cover.
    """
    gens = top_generators(M)
    return Cover(tuple(j for j, _ in gens), generated_map(M, gens))


def kernel_sub(f: ModuleMap) -> dict[int, list]:
    return {v: kernel_basis(f.at(v)) for v in f.source.algebra.vertices}


def hom_matrix_kernel(f: HomMatrix) -> dict[int, list]:
    """Vertexwise kernel of a map between sums of projectives."""
    return {v: kernel_basis(f.linearize_at(v)) for v in f.algebra.vertices}


def hom_matrix_image(f: HomMatrix) -> dict[int, list]:
    F = f.algebra.field
    out = {}
    for v in f.algebra.vertices:
        m = f.linearize_at(v)
        out[v] = _span_basis(F, m.columns(), m.nrows)
    return out


def cover_columns(A: PathAlgebra, ambient_types: Sequence[int],
                  gens: Sequence[tuple[int, tuple]]) -> HomMatrix:
    """HomMatrix ``⊕ P_j -> ⊕ P_{ambient}`` whose columns are generator vectors."""
    cols_types = [j for j, _ in gens]
    rows = [[None] * len(gens) for _ in ambient_types]
    for c, (j, x) in enumerate(gens):
        off = 0
        for r, t in enumerate(ambient_types):
            d = A.hom_dim(j, t)
            rows[r][c] = tuple(x[off:off + d])
            off += d
    return HomMatrix(A, cols_types, ambient_types, rows)


def cover_submodule(A: PathAlgebra, ambient_types: Sequence[int], sub: Mapping[int, Sequence]) -> HomMatrix:
    """Minimal projective cover of a submodule of ``⊕ P_{ambient}``, as a HomMatrix."""
    P = projective_sum(A, ambient_types)
    return cover_columns(A, ambient_types, top_generators(P, sub))


def submodule(M: Module, sub: Mapping[int, Sequence]) -> tuple[Module, ModuleMap]:
    """The submodule spanned vertexwise by ``sub`` (assumed closed) and its inclusion."""
    return subquotient(M, sub, {v: [] for v in M.algebra.vertices})[:2]


def subquotient(M: Module, K: Mapping[int, Sequence], B: Mapping[int, Sequence]):
    """``K / B`` for submodules ``B ⊆ K`` of ``M``.

    Returns ``(module, reps, boundary)`` where ``reps[v]`` are representatives
    in ``M(v)`` of the quotient basis and ``boundary[v]`` a basis of ``B(v)``.
    The middle entry is a ModuleMap only when ``B`` is zero (the inclusion).
    """
    A = M.algebra
    F = A.field
    reps, bnd = {}, {}
    for v in A.vertices:
        d = M.dims[v - 1]
        bnd[v] = _span_basis(F, list(B[v]), d)
        reps[v] = extend_to_basis(F, bnd[v], _row_reduced(F, list(K[v]), d), d)
    dims = [len(reps[v]) for v in A.vertices]
    maps = {}
    for a in A.quiver.arrows:
        u, v = a.source, a.target
        cols = []
        for q in reps[u]:
            w = M.maps[a.name].apply(q)
            cols.append(quotient_coords(F, bnd[v], reps[v], w, M.dims[v - 1]))
        maps[a.name] = Mat.from_columns(F, cols, dims[v - 1]) if cols else Mat.zeros(F, dims[v - 1], 0)
    Q = Module(A, dims, maps, check=False)
    if all(not bnd[v] for v in A.vertices):
        inc = ModuleMap(Q, M, tuple(Mat.from_columns(F, reps[v], M.dims[v - 1]) if reps[v]
                                    else Mat.zeros(F, M.dims[v - 1], 0) for v in A.vertices))
    else:
        inc = None
    return Q, inc, (reps, bnd)


def quotient_coords(F, boundary: Sequence, reps: Sequence, w: Sequence, dim: int) -> tuple:
    """Coordinates of ``w`` modulo ``span(boundary)`` in the basis ``reps``."""
    x = coordinates(F, list(boundary) + list(reps), w, dim)
    if x is None:
        raise ModuleError("vector does not lie in the expected subspace")
    return tuple(x[len(boundary):])


def truncated_resolution(M: Module, n: int):
    """Minimal projective resolution ``P_n -> ... -> P_0`` of ``M`` (degrees ``n..0``)."""
    from .complexes import ProjComplex

    if n < 0:
        raise ModuleError("resolution length must be nonnegative")
    A = M.algebra
    cover = projective_cover(M)
    terms = {0: cover.types}
    diffs = {}
    K = kernel_sub(cover.map)
    prev = cover.types
    for i in range(1, n + 1):
        if all(not K[v] for v in A.vertices):
            break
        d = cover_submodule(A, prev, K)
        terms[i] = d.src
        diffs[i] = d
        K = hom_matrix_kernel(d)
        prev = d.src
    return ProjComplex(A, terms, diffs)


# --- short exact sequences -----------------------------------------------------

@dataclass(frozen=True)
class ModuleSES:
    """``0 -> N --inj--> M ⊕ Z --surj--> Z -> 0``."""

    N: Module
    M: Module
    Z: Module
    inj: ModuleMap
    surj: ModuleMap

    @property
    def middle(self) -> Module:
        return module_sum(self.M, self.Z)

    def verify(self) -> bool:
        mid = self.middle
        if self.inj.source.dims != self.N.dims or self.inj.target.dims != mid.dims:
            return False
        if self.surj.source.dims != mid.dims or self.surj.target.dims != self.Z.dims:
            return False
        if not (ModuleMap(self.N, mid, self.inj.mats).is_morphism()
                and ModuleMap(mid, self.Z, self.surj.mats).is_morphism()):
            return False
        for v in self.N.algebra.vertices:
            i, s = self.inj.at(v), self.surj.at(v)
            if not matmul(s, i).is_zero():
                return False
            if rank(i) != self.N.dims[v - 1] or rank(s) != self.Z.dims[v - 1]:
                return False
            if self.N.dims[v - 1] + self.Z.dims[v - 1] != mid.dims[v - 1]:
                return False
        return True


def split_ses(N: Module, Z: Module) -> ModuleSES:
    """``0 -> N -> N ⊕ Z -> Z -> 0`` with the canonical maps."""
    inj = sum_injection([N, Z], 0)
    surj = sum_projection([N, Z], 1)
    return ModuleSES(N, N, Z, inj, surj)
