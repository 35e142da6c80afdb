"""Bounded complexes of projective modules and the operations on them.

Grading is homological: ``∂_i: X_i -> X_{i-1}`` and ``∂_i ∘ ∂_{i+1} = 0``.
Each degree ``X_i`` is a tuple of vertex types ``(t_1, ..., t_r)`` standing
for ``P_{t_1} ⊕ ... ⊕ P_{t_r}``; the order of summands is part of the data.

Shift convention: ``X[s]_m = X_{m-s}`` with differential ``(-1)^s ∂^X_{m-s}``.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Mapping, Sequence

from .algebra import PathAlgebra, inverse_elem
from .amod import (Module, cover_submodule, hom_matrix_image, hom_matrix_kernel, projective_sum,
                   quotient_coords, subquotient)
from .exactlin import rank
from .projmaps import HomMatrix, compose, direct_sum as hom_direct_sum, invert, is_iso, permutation

DimArray = dict  # degree -> tuple of multiplicities per vertex


class ComplexError(ValueError):
    pass


# --- dimension arrays ----------------------------------------------------------

def types_of(mults: Sequence[int]) -> tuple[int, ...]:
    """Canonical summand list for a multiplicity vector: ``P_1^{m_1} ⊕ P_2^{m_2} ⊕ ...``."""
    if any(m < 0 for m in mults):
        raise ComplexError("negative multiplicity")
    return tuple(j for j, m in enumerate(mults, start=1) for _ in range(m))


def mults_of(types: Sequence[int], l: int) -> tuple[int, ...]:
    return tuple(sum(1 for t in types if t == j) for j in range(1, l + 1))


def clean_array(d: Mapping[int, Sequence[int]]) -> DimArray:
    out = {}
    for i, v in d.items():
        v = tuple(int(x) for x in v)
        if any(x < 0 for x in v):
            raise ComplexError("negative multiplicity")
        if any(v):
            out[int(i)] = v
    return dict(sorted(out.items()))


def array_add(a: DimArray, b: DimArray, l: int) -> DimArray:
    z = (0,) * l
    return clean_array({i: tuple(x + y for x, y in zip(a.get(i, z), b.get(i, z))) for i in set(a) | set(b)})


def array_leq(a: DimArray, b: DimArray, l: int) -> bool:
    z = (0,) * l
    return all(x <= y for i in set(a) | set(b) for x, y in zip(a.get(i, z), b.get(i, z)))


def array_diff(a: DimArray, b: DimArray, l: int) -> DimArray:
    """``a - b`` for ``b <= a``."""
    if not array_leq(b, a, l):
        raise ComplexError("array difference would be negative")
    z = (0,) * l
    return clean_array({i: tuple(x - y for x, y in zip(a.get(i, z), b.get(i, z))) for i in a})


def format_array(d: DimArray) -> str:
    if not d:
        return "{}"
    parts = [f"{i}:({','.join(map(str, v))})" for i, v in sorted(d.items(), reverse=True)]
    return "{" + ", ".join(parts) + "}"


def k0_of_array(d: DimArray, l: int) -> tuple[int, ...]:
    out = [0] * l
    for i, v in d.items():
        s = -1 if i % 2 else 1
        for j, x in enumerate(v):
            out[j] += s * x
    return tuple(out)


# --- the complex ----------------------------------------------------------------

class ProjComplex:
    """A bounded complex of finitely generated projective modules."""

    __slots__ = ("algebra", "terms", "diffs")

    def __init__(self, algebra: PathAlgebra, terms: Mapping[int, Sequence[int]],
                 diffs: Mapping[int, HomMatrix] | None = None, check: bool = True):
        self.algebra = algebra
        l = algebra.num_vertices
        t = {}
        for i, types in terms.items():
            types = tuple(int(x) for x in types)
            if any(not 1 <= x <= l for x in types):
                raise ComplexError(f"degree {i}: vertex type outside 1..{l}")
            if types:
                t[int(i)] = types
        self.terms = dict(sorted(t.items()))
        diffs = dict(diffs or {})
        d = {}
        for i, m in diffs.items():
            i = int(i)
            src, tgt = self.terms.get(i, ()), self.terms.get(i - 1, ())
            if m.src != src or m.tgt != tgt:
                raise ComplexError(f"differential in degree {i} has types {list(m.src)} -> {list(m.tgt)}, "
                                   f"expected {list(src)} -> {list(tgt)}")
            if m.algebra is not algebra:
                raise ComplexError("differential over a different algebra")
            if src and tgt:
                d[i] = m
        for i in self.terms:
            if i - 1 in self.terms and i not in d:
                d[i] = HomMatrix.zero(algebra, self.terms[i], self.terms[i - 1])
        self.diffs = dict(sorted(d.items()))
        if check:
            for i in self.diffs:
                if i + 1 in self.diffs and not compose(self.diffs[i], self.diffs[i + 1]).is_zero():
                    raise ComplexError(f"∂_{i} ∘ ∂_{i + 1} is not zero")

    # --- accessors -----------------------------------------------------------

    @property
    def degrees(self) -> list[int]:
        return list(self.terms)

    @property
    def lo(self) -> int | None:
        return min(self.terms) if self.terms else None

    @property
    def hi(self) -> int | None:
        return max(self.terms) if self.terms else None

    def term(self, i: int) -> tuple[int, ...]:
        return self.terms.get(i, ())

    def diff(self, i: int) -> HomMatrix:
        m = self.diffs.get(i)
        if m is None:
            m = HomMatrix.zero(self.algebra, self.term(i), self.term(i - 1))
        return m

    def mults(self, i: int) -> tuple[int, ...]:
        return mults_of(self.term(i), self.algebra.num_vertices)

    def array(self) -> DimArray:
        return {i: self.mults(i) for i in self.terms}

    def is_zero(self) -> bool:
        return not self.terms

    def vector_dims(self, i: int) -> tuple[int, ...]:
        """Dimension vector of the module ``X_i``."""
        A = self.algebra
        return tuple(sum(A.hom_dim(v, t) for t in self.term(i)) for v in A.vertices)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, ProjComplex) and self.algebra is other.algebra
                and self.terms == other.terms and self.diffs == other.diffs)

    def __hash__(self) -> int:
        return hash((tuple(self.terms.items()), tuple(self.diffs.items())))

    def __repr__(self) -> str:
        if not self.terms:
            return "ProjComplex(0)"
        parts = []
        for i in sorted(self.terms, reverse=True):
            parts.append(f"{i}:" + "+".join(f"P{t}" for t in self.terms[i]))
        return f"ProjComplex({' -> '.join(parts)})"

    def describe(self) -> str:
        """Multi-line human-readable dump."""
        lines = [f"array {format_array(self.array())}"]
        for i in sorted(self.terms, reverse=True):
            lines.append(f"  X_{i} = " + " ⊕ ".join(f"P{t}" for t in self.terms[i]))
            if i in self.diffs:
                m = self.diffs[i]
                for r in range(len(m.tgt)):
                    lines.append(f"    ∂_{i}[{r}] = [" + ", ".join(str(m.elem(r, c)) for c in range(len(m.src))) + "]")
        return "\n".join(lines)


def zero_complex(A: PathAlgebra) -> ProjComplex:
    return ProjComplex(A, {})


def make_complex(A: PathAlgebra, d: Mapping[int, Sequence[int]], differentials: Mapping | None = None) -> ProjComplex:
    """Complex with canonical summand order from a dimension array.

    ``differentials[i]`` is either a HomMatrix or a nested list of entries
    accepted by :meth:`HomMatrix.from_elems`.
    """
    d = clean_array(d)
    terms = {i: types_of(v) for i, v in d.items()}
    diffs = {}
    for i, m in (differentials or {}).items():
        if not isinstance(m, HomMatrix):
            m = HomMatrix.from_elems(A, terms.get(i, ()), terms.get(i - 1, ()), m)
        diffs[i] = m
    return ProjComplex(A, terms, diffs)


def stalk(A: PathAlgebra, j: int | Sequence[int], degree: int = 0) -> ProjComplex:
    """``P_j`` (or a sum of projectives given as a type list) concentrated in one degree."""
    types = (j,) if isinstance(j, int) else tuple(j)
    return ProjComplex(A, {degree: types})


def disk(A: PathAlgebra, j: int, top: int) -> ProjComplex:
    """The contractible complex ``P_j --id--> P_j`` in degrees ``top, top-1``."""
    return ProjComplex(A, {top: (j,), top - 1: (j,)}, {top: HomMatrix.identity(A, (j,))})


def contractible(A: PathAlgebra, pieces: Iterable[tuple[int, int]]) -> ProjComplex:
    """Direct sum of disks given as ``(top degree, vertex)`` pairs."""
    out = zero_complex(A)
    for top, j in pieces:
        out = direct_sum(out, disk(A, j, top))
    return out


# --- basic constructions --------------------------------------------------------

def shift(X: ProjComplex, s: int) -> ProjComplex:
    sign = -1 if s % 2 else 1
    terms = {i + s: t for i, t in X.terms.items()}
    diffs = {i + s: (m.scale(sign) if sign < 0 else m) for i, m in X.diffs.items()}
    return ProjComplex(X.algebra, terms, diffs, check=False)


def direct_sum(*cxs: ProjComplex) -> ProjComplex:
    if not cxs:
        raise ComplexError("direct_sum needs at least one complex")
    A = cxs[0].algebra
    if any(X.algebra is not A for X in cxs):
        raise ComplexError("complexes over different algebras")
    out = cxs[0]
    for Y in cxs[1:]:
        X = out
        degs = set(X.terms) | set(Y.terms)
        terms = {i: X.term(i) + Y.term(i) for i in degs}
        diffs = {}
        for i in degs:
            if (i - 1) in degs and (X.term(i) + Y.term(i)) and (X.term(i - 1) + Y.term(i - 1)):
                diffs[i] = hom_direct_sum(X.diff(i), Y.diff(i))
        out = ProjComplex(A, terms, diffs, check=False)
    return out


def truncate(X: ProjComplex, n: int) -> ProjComplex:
    """Naive truncation keeping the degrees ``<= n``."""
    terms = {i: t for i, t in X.terms.items() if i <= n}
    diffs = {i: m for i, m in X.diffs.items() if i <= n}
    return ProjComplex(X.algebra, terms, diffs, check=False)


def truncate_below(X: ProjComplex, n: int) -> ProjComplex:
    """Naive truncation keeping the degrees ``>= n``."""
    terms = {i: t for i, t in X.terms.items() if i >= n}
    diffs = {i: m for i, m in X.diffs.items() if i > n}
    return ProjComplex(X.algebra, terms, diffs, check=False)


# --- chain maps -------------------------------------------------------------------

class ChainMap:
    """Graded map ``f_i: X_i -> Y_{i-k}``, a chain map ``X -> Y[k]`` when it commutes."""

    __slots__ = ("source", "target", "k", "comps", "_A")

    def __init__(self, source: ProjComplex, target: ProjComplex, k: int = 0,
                 comps: Mapping[int, HomMatrix] | None = None):
        self.source = source
        self.target = target
        self.k = k
        A = source.algebra
        c = {}
        for i, m in (comps or {}).items():
            if m.src != source.term(i) or m.tgt != target.term(i - k):
                raise ComplexError(f"component {i} has the wrong summand types")
            if m.src and m.tgt:
                c[int(i)] = m
        self.comps = dict(sorted(c.items()))
        self._A = A

    def comp(self, i: int) -> HomMatrix:
        m = self.comps.get(i)
        if m is None:
            m = HomMatrix.zero(self._A, self.source.term(i), self.target.term(i - self.k))
        return m

    def degrees(self) -> list[int]:
        return sorted(set(self.source.terms))

    def is_chain_map(self) -> bool:
        sign = -1 if self.k % 2 else 1
        degs = set(self.source.terms) | {i + 1 for i in self.source.terms}
        for i in degs:
            lhs = compose(self.target.diff(i - self.k), self.comp(i))
            if sign < 0:
                lhs = -lhs
            rhs = compose(self.comp(i - 1), self.source.diff(i))
            if lhs != rhs:
                return False
        return True

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.comps.values())

    def __add__(self, other: "ChainMap") -> "ChainMap":
        degs = set(self.comps) | set(other.comps)
        return ChainMap(self.source, self.target, self.k, {i: self.comp(i) + other.comp(i) for i in degs})

    def __sub__(self, other: "ChainMap") -> "ChainMap":
        return self + other.scale(-1)

    def scale(self, c) -> "ChainMap":
        return ChainMap(self.source, self.target, self.k, {i: m.scale(c) for i, m in self.comps.items()})

    def then(self, g: "ChainMap") -> "ChainMap":
        """``g ∘ self`` for degree-0 maps."""
        if self.k or g.k:
            raise ComplexError("composition is implemented for degree-0 maps")
        return ChainMap(self.source, g.target, 0,
                        {i: compose(g.comp(i), self.comp(i)) for i in self.source.terms})

    def is_degreewise_iso(self) -> bool:
        if self.k:
            return False
        for i in set(self.source.terms) | set(self.target.terms):
            m = self.comp(i)
            if len(m.src) != len(m.tgt) or not is_iso(m):
                return False
        return True

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, ChainMap) and self.k == other.k and self.source == other.source
                and self.target == other.target
                and all(self.comp(i) == other.comp(i) for i in set(self.comps) | set(other.comps)))

    def __repr__(self) -> str:
        return f"ChainMap(k={self.k}, degrees={list(self.comps)})"


def identity_map(X: ProjComplex) -> ChainMap:
    return ChainMap(X, X, 0, {i: HomMatrix.identity(X.algebra, t) for i, t in X.terms.items()})


def zero_map(X: ProjComplex, Y: ProjComplex, k: int = 0) -> ChainMap:
    return ChainMap(X, Y, k, {})


def cone(f: ChainMap) -> ProjComplex:
    """Mapping cone: degree ``m`` is ``X_{m-1} ⊕ Y_m`` with ``∂ = [[-∂^X, 0], [f, ∂^Y]]``."""
    if f.k != 0:
        raise ComplexError("cone needs a degree-0 chain map")
    X, Y = f.source, f.target
    A = X.algebra
    degs = {i + 1 for i in X.terms} | set(Y.terms)
    terms = {m: X.term(m - 1) + Y.term(m) for m in degs}
    diffs = {}
    for m in degs:
        src, tgt = terms.get(m, ()), X.term(m - 2) + Y.term(m - 1)
        if not src or not tgt:
            continue
        top = hom_direct_sum(-X.diff(m - 1), Y.diff(m))
        # insert f_{m-1} into the lower-left block
        fm = f.comp(m - 1)
        nx = len(X.term(m - 1))
        ox = len(X.term(m - 2))
        rows = [list(r) for r in top.entries]
        for r in range(len(fm.tgt)):
            for c in range(nx):
                rows[ox + r][c] = fm.entries[r][c]
        diffs[m] = HomMatrix(A, src, tgt, rows)
    return ProjComplex(A, terms, diffs)


# --- graded isomorphisms ------------------------------------------------------------

class GradedAutomorphism:
    """Degreewise isomorphisms ``g_i: X_i -> X'_i`` (``X'_i`` a reordering of ``X_i``)."""

    __slots__ = ("comps",)

    def __init__(self, comps: Mapping[int, HomMatrix]):
        for i, m in comps.items():
            if sorted(m.src) != sorted(m.tgt) or not is_iso(m):
                raise ComplexError(f"component {i} is not invertible")
        self.comps = dict(sorted(comps.items()))

    @classmethod
    def identity(cls, X: ProjComplex) -> "GradedAutomorphism":
        return cls({i: HomMatrix.identity(X.algebra, t) for i, t in X.terms.items()})

    def act(self, X: ProjComplex) -> ProjComplex:
        """Conjugation ``∂'_i = g_{i-1} ∂_i g_i^{-1}``."""
        for i, t in X.terms.items():
            if self.comps.get(i) is None or self.comps[i].src != t:
                raise ComplexError(f"automorphism does not match the complex in degree {i}")
        inv = {i: invert(m) for i, m in self.comps.items()}
        terms = {i: self.comps[i].tgt for i in X.terms}
        diffs = {i: compose(self.comps[i - 1], compose(m, inv[i])) for i, m in X.diffs.items()}
        return ProjComplex(X.algebra, terms, diffs, check=False)

    def inverse(self) -> "GradedAutomorphism":
        return GradedAutomorphism({i: invert(m) for i, m in self.comps.items()})

    def then(self, h: "GradedAutomorphism") -> "GradedAutomorphism":
        """``h ∘ self``."""
        return GradedAutomorphism({i: compose(h.comps[i], m) for i, m in self.comps.items()})

    def as_chain_map(self, X: ProjComplex) -> ChainMap:
        return ChainMap(X, self.act(X), 0, self.comps)


# --- minimization ---------------------------------------------------------------------

@dataclass
class MinimizeResult:
    """Outcome of :func:`minimize`.

    ``automorphism.act(X) == direct_sum(complex, contractible)`` holds exactly.
    """

    complex: ProjComplex
    automorphism: GradedAutomorphism
    contractible: ProjComplex
    pieces: list = dc_field(default_factory=list)

    @property
    def stripped(self) -> DimArray:
        return self.contractible.array()


def _elem_matrix(A, types, entries: dict) -> HomMatrix:
    """Identity on ``types`` with some off-diagonal or diagonal entries replaced."""
    n = len(types)
    z = A.field.zero
    rows = []
    for r in range(n):
        row = []
        for c in range(n):
            if (r, c) in entries:
                row.append(entries[(r, c)].coeffs)
            elif r == c:
                row.append(A.idem(types[r]).coeffs)
            else:
                row.append((z,) * A.hom_dim(types[c], types[r]))
        rows.append(row)
    return HomMatrix(A, types, types, rows)


def _find_pivot(m: HomMatrix, dead_rows: set, dead_cols: set):
    for r, tr in enumerate(m.tgt):
        if r in dead_rows:
            continue
        row = m.entries[r]
        for c, tc in enumerate(m.src):
            if c not in dead_cols and tc == tr and row[c][0] != 0:
                return r, c
    return None


def minimize(X: ProjComplex) -> MinimizeResult:
    """Split ``X`` as a minimal complex plus a contractible one.

    Degrees are scanned from the lowest up and the first pivot in row-major
    order is used, so the output is deterministic.
    """
    A = X.algebra
    terms = dict(X.terms)
    diffs = dict(X.diffs)
    g = {i: HomMatrix.identity(A, t) for i, t in terms.items()}
    dead: dict[int, set] = {i: set() for i in terms}
    pieces = []
    for i in sorted(diffs):
        while True:
            D = diffs[i]
            piv = _find_pivot(D, dead[i - 1], dead[i])
            if piv is None:
                break
            r, c = piv
            u = D.elem(r, c)
            u_inv = inverse_elem(A, u)
            tgt, src = D.tgt, D.src
            # row operations on X_{i-1}
            ent = {(r, r): u_inv}
            for s in range(len(tgt)):
                if s != r:
                    lam = D.elem(s, c)
                    if not lam.is_zero():
                        ent[(s, r)] = -(u_inv * lam)
            h_lo = _elem_matrix(A, tgt, ent)
            D1 = compose(h_lo, D)
            # column operations on X_i: D2 = D1 ∘ m with m[c][k] = -D1[r][k]
            ent_m, ent_h = {}, {}
            for k in range(len(src)):
                if k != c:
                    x = D1.elem(r, k)
                    if not x.is_zero():
                        ent_m[(c, k)] = -x
                        ent_h[(c, k)] = x
            m = _elem_matrix(A, src, ent_m)
            h_hi = _elem_matrix(A, src, ent_h)
            diffs[i] = compose(D1, m)
            if i + 1 in diffs:
                diffs[i + 1] = compose(h_hi, diffs[i + 1])
            if i - 1 in diffs:
                diffs[i - 1] = compose(diffs[i - 1], invert(h_lo))
            g[i] = compose(h_hi, g[i])
            g[i - 1] = compose(h_lo, g[i - 1])
            dead[i].add(c)
            dead[i - 1].add(r)
            pieces.append((i, src[c]))
    # reorder: surviving summands first, then the split-off ones
    perms = {}
    keep, gone = {}, {}
    for i, t in terms.items():
        keep[i] = [k for k in range(len(t)) if k not in dead[i]]
        gone[i] = sorted(dead[i])
        perms[i] = permutation(A, t, keep[i] + gone[i])
    full_terms = {i: perms[i].tgt for i in terms}
    full_diffs = {i: compose(perms[i - 1], compose(m, invert(perms[i]))) for i, m in diffs.items()}
    auto = GradedAutomorphism({i: compose(perms[i], g[i]) for i in terms})
    nk = {i: len(keep[i]) for i in terms}
    min_terms = {i: full_terms[i][:nk[i]] for i in terms}
    con_terms = {i: full_terms[i][nk[i]:] for i in terms}
    min_diffs, con_diffs = {}, {}
    for i, m in full_diffs.items():
        n_src, n_tgt = nk[i], nk[i - 1]
        min_diffs[i] = m.submatrix(range(n_tgt), range(n_src))
        con_diffs[i] = m.submatrix(range(n_tgt, len(m.tgt)), range(n_src, len(m.src)))
    Xmin = ProjComplex(A, min_terms, min_diffs, check=False)
    C = ProjComplex(A, con_terms, con_diffs, check=False)
    return MinimizeResult(Xmin, auto, C, pieces)


def is_minimal(X: ProjComplex) -> bool:
    return all(_find_pivot(m, set(), set()) is None for m in X.diffs.values())


# --- equalization -----------------------------------------------------------------------

@dataclass
class Equalized:
    X: ProjComplex
    Y: ProjComplex
    pad_x: list
    pad_y: list


def equalize(X: ProjComplex, Y: ProjComplex) -> Equalized:
    """Add disks to ``X`` and ``Y`` until their dimension arrays agree.

    Works greedily from the lowest degree up; possible exactly when the K_0
    classes agree.
    """
    A = X.algebra
    l = A.num_vertices
    if k0_of_array(X.array(), l) != k0_of_array(Y.array(), l):
        raise ComplexError(
            f"K_0 classes differ: {list(k0_of_array(X.array(), l))} vs {list(k0_of_array(Y.array(), l))}")
    a, b = X.array(), Y.array()
    z = (0,) * l
    pad_x, pad_y = [], []
    degs = set(a) | set(b)
    if degs:
        m = min(degs)
        top = max(degs) + 1
        a = {i: list(v) for i, v in a.items()}
        b = {i: list(v) for i, v in b.items()}
        while m <= top:
            va, vb = a.setdefault(m, list(z)), b.setdefault(m, list(z))
            for j in range(l):
                delta = va[j] - vb[j]
                if delta:
                    side, pad = (b, pad_y) if delta > 0 else (a, pad_x)
                    for _ in range(abs(delta)):
                        pad.append((m + 1, j + 1))
                        side[m][j] += 1
                        side.setdefault(m + 1, list(z))[j] += 1
            m += 1
    Xp = direct_sum(X, contractible(A, pad_x)) if pad_x else X
    Yp = direct_sum(Y, contractible(A, pad_y)) if pad_y else Y
    return Equalized(Xp, Yp, pad_x, pad_y)


# --- homology and splicing ----------------------------------------------------------------

@dataclass
class Homology:
    """``H_i(X)`` as a representation together with the data to map into it."""

    degree: int
    module: Module
    reps: dict
    boundary: dict

    @property
    def dims(self) -> tuple[int, ...]:
        return self.module.dims

    def classes(self, v: int, w) -> tuple:
        """Coordinates of a cycle ``w`` (vertex ``v`` space of ``X_i``) in the homology basis."""
        return quotient_coords(self.module.algebra.field, self.boundary[v], self.reps[v], w, len(w))


def homology(X: ProjComplex, i: int) -> Homology:
    A = X.algebra
    P = projective_sum(A, X.term(i))
    K = hom_matrix_kernel(X.diff(i)) if X.term(i - 1) else {v: _units(A, P.dims[v - 1]) for v in A.vertices}
    B = hom_matrix_image(X.diff(i + 1)) if X.term(i + 1) else {v: [] for v in A.vertices}
    Q, _, (reps, bnd) = subquotient(P, K, B)
    return Homology(i, Q, reps, bnd)


def _units(A, d):
    F = A.field
    return [tuple(F.one if a == b else F.zero for a in range(d)) for b in range(d)]


def homology_dims(X: ProjComplex, i: int) -> tuple[int, ...]:
    """Dimension vector of ``H_i(X)`` by rank counting."""
    A = X.algebra
    out = []
    for v in A.vertices:
        n = sum(A.hom_dim(v, t) for t in X.term(i))
        r_out = rank(X.diff(i).linearize_at(v)) if X.term(i) and X.term(i - 1) else 0
        r_in = rank(X.diff(i + 1).linearize_at(v)) if X.term(i) and X.term(i + 1) else 0
        out.append(n - r_out - r_in)
    return tuple(out)


def splice(X: ProjComplex, length: int, top: int | None = None) -> ProjComplex:
    """Attach ``length`` terms of a minimal resolution of the top cycles.

    With ``top`` the top degree (default ``X.hi``), the cycle module
    ``H_top(X) = ker ∂_top`` is covered by ``X_{top+1} -> X_top`` and so on.
    Homology below ``top`` is unchanged and ``H_top`` becomes zero when
    ``length >= 1``.
    """
    if top is None:
        top = X.hi if X.hi is not None else 0
    if X.hi is not None and X.hi > top:
        raise ComplexError("splice needs a complex living in degrees <= top")
    A = X.algebra
    terms = dict(X.terms)
    diffs = dict(X.diffs)
    prev = X.term(top)
    K = hom_matrix_kernel(X.diff(top)) if X.term(top - 1) else {
        v: _units(A, sum(A.hom_dim(v, t) for t in prev)) for v in A.vertices}
    for n in range(top + 1, top + 1 + length):
        if not prev or all(not K[v] for v in A.vertices):
            break
        d = cover_submodule(A, prev, K)
        terms[n] = d.src
        diffs[n] = d
        K = hom_matrix_kernel(d)
        prev = d.src
    return ProjComplex(A, terms, diffs, check=False)
