"""Finite-dimensional path algebras ``A = kQ/I`` given by a quiver and relations.

Conventions used throughout the package:

* vertices are numbered ``1..l``;
* a path is written as a word of arrow names that composes right to left like
  functions, so the word ``("b", "a")`` means "first ``a``, then ``b``";
* a path from ``u`` to ``v`` lies in ``e_v A e_u``; the projective
  ``P_j = A e_j`` has as basis the path classes starting at ``j``;
* ``Hom_A(P_i, P_j)`` is identified with ``e_i A e_j`` acting by right
  multiplication, so composing ``f: P_i -> P_j`` with ``g: P_j -> P_k`` gives
  the algebra product ``f * g``.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from .exactlin import Field, _rref_lists


class AlgebraError(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int


@dataclass(frozen=True)
class Quiver:
    num_vertices: int
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        if self.num_vertices < 1:
            raise AlgebraError("a quiver needs at least one vertex")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise AlgebraError("arrow names must be unique")
        for a in self.arrows:
            if not (1 <= a.source <= self.num_vertices and 1 <= a.target <= self.num_vertices):
                raise AlgebraError(f"arrow {a.name!r} uses a vertex outside 1..{self.num_vertices}")

    @classmethod
    def from_triples(cls, num_vertices: int, arrows: Iterable[tuple[str, int, int]]) -> "Quiver":
        return cls(num_vertices, tuple(Arrow(n, s, t) for n, s, t in arrows))

    @property
    def vertices(self) -> range:
        return range(1, self.num_vertices + 1)

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise AlgebraError(f"unknown arrow {name!r}")


@dataclass(frozen=True, order=True)
class Path:
    """A path from ``source`` to ``target``; ``arrows`` in composition order."""

    target: int
    source: int
    arrows: tuple[str, ...] = ()

    @property
    def length(self) -> int:
        return len(self.arrows)

    def __str__(self) -> str:
        if not self.arrows:
            return f"e{self.source}"
        sep = "" if all(len(a) == 1 for a in self.arrows) else "*"
        return sep.join(self.arrows)


@dataclass(frozen=True)
class AlgElem:
    """An element of ``e_target A e_source`` in coordinates over the path basis."""

    algebra: "PathAlgebra" = dc_field(repr=False, compare=False)
    target: int = 1
    source: int = 1
    coeffs: tuple = ()

    def __post_init__(self):
        n = len(self.algebra.hom_paths(self.target, self.source))
        if len(self.coeffs) != n:
            raise AlgebraError("coefficient vector does not match e_i A e_j")

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: "AlgElem") -> "AlgElem":
        if (self.target, self.source) != (other.target, other.source):
            raise AlgebraError("cannot add elements of different e_i A e_j")
        F = self.algebra.field
        return AlgElem(self.algebra, self.target, self.source,
                       tuple(F.add(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "AlgElem":
        F = self.algebra.field
        return AlgElem(self.algebra, self.target, self.source, tuple(F.neg(a) for a in self.coeffs))

    def __sub__(self, other: "AlgElem") -> "AlgElem":
        return self + (-other)

    def scale(self, c) -> "AlgElem":
        F = self.algebra.field
        c = F(c)
        return AlgElem(self.algebra, self.target, self.source, tuple(F.mul(c, a) for a in self.coeffs))

    def __rmul__(self, c) -> "AlgElem":
        return self.scale(c)

    def __mul__(self, other):
        if isinstance(other, AlgElem):
            return multiply(self.algebra, self, other)
        return self.scale(other)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, AlgElem) and self.target == other.target
                and self.source == other.source and self.coeffs == other.coeffs)

    def __hash__(self) -> int:
        return hash((self.target, self.source, self.coeffs))

    def __str__(self) -> str:
        paths = self.algebra.hom_paths(self.target, self.source)
        terms = []
        for c, p in zip(self.coeffs, paths):
            if c == 0:
                continue
            terms.append(str(p) if c == 1 else f"{c}*{p}")
        return " + ".join(terms) if terms else "0"


class PathAlgebra:
    """``kQ/I`` with an explicit path basis and multiplication table.

    Build instances with :func:`build_algebra`.
    """

    def __init__(self, quiver: Quiver, field: Field, relations, max_path_len: int,
                 basis: list[Path], normal_forms: dict):
        self.quiver = quiver
        self.field = field
        self.relations = relations
        self.max_path_len = max_path_len
        self.basis = basis
        self._normal = normal_forms
        l = quiver.num_vertices
        self._hom: dict[tuple[int, int], list[Path]] = {(i, j): [] for i in range(1, l + 1)
                                                         for j in range(1, l + 1)}
        for p in basis:
            self._hom[(p.target, p.source)].append(p)
        for key in self._hom:
            self._hom[key].sort(key=lambda p: (p.length, p.arrows))
        self._index = {key: {p: n for n, p in enumerate(ps)} for key, ps in self._hom.items()}
        self._tables: dict[tuple[int, int, int], list] = {}

    # --- structure -----------------------------------------------------------

    @property
    def num_vertices(self) -> int:
        return self.quiver.num_vertices

    @property
    def vertices(self) -> range:
        return self.quiver.vertices

    @property
    def dim(self) -> int:
        return len(self.basis)

    def hom_paths(self, i: int, j: int) -> list[Path]:
        """Basis paths of ``e_i A e_j`` (from ``j`` to ``i``); ``e_i`` first when ``i == j``."""
        return self._hom[(i, j)]

    def hom_dim(self, i: int, j: int) -> int:
        return len(self._hom[(i, j)])

    def reduce_word(self, target: int, source: int, word: Sequence[str]) -> dict[int, object]:
        """Coordinates of a path word in ``e_target A e_source`` (sparse)."""
        if len(word) > self.max_path_len:
            return {}
        nf = self._normal.get(Path(target, source, tuple(word)))
        if nf is None:
            raise AlgebraError(f"{''.join(word)} is not a path from {source} to {target}")
        idx = self._index[(target, source)]
        return {idx[p]: c for p, c in nf.items()}

    def table(self, i: int, j: int, k: int) -> list:
        """Structure constants ``e_i A e_j x e_j A e_k -> e_i A e_k`` (sparse rows)."""
        key = (i, j, k)
        t = self._tables.get(key)
        if t is None:
            t = []
            for a in self._hom[(i, j)]:
                row = []
                for b in self._hom[(j, k)]:
                    row.append(tuple(self.reduce_word(i, k, a.arrows + b.arrows).items()))
                t.append(row)
            self._tables[key] = t
        return t

    def prod(self, i: int, j: int, k: int, x: Sequence, y: Sequence) -> tuple:
        """Product of coordinate vectors ``x`` in e_i A e_j and ``y`` in e_j A e_k."""
        F = self.field
        out = [F.zero] * len(self._hom[(i, k)])
        t = self.table(i, j, k)
        add, mul = F.add, F.mul
        for a, xa in enumerate(x):
            if xa == 0:
                continue
            row = t[a]
            for b, yb in enumerate(y):
                if yb == 0:
                    continue
                xy = mul(xa, yb)
                for idx, c in row[b]:
                    out[idx] = add(out[idx], mul(xy, c))
        return tuple(out)

    # --- element constructors ------------------------------------------------

    def elem(self, target: int, source: int, coeffs: Sequence) -> AlgElem:
        F = self.field
        return AlgElem(self, target, source, tuple(F(c) for c in coeffs))

    def zero(self, target: int, source: int) -> AlgElem:
        return AlgElem(self, target, source, (self.field.zero,) * self.hom_dim(target, source))

    def idem(self, j: int) -> AlgElem:
        """The trivial path ``e_j``."""
        z = self.zero(j, j)
        return AlgElem(self, j, j, (self.field.one,) + z.coeffs[1:])

    def path(self, *names: str) -> AlgElem:
        """The class of a nontrivial path given in composition order."""
        if not names:
            raise AlgebraError("use idem(j) for trivial paths")
        arrows = [self.quiver.arrow(n) for n in names]
        for left, right in zip(arrows, arrows[1:]):
            if right.target != left.source:
                raise AlgebraError(f"{''.join(names)} is not a path")
        target, source = arrows[0].target, arrows[-1].source
        v = [self.field.zero] * self.hom_dim(target, source)
        for idx, c in self.reduce_word(target, source, names).items():
            v[idx] = c
        return AlgElem(self, target, source, tuple(v))

    def __repr__(self) -> str:
        return (f"PathAlgebra(vertices={self.num_vertices}, arrows="
                f"{[a.name for a in self.quiver.arrows]}, dim={self.dim}, field={self.field.name})")


def _enumerate_paths(quiver: Quiver, max_len: int) -> list[Path]:
    paths = [Path(v, v, ()) for v in quiver.vertices]
    layer = list(paths)
    for _ in range(max_len):
        nxt = []
        for p in layer:
            for a in quiver.arrows:
                if a.source == p.target:
                    nxt.append(Path(a.target, p.source, (a.name,) + p.arrows))
        paths.extend(nxt)
        layer = nxt
    return paths


def _word_endpoints(quiver: Quiver, word: Sequence[str]) -> tuple[int, int]:
    arrows = [quiver.arrow(n) for n in word]
    for left, right in zip(arrows, arrows[1:]):
        if right.target != left.source:
            raise AlgebraError(f"relation term {''.join(word)} is not a path")
    return arrows[0].target, arrows[-1].source


def build_algebra(quiver: Quiver, relations: Sequence[Sequence[tuple]], max_path_len: int,
                  field: Field) -> PathAlgebra:
    """Compute a path basis and multiplication table for ``kQ/I``.

    ``relations`` is a list of k-linear combinations of parallel paths, each a
    list of ``(coeff, [arrow names])`` pairs.  All paths longer than
    ``max_path_len`` must vanish in the quotient; this is checked.
    """
    L = max_path_len
    if L < 0:
        raise AlgebraError("max_path_len must be nonnegative")
    if relations and L < 2:
        raise AlgebraError("max_path_len must be at least 2 when relations are given")
    rels = []
    for rel in relations:
        terms = []
        ends = set()
        for coeff, word in rel:
            word = tuple(word)
            if len(word) < 2:
                raise AlgebraError("relation terms must be paths of length >= 2")
            if len(word) > L:
                raise AlgebraError(f"relation term {''.join(word)} is longer than max_path_len")
            ends.add(_word_endpoints(quiver, word))
            terms.append((field(coeff), word))
        if len(ends) > 1:
            raise AlgebraError("relation mixes non-parallel paths")
        if terms:
            rels.append((ends.pop(), terms))

    all_paths = _enumerate_paths(quiver, L + 1)
    # longest paths first so that normal forms prefer short representatives
    order = sorted(all_paths, key=lambda p: (-p.length, p.target, p.source, p.arrows))
    col = {p: n for n, p in enumerate(order)}
    by_ends: dict[tuple[int, int], list[Path]] = {}
    for p in all_paths:
        by_ends.setdefault((p.target, p.source), []).append(p)

    rows = []
    for (t, s), terms in rels:
        for u in all_paths:
            if u.source != t:
                continue
            for v in all_paths:
                if v.target != s:
                    continue
                vec = {}
                for c, w in terms:
                    word = u.arrows + w + v.arrows
                    if len(word) <= L + 1:
                        key = col[Path(u.target, v.source, word)]
                        vec[key] = field.add(vec.get(key, field.zero), c)
                if any(x != 0 for x in vec.values()):
                    row = [field.zero] * len(order)
                    for k, x in vec.items():
                        row[k] = x
                    rows.append(row)

    long_paths = [p for p in all_paths if p.length == L + 1]
    ideal_rank = _rref_lists(field, [list(r) for r in rows], len(order))[0]
    units = []
    for p in long_paths:
        row = [field.zero] * len(order)
        row[col[p]] = field.one
        units.append(row)
    if long_paths:
        full_rank = _rref_lists(field, [list(r) for r in rows] + units, len(order))[0]
        if full_rank != ideal_rank:
            raise AlgebraError(
                f"paths of length {L + 1} do not all vanish; increase max_path_len or add relations")

    rows = [list(r) for r in rows] + units
    rank_, pivots = _rref_lists(field, rows, len(order))
    pivset = set(pivots)
    basis = [p for p in order if col[p] not in pivset and p.length <= L]
    normal: dict[Path, dict[Path, object]] = {}
    for p in order:
        if p.length > L:
            continue
        if col[p] not in pivset:
            normal[p] = {p: field.one}
    for r, pc in enumerate(pivots):
        p = order[pc]
        if p.length > L:
            continue
        nf = {}
        for q in basis:
            x = rows[r][col[q]]
            if x != 0:
                nf[q] = field.neg(x)
        normal[p] = nf
    basis.sort(key=lambda p: (p.length, p.target, p.source, p.arrows))
    return PathAlgebra(quiver, field, rels, L, basis, normal)


def hom_basis(A: PathAlgebra, i: int, j: int) -> list[AlgElem]:
    """Basis of ``e_i A e_j``, i.e. of ``Hom_A(P_i, P_j)``."""
    n = A.hom_dim(i, j)
    F = A.field
    return [AlgElem(A, i, j, tuple(F.one if k == m else F.zero for k in range(n))) for m in range(n)]


def multiply(A: PathAlgebra, x: AlgElem, y: AlgElem) -> AlgElem:
    """The product ``x * y`` (first ``y``, then ``x``)."""
    if x.source != y.target:
        raise AlgebraError(f"cannot multiply: {x} ends at {x.source}, {y} starts at {y.target}")
    return AlgElem(A, x.target, y.source, A.prod(x.target, x.source, y.source, x.coeffs, y.coeffs))


def unit_part(A: PathAlgebra, x: AlgElem):
    """Coefficient of the trivial path, i.e. ``x`` modulo the radical."""
    if x.source != x.target:
        raise AlgebraError("unit part is only defined on e_j A e_j")
    return x.coeffs[0]


def inverse_elem(A: PathAlgebra, x: AlgElem) -> AlgElem:
    """Inverse of ``x`` in ``e_j A e_j``; requires a nonzero unit part."""
    c = unit_part(A, x)
    if c == 0:
        raise AlgebraError("element lies in the radical and is not invertible")
    F = A.field
    j = x.target
    cinv = F.inv(c)
    # x = c (e + n) with n nilpotent, so x^-1 = c^-1 (e - n + n^2 - ...)
    n = x.scale(cinv) - A.idem(j)
    term = A.idem(j)
    total = A.idem(j)
    for _ in range(A.max_path_len):
        term = -multiply(A, term, n)
        if term.is_zero():
            break
        total = total + term
    return total.scale(cinv)
