"""Matrices with path-algebra entries: A-linear maps between sums of projectives.

A :class:`HomMatrix` describes a map ``⊕_c P_{src[c]} -> ⊕_r P_{tgt[r]}``;
entry ``(r, c)`` is an element of ``e_{src[c]} A e_{tgt[r]}`` stored as a
coordinate tuple over :meth:`PathAlgebra.hom_paths`.  Matrices act on the
left, so ``g @ f`` means "first ``f``, then ``g``".
"""
from __future__ import annotations

from typing import Sequence

from .algebra import AlgElem, AlgebraError, PathAlgebra, inverse_elem
from .exactlin import Mat, block_diag


class HomMatrix:
    __slots__ = ("algebra", "src", "tgt", "entries")

    def __init__(self, algebra: PathAlgebra, src: Sequence[int], tgt: Sequence[int], entries):
        self.algebra = algebra
        self.src = tuple(src)
        self.tgt = tuple(tgt)
        self.entries = tuple(tuple(row) for row in entries)
        if len(self.entries) != len(self.tgt) or any(len(r) != len(self.src) for r in self.entries):
            raise AlgebraError("HomMatrix shape does not match its summand types")

    # --- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, A: PathAlgebra, src: Sequence[int], tgt: Sequence[int]) -> "HomMatrix":
        z = A.field.zero
        return cls(A, src, tgt, [[(z,) * A.hom_dim(a, b) for a in src] for b in tgt])

    @classmethod
    def identity(cls, A: PathAlgebra, types: Sequence[int]) -> "HomMatrix":
        z = A.field.zero
        rows = []
        for r, b in enumerate(types):
            rows.append([A.idem(b).coeffs if r == c else (z,) * A.hom_dim(a, b)
                         for c, a in enumerate(types)])
        return cls(A, types, types, rows)

    @classmethod
    def from_elems(cls, A: PathAlgebra, src: Sequence[int], tgt: Sequence[int], rows) -> "HomMatrix":
        """Build from a nested list whose items are AlgElem, 0, or a field scalar times ``e_j``."""
        out = []
        for r, b in enumerate(tgt):
            row = []
            for c, a in enumerate(src):
                x = rows[r][c]
                if isinstance(x, AlgElem):
                    if (x.target, x.source) != (a, b):
                        raise AlgebraError(
                            f"entry ({r},{c}) lies in e_{x.target}Ae_{x.source}, expected e_{a}Ae_{b}")
                    row.append(x.coeffs)
                elif x == 0:
                    row.append((A.field.zero,) * A.hom_dim(a, b))
                elif a == b:
                    row.append(A.idem(a).scale(x).coeffs)
                else:
                    raise AlgebraError(f"scalar entry ({r},{c}) between different projectives")
            out.append(row)
        return cls(A, src, tgt, out)

    # --- basic accessors -----------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.tgt), len(self.src))

    def elem(self, r: int, c: int) -> AlgElem:
        return AlgElem(self.algebra, self.src[c], self.tgt[r], self.entries[r][c])

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, HomMatrix) and self.src == other.src and self.tgt == other.tgt
                and self.entries == other.entries)

    def __hash__(self) -> int:
        return hash((self.src, self.tgt, self.entries))

    def __repr__(self) -> str:
        rows = ["[" + ", ".join(str(self.elem(r, c)) for c in range(len(self.src))) + "]"
                for r in range(len(self.tgt))]
        return f"HomMatrix({list(self.src)} -> {list(self.tgt)}: [{', '.join(rows)}])"

    def is_zero(self) -> bool:
        return not any(x != 0 for row in self.entries for e in row for x in e)

    # --- arithmetic ----------------------------------------------------------

    def __add__(self, other: "HomMatrix") -> "HomMatrix":
        self._same_shape(other)
        add = self.algebra.field.add
        return HomMatrix(self.algebra, self.src, self.tgt,
                         [[tuple(add(x, y) for x, y in zip(e, f)) for e, f in zip(r1, r2)]
                          for r1, r2 in zip(self.entries, other.entries)])

    def __neg__(self) -> "HomMatrix":
        neg = self.algebra.field.neg
        return HomMatrix(self.algebra, self.src, self.tgt,
                         [[tuple(neg(x) for x in e) for e in row] for row in self.entries])

    def __sub__(self, other: "HomMatrix") -> "HomMatrix":
        return self + (-other)

    def scale(self, c) -> "HomMatrix":
        F = self.algebra.field
        c = F(c)
        return HomMatrix(self.algebra, self.src, self.tgt,
                         [[tuple(F.mul(c, x) for x in e) for e in row] for row in self.entries])

    def _same_shape(self, other: "HomMatrix"):
        if self.src != other.src or self.tgt != other.tgt:
            raise AlgebraError("HomMatrix type mismatch")

    def __matmul__(self, other: "HomMatrix") -> "HomMatrix":
        return compose(self, other)

    # --- block structure -----------------------------------------------------

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "HomMatrix":
        return HomMatrix(self.algebra, [self.src[c] for c in cols], [self.tgt[r] for r in rows],
                         [[self.entries[r][c] for c in cols] for r in rows])

    def unit_parts(self) -> Mat:
        """Field matrix of unit parts (zero between different projectives)."""
        F = self.algebra.field
        return Mat(F, len(self.tgt), len(self.src),
                   tuple(tuple(self.entries[r][c][0] if self.tgt[r] == self.src[c] else F.zero
                               for c in range(len(self.src))) for r in range(len(self.tgt))))

    def type_blocks(self) -> list[tuple[int, Mat]]:
        """Unit-part blocks between summands of equal type, one per vertex.

        A map between sums of projectives is an isomorphism iff every block
        is square and invertible.
        """
        F = self.algebra.field
        out = []
        for j in self.algebra.vertices:
            rs = [r for r, t in enumerate(self.tgt) if t == j]
            cs = [c for c, t in enumerate(self.src) if t == j]
            if not rs and not cs:
                continue
            out.append((j, Mat(F, len(rs), len(cs),
                               tuple(tuple(self.entries[r][c][0] for c in cs) for r in rs))))
        return out

    def linearize_at(self, v: int) -> Mat:
        """The k-linear map on vertex-``v`` spaces of the sums of projectives."""
        A = self.algebra
        F = A.field
        row_off = []
        n = 0
        for b in self.tgt:
            row_off.append(n)
            n += A.hom_dim(v, b)
        nrows = n
        cols = []
        for c, a in enumerate(self.src):
            da = A.hom_dim(v, a)
            for x in range(da):
                unit = tuple(F.one if y == x else F.zero for y in range(da))
                col = [F.zero] * nrows
                for r, b in enumerate(self.tgt):
                    e = self.entries[r][c]
                    if not any(e):
                        continue
                    img = A.prod(v, a, b, unit, e)
                    off = row_off[r]
                    for k, val in enumerate(img):
                        col[off + k] = val
                cols.append(col)
        return Mat.from_columns(F, cols, nrows) if cols else Mat.zeros(F, nrows, 0)

    def linearize(self) -> Mat:
        """Block diagonal over vertices of :meth:`linearize_at`."""
        return block_diag(self.algebra.field, [self.linearize_at(v) for v in self.algebra.vertices])

    def inverse(self) -> "HomMatrix":
        return invert(self)


def compose(g: HomMatrix, f: HomMatrix) -> HomMatrix:
    """``g ∘ f`` for ``f: X -> Y`` and ``g: Y -> Z``."""
    if g.src != f.tgt:
        raise AlgebraError(f"cannot compose: {list(f.tgt)} vs {list(g.src)}")
    A = f.algebra
    F = A.field
    add = F.add
    out = []
    fcols = [[(r, f.entries[r][c]) for r in range(len(f.tgt)) if any(f.entries[r][c])]
             for c in range(len(f.src))]
    for s, ts in enumerate(g.tgt):
        grow = g.entries[s]
        row = []
        for c, tc in enumerate(f.src):
            acc = None
            for r, fe in fcols[c]:
                ge = grow[r]
                if not any(ge):
                    continue
                p = A.prod(tc, f.tgt[r], ts, fe, ge)
                acc = p if acc is None else tuple(add(x, y) for x, y in zip(acc, p))
            row.append(acc if acc is not None else (F.zero,) * A.hom_dim(tc, ts))
        out.append(row)
    return HomMatrix(A, f.src, g.tgt, out)


def hstack(parts: Sequence[HomMatrix]) -> HomMatrix:
    """``(f_1, ..., f_n): ⊕ X_i -> Y``."""
    A = parts[0].algebra
    tgt = parts[0].tgt
    if any(p.tgt != tgt for p in parts):
        raise AlgebraError("hstack needs a common target")
    src = tuple(t for p in parts for t in p.src)
    rows = [[e for p in parts for e in p.entries[r]] for r in range(len(tgt))]
    return HomMatrix(A, src, tgt, rows)


def vstack(parts: Sequence[HomMatrix]) -> HomMatrix:
    """``(f_1; ...; f_n): X -> ⊕ Y_i``."""
    A = parts[0].algebra
    src = parts[0].src
    if any(p.src != src for p in parts):
        raise AlgebraError("vstack needs a common source")
    tgt = tuple(t for p in parts for t in p.tgt)
    rows = [row for p in parts for row in p.entries]
    return HomMatrix(A, src, tgt, rows)


def blocks(rows: Sequence[Sequence[HomMatrix]]) -> HomMatrix:
    return vstack([hstack(list(r)) for r in rows])


def direct_sum(f: HomMatrix, g: HomMatrix) -> HomMatrix:
    A = f.algebra
    return blocks([[f, HomMatrix.zero(A, g.src, f.tgt)], [HomMatrix.zero(A, f.src, g.tgt), g]])


def permutation(A: PathAlgebra, types: Sequence[int], order: Sequence[int]) -> HomMatrix:
    """Isomorphism sending summand ``order[k]`` of ``types`` to position ``k``."""
    new = [types[i] for i in order]
    z = A.field.zero
    rows = []
    for k, b in enumerate(new):
        rows.append([A.idem(b).coeffs if order[k] == c else (z,) * A.hom_dim(a, b)
                     for c, a in enumerate(types)])
    return HomMatrix(A, types, new, rows)


def is_iso(f: HomMatrix) -> bool:
    """Whether ``f`` is an isomorphism (checked modulo the radical)."""
    from .exactlin import is_invertible

    return all(m.nrows == m.ncols and is_invertible(m) for _, m in f.type_blocks())


def invert(f: HomMatrix) -> HomMatrix:
    """Inverse of an isomorphism by Gauss-Jordan over the algebra.

    Pivots are entries with nonzero unit part between summands of one type,
    which are invertible in ``e_j A e_j``; all row operations are A-linear.
    """
    A = f.algebra
    if len(f.src) != len(f.tgt) or not is_iso(f):
        raise AlgebraError("matrix is not invertible")
    n = len(f.src)
    # work with AlgElem objects: rows of [f | I], acting on the left
    work = [[f.elem(r, c) for c in range(n)] for r in range(n)]
    ident = HomMatrix.identity(A, f.tgt)
    aug = [[ident.elem(r, c) for c in range(n)] for r in range(n)]
    row_types = list(f.tgt)
    used = [False] * n
    order = [None] * n
    for c in range(n):
        tc = f.src[c]
        piv = next((r for r in range(n) if not used[r] and row_types[r] == tc
                    and work[r][c].coeffs[0] != 0), None)
        if piv is None:
            raise AlgebraError("matrix is not invertible")
        used[piv] = True
        order[c] = piv
        u_inv = inverse_elem(A, work[piv][c])  # u: P_tc -> P_tc
        # scale pivot row: new row = u_inv ∘ row, i.e. entry x -> x * u_inv
        work[piv] = [x * u_inv for x in work[piv]]
        aug[piv] = [x * u_inv for x in aug[piv]]
        for r in range(n):
            if r == piv:
                continue
            lam = work[r][c]  # P_tc -> P_{row_types[r]}
            if lam.is_zero():
                continue
            # row_r -= lam ∘ row_piv  (entry x of row_piv becomes x * lam)
            work[r] = [x - y * lam for x, y in zip(work[r], work[piv])]
            aug[r] = [x - y * lam for x, y in zip(aug[r], aug[piv])]
    # rows reordered so that row order[c] becomes row c of the inverse
    rows = [[aug[order[c]][k].coeffs for k in range(n)] for c in range(n)]
    return HomMatrix(A, f.tgt, f.src, rows)
