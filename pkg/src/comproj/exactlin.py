"""Exact dense linear algebra over prime fields and the rationals.

Field elements are plain Python values: ``fractions.Fraction`` over Q and
``int`` residues in ``range(p)`` over F_p.  Nothing here ever touches floating
point.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class Field:
    """The rationals (``p is None``) or the prime field F_p."""

    __slots__ = ("p", "add", "sub", "mul", "neg")

    def __init__(self, p: int | None = None):
        if p is not None:
            if not isinstance(p, int) or not _is_prime(p) or p >= 2**31:
                raise ValueError(f"field characteristic must be a prime < 2^31, got {p!r}")
        self.p = p
        if p is None:
            self.add = lambda a, b: a + b
            self.sub = lambda a, b: a - b
            self.mul = lambda a, b: a * b
            self.neg = lambda a: -a
        else:
            self.add = lambda a, b: (a + b) % p
            self.sub = lambda a, b: (a - b) % p
            self.mul = lambda a, b: (a * b) % p
            self.neg = lambda a: (-a) % p

    @classmethod
    def rationals(cls) -> "Field":
        return cls(None)

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(p)

    @classmethod
    def parse(cls, text: str) -> "Field":
        """Parse ``"Q"`` or ``"Fp:<p>"``."""
        text = text.strip()
        if text == "Q":
            return cls.rationals()
        if text.startswith("Fp:"):
            try:
                p = int(text[3:])
            except ValueError:
                raise ValueError(f"bad field literal {text!r}") from None
            return cls.prime(p)
        raise ValueError(f"bad field literal {text!r}; expected 'Q' or 'Fp:<p>'")

    @property
    def name(self) -> str:
        return "Q" if self.p is None else f"Fp:{self.p}"

    @property
    def is_finite(self) -> bool:
        return self.p is not None

    @property
    def size(self) -> int | None:
        return self.p

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("Field", self.p))

    def __repr__(self) -> str:
        return f"Field({self.name})"

    @property
    def zero(self):
        return Fraction(0) if self.p is None else 0

    @property
    def one(self):
        return Fraction(1) if self.p is None else 1

    def __call__(self, x):
        """Coerce an int, Fraction or literal string into the field."""
        if isinstance(x, str):
            return self.parse_literal(x)
        if self.p is None:
            if isinstance(x, (int, Fraction)):
                return Fraction(x)
            raise TypeError(f"cannot coerce {x!r} into Q")
        if isinstance(x, Fraction):
            return (x.numerator * self.inv(x.denominator % self.p)) % self.p
        if isinstance(x, int):
            return x % self.p
        raise TypeError(f"cannot coerce {x!r} into F_{self.p}")

    def parse_literal(self, text: str):
        text = text.strip()
        try:
            if "/" in text:
                num, den = text.split("/")
                return self(Fraction(int(num), int(den)))
            return self(int(text))
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"bad field literal {text!r}") from None

    def format(self, x) -> int | str:
        """JSON-friendly literal: an int when integral, else ``"a/b"``."""
        if self.p is not None:
            return int(x)
        x = Fraction(x)
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / Fraction(a)
        return pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def elements(self) -> Iterator:
        if self.p is None:
            raise ValueError("Q is infinite")
        return iter(range(self.p))

    def random(self, rng: random.Random, bound: int = 5):
        """Uniform element of F_p, or a random integer in [-bound, bound] over Q."""
        if self.p is None:
            return Fraction(rng.randint(-bound, bound))
        return rng.randrange(self.p)


@dataclass(frozen=True)
class Mat:
    """Dense matrix over a field, stored row-major as a tuple of row tuples."""

    field: Field
    nrows: int
    ncols: int
    rows: tuple

    def __post_init__(self):
        if len(self.rows) != self.nrows or any(len(r) != self.ncols for r in self.rows):
            raise ValueError("matrix entry count does not match its shape")

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], ncols: int | None = None) -> "Mat":
        rows = tuple(tuple(field(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols required for a matrix with no rows")
            ncols = len(rows[0])
        return cls(field, len(rows), ncols, rows)

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Mat":
        z = field.zero
        return cls(field, nrows, ncols, tuple((z,) * ncols for _ in range(nrows)))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Mat":
        z, o = field.zero, field.one
        return cls(field, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def from_columns(cls, field: Field, cols: Sequence[Sequence], nrows: int) -> "Mat":
        return cls(field, nrows, len(cols), tuple(tuple(c[i] for c in cols) for i in range(nrows)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, idx):
        r, c = idx
        return self.rows[r][c]

    def columns(self) -> list[tuple]:
        return [tuple(r[c] for r in self.rows) for c in range(self.ncols)]

    def transpose(self) -> "Mat":
        return Mat(self.field, self.ncols, self.nrows,
                   tuple(tuple(r[c] for r in self.rows) for c in range(self.ncols)))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def __matmul__(self, other: "Mat") -> "Mat":
        return matmul(self, other)

    def __add__(self, other: "Mat") -> "Mat":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        add = self.field.add
        return Mat(self.field, self.nrows, self.ncols,
                   tuple(tuple(add(a, b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other: "Mat") -> "Mat":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        sub = self.field.sub
        return Mat(self.field, self.nrows, self.ncols,
                   tuple(tuple(sub(a, b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def scale(self, c) -> "Mat":
        mul = self.field.mul
        return Mat(self.field, self.nrows, self.ncols, tuple(tuple(mul(c, a) for a in r) for r in self.rows))

    def apply(self, v: Sequence) -> tuple:
        F = self.field
        out = []
        for r in self.rows:
            s = F.zero
            for a, b in zip(r, v):
                if a != 0 and b != 0:
                    s = F.add(s, F.mul(a, b))
            out.append(s)
        return tuple(out)

    def to_lists(self) -> list[list]:
        return [list(r) for r in self.rows]


def matmul(a: Mat, b: Mat) -> Mat:
    if a.ncols != b.nrows:
        raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
    F = a.field
    bcols = b.columns()
    out = []
    for r in a.rows:
        nz = [(k, x) for k, x in enumerate(r) if x != 0]
        row = []
        for col in bcols:
            s = F.zero
            for k, x in nz:
                y = col[k]
                if y != 0:
                    s = F.add(s, F.mul(x, y))
            row.append(s)
        out.append(tuple(row))
    return Mat(F, a.nrows, b.ncols, tuple(out))


def block_diag(field: Field, blocks: Sequence[Mat]) -> Mat:
    nr = sum(b.nrows for b in blocks)
    nc = sum(b.ncols for b in blocks)
    rows = []
    off = 0
    z = field.zero
    for b in blocks:
        for r in b.rows:
            rows.append((z,) * off + tuple(r) + (z,) * (nc - off - b.ncols))
        off += b.ncols
    return Mat(field, nr, nc, tuple(rows))


def _rref_lists(F: Field, rows: list[list], ncols: int) -> tuple[int, list[int]]:
    """In-place reduced row echelon form; returns (rank, pivot columns)."""
    pivots = []
    pr = 0
    nrows = len(rows)
    mul, sub = F.mul, F.sub
    for c in range(ncols):
        if pr == nrows:
            break
        piv = next((r for r in range(pr, nrows) if rows[r][c] != 0), None)
        if piv is None:
            continue
        rows[pr], rows[piv] = rows[piv], rows[pr]
        inv = F.inv(rows[pr][c])
        prow = [mul(inv, x) for x in rows[pr]]
        rows[pr] = prow
        nzp = [(k, x) for k, x in enumerate(prow) if x != 0]
        for r in range(nrows):
            if r != pr:
                f = rows[r][c]
                if f != 0:
                    row = rows[r]
                    for k, x in nzp:
                        row[k] = sub(row[k], mul(f, x))
        pivots.append(c)
        pr += 1
    return pr, pivots


def rref(m: Mat) -> tuple[int, list[int], Mat]:
    """Reduced row echelon form: ``(rank, pivot columns, reduced matrix)``."""
    rows = [list(r) for r in m.rows]
    rank, pivots = _rref_lists(m.field, rows, m.ncols)
    return rank, pivots, Mat(m.field, m.nrows, m.ncols, tuple(map(tuple, rows)))


def rank(m: Mat) -> int:
    rows = [list(r) for r in m.rows]
    return _rref_lists(m.field, rows, m.ncols)[0]


def rank_of_vectors(field: Field, vectors: Sequence[Sequence], dim: int) -> int:
    rows = [list(v) for v in vectors]
    return _rref_lists(field, rows, dim)[0]


def kernel_basis(m: Mat) -> list[tuple]:
    """Basis of the right null space ``{x : m x = 0}``."""
    F = m.field
    rows = [list(r) for r in m.rows]
    rank_, pivots = _rref_lists(F, rows, m.ncols)
    pivset = set(pivots)
    basis = []
    for f in range(m.ncols):
        if f in pivset:
            continue
        v = [F.zero] * m.ncols
        v[f] = F.one
        for r, pc in enumerate(pivots):
            x = rows[r][f]
            if x != 0:
                v[pc] = F.neg(x)
        basis.append(tuple(v))
    return basis


def solve(m: Mat, b: Sequence) -> tuple | None:
    """Some ``x`` with ``m x = b``, or ``None`` when the system is inconsistent."""
    if len(b) != m.nrows:
        raise ValueError("right-hand side length does not match matrix rows")
    F = m.field
    rows = [list(r) + [F(x)] for r, x in zip(m.rows, b)]
    rank_, pivots = _rref_lists(F, rows, m.ncols + 1)
    if pivots and pivots[-1] == m.ncols:
        return None
    x = [F.zero] * m.ncols
    for r, pc in enumerate(pivots):
        x[pc] = rows[r][m.ncols]
    return tuple(x)


def inverse(m: Mat) -> Mat | None:
    """Inverse of a square matrix, or ``None`` when singular."""
    if m.nrows != m.ncols:
        raise ValueError("inverse of a non-square matrix")
    n = m.nrows
    F = m.field
    rows = [list(r) + [F.one if i == j else F.zero for j in range(n)] for i, r in enumerate(m.rows)]
    rank_, pivots = _rref_lists(F, rows, n)
    if rank_ < n:
        return None
    return Mat(F, n, n, tuple(tuple(r[n:]) for r in rows))


def det(m: Mat):
    if m.nrows != m.ncols:
        raise ValueError("determinant of a non-square matrix")
    F = m.field
    rows = [list(r) for r in m.rows]
    n = m.nrows
    d = F.one
    for c in range(n):
        piv = next((r for r in range(c, n) if rows[r][c] != 0), None)
        if piv is None:
            return F.zero
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            d = F.neg(d)
        p = rows[c][c]
        d = F.mul(d, p)
        pinv = F.inv(p)
        for r in range(c + 1, n):
            f = rows[r][c]
            if f != 0:
                f = F.mul(f, pinv)
                rows[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[r], rows[c])]
    return d


def is_invertible(m: Mat) -> bool:
    return m.nrows == m.ncols and rank(m) == m.nrows


def independent_subset(field: Field, vectors: Sequence[Sequence], dim: int) -> list[int]:
    """Indices of a maximal linearly independent subfamily, chosen greedily in order."""
    # rref of the transpose: pivot columns are the chosen vectors
    rows = [[v[i] for v in vectors] for i in range(dim)]
    _, pivots = _rref_lists(field, rows, len(vectors))
    return pivots


def extend_to_basis(field: Field, base: Sequence[Sequence], candidates: Sequence[Sequence],
                    dim: int) -> list[tuple]:
    """Greedily pick candidates that enlarge ``span(base)``."""
    rows = [list(v) for v in base]
    r = _rref_lists(field, [list(v) for v in rows], dim)[0]
    chosen = []
    for v in candidates:
        trial = rows + [list(v)]
        r2 = _rref_lists(field, [list(w) for w in trial], dim)[0]
        if r2 > r:
            rows.append(list(v))
            chosen.append(tuple(v))
            r = r2
    return chosen


def coordinates(field: Field, basis: Sequence[Sequence], v: Sequence, dim: int) -> tuple | None:
    """Coordinates of ``v`` in the (independent) family ``basis``, or ``None``."""
    m = Mat.from_columns(field, basis, dim) if basis else Mat.zeros(field, dim, 0)
    return solve(m, v)


def linear_map_matrix(field: Field, domain_dim: int, codomain_dim: int,
                      image_of_unit: Callable[[int], Sequence]) -> Mat:
    """Matrix whose j-th column is the image of the j-th unit vector."""
    cols = [tuple(image_of_unit(j)) for j in range(domain_dim)]
    if any(len(c) != codomain_dim for c in cols):
        raise ValueError("image vector has the wrong length")
    return Mat.from_columns(field, cols, codomain_dim)


# --- searching a linear span for an all-invertible member -----------------

@dataclass(frozen=True)
class SearchConfig:
    """Thresholds for the invertible-element search.

    ``exhaustive_limit`` bounds ``|F|^dim`` for full enumeration; beyond it
    ``retries`` random samples are drawn, then a symbolic determinant check is
    attempted when the blocks have at most ``symbolic_max_size`` rows and the
    span at most ``symbolic_max_dim`` generators.
    """

    exhaustive_limit: int = 2**20
    retries: int = 64
    sample_bound: int = 20
    symbolic_max_size: int = 8
    symbolic_max_dim: int = 16
    seed: int = 0


DEFAULT_SEARCH = SearchConfig()


@dataclass(frozen=True)
class SpanSearch:
    """Outcome of :func:`find_invertible_combination`.

    ``status`` is ``"yes"`` (with ``coeffs``), ``"no"`` or ``"inconclusive"``.
    """

    status: str
    coeffs: tuple | None = None
    method: str = ""


def _combine_blocks(F: Field, basis_blocks: Sequence[Sequence[Mat]], coeffs: Sequence) -> list[Mat]:
    nblocks = len(basis_blocks[0])
    out = []
    for b in range(nblocks):
        shape = basis_blocks[0][b].shape
        acc = [[F.zero] * shape[1] for _ in range(shape[0])]
        for c, blocks in zip(coeffs, basis_blocks):
            if c == 0:
                continue
            for i, row in enumerate(blocks[b].rows):
                arow = acc[i]
                for j, x in enumerate(row):
                    if x != 0:
                        arow[j] = F.add(arow[j], F.mul(c, x))
        out.append(Mat(F, shape[0], shape[1], tuple(map(tuple, acc))))
    return out


def _all_invertible(blocks: Iterable[Mat]) -> bool:
    return all(is_invertible(b) for b in blocks)


def find_invertible_combination(field: Field, basis_blocks: Sequence[Sequence[Mat]],
                                block_shapes: Sequence[tuple[int, int]],
                                config: SearchConfig = DEFAULT_SEARCH) -> SpanSearch:
    """Search ``span(basis)`` for an element whose blocks are all invertible.

    Each basis element is a list of matrices (one per block, shapes given by
    ``block_shapes``).  Only the span matters, so generators whose block data
    is linearly dependent on earlier ones are dropped before searching; the
    returned coefficients refer to the original ``basis_blocks`` list.
    """
    F = field
    if any(r != c for r, c in block_shapes):
        return SpanSearch("no", method="non-square block")
    if all(r == 0 for r, _ in block_shapes):
        return SpanSearch("yes", tuple(F.zero for _ in basis_blocks), method="empty blocks")
    if not basis_blocks:
        return SpanSearch("no", method="empty span")

    flat = [tuple(x for m in blocks for r in m.rows for x in r) for blocks in basis_blocks]
    dim = len(flat[0])
    keep = independent_subset(F, flat, dim)
    reduced = [basis_blocks[i] for i in keep]
    m = len(reduced)

    def lift(cs):
        full = [F.zero] * len(basis_blocks)
        for i, c in zip(keep, cs):
            full[i] = c
        return tuple(full)

    if m == 0:
        return SpanSearch("no", method="zero span")

    if F.is_finite and F.p ** m <= config.exhaustive_limit:
        for cs in itertools.product(range(F.p), repeat=m):
            if _all_invertible(_combine_blocks(F, reduced, cs)):
                return SpanSearch("yes", lift(cs), method="exhaustive")
        return SpanSearch("no", method="exhaustive")

    rng = random.Random(config.seed)
    for _ in range(config.retries):
        cs = [F.random(rng, config.sample_bound) for _ in range(m)]
        if _all_invertible(_combine_blocks(F, reduced, cs)):
            return SpanSearch("yes", lift(cs), method="random")

    if m <= config.symbolic_max_dim and all(r <= config.symbolic_max_size for r, _ in block_shapes):
        verdict = _symbolic_check(F, reduced, block_shapes)
        if verdict == "no":
            return SpanSearch("no", method="symbolic determinant")
        if verdict == "nonzero" and not F.is_finite:
            # a nonzero polynomial of degree D cannot vanish on a box of side > D
            degree = sum(r for r, _ in block_shapes)
            for _ in range(config.retries * 4):
                cs = [Fraction(rng.randint(-degree - 1, degree + 1)) for _ in range(m)]
                if _all_invertible(_combine_blocks(F, reduced, cs)):
                    return SpanSearch("yes", lift(cs), method="random after symbolic")
    return SpanSearch("inconclusive", method="random sampling failed")


def _symbolic_check(F: Field, basis_blocks: Sequence[Sequence[Mat]],
                    block_shapes: Sequence[tuple[int, int]]) -> str:
    """``"no"`` if some block determinant vanishes identically, else ``"nonzero"``."""
    import sympy

    ts = sympy.symbols(f"t0:{len(basis_blocks)}")
    for b, (n, _) in enumerate(block_shapes):
        if n == 0:
            continue
        entries = [[0] * n for _ in range(n)]
        for t, blocks in zip(ts, basis_blocks):
            for i, row in enumerate(blocks[b].rows):
                for j, x in enumerate(row):
                    if x != 0:
                        entries[i][j] += t * (sympy.Rational(x.numerator, x.denominator)
                                              if isinstance(x, Fraction) else int(x))
        d = sympy.Matrix(entries).det(method="berkowitz")
        poly = sympy.Poly(sympy.expand(d), *ts, modulus=F.p) if F.is_finite else sympy.Poly(sympy.expand(d), *ts)
        if poly.is_zero:
            return "no"
    return "nonzero"
