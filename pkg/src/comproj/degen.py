"""Degeneration certificates, the one-parameter family, witness search and reports.

A certificate for ``M ≤ N`` is a degreewise split exact sequence of
complexes ``0 -> N --(φ; α)--> Z ⊕ M --(β, ψ)--> Z -> 0``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .amod import (ModuleMap, ModuleSES, generated_map, module_sum, projective_cover,
                   truncated_resolution)
from .complexes import (ChainMap, ProjComplex, array_diff, clean_array, cone,
                        contractible, direct_sum, equalize, format_array, homology, homology_dims,
                        k0_of_array, shift, stalk, types_of)
from .exactlin import (DEFAULT_SEARCH, Mat, SearchConfig, rank, rref, solve,
                       extend_to_basis)
from .homcalc import (GradedMaps, HomOrderResult, _homotopy_map, chain_map_space, default_tests,
                      hom_order_leq, is_isomorphic)
from .projmaps import HomMatrix, compose, hstack, invert, permutation, vstack


class DegenError(ValueError):
    pass


# --- K_0 ---------------------------------------------------------------------------

def k0_class(X: ProjComplex) -> tuple[int, ...]:
    """Alternating sum of the multiplicity vectors."""
    return k0_of_array(X.array(), X.algebra.num_vertices)


def k0_equal(X: ProjComplex, Y: ProjComplex) -> bool:
    return k0_class(X) == k0_class(Y)


# --- certificates ------------------------------------------------------------------

@dataclass
class DegenerationCertificate:
    """``inj: N -> Z ⊕ M`` and ``surj: Z ⊕ M -> Z`` (middle ordered ``Z`` first)."""

    N: ProjComplex
    M: ProjComplex
    Z: ProjComplex
    inj: ChainMap
    surj: ChainMap

    @property
    def middle(self) -> ProjComplex:
        return direct_sum(self.Z, self.M)

    def _split_rows(self, f: ChainMap, first: bool) -> ChainMap:
        tgt = self.Z if first else self.M
        comps = {}
        for i, m in f.comps.items():
            nz = len(self.Z.term(i))
            rows = range(nz) if first else range(nz, len(m.tgt))
            comps[i] = m.submatrix(rows, range(len(m.src)))
        return ChainMap(f.source, tgt, 0, comps)

    def _split_cols(self, f: ChainMap, first: bool) -> ChainMap:
        src = self.Z if first else self.M
        comps = {}
        for i, m in f.comps.items():
            nz = len(self.Z.term(i))
            cols = range(nz) if first else range(nz, len(m.src))
            comps[i] = m.submatrix(range(len(m.tgt)), cols)
        return ChainMap(src, f.target, 0, comps)

    @property
    def phi(self) -> ChainMap:
        return self._split_rows(self.inj, True)

    @property
    def alpha(self) -> ChainMap:
        return self._split_rows(self.inj, False)

    @property
    def beta(self) -> ChainMap:
        return self._split_cols(self.surj, True)

    @property
    def psi(self) -> ChainMap:
        return self._split_cols(self.surj, False)


def certificate_problems(c: DegenerationCertificate) -> list[str]:
    """Every reason why ``c`` fails to verify (empty when it is valid)."""
    A = c.N.algebra
    if c.M.algebra is not A or c.Z.algebra is not A:
        raise DegenError("certificate mixes algebras")
    problems = []
    mid = c.middle
    if c.inj.k or c.surj.k:
        problems.append("maps must have degree 0")
    if c.inj.source != c.N or c.inj.target != mid:
        problems.append("inj must map N to Z ⊕ M")
    if c.surj.source != mid or c.surj.target != c.Z:
        problems.append("surj must map Z ⊕ M to Z")
    if problems:
        return problems
    if not c.inj.is_chain_map():
        problems.append("inj is not a chain map")
    if not c.surj.is_chain_map():
        problems.append("surj is not a chain map")
    degs = set(c.N.terms) | set(mid.terms)
    for i in sorted(degs):
        f, g = c.inj.comp(i), c.surj.comp(i)
        if not compose(g, f).is_zero():
            problems.append(f"surj ∘ inj is not zero in degree {i}")
        for v in A.vertices:
            fv, gv = f.linearize_at(v), g.linearize_at(v)
            dn, dz, dm = fv.ncols, gv.nrows, gv.ncols
            if rank(fv) != dn:
                problems.append(f"inj is not injective in degree {i} at vertex {v}")
            if rank(gv) != dz:
                problems.append(f"surj is not surjective in degree {i} at vertex {v}")
            if dn + dz != dm:
                problems.append(f"dimensions do not add up in degree {i} at vertex {v}")
    if not problems and c.N.array() != c.M.array():
        problems.append("N and M have different dimension arrays")
    return problems


def verify_certificate(c: DegenerationCertificate) -> bool:
    """True exactly when ``c`` is a valid certificate (this proves ``M ≤ N``)."""
    return not certificate_problems(c)


def trivial_certificate(M: ProjComplex, N: ProjComplex | None = None, iso: ChainMap | None = None):
    """Certificate with ``Z = 0``: ``inj`` is an isomorphism ``N -> M``."""
    A = M.algebra
    Zero = ProjComplex(A, {})
    if N is None:
        N = M
        iso = ChainMap(M, M, 0, {i: HomMatrix.identity(A, t) for i, t in M.terms.items()})
    if iso is None:
        raise DegenError("an isomorphism N -> M is required")
    mid = direct_sum(Zero, M)
    inj = ChainMap(N, mid, 0, iso.comps)
    surj = ChainMap(mid, Zero, 0, {})
    return DegenerationCertificate(N, M, Zero, inj, surj)


# --- kernels of split surjections and the family ---------------------------------------

def kernel_complex(f: ChainMap):
    """Kernel of a degreewise surjective chain map between complexes of projectives.

    Returns ``(K, inclusion)`` or ``None`` when ``f`` is not surjective in some
    degree.  Each degree is split A-linearly: unit-part pivots pick summands
    ``A`` of the source on which ``f`` is invertible, the rest ``C`` parametrize
    the kernel via ``(-f_A^{-1} f_C; id_C)``.
    """
    if f.k:
        raise DegenError("kernel_complex needs a degree-0 map")
    B, T = f.source, f.target
    Alg = B.algebra
    incl, proj, kterms = {}, {}, {}
    for i in sorted(set(B.terms) | set(T.terms)):
        m = f.comp(i)
        piv_cols = []
        for j in Alg.vertices:
            rs = [r for r, t in enumerate(m.tgt) if t == j]
            cs = [c for c, t in enumerate(m.src) if t == j]
            if not rs:
                continue
            block = Mat(Alg.field, len(rs), len(cs), tuple(tuple(m.entries[r][c][0] for c in cs) for r in rs))
            r_, pivots, _ = rref(block)
            if r_ < len(rs):
                return None
            piv_cols.extend(cs[p] for p in pivots)
        piv_cols.sort()
        rest = [c for c in range(len(m.src)) if c not in piv_cols]
        src = B.term(i)
        kterms[i] = tuple(src[c] for c in rest)
        if not rest:
            continue
        parts = [HomMatrix.identity(Alg, kterms[i])]
        if piv_cols:
            fa = m.submatrix(range(len(m.tgt)), piv_cols)
            fc = m.submatrix(range(len(m.tgt)), rest)
            parts.insert(0, -compose(invert(fa), fc))
        perm = permutation(Alg, src, piv_cols + rest)
        incl[i] = compose(invert(perm), vstack(parts))
        ident = HomMatrix.identity(Alg, src)
        proj[i] = ident.submatrix(rest, range(len(src)))
    kdiffs = {}
    for i in B.diffs:
        if kterms.get(i) and kterms.get(i - 1):
            kdiffs[i] = compose(proj[i - 1], compose(B.diff(i), incl[i]))
    K = ProjComplex(Alg, kterms, kdiffs, check=False)
    return K, ChainMap(K, B, 0, {i: m for i, m in incl.items() if kterms.get(i)})


def riedtmann_member(c: DegenerationCertificate, t) -> ProjComplex | None:
    """``N_t = ker(β + t·id_Z, ψ)``, or ``None`` if that map is not degreewise surjective."""
    if not verify_certificate(c):
        raise DegenError("certificate does not verify")
    A = c.N.algebra
    F = A.field
    t = F(t)
    comps = {}
    for i in set(c.middle.terms):
        m = c.surj.comp(i)
        nz = len(c.Z.term(i))
        if nz:
            shift_part = hstack([HomMatrix.identity(A, c.Z.term(i)).scale(t),
                                 HomMatrix.zero(A, c.M.term(i), c.Z.term(i))])
            m = m + shift_part
        comps[i] = m
    ft = ChainMap(c.middle, c.Z, 0, comps)
    out = kernel_complex(ft)
    return None if out is None else out[0]


def beta_matrix(c: DegenerationCertificate) -> Mat:
    """The k-linear map of ``β`` on the total space of ``Z`` (block diagonal)."""
    from .exactlin import block_diag

    A = c.N.algebra
    blocks = [c.beta.comp(i).linearize() for i in c.Z.terms]
    return block_diag(A.field, blocks) if blocks else Mat.zeros(A.field, 0, 0)


def total_dim(X: ProjComplex) -> int:
    return sum(sum(X.vector_dims(i)) for i in X.terms)


# --- witness search -----------------------------------------------------------------------

@dataclass
class WitnessSearch:
    certificate: DegenerationCertificate | None
    z_classes: int = 0
    maps_tried: int = 0
    arrays: list = dc_field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.certificate is not None


def _sub_arrays(bound: dict, l: int) -> list[dict]:
    """All arrays ``<= bound``, ordered by total size, then lexicographically."""
    slots = [(i, j) for i in sorted(bound) for j in range(l) if bound[i][j] > 0]
    ranges = [range(bound[i][j] + 1) for i, j in slots]
    out = []
    for combo in itertools.product(*ranges):
        d = {}
        for (i, j), m in zip(slots, combo):
            d.setdefault(i, [0] * l)[j] = m
        out.append((sum(combo), combo, clean_array(d)))
    out.sort(key=lambda x: (x[0], x[1]))
    return [d for _, _, d in out]


def _radical_slots(A, terms: dict) -> list[tuple]:
    """Coordinates (degree, row, col, index) of radical entries of all differentials."""
    slots = []
    for i in sorted(terms):
        if i - 1 not in terms:
            continue
        for r, b in enumerate(terms[i - 1]):
            for c, a in enumerate(terms[i]):
                for x in range(A.hom_dim(a, b)):
                    if a == b and x == 0:
                        continue
                    slots.append((i, r, c, x))
    return slots


def _complex_from_slots(A, terms, slots, values) -> ProjComplex | None:
    z = A.field.zero
    rows = {i: [[[z] * A.hom_dim(a, b) for a in terms[i]] for b in terms[i - 1]]
            for i in terms if i - 1 in terms}
    for (i, r, c, x), v in zip(slots, values):
        rows[i][r][c][x] = v
    diffs = {i: HomMatrix(A, terms[i], terms[i - 1], [[tuple(e) for e in row] for row in m])
             for i, m in rows.items()}
    for i in diffs:
        if i + 1 in diffs and not compose(diffs[i], diffs[i + 1]).is_zero():
            return None
    return ProjComplex(A, terms, diffs, check=False)


def _fingerprint(X: ProjComplex) -> tuple:
    return tuple((i, homology_dims(X, i)) for i in sorted(set(X.terms) | {i + 1 for i in X.terms}))


def minimal_complexes(A, array: dict, values: Sequence, cap: int | None = None):
    """Yield minimal complexes with the given array, one per isomorphism class.

    ``values`` are the coefficients tried for each radical coordinate.
    """
    terms = {i: types_of(v) for i, v in clean_array(array).items()}
    slots = _radical_slots(A, terms)
    total = len(values) ** len(slots)
    if cap is not None and total > cap:
        raise DegenError(f"{total} candidate differentials exceed the cap {cap}")
    seen: dict[tuple, list] = {}
    for combo in itertools.product(values, repeat=len(slots)):
        X = _complex_from_slots(A, terms, slots, combo)
        if X is None:
            continue
        fp = _fingerprint(X)
        bucket = seen.setdefault(fp, [])
        if any(is_isomorphic(X, Y).status == "yes" for Y in bucket):
            continue
        bucket.append(X)
        yield X


def _hom_classes(X: ProjComplex, Y: ProjComplex) -> list[ChainMap]:
    """Chain maps ``X -> Y`` whose span is a complement of the null-homotopic ones."""
    F = X.algebra.field
    basis = chain_map_space(X, Y, 0)
    if not basis:
        return []
    space = GradedMaps(X, Y, 0)
    phi = _homotopy_map(X, Y)
    null = [tuple(col) for col in phi.columns()]
    vecs = [tuple(space.from_comps(f.comps)) for f in basis]
    chosen = extend_to_basis(F, null, vecs, space.dim)
    return [ChainMap(X, Y, 0, space.to_comps(v)) for v in chosen]


def _certificate_from_cone(N, M, Z, h: ChainMap, theta: ChainMap) -> DegenerationCertificate:
    """Turn ``θ: cone(h) ≅ Z ⊕ M`` into a certificate (``h: Z[-1] -> N``)."""
    C = theta.source
    mid = theta.target
    inj, surj = {}, {}
    for i in set(C.terms):
        th = theta.comp(i)
        nz = len(Z.term(i))
        inj[i] = th.submatrix(range(len(th.tgt)), range(nz, len(th.src)))
        surj[i] = invert(th).submatrix(range(nz), range(len(th.tgt)))
    return DegenerationCertificate(
        N, M, Z,
        ChainMap(N, mid, 0, {i: m for i, m in inj.items() if N.term(i)}),
        ChainMap(mid, Z, 0, {i: m for i, m in surj.items() if Z.term(i)}))


def search_witness(M: ProjComplex, N: ProjComplex, zbound: dict, coeffs: Sequence | None = None,
                   cap: int = 2**24, config: SearchConfig = DEFAULT_SEARCH) -> WitnessSearch:
    """Look for a certificate of ``M ≤ N`` with ``Z`` of array at most ``zbound``.

    Candidate ``Z`` are minimal complexes up to isomorphism (a certificate with
    any ``Z`` yields one with its minimal part); for each, the maps
    ``h: Z[-1] -> N`` run over a complement of the null-homotopic maps and
    ``cone(h)`` is compared with ``Z ⊕ M``.  Over the rationals a finite
    coefficient grid ``coeffs`` must be supplied.
    """
    A = M.algebra
    F = A.field
    if N.algebra is not A:
        raise DegenError("complexes over different algebras")
    if M.array() != N.array():
        raise DegenError("M and N must have equal dimension arrays (use equalize)")
    if coeffs is None:
        if not F.is_finite:
            raise DegenError("search over an infinite field needs an explicit coefficient grid")
        values = list(F.elements())
    else:
        values = sorted({F(c) for c in coeffs}, key=lambda x: (x != 0, abs(x) if not F.is_finite else x, x))
    l = A.num_vertices
    bound = clean_array(zbound)
    arrays = _sub_arrays(bound, l)
    budget = 0
    for z in arrays:
        terms = {i: types_of(v) for i, v in z.items()}
        budget += len(values) ** len(_radical_slots(A, terms))
    if budget > cap:
        raise DegenError(f"{budget} candidate differentials exceed the cap {cap}")
    result = WitnessSearch(None, arrays=[format_array(z) for z in arrays])
    for z in arrays:
        for Z in minimal_complexes(A, z, values):
            result.z_classes += 1
            ZM = direct_sum(Z, M)
            target_fp = _fingerprint(ZM)
            Zs = shift(Z, -1)
            gens = _hom_classes(Zs, N)
            for combo in itertools.product(values, repeat=len(gens)):
                result.maps_tried += 1
                comps = {}
                for cf, g in zip(combo, gens):
                    if cf != 0:
                        for i, m in g.comps.items():
                            m = m.scale(cf)
                            comps[i] = comps[i] + m if i in comps else m
                h = ChainMap(Zs, N, 0, comps)
                C = cone(h)
                if _fingerprint(C) != target_fp:
                    continue
                iso = is_isomorphic(C, ZM, config)
                if iso.status == "yes":
                    result.certificate = _certificate_from_cone(N, M, Z, h, iso.witness)
                    return result
    return result


# --- module sequences and resolutions -------------------------------------------------------

def _column_vector(m: HomMatrix, c: int) -> tuple:
    """Column ``c`` as a vector in the vertex-``src[c]`` space of the target."""
    return tuple(x for r in range(len(m.tgt)) for x in m.entries[r][c])


def _columns_to_matrix(A, src: Sequence[int], tgt: Sequence[int], vectors: Sequence) -> HomMatrix:
    rows = [[None] * len(src) for _ in tgt]
    for c, (j, vec) in enumerate(zip(src, vectors)):
        off = 0
        for r, t in enumerate(tgt):
            d = A.hom_dim(j, t)
            rows[r][c] = tuple(vec[off:off + d])
            off += d
    return HomMatrix(A, src, tgt, rows)


def lift_through(D: HomMatrix, R: HomMatrix) -> HomMatrix | None:
    """``S`` with ``D ∘ S = R`` (source of ``R`` projective), or ``None``."""
    A = D.algebra
    vecs = []
    for c, j in enumerate(R.src):
        s = solve(D.linearize_at(j), _column_vector(R, c))
        if s is None:
            return None
        vecs.append(s)
    return _columns_to_matrix(A, R.src, D.src, vecs)


def _module_solve(f: ModuleMap, v: int, w) -> tuple:
    x = solve(f.at(v), w)
    if x is None:
        raise DegenError("vector is not in the image")
    return x


def horseshoe(ses: ModuleSES, n: int):
    """Resolutions ``P^N``, ``P^Z`` and ``E`` of the middle, with ``E_i = P^N_i ⊕ P^Z_i``."""
    A = ses.N.algebra
    PN = truncated_resolution(ses.N, n)
    PZ = truncated_resolution(ses.Z, n)
    mid = ses.middle
    covN = projective_cover(ses.N)
    covZ = projective_cover(ses.Z)
    # λ_0: P^Z_0 -> middle lifting the cover of Z through surj
    gens = []
    for c, j in enumerate(covZ.types):
        unit = tuple(A.field.one if x == 0 else A.field.zero for x in range(A.hom_dim(j, j)))
        img = covZ.map.at(j).apply(_embed_gen(A, covZ.types, c, unit, j))
        gens.append((j, _module_solve(ses.surj, j, img)))
    lam = generated_map(mid, gens)
    sigma = {}
    for i in range(1, n + 1):
        src, tgt = PZ.term(i), PN.term(i - 1)
        if not src:
            break
        if not tgt:
            sigma[i] = HomMatrix.zero(A, src, tgt)
            continue
        if i == 1:
            vecs = []
            d1 = PZ.diff(1)
            for c, j in enumerate(src):
                w = lam.at(j).apply(_column_vector(d1, c))
                y = _module_solve(ses.inj, j, tuple(A.field.neg(x) for x in w))
                vecs.append(_module_solve(covN.map, j, y))
            sigma[1] = _columns_to_matrix(A, src, tgt, vecs)
        else:
            rhs = -compose(sigma.get(i - 1, HomMatrix.zero(A, PZ.term(i - 1), PN.term(i - 2))), PZ.diff(i))
            s = lift_through(PN.diff(i - 1), rhs) if PN.term(i - 2) else None
            if s is None:
                if not rhs.is_zero():
                    raise DegenError("horseshoe lifting failed")
                s = HomMatrix.zero(A, src, tgt)
            sigma[i] = s
    terms = {i: PN.term(i) + PZ.term(i) for i in set(PN.terms) | set(PZ.terms)}
    diffs = {}
    for i in terms:
        if i - 1 not in terms:
            continue
        dn, dz = PN.diff(i), PZ.diff(i)
        s = sigma.get(i, HomMatrix.zero(A, PZ.term(i), PN.term(i - 1)))
        top = hstack([dn, s]) if PN.term(i - 1) else None
        bottom = hstack([HomMatrix.zero(A, PN.term(i), PZ.term(i - 1)), dz]) if PZ.term(i - 1) else None
        parts = [p for p in (top, bottom) if p is not None]
        diffs[i] = vstack(parts)
    E = ProjComplex(A, terms, diffs)
    return PN, PZ, E


def _embed_gen(A, types, c, unit, j):
    """Vertex-``j`` vector of ``⊕ P_types`` equal to ``unit`` in summand ``c``."""
    vec = []
    for k, t in enumerate(types):
        d = A.hom_dim(j, t)
        vec.extend(unit if k == c else (A.field.zero,) * d)
    return tuple(vec)


def _pad_pieces(diff: dict, top: int, l: int) -> list[tuple]:
    """Decompose an array into disks below ``top`` and stalks at ``top``."""
    work = {i: list(v) for i, v in diff.items()}
    disks, stalks = [], []
    for m in sorted(work):
        for j in range(l):
            e = work[m][j]
            if e < 0:
                raise DegenError("array difference is not contractible")
            if e == 0:
                continue
            if m >= top:
                stalks.extend([(m, j + 1)] * e)
            else:
                disks.extend([(m + 1, j + 1)] * e)
                work.setdefault(m + 1, [0] * l)[j] -= e
            work[m][j] = 0
    return disks, stalks


def module_bridge(ses: ModuleSES, n: int, config: SearchConfig = DEFAULT_SEARCH) -> DegenerationCertificate:
    """Lift a module sequence ``0 -> N -> M ⊕ Z -> Z -> 0`` to truncated resolutions."""
    if not ses.verify():
        raise DegenError("module sequence does not verify")
    A = ses.N.algebra
    l = A.num_vertices
    PN, PZ, E = horseshoe(ses, n)
    PM = truncated_resolution(ses.M, n)
    excess = array_diff(PN.array(), PM.array(), l)
    disks, stalks = _pad_pieces(excess, n, l)
    M_cx = PM
    if disks:
        M_cx = direct_sum(M_cx, contractible(A, disks))
    for deg, j in stalks:
        M_cx = direct_sum(M_cx, stalk(A, j, deg))
    target = direct_sum(PZ, M_cx)
    iso = is_isomorphic(E, target, config)
    if iso.status != "yes":
        raise DegenError(f"could not identify the horseshoe middle term ({iso.status})")
    theta = iso.witness
    inj, surj = {}, {}
    for i in E.terms:
        th = theta.comp(i)
        nn = len(PN.term(i))
        inj[i] = th.submatrix(range(len(th.tgt)), range(nn))
        inv = invert(th)
        # E -> PZ is the projection onto the second block of E
        proj = HomMatrix.identity(A, E.term(i)).submatrix(range(nn, len(E.term(i))), range(len(E.term(i))))
        surj[i] = compose(proj, inv)
    cert = DegenerationCertificate(
        PN, M_cx, PZ,
        ChainMap(PN, target, 0, {i: m for i, m in inj.items() if PN.term(i)}),
        ChainMap(target, PZ, 0, {i: m for i, m in surj.items() if PZ.term(i)}))
    if not verify_certificate(cert):
        raise DegenError("lifted certificate does not verify")
    return cert


def _h0_map(f: ChainMap, HX, HY) -> ModuleMap:
    A = f.source.algebra
    F = A.field
    mats = []
    m0 = f.comp(0)
    for v in A.vertices:
        cols = []
        lin = m0.linearize_at(v) if m0.src and m0.tgt else None
        for q in HX.reps[v]:
            w = lin.apply(q) if lin is not None else (F.zero,) * sum(A.hom_dim(v, t) for t in f.target.term(0))
            cols.append(HY.classes(v, w))
        rows = HY.dims[v - 1]
        mats.append(Mat.from_columns(F, cols, rows) if cols else Mat.zeros(F, rows, 0))
    return ModuleMap(HX.module, HY.module, tuple(mats))


def extract_module_ses(c: DegenerationCertificate) -> ModuleSES:
    """The sequence ``0 -> H_0(N) -> H_0(M) ⊕ H_0(Z) -> H_0(Z) -> 0``."""
    if not verify_certificate(c):
        raise DegenError("certificate does not verify")
    for name, X in (("N", c.N), ("M", c.M)):
        top = X.hi if X.hi is not None else 0
        for i in range(1, top):
            if any(homology_dims(X, i)):
                raise DegenError(f"H_{i}({name}) is not zero")
    HN, HM, HZ = homology(c.N, 0), homology(c.M, 0), homology(c.Z, 0)
    phi = _h0_map(c.phi, HN, HZ)
    alpha = _h0_map(c.alpha, HN, HM)
    beta = _h0_map(c.beta, HZ, HZ)
    psi = _h0_map(c.psi, HM, HZ)
    A = c.N.algebra
    mid = module_sum(HM.module, HZ.module)
    inj = tuple(_vstack(alpha.at(v), phi.at(v)) for v in A.vertices)
    surj = tuple(_hstack(psi.at(v), beta.at(v)) for v in A.vertices)
    ses = ModuleSES(HN.module, HM.module, HZ.module, ModuleMap(HN.module, mid, inj), ModuleMap(mid, HZ.module, surj))
    if not ses.verify():
        raise DegenError("homology sequence is not exact (higher homology interferes)")
    return ses


def _vstack(a: Mat, b: Mat) -> Mat:
    return Mat(a.field, a.nrows + b.nrows, a.ncols, a.rows + b.rows)


def _hstack(a: Mat, b: Mat) -> Mat:
    return Mat(a.field, a.nrows, a.ncols + b.ncols, tuple(x + y for x, y in zip(a.rows, b.rows)))


# --- reports -------------------------------------------------------------------------------

@dataclass
class DegenReport:
    verdict: str  # isomorphic, proved_leq, refuted, unknown
    reason: str
    k0_M: tuple
    k0_N: tuple
    padding_M: list = dc_field(default_factory=list)
    padding_N: list = dc_field(default_factory=list)
    hom_order: HomOrderResult | None = None
    certificate: DegenerationCertificate | None = None
    search: WitnessSearch | None = None
    evidence: list = dc_field(default_factory=list)

    def lines(self) -> list[str]:
        return [f"verdict: {self.verdict}", f"reason: {self.reason}"] + [f"- {e}" for e in self.evidence]


def degeneration_report(M: ProjComplex, N: ProjComplex, zbound: dict | None = None, tests=None,
                        certificate: DegenerationCertificate | None = None, coeffs: Sequence | None = None,
                        cap: int = 2**24, config: SearchConfig = DEFAULT_SEARCH,
                        names: tuple[str, str] = ("M", "N")) -> DegenReport:
    """Combine K_0, isomorphism, hom-order and certificate evidence for ``M ≤ N``.

    ``names`` label ``M`` and ``N`` among the default hom-order test objects.
    """
    kM, kN = k0_class(M), k0_class(N)
    rep = DegenReport("unknown", "", kM, kN)
    ev = rep.evidence
    ev.append(f"K0(M) = {list(kM)}, K0(N) = {list(kN)}")
    if kM != kN:
        rep.verdict, rep.reason = "refuted", f"K0 classes differ: {list(kM)} vs {list(kN)}"
        return rep
    eq = equalize(M, N)
    rep.padding_M, rep.padding_N = eq.pad_x, eq.pad_y
    if eq.pad_x or eq.pad_y:
        ev.append(f"padding disks (top degree, vertex): M {eq.pad_x}, N {eq.pad_y}")
    Mp, Np = eq.X, eq.Y
    ev.append(f"common array {format_array(Mp.array())}")
    iso = is_isomorphic(Mp, Np, config)
    ev.append(f"isomorphism test: {iso.status} ({iso.method})")
    if iso.status == "yes":
        rep.verdict, rep.reason = "isomorphic", "M and N are isomorphic after padding"
        return rep
    if tests is None:
        tests = default_tests(M, N, names=names)
    ho = hom_order_leq(M, N, tests)
    rep.hom_order = ho
    ev.append("hom order: " + ho.summary().replace("(U, X)", "(U, M)").replace("(U, Y)", "(U, N)"))
    if not ho.consistent:
        a, b = ho.dims
        rep.verdict = "refuted"
        rep.reason = f"hom order violated at U = {ho.violation.name}: {a} > {b}"
        return rep
    if certificate is not None:
        problems = certificate_problems(certificate)
        if not problems:
            rep.verdict, rep.reason, rep.certificate = "proved_leq", "supplied certificate verifies", certificate
            return rep
        ev.append("supplied certificate rejected: " + "; ".join(problems))
    if zbound is not None and (Mp.algebra.field.is_finite or coeffs is not None):
        res = search_witness(Mp, Np, zbound, coeffs=coeffs, cap=cap, config=config)
        rep.search = res
        ev.append(f"witness search over Z ≤ {format_array(clean_array(zbound))}: "
                  f"{res.z_classes} classes of Z, {res.maps_tried} maps tried")
        if res.found and verify_certificate(res.certificate):
            rep.verdict, rep.reason, rep.certificate = "proved_leq", "witness found and verified", res.certificate
            ev.append(f"witness Z = {res.certificate.Z!r}")
            return rep
        rep.reason = "no witness within the bound (not a refutation)"
        return rep
    rep.reason = "necessary conditions hold; no certificate available"
    return rep
