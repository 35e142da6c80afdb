"""Random complexes, automorphisms and certificates for property tests."""
from __future__ import annotations

import random
from typing import Mapping, Sequence

from .algebra import PathAlgebra
from .complexes import (ChainMap, GradedAutomorphism, ProjComplex, direct_sum, types_of)
from .degen import DegenerationCertificate, _columns_to_matrix, kernel_complex
from .exactlin import Mat, kernel_basis
from .homcalc import chain_map_space
from .projmaps import HomMatrix, is_iso


def _rand_combo(F, rng: random.Random, basis: Sequence[tuple], dim: int) -> tuple:
    out = [F.zero] * dim
    for vec in basis:
        c = F.random(rng, 2)
        if c:
            out = [F.add(x, F.mul(c, y)) for x, y in zip(out, vec)]
    return tuple(out)


def _unit_slots(A: PathAlgebra, j: int, tgt: Sequence[int]) -> list[int]:
    """Positions of unit coordinates in the vertex-``j`` space of ``P_tgt``."""
    out, off = [], 0
    for t in tgt:
        if t == j:
            out.append(off)
        off += A.hom_dim(j, t)
    return out


def random_complex(A: PathAlgebra, array: Mapping[int, Sequence[int]], rng: random.Random,
                   minimal: bool = False, density: float = 1.0) -> ProjComplex:
    """A random complex with the given array, built from the lowest degree up.

    Each column of ``d_i`` is drawn from the kernel of ``d_{i-1}`` on the
    relevant vertex space, so ``d d = 0`` holds by construction.  With
    ``minimal=True`` unit parts are forced to vanish.  ``density`` is the
    chance that a column is nonzero at all.
    """
    F = A.field
    terms = {i: types_of(v) for i, v in array.items() if any(v)}
    diffs: dict[int, HomMatrix] = {}
    for i in sorted(terms):
        src, tgt = terms[i], terms.get(i - 1, ())
        if not tgt:
            continue
        lower = diffs.get(i - 1)
        cols = []
        for j in src:
            dim = sum(A.hom_dim(j, t) for t in tgt)
            if lower is not None:
                rows = list(lower.linearize_at(j).rows)
            else:
                rows = []
            if minimal:
                for s in _unit_slots(A, j, tgt):
                    rows.append(tuple(F.one if x == s else F.zero for x in range(dim)))
            if rows:
                basis = kernel_basis(Mat(F, len(rows), dim, tuple(rows)))
            else:
                basis = [tuple(F.one if x == y else F.zero for x in range(dim)) for y in range(dim)]
            if rng.random() < density:
                cols.append(_rand_combo(F, rng, basis, dim))
            else:
                cols.append((F.zero,) * dim)
        diffs[i] = _columns_to_matrix(A, src, tgt, cols)
    return ProjComplex(A, terms, diffs)


def random_array(l: int, rng: random.Random, lo: int = 0, hi: int = 2, maxmult: int = 2) -> dict:
    arr = {i: tuple(rng.randint(0, maxmult) for _ in range(l)) for i in range(lo, hi + 1)}
    return {i: v for i, v in arr.items() if any(v)}


def random_iso(A: PathAlgebra, types: Sequence[int], rng: random.Random, tries: int = 100) -> HomMatrix:
    """A random automorphism of ``P_types``."""
    F = A.field
    n = len(types)
    for _ in range(tries):
        rows = [[tuple(F.random(rng, 2) for _ in range(A.hom_dim(a, b))) for a in types] for b in types]
        m = HomMatrix(A, types, types, rows)
        if is_iso(m):
            return m
    return HomMatrix.identity(A, types) if n else HomMatrix.zero(A, (), ())


def random_automorphism(X: ProjComplex, rng: random.Random) -> GradedAutomorphism:
    return GradedAutomorphism({i: random_iso(X.algebra, t, rng) for i, t in X.terms.items()})


def random_chain_map(X: ProjComplex, Y: ProjComplex, rng: random.Random, k: int = 0) -> ChainMap:
    F = X.algebra.field
    out = ChainMap(X, Y, k, {})
    for f in chain_map_space(X, Y, k):
        c = F.random(rng, 2)
        if c:
            out = out + f.scale(c)
    return out


def random_certificate(M: ProjComplex, Z: ProjComplex, rng: random.Random,
                       tries: int = 50) -> DegenerationCertificate | None:
    """Kernel of a random degreewise surjection ``(beta, psi): Z + M -> Z``."""
    from .complexes import identity_map

    mid = direct_sum(Z, M)
    for n in range(tries):
        beta = random_chain_map(Z, Z, rng)
        if n % 2:
            beta = beta + identity_map(Z)
        psi = random_chain_map(M, Z, rng)
        comps = {}
        for i in mid.terms:
            b, p = beta.comp(i), psi.comp(i)
            rows = [list(rb) + list(rp) for rb, rp in zip(b.entries, p.entries)]
            comps[i] = HomMatrix(M.algebra, mid.term(i), Z.term(i), rows)
        surj = ChainMap(mid, Z, 0, comps)
        got = kernel_complex(surj)
        if got is None:
            continue
        N, incl = got
        return DegenerationCertificate(N, M, Z, incl, surj)
    return None
