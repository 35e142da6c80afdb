"""Exhaustive classification of two-term complexes over a finite field."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .algebra import PathAlgebra
from .complexes import ProjComplex, format_array, minimize
from .homcalc import hom_order_leq, is_isomorphic, tangent_dims
from .projmaps import HomMatrix


class CensusError(ValueError):
    pass


@dataclass
class CensusClass:
    representative: ProjComplex
    count: int  # number of differentials in the class, i.e. the orbit size
    tangent: tuple  # (scheme tangent dim, orbit tangent dim)
    above: list = dc_field(default_factory=list)  # indices of classes N with M <= N allowed by the hom order

    @property
    def rigid(self) -> bool:
        return self.tangent[0] == self.tangent[1]


def all_differentials(A: PathAlgebra, src: Sequence[int], tgt: Sequence[int]):
    F = A.field
    if not F.is_finite:
        raise ValueError("a census needs a finite field")
    slots = [(r, c, A.hom_dim(a, b)) for r, b in enumerate(tgt) for c, a in enumerate(src)]
    total = sum(d for _, _, d in slots)
    for vals in itertools.product(range(F.p), repeat=total):
        rows = [[None] * len(src) for _ in tgt]
        off = 0
        for r, c, d in slots:
            rows[r][c] = tuple(vals[off:off + d])
            off += d
        yield HomMatrix(A, src, tgt, rows)


@dataclass
class Census:
    total: int  # number of differentials enumerated
    classes: list

    @property
    def rigid_classes(self) -> list[CensusClass]:
        return [c for c in self.classes if c.rigid]

    @property
    def unique(self) -> bool:
        """At most one rigid complex up to isomorphism."""
        return len(self.rigid_classes) <= 1

    def lines(self) -> list[str]:
        out = [f"differentials: {self.total}", f"classes: {len(self.classes)}"]
        for k, c in enumerate(self.classes):
            m = minimize(c.representative)
            out.append(f"[{k}] orbit {c.count}, tangent {c.tangent}, rigid {c.rigid}, "
                       f"minimal part {format_array(m.complex.array())}, hom order allows degenerating to {c.above}")
        out.append(f"rigid classes: {len(self.rigid_classes)} ({'unique' if self.unique else 'not unique'})")
        return out


def census_size(A: PathAlgebra, src: Sequence[int], tgt: Sequence[int]) -> int:
    return A.field.p ** sum(A.hom_dim(a, b) for a in src for b in tgt)


def two_term_census(A: PathAlgebra, src: Sequence[int], tgt: Sequence[int],
                    with_order: bool = True, cap: int = 2**16) -> Census:
    """Isomorphism classes of ``P_src -> P_tgt`` (degrees 1 and 0), largest orbits first.

    ``above[i]`` of a class lists the classes ``j`` whose complexes ``N``
    satisfy the hom order test against it, which is necessary for ``M <= N``.
    """
    src, tgt = tuple(src), tuple(tgt)
    if not A.field.is_finite:
        raise CensusError("a census needs a finite field")
    total = census_size(A, src, tgt)
    if total > cap:
        raise CensusError(f"{total} differentials exceed the cap {cap}")
    terms = {i: t for i, t in ((1, src), (0, tgt)) if t}
    reps: list[ProjComplex] = []
    counts: list[int] = []
    for d in all_differentials(A, src, tgt):
        X = ProjComplex(A, terms, {1: d} if src and tgt else {}, check=False)
        for k, R in enumerate(reps):
            if is_isomorphic(R, X).status == "yes":
                counts[k] += 1
                break
        else:
            reps.append(X)
            counts.append(1)
    classes = [CensusClass(R, n, tangent_dims(R)) for R, n in zip(reps, counts)]
    classes.sort(key=lambda c: -c.count)
    if with_order:
        for i, ci in enumerate(classes):
            ci.above = [j for j, cj in enumerate(classes)
                        if j != i and hom_order_leq(ci.representative, cj.representative).consistent]
    return Census(total, classes)
