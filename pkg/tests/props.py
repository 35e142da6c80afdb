"""Invariants checked on random complexes; shared by the property tests and the acceptance run."""
from __future__ import annotations

import json
import random

from comproj import corpus
from comproj.complexes import (cone, direct_sum, equalize, homology_dims, identity_map, minimize, shift)
from comproj.degen import k0_class, verify_certificate
from comproj.exactlin import Field
from comproj.formats import (chain_map_from_json, chain_map_to_json, complex_from_json, complex_to_json,
                             dump_json)
from comproj.randgen import (random_array, random_automorphism, random_certificate, random_chain_map,
                             random_complex)

ALGEBRAS = [corpus.a2(Field.prime(2)), corpus.two_loop(Field.prime(2)), corpus.a2(Field.prime(3)),
            corpus.two_loop(Field.prime(3)), corpus.a2(Field.rationals()), corpus.two_loop(Field.rationals())]


def _rand(A, rng, hi=2, maxmult=2):
    return random_complex(A, random_array(A.num_vertices, rng, 0, hi, maxmult), rng)


def _all_homology(X):
    if not X.terms:
        return {}
    out = {i: homology_dims(X, i) for i in range(X.lo - 1, X.hi + 2)}
    return {i: v for i, v in out.items() if any(v)}


def minimize_idempotent(A, rng):
    X = _rand(A, rng)
    r = minimize(X)
    assert r.automorphism.act(X) == direct_sum(r.complex, r.contractible)
    again = minimize(r.complex)
    assert again.complex == r.complex and not again.stripped


def homology_invariant(A, rng):
    X = _rand(A, rng)
    h = _all_homology(X)
    assert _all_homology(minimize(X).complex) == h
    assert _all_homology(random_automorphism(X, rng).act(X)) == h
    Y = _rand(A, rng)
    if k0_class(X) == k0_class(Y):
        assert _all_homology(equalize(X, Y).X) == h
    assert _all_homology(equalize(X, X).X) == h


def cone_of_identity_contractible(A, rng):
    X = _rand(A, rng, hi=1)
    C = cone(identity_map(X))
    assert minimize(C).complex.is_zero()


def shift_sign_law(A, rng):
    X = _rand(A, rng)
    s = rng.randint(-3, 3)
    Y = shift(X, s)
    sign = A.field((-1) ** (s % 2))
    for i, m in X.diffs.items():
        assert Y.diff(i + s) == m.scale(sign)
    assert shift(Y, -s) == X
    assert shift(shift(X, 1), 1) == shift(X, 2)


def k0_negation(A, rng):
    X = _rand(A, rng)
    assert k0_class(shift(X, 1)) == tuple(-v for v in k0_class(X))
    assert k0_class(shift(X, 2)) == k0_class(X)


def certificate_equal_arrays(A, rng):
    M = _rand(A, rng, hi=1, maxmult=1)
    Z = _rand(A, rng, hi=1, maxmult=1)
    while Z.is_zero():
        Z = _rand(A, rng, hi=1, maxmult=1)
    c = random_certificate(M, Z, rng)
    if c is None:  # no degreewise surjection drawn; nothing to check
        return
    assert verify_certificate(c)
    assert c.N.array() == c.M.array()
    assert k0_class(c.N) == k0_class(c.M)


def formats_round_trip(A, rng):
    X, Y = _rand(A, rng), _rand(A, rng)
    k = rng.randint(-1, 1)
    for Z in (X, Y):
        assert complex_from_json(json.loads(dump_json(complex_to_json(Z))), A) == Z
    f = random_chain_map(X, Y, rng, k)
    assert chain_map_from_json(json.loads(dump_json(chain_map_to_json(f))), X, Y) == f


PROPERTIES = {
    "minimize is idempotent": minimize_idempotent,
    "homology survives minimize, equalize and conjugation": homology_invariant,
    "cone of an identity is contractible": cone_of_identity_contractible,
    "shift sign law": shift_sign_law,
    "K0 of a shift is negated": k0_negation,
    "certificates have equal arrays": certificate_equal_arrays,
    "formats round trip": formats_round_trip,
}


def run_property(name: str, cases: int = 100, seed: int = 0) -> list[int]:
    """Indices of failing cases."""
    func = PROPERTIES[name]
    rng = random.Random(f"{seed}:{name}")
    failed = []
    for n in range(cases):
        try:
            func(ALGEBRAS[n % len(ALGEBRAS)], rng)
        except AssertionError:
            failed.append(n)
    return failed
