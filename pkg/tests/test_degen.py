import random

import pytest

from comproj import corpus
from comproj.amod import is_isomorphic_modules, simple, split_ses
from comproj.complexes import ChainMap, cone, direct_sum, identity_map, stalk
from comproj.degen import (DegenError, DegenerationCertificate, certificate_problems, degeneration_report,
                           extract_module_ses, k0_class, k0_equal, kernel_complex, module_bridge,
                           riedtmann_member, search_witness, total_dim, trivial_certificate,
                           verify_certificate)
from comproj.homcalc import chain_map_space, is_isomorphic
from comproj.projmaps import HomMatrix
from comproj.randgen import random_array, random_certificate, random_complex

from test_amod import a2_ses

ZB = {1: (0, 1), 0: (1, 0)}


def test_k0(a2_q):
    X = stalk(a2_q, 1)
    assert k0_class(X) == (1, 0)
    assert k0_class(direct_sum(X, stalk(a2_q, 2, 1))) == (1, -1)
    M, N = corpus.a2_pair(a2_q)
    assert k0_equal(M, N)


def test_trivial_certificate(a2_q):
    M, _ = corpus.a2_pair(a2_q)
    c = trivial_certificate(M)
    assert verify_certificate(c)
    assert c.Z.is_zero()


def test_broken_certificate_rejected(a2_f2):
    M, N = corpus.a2_pair(a2_f2)
    c = search_witness(M, N, ZB).certificate
    bad = DegenerationCertificate(c.N, c.M, c.Z, c.inj, c.surj.scale(0))
    problems = certificate_problems(bad)
    assert any("surjective" in p for p in problems)
    # perturb surj by a chain map that does not vanish on the image of inj
    for g in chain_map_space(c.middle, c.Z):
        if not c.inj.then(g).is_zero():
            bad = DegenerationCertificate(c.N, c.M, c.Z, c.inj, c.surj + g)
            assert any("surj ∘ inj" in p for p in certificate_problems(bad))
            break
    else:
        pytest.fail("no perturbation found")


def test_search_a2(a2_f2, a2_q):
    M, N = corpus.a2_pair(a2_f2)
    res = search_witness(M, N, ZB)
    assert res.found and verify_certificate(res.certificate)
    assert is_isomorphic(res.certificate.Z, corpus.a2_witness(a2_f2)).status == "yes"
    assert not search_witness(N, M, ZB).found
    triv = search_witness(M, M, ZB)
    assert triv.found and triv.certificate.Z.is_zero()
    Mq, Nq = corpus.a2_pair(a2_q)
    with pytest.raises(DegenError):
        search_witness(Mq, Nq, ZB)
    assert search_witness(Mq, Nq, ZB, coeffs=(-1, 0, 1)).found


def test_riedtmann_family(a2_q):
    M, N = corpus.a2_pair(a2_q)
    c = search_witness(M, N, ZB, coeffs=(-1, 0, 1)).certificate
    assert is_isomorphic(riedtmann_member(c, 0), N).status == "yes"
    assert is_isomorphic(riedtmann_member(c, 1), M).status == "yes"
    good = [t for t in range(1, total_dim(c.Z) + 2) if is_isomorphic(riedtmann_member(c, t), M).status == "yes"]
    assert len(good) >= 1


def test_kernel_complex_of_split_projection(a2_q):
    M, N = corpus.a2_pair(a2_q)
    Z = corpus.a2_witness(a2_q)
    mid = direct_sum(Z, M)
    # projection onto the Z summand
    comps = {}
    for i in mid.terms:
        nz = len(Z.term(i))
        ident = HomMatrix.identity(a2_q, mid.term(i))
        comps[i] = ident.submatrix(range(nz), range(len(mid.term(i))))
    K, incl = kernel_complex(ChainMap(mid, Z, 0, comps))
    assert is_isomorphic(K, M).status == "yes"
    assert incl.is_chain_map()


def test_module_bridge(a2_q):
    ses = a2_ses(a2_q)
    c = module_bridge(ses, 1)
    assert verify_certificate(c)
    M, N = corpus.a2_pair(a2_q)
    assert is_isomorphic(c.N, N).status == "yes"
    assert is_isomorphic(c.Z, corpus.a2_witness(a2_q)).status == "yes"
    back = extract_module_ses(c)
    assert back.verify()
    assert is_isomorphic_modules(back.N, ses.N)[0] == "yes"
    assert is_isomorphic_modules(back.M, ses.M)[0] == "yes"
    assert is_isomorphic_modules(back.Z, ses.Z)[0] == "yes"
    c0 = module_bridge(ses, 0)
    assert verify_certificate(c0) and c0.N.hi == 0


def test_module_bridge_split(a2_q):
    ses = split_ses(simple(a2_q, 1), simple(a2_q, 2))
    c = module_bridge(ses, 1)
    assert verify_certificate(c)
    assert is_isomorphic(c.N, c.M).status == "yes"


def test_extract_from_trivial(a2_q):
    M, _ = corpus.a2_pair(a2_q)
    s = extract_module_ses(trivial_certificate(M))
    assert s.verify() and s.Z.is_zero() and s.N.dims == s.M.dims


def test_reports(a2_f2):
    M, N = corpus.a2_pair(a2_f2)
    assert degeneration_report(M, N, ZB).verdict == "proved_leq"
    rev = degeneration_report(N, M, ZB, names=("N", "M"))
    assert rev.verdict == "refuted"
    assert rev.hom_order.violation.name == "N" and rev.hom_order.dims == (2, 1)
    assert any("2 > 1" in e for e in rev.evidence)
    X = corpus.a2_witness(a2_f2)
    Y = direct_sum(X, cone(identity_map(stalk(a2_f2, 1))))
    assert degeneration_report(X, Y).verdict == "isomorphic"
    assert degeneration_report(stalk(a2_f2, 1), stalk(a2_f2, 2)).verdict == "refuted"
    assert degeneration_report(M, N).verdict == "unknown"


def test_random_certificates_verify(loop_f2):
    rng = random.Random(11)
    made = 0
    for _ in range(15):
        M = random_complex(loop_f2, random_array(2, rng, maxmult=1), rng)
        Z = random_complex(loop_f2, random_array(2, rng, maxmult=1), rng)
        c = random_certificate(M, Z, rng)
        if c is None:
            continue
        made += 1
        assert verify_certificate(c)
        assert c.N.array() == c.M.array()
        assert is_isomorphic(riedtmann_member(c, 0), c.N).status == "yes"
    assert made >= 10
