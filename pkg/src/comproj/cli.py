"""Command-line front end.

Exit codes: 0 success or affirmative verdict, 1 negative verdict, 2 usage or
format error, 3 inconclusive.
"""
from __future__ import annotations

import argparse
import os
import sys
from typing import Callable, Sequence

from . import corpus
from .algebra import AlgebraError
from .amod import ModuleError, truncated_resolution
from .census import CensusError, two_term_census
from .complexes import (ComplexError, cone, direct_sum, equalize, format_array, homology, minimize,
                        shift, stalk, truncate, truncate_below)
from .degen import (DegenError, certificate_problems, degeneration_report, extract_module_ses,
                    riedtmann_member, search_witness, total_dim, verify_certificate)
from .exactlin import Field, SearchConfig
from .formats import (FormatError, algebra_from_json, algebra_to_json, certificate_to_json, chain_map_from_json,
                      complex_to_json, detect_kind, dump_json, load_certificate, load_complex,
                      load_module, module_from_json, parse_array, read_json, report_to_json,
                      resolve_algebra, certificate_from_json, complex_from_json)
from .homcalc import (TestObject, default_tests, hom_dim, hom_order_leq, is_isomorphic, is_rigid,
                      tangent_dims)

OK, NEGATIVE, USAGE, INCONCLUSIVE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _field(args):
    if args.field is None:
        return None
    try:
        return Field.parse(args.field)
    except ValueError as e:
        raise FormatError("--field", str(e)) from None


def _config(args) -> SearchConfig:
    return SearchConfig(seed=args.seed)


def _load_cx(args, path, A=None):
    return load_complex(path, A, _field(args))


def _load_pair(args, p, q):
    X, Y = _load_cx(args, p), _load_cx(args, q)
    if X.algebra is not Y.algebra:
        raise FormatError(q, f"refers to a different algebra than {p}")
    return X, Y


def _emit(args, obj) -> None:
    text = dump_json(obj)
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _alg_ref(A):
    return algebra_to_json(A)


def _emit_cx(args, X) -> None:
    _emit(args, complex_to_json(X, _alg_ref(X.algebra)))


def _zbound(args, l):
    if args.zbound is None:
        return None
    return parse_array(args.zbound, l)


def _coeffs(args, F):
    if F.is_finite:
        return None
    return tuple(F(x) for x in args.coeffs.split(","))


def _tests(args, A):
    if not args.tests:
        return None
    return [TestObject(p, load_complex(p, A)) for p in args.tests]


# --- subcommands -----------------------------------------------------------------------

def cmd_validate(args) -> int:
    obj = read_json(args.file)
    kind = detect_kind(obj)
    F = _field(args)
    base = os.path.dirname(args.file)
    if kind == "algebra":
        A = algebra_from_json(obj, F, where=args.file)
        print(f"ok: algebra over {A.field.name}, {A.num_vertices} vertices, dimension {A.dim}")
    elif kind == "complex":
        X = complex_from_json(obj, resolve_algebra(obj, base, F, args.file), where=args.file)
        print(f"ok: complex with array {format_array(X.array())}")
    elif kind == "module":
        M = module_from_json(obj, resolve_algebra(obj, base, F, args.file), where=args.file)
        print(f"ok: module with dimension vector {list(M.dims)}")
    elif kind == "certificate":
        c = certificate_from_json(obj, resolve_algebra(obj, base, F, args.file), base, where=args.file)
        problems = certificate_problems(c)
        if problems:
            print("certificate parses but does not verify: " + "; ".join(problems))
            return NEGATIVE
        print("ok: certificate verifies")
    else:
        print(f"ok: {kind}")
    return OK


def cmd_minimize(args) -> int:
    r = minimize(_load_cx(args, args.complex))
    print(f"# stripped disks: {format_array(r.stripped)}", file=sys.stderr)
    _emit_cx(args, r.complex)
    return OK


def cmd_shift(args) -> int:
    _emit_cx(args, shift(_load_cx(args, args.complex), args.by))
    return OK


def cmd_cone(args) -> int:
    X, Y = _load_pair(args, args.source, args.target)
    f = chain_map_from_json(read_json(args.map), X, Y, where=args.map)
    if f.k != 0 or not f.is_chain_map():
        raise FormatError(args.map, "not a degree-0 chain map")
    _emit_cx(args, cone(f))
    return OK


def cmd_sum(args) -> int:
    X = _load_cx(args, args.complexes[0])
    rest = [_load_pair(args, args.complexes[0], p)[1] for p in args.complexes[1:]]
    _emit_cx(args, direct_sum(X, *rest))
    return OK


def cmd_truncate(args) -> int:
    X = _load_cx(args, args.complex)
    if args.above is not None:
        X = truncate(X, args.above)
    if args.below is not None:
        X = truncate_below(X, args.below)
    _emit_cx(args, X)
    return OK


def cmd_equalize(args) -> int:
    X, Y = _load_pair(args, args.first, args.second)
    try:
        eq = equalize(X, Y)
    except ComplexError as e:
        print(f"cannot equalize: {e}")
        return NEGATIVE
    A = X.algebra
    _emit(args, {"X": complex_to_json(eq.X, _alg_ref(A)), "Y": complex_to_json(eq.Y, _alg_ref(A)),
                 "pad_X": [list(p) for p in eq.pad_x], "pad_Y": [list(p) for p in eq.pad_y]})
    return OK


def cmd_homology(args) -> int:
    X = _load_cx(args, args.complex)
    degs = [args.degree] if args.degree is not None else list(range(X.lo - 1, X.hi + 2)) if X.terms else []
    for i in degs:
        print(f"H_{i}: {list(homology(X, i).dims)}")
    return OK


def cmd_resolve(args) -> int:
    M = load_module(args.module, None, _field(args))
    _emit_cx(args, truncated_resolution(M, args.length))
    return OK


def cmd_homdim(args) -> int:
    X, Y = _load_pair(args, args.source, args.target)
    print(hom_dim(X, Y, args.shift))
    return OK


def _verdict(status: str) -> int:
    return {"yes": OK, "no": NEGATIVE}.get(status, INCONCLUSIVE)


def cmd_iso(args) -> int:
    X, Y = _load_pair(args, args.first, args.second)
    v = is_isomorphic(X, Y, _config(args))
    print(f"{v.status} ({v.method})")
    return _verdict(v.status)


def cmd_rigid(args) -> int:
    X = _load_cx(args, args.complex)
    r = is_rigid(X)
    print("rigid" if r else "not rigid")
    return OK if r else NEGATIVE


def cmd_homorder(args) -> int:
    M, N = _load_pair(args, args.M, args.N)
    tests = _tests(args, M.algebra) or default_tests(M, N, names=("M", "N"))
    res = hom_order_leq(M, N, tests)
    for name, a, b in res.table:
        print(f"{name}: {a} <= {b}" if a <= b else f"{name}: {a} > {b}")
    print("consistent" if res.consistent else f"violated at {res.violation.name}")
    return OK if res.consistent else NEGATIVE


def cmd_tangent(args) -> int:
    X = _load_cx(args, args.complex)
    s, o = tangent_dims(X)
    print(f"scheme tangent: {s}\norbit tangent: {o}\ndifference: {s - o}")
    return OK


def cmd_certify(args) -> int:
    c = load_certificate(args.certificate, None, _field(args))
    problems = certificate_problems(c)
    if problems:
        for p in problems:
            print(f"fails: {p}")
        return NEGATIVE
    print("certificate verifies")
    return OK


def cmd_family(args) -> int:
    c = load_certificate(args.certificate, None, _field(args))
    if not verify_certificate(c):
        print("certificate does not verify")
        return NEGATIVE
    F = c.N.algebra.field
    ts = args.t.split(",") if args.t else [str(t) for t in range(total_dim(c.Z) + 2)]
    cfg = _config(args)
    for t in ts:
        Nt = riedtmann_member(c, F(t))
        if Nt is None:
            print(f"t={t}: not surjective")
            continue
        print(f"t={t}: N_t ≅ N {is_isomorphic(Nt, c.N, cfg).status}, N_t ≅ M {is_isomorphic(Nt, c.M, cfg).status}")
    return OK


def cmd_search(args) -> int:
    M, N = _load_pair(args, args.M, args.N)
    F = M.algebra.field
    zb = _zbound(args, M.algebra.num_vertices)
    if zb is None:
        raise _UsageError("search needs --zbound")
    res = search_witness(M, N, zb, coeffs=_coeffs(args, F), cap=args.cap, config=_config(args))
    print(f"# {res.z_classes} classes of Z, {res.maps_tried} maps tried", file=sys.stderr)
    if not res.found:
        print("no witness within the bound")
        return INCONCLUSIVE
    _emit(args, certificate_to_json(res.certificate, _alg_ref(M.algebra)))
    return OK


def cmd_report(args) -> int:
    M, N = _load_pair(args, args.M, args.N)
    F = M.algebra.field
    cert = load_certificate(args.certificate, M.algebra) if args.certificate else None
    rep = degeneration_report(M, N, _zbound(args, M.algebra.num_vertices), _tests(args, M.algebra), cert,
                              _coeffs(args, F), args.cap, _config(args))
    if args.json:
        _emit(args, report_to_json(rep, _alg_ref(M.algebra)))
    else:
        print("\n".join(rep.lines()))
    return {"isomorphic": OK, "proved_leq": OK, "refuted": NEGATIVE}.get(rep.verdict, INCONCLUSIVE)


# --- examples ---------------------------------------------------------------------------

def _check(out: list, ok: bool, text: str) -> bool:
    out.append(f"[{'ok' if ok else 'FAIL'}] {text}")
    return ok


def example_a2(out: list, seed: int = 0) -> bool:
    """Degeneration of ``P2 -> P1 + P2`` from the split differential to ``(a, 0)``."""
    good = True
    for F, coeffs in ((Field.prime(2), None), (Field.rationals(), (-1, 0, 1))):
        A = corpus.a2(F)
        M, N = corpus.a2_pair(A)
        out.append(f"== A2 over {F.name}")
        out.append("M = " + repr(M) + ", d = (0, e2)")
        out.append("N = " + repr(N) + ", d = (a, 0)")
        for X, Y, k, want in ((N, M, 0, 1), (N, N, 0, 2), (N, N, 1, 1)):
            name = f"hom_dim({'N' if X is N else 'M'},{'N' if Y is N else 'M'},{k})"
            d = hom_dim(X, Y, k)
            good &= _check(out, d == want, f"{name} = {d}")
        mm = minimize(M).complex
        good &= _check(out, is_isomorphic(mm, stalk(A, 1)).status == "yes",
                       f"minimize(M) = {mm!r} is the stalk P1")
        zb = {1: (0, 1), 0: (1, 0)}
        res = search_witness(M, N, zb, coeffs=coeffs, config=SearchConfig(seed=seed))
        good &= _check(out, res.found, f"witness search with Z <= {format_array(zb)}: "
                                        f"{res.z_classes} classes of Z, found {res.found}")
        if not res.found:
            continue
        c = res.certificate
        good &= _check(out, verify_certificate(c), f"certificate with Z = {c.Z!r} verifies")
        good &= _check(out, is_isomorphic(riedtmann_member(c, 0), N).status == "yes", "N_0 ≅ N")
        if not F.is_finite:
            ts = range(1, total_dim(c.Z) + 2)
            hits = [t for t in ts if (Nt := riedtmann_member(c, t)) is not None
                    and is_isomorphic(Nt, M).status == "yes"]
            good &= _check(out, bool(hits), f"N_t ≅ M for t in {hits}")
        ses = extract_module_ses(c)
        good &= _check(out, ses.verify(), f"degree-0 module sequence: {list(ses.N.dims)} -> "
                                           f"{list(ses.M.dims)} + {list(ses.Z.dims)} -> {list(ses.Z.dims)}")
        rep = degeneration_report(M, N, zb, coeffs=coeffs, config=SearchConfig(seed=seed))
        good &= _check(out, rep.verdict == "proved_leq", f"report M <= N: {rep.verdict}")
        rev = degeneration_report(N, M, zb, coeffs=coeffs, config=SearchConfig(seed=seed), names=("N", "M"))
        good &= _check(out, rev.verdict == "refuted", f"report N <= M: {rev.verdict} ({rev.reason})")
    out.append("verdict: proved_leq" if good else "verdict: FAILED")
    return good


def example_twoloop(out: list, seed: int = 0) -> bool:
    good = True
    A = corpus.two_loop()
    U = corpus.two_loop_U(A)
    out.append("U = " + repr(U))
    for k, want in ((1, 0), (2, 1)):
        d = hom_dim(U, U, k)
        good &= _check(out, d == want, f"hom_dim(U,U,{k}) = {d}")
    T, S = corpus.two_loop_T(A), corpus.two_loop_S(A)
    out.append("T = " + repr(T))
    out.append("S = " + repr(S))
    good &= _check(out, T.array() == S.array(), f"same array {format_array(T.array())}")
    v = is_isomorphic(T, S, SearchConfig(seed=seed))
    good &= _check(out, v.status == "no", f"T ≅ S: {v.status}")
    rt, rs = is_rigid(T), is_rigid(S)
    good &= _check(out, rt and rs, f"T rigid: {rt}, S rigid: {rs}")
    Sp = corpus.two_loop_S_min(A)
    ms = minimize(S).complex
    good &= _check(out, is_isomorphic(ms, Sp).status == "yes", f"minimize(S) = {ms!r} ≅ P1 -(b,0)-> P2+P2")
    out.append("verdict: T and S share an array but are not isomorphic" if good else "verdict: FAILED")
    return good


def example_census(out: list, seed: int = 0) -> bool:
    good = True
    for name, build, src, tgt in (("A2", corpus.a2, (2,), (1, 2)), ("two-loop", corpus.two_loop, (1,), (2,)),
                                  ("two-loop", corpus.two_loop, (1, 2), (1, 2))):
        A = build(Field.prime(2))
        fmt = lambda ts: " + ".join(f"P{t}" for t in ts) or "0"
        out.append(f"== {name} over F2: {fmt(src)} -> {fmt(tgt)}")
        c = two_term_census(A, src, tgt)
        out.extend(c.lines())
        good &= _check(out, c.unique, "rigid two-term complexes are pairwise isomorphic")
    return good


EXAMPLES: dict[str, Callable[[list, int], bool]] = {
    "a2-degeneration": example_a2,
    "twoloop-tilting": example_twoloop,
    "census": example_census,
}


def cmd_examples(args) -> int:
    if args.name == "list":
        print("\n".join(EXAMPLES))
        return OK
    out: list[str] = []
    ok = EXAMPLES[args.name](out, args.seed)
    print("\n".join(out))
    return OK if ok else NEGATIVE


# --- parser -----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help='override the field of the algebra ("Q" or "Fp:<p>")')
    common.add_argument("--seed", type=int, default=0, help="seed for randomized steps (default 0)")
    common.add_argument("--jobs", type=int, default=1, help="parallelism cap (work runs sequentially)")
    common.add_argument("--cap", type=int, default=2**24, help="enumeration cap for searches")
    common.add_argument("--zbound", help='bound on Z, e.g. "{1:(0,1), 0:(1,0)}"')
    common.add_argument("--tests", action="append", help="test complex for the hom order (repeatable)")
    common.add_argument("--coeffs", default="-1,0,1", help="coefficient grid for searches over Q")
    common.add_argument("-o", "--output", help="write JSON output to this file")

    p = _Parser(prog="comproj", description="Complexes of projectives and their degenerations.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_, *pos):
        sp = sub.add_parser(name, parents=[common], help=help_)
        for a in pos:
            sp.add_argument(a)
        sp.set_defaults(func=func)
        return sp

    add("validate", cmd_validate, "parse and check a file", "file")
    add("minimize", cmd_minimize, "split off contractible summands", "complex")
    add("shift", cmd_shift, "shift a complex", "complex").add_argument("--by", type=int, default=1)
    add("cone", cmd_cone, "mapping cone of a chain map", "source", "target", "map")
    sp = add("sum", cmd_sum, "direct sum")
    sp.add_argument("complexes", nargs="+")
    sp = add("truncate", cmd_truncate, "naive truncation", "complex")
    sp.add_argument("--above", type=int, help="keep degrees <= this")
    sp.add_argument("--below", type=int, help="keep degrees >= this")
    add("equalize", cmd_equalize, "pad two complexes to a common array", "first", "second")
    add("homology", cmd_homology, "homology dimension vectors", "complex").add_argument("--degree", type=int)
    add("resolve", cmd_resolve, "truncated projective resolution of a module", "module").add_argument(
        "--length", type=int, default=2)
    add("homdim", cmd_homdim, "dim Hom(X, Y[k]) in the homotopy category", "source", "target").add_argument(
        "--shift", type=int, default=0)
    add("iso", cmd_iso, "isomorphism test", "first", "second")
    add("rigid", cmd_rigid, "whether Hom(X, X[1]) = 0", "complex")
    add("homorder", cmd_homorder, "hom order test for M <= N", "M", "N")
    add("tangent", cmd_tangent, "scheme and orbit tangent dimensions", "complex")
    add("certify", cmd_certify, "verify a degeneration certificate", "certificate")
    add("family", cmd_family, "one-parameter family of a certificate", "certificate").add_argument(
        "--t", help="comma-separated parameter values")
    add("search", cmd_search, "search for a certificate of M <= N", "M", "N")
    sp = add("report", cmd_report, "combined degeneration report for M <= N", "M", "N")
    sp.add_argument("--certificate")
    sp.add_argument("--json", action="store_true")
    add("examples", cmd_examples, "built-in worked examples").add_argument(
        "name", choices=sorted(EXAMPLES) + ["list"])
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE
    except FormatError as e:
        print(f"format error: {e}", file=sys.stderr)
        return USAGE
    except (AlgebraError, ComplexError, ModuleError, DegenError, CensusError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE
    except SystemExit as e:  # --help
        return int(e.code or 0)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
