"""JSON file formats for algebras, modules, complexes, chain maps and certificates.

Algebra elements are written as lists of terms ``{"coeff": c, "path": [...]}``
where ``path`` lists arrow names in composition order and ``[]`` denotes the
trivial path.  Coefficients are integers, ``"a/b"`` strings (over Q) or
residues (over F_p).
"""
from __future__ import annotations

import json
import os
import re
from typing import Any, Mapping

from .algebra import AlgebraError, PathAlgebra, Quiver, build_algebra
from .amod import Module, ModuleError
from .complexes import ChainMap, ComplexError, ProjComplex, clean_array, types_of
from .degen import DegenerationCertificate, DegenReport
from .exactlin import Field, Mat
from .projmaps import HomMatrix


class FormatError(ValueError):
    """Ill-formed input; ``where`` names the offending field."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


def _need(obj: Mapping, key: str, where: str):
    if not isinstance(obj, Mapping):
        raise FormatError(where, "expected an object")
    if key not in obj:
        raise FormatError(where, f"missing field {key!r}")
    return obj[key]


def _int(x, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        if isinstance(x, str) and re.fullmatch(r"-?\d+", x.strip()):
            return int(x)
        raise FormatError(where, f"expected an integer, got {x!r}")
    return x


def _coeff(F: Field, x, where: str):
    try:
        if isinstance(x, bool):
            raise TypeError
        return F(x)
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise FormatError(where, f"bad coefficient {x!r} ({e})") from None


# --- algebras -----------------------------------------------------------------------

def algebra_to_json(A: PathAlgebra) -> dict:
    F = A.field
    return {
        "field": F.name,
        "vertices": A.num_vertices,
        "arrows": [{"name": a.name, "from": a.source, "to": a.target} for a in A.quiver.arrows],
        "relations": [[{"coeff": F.format(c), "path": list(w)} for c, w in terms]
                      for _, terms in A.relations],
        "max_path_len": A.max_path_len,
    }


def algebra_from_json(obj: Mapping, field: Field | None = None, where: str = "algebra") -> PathAlgebra:
    try:
        F = field if field is not None else Field.parse(str(_need(obj, "field", where)))
    except ValueError as e:
        raise FormatError(f"{where}.field", str(e)) from None
    n = _int(_need(obj, "vertices", where), f"{where}.vertices")
    arrows = []
    for k, a in enumerate(_need(obj, "arrows", where)):
        w = f"{where}.arrows[{k}]"
        arrows.append((str(_need(a, "name", w)), _int(_need(a, "from", w), f"{w}.from"),
                       _int(_need(a, "to", w), f"{w}.to")))
    rels = []
    for k, rel in enumerate(obj.get("relations", [])):
        terms = []
        for m, t in enumerate(rel):
            w = f"{where}.relations[{k}][{m}]"
            path = _need(t, "path", w)
            if not isinstance(path, list):
                raise FormatError(f"{w}.path", "expected a list of arrow names")
            terms.append((_coeff(F, t.get("coeff", 1), f"{w}.coeff"), [str(x) for x in path]))
        rels.append(terms)
    L = _int(_need(obj, "max_path_len", where), f"{where}.max_path_len")
    try:
        quiver = Quiver.from_triples(n, arrows)
        names = {a.name for a in quiver.arrows}
        for k, rel in enumerate(rels):
            for _, w in rel:
                bad = [x for x in w if x not in names]
                if bad:
                    raise FormatError(f"{where}.relations[{k}]", f"unknown arrow {bad[0]!r}")
        return build_algebra(quiver, rels, L, F)
    except AlgebraError as e:
        raise FormatError(where, str(e)) from None


# --- algebra elements and matrices ---------------------------------------------------

def elem_to_json(A: PathAlgebra, target: int, source: int, coeffs) -> list:
    F = A.field
    return [{"coeff": F.format(c), "path": list(p.arrows)}
            for c, p in zip(coeffs, A.hom_paths(target, source)) if c != 0]


def elem_from_json(A: PathAlgebra, target: int, source: int, obj, where: str) -> tuple:
    """Coordinates in ``e_target A e_source`` of a list of path terms."""
    F = A.field
    if obj == 0 or obj == []:
        return (F.zero,) * A.hom_dim(target, source)
    if not isinstance(obj, list):
        raise FormatError(where, "expected a list of {coeff, path} terms")
    out = [F.zero] * A.hom_dim(target, source)
    for k, t in enumerate(obj):
        w = f"{where}[{k}]"
        c = _coeff(F, t.get("coeff", 1) if isinstance(t, Mapping) else None, f"{w}.coeff")
        path = _need(t, "path", w)
        if not isinstance(path, list):
            raise FormatError(f"{w}.path", "expected a list of arrow names")
        path = tuple(str(x) for x in path)
        if not path:
            if target != source:
                raise FormatError(w, f"trivial path used in e_{target} A e_{source}")
            out[0] = F.add(out[0], c)
            continue
        try:
            arrows = [A.quiver.arrow(x) for x in path]
        except AlgebraError as e:
            raise FormatError(f"{w}.path", str(e)) from None
        if arrows[0].target != target or arrows[-1].source != source or any(
                r.target != l.source for l, r in zip(arrows, arrows[1:])):
            raise FormatError(f"{w}.path", f"{list(path)} is not a path from {source} to {target}")
        for idx, x in A.reduce_word(target, source, path).items():
            out[idx] = F.add(out[idx], F.mul(c, x))
    return tuple(out)


def matrix_to_json(m: HomMatrix) -> list:
    return [[elem_to_json(m.algebra, m.src[c], m.tgt[r], m.entries[r][c]) for c in range(len(m.src))]
            for r in range(len(m.tgt))]


def matrix_from_json(A: PathAlgebra, src, tgt, obj, where: str) -> HomMatrix:
    if not isinstance(obj, list) or len(obj) != len(tgt):
        raise FormatError(where, f"expected {len(tgt)} rows")
    rows = []
    for r, row in enumerate(obj):
        if not isinstance(row, list) or len(row) != len(src):
            raise FormatError(f"{where}[{r}]", f"expected {len(src)} entries")
        rows.append([elem_from_json(A, src[c], tgt[r], e, f"{where}[{r}][{c}]") for c, e in enumerate(row)])
    return HomMatrix(A, src, tgt, rows)


# --- complexes -------------------------------------------------------------------------

def _is_canonical(types) -> bool:
    return list(types) == sorted(types)


def complex_to_json(X: ProjComplex, algebra_ref: Any | None = None) -> dict:
    """``algebra_ref`` (a path or inline object) is written when given."""
    out: dict = {}
    if algebra_ref is not None:
        out["algebra"] = algebra_ref
    out["degrees"] = {str(i): list(v) for i, v in sorted(X.array().items(), reverse=True)}
    if any(not _is_canonical(t) for t in X.terms.values()):
        out["summands"] = {str(i): list(t) for i, t in sorted(X.terms.items(), reverse=True)}
    out["differentials"] = {str(i): matrix_to_json(m) for i, m in sorted(X.diffs.items(), reverse=True)
                            if not m.is_zero()}
    return out


def complex_from_json(obj: Mapping, A: PathAlgebra, where: str = "complex") -> ProjComplex:
    l = A.num_vertices
    degs = _need(obj, "degrees", where)
    if not isinstance(degs, Mapping):
        raise FormatError(f"{where}.degrees", "expected an object degree -> multiplicities")
    arr = {}
    for k, v in degs.items():
        w = f"{where}.degrees[{k}]"
        if not isinstance(v, list) or len(v) != l:
            raise FormatError(w, f"expected {l} multiplicities")
        arr[_int(k, w)] = [_int(x, w) for x in v]
    try:
        arr = clean_array(arr)
    except ComplexError as e:
        raise FormatError(f"{where}.degrees", str(e)) from None
    terms = {i: types_of(v) for i, v in arr.items()}
    if "summands" in obj:
        for k, t in obj["summands"].items():
            w = f"{where}.summands[{k}]"
            i = _int(k, w)
            t = tuple(_int(x, w) for x in t)
            if sorted(t) != list(terms.get(i, ())):
                raise FormatError(w, "summand list does not match the multiplicities")
            if t:
                terms[i] = t
    diffs = {}
    for k, m in obj.get("differentials", {}).items():
        w = f"{where}.differentials[{k}]"
        i = _int(k, w)
        diffs[i] = matrix_from_json(A, terms.get(i, ()), terms.get(i - 1, ()), m, w)
    try:
        return ProjComplex(A, terms, diffs)
    except ComplexError as e:
        raise FormatError(where, str(e)) from None


def chain_map_to_json(f: ChainMap) -> dict:
    return {"k": f.k, "components": {str(i): matrix_to_json(m) for i, m in sorted(f.comps.items(), reverse=True)
                                     if not m.is_zero()}}


def chain_map_from_json(obj: Mapping, X: ProjComplex, Y: ProjComplex, where: str = "map") -> ChainMap:
    k = _int(obj.get("k", 0), f"{where}.k")
    comps = {}
    for key, m in obj.get("components", {}).items():
        w = f"{where}.components[{key}]"
        i = _int(key, w)
        comps[i] = matrix_from_json(X.algebra, X.term(i), Y.term(i - k), m, w)
    return ChainMap(X, Y, k, comps)


# --- modules -----------------------------------------------------------------------------

def module_to_json(M: Module, algebra_ref: Any | None = None) -> dict:
    F = M.algebra.field
    out: dict = {}
    if algebra_ref is not None:
        out["algebra"] = algebra_ref
    out["dim_vector"] = list(M.dims)
    out["arrows"] = {name: [[F.format(x) for x in row] for row in m.rows] for name, m in M.maps.items()}
    return out


def module_from_json(obj: Mapping, A: PathAlgebra, where: str = "module") -> Module:
    F = A.field
    dims = _need(obj, "dim_vector", where)
    if not isinstance(dims, list) or len(dims) != A.num_vertices:
        raise FormatError(f"{where}.dim_vector", f"expected {A.num_vertices} entries")
    dims = [_int(x, f"{where}.dim_vector") for x in dims]
    maps = {}
    for name, rows in obj.get("arrows", {}).items():
        w = f"{where}.arrows[{name}]"
        try:
            a = A.quiver.arrow(name)
        except AlgebraError as e:
            raise FormatError(w, str(e)) from None
        nr, nc = dims[a.target - 1], dims[a.source - 1]
        if not isinstance(rows, list) or len(rows) != nr or any(not isinstance(r, list) or len(r) != nc for r in rows):
            raise FormatError(w, f"expected a {nr}x{nc} matrix")
        maps[name] = Mat(F, nr, nc, tuple(tuple(_coeff(F, x, w) for x in r) for r in rows))
    try:
        return Module(A, dims, maps)
    except ModuleError as e:
        raise FormatError(where, str(e)) from None


# --- certificates and reports ---------------------------------------------------------

def certificate_to_json(c: DegenerationCertificate, algebra_ref: Any | None = None) -> dict:
    out: dict = {}
    if algebra_ref is not None:
        out["algebra"] = algebra_ref
    out["N"] = complex_to_json(c.N)
    out["M"] = complex_to_json(c.M)
    out["Z"] = complex_to_json(c.Z)
    out["inj"] = chain_map_to_json(c.inj)["components"]
    out["surj"] = chain_map_to_json(c.surj)["components"]
    return out


def certificate_from_json(obj: Mapping, A: PathAlgebra, base_dir: str = ".",
                          where: str = "certificate") -> DegenerationCertificate:
    from .complexes import direct_sum

    parts = {}
    for key in ("N", "M", "Z"):
        ref = _need(obj, key, where)
        if isinstance(ref, str):
            parts[key] = load_complex(os.path.join(base_dir, ref), A)
        else:
            parts[key] = complex_from_json(ref, A, f"{where}.{key}")
    N, M, Z = parts["N"], parts["M"], parts["Z"]
    mid = direct_sum(Z, M)
    inj = chain_map_from_json({"components": obj.get("inj", {})}, N, mid, f"{where}.inj")
    surj = chain_map_from_json({"components": obj.get("surj", {})}, mid, Z, f"{where}.surj")
    return DegenerationCertificate(N, M, Z, inj, surj)


def report_to_json(rep: DegenReport, algebra_ref: Any | None = None) -> dict:
    out = {
        "verdict": rep.verdict,
        "reason": rep.reason,
        "k0": {"M": list(rep.k0_M), "N": list(rep.k0_N)},
        "padding": {"M": [list(p) for p in rep.padding_M], "N": [list(p) for p in rep.padding_N]},
        "evidence": list(rep.evidence),
    }
    if rep.hom_order is not None:
        ho = rep.hom_order
        out["hom_order"] = {
            "consistent": ho.consistent,
            "tests": [t.name for t in ho.tests],
            "table": [{"U": name, "hom_U_M": a, "hom_U_N": b} for name, a, b in ho.table],
        }
        if not ho.consistent:
            out["hom_order"]["violation"] = {"U": ho.violation.name, "hom_U_M": ho.dims[0], "hom_U_N": ho.dims[1]}
    if rep.certificate is not None:
        out["certificate"] = certificate_to_json(rep.certificate, algebra_ref)
    return out


# --- files ------------------------------------------------------------------------------

_ALGEBRA_CACHE: dict[tuple, PathAlgebra] = {}


def read_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise FormatError(path, f"cannot read file ({e.strerror})") from None
    except json.JSONDecodeError as e:
        raise FormatError(path, f"invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}") from None


def dump_json(obj: Any, width: int = 88, _indent: int = 0) -> str:
    """JSON with nested containers kept on one line when they fit in ``width``."""
    flat = json.dumps(obj, ensure_ascii=False)
    if not isinstance(obj, (dict, list)) or len(flat) + _indent <= width or not obj:
        return flat
    pad = " " * (_indent + 2)
    if isinstance(obj, dict):
        items = [f"{pad}{json.dumps(str(k))}: {dump_json(v, width, _indent + 2)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + " " * _indent + "}"
    items = [pad + dump_json(v, width, _indent + 2) for v in obj]
    return "[\n" + ",\n".join(items) + "\n" + " " * _indent + "]"


def load_algebra(path: str, field: Field | None = None) -> PathAlgebra:
    """Load (and cache) an algebra file so that repeated loads give the same object."""
    key = (os.path.realpath(path), field.name if field else None)
    A = _ALGEBRA_CACHE.get(key)
    if A is None:
        A = algebra_from_json(read_json(path), field, where=path)
        _ALGEBRA_CACHE[key] = A
    return A


def resolve_algebra(obj: Mapping, base_dir: str, field: Field | None = None, where: str = "") -> PathAlgebra:
    ref = _need(obj, "algebra", where or "file")
    if isinstance(ref, str):
        return load_algebra(os.path.join(base_dir, ref), field)
    key = (json.dumps(ref, sort_keys=True), field.name if field else None)
    A = _ALGEBRA_CACHE.get(key)
    if A is None:
        A = algebra_from_json(ref, field, where=f"{where}.algebra")
        _ALGEBRA_CACHE[key] = A
    return A


def load_complex(path: str, A: PathAlgebra | None = None, field: Field | None = None) -> ProjComplex:
    obj = read_json(path)
    if A is None:
        A = resolve_algebra(obj, os.path.dirname(path), field, path)
    return complex_from_json(obj, A, where=path)


def load_module(path: str, A: PathAlgebra | None = None, field: Field | None = None) -> Module:
    obj = read_json(path)
    if A is None:
        A = resolve_algebra(obj, os.path.dirname(path), field, path)
    return module_from_json(obj, A, where=path)


def load_certificate(path: str, A: PathAlgebra | None = None, field: Field | None = None) -> DegenerationCertificate:
    obj = read_json(path)
    if A is None:
        A = resolve_algebra(obj, os.path.dirname(path), field, path)
    return certificate_from_json(obj, A, os.path.dirname(path), where=path)


def detect_kind(obj: Mapping) -> str:
    if not isinstance(obj, Mapping):
        raise FormatError("file", "expected a JSON object")
    if "verdict" in obj:
        return "report"
    if "inj" in obj or "surj" in obj:
        return "certificate"
    if "dim_vector" in obj:
        return "module"
    if "degrees" in obj:
        return "complex"
    if "arrows" in obj and "vertices" in obj:
        return "algebra"
    raise FormatError("file", "cannot tell which kind of object this is")


# --- dimension arrays on the command line --------------------------------------------

def parse_array(text: str, l: int) -> dict:
    """Parse ``{1:(0,1), 0:(1,0)}`` or the JSON form ``{"1": [0,1], "0": [1,0]}``."""
    text = text.strip()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError:
        obj = None
    if obj is None:
        body = text.strip("{} ")
        obj = {}
        if body:
            for m in re.finditer(r"(-?\d+)\s*:\s*\(([^)]*)\)", body):
                obj[m.group(1)] = [int(x) for x in m.group(2).split(",") if x.strip()]
            if not obj:
                raise FormatError("array", f"cannot parse {text!r}")
    if not isinstance(obj, Mapping):
        raise FormatError("array", "expected a map degree -> multiplicities")
    out = {}
    for k, v in obj.items():
        if not isinstance(v, list) or len(v) != l:
            raise FormatError(f"array[{k}]", f"expected {l} multiplicities")
        out[_int(k, f"array[{k}]")] = [_int(x, f"array[{k}]") for x in v]
    try:
        return clean_array(out)
    except ComplexError as e:
        raise FormatError("array", str(e)) from None
