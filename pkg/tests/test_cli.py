import json
import os

import pytest

from comproj.cli import run

DATA = os.path.join(os.path.dirname(__file__), os.pardir, "demos", "data")
ZB = "{1:(0,1), 0:(1,0)}"


def d(name):
    return os.path.join(DATA, name)


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_validate_all_data_files(capsys):
    for name in sorted(os.listdir(DATA)):
        code, out, _ = call(capsys, "validate", d(name))
        assert code == 0 and out.startswith("ok"), name


def test_homdim_on_stalk(capsys):
    # Hom(P1, P1[1]) vanishes for a stalk
    assert call(capsys, "homdim", d("a2_P1.cx.json"), d("a2_P1.cx.json"), "--shift", "1")[1] == "0\n"
    assert call(capsys, "homdim", d("a2_P1.cx.json"), d("a2_P1.cx.json"))[1] == "1\n"


@pytest.mark.parametrize("src, tgt, k, want", [
    ("a2_M.cx.json", "a2_M.cx.json", 0, 1),
    ("a2_N.cx.json", "a2_N.cx.json", 0, 2),
    ("a2_N.cx.json", "a2_N.cx.json", 1, 1),
    ("twoloop_U.cx.json", "twoloop_U.cx.json", 1, 0),
])
def test_homdim_values(capsys, src, tgt, k, want):
    assert call(capsys, "homdim", d(src), d(tgt), "--shift", str(k))[1].strip() == str(want)


def test_iso_and_rigid_exit_codes(capsys):
    # isomorphism of complexes, so the split disk of M matters
    assert call(capsys, "iso", d("a2_M.cx.json"), d("a2_P1.cx.json"))[0] == 1
    assert call(capsys, "iso", d("a2_M.cx.json"), d("a2_M.cx.json"))[0] == 0
    assert call(capsys, "iso", d("a2_M.cx.json"), d("a2_N.cx.json"))[0] == 1
    assert call(capsys, "rigid", d("a2_M.cx.json"))[0] == 0
    assert call(capsys, "rigid", d("a2_N.cx.json"))[0] == 1
    assert call(capsys, "rigid", d("twoloop_T.cx.json"))[0] == 0


def test_homorder(capsys):
    code, out, _ = call(capsys, "homorder", d("a2_M.cx.json"), d("a2_N.cx.json"))
    assert code == 0 and out.strip().endswith("consistent")
    code, out, _ = call(capsys, "homorder", d("a2_N.cx.json"), d("a2_M.cx.json"))
    assert code == 1 and "violated" in out


def test_search_then_certify(capsys, tmp_path):
    cert = tmp_path / "c.json"
    code, _, _ = call(capsys, "search", d("a2_M.cx.json"), d("a2_N.cx.json"), "--zbound", ZB, "-o", str(cert))
    assert code == 0
    obj = json.loads(cert.read_text())
    assert obj["inj"] and obj["surj"]
    assert call(capsys, "certify", str(cert))[0] == 0
    assert call(capsys, "validate", str(cert))[0] == 0


def test_search_exhausted_is_inconclusive(capsys):
    code, out, _ = call(capsys, "search", d("a2_M.cx.json"), d("a2_N.cx.json"), "--zbound", "{}")
    assert code == 3 and "no witness" in out


def test_search_requires_zbound(capsys):
    assert call(capsys, "search", d("a2_M.cx.json"), d("a2_N.cx.json"))[0] == 2


def test_certify_shipped_certificate(capsys):
    assert call(capsys, "certify", d("a2_M_le_N.cert.json"))[0] == 0
    # the stored maps are over F_2; read over Q the composite is not zero
    assert call(capsys, "certify", d("a2_M_le_N.cert.json"), "--field", "Q")[0] == 1


def test_report(capsys):
    code, out, _ = call(capsys, "report", d("a2_M.cx.json"), d("a2_N.cx.json"), "--zbound", ZB)
    assert code == 0 and "verdict: proved_leq" in out
    code, out, _ = call(capsys, "report", d("a2_N.cx.json"), d("a2_M.cx.json"))
    assert code == 1 and "2 > 1" in out
    code, out, _ = call(capsys, "report", d("a2_M.cx.json"), d("a2_N.cx.json"), "--json")
    # without a bound on Z nothing is searched
    assert (code, json.loads(out)["verdict"]) == (3, "unknown")


def test_family(capsys):
    code, out, _ = call(capsys, "family", d("a2_M_le_N.cert.json"), "--t", "0,1")
    assert code == 0
    lines = out.splitlines()
    assert "N_t ≅ N yes" in lines[0] and "N_t ≅ M yes" in lines[1]


def test_transformations_round_trip(capsys, tmp_path):
    m = tmp_path / "m.json"
    assert call(capsys, "minimize", d("twoloop_S.cx.json"), "-o", str(m))[0] == 0
    s = tmp_path / "s.json"
    assert call(capsys, "shift", str(m), "--by", "2", "-o", str(s))[0] == 0
    assert call(capsys, "shift", str(s), "--by", "-2", "-o", str(tmp_path / "b.json"))[0] == 0
    assert call(capsys, "iso", str(tmp_path / "b.json"), str(m))[0] == 0
    code, out, _ = call(capsys, "homology", d("a2_M.cx.json"), "--degree", "0")
    assert (code, out) == (0, "H_0: [1, 1]\n")
    assert call(capsys, "sum", d("a2_P1.cx.json"), d("a2_Z.cx.json"))[0] == 0
    assert call(capsys, "truncate", d("twoloop_T.cx.json"), "--above", "1")[0] == 0
    assert call(capsys, "equalize", d("a2_P1.cx.json"), d("a2_M.cx.json"))[0] == 0
    code, out, _ = call(capsys, "tangent", d("a2_N.cx.json"))
    assert "difference: 1" in out
    code, out, _ = call(capsys, "resolve", d("a2_simples.mod.json"), "--length", "2")
    assert code == 0 and json.loads(out)["degrees"]


def test_mismatched_algebras_are_rejected(capsys):
    code, _, err = call(capsys, "iso", d("a2_M.cx.json"), d("twoloop_T.cx.json"))
    assert code == 2 and "algebra" in err


def test_format_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"degrees": {"1": [0, 1, 0]}, "algebra": "%s"}' % os.path.abspath(d("a2.alg.json")))
    code, _, err = call(capsys, "validate", str(bad))
    assert code == 2 and "degrees[1]" in err
    bad.write_text("{")
    assert call(capsys, "validate", str(bad))[0] == 2
    assert call(capsys, "validate", str(tmp_path / "missing.json"))[0] == 2


def test_usage_errors(capsys):
    assert call(capsys, "frobnicate")[0] == 2
    assert call(capsys, "homdim", d("a2_M.cx.json"))[0] == 2
    assert call(capsys, "homdim", d("a2_M.cx.json"), d("a2_M.cx.json"), "--shift", "x")[0] == 2
    assert call(capsys, "iso", d("a2_M.cx.json"), d("a2_M.cx.json"), "--field", "Fp:4")[0] == 2
    assert call(capsys, "--help")[0] == 0


@pytest.mark.parametrize("name", ["a2-degeneration", "census", "twoloop-tilting"])
def test_examples_are_stable(capsys, name):
    code, first, _ = call(capsys, "examples", name)
    assert code == 0 and "[FAIL]" not in first
    assert call(capsys, "examples", name)[1] == first


def test_example_a2_mentions_key_facts(capsys):
    out = call(capsys, "examples", "a2-degeneration")[1]
    assert "refuted (hom order violated at U = N: 2 > 1)" in out
    assert "verdict: proved_leq" in out
