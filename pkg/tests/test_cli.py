import io
import json

import pytest

from hypident.cli import main
from hypident.dsl.corpus import CORPUS


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_verify_ggr_json():
    code, out, _ = run("verify", "--identity", "ggr", "--order", "8", "--samples", "5", "--seed", "42",
                       "--format", "json")
    assert code == 0
    doc = json.loads(out)
    reports = doc["reports"]
    assert doc["verdict"] == "pass"
    assert len(reports) == 5 and all(r["verdict"] == "pass" and r["seed"] == 42 for r in reports)


def test_list():
    code, out, _ = run("list")
    assert code == 0 and "ggrq2" in out and "andrews" in out
    code, out, _ = run("list", "--format", "json")
    assert {e["id"] for e in json.loads(out)} >= {"ggr", "1psi1", "bailey"}


def test_formal_only_numeric_is_usage_error():
    code, _, err = run("verify", "--identity", "ggrq", "--numeric")
    assert code == 2 and ("ModeViolation" in err or "formal-only" in err)


def test_unknown_identity():
    assert run("verify", "--identity", "nope")[0] == 2


def test_bad_arguments():
    assert run("verify")[0] == 2
    assert run("frobnicate")[0] == 2
    assert run("verify", "--identity", "vand", "--param", "a")[0] == 2


def test_numeric_point():
    code, out, _ = run("verify", "--identity", "1psi1", "--numeric", "--param", "a=3/2,b=1/2,q=1/2",
                       "--point", "z=2/5")
    assert code == 0 and "PASS" in out


def test_numeric_out_of_domain():
    code, _, _ = run("verify", "--identity", "1psi1", "--numeric", "--param", "a=3/2,b=1/2,q=1/2",
                     "--point", "z=1/10")
    assert code == 2


def test_expected_fail_exits_zero():
    code, out, _ = run("verify", "--identity", "ggrq2", "--numeric", "--samples", "2", "--seed", "7")
    assert code == 0 and "EXPECTED-FAIL-CONFIRMED" in out


def test_failing_document_exits_one(tmp_path):
    doc = tmp_path / "bad.hyp"
    doc.write_text("param a = 1/3\nparam q = 1/2\nvar z\nmode formal 4\n"
                   "sum(l, 0, auto, qpoch(a, l)/qpoch(q, l)*z^(l + 1)) == qprodinf(a*z)/qprodinf(z)\n")
    code, out, _ = run("verify", "--file", str(doc))
    assert code == 1 and "mismatch" in out


def test_document_file(tmp_path):
    doc = tmp_path / "vand.hyp"
    doc.write_text(CORPUS["vand"].text)
    assert run("verify", "--file", str(doc), "--format", "json")[0] == 0
    doc.write_text("param a = 1\npochhammer(a) == 1\n")
    code, _, err = run("verify", "--file", str(doc))
    assert code == 2 and "line 2" in err


def test_pole_in_document_is_infrastructure(tmp_path):
    doc = tmp_path / "pole.hyp"
    doc.write_text("param b = 0\n1 == 1/b\n")
    assert run("verify", "--file", str(doc))[0] == 3


def test_expand():
    code, out, _ = run("expand", "--identity", "qbin", "--side", "rhs", "--param", "a=1/3,q=1/2", "--order", "2")
    assert code == 0 and out.strip().startswith("1/1 + ")


def test_replay():
    code, out, _ = run("replay", "--variant", "ggr1", "--xyz", "1,1,1", "--param", "alpha=1/3,beta=2/7,gamma=5/4")
    assert code == 0 and "closed form" in out


def test_qlimit():
    code, out, _ = run("qlimit", "--xyz", "1,0,0", "--param", "alpha=1,beta=2,gamma=3")
    assert code == 0


def test_config_file(tmp_path):
    cfg = tmp_path / "hypident.cfg"
    cfg.write_text("# defaults\nsamples = 2\nformat = json\nseed = 3\n")
    code, out, _ = run("--config", str(cfg), "verify", "--identity", "vand")
    assert code == 0 and len(json.loads(out)["reports"]) == 2
    cfg.write_text("colour = blue\n")
    assert run("--config", str(cfg), "list")[0] == 2
