import io
import subprocess
import sys

import pytest

import tworoot.cli as cli
from tworoot.claims import ANCHORS, CLAIMS, Claim
from tworoot.search import Verdict

C12_IV = "0,1,1,0,1,1,0,1,1,2,1,1"


def call(*argv):
    buf = io.StringIO()
    code = cli.run(list(argv), buf)
    return code, buf.getvalue()


def records(text):
    out = []
    for line in text.splitlines():
        fields = {}
        for tok in line.split(" "):
            if "=" in tok:
                k, v = tok.split("=", 1)
                fields[k] = v
            else:  # continuation of a quoted value
                fields[k] += " " + tok
        out.append({k: v.strip('"') for k, v in fields.items()})
    return out


def test_classify_outlier_iv():
    code, text = call("classify", "--format", "records", "--group", "12", "--char", C12_IV)
    assert code == 0
    (rec,) = records(text)
    assert rec["tag"] == "OutlierIV" and rec["indices"] == "0,3,6,9"


def test_classify_not_two_root_is_not_a_failure():
    code, text = call("classify", "--format", "records", "--group", "7", "--char", "3,0,0,0,0,0,0")
    assert code == 0 and records(text)[0]["tag"] == "NotTwoRoot"


def test_sumenum_weight4_is_empty():
    code, text = call("sumenum", "--format", "records", "--weight", "4", "--order-bound", "60")
    assert code == 0
    assert records(text) == [{"weight": "4", "order_bound": "60", "classes": "0"}]


def test_sumenum_weight6_single_class():
    code, text = call("sumenum", "--format", "records", "--weight", "6", "--order-bound", "30")
    recs = records(text)
    assert code == 0 and recs[-1]["classes"] == "1" and len(recs) == 2


def test_sumdecomp():
    code, text = call("sumdecomp", "--format", "records", "--terms", "E(3),E(3)^2,1,-1,1")
    assert code == 0
    assert [r["cycle"] for r in records(text)] == ["2", "3"]
    code, text = call("sumdecomp", "--terms", "E(3),1")
    assert code == 0 and "not vanishing" in text


def test_primegraph():
    code, text = call("primegraph", "--format", "records", "--spectrum", "1,2,3,5,15")
    assert code == 0 and records(text)[0]["components"] == "{2} {3,5}"
    code, text = call("primegraph", "--format", "records", "--table", "dihedral30", "--degree", "16")
    assert code == 0
    rec = records(text)[1]
    assert rec["labels"] == "5:+1" and rec["theorem15"] == "true"
    code, _ = call("primegraph", "--spectrum", "1,2,5,7", "--degree", "10")
    assert code == 1  # 7 gets no label


def test_table_subcommands():
    assert call("table", "check", "dihedral30")[0] == 0
    code, text = call("table", "genchar", "--format", "records", "dihedral30", "--fun", "example")
    assert code == 0 and records(text)[0]["generalized"] == "true"
    assert call("table", "tworoot", "sl23", "--fun", "perm8_constituent")[0] == 0


def test_table_check_reports_invalid_file(tmp_path):
    p = tmp_path / "bad.tbl"
    p.write_text("group G\norder 2\nclasses 1\nclass 0 size 1 elemorder 1 inverse 0\nirr 0: 1\n")
    assert call("table", "check", str(p))[0] == 1


@pytest.mark.parametrize("argv", [
    ("bogus",),
    ("classify", "--group", "12", "--char", "1,2"),
    ("classify", "--group", "x", "--char", "1"),
    ("search", "--group", "25"),
    ("sumenum", "--weight", "4", "--order-bound", "61"),
    ("sumdecomp", "--terms", "2"),
    ("table", "check", "no-such-table"),
    ("primegraph",),
])
def test_usage_errors_exit_2(argv):
    assert call(*argv)[0] == 2


def test_search_is_independent_of_jobs():
    a = call("search", "--format", "records", "--group", "2x6", "--jobs", "1")
    b = call("search", "--format", "records", "--group", "2x6", "--jobs", "3")
    assert a == b and a[0] == 0
    assert len(records(a[1])) > 100


def test_table_format_aligns_columns():
    _, text = call("sumenum", "--weight", "4", "--order-bound", "60")
    head, row = text.splitlines()
    assert head.split() == ["weight", "order_bound", "classes"]
    assert head.index("classes") == row.rindex("0")


def test_verify_paper_list_covers_every_anchor():
    code, text = call("verify-paper", "--list", "--format", "records")
    assert code == 0
    recs = records(text)
    assert [r["claim"] for r in recs] == [c.id for c in CLAIMS]
    assert len({r["claim"] for r in recs}) == len(recs)
    seen = {a for r in recs for a in r["anchor"].split("; ")}
    assert seen == set(ANCHORS)


def _fake_claims(ok):
    return (
        Claim("a", "Lemma 8", lambda cfg: Verdict("a", True, ["fine"])),
        Claim("b", "Lemma 9", lambda cfg: Verdict("b", ok, ["checked=3"])),
    )


@pytest.mark.parametrize("ok,code", [(True, 0), (False, 1)])
def test_verify_paper_exit_code(monkeypatch, tmp_path, ok, code):
    monkeypatch.setattr(cli, "CLAIMS", _fake_claims(ok))
    got, text = call("verify-paper", "--format", "records", "--details", str(tmp_path))
    assert got == code
    recs = records(text)
    assert [r["status"] for r in recs] == ["pass", "pass" if ok else "fail"]
    assert (tmp_path / "b.txt").read_text() == "checked=3\n"


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "tworoot", "sumenum", "--weight", "2", "--order-bound", "4"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "classes" in r.stdout
