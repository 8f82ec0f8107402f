import io
import os
import subprocess
import sys

import pytest

from conftest import DATA, GOLDEN
from torsors.cli import run
from torsors.report import Report, fmt
from torsors.twisting import TwistReport


def cli(*args):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in args], out, err)
    return code, out.getvalue(), err.getvalue()


GOLDEN_CASES = [
    ("h1_z2_s3.txt", 0, ["h1", "--gamma", DATA / "z2.grp", "--group", DATA / "s3.grp",
                         "--action", "trivial"]),
    ("h1_z2_z3_inversion.txt", 0, ["h1", "--gamma", DATA / "z2.grp", "--group", DATA / "z3.grp",
                                   "--action", DATA / "z2_inverts_z3.act"]),
    ("selftwist_s3.txt", 0, ["selftwist", "--gamma", DATA / "s3.grp", "--group", DATA / "s3.grp"]),
    ("specialize_transposition.machine", 0,
     ["specialize", "--cover", DATA / "s3_sign.cover", "--target", DATA / "target_transposition.coc",
      "--format", "machine"]),
    ("specialize_trivial.txt", 3,
     ["specialize", "--cover", DATA / "s3_sign.cover", "--target", DATA / "target_trivial.coc",
      "--up-to-conjugacy"]),
    ("twist_conjugation.txt", 0,
     ["twist", "--cocycle", DATA / "target_transposition.coc", "--object", "conjugation"]),
    ("isom_trivial_transposition.txt", 0,
     ["isom", "--first", DATA / "target_trivial.coc", "--second", DATA / "target_transposition.coc"]),
    ("nongalois_s3.txt", 0,
     ["nongalois", "--cover", DATA / "s3_sign.cover", "--sn", DATA / "s3.grp",
      "--nu", DATA / "s3_identity.hom", "--target", DATA / "target_transposition.coc"]),
    ("verify_selftwist.txt", 0, ["verify", "--suite", "selftwist"]),
]


@pytest.mark.parametrize("golden,code,args", GOLDEN_CASES, ids=[c[0] for c in GOLDEN_CASES])
def test_golden_output(golden, code, args):
    got_code, out, err = cli(*args)
    assert got_code == code, err
    assert out == (GOLDEN / golden).read_text(encoding="utf-8")


def test_h1_example_fields():
    _, out, _ = cli("h1", "--gamma", DATA / "z2.grp", "--group", DATA / "s3.grp")
    classes = [line for line in out.splitlines() if line.startswith("CLASS")]
    assert [c.split()[2] for c in classes] == ["size=1", "size=3"]


def test_selftwist_example_fields():
    _, out, _ = cli("selftwist", "--gamma", DATA / "s3.grp", "--group", DATA / "s3.grp")
    assert "SUMMARY components=3 stabilizers=[6,2,3] fixed=1" in out


def test_output_independent_of_working_directory(tmp_path):
    args = ["h1", "--gamma", DATA / "z2.grp", "--group", DATA / "s3.grp"]
    first = subprocess.run([sys.executable, "-m", "torsors", *map(str, args)],
                           capture_output=True, text=True, check=True)
    second = subprocess.run([sys.executable, "-m", "torsors", *map(str, args)],
                            capture_output=True, text=True, check=True, cwd=tmp_path)
    assert first.stdout == second.stdout
    assert first.stderr == ""


@pytest.mark.parametrize("args,msg", [
    (["h1", "--gamma", "missing.grp", "--group", "missing.grp"], "cannot read"),
    (["verify", "--suite", "nope"], "unknown suite"),
    (["h1", "--gamma", DATA / "z2.grp", "--group", DATA / "s3.grp", "--maxorder", "1"], "at least 2"),
    (["selftwist", "--gamma", DATA / "z2.grp", "--group", DATA / "s3.grp"], "same group"),
    (["specialize", "--cover", DATA / "s3_sign.cover", "--target", DATA / "s3.grp"], "cocycle"),
    (["isom", "--first", DATA / "target_trivial.coc"], ""),
])
def test_input_errors_exit_2(args, msg):
    code, out, err = cli(*args)
    assert code == 2
    assert out == ""
    assert msg in err


def test_order_cap_from_flag_and_environment(monkeypatch):
    code, _, err = cli("h1", "--gamma", DATA / "z2.grp", "--group", DATA / "s3.grp", "--maxorder", "4")
    assert code == 2 and "exceeds cap" in err
    monkeypatch.setenv("TORSOR_MAX_ORDER", "4")
    code, _, err = cli("h1", "--gamma", DATA / "z2.grp", "--group", DATA / "s3.grp")
    assert code == 2 and "exceeds cap" in err


def test_verify_respects_order_cap():
    code, out, _ = cli("verify", "--suite", "selftwist", "--maxorder", "6")
    assert code == 0
    assert "CLAIM self-twist PASS instances=10" in out
    assert "jobs" not in out


def test_verify_parallel_matches_serial():
    _, serial, _ = cli("verify", "--suite", "cocycles", "--jobs", "1")
    _, parallel, _ = cli("verify", "--suite", "cocycles", "--jobs", "3")
    assert serial == parallel


def test_console_entry_point():
    result = subprocess.run([sys.executable, "-m", "torsors", "--help"], capture_output=True, text=True)
    assert result.returncode == 0
    assert "specialize" in result.stdout


def test_report_empty_is_header_only():
    rep = Report("verify", meta=[("suite", "none")])
    assert rep.render() == "# torsors verify\n# suite=none\n"
    assert rep.render("machine") == rep.render()


def test_report_fail_carries_witness():
    bad = TwistReport("demo")
    bad.fail("x=1", (2, 3))
    rep = Report("verify")
    rep.add_claims([bad])
    lines = rep.render().splitlines()
    assert lines[1:] == ["CLAIM demo FAIL instances=1", "WITNESS demo instance=x=1 detail=[2,3]"]
    machine = rep.render("machine").splitlines()
    assert machine[1] == "record=claim id=demo status=FAIL instances=1"


def test_fmt_is_flat():
    assert fmt(True) == "yes" and fmt([1, (2, 3)]) == "[1,[2,3]]"
    assert fmt("a b") == "a_b" and fmt("") == "-"


def test_maxorder_flag_does_not_leak(monkeypatch):
    monkeypatch.delenv("TORSOR_MAX_ORDER", raising=False)
    cli("verify", "--suite", "selftwist", "--maxorder", "4")
    assert "TORSOR_MAX_ORDER" not in os.environ
