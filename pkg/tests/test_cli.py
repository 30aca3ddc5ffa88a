import io
import json
import subprocess
import sys

import pytest

from infodom.cli import main, run
from infodom.formats import parse_isys

FILES = {
    "flat2.isys": "tokens: a b nabla\nfalse: nabla\nentail: a b => nabla\n",
    "chain2.isys": "tokens: a nabla\nfalse: nabla\n",
    "deg.isys": "tokens: a nabla\nfalse: nabla\nentail: {} => nabla\n",
    "m.amap": "map: chain2.isys -> chain2.isys\npair: {} => a\n",
    "t.amap": "map: flat2.isys -> flat2.isys+top\npair: a => nabla\n",
    "w.wts": "weight: {} 0\nweight: {a} 1/2\nweight: {b} 1/2\n",
    "bad.wts": "weight: {a} 1/2\nweight: {b} 1/4\n",
}


@pytest.fixture
def files(tmp_path):
    for name, text in FILES.items():
        (tmp_path / name).write_text(text)
    return tmp_path


def dom(*argv):
    out, err = io.StringIO(), io.StringIO()
    _, code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def test_validate(files):
    code, out, _ = dom("validate", files / "flat2.isys")
    assert code == 0 and "transitivity: pass" in out
    code, out, _ = dom("validate", files / "m.amap")
    assert code == 0 and "accumulation: pass" in out


def test_elements(files):
    code, out, _ = dom("elements", files / "flat2.isys")
    assert code == 0 and out.split() == ["{}", "{a}", "{b}"]


def test_dist(files):
    code, out, _ = dom("dist", files / "flat2.isys", "{a}", "{b}", "--weights", files / "w.wts",
                       "--neg", "I")
    assert code == 0 and out.strip() == "l=1/1 u=1/1"
    code, out, _ = dom("dist", files / "flat2.isys", "{a}", "{b}", "--weights", files / "w.wts",
                       "--neg", "I", "--json")
    assert json.loads(out) == {"l": "1/1", "u": "1/1"}


def test_sub(files):
    code, out, _ = dom("sub", files / "chain2.isys")
    assert code == 0 and out.splitlines()[0] == "Sub size: 3"


def test_fix_and_fin(files):
    code, out, _ = dom("fix", files / "m.amap")
    assert code == 0 and out.split() == ["{a}"]
    code, out, _ = dom("fix", files / "t.amap")
    assert code == 0 and out.split() == ["{}"]
    code, out, _ = dom("fin", files / "m.amap")
    assert code == 0 and "finitary (retraction): true" in out
    code, out, _ = dom("fin", files / "m.amap", "--quotient")
    Q = parse_isys(out)
    assert len(Q.elements()) == 1


def test_tol(files):
    code, out, _ = dom("tol", files / "flat2.isys")
    assert code == 0
    assert "{a} ~ {b}" not in out and "{} ~ {a}" in out


def test_check_all(files):
    code, out, _ = dom("check-all", files / "flat2.isys")
    assert code == 0 and "sub_size: 6" in out


def test_demo(files):
    assert dom("demo", "E", "lawson")[1].strip() == "lawson: false  witness: 0_E"
    assert dom("demo", "Eprime", "lawson")[1].strip() == "lawson: true"
    code, out, _ = dom("demo", "E", "nbhd", "zero")
    assert code == 0 and "I: {einf}" in out
    assert dom("demo", "E", "dist", "einf", "zero", "--neg", "I")[1].strip() == "l=1/4 u=1/1"
    lines = dom("demo", "E", "anytime", "e1", "e1", "--steps", "3")[1].splitlines()
    assert lines[0] == "0: [0/1,1/1]" and lines[-1] == "3: [0/1,5/8]"
    assert dom("demo", "interval", "dist", "[0,2]", "[1,1]")[1].strip() == "rho=[0/1,1/1] p=2/1"
    assert dom("demo", "vertical", "dist", "1/2", "1/4")[1].strip() == "u'=15/22 u''=3/4"


@pytest.mark.parametrize("argv", [
    ["validate", "nope.isys"],
    ["bogus", "x.isys"],
    ["validate"],
    ["demo", "E", "dist", "e0", "zero"],
    ["demo", "E", "fly"],
    ["demo", "E", "anytime", "e1", "e1", "--steps", "-1"],
    ["fin", "m.amap", "--check", "--quotient"],
])
def test_usage_errors_exit_2(files, argv):
    argv = [str(files / a) if a.endswith((".isys", ".amap")) else a for a in argv]
    code, _, err = dom(*argv)
    assert code == 2 and err.startswith("ParseError")


def test_domain_errors_exit_1(files):
    code, _, err = dom("dist", files / "flat2.isys", "{a}", "{b}", "--weights", files / "bad.wts")
    assert code == 1 and err.startswith("BadWeights")
    code, out, _ = dom("validate", files / "deg.isys", "--json")
    assert code == 1 and json.loads(out)["error"] == "Degenerate"


def test_other_extension(files):
    (files / "x.txt").write_text("")
    assert dom("validate", files / "x.txt")[0] == 2


def test_main_and_console_script(files):
    assert main(["demo", "E", "lawson"]) == 0
    r = subprocess.run([sys.executable, "-m", "infodom.cli", "elements", str(files / "chain2.isys")],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.split() == ["{}", "{a}"]
