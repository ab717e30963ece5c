import json
import subprocess
import sys
from importlib import resources

import pytest

from hypercone import cli
from hypercone.ring import Poly, PolyVec

DATA = resources.files("hypercone") / "data"


def data(name):
    return str(DATA / name)


def run(*argv):
    return cli.main([str(a) for a in argv])


def test_parse_point():
    from fractions import Fraction

    assert cli.parse_point("1,1/2,0") == (1, Fraction(1, 2), 0)
    assert cli.parse_point("-3, 4") == (-3, 4)


def test_det_matches_cofactor_identity(tmp_path, vamos):
    out = tmp_path / "det.json"
    assert run("det", "--pencil", data("vamos_pencil.json"), "--json", out) == 0
    det = Poly.from_json(json.loads(out.read_text()))
    assert det == (vamos.q * vamos.h4).scale(8)


def test_cone_member_yes_and_no(capsys):
    assert run("cone-member", "--h", data("vamos_h4.json"), "--e", "1,1,0,0", "--v", "0,0,1,0") == 0
    assert capsys.readouterr().out.strip() == "yes"
    assert run("cone-member", "--h", data("vamos_h4.json"), "--e", "1,1,0,0", "--v=-1,0,0,0") == 1
    assert capsys.readouterr().out.strip() == "no"


def test_dual_of_orthant(tmp_path):
    out = tmp_path / "dual.json"
    assert run("dual", "--rays", data("orthant2.json"), "--json", out) == 0
    rays = sorted(tuple(r) for r in json.loads(out.read_text())["rays"])
    assert rays == [("0", "1"), ("1", "0")]


def test_hyperbolic_check(tmp_path):
    out = tmp_path / "rep.json"
    assert run("hyperbolic-check", "--h", data("quadric_h.json"), "--e", "1,0,0",
               "--samples", 50, "--json", out) == 0
    rep = json.loads(out.read_text())
    assert rep["samples"] == 50 and rep["seed"] == 0


def test_hyperbolic_check_fails_for_non_hyperbolic(tmp_path):
    h = Poly.variables(3)
    bad = h[0] ** 2 + h[1] ** 2 + h[2] ** 2
    path = tmp_path / "h.json"
    path.write_text(json.dumps(bad.to_json()))
    assert run("hyperbolic-check", "--h", path, "--e", "1,0,0", "--samples", 20) == 1


@pytest.mark.parametrize("argv", [
    ["det", "--pencil", "/nonexistent.json"],
    ["dual"],
    ["cone-member", "--h", "QUAD", "--e", "1,x,0", "--v", "0,0,0"],
    ["hyperbolic-check", "--h", "QUAD", "--e", "1,0,0", "--samples", "0"],
    ["hyperbolic-check", "--h", "QUAD", "--e", "1,0,0", "--seed", "-1"],
    ["no-such-command"],
])
def test_usage_errors_exit_2(argv):
    argv = [data("quadric_h.json") if a == "QUAD" else a for a in argv]
    assert run(*argv) == 2


def test_malformed_files_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run("det", "--pencil", bad) == 2
    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps({"nvars": 3, "terms": [{"c": "1", "e": [1, 1]}]}))
    assert run("cone-member", "--h", wrong, "--e", "1,0,0", "--v", "0,0,0") == 2
    assert "error" in capsys.readouterr().err


def test_construct_quadric(tmp_path):
    out = tmp_path / "pencil.json"
    code = run("construct", "--h", data("quadric_h.json"), "--e", "1,0,0", "--f", data("quadric_f.json"),
               "--d-prime", 1, "--out", out)
    assert code == 0
    obj = json.loads(out.read_text())
    det = Poly.from_json(obj["det"])
    q = Poly.from_json(obj["q"])
    assert q.total_degree() == 0
    c = q.evaluate((0, 0, 0))
    assert c > 0
    h = Poly.from_json(json.loads(open(data("quadric_h.json")).read()))
    assert det == h.scale(c)
    assert all(obj["mixed_identity"])


def test_construct_rejects_divisible_f(tmp_path, capsys):
    x = Poly.variables(3)
    h = x[0] ** 2 - x[1] ** 2 - x[2] ** 2
    f = PolyVec([h * x[0], h * x[1]])
    path = tmp_path / "f.json"
    path.write_text(json.dumps(f.to_json()))
    code = run("construct", "--h", data("quadric_h.json"), "--e", "1,0,0", "--f", path, "--d-prime", 3)
    assert code == 2
    assert "precondition" in capsys.readouterr().err


def test_construct_degree_mismatch_exit_2():
    assert run("construct", "--h", data("quadric_h.json"), "--e", "1,0,0", "--f", data("quadric_f.json"),
               "--d-prime", 2) == 2


def test_verify_vamos_json_is_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run("verify-vamos", "--samples", 40, "--json", a) == 0
    assert run("--samples", "40", "verify-vamos", "--json", b) == 0
    assert a.read_bytes() == b.read_bytes()
    rep = json.loads(a.read_text())
    assert 9 <= len(rep["steps"]) <= 10
    assert rep["samples"] == 40 and rep["seed"] == 0


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "hypercone.cli", "cone-member", "--h", data("quadric_h.json"),
                          "--e", "1,0,0", "--v", "2,1,1"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "yes"
