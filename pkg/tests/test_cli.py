import json
import subprocess
import sys
from pathlib import Path

import pytest

from thompson.cli import run

GOLDEN = Path(__file__).parent / "golden"


def cli(*args):
    proc = subprocess.run([sys.executable, "-m", "thompson", *args], capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


@pytest.mark.parametrize("args, name", [
    (["hom", "--max-degree", "4", "--json"], "hom_4.json"),
    (["cup", "--max-degree", "4", "--json"], "cup_4.json"),
])
def test_golden(args, name):
    code, out, _ = cli(*args)
    assert code == 0
    assert out == (GOLDEN / name).read_text(encoding="utf-8")


def test_verify_all_seed_42():
    code, out, _ = cli("verify", "--suite", "all", "--seed", "42")
    assert code == 0, out
    assert "FAIL" not in out
    assert cli("verify", "--suite", "all", "--seed", "42")[1] == out


def test_elem():
    code, out = run(["elem", "id"])
    assert code == 0
    assert out.splitlines() == ["(*, *)", "abelianization: (0, 0)"]
    code, out = run(["elem", "x0", "--eval", "1/2"])
    assert out.splitlines()[-1] == "f(1/2^1) = 1/2^2"
    assert run(["elem", "x0", "--abelianize"]) == (0, "abelianization: (-1, 1)")


def test_elem_json():
    code, out = run(["elem", "x1^x0", "--json", "--eval", "3/2^2"])
    data = json.loads(out)
    assert data["element"] == {"domain": [0, [0, [0, [0, 0]]]], "range": [0, [0, [[0, 0], 0]]]}
    assert data["abelianization"] == [0, 1]
    assert data["eval"] == {"t": "3/2^2", "value": "3/2^2"}


def test_hom_text():
    code, out = run(["hom", "--max-degree", "4"])
    lines = out.splitlines()
    assert code == 0 and len(lines) == 6
    for line in lines[2:]:
        n, rank, torsion = line.split()[:3]
        assert (rank, torsion) == ("2", "none")


def test_cup_text():
    code, out = run(["cup", "--max-degree", "2"])
    assert code == 0
    assert "presentation check: ok" in out
    assert "α* ∪ β* = -αβ*" in out.splitlines()


def test_certify():
    assert run(["certify", "v2", "v"]) == (0, "b = e")
    assert run(["certify", "z", "zv"]) == (0, "not homologous")
    code, out = run(["certify", "vzv", "0"])
    assert code == 0 and out.startswith("b = ")


@pytest.mark.parametrize("args, code", [
    (["elem", "x0 +"], 2),
    (["elem", "x0", "--eval", "1/3"], 2),
    (["elem", "x0", "--eval", "3/2"], 2),
    (["certify", "e", "v"], 2),
    (["certify", "vq", "v"], 2),
    (["elem", "x65"], 3),
    (["hom", "--max-degree", "11"], 3),
    (["cup", "--max-degree", "17"], 3),
    (["verify", "--suite", "nope"], 2),
    ([], 2),
])
def test_exit_codes(args, code):
    assert run(args)[0] == code


def test_failing_suite_exits_one(monkeypatch):
    from thompson import verify
    monkeypatch.setitem(verify.SUITES, "forest", [lambda rng: (False, "forced")])
    code, out = run(["verify", "--suite", "forest"])
    assert code == 1
    assert "FAIL forest.<lambda> (forced)" in out


def test_console_errors_go_to_stderr():
    code, out, err = cli("elem", "x0 +")
    assert code == 2 and not out and "position 3" in err
