import json
import subprocess
import sys
from pathlib import Path

import pytest

from vflie import cli

GOLDEN = Path(__file__).parent / "golden"
CASES = json.loads((GOLDEN / "cases.json").read_text())


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture(autouse=True)
def _no_env_cap(monkeypatch):
    monkeypatch.delenv("VFLIE_MAX_DEGREE", raising=False)


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name, capsys):
    code, out, err = run(CASES[name], capsys)
    assert code == 0 and err == ""
    assert out.encode() == (GOLDEN / f"{name}.out").read_bytes()


def test_json_outputs_parse(capsys):
    for name, argv in CASES.items():
        if "--json" in argv:
            _, out, _ = run(argv, capsys)
            assert isinstance(json.loads(out), dict), name


@pytest.mark.parametrize(
    "argv",
    [
        ["bracket", "y*dx", "x*"],
        ["bracket", "--arity", "7", "x*dx", "dy"],
        ["bracket", "--cyclotomic", "0", "dx", "dy"],
        ["divergence", "x dx"],
        ["components", "x*dz"],
        ["table-check", "--max", "-1"],
        ["decompose", "--d", "3", "--e", "2", "--a", "1", "--b", "0"],
        ["decompose", "--d", "4", "--e", "3", "--a", "1", "--b", "1"],
        ["decompose", "--d", "3", "--e", "2"],
        ["invariant-basis", "--d", "4", "--e", "2"],
        ["invariant-basis", "--e", "2"],
        ["derived-series", "--cap", "3"],
        ["derived-series", "--algebra", "nope"],
        ["derived-series", "--algebra", "t2", "--levels", "0"],
        ["member", "--algebra", "u_de_plus", "y*dx"],
        ["member", "--algebra", "t2", "z*dx"],
        ["sl2-detect", "y*dx"],
        ["sl2-detect", "x*dy + y*dx"],
        ["sl2-detect", "y^2*dy"],
        ["special", "0"],
        ["special", "x*y"],
        ["ideal-check", "--d", "8", "--e", "3", "--box", "5"],
        ["veronese-check", "--max-d", "1"],
        ["triangular-extension-check", "--cap", "2"],
        ["probe-question2", "--d", "3", "--e", "3"],
        ["probe-question2", "--d", "3", "--e", "2", "--cap", "0"],
        ["frobnicate"],
        ["bracket", "--bogus", "dx", "dy"],
        [],
    ],
)
def test_input_errors_exit_2(argv, capsys):
    code, out, err = run(argv, capsys)
    assert code == 2 and out == "" and err


def test_usage_on_unknown_flag(capsys):
    code, _, err = run(["table-check", "--nope"], capsys)
    assert code == 2 and "usage:" in err


def test_verification_failure_exits_1(capsys, monkeypatch):
    monkeypatch.setattr(cli.vecfield, "table_check", lambda m: (3, [("dx", "dy", None)]))
    code, out, _ = run(["table-check"], capsys)
    assert code == 1 and "1 of 3 identities fail" in out
    monkeypatch.setattr(cli.generate, "veronese_identity", lambda d, k, l: (0, 1))
    code, out, _ = run(["veronese-check", "--max-d", "2", "--max-kl", "0", "--json"], capsys)
    assert code == 1 and json.loads(out)["failures"] == ["identity d=2 k=0 l=0"]


def test_env_cap(capsys, monkeypatch):
    monkeypatch.setenv("VFLIE_MAX_DEGREE", "4")
    code, out, _ = run(["invariant-basis", "--d", "3", "--e", "2"], capsys)
    assert code == 0 and out.encode() == (GOLDEN / "invariant_basis.out").read_bytes()
    _, out, _ = run(["invariant-basis", "--d", "3", "--e", "2", "--cap", "3", "--json"], capsys)
    assert json.loads(out)["degree_cap"] == 3
    monkeypatch.setenv("VFLIE_MAX_DEGREE", "lots")
    code, _, err = run(["invariant-basis", "--d", "3", "--e", "2"], capsys)
    assert code == 2 and "VFLIE_MAX_DEGREE" in err


def test_entry_point_subprocess():
    r = subprocess.run(
        [sys.executable, "-m", "vflie.cli", "bracket", "y*dx", "x*dy"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert r.returncode == 0 and r.stdout == "-x*dx + y*dy\n"
    r = subprocess.run([sys.executable, "-m", "vflie.cli", "special", "x^"], capture_output=True, text=True, check=False)
    assert r.returncode == 2 and "offset 2" in r.stderr
