import json
import subprocess
import sys
from pathlib import Path

import pytest

from hvalg.cli import main, run

GOLDEN = Path(__file__).parent / "golden"

EXAMPLES = {
    "bracket.json": ["bracket", "--rank", "1", "--lambda", "0", "--variant", "extended", "L[1]", "I[-1]"],
    "h2_dim.json": ["h2-dim", "--rank", "1", "--lambda", "0", "--radius", "5"],
    "jacobi.json": ["jacobi", "--rank", "1", "--lambda", "-1", "--variant", "derived-prime",
                    "--radius", "3"],
}


def _stdout(argv, capsys):
    code = main(argv)
    return code, capsys.readouterr().out


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_golden(name, capsys):
    code, out = _stdout(EXAMPLES[name], capsys)
    assert code == 0
    assert out == (GOLDEN / name).read_text()


def test_golden_contents():
    rep = json.loads((GOLDEN / "bracket.json").read_text())
    assert rep["result"] == "-1*I[0] + 2*CLI0"
    rep = json.loads((GOLDEN / "h2_dim.json").read_text())
    assert rep["result"]["dim"] == "3" and rep["result"]["stable"] is True
    rep = json.loads((GOLDEN / "jacobi.json").read_text())
    assert rep["result"]["passed"] is True and rep["failures"] == []


def test_console_script_matches_golden():
    out = subprocess.run([sys.executable, "-m", "hvalg.cli", *EXAMPLES["bracket.json"]],
                         capture_output=True, text=True, check=True).stdout
    assert out == (GOLDEN / "bracket.json").read_text()


def test_deterministic_with_seeds():
    argv = ["der-dim", "--rank", "2", "--lambda", "1", "--degree", "[1,0]", "--radius", "3",
            "--seed", "5", "--seed", "6", "--seed", "7"]
    first, second = run(argv), run(argv)
    assert first == second and first[0] == 0
    rep = json.loads(first[1])
    assert rep["result"]["dim"] == "2" and rep["params"]["seeds"] == ["5", "6", "7"]


def _walk(obj):
    if isinstance(obj, dict):
        for v in obj.values():
            yield from _walk(v)
    elif isinstance(obj, list):
        for v in obj:
            yield from _walk(v)
    else:
        yield obj


def test_numbers_are_strings_and_timing_optional():
    code, text, _ = run(["aut-compose", "--lambda", "0", "l=2; l0=1/3", "xi=-1; l1=5", "--timing"])
    rep = json.loads(text)
    assert code == 0 and rep["schema"] == "hv-report/1"
    assert all(isinstance(v, (str, bool)) or v is None for v in _walk(rep))
    assert rep["timing_ms"] is not None and int(rep["timing_ms"]) >= 0
    assert rep["result"]["l"] == "2" and rep["result"]["l0"] == "-1/3"


@pytest.mark.parametrize("argv,code", [
    (["leibniz", "--lambda", "5/7", "Psi", "--radius", "3"], 0),
    (["hom-check", "--lambda", "0", "--aut", "chi=3; l=2; l0=1; l1=-1"], 0),
    (["hom-check", "--lambda", "0", "--variant", "extended", "--aut", "l=2; l1=1/2", "--radius", "2"], 0),
    (["hom-check", "--lambda", "0", "--inner", "I[1] - 2*I[-2]"], 0),
    (["cocycle-check", "--lambda", "0", "CLform + 2*CLI0form - cob(L[1])"], 0),
    (["cocycle-normalize", "--lambda", "1", "CLI1form + cob(I[0] + L[2])"], 0),
    (["aut-inverse", "--lambda", "-2", "xi=-1; chi=2; l=3; l3=1"], 0),
    (["aut-factor", "--lambda", "1", "f=2; l=5"], 0),
    (["der-apply", "--lambda", "0", "--variant", "extended", "PhiBar", "CL"], 0),
    (["lift-apply", "--lambda", "0", "--variant", "extended", "l1=2", "I[0]"], 0),
    (["der-dim", "--lambda", "-2", "--radius", "3"], 0),
    (["cocycle-check", "--lambda", "0", "CLform + 1/2*CIform"], 0),
    # usage, parse and gate errors
    (["leibniz", "--lambda", "1", "Psi + 1"], 2),
    (["bracket", "--lambda", "1", "--variant", "extended", "CI", "L[1]"], 2),
    (["bracket", "L[1", "L[2]"], 2),
    (["der-apply", "--lambda", "1", "Sigma0", "L[1]"], 2),
    (["h2-dim", "--variant", "extended"], 2),
    (["hom-check", "--lambda", "0"], 2),
    (["lift-apply", "--lambda", "-1", "--variant", "derived-prime", "", "L[1]"], 2),
    (["aut-apply", "--lambda", "0", "l3=1", "L[1]"], 2),
    (["h2-dim", "--radius", "2"], 2),
])
def test_exit_codes(argv, code):
    assert run(argv)[0] == code


def test_failure_exit_code_one(monkeypatch):
    import hvalg.cli as cli
    from hvalg.reports import CheckReport

    def failing(ctx, radius):
        rep = CheckReport("jacobi")
        rep.checked = 1
        rep.fail("forced")
        return rep

    monkeypatch.setattr(cli, "jacobi_check", failing)
    code, text, _ = cli.run(["jacobi"])
    assert code == 1 and json.loads(text)["failures"] == ["forced"]


def test_unstable_dimension_exits_one(monkeypatch):
    import hvalg.oracle as oracle

    real = oracle._h2_once
    monkeypatch.setattr(oracle, "_h2_once",
                        lambda r, l, d, R, p: (lambda z, b: (z + (R % 2), b))(*real(r, l, d, R, p)))
    code, text, _ = run(["h2-dim", "--radius", "3"])
    assert code == 1 and json.loads(text)["result"]["stable"] is False


def test_argparse_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as info:
        main(["bracket", "--lambda", "x/y", "L[1]", "L[2]"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["no-such-command"])
    assert info.value.code == 2


def test_errors_go_to_stderr(capsys):
    assert main(["bracket", "L[1", "L[2]"]) == 2
    captured = capsys.readouterr()
    assert captured.out == "" and "hv bracket:" in captured.err
