import json
import subprocess
import sys

import pytest

from sandwich_is import aut, cli
from sandwich_is.sandwich import context_k


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_aut_formula(capsys):
    assert run(capsys, "aut", "--n", "3", "--k", "2") == (0, "2\n", "")


def test_aut_oracle(capsys):
    code, out, _ = run(capsys, "aut", "--n", "2", "--k", "1", "--method", "oracle")
    assert (code, out) == (0, "1\n")


def test_aut_oracle_with_stream(capsys):
    code, out, _ = run(capsys, "aut", "--n", "3", "--k", "3", "--method", "oracle", "--limit", "10")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "6" and len(lines) == 7
    assert all(len(json.loads(x)["images"]) == 34 for x in lines[1:])


@pytest.mark.parametrize("n, k", [(2, 1), (2, 2), (3, 2), (3, 3)])
def test_methods_agree(capsys, n, k):
    args = ["aut", "--n", str(n), "--k", str(k)]
    formula = run(capsys, *args)[1]
    oracle_count = run(capsys, *args, "--method", "oracle")[1]
    stream = run(capsys, *args, "--method", "construct")[1].splitlines()
    assert int(formula) == int(oracle_count) == len(stream)


def test_construct_limit(capsys):
    code, out, _ = run(capsys, "aut", "--n", "3", "--k", "1", "--method", "construct", "--limit", "3")
    assert code == 0 and len(out.splitlines()) == 3


def test_aut_degenerate(capsys):
    code, out, err = run(capsys, "aut", "--n", "2", "--k", "0")
    assert (code, out) == (0, "720\n")
    assert "k = 0" in err
    code, out, _ = run(capsys, "aut", "--n", "2", "--k", "0", "--format", "json")
    assert json.loads(out) == {"order": 720, "degenerate": True, "formula_order": 2880}


def test_aut_degenerate_construct_is_usage_error(capsys):
    code, _, err = run(capsys, "aut", "--n", "2", "--k", "0", "--method", "construct")
    assert code == 2 and "error" in err


def test_verify_ok(capsys):
    code, out, _ = run(capsys, "verify", "--n", "2", "--k", "1")
    assert code == 0
    assert out and all(line.startswith("PASS") for line in out.splitlines())


def test_verify_reports_violation(capsys, monkeypatch):
    from sandwich_is import invariants

    # a wrong characterization must be caught by the definitional comparison
    monkeypatch.setattr(invariants, "is_idempotent", lambda ctx, a: a.rank == 0)
    code, out, _ = run(capsys, "verify", "--n", "2", "--k", "1")
    assert code == 1
    assert "FAIL  idempotent characterization" in out and "counterexample" in out


@pytest.mark.parametrize("argv", [
    ["aut", "--n", "3"],
    ["aut", "--n", "3", "--k", "1", "--sandwich", "1>1"],
    ["aut", "--n", "3", "--k", "4"],
    ["aut", "--n", "3", "--sandwich", "1>4"],
    ["aut", "--n", "0", "--k", "0"],
    ["bogus", "--n", "2", "--k", "1"],
    ["cayley", "--n", "2", "--k", "1", "--format", "xml"],
    ["factorize", "--n", "2", "--k", "1"],
])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as info:
        cli.main(argv)
    assert info.value.code == 2


def test_cap_error(capsys, monkeypatch):
    monkeypatch.setenv("SANDWICH_IS_CAP", "10")
    code, out, err = run(capsys, "aut", "--n", "3", "--k", "1", "--method", "oracle")
    assert code == 3 and out == "" and "cap" in err
    code, _, _ = run(capsys, "elements", "--n", "7", "--k", "1")
    assert code == 3


def test_non_normalized_sandwich(capsys):
    code, out, err = run(capsys, "aut", "--n", "3", "--sandwich", "1>3,2>1")
    assert (code, out) == (0, "2\n")
    assert "normalized to rank 2" in err


def test_normalize(capsys):
    code, out, _ = run(capsys, "normalize", "--n", "3", "--sandwich", "1>3,2>1")
    assert code == 0
    assert json.loads(out) == {"k": 2, "p": [3, 1, 2], "q": [1, 2, 3], "homomorphism": True}


def test_factorize_round_trip(capsys, tmp_path):
    ctx = context_k(3, 1)
    t = aut.GTriple((1,), (3, 2), (2, 3))
    path = tmp_path / "sigma.json"
    path.write_text(json.dumps(aut.tau(ctx, t).to_json()))
    code, out, _ = run(capsys, "factorize", "--n", "3", "--k", "1", "--input", str(path))
    assert code == 0
    data = json.loads(out)
    assert (data["g"], data["h1"], data["h2"], data["class_perms"]) == ([1], [3, 2], [2, 3], {})


def test_factorize_bad_input(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(SystemExit) as info:
        cli.main(["factorize", "--n", "2", "--k", "1", "--input", str(path)])
    assert info.value.code == 2
    path.write_text(json.dumps({"images": [1, 0, 2, 3, 4, 5, 6]}))
    code, _, err = run(capsys, "factorize", "--n", "2", "--k", "1", "--input", str(path))
    assert code == 2 and "does not respect" in err


@pytest.mark.parametrize("command", ["elements", "cayley", "idempotents", "classes"])
@pytest.mark.parametrize("fmt", ["json", "csv", "text"])
def test_formats(capsys, command, fmt):
    code, out, _ = run(capsys, command, "--n", "2", "--k", "1", "--format", fmt)
    assert code == 0 and out.endswith("\n")
    if fmt == "json":
        json.loads(out)


def test_elements_text(capsys):
    _, out, _ = run(capsys, "elements", "--n", "1", "--k", "1")
    assert out == "0\t0\t\n1\t1\t1>1\n"


def test_idempotents_json(capsys):
    _, out, _ = run(capsys, "idempotents", "--n", "2", "--k", "1", "--format", "json")
    assert json.loads(out) == {"idempotents": ["", "1>1"], "hasse": [["", "1>1"]]}


def test_byte_stable_across_processes():
    argv = [sys.executable, "-m", "sandwich_is", "verify", "--n", "3", "--k", "2", "--seed", "5", "--samples", "500"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second and first


def test_byte_stable_construct(capsys):
    args = ["aut", "--n", "3", "--k", "1", "--method", "construct", "--limit", "50"]
    assert run(capsys, *args) == run(capsys, *args)
