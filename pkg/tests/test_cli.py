import json
import subprocess
import sys
from fractions import Fraction

import pytest

from cubictsp.cli import main, run


def call(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_fixture(capsys):
    code, out, _ = call(["solve", "--fixture", "appendix48"], capsys)
    data = json.loads(out)
    assert code == 0
    assert data["schema"] == 1 and data["n"] == 48
    assert data["tour_length"] <= 58
    assert data["bound_5n4"] == {"exact": "58/1", "decimal": 58.0}
    assert data["certificate"] is not None and data["certificate_check"]["ok"]
    assert sorted(data["tour"]) == list(range(1, 49))


def test_solve_is_byte_identical(capsys):
    _, a, _ = call(["solve", "--fixture", "appendix48"], capsys)
    _, b, _ = call(["solve", "--fixture", "appendix48"], capsys)
    assert a == b


def test_bounds(capsys):
    code, out, _ = call(["bounds", "--n", "8754000", "--b", "6000"], capsys)
    data = json.loads(out)
    assert code == 0
    n, b = Fraction(8754000), Fraction(6000)
    cls = Fraction(4, 3) * b + (Fraction(4, 3) - Fraction(1, 8748)) * (n - b) + 2
    ms = Fraction(4, 3) * n - b / 6 - Fraction(2, 3)
    assert cls == 11671002 and ms == Fraction(35012998, 3)
    assert data["bound_cls"]["exact"] == f"{cls.numerator}/{cls.denominator}"
    assert data["bound_ms"]["exact"] == f"{ms.numerator}/{ms.denominator}"
    assert data["combined"]["coefficient"]["exact"] == "11671/8754"
    assert data["combined"]["b_star"]["exact"] == "6000/1"


def test_not_cubic_input(tmp_path, capsys):
    path = tmp_path / "square.txt"
    path.write_text("4 4\n0 1\n1 2\n2 3\n3 0\n")
    code, _, err = call(["solve", "--input", str(path)], capsys)
    assert code == 1
    assert json.loads(err)["error"] == "NotCubic"


def test_missing_file(capsys):
    code, _, err = call(["solve", "--input", "/nonexistent/graph.txt"], capsys)
    assert code == 1 and "error" in json.loads(err)


def test_usage_errors(capsys):
    code, _, err = call(["solve", "--fixture", "k33", "--input", "x"], capsys)
    assert code == 1 and json.loads(err)["error"] == "UsageError"
    code, _, _ = call(["solve", "--bogus"], capsys)
    assert code == 1


def test_invariant_breach_exit_code(tmp_path, capsys):
    sol, _ = run(["solve", "--fixture", "appendix48"])
    sol["tour_length"] -= 1
    path = tmp_path / "sol.json"
    path.write_text(json.dumps(sol))
    code, _, err = call(["verify", "--fixture", "appendix48", "--solution", str(path)], capsys)
    assert code == 2 and json.loads(err)["error"] == "InvariantBreach"


def test_verify_round_trip(tmp_path, capsys):
    sol, _ = run(["solve", "--fixture", "appendix48"])
    path = tmp_path / "sol.json"
    path.write_text(json.dumps(sol))
    fpath = tmp_path / "factor.json"
    fpath.write_text(json.dumps(sol["factor"]))
    code, out, _ = call(["verify", "--fixture", "appendix48", "--solution", str(path), "--factor", str(fpath)], capsys)
    data = json.loads(out)
    assert code == 0 and data["ok"]
    assert data["solution"]["certificate"]["ok"]
    assert data["factor"]["within_bound"]


def test_generate_and_batch(tmp_path, capsys):
    paths = []
    for seed in range(3):
        p = tmp_path / f"g{seed}.txt"
        code, out, _ = call(["generate", "--half-n", "10", "--seed", str(seed), "--output", str(p)], capsys)
        assert code == 0 and json.loads(out)["rng"] == "numpy.PCG64/v1"
        paths.append(str(p))
    code, out, _ = call(["solve", "--jobs", "2", "--input", *paths], capsys)
    data = json.loads(out)
    assert code == 0 and len(data["results"]) == 3
    for r in data["results"]:
        assert r["tour_length"] <= 5 * r["n"] / 4 - 2


def test_seed_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("CUBIC_TSP_SEED", "42")
    _, a, _ = call(["generate", "--half-n", "8"], capsys)
    _, b, _ = call(["generate", "--half-n", "8", "--seed", "42"], capsys)
    assert a == b and a.startswith("16 24")


def test_trace_lines(tmp_path, capsys):
    p = tmp_path / "g.txt"
    call(["generate", "--half-n", "16", "--seed", "1229", "--output", str(p)], capsys)
    code, _, err = call(["solve", "--input", str(p), "--trace", "--debug-invariants"], capsys)
    assert code == 0
    moves = [json.loads(line) for line in err.splitlines()]
    assert moves and moves[0]["kind"] == "flip"
    assert moves[0]["components_after"] < moves[0]["components_before"]


def test_two_factor_and_reduce(capsys):
    code, out, _ = call(["two-factor", "--fixture", "heawood", "--which", "f2"], capsys)
    assert code == 0 and json.loads(out)["components"] >= 1
    code, out, _ = call(["reduce", "--fixture", "q3"], capsys)
    data = json.loads(out)
    assert data["reduced_n"] == 6 and len(data["records"]) == 1


@pytest.mark.parametrize(
    "what, value",
    [("two-factors", 6), ("min-cover", 1), ("tsp", 6)],
)
def test_oracle(what, value, capsys):
    code, out, _ = call(["oracle", "--fixture", "k33", "--what", what], capsys)
    assert code == 0 and json.loads(out)["value"] == value


def test_oracle_potential4(capsys):
    code, out, _ = call(["oracle", "--fixture", "q3", "--what", "potential4", "--nodes", "0", "1", "3", "2"], capsys)
    assert code == 0 and json.loads(out)["value"] is True


def test_cubic3_and_fixture(capsys):
    code, out, _ = call(["cubic3", "solve", "--fixture", "diamond-pair", "--provider", "factor"], capsys)
    data = json.loads(out)
    assert code == 0 and data["b"] == 8 and data["contracted_n"] == 2
    code, out, _ = call(["fixture", "appendix48"], capsys)
    data = json.loads(out)
    assert len(data["edges"]) == 72 and data["known"]["hamilton"][0] == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cubictsp", "bounds", "--n", "1459"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["combined"]["b_star"]["exact"] == "1/1"
