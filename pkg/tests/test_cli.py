import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gkzcert import cli
from gkzcert.cli import MatrixInput, ParseError, canonical, main, parse_input, render_input, run
from gkzcert.hypergeo import FAIL, Verdict
from gkzcert.intlin import IntegerMatrix

CONIC_JSON = '{"matrix": [[1, 1, 1], [0, 1, 2]], "label": "conic"}'


def invoke(argv, stdin=""):
    out = io.StringIO()
    code = main(argv, stdin=io.StringIO(stdin), stdout=out)
    return code, out.getvalue()


# -- parsing ---------------------------------------------------------------


def test_parse_json_and_grid_agree():
    a = parse_input(CONIC_JSON)
    b = parse_input("# conic\n1 1 1\n0, 1, 2\n")
    assert a.matrix == b.matrix == IntegerMatrix([[1, 1, 1], [0, 1, 2]])
    assert a.label == "conic" and b.label is None


def test_parse_optional_fields():
    inp = parse_input('{"matrix": [[1, 2]], "beta": ["1/2"], "seed": 7}')
    assert inp.beta == (Fraction(1, 2),) and inp.seed == 7


@pytest.mark.parametrize(
    "text, line, column",
    [
        ('{"matrix": [[1, 2],\n  [3]]}', 2, 3),
        ("1 2\n3\n", 2, 1),
        ("1 x\n", 1, 3),
        ('{"matrix": [[1, 2.5]]}', 1, 13),
    ],
)
def test_parse_errors_carry_location(text, line, column):
    with pytest.raises(ParseError) as info:
        parse_input(text)
    assert (info.value.line, info.value.column) == (line, column)


@pytest.mark.parametrize(
    "text", ['{"matrix": [[1]], "extra": 1}', '{"matrix": []}', "", '{"matrix": [[true]]}', "{bad json"]
)
def test_parse_rejections(text):
    with pytest.raises(ParseError):
        parse_input(text)


rows = st.integers(1, 3).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=1, max_size=3)
)
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@settings(max_examples=60, deadline=None)
@given(rows, st.none() | st.text(max_size=8), st.none() | st.lists(rationals, max_size=3), st.none() | st.integers(0, 99))
def test_render_parse_round_trip(matrix, label, beta, seed):
    inp = MatrixInput(IntegerMatrix(matrix), label, None if beta is None else tuple(beta), seed)
    assert parse_input(render_input(inp)) == inp


# -- commands and exit codes -----------------------------------------------


def test_check_conic_passes():
    doc, code = run("check", parse_input(CONIC_JSON))
    assert code == 0 and doc["status"] == "pass"
    assert len(doc["verdicts"]) == 7


def test_zero_column_is_invalid_with_hypothesis():
    doc, code = run("check", parse_input("1 0\n1 0\n"))
    assert code == 2 and doc["status"] == "invalid"
    assert doc["hypothesis"]


def test_rank_deficient_is_invalid():
    doc, code = run("dim", parse_input("1 2\n2 4\n"))
    assert code == 2 and "full rank" in doc["error"]


def test_beta_length_checked():
    doc, code = run("dim", MatrixInput(IntegerMatrix([[1, 2]]), beta=(Fraction(1), Fraction(2))))
    assert code == 2 and "beta" in doc["error"]


def test_failing_verdict_exits_one(monkeypatch):
    monkeypatch.setitem(cli.COMMANDS, "toric", lambda A, samples, seed: [Verdict("toric", FAIL, {}, "forced")])
    doc, code = run("toric", parse_input(CONIC_JSON))
    assert code == 1 and "engine bug" in doc["error"]


def test_dim_text_output():
    code, out = invoke(["dim", "-"], "1 2\n")
    assert code == 0
    assert "char dim = 2 = n" in out
    assert out.rstrip().endswith("status: pass")


def test_json_output_and_beta_echo():
    code, out = invoke(["toric", "-", "--format", "json", "--beta", "1/2,3"], CONIC_JSON)
    doc = json.loads(out)
    assert code == 0
    assert doc["input"]["beta"] == ["1/2", "3"]
    assert doc["verdicts"][0]["check"] == "toric"


def test_invalid_text_output():
    code, out = invoke(["check", "-"], "1 2\n3\n")
    assert code == 2 and out.startswith("invalid input: line 2")


def test_missing_file(tmp_path):
    code, out = invoke(["check", str(tmp_path / "absent.json")])
    assert code == 2 and "invalid input" in out


@pytest.mark.parametrize("command", sorted(cli.COMMANDS))
def test_every_command_runs_on_one_two(command):
    doc, code = run(command, parse_input("1 2\n"))
    assert code == 0, doc


def test_same_input_and_seed_give_identical_reports():
    inp = parse_input("1 1 1 1\n0 1 2 3\n")
    first, _ = run("check", inp, seed=11)
    second, _ = run("check", inp, seed=11)
    assert canonical(first) == canonical(second)
    assert "timings" in first and "timings" not in json.loads(canonical(first))


def test_seed_from_input_used_when_flag_absent():
    doc, _ = run("fibers", parse_input('{"matrix": [[1, 1, 1], [0, 1, 2]], "seed": 5}'))
    assert doc["seed"] == 5
    doc, _ = run("fibers", parse_input('{"matrix": [[1, 1, 1], [0, 1, 2]], "seed": 5}'), seed=2)
    assert doc["seed"] == 2


# -- batch mode --------------------------------------------------------------


def test_corpus_mode(tmp_path):
    (tmp_path / "a.json").write_text(CONIC_JSON)
    (tmp_path / "b.txt").write_text("1 2\n")
    (tmp_path / "c.txt").write_text("1 0\n1 0\n")
    (tmp_path / "notes.md").write_text("ignored")
    code, out = invoke(["check", "--corpus", str(tmp_path)])
    assert code == 2
    assert "3 inputs: 2 pass, 0 fail, 1 invalid" in out
    code, out = invoke(["dim", "--corpus", str(tmp_path), "--format", "json", "--jobs", "2"])
    results = json.loads(out)["results"]
    assert [r["file"] for r in results] == ["a.json", "b.txt", "c.txt"]
    assert [r["status"] for r in results] == ["pass", "pass", "invalid"]


def test_empty_corpus(tmp_path):
    assert invoke(["check", "--corpus", str(tmp_path)])[0] == 2


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "gkzcert.cli", "dim", "-"], input="1 1 1\n0 1 2\n", capture_output=True, text=True
    )
    assert proc.returncode == 0, proc.stderr
    assert "char dim = 3 = n" in proc.stdout
