"""Command-line frontend.

    gkzcert check conic.json
    echo "1 1 1
    0 1 2" | gkzcert dim --format json
    gkzcert --corpus inputs/ check

Exit codes: 0 every verdict passed, 1 some verdict failed (an engine bug for
valid input), 2 the input was rejected.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable

from . import __version__
from .cone import enumerate_faces
from .errors import HypothesisError, InvalidInstanceError
from .hypergeo import (
    FAIL,
    PASS,
    STAGES,
    Verdict,
    characteristic_summary,
    face_dimension_audit,
    validate,
    verify_holonomicity,
    verify_parameter_theorem,
)
from .intlin import IntegerMatrix

EXIT_PASS, EXIT_FAIL, EXIT_INVALID = 0, 1, 2
INVALID = "invalid"


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line, self.column = line, column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


@dataclass(frozen=True)
class MatrixInput:
    matrix: IntegerMatrix
    label: str | None = None
    beta: tuple[Fraction, ...] | None = None
    seed: int | None = None


# --------------------------------------------------------------------------
# parsing


def _json_location(text: str, needle_row: int) -> tuple[int, int]:
    """Best-effort line/column of the ``needle_row``-th inner ``[`` of the matrix."""
    start = text.find('"matrix"')
    count = -1
    depth = 0
    for pos in range(max(start, 0), len(text)):
        ch = text[pos]
        if ch == "[":
            depth += 1
            if depth == 2:
                count += 1
                if count == needle_row:
                    line = text.count("\n", 0, pos) + 1
                    return line, pos - (text.rfind("\n", 0, pos) + 1) + 1
        elif ch == "]":
            depth -= 1
    return 1, 1


def _parse_beta(raw) -> tuple[Fraction, ...]:
    if isinstance(raw, str):
        raw = [p for p in raw.split(",") if p.strip()]
    if not isinstance(raw, list):
        raise ParseError("beta must be a list of rationals")
    out = []
    for v in raw:
        if isinstance(v, bool) or not isinstance(v, (int, str)):
            raise ParseError(f"beta entry {v!r} is not an integer or a rational string like '1/2'")
        try:
            out.append(Fraction(str(v).strip()))
        except ValueError:
            raise ParseError(f"beta entry {v!r} is not a rational number") from None
    return tuple(out)


def _check_rows(rows: list[list[int]], locate: Callable[[int], tuple[int, int]]) -> IntegerMatrix:
    if not rows:
        raise ParseError("matrix has no rows", 1, 1)
    width = len(rows[0])
    if width == 0:
        raise ParseError("matrix has an empty row", *locate(0))
    for i, row in enumerate(rows):
        if len(row) != width:
            raise ParseError(f"ragged matrix: row {i + 1} has {len(row)} entries, expected {width}", *locate(i))
    return IntegerMatrix(rows)


def _parse_json(text: str) -> MatrixInput:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno) from None
    if not isinstance(doc, dict) or "matrix" not in doc:
        raise ParseError('expected an object with a "matrix" field', 1, 1)
    unknown = set(doc) - {"matrix", "label", "beta", "seed"}
    if unknown:
        raise ParseError(f"unknown field(s): {', '.join(sorted(unknown))}", 1, 1)
    raw = doc["matrix"]
    if not isinstance(raw, list) or not all(isinstance(r, list) for r in raw):
        raise ParseError('"matrix" must be a list of rows', *_json_location(text, 0))
    for i, row in enumerate(raw):
        for j, v in enumerate(row):
            if isinstance(v, bool) or not isinstance(v, int):
                line, col = _json_location(text, i)
                raise ParseError(f"entry ({i + 1}, {j + 1}) = {v!r} is not an integer", line, col)
    matrix = _check_rows(raw, lambda i: _json_location(text, i))
    label = doc.get("label")
    if label is not None and not isinstance(label, str):
        raise ParseError('"label" must be a string')
    beta = None if doc.get("beta") is None else _parse_beta(doc["beta"])
    seed = doc.get("seed")
    if seed is not None and (isinstance(seed, bool) or not isinstance(seed, int)):
        raise ParseError('"seed" must be an integer')
    return MatrixInput(matrix, label, beta, seed)


_TOKEN = re.compile(r"[^\s,]+")


def _parse_grid(text: str) -> MatrixInput:
    rows: list[list[int]] = []
    where: list[tuple[int, int]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if line.split("#", 1)[0].strip() == "":
            continue
        row = []
        for m in _TOKEN.finditer(line.split("#", 1)[0]):
            tok = m.group()
            if not re.fullmatch(r"[+-]?\d+", tok):
                raise ParseError(f"{tok!r} is not an integer", lineno, m.start() + 1)
            row.append(int(tok))
        rows.append(row)
        where.append((lineno, 1))
    return MatrixInput(_check_rows(rows, lambda i: where[i]))


def parse_input(text: str) -> MatrixInput:
    """Read a JSON document or a whitespace/comma separated integer grid."""
    if text.lstrip().startswith("{"):
        return _parse_json(text)
    return _parse_grid(text)


def render_input(inp: MatrixInput) -> str:
    """JSON text that :func:`parse_input` maps back to ``inp``."""
    doc: dict = {"matrix": inp.matrix.to_lists()}
    if inp.label is not None:
        doc["label"] = inp.label
    if inp.beta is not None:
        doc["beta"] = [str(b) for b in inp.beta]
    if inp.seed is not None:
        doc["seed"] = inp.seed
    return json.dumps(doc)


# --------------------------------------------------------------------------
# commands


def _faces(A, samples, seed) -> list[Verdict]:
    listing = [
        {"face": f.label(), "dim": f.dim, "normal": [str(c) for c in f.normal]} for f in enumerate_faces(A)
    ]
    audit = face_dimension_audit(A)
    audit.details["listing"] = listing
    return [audit]


def _char_ideal(A, samples, seed) -> list[Verdict]:
    v = verify_holonomicity(A)
    v.details.update(characteristic_summary(A))
    return [v]


def _dim(A, samples, seed) -> list[Verdict]:
    return [verify_parameter_theorem(A), verify_holonomicity(A)]


def _single(stage: str):
    return lambda A, samples, seed: [STAGES[stage](A, samples, seed)]


COMMANDS: dict[str, Callable] = {
    "toric": _single("toric"),
    "faces": _faces,
    "char-ideal": _char_ideal,
    "dim": _dim,
    "check": None,  # every stage
    "homogenize": _single("homogenization"),
    "fibers": _single("family"),
    "transversality": _single("transversality"),
}


def _invalid(command: str, message: str, hypothesis: str | None = None) -> dict:
    doc = {"engine": "gkzcert", "version": __version__, "command": command, "status": INVALID, "error": message}
    if hypothesis:
        doc["hypothesis"] = hypothesis
    return doc


def run(command: str, inp: MatrixInput, seed: int | None = None, samples: int = 3) -> tuple[dict, int]:
    """Run one command and return the report document and the exit code."""
    if command not in COMMANDS:
        return _invalid(command, f"unknown command {command!r}"), EXIT_INVALID
    A = inp.matrix
    seed = seed if seed is not None else (inp.seed if inp.seed is not None else 0)
    if samples < 1:
        return _invalid(command, "--samples must be at least 1"), EXIT_INVALID
    try:
        validate(A)
        if inp.beta is not None and len(inp.beta) != A.d:
            raise ValueError(f"beta needs {A.d} entries, got {len(inp.beta)}")
        verdicts: list[Verdict] = []
        timings: dict[str, float] = {}
        if command == "check":
            for name, stage in STAGES.items():
                t0 = time.perf_counter()
                verdicts.append(stage(A, samples, seed))
                timings[name] = round(time.perf_counter() - t0, 6)
        else:
            t0 = time.perf_counter()
            verdicts = COMMANDS[command](A, samples, seed)
            timings[command] = round(time.perf_counter() - t0, 6)
    except HypothesisError as e:
        return _invalid(command, str(e), e.hypothesis), EXIT_INVALID
    except (InvalidInstanceError, ValueError) as e:
        return _invalid(command, str(e)), EXIT_INVALID
    failed = [v.check for v in verdicts if v.status == FAIL]
    doc = {
        "engine": "gkzcert",
        "version": __version__,
        "command": command,
        "input": {
            "matrix": A.to_lists(),
            "label": inp.label,
            "beta": None if inp.beta is None else [str(b) for b in inp.beta],
        },
        "seed": seed,
        "samples": samples,
        "verdicts": [v.to_dict() for v in verdicts],
        "status": FAIL if failed else PASS,
        "timings": timings,
    }
    if failed:
        doc["error"] = (
            f"verdict(s) failed: {', '.join(failed)}. Valid input should never fail; this indicates an engine bug."
        )
    return doc, EXIT_FAIL if failed else EXIT_PASS


def canonical(doc: dict) -> str:
    """Deterministic serialisation with wall-clock timings removed."""
    return json.dumps({k: v for k, v in doc.items() if k != "timings"}, sort_keys=True)


# --------------------------------------------------------------------------
# output


def _fmt_value(v) -> str:
    if isinstance(v, list):
        if all(not isinstance(x, (dict, list)) for x in v):
            return "[" + ", ".join(str(x) for x in v) + "]"
        return f"<{len(v)} entries>"
    return str(v)


def format_text(doc: dict) -> str:
    if doc["status"] == INVALID:
        msg = f"invalid input: {doc['error']}"
        return msg
    lines = []
    A = doc["input"]["matrix"]
    head = doc["input"]["label"] or "A"
    lines.append(f"{head} = {A}  ({len(A)} x {len(A[0])}), seed {doc['seed']}")
    for v in doc["verdicts"]:
        lines.append(f"[{v['status']}] {v['check']}")
        for key, val in v["details"].items():
            if isinstance(val, list) and val and isinstance(val[0], dict):
                lines.append(f"    {key}:")
                for row in val:
                    lines.append("      " + "  ".join(f"{k}={_fmt_value(x)}" for k, x in row.items()))
            else:
                lines.append(f"    {key}: {_fmt_value(val)}")
        if v.get("reason"):
            lines.append(f"    reason: {v['reason']}")
        if v["check"] == "holonomicity":
            n, dim = len(A[0]), v["details"]["char_dim"]
            lines.append(f"    char dim = {dim} = n" if dim == n else f"    char dim = {dim}, but n = {n}")
    lines.append(f"status: {doc['status']}")
    if doc.get("error"):
        lines.append(doc["error"])
    return "\n".join(lines)


def emit(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2, sort_keys=True)
    return format_text(doc)


# --------------------------------------------------------------------------
# batch mode


def _corpus_files(directory: Path) -> list[Path]:
    return sorted(p for p in directory.iterdir() if p.is_file() and p.suffix in {".json", ".txt", ".csv"})


def _run_file(args: tuple) -> tuple[str, dict, int]:
    path, command, seed, samples, beta = args
    try:
        inp = parse_input(Path(path).read_text())
    except ParseError as e:
        return path, _invalid(command, f"{path}: {e}"), EXIT_INVALID
    if beta is not None:
        inp = MatrixInput(inp.matrix, inp.label, beta, inp.seed)
    doc, code = run(command, inp, seed, samples)
    return path, doc, code


def run_corpus(directory: Path, command: str, seed, samples, beta, fmt: str, jobs: int, out) -> int:
    files = _corpus_files(directory)
    if not files:
        print(f"no input files in {directory}", file=sys.stderr)
        return EXIT_INVALID
    tasks = [(str(p), command, seed, samples, beta) for p in files]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_file, tasks))
    else:
        results = [_run_file(t) for t in tasks]
    worst = max(code for _, _, code in results)
    if fmt == "json":
        out.write(json.dumps({"results": [{"file": Path(p).name, **d} for p, d, _ in results]}, indent=2, sort_keys=True))
        out.write("\n")
        return worst
    width = max(len(Path(p).name) for p, _, _ in results)
    out.write(f"{'file':<{width}}  {'shape':<7}  status   failing\n")
    for p, d, _ in results:
        shape = ""
        failing = ""
        if "input" in d:
            M = d["input"]["matrix"]
            shape = f"{len(M)}x{len(M[0])}"
            failing = ", ".join(v["check"] for v in d["verdicts"] if v["status"] == FAIL)
        else:
            failing = d.get("error", "")
        out.write(f"{Path(p).name:<{width}}  {shape:<7}  {d['status']:<7}  {failing}\n")
    counts = {s: sum(1 for _, d, _ in results if d["status"] == s) for s in (PASS, FAIL, INVALID)}
    out.write(f"{len(results)} inputs: {counts[PASS]} pass, {counts[FAIL]} fail, {counts[INVALID]} invalid\n")
    return worst


# --------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gkzcert", description=__doc__.split("\n\n")[0])
    p.add_argument("command", choices=list(COMMANDS))
    p.add_argument("input", nargs="?", default="-", help="input file (JSON or integer grid); '-' reads stdin")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--seed", type=int, default=None, help="random seed (default: input's seed, else 0)")
    p.add_argument("--samples", type=int, default=3)
    p.add_argument("--beta", default=None, help="comma separated rationals, echoed in the report")
    p.add_argument("--corpus", type=Path, default=None, metavar="DIR", help="run over every input file in DIR")
    p.add_argument("--jobs", type=int, default=1, help="worker processes in corpus mode")
    p.add_argument("--version", action="version", version=f"gkzcert {__version__}")
    return p


def main(argv: list[str] | None = None, stdin=None, stdout=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        beta = None if args.beta is None else _parse_beta(args.beta)
    except ParseError as e:
        stdout.write(emit(_invalid(args.command, f"--beta: {e}"), args.format) + "\n")
        return EXIT_INVALID
    if args.corpus is not None:
        if not args.corpus.is_dir():
            print(f"{args.corpus} is not a directory", file=sys.stderr)
            return EXIT_INVALID
        return run_corpus(args.corpus, args.command, args.seed, args.samples, beta, args.format, args.jobs, stdout)
    try:
        text = stdin.read() if args.input == "-" else Path(args.input).read_text()
    except OSError as e:
        stdout.write(emit(_invalid(args.command, str(e)), args.format) + "\n")
        return EXIT_INVALID
    try:
        inp = parse_input(text)
    except ParseError as e:
        stdout.write(emit(_invalid(args.command, str(e)), args.format) + "\n")
        return EXIT_INVALID
    if beta is not None:
        inp = MatrixInput(inp.matrix, inp.label, beta, inp.seed)
    doc, code = run(args.command, inp, args.seed, args.samples)
    stdout.write(emit(doc, args.format) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
