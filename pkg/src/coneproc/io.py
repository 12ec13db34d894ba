"""Input parsing (JSON and CSV trajectory files) and report assembly."""
from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from pathlib import Path

from . import __version__
from .cone import PolyCone
from .exactnum import to_rational
from .linalg import Mat
from .process import ConvexProcess, DataSet, from_constrained_linear, from_data

SCHEMA = "coneproc-report/1"


class InputError(ValueError):
    """Malformed input file; the message names the offending field or line."""


def _reject_float(text: str):
    raise InputError(f"binary floating-point number {text} is not exact; write it as a string such as \"{text}\"")


def _number(value, where: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise InputError(f"{where}: expected an integer or a \"p/q\" / decimal string, got {value!r}")
    try:
        return to_rational(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{where}: cannot parse {value!r} as an exact number ({exc})") from None


def _vector(value, n: int | None, where: str) -> tuple:
    if not isinstance(value, list):
        raise InputError(f"{where}: expected a list of numbers")
    v = tuple(_number(x, f"{where}[{i}]") for i, x in enumerate(value))
    if n is not None and len(v) != n:
        raise InputError(f"{where}: expected length {n}, got {len(v)}")
    return v


def _matrix(value, where: str) -> Mat:
    if not isinstance(value, list) or not value:
        raise InputError(f"{where}: expected a nonempty list of rows")
    rows = [_vector(r, None, f"{where}[{i}]") for i, r in enumerate(value)]
    if len({len(r) for r in rows}) != 1:
        raise InputError(f"{where}: rows have different lengths")
    return Mat(tuple(rows), len(rows[0]))


def load_json(path: Path) -> tuple[dict, bytes]:
    raw = path.read_bytes()
    try:
        doc = json.loads(raw.decode("utf-8"), parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise InputError(f"{path}: top level must be an object")
    return doc, raw


def dataset_from_doc(doc: dict) -> DataSet:
    n = doc.get("n")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InputError("n: expected a positive integer state dimension")
    if "trajectories" not in doc and "pairs" not in doc:
        raise InputError("input needs 'trajectories' or 'pairs'")
    trajectories = []
    for i, traj in enumerate(doc.get("trajectories", []) or []):
        if not isinstance(traj, list):
            raise InputError(f"trajectories[{i}]: expected a list of states")
        trajectories.append([_vector(s, n, f"trajectories[{i}][{k}]") for k, s in enumerate(traj)])
    pairs = []
    for i, p in enumerate(doc.get("pairs", []) or []):
        where = f"pairs[{i}]"
        if isinstance(p, dict):
            if "x" not in p or "y" not in p:
                raise InputError(f"{where}: expected keys 'x' and 'y'")
            pairs.append((_vector(p["x"], n, f"{where}.x"), _vector(p["y"], n, f"{where}.y")))
        elif isinstance(p, list) and len(p) == 2:
            pairs.append((_vector(p[0], n, f"{where}[0]"), _vector(p[1], n, f"{where}[1]")))
        else:
            raise InputError(f"{where}: expected [x, y] or {{\"x\": ..., \"y\": ...}}")
    d = DataSet.from_trajectories(n, trajectories, pairs)
    if d.T == 0:
        raise InputError("the data contain no nonzero pair")
    return d


def dataset_from_csv(path: Path) -> tuple[DataSet, bytes]:
    """CSV variant: first row ``n=<dim>``, one state per row, blank line between trajectories."""
    raw = path.read_bytes()
    lines = raw.decode("utf-8").splitlines()
    if not lines or not lines[0].strip().replace(" ", "").startswith("n="):
        raise InputError(f"{path}: line 1: expected 'n=<dim>'")
    try:
        n = int(lines[0].strip().replace(" ", "")[2:].rstrip(","))
    except ValueError:
        raise InputError(f"{path}: line 1: bad dimension") from None
    if n < 1:
        raise InputError(f"{path}: line 1: dimension must be positive")
    trajectories, cur = [], []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip().strip(","):
            if cur:
                trajectories.append(cur)
                cur = []
            continue
        cells = [c.strip() for c in line.split(",")]
        if len(cells) != n:
            raise InputError(f"{path}: line {lineno}: expected {n} values, got {len(cells)}")
        cur.append(tuple(_number(c, f"{path}: line {lineno}") for c in cells))
    if cur:
        trajectories.append(cur)
    d = DataSet.from_trajectories(n, trajectories)
    if d.T == 0:
        raise InputError(f"{path}: the data contain no nonzero pair")
    return d, raw


def load_dataset(path: Path) -> tuple[DataSet, bytes]:
    if path.suffix.lower() == ".csv":
        return dataset_from_csv(path)
    doc, raw = load_json(path)
    return dataset_from_doc(doc), raw


def _cone_from_doc(value, ambient: int, where: str) -> PolyCone:
    if not isinstance(value, dict) or not ({"generators", "inequalities"} & value.keys()):
        raise InputError(f"{where}: expected an object with 'generators' and/or 'inequalities'")
    gens = ineqs = None
    if "generators" in value:
        gens = [_vector(g, ambient, f"{where}.generators[{i}]") for i, g in enumerate(value["generators"])]
    if "inequalities" in value:
        ineqs = [_vector(a, ambient, f"{where}.inequalities[{i}]") for i, a in enumerate(value["inequalities"])]
    if gens is not None:
        return PolyCone(ambient, generators=gens)
    return PolyCone(ambient, inequalities=ineqs)


def process_from_doc(doc: dict) -> ConvexProcess:
    """A process from graph generators/inequalities, from (A, B, C), or from data."""
    n = doc.get("n")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InputError("n: expected a positive integer state dimension")
    if "trajectories" in doc or "pairs" in doc:
        return from_data(dataset_from_doc(doc))
    if "A" in doc:
        A = _matrix(doc["A"], "A")
        B = _matrix(doc["B"], "B") if "B" in doc else Mat.zeros(n, 0)
        if A.shape != (n, n) or B.nrows != n:
            raise InputError("A must be n x n and B must have n rows")
        if "C" not in doc:
            raise InputError("C: constraint cone is required with A")
        return from_constrained_linear(A, B, _cone_from_doc(doc["C"], n + B.cols, "C"))
    if "generators" in doc or "inequalities" in doc:
        return ConvexProcess(n, _cone_from_doc(doc, 2 * n, "graph"))
    raise InputError("input needs graph 'generators'/'inequalities', 'A'/'B'/'C', or data")


def load_process(path: Path) -> tuple[ConvexProcess, bytes]:
    if path.suffix.lower() == ".csv":
        d, raw = dataset_from_csv(path)
        return from_data(d), raw
    doc, raw = load_json(path)
    return process_from_doc(doc), raw


def digest(raw: bytes) -> str:
    return "sha256:" + hashlib.sha256(raw).hexdigest()


def envelope(command: str, raw: bytes, options: dict, reports: list, seconds: float) -> dict:
    return {
        "schema": SCHEMA,
        "tool_version": __version__,
        "command": command,
        "input_digest": digest(raw),
        "options": options,
        "reports": reports,
        "timing": {"seconds": round(seconds, 6)},
    }


def dump(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False, ensure_ascii=False) + "\n"
