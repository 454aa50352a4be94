"""JSON-shaped files: problems, function expressions, reports and CSV traces.

Complex numbers are written as ``{"re": .., "im": ..}``; reals as plain
numbers.  Output is produced with sorted keys and fixed float formatting so
that equal inputs give byte-identical files.
"""

from __future__ import annotations

import csv
import enum
import json
import re
from pathlib import Path

import numpy as np

from .catalog import catalog
from .errors import MultipleTargetValues, ProblemValidationError
from .expr import PickExpr, decode_complex, from_dict, to_dict
from .geometry import Point2
from .interp import InterpNode, InterpProblem, Mode
from .limits import LimitEstimate

PROBLEM_KEYS = {"space", "xi", "nodes", "mode", "f"}
NODE_KEYS = {"face", "edge", "interior", "slope"}
# keys that would attach a second target value to some node or face
TARGET_KEYS = {"xi", "value", "target", "xi1", "xi2", "xi_face1", "xi_face2", "targets", "values"}


def jsonable(obj):
    """Recursively convert reports to JSON-ready data."""
    if isinstance(obj, (bool, type(None), str)):
        return obj
    if isinstance(obj, enum.Enum):
        return jsonable(obj.value)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": float(obj.real), "im": float(obj.imag)}
    if isinstance(obj, Point2):
        return [jsonable(obj.c1), jsonable(obj.c2)]
    if isinstance(obj, PickExpr):
        return to_dict(obj)
    if isinstance(obj, InterpProblem):
        return problem_to_dict(obj)
    if isinstance(obj, LimitEstimate):
        return jsonable(obj.to_dict())
    if hasattr(obj, "to_dict"):
        return jsonable(obj.to_dict())
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [jsonable(v) for v in obj]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _finite(obj):
    # json has no inf/nan; write them as strings so files stay valid JSON
    if isinstance(obj, float) and not np.isfinite(obj):
        return str(obj)
    if isinstance(obj, dict):
        return {k: _finite(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_finite(v) for v in obj]
    return obj


def dumps(obj) -> str:
    return json.dumps(_finite(jsonable(obj)), sort_keys=True, indent=2, allow_nan=False) + "\n"


def write_json(path: str | Path, obj) -> None:
    Path(path).write_text(dumps(obj))


def read_json(path: str | Path):
    with open(path) as fh:
        return json.load(fh)


def _number(v, what: str) -> complex:
    if isinstance(v, bool):
        raise ProblemValidationError(f"{what}: expected a number, got {v!r}")
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, dict):
        try:
            return decode_complex(v)
        except (KeyError, TypeError, ValueError):
            pass
    raise ProblemValidationError(f"{what}: expected a number or {{'re', 'im'}}, got {v!r}")


def parse_problem(data: dict) -> tuple[InterpProblem, Mode, dict | str | None]:
    """Problem, mode and optional free-parameter spec from a problem document.

    A problem carries exactly one target value; documents that try to give
    nodes or faces their own targets raise :class:`MultipleTargetValues`.
    """
    if not isinstance(data, dict):
        raise ProblemValidationError("a problem document must be a JSON object")
    extra = set(data) - PROBLEM_KEYS
    if extra & TARGET_KEYS or isinstance(data.get("xi"), list):
        raise MultipleTargetValues("a facial problem has a single target value 'xi' shared by every node")
    if extra:
        raise ProblemValidationError(f"unknown problem keys: {sorted(extra)}")
    for key in ("space", "xi", "nodes"):
        if key not in data:
            raise ProblemValidationError(f"missing problem key {key!r}")
    if not isinstance(data["nodes"], list):
        raise ProblemValidationError("'nodes' must be a list")
    nodes = []
    for i, nd in enumerate(data["nodes"]):
        if not isinstance(nd, dict):
            raise ProblemValidationError(f"node {i} must be an object")
        if set(nd) & TARGET_KEYS:
            raise MultipleTargetValues(f"node {i} carries its own target value; use the shared 'xi'")
        if set(nd) != NODE_KEYS:
            raise ProblemValidationError(f"node {i} needs exactly the keys {sorted(NODE_KEYS)}")
        if nd["face"] not in (1, 2) or isinstance(nd["face"], bool):
            raise ProblemValidationError(f"node {i}: face must be 1 or 2")
        slope = _number(nd["slope"], f"node {i} slope")
        if slope.imag != 0:
            raise ProblemValidationError(f"node {i}: slope must be real")
        nodes.append(InterpNode(nd["face"], _number(nd["edge"], f"node {i} edge"),
                                _number(nd["interior"], f"node {i} interior"), slope.real))
    try:
        mode = Mode(data.get("mode", "strict"))
    except ValueError:
        raise ProblemValidationError(f"mode must be 'strict' or 'relaxed', got {data['mode']!r}") from None
    try:
        problem = InterpProblem(data["space"], _number(data["xi"], "xi"), tuple(nodes))
    except ProblemValidationError:
        raise
    except ValueError as exc:
        raise ProblemValidationError(str(exc)) from None
    return problem, mode, data.get("f")


def problem_to_dict(problem: InterpProblem, mode: Mode | None = None) -> dict:
    nodes = [{"face": int(n.face), "edge": n.edge if problem.space.value == "disk" else n.edge.real,
              "interior": n.interior, "slope": n.slope} for n in problem.nodes]
    xi = problem.xi if problem.space.value == "disk" else problem.xi.real
    out = {"space": problem.space, "xi": xi, "nodes": nodes}
    if mode is not None:
        out["mode"] = mode
    return jsonable(out)


def load_problem(path: str | Path):
    return parse_problem(read_json(path))


def _param(v: str):
    try:
        return json.loads(v)
    except json.JSONDecodeError:
        return v


def parse_fspec(spec: str | dict) -> PickExpr:
    """Function from ``const:0``, ``name:k=v,k=v``, ``name`` or ``@file.json``.

    Dict input is an expression document, ``{"name":.., "params":..}``, or
    a report whose ``function`` or ``solution`` entry is one of those.
    """
    if isinstance(spec, dict):
        if "name" in spec:
            return catalog(spec["name"], **spec.get("params", {}))
        for key in ("function", "solution"):
            if key in spec and "expr" not in spec:
                return parse_fspec(spec[key])
        return from_dict(spec)
    if spec.startswith("@"):
        return parse_fspec(read_json(spec[1:]))
    name, _, rest = spec.partition(":")
    if name == "const" and rest and "=" not in rest:
        return catalog("const", c=float(rest), arity=2)
    params = {}
    # split only on commas that start a new key=, so JSON lists survive
    for item in filter(None, re.split(r",(?=\s*\w+\s*=)", rest)):
        key, eq, val = item.partition("=")
        if not eq:
            raise ValueError(f"bad parameter {item!r} in function spec {spec!r}")
        params[key.strip()] = _param(val.strip())
    return catalog(name, **params)


def load_function(path: str | Path) -> PickExpr:
    return parse_fspec(read_json(path))


def write_trace_csv(path: str | Path, rows) -> None:
    """Rows of ``(label, t, quotient, value)``; complex columns split into re/im."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["path", "t", "quotient_re", "quotient_im", "value_re", "value_im"])
        for label, t, q, v in rows:
            q, v = complex(q), complex(v)
            w.writerow([label, repr(float(t)), repr(q.real), repr(q.imag), repr(v.real), repr(v.imag)])


def trace_rows(label: str, quotient: LimitEstimate, value: LimitEstimate):
    return [(label, t, q, v) for (t, q), (_, v) in zip(quotient.trace(), value.trace())]
