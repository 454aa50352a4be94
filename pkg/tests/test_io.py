import json

import numpy as np
import pytest

from facialnp import io
from facialnp.catalog import catalog
from facialnp.errors import MultipleTargetValues, ProblemValidationError
from facialnp.interp import Mode

DOC = {"space": "halfplane", "xi": 0.0, "mode": "relaxed",
       "nodes": [{"face": 1, "edge": 0.0, "interior": {"re": 0.0, "im": 1.0}, "slope": 1.0},
                 {"face": 2, "edge": 0.0, "interior": {"re": 0.0, "im": 1.0}, "slope": 1.0}]}


def test_parse_and_roundtrip():
    problem, mode, f = io.parse_problem(DOC)
    assert mode is Mode.RELAXED and f is None
    assert [n.face for n in problem.nodes] == [1, 2]
    again, mode2, _ = io.parse_problem(json.loads(io.dumps(io.problem_to_dict(problem, mode))))
    assert again == problem and mode2 is mode


def test_disk_problem_keeps_complex_edges():
    doc = {"space": "disk", "xi": {"re": 0.0, "im": 1.0},
           "nodes": [{"face": 1, "edge": {"re": 0.0, "im": -1.0}, "interior": 0.3, "slope": 2}]}
    problem, mode, _ = io.parse_problem(doc)
    assert mode is Mode.STRICT and problem.nodes[0].edge == -1j
    assert io.parse_problem(io.problem_to_dict(problem))[0] == problem


@pytest.mark.parametrize("doc", [
    {**DOC, "xi": [0.0, 1.0]},
    {**DOC, "xi_face2": 1.0},
    {**DOC, "targets": [0.0, 1.0]},
    {**DOC, "nodes": [{**DOC["nodes"][0], "xi": 0.5}]},
])
def test_multiple_target_values(doc):
    with pytest.raises(MultipleTargetValues):
        io.parse_problem(doc)


@pytest.mark.parametrize("doc", [
    [],
    {**DOC, "colour": "red"},
    {"space": "halfplane", "xi": 0.0},
    {**DOC, "nodes": [{"face": 3, "edge": 0.0, "interior": 1.0, "slope": 1.0}]},
    {**DOC, "nodes": [{"face": 1, "edge": 0.0, "interior": {"re": 0, "im": 1}, "slope": True}]},
    {**DOC, "nodes": [{"face": 1, "edge": 0.0, "interior": {"re": 0, "im": 1}}]},
    {**DOC, "mode": "lenient"},
    {**DOC, "xi": "zero"},
])
def test_schema_errors(doc):
    with pytest.raises(ProblemValidationError):
        io.parse_problem(doc)


def test_fspec_forms(tmp_path):
    assert io.parse_fspec("const:0") == catalog("const", c=0.0, arity=2)
    assert io.parse_fspec("log:x=0.5,arity=2") == catalog("log", x=0.5, arity=2)
    assert io.parse_fspec("herglotz:atoms=[[1,2]]") == catalog("herglotz", atoms=[(1, 2)])
    assert io.parse_fspec("ratex") == catalog("ratex")
    assert io.parse_fspec({"name": "psi"}) == catalog("psi")
    path = tmp_path / "f.json"
    io.write_json(path, {"function": catalog("psi")})
    assert io.parse_fspec("@" + str(path)) == catalog("psi")
    assert io.load_function(path) == catalog("psi")
    with pytest.raises(ValueError):
        io.parse_fspec("log:x")


def test_dumps_is_stable_and_strict_json():
    payload = {"b": 1 + 2j, "a": np.float64(np.inf), "c": [np.int64(3), None]}
    text = io.dumps(payload)
    assert text == io.dumps(payload)
    data = json.loads(text)
    assert list(data) == ["a", "b", "c"]
    assert data == {"a": "inf", "b": {"re": 1.0, "im": 2.0}, "c": [3, None]}
    with pytest.raises(TypeError):
        io.jsonable(object())


def test_trace_csv(tmp_path):
    path = tmp_path / "t.csv"
    io.write_trace_csv(path, [("p", 0.1, 1 + 1j, 2.0)])
    lines = path.read_text().splitlines()
    assert lines[0] == "path,t,quotient_re,quotient_im,value_re,value_im"
    assert lines[1] == "p,0.1,1.0,1.0,2.0,0.0"
