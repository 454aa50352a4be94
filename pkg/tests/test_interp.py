import numpy as np
import pytest

from facialnp import expr as E
from facialnp.catalog import catalog, membership_scan, sample_domain
from facialnp.errors import EmptyProblem, ProblemValidationError, VanishingConditionFailed
from facialnp.expr import evaluate, evaluate_arrays
from facialnp.geometry import FacePoint
from facialnp.interp import (InterpNode, InterpProblem, Mode, build_r, solve, solve_schur,
                             solve_single_node_pick, to_halfplane, wellposedness_scan)
from facialnp.verify import verify_solution

import oracles


def hp(xi, *nodes):
    return InterpProblem("halfplane", xi, tuple(InterpNode(*n) for n in nodes))


ONE = hp(0.0, (1, 0.0, 1j, 1.0))
TWO = hp(0.0, (1, 0.0, 1j, 1.0), (2, 0.0, 1j, 1.0))


def test_validation():
    with pytest.raises(EmptyProblem):
        hp(0.0)
    with pytest.raises(ProblemValidationError):
        hp(0.0, (1, 0.0, 1j, 0.0))
    with pytest.raises(ProblemValidationError):
        hp(0.0, (1, 0.0, 1j, 1.0), (1, 0.0, 2j, 1.0))
    with pytest.raises(ProblemValidationError):
        hp(0.5j, (1, 0.0, 1j, 1.0))
    with pytest.raises(ProblemValidationError):
        hp(0.0, (1, 0.0, -1j, 1.0))
    with pytest.raises(ProblemValidationError):
        InterpProblem("disk", 0.5, (InterpNode(1, 1, 0, 1),))
    # the same edge on different faces is allowed
    assert len(TWO.nodes) == 2


def test_r_examples():
    r = build_r(ONE)
    assert r((0.1j, 1j)) == pytest.approx(-10j)
    r = build_r(TWO)
    assert r((1j, 2j)) == pytest.approx(1 / 1j + 1 / 2j)
    r = build_r(hp(0.0, (1, 0.0, 1j, 1.0), (1, 2.0, 1j, 4.0)))
    v = r((1j, 1j))
    assert v == pytest.approx(1 / 1j + 1 / (4 * (1j - 2)))
    assert v.imag < 0


def test_r_has_negative_imaginary_part():
    r = build_r(hp(0.0, (1, -1.0, 1j, 0.5), (1, 2.0, 1j, 3.0), (2, 0.5, 2j, 1.5)))
    z1, z2 = sample_domain("P", 2, 10_000, 4)
    assert np.all(r.evaluate_arrays(z1, z2).imag < 0)


def test_single_node_constant_gives_identity():
    spec = solve(ONE, catalog("const", c=0.0, arity=2))
    z = (0.3 + 0.8j, 2j)
    assert evaluate(spec.h, z) == pytest.approx(z[0])
    rep = verify_solution(ONE, spec.h)
    assert rep.passed and rep.nodes[0].slope == pytest.approx(1, abs=1e-12)


def test_two_face_closed_form():
    spec = solve(TWO, catalog("const", c=0.0, arity=2))
    z1, z2 = sample_domain("P", 2, 200, 2)
    assert np.allclose(evaluate_arrays(spec.h, z1, z2), z1 * z2 / (z1 + z2), atol=1e-13)
    rep = verify_solution(TWO, spec.h)
    assert rep.passed
    for rec in rep.nodes:
        assert rec.slope == pytest.approx(1, abs=1e-4) and abs(rec.value) < 1e-6


def test_strict_rejects_non_vanishing_parameter():
    with pytest.raises(VanishingConditionFailed) as err:
        solve(ONE, catalog("neg_recip", x=0.0, arity=2))
    assert err.value.node_index == 0
    assert abs(err.value.estimate.extrapolated) == pytest.approx(1, abs=1e-3)


def test_relaxed_lowers_slope_as_predicted():
    problem = hp(0.0, (1, 1.5, 1j, 2.0))
    f = catalog("neg_recip", x=1.5, arity=2)
    spec = solve(problem, f, Mode.RELAXED)
    want, _ = oracles.node_slope_mp(0, [(1, 1.5, 2.0)], lambda a, b: -1 / (a - 1.5), 1, 1.5, 1j)
    assert want == pytest.approx(1 / (1 / 2 + 1), abs=1e-12)
    rec = verify_solution(problem, spec.h, mode="relaxed").nodes[0]
    assert rec.slope == pytest.approx(want, abs=1e-6)
    assert rec.slope < 2.0 and rec.slope_ok


def test_single_node_pick():
    x = FacePoint("halfplane", 1, 0.0, 1j)
    h = solve_single_node_pick(x, 0.0, 1.0, catalog("const", c=0.0, arity=2))
    assert evaluate(h, (0.2 + 1j, 1j)) == pytest.approx(0.2 + 1j)
    h = solve_single_node_pick(x, 0.0, 1.0, catalog("log", arity=2))
    assert membership_scan(h).passed
    z = np.array([0.5 + 0.5j])
    want = 1 / (1 / z - np.log(z))
    assert evaluate_arrays(h, z, z) == pytest.approx(want)
    with pytest.raises(VanishingConditionFailed):
        solve_single_node_pick(x, 0.0, 1.0, catalog("neg_cot", arity=2))


def test_single_node_agrees_with_solve():
    problem = hp(0.7, (1, -0.4, 2 + 1j, 1.3))
    g = E.nonneg_sum([catalog("log", x=2.0, arity=2), catalog("herglotz", atoms=[(1.0, 0.0)], j=2, arity=2)])
    a = solve(problem, g).h
    b = solve_single_node_pick(problem.nodes[0].face_point("halfplane"), 0.7, 1.3, g)
    z1, z2 = sample_domain("P", 2, 100, 8)
    assert np.max(np.abs(evaluate_arrays(a, z1, z2) - evaluate_arrays(b, z1, z2))) < 1e-12


def test_second_face_single_node():
    problem = hp(-1.0, (2, 3.0, 1j, 0.5))
    spec = solve(problem, catalog("log", x=-2.0, j=1, arity=2))
    assert verify_solution(problem, spec.h).passed


def test_wellposedness_scan_negative():
    spec = solve(TWO, catalog("log", arity=2))
    assert wellposedness_scan(spec) < 0


def test_disk_single_node_example():
    problem = InterpProblem("disk", -1, (InterpNode(1, -1, 0, 1.0),))
    phi = solve_schur(problem, catalog("const", c=0.0, arity=2))
    assert evaluate(phi, (0.5, 0)) == pytest.approx(0.5, abs=1e-12)
    problem = InterpProblem("disk", -1, (InterpNode(1, -1, 0, 2.0),))
    phi = solve_schur(problem, catalog("const", c=0.0, arity=2))
    assert membership_scan(phi).passed
    rep = verify_solution(problem, phi)
    assert rep.passed and rep.nodes[0].slope == pytest.approx(2, abs=1e-4)


def test_disk_rotation_pipeline():
    problem = InterpProblem("disk", 1, (InterpNode(1, 1, 0.2j, 1.5), InterpNode(2, -1j, 0.4, 0.7)))
    hp_problem, rot = to_halfplane(problem)
    assert not rot.is_identity
    phi = solve_schur(problem, catalog("log", x=5.0, arity=2))
    assert membership_scan(phi).passed
    rep = verify_solution(problem, phi)
    assert rep.passed, [(n.value, n.slope) for n in rep.nodes]


def test_verify_flags_wrong_slope():
    h = catalog("linear", b=2.0, arity=2)
    rep = verify_solution(ONE, h)
    assert not rep.passed
    assert rep.nodes[0].slope == pytest.approx(2.0, abs=1e-9)
    assert rep.nodes[0].value_ok and not rep.nodes[0].slope_ok
