import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from facialnp.catalog import catalog, membership_scan, sample_domain
from facialnp.cayley import (BoundaryDatum, CircleRotation, cayley_value, choose_rotation, identity_residual,
                             inverse_cayley_value, map_boundary_datum, pick_from_schur, schur_from_pick)
from facialnp.errors import IdenticallyOne, PoleAtMinusI, PoleAtOne
from facialnp.expr import CayleyDrop, CayleyLift, FnClass, PickExpr, evaluate, evaluate_arrays, schur_const
from facialnp.geometry import FacePoint, Point2, Space


def test_variable_map_examples():
    assert cayley_value(0) == 1j
    assert cayley_value(-1) == pytest.approx(0, abs=1e-16)
    assert inverse_cayley_value(2j) == pytest.approx(1 / 3, abs=1e-16)
    assert cayley_value(inverse_cayley_value(2j)) == pytest.approx(2j, abs=1e-15)
    p = cayley_value(Point2(0, -1))
    assert isinstance(p, Point2) and p.c1 == 1j


def test_poles():
    with pytest.raises(PoleAtOne):
        cayley_value(1)
    with pytest.raises(PoleAtMinusI):
        inverse_cayley_value(-1j)


def test_variable_roundtrip_disk_and_window():
    lam = sample_domain("S", 1, 10_000, 1)[0]
    assert np.max(np.abs(inverse_cayley_value(cayley_value(lam)) - lam)) < 1e-12
    z = sample_domain("P", 1, 10_000, 1)[0]
    assert np.max(np.abs(cayley_value(inverse_cayley_value(z)) - z)) < 1e-12


def test_function_maps():
    h0 = pick_from_schur(schur_const(0.0, 2))
    assert evaluate(h0, (1j, 3j)) == pytest.approx(1j)
    h = pick_from_schur(catalog("schur_coord", j=1, arity=2))
    assert evaluate(h, (1j, 2j)) == pytest.approx(1j, abs=1e-15)
    z = np.array([0.3 + 2j, -4 + 0.1j])
    assert np.allclose(evaluate_arrays(h, z, z), z, atol=1e-13)
    with pytest.raises(IdenticallyOne):
        pick_from_schur(schur_const(1.0, 2))
    assert schur_from_pick(pick_from_schur(catalog("ratex"))).node == catalog("ratex").node


@pytest.mark.parametrize("name", ["ratex", "psi", "bidisk_product"])
def test_lifted_rational_inner_is_pick(name):
    h = pick_from_schur(catalog(name))
    rep = membership_scan(h, 10_000, 1e-10)
    assert rep.passed


def test_lift_commutes_with_variable_map():
    phi = catalog("ratex")
    h = pick_from_schur(phi)
    z1, z2 = sample_domain("P", 2, 2000, 5)
    lhs = evaluate_arrays(h, z1, z2)
    v = evaluate_arrays(phi, inverse_cayley_value(z1), inverse_cayley_value(z2))
    rhs = 1j * (1 + v) / (1 - v)
    assert np.max(np.abs(lhs - rhs) / np.maximum(1, np.abs(rhs))) < 1e-12


def _disk_datum(face, theta, w, omega_angle, alpha):
    edge = np.exp(1j * theta)
    node = FacePoint("disk", face, edge, w)
    return BoundaryDatum(Space.DISK, node, np.exp(1j * omega_angle), alpha)


def test_datum_examples():
    d = map_boundary_datum(_disk_datum(1, np.pi, 0.0, np.pi, 1.0), CircleRotation())
    assert d.node.edge == pytest.approx(0, abs=1e-15)
    assert d.value == pytest.approx(0, abs=1e-15)
    assert d.slope == pytest.approx(1.0)
    d = map_boundary_datum(_disk_datum(1, np.pi / 2, 0.2, np.pi, 2.0), CircleRotation())
    assert d.node.edge == pytest.approx(-1, abs=1e-15)
    assert d.value == pytest.approx(0, abs=1e-15)
    assert d.slope == pytest.approx(1.0)
    assert d.node.interior == pytest.approx(cayley_value(0.2))


def test_rotation_when_edge_or_value_is_one():
    d = _disk_datum(1, 0.0, 0.3, 0.0, 1.5)
    m = map_boundary_datum(d)
    assert not m.rotation.is_identity
    back = map_boundary_datum(m)
    assert back.node.edge == pytest.approx(1, abs=1e-12)
    assert back.value == pytest.approx(1, abs=1e-12)
    assert back.slope == pytest.approx(1.5, abs=1e-12)


def test_choose_rotation_avoids_all_edges():
    edges = [1, -1, 1j]
    rot = choose_rotation(edges, [1], omega=1)
    assert all(abs(rot.pre[0].conjugate() * e - 1) > 1e-9 for e in edges)
    assert abs(rot.pre[1].conjugate() - 1) > 1e-9
    assert rot.post == -1


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([1, 2]), st.floats(0, 2 * np.pi), st.floats(0, 0.99), st.floats(0, 2 * np.pi),
       st.floats(0, 2 * np.pi), st.floats(0.01, 20))
def test_datum_roundtrip_and_identity(face, theta, r, phase, om, alpha):
    d = _disk_datum(face, theta, r * np.exp(1j * phase), om, alpha)
    m = map_boundary_datum(d)
    assert identity_residual(m) < 1e-12
    back = map_boundary_datum(m)
    assert back.node.edge == pytest.approx(d.node.edge, abs=1e-12)
    assert back.node.interior == pytest.approx(d.node.interior, abs=1e-12)
    assert back.value == pytest.approx(d.value, abs=1e-12)
    assert back.slope == pytest.approx(d.slope, rel=1e-12)


def test_schur_lift_drop_composition_inverts():
    phi = catalog("psi")
    both = PickExpr(CayleyDrop(CayleyLift(phi.node)), FnClass.S2)
    l1, l2 = sample_domain("S", 2, 10_000, 11)
    assert np.max(np.abs(evaluate_arrays(both, l1, l2) - evaluate_arrays(phi, l1, l2))) < 1e-12
