import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from facialnp import expr as E
from facialnp.catalog import catalog, membership_scan, sample_domain
from facialnp.errors import ConstantFunction, NotBPoint, ParamOutOfRange
from facialnp.expr import evaluate, evaluate_arrays
from facialnp.julia import AngularData, angular_derivative, augment, pole_strength, predicted_derivative, reduce

import oracles


def test_angular_identity():
    d = angular_derivative(catalog("identity"), 0.0).data
    assert d.a0 == pytest.approx(0, abs=1e-12) and d.a1 == pytest.approx(1, abs=1e-12)


def test_angular_neg_recip_at_one():
    d = angular_derivative(catalog("neg_recip"), 1.0).data
    assert d.a0 == pytest.approx(-1, abs=1e-6) and d.a1 == pytest.approx(1, abs=1e-6)


def test_angular_half_slope():
    d = angular_derivative(catalog("linear", b=0.5), 0.0).data
    assert d.a1 == pytest.approx(0.5, abs=1e-12)


def test_not_a_b_point():
    # -1/z has a pole at 0: Im f(iy)/y = 1/y^2 grows without bound
    with pytest.raises(NotBPoint):
        angular_derivative(catalog("neg_recip"), 0.0)


def test_constant_has_no_angular_derivative():
    with pytest.raises(ConstantFunction):
        angular_derivative(catalog("const", c=2.0), 0.0)
    with pytest.raises(ConstantFunction):
        reduce(catalog("const", c=2.0), AngularData(0, 2, 1))
    with pytest.raises(ParamOutOfRange):
        AngularData(0, 0, 0)


def test_reduce_examples():
    z = np.array([1j, 2 + 0.5j, -3 + 4j])
    g = reduce(catalog("identity"), AngularData(0, 0, 1))
    assert np.allclose(evaluate_arrays(g, z), 0, atol=1e-15)
    g = reduce(catalog("neg_recip"), AngularData(1, -1, 1))
    assert evaluate(g, 1j) == pytest.approx(-1, abs=1e-12)
    assert np.allclose(evaluate_arrays(g, z), -1, atol=1e-12)
    f = E.shifted(catalog("linear", b=2.0), 3.0)
    g = reduce(f, AngularData(0, 3, 2))
    assert np.allclose(evaluate_arrays(g, z), 0, atol=1e-15)


def test_augment_examples():
    z = np.array([1j, 2 + 0.5j, -3 + 4j])
    f = augment(catalog("const", c=0.0), 0, 0, 1)
    assert np.allclose(evaluate_arrays(f, z), z, atol=1e-15)
    f = augment(catalog("neg_recip"), 0, 0, 1)
    assert np.allclose(evaluate_arrays(f, z), z / 2, atol=1e-15)
    assert angular_derivative(f, 0.0).data.a1 == pytest.approx(0.5, abs=1e-6)
    f = augment(catalog("log"), 0, 0, 1)
    assert angular_derivative(f, 0.0).data.a1 == pytest.approx(1, abs=1e-4)


def test_fprime_from_high_precision_oracle():
    # 1/f'(0) for f = augment(-1/z + log z, 0, 0, 2) taken directly in 50 digits
    g = E.nonneg_sum([catalog("neg_recip"), catalog("log")])
    f = augment(g, 0, 0, 2.0)

    def quotient(t):
        w = mp.mpc(0, t)
        gv = -1 / w + mp.log(w)
        fv = 2 * w / (1 - 2 * w * gv)
        return mp.im(fv) / t

    want = oracles.mp_limit(quotient).real
    assert want == pytest.approx(1 / (1 / 2 + 1), abs=1e-12)
    assert angular_derivative(f, 0.0).data.a1 == pytest.approx(want, abs=1e-6)
    assert predicted_derivative(g, 0.0, 2.0) == pytest.approx(want, abs=1e-6)


ROUNDTRIP = [
    ("identity", {}, 0.0), ("linear", {"b": 3.0}, 1.0), ("neg_recip", {"x": 0.0}, 1.0),
    ("log", {"x": 0.0}, 2.0), ("herglotz", {"a": 1.0, "b": 0.5, "atoms": [(1.0, 3.0)]}, -1.0),
    ("neg_cot", {"x": 0.0}, 0.5), ("power", {"x": -1.0, "alpha": 0.5}, 1.0),
]


@pytest.mark.parametrize("name,params,x", ROUNDTRIP)
def test_augment_reduce_roundtrip(name, params, x):
    f = catalog(name, **params)
    d = angular_derivative(f, x).data
    g = reduce(f, d)
    assert membership_scan(g, 10_000, 1e-8).passed
    back = augment(g, d.x, d.a0, d.a1)
    z = sample_domain("P", 1, 100, 9)[0]
    assert np.max(np.abs(evaluate_arrays(back, z) - evaluate_arrays(f, z))) < 1e-10


def test_reduce_unwraps_matching_augmentation():
    g = catalog("log")
    f = augment(g, 0.5, 1.0, 2.0)
    assert reduce(f, AngularData(0.5, 1.0, 2.0)).node == g.node


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["log", "neg_recip", "neg_cot", "herglotz", "power", "const"]),
       st.floats(0.05, 10), st.floats(-2, 2))
def test_augmentation_bound_and_fprime(name, a1, a0):
    params = {"herglotz": {"atoms": [(1.0, 0.0), (0.5, 2.0)]}, "power": {"alpha": 0.7}}.get(name, {})
    g = catalog(name, **params)
    f = augment(g, 0.0, a0, a1)
    assert membership_scan(f, 2000, 1e-9).passed
    est = angular_derivative(f, 0.0).data
    assert est.a0 == pytest.approx(a0, abs=1e-6)
    assert est.a1 <= a1 + 1e-6
    lim = pole_strength(g, 0.0).extrapolated.imag
    assert 1 / est.a1 - 1 / a1 == pytest.approx(lim, abs=1e-4)
