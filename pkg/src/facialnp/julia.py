"""Julia reduction and augmentation of one-variable Pick functions at real points.

For ``f`` with a B-point at real ``x`` (value ``a0``, angular derivative
``a1``) the reduction is ``g = -1/(f - a0) + 1/(a1 (z - x))``; augmentation
inverts it: ``1/(f - a0) = 1/(a1 (z - x)) - g``.  An augmented ``f`` has
angular derivative ``f'(x)`` with ``1/f'(x) = 1/a1 + lim y Im g(x + iy)``, so
``f'(x) <= a1`` with equality exactly when ``y g(x + iy) -> 0``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConstantFunction, NonRealBoundaryValue, NotBPoint, ParamOutOfRange
from .expr import Augmentation, FnClass, PickExpr, Reduction, evaluate_arrays, is_constant
from .geometry import geometric_scales
from .limits import LIMIT_TOL, LimitEstimate, extrapolate


@dataclass(frozen=True)
class AngularData:
    x: float
    a0: float
    a1: float

    def __post_init__(self):
        if not self.a1 > 0:
            raise ParamOutOfRange(f"angular derivative must be positive, got {self.a1}")


@dataclass(frozen=True)
class AngularEstimate:
    data: AngularData
    value: LimitEstimate
    quotient: LimitEstimate


def _vertical(f: PickExpr, x: float, scales: np.ndarray, other: complex | None, j: int):
    z = x + 1j * scales
    if f.arity == 1:
        return evaluate_arrays(f, z)
    rest = np.full_like(z, other if other is not None else 1j)
    return evaluate_arrays(f, z, rest) if j == 1 else evaluate_arrays(f, rest, z)


def angular_derivative(f: PickExpr, x: float, t0: float = 0.1, ratio: float = 0.5,
                       steps: int = 25, tol: float = LIMIT_TOL, *, other: complex | None = None,
                       j: int = 1) -> AngularEstimate:
    """Boundary value and angular derivative of ``f`` at real ``x`` along ``x + iy``.

    For two-variable ``f`` the other coordinate is held at ``other``.
    """
    scales = geometric_scales(t0, ratio, steps)
    vals = _vertical(f, x, scales, other, j)
    quot = vals.imag / scales
    q_est = extrapolate(scales, quot, tol)
    if q_est.divergent and np.all(np.diff(quot[-4:]) > 0):
        raise NotBPoint(x, q_est)
    v_est = extrapolate(scales, vals, tol)
    a0 = v_est.extrapolated
    if abs(a0.imag) > tol:
        raise NonRealBoundaryValue(x, a0)
    a1 = q_est.extrapolated.real
    if not a1 > 0:
        raise ConstantFunction(f"Im f(x+iy)/y -> {a1:.3g}; f is constant along the probe")
    return AngularEstimate(AngularData(float(x), float(a0.real), float(a1)), v_est, q_est)


def reduce(f: PickExpr, d: AngularData, j: int = 1) -> PickExpr:
    """Reduction of ``f`` at ``d.x`` (in variable ``j`` for two-variable ``f``)."""
    if is_constant(f):
        raise ConstantFunction("cannot reduce a constant function")
    node = f.node
    if isinstance(node, Augmentation) and (node.x, node.a0, node.a1, node.j) == (d.x, d.a0, d.a1, j):
        # exact inverse: hand back the augmented function itself
        return PickExpr(node.child, FnClass.of("P", max(f.arity, j)))
    return PickExpr(Reduction(f.node, d.x, d.a0, d.a1, j), FnClass.of("P", max(f.arity, j)))


def augment(g: PickExpr, x: float, a0: float, a1: float, j: int = 1) -> PickExpr:
    """Augmentation of ``g`` at ``x`` by ``a0, a1``; always a nonconstant Pick function."""
    if not a1 > 0:
        raise ParamOutOfRange(f"a1 must be positive, got {a1}")
    return PickExpr(Augmentation(g.node, float(x), float(a0), float(a1), j),
                    FnClass.of("P", max(g.arity, j)))


def pole_strength(g: PickExpr, x: float, t0: float = 0.1, ratio: float = 0.5, steps: int = 25,
                  tol: float = LIMIT_TOL, *, other: complex | None = None, j: int = 1) -> LimitEstimate:
    """Estimate of ``lim_{y->0+} y g(x + iy)``."""
    scales = geometric_scales(t0, ratio, steps)
    return extrapolate(scales, scales * _vertical(g, x, scales, other, j), tol)


def predicted_derivative(g: PickExpr, x: float, a1: float, **kw) -> float:
    """``f'(x)`` of the augmentation, from ``1/f'(x) = 1/a1 + lim y Im g(x + iy)``."""
    lim = pole_strength(g, x, **kw).extrapolated.imag
    return 1.0 / (1.0 / a1 + lim)
