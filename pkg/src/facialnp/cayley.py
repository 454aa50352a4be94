"""Cayley correspondence between the bidisk and the bi-upper-half-plane.

Variables:  ``z = i (1 + lam) / (1 - lam)``,  ``lam = (z - i) / (z + i)``.
Functions:  ``h = i (1 + phi) / (1 - phi)``,  ``phi = (h - i) / (h + i)``.

Boundary data ``(tau, omega, alpha)`` on a disk face map to ``(x, xi, beta)``
on the matching half-plane face with ``beta = (1 - Re tau_e) / (1 - Re omega) * alpha``
where ``tau_e`` is the edge coordinate.  The map needs ``tau_e != 1`` and
``omega != 1``; otherwise a rotation of the circle is applied first and
recorded so it can be undone.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .errors import IdenticallyOne, PoleAtMinusI, PoleAtOne
from .expr import (PICK, SCHUR, CayleyDrop, CayleyLift, Const, FnClass, PickExpr, Rotation)
from .geometry import FacePoint, Point2, Space

POLE_TOL = 1e-12


def cayley_value(w):
    """``i (1 + w) / (1 - w)`` for numbers, arrays or :class:`Point2`."""
    if isinstance(w, Point2):
        return Point2(cayley_value(w.c1), cayley_value(w.c2))
    arr = np.asarray(w)
    if np.any(arr == 1):
        raise PoleAtOne("the Cayley map has a pole at 1")
    out = 1j * (1 + arr) / (1 - arr)
    return complex(out) if arr.ndim == 0 else out


def inverse_cayley_value(z):
    """``(z - i) / (z + i)`` for numbers, arrays or :class:`Point2`."""
    if isinstance(z, Point2):
        return Point2(inverse_cayley_value(z.c1), inverse_cayley_value(z.c2))
    arr = np.asarray(z)
    if np.any(arr == -1j):
        raise PoleAtMinusI("the inverse Cayley map has a pole at -i")
    out = (arr - 1j) / (arr + 1j)
    return complex(out) if arr.ndim == 0 else out


disk_to_halfplane = cayley_value
halfplane_to_disk = inverse_cayley_value


def pick_from_schur(phi: PickExpr) -> PickExpr:
    if phi.family != SCHUR:
        raise ValueError(f"expected a Schur-class expression, got {phi.declared_class.value}")
    if isinstance(phi.node, Const) and phi.node.value == 1:
        raise IdenticallyOne("the constant 1 has no Cayley image in the Pick class")
    if isinstance(phi.node, CayleyDrop):
        return PickExpr(phi.node.child, FnClass.of(PICK, phi.arity))
    return PickExpr(CayleyLift(phi.node), FnClass.of(PICK, phi.arity))


def schur_from_pick(h: PickExpr) -> PickExpr:
    if h.family != PICK:
        raise ValueError(f"expected a Pick-class expression, got {h.declared_class.value}")
    if isinstance(h.node, CayleyLift):
        return PickExpr(h.node.child, FnClass.of(SCHUR, h.arity))
    return PickExpr(CayleyDrop(h.node), FnClass.of(SCHUR, h.arity))


@dataclass(frozen=True)
class CircleRotation:
    """Frame change ``phi_rot(lam) = post * phi(pre1 lam1, pre2 lam2)``.

    In the rotated frame a boundary point ``tau`` becomes
    ``(conj(pre1) tau1, conj(pre2) tau2)`` and a value ``omega`` becomes
    ``post * omega``.
    """

    pre: tuple[complex, complex] = (1 + 0j, 1 + 0j)
    post: complex = 1 + 0j

    @property
    def is_identity(self) -> bool:
        return self.pre == (1, 1) and self.post == 1

    def point_to_frame(self, tau: Point2) -> Point2:
        return Point2(self.pre[0].conjugate() * tau.c1, self.pre[1].conjugate() * tau.c2)

    def point_from_frame(self, tau: Point2) -> Point2:
        return Point2(self.pre[0] * tau.c1, self.pre[1] * tau.c2)

    def undo(self, phi_rot: PickExpr) -> PickExpr:
        """Original-frame function from one solved in the rotated frame."""
        if self.is_identity:
            return phi_rot
        node = Rotation(phi_rot.node, (self.pre[0].conjugate(), self.pre[1].conjugate()),
                        self.post.conjugate())
        return PickExpr(node, phi_rot.declared_class)


_CANDIDATES = (1 + 0j, -1 + 0j, 1j, -1j) + tuple(cmath.exp(1j * cmath.pi * k / 7) for k in range(1, 14))


def _avoid_one(points) -> complex:
    """Candidate rotation ``u`` keeping every ``conj(u) p`` farthest from 1.

    The identity wins whenever no point is within 1 of the pole, so data
    away from 1 are mapped unrotated.
    """
    points = list(points)
    if all(abs(p - 1) >= 1 for p in points):
        return _CANDIDATES[0]
    return max(_CANDIDATES, key=lambda u: min(abs(u.conjugate() * p - 1) for p in points))


def choose_rotation(edges1=(), edges2=(), omega: complex = -1) -> CircleRotation:
    """Rotation making every edge coordinate and the target value differ from 1."""
    u1 = _avoid_one(edges1)
    u2 = _avoid_one(edges2)
    v = -1 + 0j if abs(omega - 1) < 1 else 1 + 0j
    return CircleRotation((u1, u2), v)


@dataclass(frozen=True)
class BoundaryDatum:
    """Interpolation datum at a facial boundary node.

    Disk: ``value`` is unimodular, ``slope`` is alpha.  Half-plane: ``value``
    is real, ``slope`` is beta.  ``rotation`` is the frame a half-plane datum
    was produced in (identity for data given directly).
    """

    space: Space
    node: FacePoint
    value: complex
    slope: float
    rotation: CircleRotation = CircleRotation()

    def __post_init__(self):
        object.__setattr__(self, "space", Space(self.space))
        object.__setattr__(self, "value", complex(self.value))
        if self.node.space is not self.space:
            raise ValueError("node and datum live in different spaces")
        if self.slope <= 0:
            raise ValueError(f"slope must be positive, got {self.slope}")
        if self.space is Space.DISK and abs(abs(self.value) - 1) > 1e-12:
            raise ValueError(f"disk boundary value {self.value} is not unimodular")
        if self.space is Space.HALFPLANE:
            if abs(self.value.imag) > 1e-12:
                raise ValueError(f"half-plane boundary value {self.value} is not real")
            object.__setattr__(self, "value", complex(self.value.real, 0.0))


def slope_disk_to_halfplane(edge: complex, omega: complex, alpha: float) -> float:
    return (1 - edge.real) / (1 - omega.real) * alpha


def slope_halfplane_to_disk(edge: complex, omega: complex, beta: float) -> float:
    return (1 - omega.real) / (1 - edge.real) * beta


def map_boundary_datum(d: BoundaryDatum, rotation: CircleRotation | None = None) -> BoundaryDatum:
    """Carry a datum to the other space; applying it twice returns the original."""
    if d.space is Space.DISK:
        face = d.node.face
        if rotation is None:
            edges = ([d.node.edge], []) if face == 1 else ([], [d.node.edge])
            rotation = choose_rotation(*edges, omega=d.value)
        tau = rotation.point_to_frame(d.node.as_point())
        omega = rotation.post * d.value
        x = cayley_value(tau)
        edge_tau = tau[int(face)]
        beta = slope_disk_to_halfplane(edge_tau, omega, d.slope)
        # the edge image is real in exact arithmetic
        node = FacePoint(Space.HALFPLANE, face, x[int(face)].real, x[3 - int(face)])
        return BoundaryDatum(Space.HALFPLANE, node, cayley_value(omega).real, beta, rotation)
    face = d.node.face
    rot = d.rotation
    tau_frame = inverse_cayley_value(d.node.as_point())
    omega_frame = inverse_cayley_value(d.value)
    alpha = slope_halfplane_to_disk(tau_frame[int(face)], omega_frame, d.slope)
    tau = rot.point_from_frame(tau_frame)
    omega = rot.post.conjugate() * omega_frame
    # snap the edge back onto the circle to kill rounding drift
    edge = tau[int(face)]
    edge = edge / abs(edge)
    node = FacePoint(Space.DISK, face, edge, tau[3 - int(face)])
    return BoundaryDatum(Space.DISK, node, omega / abs(omega), alpha)


def identity_residual(d: BoundaryDatum) -> float:
    """``max |(x + i)(1 - tau) - 2i|, |(xi + i)(1 - omega) - 2i|`` for a half-plane datum."""
    if d.space is not Space.HALFPLANE:
        raise ValueError("expects a half-plane datum")
    tau_e = inverse_cayley_value(d.node.edge)
    omega = inverse_cayley_value(d.value)
    r1 = abs((d.node.edge + 1j) * (1 - tau_e) - 2j)
    r2 = abs((d.value + 1j) * (1 - omega) - 2j)
    return max(r1, r2)


def pick_gradient_from_schur(tau: Point2, omega: complex, eta: tuple[complex, complex]) -> tuple[complex, complex]:
    """Angular gradient of ``h`` at ``x = C(tau)`` from that of ``phi`` at ``tau``."""
    return tuple((1 - tau[j]) ** 2 * eta[j - 1] / (1 - omega) ** 2 for j in (1, 2))


__all__ = [
    "BoundaryDatum", "CircleRotation", "cayley_value", "choose_rotation", "disk_to_halfplane",
    "halfplane_to_disk", "identity_residual", "inverse_cayley_value", "map_boundary_datum",
    "pick_from_schur", "pick_gradient_from_schur", "schur_from_pick",
]
