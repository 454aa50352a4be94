"""Facial boundary interpolation on the bi-half-plane and the bidisk.

Given nodes ``x_j = (x_j^1, x_j^2)`` on ``R x Pi`` and ``y_k`` on ``Pi x R``,
a common real target ``xi`` and slopes ``beta_j, gamma_k > 0``, every
function

    h(z) = xi + 1 / (r(z) - f(z)),
    r(z) = sum_j 1/(beta_j (z1 - x_j^1)) + sum_k 1/(gamma_k (z2 - y_k^2)),

with ``f`` in the two-variable Pick class solves the relaxed problem
(slopes at most the prescribed ones).  It solves the strict problem (slopes
exactly prescribed) iff ``t f(node + i t e) -> 0`` at every node; real
constants ``f = c`` always qualify.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .catalog import sample_domain
from .cayley import (BoundaryDatum, CircleRotation, cayley_value, choose_rotation,
                     map_boundary_datum, schur_from_pick)
from .errors import EmptyProblem, ProblemValidationError, VanishingConditionFailed
from .expr import (PICK, Augmentation, FacialSolution, FnClass, PickExpr, RTerm, eval_r,
                   evaluate_arrays)
from .geometry import Face, FacePoint, Space
from .limits import LIMIT_TOL, VANISH_TOL, LimitEstimate, vanishes, vanishing_limit


class Mode(str, enum.Enum):
    STRICT = "strict"
    RELAXED = "relaxed"


@dataclass(frozen=True)
class InterpNode:
    face: Face
    edge: complex
    interior: complex
    slope: float

    def __post_init__(self):
        object.__setattr__(self, "face", Face(self.face))
        object.__setattr__(self, "edge", complex(self.edge))
        object.__setattr__(self, "interior", complex(self.interior))
        object.__setattr__(self, "slope", float(self.slope))

    def face_point(self, space: Space) -> FacePoint:
        return FacePoint(space, self.face, self.edge, self.interior)


@dataclass(frozen=True)
class InterpProblem:
    """Facial interpolation data with a single target value ``xi`` for every node."""

    space: Space
    xi: complex
    nodes: tuple[InterpNode, ...]

    def __post_init__(self):
        object.__setattr__(self, "space", Space(self.space))
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "xi", complex(self.xi))
        if not self.nodes:
            raise EmptyProblem("a facial interpolation problem needs at least one node")
        for i, n in enumerate(self.nodes):
            if not n.slope > 0:
                raise ProblemValidationError(f"node {i}: slope must be positive, got {n.slope}")
            try:
                fp = n.face_point(self.space)
            except ValueError as exc:
                raise ProblemValidationError(f"node {i}: {exc}") from None
            if self.space is Space.DISK and abs(fp.interior) >= 1:
                raise ProblemValidationError(f"node {i}: interior coordinate must lie in the open disk")
            if self.space is Space.HALFPLANE and fp.interior.imag <= 0:
                raise ProblemValidationError(f"node {i}: interior coordinate must lie in the open half-plane")
        for face in Face:
            edges = [n.edge for n in self.nodes if n.face is face]
            for a in range(len(edges)):
                for b in range(a):
                    if abs(edges[a] - edges[b]) <= 1e-12:
                        raise ProblemValidationError(
                            f"two nodes on face {int(face)} share the edge coordinate {edges[a]}")
        if self.space is Space.HALFPLANE:
            if abs(self.xi.imag) > 1e-12:
                raise ProblemValidationError(f"half-plane target value must be real, got {self.xi}")
            object.__setattr__(self, "xi", complex(self.xi.real, 0.0))
        elif abs(abs(self.xi) - 1) > 1e-12:
            raise ProblemValidationError(f"disk target value must be unimodular, got {self.xi}")

    @property
    def nodes_face1(self) -> tuple[InterpNode, ...]:
        return tuple(n for n in self.nodes if n.face is Face.FIRST)

    @property
    def nodes_face2(self) -> tuple[InterpNode, ...]:
        return tuple(n for n in self.nodes if n.face is Face.SECOND)

    def face_points(self) -> list[FacePoint]:
        return [n.face_point(self.space) for n in self.nodes]


@dataclass(frozen=True)
class RFunction:
    """``r(z) = sum 1/(slope (z_coord - edge))``; ``Im r < 0`` on the bi-half-plane."""

    terms: tuple[RTerm, ...]

    def __call__(self, z) -> complex:
        a, b = z
        return complex(eval_r(self.terms, np.array([complex(a)]), np.array([complex(b)]))[0])

    def evaluate_arrays(self, z1, z2) -> np.ndarray:
        return eval_r(self.terms, np.asarray(z1, dtype=complex), np.asarray(z2, dtype=complex))


def build_r(problem: InterpProblem) -> RFunction:
    if problem.space is not Space.HALFPLANE:
        raise ValueError("r is defined for half-plane problems; map disk problems first")
    if not problem.nodes:
        raise EmptyProblem("no nodes")
    return RFunction(tuple(RTerm(int(n.face), n.edge.real, n.slope) for n in problem.nodes))


@dataclass(frozen=True)
class SolutionSpec:
    r: RFunction
    xi: float
    f: PickExpr
    mode: Mode
    h: PickExpr
    vanishing: tuple[LimitEstimate, ...] = field(default=(), repr=False)


def _as_p2(f: PickExpr) -> PickExpr:
    if f.family != PICK:
        raise ValueError(f"the free parameter must be a Pick function, got {f.declared_class.value}")
    return f if f.arity == 2 else f.with_class(FnClass.P2)


def check_vanishing(f: PickExpr, nodes: list[FacePoint], t0=0.1, ratio=0.5, steps=25,
                    tol=LIMIT_TOL, vanish_tol=VANISH_TOL) -> tuple[LimitEstimate, ...]:
    """Estimate ``lim t f(node + i t e)`` at each node; raise at the first that does not vanish."""
    out = []
    for i, node in enumerate(nodes):
        est = vanishing_limit(f, node, t0=t0, ratio=ratio, count=steps, tol=tol)
        if not vanishes(est, vanish_tol):
            raise VanishingConditionFailed(i, est)
        out.append(est)
    return tuple(out)


def solve(problem: InterpProblem, f: PickExpr, mode: Mode | str = Mode.STRICT, *, t0=0.1,
          ratio=0.5, steps=25, vanish_tol=VANISH_TOL) -> SolutionSpec:
    """Solution ``h = xi + 1/(r - f)`` of the facial problem for the free parameter ``f``."""
    mode = Mode(mode)
    r = build_r(problem)
    f2 = _as_p2(f)
    checks = ()
    if mode is Mode.STRICT:
        checks = check_vanishing(f2, problem.face_points(), t0, ratio, steps, vanish_tol=vanish_tol)
    xi = problem.xi.real
    h = PickExpr(FacialSolution(r.terms, xi, f2.node), FnClass.P2)
    return SolutionSpec(r, xi, f2, mode, h, checks)


def solve_single_node_pick(x: FacePoint, xi: float, beta: float, g: PickExpr, *,
                           strict: bool = True, t0=0.1, ratio=0.5, steps=25,
                           vanish_tol=VANISH_TOL) -> PickExpr:
    """``h = xi + 1/(1/(beta (z_e - x_e)) - g)`` for one node on either face."""
    if x.space is not Space.HALFPLANE:
        raise ValueError("expects a half-plane node")
    g2 = _as_p2(g)
    if strict:
        check_vanishing(g2, [x], t0, ratio, steps, vanish_tol=vanish_tol)
    node = Augmentation(g2.node, x.edge.real, float(xi), float(beta), x.edge_index)
    return PickExpr(node, FnClass.P2)


def to_halfplane(problem: InterpProblem) -> tuple[InterpProblem, CircleRotation]:
    """Map a disk problem (with one shared rotation) to its half-plane counterpart."""
    if problem.space is Space.HALFPLANE:
        return problem, CircleRotation()
    rot = choose_rotation([n.edge for n in problem.nodes_face1],
                          [n.edge for n in problem.nodes_face2], problem.xi)
    nodes = []
    for n in problem.nodes:
        d = BoundaryDatum(Space.DISK, n.face_point(Space.DISK), problem.xi, n.slope)
        m = map_boundary_datum(d, rot)
        nodes.append(InterpNode(n.face, m.node.edge, m.node.interior, m.slope))
    xi = cayley_value(rot.post * problem.xi).real
    return InterpProblem(Space.HALFPLANE, xi, tuple(nodes)), rot


def solve_schur(problem: InterpProblem, g: PickExpr, mode: Mode | str = Mode.STRICT, **kw) -> PickExpr:
    """Schur-class solution of a disk problem for the half-plane free parameter ``g``.

    Each node ``tau`` receives value ``omega = xi`` and gradient
    ``omega conj(tau_e) alpha`` along its edge coordinate.
    """
    if problem.space is not Space.DISK:
        raise ValueError("expects a disk problem")
    hp, rot = to_halfplane(problem)
    spec = solve(hp, g, mode, **kw)
    return rot.undo(schur_from_pick(spec.h))


def wellposedness_scan(spec: SolutionSpec, n_samples: int = 10_000, seed: int = 42) -> float:
    """Largest ``Im(r - f)`` over a sample of the bi-half-plane window (negative is good)."""
    z1, z2 = sample_domain(PICK, 2, n_samples, seed)
    vals = spec.r.evaluate_arrays(z1, z2) - evaluate_arrays(spec.f, z1, z2)
    return float(np.max(vals.imag))
