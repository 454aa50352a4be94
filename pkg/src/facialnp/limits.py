"""One-sided boundary limits along geometric ray paths.

All boundary quantities in this package are limits of the form
``lim_{t -> 0+} q(t)`` sampled at ``t_k = t0 * ratio**k``.  The sequence is
extrapolated with one Richardson step under a first-order error model:
``L = (q_K - ratio * q_{K-1}) / (1 - ratio)`` (``2 q_K - q_{K-1}`` for
``ratio = 1/2``).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .expr import PickExpr, RationalSchur, evaluate_arrays
from .geometry import FacePoint, PathSamples, Space, perpendicular_path

LIMIT_TOL = 1e-6
DIVERGENCE = 1e6
#: Decision threshold for ``lim t f(x + i t e) = 0``; see README for the rationale.
VANISH_TOL = 1e-3


@dataclass(frozen=True)
class LimitEstimate:
    scales: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)
    extrapolated: complex
    converged: bool
    last_delta: float
    divergent: bool = False
    tol: float = LIMIT_TOL

    def to_dict(self) -> dict:
        return {
            "extrapolated": complex(self.extrapolated),
            "converged": self.converged,
            "last_delta": self.last_delta,
            "divergent": self.divergent,
            "tol": self.tol,
            "n": int(len(self.values)),
            "t_last": float(self.scales[-1]),
        }

    def trace(self) -> list[tuple[float, complex]]:
        return [(float(t), complex(q)) for t, q in zip(self.scales, self.values)]


def extrapolate(scales, values, tol: float = LIMIT_TOL, divergence: float = DIVERGENCE) -> LimitEstimate:
    scales = np.asarray(scales, dtype=float)
    q = np.asarray(values, dtype=complex)
    if len(q) < 4:
        raise ValueError("need at least 4 samples to extrapolate a limit")
    ratio = scales[1] / scales[0]
    finite = bool(np.all(np.isfinite(q)))
    if finite:
        limit = (q[-1] - ratio * q[-2]) / (1.0 - ratio)
        deltas = np.abs(np.diff(q))
        last_delta = float(deltas[-1])
        converged = bool(np.all(deltas[-3:] <= tol))
        divergent = bool(abs(q[-1]) > divergence)
    else:
        limit, last_delta, converged, divergent = complex("nan+nanj"), float("inf"), False, True
    return LimitEstimate(scales, q, complex(limit), converged, last_delta, divergent, tol)


def values_along(f: PickExpr, path: PathSamples, coord: int | None = None) -> np.ndarray:
    """``f`` at every sample of ``path``; one-variable ``f`` reads coordinate ``coord``."""
    z1, z2 = path.coords()
    if isinstance(f.node, RationalSchur) and f.arity == 2:
        evaluate_arrays(f, z1, z2)  # domain check only
        base = path.target.as_point()
        return f.node.along((base.c1, base.c2), path.direction, path.scales)
    if f.arity == 1:
        return evaluate_arrays(f, z1 if (coord or 1) == 1 else z2)
    return evaluate_arrays(f, z1, z2)


def vanishing_limit(f: PickExpr, node: FacePoint, path: PathSamples | None = None,
                    t0: float = 0.1, ratio: float = 0.5, count: int = 25,
                    tol: float = LIMIT_TOL) -> LimitEstimate:
    """Estimate ``lim_{t->0+} t f(node + i t e_face)`` on the bi-half-plane."""
    if node.space is not Space.HALFPLANE:
        raise ValueError("the vanishing condition is stated at half-plane nodes")
    if path is None:
        path = perpendicular_path(node, t0, ratio, count)
    vals = values_along(f, path, coord=node.edge_index)
    return extrapolate(path.scales, path.scales * vals, tol)


def vanishes(est: LimitEstimate, tol: float = VANISH_TOL) -> bool:
    if not np.isfinite(est.extrapolated):
        return False
    return max(abs(est.extrapolated), abs(est.values[-1])) <= tol
