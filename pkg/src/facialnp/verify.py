"""Numerical certificates for facial B-points, C-points and angular gradients.

Everything here is path-wise evidence: limits are measured along ray
ladders and differential fits sample finitely many cones.  Reports say what
was sampled and never claim a statement about every nontangential set.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .config import RunConfig
from .errors import InsufficientSamples
from .expr import PICK, PickExpr, evaluate_arrays
from .geometry import (MAX_SCALES, Face, FacePoint, PathSamples, Space, geometric_scales, nontangential_path,
                       perpendicular_path)
from .interp import InterpProblem, Mode
from .limits import LimitEstimate, extrapolate, values_along

APERTURE_SLACK = 1e-6
# residual ratios below tol * RATIO_FLOOR count as settled: at the smallest
# scales the least-squares fit itself leaves residuals of this size, so the
# ladder stops decreasing for reasons unrelated to the function
RATIO_FLOOR = 0.1


def _eval_points(f: PickExpr, z1, z2, coord: int = 1):
    if f.arity == 1:
        return evaluate_arrays(f, z1 if coord == 1 else z2)
    return evaluate_arrays(f, z1, z2)


def _refined(estimate, target: FacePoint, cfg: RunConfig) -> LimitEstimate:
    # a slowly settling limit gets a few more halvings of t before it is called unconverged;
    # convergence is still judged on the raw final steps
    for count in range(cfg.steps, max(cfg.steps, MAX_SCALES) + 1):
        est = estimate(perpendicular_path(target, cfg.t0, cfg.ratio, count))
        if est.converged or est.divergent:
            break
    return est


def caratheodory_quotient(f: PickExpr, target: FacePoint, path: PathSamples | None = None,
                          cfg: RunConfig = RunConfig()) -> LimitEstimate:
    """Path-wise Caratheodory quotient.

    Disk: ``(1 - |phi|) / (1 - ||lam||)``; its limit estimates alpha.
    Half-plane: ``Im h / Im z_e`` with ``e`` the edge coordinate; estimates beta.
    """
    if path is None:
        return _refined(lambda p: caratheodory_quotient(f, target, p, cfg), target, cfg)
    z1, z2 = path.coords()
    vals = values_along(f, path, coord=target.edge_index)
    if target.space is Space.DISK:
        q = (1.0 - np.abs(vals)) / (1.0 - np.maximum(np.abs(z1), np.abs(z2)))
    else:
        ze = z1 if target.face is Face.FIRST else z2
        q = vals.imag / ze.imag
    return extrapolate(path.scales, q, cfg.tol_limit)


def boundary_value(f: PickExpr, target: FacePoint, cfg: RunConfig = RunConfig(),
                   path: PathSamples | None = None) -> LimitEstimate:
    if path is None:
        return _refined(lambda p: boundary_value(f, target, cfg, p), target, cfg)
    return extrapolate(path.scales, values_along(f, path, coord=target.edge_index), cfg.tol_limit)


@dataclass(frozen=True)
class DifferentialFit:
    omega: complex
    eta1: complex
    eta2: complex
    residual_ratios: tuple[float, ...]
    c_point_passed: bool
    aperture: float
    scales: tuple[float, ...] = field(repr=False)
    samples_per_scale: int = 0
    tol: float = 1e-4

    @property
    def gradient(self) -> tuple[complex, complex]:
        return (self.eta1, self.eta2)

    def to_dict(self) -> dict:
        return {"omega": self.omega, "eta1": self.eta1, "eta2": self.eta2,
                "residual_ratios": list(self.residual_ratios),
                "c_point_passed": self.c_point_passed, "aperture": self.aperture,
                "t_min": self.scales[-1], "samples_per_scale": self.samples_per_scale,
                "tol": self.tol}


def fit_scales(cfg: RunConfig) -> np.ndarray:
    return geometric_scales(cfg.t0, cfg.ratio, cfg.fit_steps)


def _boundary_coord(space: Space, c: complex) -> bool:
    if space is Space.DISK:
        return abs(abs(c) - 1) <= 1e-12
    return c.imag == 0


def cone_directions(target: FacePoint, aperture: float, n: int, rng: np.random.Generator) -> np.ndarray:
    """Directions ``d`` with ``||d|| = 1`` pointing into an aperture-``c`` cone at ``target``.

    Boundary coordinates get ``n_j (a + i b)`` with ``n_j`` the inward normal,
    ``a in [1/c, 1]`` and ``|a + i b| <= 1``; interior coordinates get any
    vector of modulus at most one.
    """
    tp = target.as_point()
    cols = []
    for j in (1, 2):
        c = tp[j]
        if _boundary_coord(target.space, c):
            normal = -c / abs(c) if target.space is Space.DISK else 1j
            a = rng.uniform(1.0 / aperture, 1.0, n)
            b = rng.uniform(-1.0, 1.0, n) * np.sqrt(np.maximum(1.0 - a * a, 0.0))
            cols.append(normal * (a + 1j * b))
        else:
            rho = np.sqrt(rng.uniform(0.0, 1.0, n))
            cols.append(rho * np.exp(2j * np.pi * rng.uniform(0.0, 1.0, n)))
    d = np.stack(cols, axis=1)
    norm = np.max(np.abs(d), axis=1, keepdims=True)
    return d / norm


def _cone_samples(target: FacePoint, aperture: float, t: float, count: int,
                  rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    tp = target.as_point()
    d = cone_directions(target, aperture, 8 * count, rng)
    z1 = tp.c1 + t * d[:, 0]
    z2 = tp.c2 + t * d[:, 1]
    if target.space is Space.DISK:
        dist = 1.0 - np.maximum(np.abs(z1), np.abs(z2))
    else:
        dist = np.minimum(z1.imag, z2.imag)
    gap = np.maximum(np.abs(z1 - tp.c1), np.abs(z2 - tp.c2))
    with np.errstate(divide="ignore", invalid="ignore"):
        ok = (dist > 0) & (gap / dist <= aperture * (1 + APERTURE_SLACK))
    idx = np.flatnonzero(ok)[:count]
    if len(idx) < 4:
        raise InsufficientSamples(f"only {len(idx)} cone samples at scale {t:g} (aperture {aperture:g})")
    return z1[idx], z2[idx]


def fit_differential(f: PickExpr, target: FacePoint, aperture: float = 2.0,
                     scales=None, samples_per_scale: int = 16, seed: int = 42,
                     tol: float = 1e-4) -> DifferentialFit:
    """Least-squares holomorphic differential ``omega + eta . (lam - tau)`` at ``target``.

    Coefficients come from the samples at the two smallest scales; the
    residual ratio at every scale is ``max |f - model| / ||lam - tau||``.
    Passing needs the last three ratios below ``tol`` and decreasing (pairs
    already under ``tol * RATIO_FLOOR`` count as settled), and a boundary value on the circle (disk) or the real line
    (half-plane).
    """
    scales = np.asarray(scales if scales is not None else geometric_scales(0.1, 0.5, 18), dtype=float)
    rng = np.random.default_rng(seed)
    tp = target.as_point()
    samples = [_cone_samples(target, aperture, t, samples_per_scale, rng) for t in scales]
    coord = target.edge_index

    def design(z1, z2):
        return np.stack([np.ones_like(z1), z1 - tp.c1, z2 - tp.c2], axis=1)

    fz1 = np.concatenate([samples[-2][0], samples[-1][0]])
    fz2 = np.concatenate([samples[-2][1], samples[-1][1]])
    rhs = _eval_points(f, fz1, fz2, coord)
    coef, *_ = np.linalg.lstsq(design(fz1, fz2), rhs, rcond=None)
    omega, eta1, eta2 = (complex(c) for c in coef)

    ratios = []
    for z1, z2 in samples:
        resid = _eval_points(f, z1, z2, coord) - design(z1, z2) @ coef
        gap = np.maximum(np.abs(z1 - tp.c1), np.abs(z2 - tp.c2))
        ratios.append(float(np.max(np.abs(resid) / gap)))
    tail = ratios[-3:]
    floor = tol * RATIO_FLOOR
    decreasing = all(b < a or max(a, b) <= floor for a, b in zip(tail, tail[1:]))
    if target.space is Space.DISK:
        on_boundary = abs(abs(omega) - 1) <= tol
    else:
        on_boundary = abs(omega.imag) <= tol
    passed = bool(all(r < tol for r in tail) and decreasing and on_boundary
                  and all(np.isfinite(ratios)))
    return DifferentialFit(omega, eta1, eta2, tuple(ratios), passed, float(aperture),
                           tuple(float(t) for t in scales), samples_per_scale, tol)


def certify_c_point(f: PickExpr, target: FacePoint, aperture: float, cfg: RunConfig = RunConfig(),
                    seed: int | None = None) -> DifferentialFit:
    """Differential fit on the configured ladder, extended two halvings at a time
    while the residual test has not passed.

    A C-point with large curvature only shows its decay at small scales; a
    point that is not a C-point keeps its residual ratios whatever the ladder.
    """
    seed = cfg.seed if seed is None else seed
    longest = max(cfg.fit_steps, min(cfg.fit_steps + cfg.fit_extra_steps, MAX_SCALES))
    for count in range(cfg.fit_steps, longest + 1, 2):
        scales = geometric_scales(cfg.t0, cfg.ratio, count)
        fit = fit_differential(f, target, aperture, scales, cfg.samples_per_scale, seed, cfg.tol_slope)
        if fit.c_point_passed:
            break
    return fit


@dataclass(frozen=True)
class DirectionalFit:
    """``f(target + t d) ~ omega + coefficient * t + c2 * t**2`` along one ray."""

    direction: tuple[complex, complex]
    omega: complex
    coefficient: complex
    edge_coefficient: complex
    residual: float

    def to_dict(self) -> dict:
        return {"direction": list(self.direction), "omega": self.omega,
                "coefficient": self.coefficient, "edge_coefficient": self.edge_coefficient,
                "residual": self.residual}


def directional_fit(f: PickExpr, target: FacePoint, direction, cfg: RunConfig = RunConfig()) -> DirectionalFit:
    """Fit value and directional derivative along ``target + t * direction``.

    ``edge_coefficient`` is the first-face coefficient a facial gradient
    ``(eta_e, 0)`` would need to produce the measured slope:
    ``coefficient / d_e``.
    """
    path = nontangential_path(target, direction, cfg.t0, cfg.ratio, cfg.fit_steps)
    vals = values_along(f, path, coord=target.edge_index)
    t = path.scales
    A = np.stack([np.ones_like(t), t, t * t], axis=1).astype(complex)
    coef, *_ = np.linalg.lstsq(A, vals, rcond=None)
    resid = float(np.max(np.abs(vals - A @ coef)))
    d = path.direction
    d_edge = d[target.edge_index - 1]
    return DirectionalFit(d, complex(coef[0]), complex(coef[1]), complex(coef[1] / d_edge), resid)


@dataclass(frozen=True)
class FaceSample:
    interior: complex
    value: LimitEstimate
    fits: tuple[DifferentialFit, ...]

    @property
    def gradient(self) -> tuple[complex, complex]:
        return self.fits[-1].gradient

    def to_dict(self) -> dict:
        return {"interior": self.interior, "value": self.value.extrapolated,
                "value_converged": self.value.converged,
                "gradient": list(self.gradient),
                "fits": [fit.to_dict() for fit in self.fits]}


@dataclass(frozen=True)
class FaceReport:
    space: Space
    face: Face
    edge: complex
    samples: tuple[FaceSample, ...]
    value_spread: float
    gradient_spread: float
    alpha_estimate: float
    expected_gradient: tuple[complex, complex]
    gradient_error: float
    c_points: bool
    passed: bool
    tolerances: dict = field(default_factory=dict)

    @property
    def values(self) -> list[complex]:
        return [s.value.extrapolated for s in self.samples]

    @property
    def gradients(self) -> list[tuple[complex, complex]]:
        return [s.gradient for s in self.samples]

    def to_dict(self) -> dict:
        return {"space": self.space.value, "face": int(self.face), "edge": self.edge,
                "samples": [s.to_dict() for s in self.samples],
                "value_spread": self.value_spread, "gradient_spread": self.gradient_spread,
                "alpha_estimate": self.alpha_estimate,
                "expected_gradient": list(self.expected_gradient),
                "gradient_error": self.gradient_error, "c_points": self.c_points,
                "passed": self.passed, "tolerances": self.tolerances,
                "note": "C-point evidence covers the sampled aperture cones only"}


def _max_pairwise(items, dist) -> float:
    return max((dist(a, b) for a, b in itertools.combinations(items, 2)), default=0.0)


def _grad_dist(a, b) -> float:
    return max(abs(a[0] - b[0]), abs(a[1] - b[1]))


def expected_facial_gradient(space: Space, face: Face, edge: complex, value: complex,
                             slope: float) -> tuple[complex, complex]:
    """Closed-form facial gradient: ``value conj(edge) alpha e_face`` (disk) or ``beta e_face``."""
    g = value * edge.conjugate() * slope if space is Space.DISK else complex(slope)
    return (g, 0j) if face is Face.FIRST else (0j, g)


def face_report(f: PickExpr, space: Space | str, face: Face | int, edge: complex,
                interior_samples, cfg: RunConfig = RunConfig()) -> FaceReport:
    """Values and gradients of ``f`` across samples of one face."""
    space, face = Space(space), Face(face)
    samples = []
    for k, zeta in enumerate(interior_samples):
        sigma = FacePoint(space, face, edge, zeta)
        value = boundary_value(f, sigma, cfg)
        fits = tuple(certify_c_point(f, sigma, c, cfg, cfg.seed + k) for c in cfg.apertures)
        samples.append(FaceSample(complex(zeta), value, fits))
    first = FacePoint(space, face, edge, samples[0].interior)
    alpha = float(caratheodory_quotient(f, first, cfg=cfg).extrapolated.real)
    expected = expected_facial_gradient(space, face, complex(edge), samples[0].value.extrapolated, alpha)
    vals = [s.value.extrapolated for s in samples]
    grads = [s.gradient for s in samples]
    value_spread = _max_pairwise(vals, lambda a, b: abs(a - b))
    grad_spread = _max_pairwise(grads, _grad_dist)
    grad_err = max(_grad_dist(g, expected) for g in grads)
    c_points = all(fit.c_point_passed for s in samples for fit in s.fits)
    passed = (c_points and value_spread <= cfg.tol_spread and grad_spread <= cfg.tol_slope
              and grad_err <= cfg.tol_slope and all(s.value.converged for s in samples))
    tols = {"value_spread": cfg.tol_spread, "gradient": cfg.tol_slope}
    return FaceReport(space, face, complex(edge), tuple(samples), value_spread, grad_spread, alpha,
                      expected, grad_err, c_points, bool(passed), tols)


@dataclass(frozen=True)
class NodeRecord:
    index: int
    face: Face
    node: FacePoint
    b_point: bool
    value: complex
    value_error: float
    slope: float
    expected_slope: float
    slope_error: float
    value_ok: bool
    slope_ok: bool
    quotient: LimitEstimate = field(repr=False)
    value_estimate: LimitEstimate = field(repr=False)

    @property
    def passed(self) -> bool:
        return self.b_point and self.value_ok and self.slope_ok

    def to_dict(self) -> dict:
        return {"index": self.index, "face": int(self.face),
                "edge": self.node.edge, "interior": self.node.interior,
                "b_point": self.b_point, "value": self.value, "value_error": self.value_error,
                "slope": self.slope, "expected_slope": self.expected_slope,
                "slope_error": self.slope_error, "value_ok": self.value_ok,
                "slope_ok": self.slope_ok, "passed": self.passed,
                "quotient": self.quotient.to_dict(), "value_limit": self.value_estimate.to_dict()}


@dataclass(frozen=True)
class SolutionReport:
    space: Space
    mode: Mode
    target: complex
    nodes: tuple[NodeRecord, ...]
    tol_value: float
    tol_slope: float

    @property
    def passed(self) -> bool:
        return all(n.passed for n in self.nodes)

    def to_dict(self) -> dict:
        return {"space": self.space.value, "mode": self.mode.value, "target": self.target,
                "tol_value": self.tol_value, "tol_slope": self.tol_slope,
                "passed": self.passed, "nodes": [n.to_dict() for n in self.nodes]}


def verify_solution(problem: InterpProblem, h: PickExpr, cfg: RunConfig = RunConfig(),
                    mode: Mode | str | None = None) -> SolutionReport:
    """Check B-point, value and slope at every node of ``problem``.

    Strict mode compares slopes with tolerance ``tol_slope``; relaxed mode
    only requires ``0 < slope <= expected + 1e-6``.
    """
    mode = Mode(mode or cfg.mode)
    want_family = "S" if problem.space is Space.DISK else PICK
    if h.family != want_family:
        raise ValueError(f"{problem.space.value} problems are verified on {want_family}-class functions")
    records = []
    for i, node in enumerate(problem.nodes):
        fp = node.face_point(problem.space)
        quot = caratheodory_quotient(h, fp, cfg=cfg)
        val = boundary_value(h, fp, cfg)
        b_point = bool(not quot.divergent and quot.converged)
        value = complex(val.extrapolated)
        value_err = abs(value - problem.xi)
        slope = float(quot.extrapolated.real)
        slope_err = abs(slope - node.slope)
        if mode is Mode.STRICT:
            slope_ok = slope_err <= cfg.tol_slope
        else:
            slope_ok = 0 < slope <= node.slope + 1e-6
        records.append(NodeRecord(i, node.face, fp, b_point, value, value_err, slope, node.slope,
                                  slope_err, value_err <= cfg.tol_value, bool(slope_ok), quot, val))
    return SolutionReport(problem.space, mode, problem.xi, tuple(records), cfg.tol_value, cfg.tol_slope)
