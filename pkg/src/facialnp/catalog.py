"""Named example functions and sampled class-membership checks."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import qmc

from . import expr as E
from .errors import ParamOutOfRange, UnknownName
from .expr import FnClass, PickExpr, evaluate_arrays
from .geometry import Point2

#: Sampling window for the bi-half-plane: Re in [-10, 10], Im in (0, 10].
HALFPLANE_WINDOW = (10.0, 10.0)


def _check(cond: bool, msg: str):
    if not cond:
        raise ParamOutOfRange(msg)


def _var(j: int, arity: int | None) -> PickExpr:
    _check(j in (1, 2), f"coordinate must be 1 or 2, got {j}")
    return E.coord(j, arity or j)


def _const(c=0.0, arity=1):
    c = complex(c)
    _check(c.imag == 0, f"Pick catalog constants are real, got {c}")
    return E.const(c.real, arity)


def _identity(j=1, arity=None):
    return _var(j, arity)


def _linear(b=1.0, j=1, arity=None):
    _check(b >= 0, f"slope must be nonnegative, got {b}")
    return E.linear(b, j, arity)


def _power(x=0.0, alpha=0.5, j=1, arity=None):
    _check(0 <= alpha <= 1, f"alpha must lie in [0, 1], got {alpha}")
    if alpha == 0:
        return E.const(1.0, arity or j)
    f = E.power_alpha(_var(j, arity), x, alpha)
    return PickExpr(f.node, f.declared_class, vanishing_ok=True, label=f"(z{j}-{x:g})^{alpha:g}")


def _neg_power(x=0.0, alpha=0.5, j=1, arity=None):
    _check(0 < alpha < 1, f"alpha must lie in (0, 1), got {alpha}")
    f = E.neg_reciprocal(E.power_alpha(_var(j, arity), x, alpha))
    return PickExpr(f.node, f.declared_class, vanishing_ok=True, label=f"-(z{j}-{x:g})^-{alpha:g}")


def _log(x=0.0, j=1, arity=None):
    f = E.log_branch(_var(j, arity), x)
    return PickExpr(f.node, f.declared_class, vanishing_ok=True, label=f"log(z{j}-{x:g})")


def _neg_recip(x=0.0, j=1, arity=None):
    f = E.neg_reciprocal(E.shifted(_var(j, arity), -x))
    return PickExpr(f.node, f.declared_class, vanishing_ok=False, label=f"-1/(z{j}-{x:g})")


def _neg_cot(x=0.0, j=1, arity=None):
    f = E.neg_cot(_var(j, arity), x)
    return PickExpr(f.node, f.declared_class, vanishing_ok=False, label=f"-cot(z{j}-{x:g})")


def _herglotz(a=0.0, b=0.0, atoms=(), j=1, arity=None):
    """``a + b z + sum w / (t - z)`` for real ``a``, ``b >= 0`` and weights ``w > 0``."""
    _check(b >= 0, f"linear coefficient must be nonnegative, got {b}")
    terms, coeffs = [E.const(float(a), arity or j)], [1.0]
    if b:
        terms.append(E.linear(b, j, arity))
        coeffs.append(1.0)
    for w, t in atoms:
        _check(w > 0, f"atom weight must be positive, got {w}")
        terms.append(PickExpr(E.HerglotzAtom(float(w), float(t), j), FnClass.of(E.PICK, arity or j)))
        coeffs.append(1.0)
    f = E.nonneg_sum(terms, coeffs)
    van = True if not atoms else None
    return PickExpr(f.node, f.declared_class, vanishing_ok=van, label="herglotz")


def _mons(d):
    return tuple(sorted((tuple(k), complex(v)) for k, v in d.items()))


def _ratex():
    num = {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): -3}
    den = {(0, 0): 3, (1, 0): -1, (0, 1): -1, (1, 1): -1}
    return PickExpr(E.RationalSchur(_mons(num), _mons(den)), FnClass.S2, label="ratex")


def _psi():
    num = {(1, 1): 2, (1, 0): -1, (0, 1): -1}
    den = {(0, 0): 2, (1, 0): -1, (0, 1): -1}
    return PickExpr(E.RationalSchur(_mons(num), _mons(den)), FnClass.S2, label="psi")


def _bidisk_product():
    return PickExpr(E.RationalSchur(_mons({(1, 1): 1}), _mons({(0, 0): 1})), FnClass.S2,
                    label="lam1*lam2")


def _schur_coord(j=1, arity=None):
    _check(j in (1, 2), f"coordinate must be 1 or 2, got {j}")
    return E.coord(j, arity or j, family=E.SCHUR)


def _schur_const(c=0.0, arity=1):
    _check(abs(complex(c)) <= 1, f"Schur constants have modulus <= 1, got {c}")
    return E.schur_const(c, arity)


CATALOG = {
    "const": _const,
    "identity": _identity,
    "linear": _linear,
    "power": _power,
    "neg_power": _neg_power,
    "log": _log,
    "neg_recip": _neg_recip,
    "neg_cot": _neg_cot,
    "herglotz": _herglotz,
    "ratex": _ratex,
    "psi": _psi,
    "bidisk_product": _bidisk_product,
    "schur_coord": _schur_coord,
    "schur_const": _schur_const,
}


def catalog(name: str, **params) -> PickExpr:
    """Build a named example function.

    Pick entries accept ``j`` (the variable used) and ``arity`` (1 or 2).
    ``neg_recip`` and ``neg_cot`` are the entries whose ``t f(x + i t)`` does
    not vanish at their distinguished point ``x``.
    """
    try:
        builder = CATALOG[name]
    except KeyError:
        raise UnknownName(f"no catalog entry named {name!r}; known: {', '.join(CATALOG)}") from None
    try:
        return builder(**params)
    except TypeError as exc:
        raise ParamOutOfRange(f"bad parameters for {name!r}: {exc}") from None


@dataclass(frozen=True)
class MembershipReport:
    samples: int
    min_value: float
    worst_point: complex | Point2
    passed: bool
    family: str
    tol: float

    def to_dict(self) -> dict:
        return {"samples": self.samples, "min_value": self.min_value,
                "worst_point": self.worst_point, "passed": self.passed,
                "family": self.family, "tol": self.tol}


def sample_domain(family: str, arity: int, n: int, seed: int = 42) -> list[np.ndarray]:
    """Scrambled Halton points in the disk(s) or the half-plane window."""
    u = qmc.Halton(d=2 * arity, scramble=True, seed=seed).random(n)
    coords = []
    for k in range(arity):
        a, b = u[:, 2 * k], u[:, 2 * k + 1]
        if family == E.SCHUR:
            coords.append(np.sqrt(a) * np.exp(2j * np.pi * b))
        else:
            re_w, im_w = HALFPLANE_WINDOW
            im = im_w * (1.0 - b)
            coords.append(-re_w + 2 * re_w * a + 1j * np.maximum(im, 1e-300))
    return coords


def membership_scan(f: PickExpr, n_samples: int = 10_000, tol: float = 1e-12,
                    seed: int = 42) -> MembershipReport:
    """Sampled evidence for membership in the declared class.

    Pick class: minimum of ``Im f``; Schur class: minimum of ``1 - |f|``.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be positive")
    coords = sample_domain(f.family, f.arity, n_samples, seed)
    vals = evaluate_arrays(f, *coords)
    score = vals.imag if f.family == E.PICK else 1.0 - np.abs(vals)
    score = np.where(np.isfinite(score), score, -np.inf)
    k = int(np.argmin(score))
    worst = complex(coords[0][k]) if f.arity == 1 else Point2(complex(coords[0][k]), complex(coords[1][k]))
    m = float(score[k])
    return MembershipReport(n_samples, m, worst, m >= -tol, f.family, tol)
