"""Closed expression trees for one- and two-variable Pick and Schur functions.

A :class:`PickExpr` pairs a node tree with a declared class (P1, P2, S1 or
S2).  Every node knows which function families it can belong to given its
children, so a tree whose declared class is not reachable by the closure
rules is rejected at construction.  Pick-family trees are evaluated on the
upper half-plane (or its square), Schur-family trees on the disk (bidisk).

Evaluation is vectorised: nodes map complex arrays ``(z1, z2)`` to a complex
array.  Principal branches are used throughout; on the half-plane
``arg(z - x)`` lies in ``(0, pi)`` so powers and logarithms are single-valued.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, fields
from typing import ClassVar

import numpy as np

from .errors import ArityError, ClassRuleViolation, DomainError
from .geometry import Point2

PICK = "P"
SCHUR = "S"


class FnClass(str, enum.Enum):
    P1 = "P1"
    P2 = "P2"
    S1 = "S1"
    S2 = "S2"

    @property
    def family(self) -> str:
        return self.value[0]

    @property
    def arity(self) -> int:
        return int(self.value[1])

    @classmethod
    def of(cls, family: str, arity: int) -> "FnClass":
        return cls(f"{family}{max(arity, 1)}")


_NONE = frozenset()
_P = frozenset({PICK})
_S = frozenset({SCHUR})


def _cayley(lam):
    return 1j * (1 + lam) / (1 - lam)


def _inv_cayley(z):
    return (z - 1j) / (z + 1j)


class Node:
    """Base class for expression nodes; subclasses are frozen dataclasses."""

    kind: ClassVar[str]

    def ev(self, z1: np.ndarray, z2: np.ndarray | None) -> np.ndarray:
        raise NotImplementedError

    def children(self) -> tuple["Node", ...]:
        return ()

    def families(self) -> frozenset:
        raise NotImplementedError

    def arity(self) -> int:
        return max((c.arity() for c in self.children()), default=0)


def _pick_if(ok: bool) -> frozenset:
    return _P if ok else _NONE


def _coord(z1, z2, j):
    if j == 1:
        return z1
    if z2 is None:
        raise ArityError("expression references the second coordinate but was given one variable")
    return z2


@dataclass(frozen=True)
class Const(Node):
    value: complex
    kind: ClassVar[str] = "const"

    def ev(self, z1, z2):
        return np.full(np.shape(z1), complex(self.value), dtype=complex)

    def families(self):
        out = set()
        if self.value.imag >= 0:
            out.add(PICK)
        if abs(self.value) <= 1:
            out.add(SCHUR)
        return frozenset(out)


@dataclass(frozen=True)
class Coord(Node):
    j: int
    kind: ClassVar[str] = "coord"

    def ev(self, z1, z2):
        return np.asarray(_coord(z1, z2, self.j), dtype=complex)

    def families(self):
        return frozenset({PICK, SCHUR}) if self.j in (1, 2) else _NONE

    def arity(self):
        return self.j


@dataclass(frozen=True)
class Linear(Node):
    """``slope * z_j`` with ``slope >= 0``."""

    slope: float
    j: int
    kind: ClassVar[str] = "linear"

    def ev(self, z1, z2):
        return self.slope * _coord(z1, z2, self.j)

    def families(self):
        return _pick_if(self.slope >= 0 and self.j in (1, 2))

    def arity(self):
        return self.j


@dataclass(frozen=True)
class HerglotzAtom(Node):
    """``weight / (pole - z_j)``: a point mass of the Herglotz measure."""

    weight: float
    pole: float
    j: int
    kind: ClassVar[str] = "herglotz_atom"

    def ev(self, z1, z2):
        return self.weight / (self.pole - _coord(z1, z2, self.j))

    def families(self):
        return _pick_if(self.weight > 0 and self.j in (1, 2))

    def arity(self):
        return self.j


@dataclass(frozen=True)
class NonnegSum(Node):
    terms: tuple[Node, ...]
    coeffs: tuple[float, ...]
    kind: ClassVar[str] = "nonneg_sum"

    def ev(self, z1, z2):
        out = np.zeros(np.shape(z1), dtype=complex)
        for c, t in zip(self.coeffs, self.terms):
            out = out + c * t.ev(z1, z2)
        return out

    def children(self):
        return self.terms

    def families(self):
        ok = (len(self.terms) == len(self.coeffs) and len(self.terms) > 0
              and all(c >= 0 for c in self.coeffs)
              and all(PICK in t.families() for t in self.terms))
        return _pick_if(ok)


@dataclass(frozen=True)
class NegReciprocal(Node):
    child: Node
    kind: ClassVar[str] = "neg_reciprocal"

    def ev(self, z1, z2):
        return -1.0 / self.child.ev(z1, z2)

    def children(self):
        return (self.child,)

    def families(self):
        if isinstance(self.child, Const) and self.child.value == 0:
            return _NONE
        return _pick_if(PICK in self.child.families())


@dataclass(frozen=True)
class Shifted(Node):
    child: Node
    offset: float
    kind: ClassVar[str] = "shifted"

    def ev(self, z1, z2):
        return self.child.ev(z1, z2) + self.offset

    def children(self):
        return (self.child,)

    def families(self):
        return _pick_if(PICK in self.child.families())


@dataclass(frozen=True)
class PowerAlpha(Node):
    """``(child - x) ** alpha`` on the principal branch, ``0 < alpha <= 1``."""

    child: Node
    x: float
    alpha: float
    kind: ClassVar[str] = "power"

    def ev(self, z1, z2):
        return np.power(self.child.ev(z1, z2) - self.x, self.alpha)

    def children(self):
        return (self.child,)

    def families(self):
        return _pick_if(0 < self.alpha <= 1 and PICK in self.child.families())


@dataclass(frozen=True)
class LogBranch(Node):
    child: Node
    x: float
    kind: ClassVar[str] = "log"

    def ev(self, z1, z2):
        return np.log(self.child.ev(z1, z2) - self.x)

    def children(self):
        return (self.child,)

    def families(self):
        return _pick_if(PICK in self.child.families())


@dataclass(frozen=True)
class NegCot(Node):
    child: Node
    x: float
    kind: ClassVar[str] = "neg_cot"

    def ev(self, z1, z2):
        return -1.0 / np.tan(self.child.ev(z1, z2) - self.x)

    def children(self):
        return (self.child,)

    def families(self):
        return _pick_if(PICK in self.child.families())


@dataclass(frozen=True)
class RationalSchur(Node):
    """Quotient of bivariate polynomials, stored as ``((i, j), coeff)`` monomials.

    Only produced by the catalog (or read back from a file): membership of a
    general quotient in the Schur class cannot be decided structurally.
    """

    num: tuple[tuple[tuple[int, int], complex], ...]
    den: tuple[tuple[tuple[int, int], complex], ...]
    kind: ClassVar[str] = "rational_schur"

    @staticmethod
    def _poly(mons, z1, z2):
        out = np.zeros(np.shape(z1), dtype=complex)
        for (i, j), c in mons:
            term = c * np.power(z1, i)
            if j:
                term = term * np.power(_coord(z1, z2, 2), j)
            out = out + term
        return out

    def ev(self, z1, z2):
        return self._poly(self.num, z1, z2) / self._poly(self.den, z1, z2)

    @staticmethod
    def _ray_coeffs(mons, base, d) -> np.ndarray:
        # p(base + t d) = sum_k g_k t^k, expanded binomially around base
        deg = max(i + j for (i, j), _ in mons)
        g = np.zeros(deg + 1, dtype=complex)
        for (i, j), c in mons:
            for a in range(i + 1):
                ca = c * math.comb(i, a) * base[0] ** (i - a) * d[0] ** a
                for b in range(j + 1):
                    g[a + b] += ca * math.comb(j, b) * base[1] ** (j - b) * d[1] ** b
        return g

    def along(self, base, d, t) -> np.ndarray:
        """Values on the ray ``base + t d`` with common powers of ``t`` cancelled.

        At a point where numerator and denominator both vanish exactly (a
        singular boundary point) direct evaluation loses about ``eps / t``
        relative precision; the re-centred form does not.
        """
        num = self._ray_coeffs(self.num, base, d)
        den = self._ray_coeffs(self.den, base, d)
        m = min(int(np.flatnonzero(g)[0]) if np.any(g) else len(g) for g in (num, den))
        t = np.asarray(t, dtype=float)
        return np.polyval(num[m:][::-1], t) / np.polyval(den[m:][::-1], t)

    def families(self):
        return _S

    def arity(self):
        pows = [p for p, _ in self.num + self.den]
        if any(j > 0 for _, j in pows):
            return 2
        return 1 if any(i > 0 for i, _ in pows) else 0


@dataclass(frozen=True)
class Rotation(Node):
    """``post * child(pre1 * lam1, pre2 * lam2)`` with unimodular factors."""

    child: Node
    pre: tuple[complex, complex]
    post: complex
    kind: ClassVar[str] = "rotation"

    def ev(self, z1, z2):
        a1, a2 = self.pre
        w2 = None if z2 is None else a2 * z2
        return self.post * self.child.ev(a1 * z1, w2)

    def children(self):
        return (self.child,)

    def families(self):
        unimodular = all(abs(abs(c) - 1) < 1e-12 for c in (*self.pre, self.post))
        return _S if unimodular and SCHUR in self.child.families() else _NONE


@dataclass(frozen=True)
class CayleyLift(Node):
    """Pick function ``i (1 + phi) / (1 - phi)`` of a Schur child, read in half-plane variables."""

    child: Node
    kind: ClassVar[str] = "cayley_lift"

    def ev(self, z1, z2):
        lam2 = None if z2 is None else _inv_cayley(z2)
        phi = self.child.ev(_inv_cayley(z1), lam2)
        return 1j * (1 + phi) / (1 - phi)

    def children(self):
        return (self.child,)

    def families(self):
        if isinstance(self.child, Const) and self.child.value == 1:
            return _NONE
        return _P if SCHUR in self.child.families() else _NONE


@dataclass(frozen=True)
class CayleyDrop(Node):
    """Schur function ``(h - i) / (h + i)`` of a Pick child, read in disk variables."""

    child: Node
    kind: ClassVar[str] = "cayley_drop"

    def ev(self, z1, z2):
        w2 = None if z2 is None else _cayley(z2)
        h = self.child.ev(_cayley(z1), w2)
        return (h - 1j) / (h + 1j)

    def children(self):
        return (self.child,)

    def families(self):
        return _S if PICK in self.child.families() else _NONE


@dataclass(frozen=True)
class Augmentation(Node):
    """``a0 + 1 / (1/(a1 (z_j - x)) - g)``, evaluated as ``a0 + a1 w / (1 - a1 w g)``."""

    child: Node
    x: float
    a0: float
    a1: float
    j: int = 1
    kind: ClassVar[str] = "augmentation"

    def ev(self, z1, z2):
        w = _coord(z1, z2, self.j) - self.x
        g = self.child.ev(z1, z2)
        return self.a0 + self.a1 * w / (1 - self.a1 * w * g)

    def children(self):
        return (self.child,)

    def families(self):
        return _pick_if(self.a1 > 0 and PICK in self.child.families())

    def arity(self):
        return max(self.j, self.child.arity())


@dataclass(frozen=True)
class Reduction(Node):
    """``-1/(f - a0) + 1/(a1 (z_j - x))`` for ``f`` with a B-point at ``x``."""

    child: Node
    x: float
    a0: float
    a1: float
    j: int = 1
    kind: ClassVar[str] = "reduction"

    def ev(self, z1, z2):
        w = _coord(z1, z2, self.j) - self.x
        return -1.0 / (self.child.ev(z1, z2) - self.a0) + 1.0 / (self.a1 * w)

    def children(self):
        return (self.child,)

    def families(self):
        if isinstance(self.child, Const):
            return _NONE
        return _pick_if(self.a1 > 0 and PICK in self.child.families())

    def arity(self):
        return max(self.j, self.child.arity())


@dataclass(frozen=True)
class RTerm:
    """One summand ``1 / (slope * (z_coord - edge))`` of the facial rational function."""

    coord: int
    edge: float
    slope: float


def eval_r(terms: tuple[RTerm, ...], z1, z2) -> np.ndarray:
    out = np.zeros(np.shape(z1), dtype=complex)
    for t in terms:
        out = out + 1.0 / (t.slope * (_coord(z1, z2, t.coord) - t.edge))
    return out


@dataclass(frozen=True)
class FacialSolution(Node):
    """``xi + 1 / (r - f)`` where ``r`` is the sum of the node terms."""

    terms: tuple[RTerm, ...]
    xi: float
    child: Node
    kind: ClassVar[str] = "facial_solution"

    def ev(self, z1, z2):
        return self.xi + 1.0 / (eval_r(self.terms, z1, z2) - self.child.ev(z1, z2))

    def children(self):
        return (self.child,)

    def families(self):
        ok = (len(self.terms) > 0 and all(t.slope > 0 for t in self.terms)
              and PICK in self.child.families())
        return _pick_if(ok)

    def arity(self):
        return max([self.child.arity()] + [t.coord for t in self.terms])


NODE_TYPES: dict[str, type[Node]] = {
    cls.kind: cls
    for cls in (Const, Coord, Linear, HerglotzAtom, NonnegSum, NegReciprocal, Shifted,
                PowerAlpha, LogBranch, NegCot, RationalSchur, Rotation, CayleyLift,
                CayleyDrop, Augmentation, Reduction, FacialSolution)
}


@dataclass(frozen=True)
class PickExpr:
    """A node tree together with its declared function class.

    ``vanishing_ok`` records, for catalog entries built around a boundary
    point ``x``, whether ``t f(x + i t) -> 0``; ``None`` when it depends on
    the point.
    """

    node: Node
    declared_class: FnClass
    vanishing_ok: bool | None = None
    label: str | None = None

    def __post_init__(self):
        cls = FnClass(self.declared_class)
        object.__setattr__(self, "declared_class", cls)
        fams = self.node.families()
        if cls.family not in fams:
            raise ClassRuleViolation(
                f"{self.node.kind} expression cannot be declared {cls.value} "
                f"(closure rules allow {sorted(fams) or 'nothing'})")
        if self.node.arity() > cls.arity:
            raise ArityError(f"expression uses {self.node.arity()} variables but is declared {cls.value}")

    @property
    def family(self) -> str:
        return self.declared_class.family

    @property
    def arity(self) -> int:
        return self.declared_class.arity

    def __call__(self, z, coord: int | None = None) -> complex:
        return evaluate(self, z, coord)

    @classmethod
    def unchecked(cls, node: Node, declared_class: FnClass | str, label: str | None = None) -> "PickExpr":
        """Declare a class without applying the closure rules.

        Meant for claims that are to be tested rather than trusted, e.g. feeding
        ``membership_scan`` an expression that is not in its declared class.
        """
        obj = object.__new__(cls)
        for name, value in (("node", node), ("declared_class", FnClass(declared_class)),
                            ("vanishing_ok", None), ("label", label)):
            object.__setattr__(obj, name, value)
        return obj

    def with_class(self, cls: FnClass | str) -> "PickExpr":
        return PickExpr(self.node, FnClass(cls), self.vanishing_ok, self.label)


def _check_domain(family: str, *coords):
    for c in coords:
        if c is None:
            continue
        c = np.asarray(c)
        if family == PICK:
            bad = ~(c.imag > 0)
        else:
            bad = ~(np.abs(c) < 1)
        if np.any(bad):
            where = "upper half-plane" if family == PICK else "unit disk"
            raise DomainError(f"point {c[bad].ravel()[0]!r} is not interior to the {where}")


def evaluate_arrays(f: PickExpr, z1, z2=None, check: bool = True) -> np.ndarray:
    """Evaluate ``f`` at many points at once; ``z2`` is ignored for one-variable ``f``."""
    z1 = np.asarray(z1, dtype=complex)
    if f.arity == 2:
        if z2 is None:
            raise ArityError(f"{f.declared_class.value} expression needs two coordinates")
        z2 = np.asarray(z2, dtype=complex)
    else:
        z2 = None
    if check:
        _check_domain(f.family, z1, z2)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        return f.node.ev(z1, z2)


def evaluate(f: PickExpr, z, coord: int | None = None) -> complex:
    """Value of ``f`` at one interior point.

    ``z`` is a complex number for one-variable expressions and a
    :class:`Point2` (or pair) for two-variable ones.  A one-variable
    expression may be read at a two-variable point by binding it to a
    coordinate with ``coord``.
    """
    pair = isinstance(z, (Point2, tuple, list))
    if f.arity == 1:
        if pair:
            if coord is None:
                raise ArityError("one-variable expression given a two-variable point without a coordinate binding")
            z = tuple(z)[coord - 1]
        return complex(evaluate_arrays(f, np.array([z]))[0])
    if not pair:
        raise ArityError("two-variable expression given a single complex number")
    a, b = tuple(z)
    return complex(evaluate_arrays(f, np.array([a]), np.array([b]))[0])


# --- serialization -----------------------------------------------------------

def encode_complex(c) -> dict:
    c = complex(c)
    return {"re": c.real, "im": c.imag}


def decode_complex(d) -> complex:
    if isinstance(d, dict):
        return complex(float(d.get("re", 0.0)), float(d.get("im", 0.0)))
    if isinstance(d, str):
        return complex(d.replace(" ", "").replace("i", "j"))
    return complex(d)


def node_to_dict(node: Node) -> dict:
    out: dict = {"kind": node.kind}
    for f in fields(node):
        v = getattr(node, f.name)
        if isinstance(v, Node):
            out[f.name] = node_to_dict(v)
        elif f.name == "terms" and isinstance(node, NonnegSum):
            out[f.name] = [node_to_dict(t) for t in v]
        elif f.name == "terms":
            out[f.name] = [{"coord": t.coord, "edge": t.edge, "slope": t.slope} for t in v]
        elif f.name in ("num", "den"):
            out[f.name] = [{"pow": list(p), "coef": encode_complex(c)} for p, c in v]
        elif f.name == "pre":
            out[f.name] = [encode_complex(c) for c in v]
        elif isinstance(v, complex):
            out[f.name] = encode_complex(v)
        elif isinstance(v, tuple):
            out[f.name] = [float(c) for c in v]
        else:
            out[f.name] = v
    return out


def node_from_dict(d: dict) -> Node:
    try:
        cls = NODE_TYPES[d["kind"]]
    except KeyError as exc:
        raise ValueError(f"unknown expression kind {d.get('kind')!r}") from exc
    kw = {}
    for f in fields(cls):
        if f.name not in d:
            continue
        v = d[f.name]
        if f.name == "child":
            v = node_from_dict(v)
        elif f.name == "terms" and cls is NonnegSum:
            v = tuple(node_from_dict(t) for t in v)
        elif f.name == "terms":
            v = tuple(RTerm(int(t["coord"]), float(t["edge"]), float(t["slope"])) for t in v)
        elif f.name in ("num", "den"):
            v = tuple((tuple(int(p) for p in m["pow"]), decode_complex(m["coef"])) for m in v)
        elif f.name == "pre":
            v = tuple(decode_complex(c) for c in v)
        elif f.name in ("value", "post"):
            v = decode_complex(v)
        elif f.name == "coeffs":
            v = tuple(float(c) for c in v)
        elif f.name == "j":
            v = int(v)
        else:
            v = float(v)
        kw[f.name] = v
    return cls(**kw)


def to_dict(f: PickExpr) -> dict:
    out = {"class": f.declared_class.value, "expr": node_to_dict(f.node)}
    if f.vanishing_ok is not None:
        out["vanishing_ok"] = f.vanishing_ok
    if f.label:
        out["label"] = f.label
    return out


def from_dict(d: dict) -> PickExpr:
    return PickExpr(node_from_dict(d["expr"]), FnClass(d["class"]),
                    d.get("vanishing_ok"), d.get("label"))


# --- builders ----------------------------------------------------------------

def _join_class(family: str, *exprs: PickExpr, arity: int = 1) -> FnClass:
    return FnClass.of(family, max([arity] + [e.arity for e in exprs]))


def const(c: complex, arity: int = 1) -> PickExpr:
    c = complex(c)
    fam = PICK if c.imag >= 0 else SCHUR
    return PickExpr(Const(c), FnClass.of(fam, arity), vanishing_ok=True)


def schur_const(c: complex, arity: int = 1) -> PickExpr:
    return PickExpr(Const(complex(c)), FnClass.of(SCHUR, arity))


def coord(j: int = 1, arity: int | None = None, family: str = PICK) -> PickExpr:
    return PickExpr(Coord(j), FnClass.of(family, arity or j), vanishing_ok=True)


def linear(slope: float, j: int = 1, arity: int | None = None) -> PickExpr:
    return PickExpr(Linear(float(slope), j), FnClass.of(PICK, arity or j), vanishing_ok=True)


def nonneg_sum(exprs, coeffs=None) -> PickExpr:
    exprs = list(exprs)
    coeffs = tuple(float(c) for c in (coeffs if coeffs is not None else [1.0] * len(exprs)))
    van = None
    if all(e.vanishing_ok is True for e in exprs):
        van = True
    return PickExpr(NonnegSum(tuple(e.node for e in exprs), coeffs), _join_class(PICK, *exprs),
                    vanishing_ok=van)


def neg_reciprocal(e: PickExpr) -> PickExpr:
    return PickExpr(NegReciprocal(e.node), _join_class(PICK, e))


def shifted(e: PickExpr, offset: float) -> PickExpr:
    return PickExpr(Shifted(e.node, float(offset)), _join_class(PICK, e), vanishing_ok=e.vanishing_ok)


def power_alpha(e: PickExpr, x: float, alpha: float) -> PickExpr:
    return PickExpr(PowerAlpha(e.node, float(x), float(alpha)), _join_class(PICK, e))


def log_branch(e: PickExpr, x: float) -> PickExpr:
    return PickExpr(LogBranch(e.node, float(x)), _join_class(PICK, e))


def neg_cot(e: PickExpr, x: float) -> PickExpr:
    return PickExpr(NegCot(e.node, float(x)), _join_class(PICK, e))


def is_constant(f: PickExpr) -> bool:
    return isinstance(f.node, Const)
