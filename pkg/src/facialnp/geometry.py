"""Points of the bidisk and the bi-upper-half-plane, faces and ray paths.

Norms are max-norms: ``||(a, b)|| = max(|a|, |b|)``.  With that norm the
distance from an interior point to the complement is ``1 - ||lam||`` on the
bidisk and ``min(Im z1, Im z2)`` on the bi-half-plane.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BadRatio, DomainError, StepLeavesDomain

UNIT_TOL = 1e-12
#: Smallest scale a path may use; below this ``1 - t`` loses too many digits.
T_MIN = 1e-9
#: Longest ladder an adaptive estimate may grow to: t_k = t0 ratio^k for k <= 25.
MAX_SCALES = 26


class Space(str, enum.Enum):
    DISK = "disk"
    HALFPLANE = "halfplane"


class Face(enum.IntEnum):
    FIRST = 1
    SECOND = 2


@dataclass(frozen=True)
class Point2:
    c1: complex
    c2: complex

    def __getitem__(self, j: int) -> complex:
        if j == 1:
            return self.c1
        if j == 2:
            return self.c2
        raise IndexError(j)

    def in_disk(self) -> bool:
        return abs(self.c1) < 1 and abs(self.c2) < 1

    def in_halfplane(self) -> bool:
        return self.c1.imag > 0 and self.c2.imag > 0

    def inside(self, space: Space) -> bool:
        return self.in_disk() if space is Space.DISK else self.in_halfplane()

    def __iter__(self):
        yield self.c1
        yield self.c2


def _as_point(p) -> Point2:
    if isinstance(p, Point2):
        return p
    a, b = p
    return Point2(complex(a), complex(b))


@dataclass(frozen=True)
class FacePoint:
    """A boundary point lying on a face.

    ``face=FIRST`` is the point ``(edge, interior)`` and ``face=SECOND`` is
    ``(interior, edge)``.  The edge coordinate is unimodular on the disk and
    real on the half-plane.
    """

    space: Space
    face: Face
    edge: complex
    interior: complex

    def __post_init__(self):
        object.__setattr__(self, "space", Space(self.space))
        object.__setattr__(self, "face", Face(self.face))
        object.__setattr__(self, "edge", complex(self.edge))
        object.__setattr__(self, "interior", complex(self.interior))
        if self.space is Space.DISK:
            if abs(abs(self.edge) - 1.0) > UNIT_TOL:
                raise DomainError(f"disk edge coordinate {self.edge} is not unimodular")
            if abs(self.interior) > 1.0 + UNIT_TOL:
                raise DomainError(f"disk interior coordinate {self.interior} lies outside the closed disk")
        else:
            if abs(self.edge.imag) > UNIT_TOL:
                raise DomainError(f"half-plane edge coordinate {self.edge} is not real")
            object.__setattr__(self, "edge", complex(self.edge.real, 0.0))
            if self.interior.imag < 0:
                raise DomainError(f"half-plane interior coordinate {self.interior} is below the axis")

    @property
    def edge_index(self) -> int:
        return int(self.face)

    @property
    def interior_index(self) -> int:
        return 3 - int(self.face)

    def as_point(self) -> Point2:
        if self.face is Face.FIRST:
            return Point2(self.edge, self.interior)
        return Point2(self.interior, self.edge)

    @property
    def is_corner(self) -> bool:
        """Both coordinates on the boundary (distinguished boundary of the domain)."""
        if self.space is Space.DISK:
            return abs(abs(self.interior) - 1.0) <= UNIT_TOL
        return self.interior.imag == 0

    def inward_direction(self) -> tuple[complex, complex]:
        """Unit direction perpendicular to the face, pointing into the domain.

        At a corner both coordinates move inward: the radial (disk) or
        vertical (half-plane) approach.
        """
        n = -self.edge if self.space is Space.DISK else 1j
        m = 0j
        if self.is_corner:
            m = -self.interior / abs(self.interior) if self.space is Space.DISK else 1j
        return (n, m) if self.face is Face.FIRST else (m, n)


def max_norm(a: complex, b: complex) -> float:
    return max(abs(a), abs(b))


def dist_to_complement(point: Point2, space: Space) -> float:
    """Max-norm distance from an interior point to the complement of the domain."""
    if space is Space.DISK:
        return 1.0 - max_norm(point.c1, point.c2)
    return min(point.c1.imag, point.c2.imag)


def aperture_of(point, target: FacePoint) -> float:
    """Ratio ``||point - target|| / dist(point, complement)`` for one point."""
    point = _as_point(point)
    if not point.inside(target.space):
        raise DomainError(f"{point} is not interior to the {target.space.value}")
    tp = target.as_point()
    return max_norm(point.c1 - tp.c1, point.c2 - tp.c2) / dist_to_complement(point, target.space)


@dataclass(frozen=True)
class PathSamples:
    """Finite ray approach ``target + t_k * direction`` with ``t_k = t0 * ratio**k``."""

    target: FacePoint
    points: tuple[Point2, ...]
    scales: np.ndarray = field(repr=False)
    aperture: float
    direction: tuple[complex, complex] = (0j, 0j)
    truncated: bool = False

    @property
    def ratio(self) -> float:
        return float(self.scales[1] / self.scales[0])

    def coords(self) -> tuple[np.ndarray, np.ndarray]:
        z1 = np.array([p.c1 for p in self.points], dtype=complex)
        z2 = np.array([p.c2 for p in self.points], dtype=complex)
        return z1, z2

    def __len__(self):
        return len(self.points)


def geometric_scales(t0: float, ratio: float, count: int) -> np.ndarray:
    if not 0.0 < ratio < 1.0:
        raise BadRatio(f"ratio must lie in (0, 1), got {ratio}")
    if t0 <= 0:
        raise ValueError(f"t0 must be positive, got {t0}")
    return t0 * ratio ** np.arange(count, dtype=float)


def nontangential_path(target: FacePoint, direction, t0: float = 0.1, ratio: float = 0.5,
                       count: int = 25, t_min: float = T_MIN) -> PathSamples:
    if count < 4:
        raise ValueError(f"a path needs at least 4 samples, got {count}")
    scales = geometric_scales(t0, ratio, count)
    truncated = bool(scales[-1] < t_min)
    if truncated:
        scales = scales[scales >= t_min]
        if len(scales) < 4:
            raise ValueError("fewer than 4 scales remain above the floor")
    d1, d2 = (complex(d) for d in direction)
    base = target.as_point()
    points = []
    for t in scales:
        p = Point2(base.c1 + t * d1, base.c2 + t * d2)
        if not p.inside(target.space):
            raise StepLeavesDomain(f"sample at t={t:g} ({p}) leaves the open {target.space.value}")
        points.append(p)
    aperture = max(aperture_of(p, target) for p in points)
    return PathSamples(target, tuple(points), scales, aperture, (d1, d2), truncated)


def perpendicular_path(target: FacePoint, t0: float = 0.1, ratio: float = 0.5,
                       count: int = 25) -> PathSamples:
    """Radial (disk) or vertical (half-plane) approach through the edge coordinate."""
    return nontangential_path(target, target.inward_direction(), t0, ratio, count)


def inward_normal(space: Space, boundary_coord: complex) -> complex:
    return -boundary_coord / abs(boundary_coord) if space is Space.DISK else 1j


def on_circle(c: complex) -> bool:
    return math.isclose(abs(c), 1.0, abs_tol=UNIT_TOL)
