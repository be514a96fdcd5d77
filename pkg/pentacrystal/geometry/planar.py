"""Plane helpers: exact points over the (varpi_alpha, varpi_beta) frame and float geometry for placement checks."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from pentacrystal.algebra.chordring import QuotientRing, RingElem

EPS = 1e-9

XY = tuple[float, float]


def frame_vectors(m: int) -> tuple[XY, XY]:
    """Unit vectors varpi_alpha, varpi_beta at angle pi/m."""
    return (1.0, 0.0), (math.cos(math.pi / m), math.sin(math.pi / m))


@dataclass(frozen=True)
class PlanarPoint:
    """a varpi_alpha + b varpi_beta with exact ring coefficients."""

    a: RingElem
    b: RingElem
    m: int
    frame: str = "weights"

    @property
    def ring(self) -> QuotientRing:
        return self.a.ring

    @property
    def xy(self) -> XY:
        (ux, uy), (vx, vy) = frame_vectors(self.m)
        fa, fb = float(self.a), float(self.b)
        return fa * ux + fb * vx, fa * uy + fb * vy

    def __add__(self, other: PlanarPoint) -> PlanarPoint:
        return PlanarPoint(self.a + other.a, self.b + other.b, self.m, self.frame)

    def __sub__(self, other: PlanarPoint) -> PlanarPoint:
        return PlanarPoint(self.a - other.a, self.b - other.b, self.m, self.frame)

    def __neg__(self) -> PlanarPoint:
        return PlanarPoint(-self.a, -self.b, self.m, self.frame)

    def scaled(self, factor: RingElem | int) -> PlanarPoint:
        return PlanarPoint(self.a * factor, self.b * factor, self.m, self.frame)

    def norm2(self) -> RingElem:
        """Squared length a^2 + x ab + b^2 with x = 2cos(pi/m)."""
        return self.a * self.a + self.ring.gen() * self.a * self.b + self.b * self.b

    def cross(self, other: PlanarPoint) -> RingElem:
        """Cross product divided by sin(pi/m); zero exactly when the vectors are parallel."""
        return self.a * other.b - self.b * other.a

    def key(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return self.a.coords, self.b.coords

    def to_json(self) -> dict:
        return {"a": list(self.a.coords), "b": list(self.b.coords), "xy": [round(v, 6) for v in self.xy]}


def squared_distance(p: PlanarPoint, q: PlanarPoint) -> RingElem:
    return (p - q).norm2()


def collinear(p: PlanarPoint, q: PlanarPoint, r: PlanarPoint) -> bool:
    return (q - p).cross(r - p).is_zero()


def rotate(v: XY, angle: float) -> XY:
    c, s = math.cos(angle), math.sin(angle)
    return v[0] * c - v[1] * s, v[0] * s + v[1] * c


def sub(p: XY, q: XY) -> XY:
    return p[0] - q[0], p[1] - q[1]


def add(p: XY, q: XY) -> XY:
    return p[0] + q[0], p[1] + q[1]


def scale(v: XY, factor: float) -> XY:
    return v[0] * factor, v[1] * factor


def dist(p: XY, q: XY) -> float:
    return math.hypot(p[0] - q[0], p[1] - q[1])


def cross(o: XY, p: XY, q: XY) -> float:
    return (p[0] - o[0]) * (q[1] - o[1]) - (p[1] - o[1]) * (q[0] - o[0])


def signed_area(points: Sequence[XY]) -> float:
    total = 0.0
    for k, p in enumerate(points):
        q = points[(k + 1) % len(points)]
        total += p[0] * q[1] - q[0] * p[1]
    return total / 2


def point_segment_distance(p: XY, a: XY, b: XY) -> float:
    ab = sub(b, a)
    length2 = ab[0] ** 2 + ab[1] ** 2
    if length2 == 0:
        return dist(p, a)
    t = max(0.0, min(1.0, ((p[0] - a[0]) * ab[0] + (p[1] - a[1]) * ab[1]) / length2))
    return dist(p, add(a, scale(ab, t)))


def convex_overlap(first: Sequence[XY], second: Sequence[XY], tol: float = EPS) -> bool:
    """Separating-axis test: True when the interiors of two convex polygons intersect."""
    for poly in (first, second):
        for k in range(len(poly)):
            p, q = poly[k], poly[(k + 1) % len(poly)]
            axis = (q[1] - p[1], p[0] - q[0])
            norm = math.hypot(*axis) or 1.0
            axis = (axis[0] / norm, axis[1] / norm)
            proj1 = [v[0] * axis[0] + v[1] * axis[1] for v in first]
            proj2 = [v[0] * axis[0] + v[1] * axis[1] for v in second]
            if max(proj1) <= min(proj2) + tol or max(proj2) <= min(proj1) + tol:
                return False
    return True


def _segments_cross(p1: XY, p2: XY, q1: XY, q2: XY, tol: float) -> bool:
    d1 = cross(q1, q2, p1)
    d2 = cross(q1, q2, p2)
    d3 = cross(p1, p2, q1)
    d4 = cross(p1, p2, q2)
    return ((d1 > tol and d2 < -tol) or (d1 < -tol and d2 > tol)) and ((d3 > tol and d4 < -tol) or (d3 < -tol and d4 > tol))


def is_simple_polygon(points: Sequence[XY], tol: float = EPS) -> bool:
    """No two non-adjacent edges cross and the boundary is counter-clockwise."""
    count = len(points)
    if count < 3 or signed_area(points) <= tol:
        return False
    for i in range(count):
        for j in range(i + 1, count):
            if j == i + 1 or (i == 0 and j == count - 1):
                continue
            if _segments_cross(points[i], points[(i + 1) % count], points[j], points[(j + 1) % count], tol):
                return False
            if dist(points[i], points[j]) < tol:
                return False
    return True


def convex_hull(points: Sequence[XY]) -> list[XY]:
    """Monotone chain hull, counter-clockwise, collinear points dropped."""
    pts = sorted(set((round(x, 12), round(y, 12)) for x, y in points))
    if len(pts) <= 2:
        return list(pts)
    lower: list[XY] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= EPS:
            lower.pop()
        lower.append(p)
    upper: list[XY] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= EPS:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]
