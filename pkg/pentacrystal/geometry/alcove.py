"""Alcoves of type A_2n and their images in the plane of the dihedral group of order 2(2n+1).

Weights are integer tuples over the fundamental weights w_1..w_2n. An alcove is
stored by its vertices v_0..v_2n with v_k of type k (v_k lies in w_k plus the
root lattice); crossing the wall opposite v_k replaces v_k by v_{k-1} + v_{k+1} - v_k.
"""
from __future__ import annotations

import functools
import itertools
import logging
import math
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
import sympy

from pentacrystal.algebra.chordring import QuotientRing, RingElem, bridge_ring, cheb, minimal_ring, normal_chord_index
from pentacrystal.crystal.engine import cartan_type_a
from pentacrystal.geometry import planar
from pentacrystal.geometry.planar import PlanarPoint

logger = logging.getLogger(__name__)

PENTAGON_N = 2
CELLS_PER_SIDE = 5
MAX_LINE_N = 5

Weight = tuple[int, ...]


class AlcoveError(ValueError):
    """Raised for malformed alcoves, incompatible reflection pairs or regions that cannot be tiled."""


class WalkError(ValueError):
    """Raised when a reflection walk does not run through every alcove it must visit."""


def _check_n(n: int) -> None:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")


def zero_weight(n: int) -> Weight:
    return (0,) * (2 * n)


def fundamental_weight(n: int, k: int) -> Weight:
    """w_k for 1 <= k <= 2n; k = 0 gives the zero weight."""
    if not 0 <= k <= 2 * n:
        raise ValueError(f"fundamental weight index {k} out of range for A_{2 * n}")
    return tuple(1 if j == k - 1 else 0 for j in range(2 * n))


def simple_root(n: int, k: int) -> Weight:
    if not 1 <= k <= 2 * n:
        raise ValueError(f"simple root index {k} out of range for A_{2 * n}")
    return tuple(cartan_type_a(2 * n)[k - 1])


def highest_root(n: int) -> Weight:
    return tuple(1 if j in (0, 2 * n - 1) else 0 for j in range(2 * n))


def add(a: Weight, b: Weight) -> Weight:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Weight, b: Weight) -> Weight:
    return tuple(x - y for x, y in zip(a, b))


def times(c: int, a: Weight) -> Weight:
    return tuple(c * x for x in a)


def weight_type(n: int, weight: Weight) -> int:
    """k with weight in w_k + root lattice."""
    return sum((j + 1) * c for j, c in enumerate(weight)) % (2 * n + 1)


def in_root_lattice(n: int, weight: Weight) -> bool:
    return weight_type(n, weight) == 0


@functools.lru_cache(maxsize=None)
def _inverse_cartan(n: int) -> sympy.Matrix:
    return sympy.Matrix(cartan_type_a(2 * n)).inv()


def weight_to_roots(n: int, weight: Weight) -> tuple[Fraction, ...]:
    """Coordinates over the simple roots."""
    coords = _inverse_cartan(n) * sympy.Matrix(weight)
    return tuple(Fraction(int(v.p), int(v.q)) for v in coords)


def reflect_weight(n: int, k: int, weight: Weight) -> Weight:
    """s_k for 1 <= k <= 2n; k = 0 is the affine reflection in the wall theta = 1."""
    if k == 0:
        theta = highest_root(n)
        return sub(weight, times(sum(weight) - 1, theta))
    return sub(weight, times(weight[k - 1], simple_root(n, k)))


def affine_reflection_failures(n: int) -> list[str]:
    """s_0(h) = h - (theta(h) - 1) theta is an involution fixing theta = 1 and sending 0 to theta."""
    _check_n(n)
    size = 2 * n
    theta = np.array(highest_root(n), dtype=np.int64)
    linear = np.eye(size, dtype=np.int64) - np.outer(theta, np.ones(size, dtype=np.int64))
    failures = []
    if not np.array_equal(linear @ linear, np.eye(size, dtype=np.int64)):
        failures.append("linear part of s_0 does not square to the identity")
    if not np.array_equal(linear @ theta + theta, np.zeros(size, dtype=np.int64)):
        failures.append("translation part of s_0 does not cancel")
    for k in range(1, size + 1):
        w = fundamental_weight(n, k)
        if reflect_weight(n, 0, w) != w:
            failures.append(f"s_0 moves w_{k} on its wall")
    if reflect_weight(n, 0, zero_weight(n)) != highest_root(n):
        failures.append("s_0(0) differs from the highest root")
    if Alcove.fundamental(n).flip(0).vertices[0] != highest_root(n):
        failures.append("flip of v_0 disagrees with s_0")
    return failures


def to_epsilon(n: int, weight: Weight) -> tuple[int, ...]:
    """Coordinates over the defining-representation weights, last one zero."""
    m = 2 * n + 1
    return tuple(sum(weight[k] for k in range(j, 2 * n)) for j in range(m))


def from_epsilon(eps: Sequence[int]) -> Weight:
    return tuple(eps[k] - eps[k + 1] for k in range(len(eps) - 1))


def permute_weight(n: int, perm: Sequence[int], weight: Weight) -> Weight:
    """Action of the Weyl group (permutations of the defining weights)."""
    eps = to_epsilon(n, weight)
    out = [0] * len(eps)
    for j, target in enumerate(perm):
        out[target] = eps[j]
    return from_epsilon(out)


def defining_weights(n: int) -> list[Weight]:
    m = 2 * n + 1
    result = []
    for j in range(m):
        w = [0] * (2 * n)
        if j < 2 * n:
            w[j] += 1
        if j > 0:
            w[j - 1] -= 1
        result.append(tuple(w))
    return result


def _euclid(n: int, weight: Weight) -> tuple[int, ...]:
    """m times the traceless defining coordinates; a W-invariant Euclidean frame."""
    eps = to_epsilon(n, weight)
    total = sum(eps)
    return tuple((2 * n + 1) * e - total for e in eps)


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


@dataclass(frozen=True, order=True)
class Alcove:
    n: int
    vertices: tuple[Weight, ...]

    def __post_init__(self) -> None:
        m = 2 * self.n + 1
        if len(self.vertices) != m:
            raise AlcoveError(f"an alcove of A_{2 * self.n} has {m} vertices, got {len(self.vertices)}")
        for k, v in enumerate(self.vertices):
            if len(v) != 2 * self.n or weight_type(self.n, v) != k:
                raise AlcoveError(f"vertex {v} is not of type {k}")

    @classmethod
    def fundamental(cls, n: int) -> Alcove:
        _check_n(n)
        return cls(n, tuple(fundamental_weight(n, k) for k in range(2 * n + 1)))

    @property
    def m(self) -> int:
        return 2 * self.n + 1

    def flip(self, k: int) -> Alcove:
        """Reflect across the wall opposite v_k."""
        m = self.m
        if not 0 <= k < m:
            raise AlcoveError(f"wall index {k} out of range for m={m}")
        v = self.vertices
        new = sub(add(v[(k - 1) % m], v[(k + 1) % m]), v[k])
        return Alcove(self.n, v[:k] + (new,) + v[k + 1 :])

    def flips(self, word: Iterable[int]) -> Alcove:
        current = self
        for k in word:
            current = current.flip(k)
        return current

    def translate(self, weight: Weight) -> Alcove:
        if not in_root_lattice(self.n, weight):
            raise AlcoveError(f"translation {weight} is not in the root lattice")
        return Alcove(self.n, tuple(add(v, weight) for v in self.vertices))

    def apply_weyl(self, perm: Sequence[int]) -> Alcove:
        return Alcove(self.n, tuple(permute_weight(self.n, perm, v) for v in self.vertices))

    def image(self, ring: QuotientRing | None = None) -> tuple[PlanarPoint, ...]:
        return tuple(psi_prime(self.n, v, ring) for v in self.vertices)

    def root_lattice_vertices(self) -> list[int]:
        return [k for k, v in enumerate(self.vertices) if in_root_lattice(self.n, v)]

    def barycenter_frame(self) -> tuple[int, ...]:
        """m times the barycenter in the Euclidean frame."""
        total = [0] * self.m
        for v in self.vertices:
            for j, x in enumerate(_euclid(self.n, v)):
                total[j] += x
        return tuple(total)

    def separating_walls(self, target: Alcove) -> list[int]:
        """Walls of this alcove with the target on the far side."""
        point = target.barycenter_frame()
        walls = []
        for k in range(self.m):
            v = _euclid(self.n, self.vertices[k])
            w = _euclid(self.n, self.flip(k).vertices[k])
            normal = [a - b for a, b in zip(v, w)]
            offset = [2 * p - self.m * (a + b) for p, a, b in zip(point, v, w)]
            if _dot(offset, normal) < 0:
                walls.append(k)
        return walls

    def to_json(self) -> dict:
        return {"vertices": [list(v) for v in self.vertices], "image": [p.to_json() for p in self.image()]}


def is_alcove(alcove: Alcove) -> bool:
    """The vertices, moved so v_0 sits at 0, form a chain w(w_1), ..., w(w_2n) for a permutation w."""
    base = alcove.vertices[0]
    previous: set[int] = set()
    for k, v in enumerate(alcove.vertices[1:], start=1):
        eps = to_epsilon(alcove.n, sub(v, base))
        low = min(eps)
        shifted = [e - low for e in eps]
        if any(e not in (0, 1) for e in shifted) or sum(shifted) != k:
            return False
        support = {j for j, e in enumerate(shifted) if e}
        if not previous <= support:
            return False
        previous = support
    return True


def g_element(ring: QuotientRing, i: int) -> RingElem:
    """g_i = P_2i(x) in the given ring."""
    return ring.from_poly(cheb("P", 2 * i))


def psi_prime(n: int, weight: Weight, ring: QuotientRing | None = None) -> PlanarPoint:
    """Image with w_{2i+1} -> g_i w_alpha and w_{2n-2i} -> g_i w_beta."""
    ring = ring or bridge_ring(n)
    a = ring.zero()
    b = ring.zero()
    for i in range(n):
        g = g_element(ring, i)
        a = a + g * weight[2 * i]
        b = b + g * weight[2 * n - 2 * i - 1]
    return PlanarPoint(a, b, 2 * n + 1)


def psi_prime_inverse(n: int, point: PlanarPoint) -> Weight:
    """Preimage over the weight lattice; the point must carry coordinates over bridge_ring(n)."""
    if point.ring != bridge_ring(n):
        raise AlcoveError(f"point over {point.ring.name} cannot be pulled back; expected bridge[{n}]")
    weight = [0] * (2 * n)
    for i in range(n):
        weight[2 * i] = point.a.coords[i]
        weight[2 * n - 2 * i - 1] = point.b.coords[i]
    return tuple(weight)


def origin(n: int, ring: QuotientRing | None = None) -> PlanarPoint:
    ring = ring or bridge_ring(n)
    return PlanarPoint(ring.zero(), ring.zero(), 2 * n + 1)


def plane_root(n: int, root: str, ring: QuotientRing | None = None) -> PlanarPoint:
    ring = ring or bridge_ring(n)
    x = ring.gen()
    if root == "alpha":
        return PlanarPoint(ring.from_int(2), -x, 2 * n + 1)
    if root == "beta":
        return PlanarPoint(-x, ring.from_int(2), 2 * n + 1)
    raise ValueError(f"unknown root {root!r}")


def s_alpha(p: PlanarPoint) -> PlanarPoint:
    return PlanarPoint(-p.a, p.b + p.ring.gen() * p.a, p.m, p.frame)


def s_beta(p: PlanarPoint) -> PlanarPoint:
    return PlanarPoint(p.a + p.ring.gen() * p.b, -p.b, p.m, p.frame)


def plane_reflection(n: int, k: int, p: PlanarPoint) -> PlanarPoint:
    """Component reflection matching s_k: p - a_i g_i alpha for k = 2i+1, p - b_i g_i beta for k = 2n-2i."""
    ring = p.ring
    if k % 2:
        i = (k - 1) // 2
        return p - plane_root(n, "alpha", ring).scaled(g_element(ring, i) * p.a.coords[i])
    i = (2 * n - k) // 2
    return p - plane_root(n, "beta", ring).scaled(g_element(ring, i) * p.b.coords[i])


def psi_commutation_failures(n: int, weights: Iterable[Weight] | None = None) -> list[dict]:
    """Weights and reflections where psi'(s_k w) differs from the plane reflection of psi'(w)."""
    _check_n(n)
    if weights is None:
        weights = [fundamental_weight(n, k) for k in range(2 * n + 1)]
        weights += [add(fundamental_weight(n, k), times(3, fundamental_weight(n, 2 * n + 1 - k))) for k in range(1, 2 * n + 1)]
    failures = []
    for weight in weights:
        image = psi_prime(n, weight)
        for k in range(1, 2 * n + 1):
            left = psi_prime(n, reflect_weight(n, k, weight))
            right = plane_reflection(n, k, image)
            if left != right:
                failures.append({"weight": list(weight), "reflection": k})
    return failures


def fundamental_image(n: int, ring: QuotientRing | None = None) -> list[PlanarPoint]:
    """x_0 .. x_{2n+1} with x_0 = x_{2n+1} = 0 and x_i = psi'(w_i)."""
    _check_n(n)
    points = [psi_prime(n, fundamental_weight(n, k), ring) for k in range(2 * n + 1)]
    return points + [points[0]]


def shoelace_failures(n: int) -> list[int]:
    """Indices i with |x_i x_{i+1}|^2 different from 1."""
    points = fundamental_image(n)
    one = points[0].ring.one()
    return [i for i in range(2 * n + 1) if planar.squared_distance(points[i], points[i + 1]) != one]


def cone_angle(n: int) -> float:
    points = fundamental_image(n)
    (ax, ay), (bx, by) = points[1].xy, points[2 * n].xy
    return abs(math.atan2(ax * by - ay * bx, ax * bx + ay * by))


def zigzag_weight(n: int, i: int) -> Weight:
    """w_1 - alpha_1 - ... - alpha_i, a weight of the defining representation."""
    _check_n(n)
    if not 0 <= i <= 2 * n:
        raise ValueError(f"zig-zag index {i} out of range for A_{2 * n}")
    weight = fundamental_weight(n, 1)
    for k in range(1, i + 1):
        weight = sub(weight, simple_root(n, k))
    return weight


def zigzag_vertices(n: int, ring: QuotientRing | None = None) -> list[PlanarPoint]:
    """v_0 .. v_2n: the defining weights in plane order; they are the corners of the regular (2n+1)-gon."""
    return [psi_prime(n, zigzag_weight(n, i), ring) for i in range(2 * n + 1)]


@dataclass(frozen=True)
class ZigZagTriangle:
    """T_i = {v_(i-1), v_i, v_(i+1)} with angles in units pi/m and sides as chord indices."""

    index: int
    points: tuple[PlanarPoint, PlanarPoint, PlanarPoint]
    angles: tuple[int, int, int]
    sides: tuple[int, int, int]

    @property
    def label(self) -> tuple[int, ...]:
        return tuple(sorted(self.angles))

    def to_json(self) -> dict:
        return {"index": self.index, "angles": list(self.angles), "sides": list(self.sides), "points": [p.to_json() for p in self.points]}


def _angle_units(at: PlanarPoint, p: PlanarPoint, q: PlanarPoint) -> int:
    (ax, ay), (px, py), (qx, qy) = at.xy, p.xy, q.xy
    ux, uy, vx, vy = px - ax, py - ay, qx - ax, qy - ay
    units = math.atan2(abs(ux * vy - uy * vx), ux * vx + uy * vy) * at.m / math.pi
    nearest = round(units)
    if abs(units - nearest) > 1e-6:
        raise AlcoveError(f"angle {units:.6f} pi/{at.m} is not a multiple of pi/{at.m}")
    return nearest


def _side_index(p: PlanarPoint, q: PlanarPoint, unit: RingElem) -> int:
    """k with |pq|^2 = unit * p_k^2, k normalised to at most (m-2)/2."""
    d2 = planar.squared_distance(p, q)
    for k in range((p.m - 2) // 2 + 1):
        chord = p.ring.from_poly(cheb("P", k))
        if unit * chord * chord == d2:
            return k
    raise AlcoveError(f"segment of squared length {d2} is not a chord of the {p.m}-gon")


def zigzag_triangulation(n: int) -> list[ZigZagTriangle]:
    """T_1 .. T_(2n-1); sides of T_i are listed as v_(i-1)v_i, v_iv_(i+1), v_(i+1)v_(i-1), angles at v_i, v_(i+1), v_(i-1)."""
    vertices = zigzag_vertices(n)
    unit = planar.squared_distance(vertices[0], vertices[1])
    triangles = []
    for i in range(1, 2 * n):
        before, here, after = vertices[i - 1], vertices[i], vertices[i + 1]
        triangles.append(
            ZigZagTriangle(
                index=i,
                points=(before, here, after),
                angles=(_angle_units(here, after, before), _angle_units(after, before, here), _angle_units(before, here, after)),
                sides=(_side_index(before, here, unit), _side_index(here, after, unit), _side_index(after, before, unit)),
            )
        )
    return triangles


def zigzag_failures(n: int) -> list[dict]:
    """Triangles whose angles differ from (1, i, 2n-i) or sides from (p_(i-1), p_i, p_0), plus corner and area defects."""
    m = 2 * n + 1
    vertices = zigzag_vertices(n)
    one = vertices[0].ring.one()
    failures: list[dict] = [{"vertex": i} for i, v in enumerate(vertices) if v.norm2() != one]
    triangles = zigzag_triangulation(n)
    for t in triangles:
        i = t.index
        angles = (1, i, 2 * n - i)
        sides = (normal_chord_index(m, i - 1), normal_chord_index(m, i), 0)
        if t.angles != angles or t.sides != sides:
            failures.append({"triangle": i, "angles": list(t.angles), "sides": list(t.sides)})
    area = sum(abs(planar.signed_area([p.xy for p in t.points])) for t in triangles)
    polygon = abs(planar.signed_area(planar.convex_hull([v.xy for v in vertices])))
    if abs(area - polygon) > 1e-9:
        failures.append({"area": area, "polygon": polygon})
    logger.debug("zig-zag of the %s-gon: %s triangles, %s failures", m, len(triangles), len(failures))
    return failures


@dataclass(frozen=True)
class AlcoveImage:
    """Image points of an alcove (indexed by vertex type) and its shape label."""

    points: tuple[PlanarPoint, ...]
    shape: str = ""

    def key(self) -> frozenset:
        return frozenset(p.key() for p in self.points)

    def hull_size(self) -> int:
        return len(planar.convex_hull([p.xy for p in self.points]))

    def kind(self) -> str:
        hull = self.hull_size()
        if hull == 3:
            return "T"
        if hull == 4:
            return "R"
        side = min(planar.dist(p.xy, q.xy) for p, q in itertools.combinations(self.points, 2))
        return "P_s" if side < 0.8 else "P_l"

    def origin_is_corner(self) -> bool:
        hull = planar.convex_hull([p.xy for p in self.points])
        return any(abs(x) < planar.EPS and abs(y) < planar.EPS for x, y in hull)

    def to_json(self) -> dict:
        return {"shape": self.shape, "points": [p.to_json() for p in self.points]}


def _w_orbit(points: tuple[PlanarPoint, ...]) -> list[tuple[PlanarPoint, ...]]:
    seen = {frozenset(p.key() for p in points): points}
    frontier = [points]
    while frontier:
        nxt = []
        for current in frontier:
            for reflect in (s_alpha, s_beta):
                image = tuple(reflect(p) for p in current)
                key = frozenset(p.key() for p in image)
                if key not in seen:
                    seen[key] = image
                    nxt.append(image)
        frontier = nxt
    return list(seen.values())


@dataclass
class ShapeClass:
    label: str
    kind: str
    size: int
    representative: AlcoveImage

    def as_dict(self) -> dict:
        return {"label": self.label, "kind": self.kind, "orbit_size": self.size, "representative": self.representative.to_json()}


@dataclass
class ShapeReport:
    images: int = 0
    classes: list[ShapeClass] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures and len(self.classes) == 12

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "images": self.images,
            "class_count": len(self.classes),
            "classes": [c.as_dict() for c in self.classes],
            "failures": self.failures,
        }


def weyl_images(n: int) -> list[Alcove]:
    """The fundamental alcove under every permutation of the defining weights."""
    base = Alcove.fundamental(n)
    return [base.apply_weyl(perm) for perm in itertools.permutations(range(2 * n + 1))]


def _origin_key(image: AlcoveImage) -> tuple:
    return tuple(sorted(round(planar.dist(p.xy, (0.0, 0.0)), 9) for p in image.points))


def shape_classes(n: int = PENTAGON_N) -> ShapeReport:
    """Images of the Weyl translates of the fundamental alcove, grouped into orbits of the dihedral group."""
    if n != PENTAGON_N:
        raise ValueError(f"shape classes are only defined for the pentagonal case n={PENTAGON_N}, got {n}")
    report = ShapeReport()
    images = {}
    for alcove in weyl_images(n):
        image = AlcoveImage(alcove.image())
        images[image.key()] = image
    report.images = len(images)
    if report.images != 120:
        report.failures.append(f"expected 120 distinct images, found {report.images}")
    fundamental_key = AlcoveImage(Alcove.fundamental(n).image()).key()
    remaining = dict(images)
    orbits: list[tuple[AlcoveImage, int, bool]] = []
    while remaining:
        key, image = next(iter(sorted(remaining.items(), key=lambda kv: sorted(kv[0]))))
        orbit = _w_orbit(image.points)
        keys = {frozenset(p.key() for p in pts) for pts in orbit}
        contains_fundamental = fundamental_key in keys
        for k in keys:
            remaining.pop(k, None)
        if not keys <= set(images):
            report.failures.append("a dihedral image of an alcove image is not itself an alcove image")
        if len(keys) != 10:
            report.failures.append(f"orbit of size {len(keys)}; stabilizers are not trivial")
        orbits.append((image, len(keys), contains_fundamental))

    counters: Counter = Counter()
    grouped: dict[str, list[tuple[AlcoveImage, int, bool]]] = {}
    for image, size, fundamental in orbits:
        grouped.setdefault(image.kind(), []).append((image, size, fundamental))
    for kind in ("P_s", "P_l", "T", "R"):
        members = grouped.get(kind, [])
        if kind in ("P_s", "P_l"):
            for image, size, _ in members:
                report.classes.append(ShapeClass(kind, kind, size, AlcoveImage(image.points, kind)))
            if len(members) != 1:
                report.failures.append(f"{len(members)} classes of kind {kind}")
            continue
        if kind == "T":
            first = [entry for entry in members if entry[2]]
        else:
            first = [entry for entry in members if not entry[0].origin_is_corner()]
        rest = sorted((entry for entry in members if entry not in first), key=lambda e: _origin_key(e[0]))
        for index, (image, size, _) in enumerate(first + rest):
            label = f"{kind}{index}"
            counters[kind] += 1
            report.classes.append(ShapeClass(label, kind, size, AlcoveImage(image.points, label)))
        if len(members) != 5 or len(first) != 1:
            report.failures.append(f"{len(members)} classes of kind {kind}")

    ring = bridge_ring(n)
    g = ring.gen()
    one, golden2, inverse2 = ring.one(), g + 1, 2 - g
    zero = origin(n)
    for shape in report.classes:
        points = shape.representative.points
        if shape.kind == "R":
            hull_xy = planar.convex_hull([p.xy for p in points])
            corners = [next(p for p in points if planar.dist(p.xy, xy) < 1e-9) for xy in hull_xy]
            sides = Counter(planar.squared_distance(corners[i], corners[(i + 1) % 4]) for i in range(4))
            if sides != Counter({one: 3, golden2: 1}):
                report.failures.append(f"{shape.label} sides are not three of length 1 and one of length g")
        if shape.kind == "P_s":
            near = sum(1 for p in points if planar.squared_distance(p, zero) == inverse2)
            if near != 2:
                report.failures.append(f"P_s has {near} vertices at distance 1/g from the origin")
    logger.info("shape classes: %s images in %s classes", report.images, len(report.classes))
    return report


def _line_directions(n: int, ring: QuotientRing) -> list[PlanarPoint]:
    start = PlanarPoint(ring.one(), ring.zero(), 2 * n + 1)
    return [pts[0] for pts in _w_orbit((start,))]


def weight_line_count(n: int) -> tuple[int, int]:
    """(on_lines, total) over nonzero sums of distinct defining weights."""
    _check_n(n)
    if n > MAX_LINE_N:
        raise ValueError(f"n={n} exceeds the enumeration limit {MAX_LINE_N}")
    ring = minimal_ring(2 * n + 1)
    directions = _line_directions(n, ring)
    weights = defining_weights(n)
    sums: set[Weight] = set()
    for size in range(1, 2 * n + 1):
        for subset in itertools.combinations(weights, size):
            total = zero_weight(n)
            for w in subset:
                total = add(total, w)
            sums.add(total)
    on_lines = 0
    for weight in sums:
        point = psi_prime(n, weight, ring)
        if any(point.cross(d).is_zero() for d in directions):
            on_lines += 1
    logger.info("weight lines n=%s: %s of %s", n, on_lines, len(sums))
    return on_lines, len(sums)


def compatible_step(alcove: Alcove, s: int, s_prime: int) -> frozenset[Weight]:
    """The three vertices shared by A and s' s A."""
    if s == s_prime:
        raise AlcoveError(f"reflections of a compatible pair must differ, got {s} twice")
    other = alcove.flip(s).flip(s_prime)
    shared = frozenset(alcove.vertices) & frozenset(other.vertices)
    if len(shared) != 3:
        raise AlcoveError(f"alcove and its image share {len(shared)} vertices")
    return shared


def compatible_pair(alcove: Alcove, vertices: Iterable[Weight]) -> tuple[int, int]:
    """The pair (s, s') whose two-step image shares exactly the given three vertices."""
    chosen = set(vertices)
    if not chosen <= set(alcove.vertices):
        raise AlcoveError("given vertices are not vertices of the alcove")
    if len(chosen) != 3:
        raise AlcoveError(f"a compatible pair fixes exactly three vertices, {len(chosen)} given")
    s, s_prime = [k for k, v in enumerate(alcove.vertices) if v not in chosen]
    compatible_step(alcove, s, s_prime)
    return s, s_prime


@dataclass(frozen=True)
class Cell:
    """Triangle of the grid subdividing the region: apex, the two base corners, the two side points (CCW)."""

    row: int
    col: int
    orientation: str
    apex: PlanarPoint
    corners: tuple[PlanarPoint, PlanarPoint]
    side_points: tuple[PlanarPoint, PlanarPoint]

    def points(self) -> tuple[PlanarPoint, ...]:
        return (self.apex, *self.corners, *self.side_points)

    def outline(self) -> tuple[PlanarPoint, PlanarPoint, PlanarPoint]:
        return self.apex, self.corners[0], self.corners[1]


def _frame(n: int = PENTAGON_N) -> tuple[PlanarPoint, PlanarPoint, PlanarPoint, PlanarPoint]:
    """(u, v, unit_alpha, unit_beta) = psi'(w_3), psi'(w_2), psi'(w_1), psi'(w_4)."""
    return (
        psi_prime(n, fundamental_weight(n, 3)),
        psi_prime(n, fundamental_weight(n, 2)),
        psi_prime(n, fundamental_weight(n, 1)),
        psi_prime(n, fundamental_weight(n, 4)),
    )


def region_cells(size: int) -> list[Cell]:
    """Cells of the triangle with corners 0, size*psi'(w_2), size*psi'(w_3)."""
    if size < 1:
        raise AlcoveError(f"region size must be positive, got {size}")
    u, v, ea, eb = _frame()
    cells = []
    for i in range(size):
        for j in range(size - i):
            p = u.scaled(i) + v.scaled(j)
            cells.append(Cell(i, j, "up", p, (p + u, p + v), (p + ea, p + eb)))
    for i in range(size - 1):
        for j in range(size - 1 - i):
            q = u.scaled(i + 1) + v.scaled(j + 1)
            cells.append(Cell(i, j, "down", q, (q - u, q - v), (q - ea, q - eb)))
    return cells


def alcove_for_cell(cell: Cell) -> Alcove:
    """The alcove whose image is the cell, read off from the preimages of its five points."""
    n = PENTAGON_N
    preimages = [psi_prime_inverse(n, p) for p in cell.points()]
    by_type: dict[int, Weight] = {}
    for weight in preimages:
        by_type.setdefault(weight_type(n, weight), weight)
    if len(by_type) != 2 * n + 1:
        raise AlcoveError(f"cell {cell.orientation} ({cell.row},{cell.col}) has repeated vertex types")
    alcove = Alcove(n, tuple(by_type[k] for k in range(2 * n + 1)))
    if not is_alcove(alcove):
        raise AlcoveError(f"cell {cell.orientation} ({cell.row},{cell.col}) is not the image of an alcove")
    return alcove


def _cross(p: PlanarPoint, q: PlanarPoint, r: PlanarPoint) -> RingElem:
    return (q - p).cross(r - p)


def _boxes_overlap(a: Sequence[planar.XY], b: Sequence[planar.XY]) -> bool:
    return not (
        max(x for x, _ in a) < min(x for x, _ in b)
        or max(x for x, _ in b) < min(x for x, _ in a)
        or max(y for _, y in a) < min(y for _, y in b)
        or max(y for _, y in b) < min(y for _, y in a)
    )


def overlapping_pairs(triangles: Sequence[Sequence[planar.XY]]) -> list[tuple[int, int]]:
    found = []
    for i, j in itertools.combinations(range(len(triangles)), 2):
        if _boxes_overlap(triangles[i], triangles[j]) and planar.convex_overlap(triangles[i], triangles[j]):
            found.append((i, j))
    return found


@dataclass
class RegionTiling:
    """Alcoves whose images tile the triangle of side `size` cells, with the checks run on them."""

    size: int
    cells: list[Cell] = field(default_factory=list)
    alcoves: list[Alcove] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures and len(self.alcoves) == self.size * self.size

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "size": self.size,
            "alcove_count": len(self.alcoves),
            "alcoves": [
                {"cell": [c.orientation, c.row, c.col], "root_lattice_vertex": a.root_lattice_vertices(), **a.to_json()}
                for c, a in zip(self.cells, self.alcoves)
            ],
            "failures": self.failures,
        }


def find_region_tiling(size: int = CELLS_PER_SIDE) -> RegionTiling:
    """Find the alcove behind each cell and verify the images tile the region exactly."""
    result = RegionTiling(size)
    result.cells = region_cells(size)
    for cell in result.cells:
        try:
            alcove = alcove_for_cell(cell)
        except AlcoveError as exc:
            result.failures.append(str(exc))
            continue
        result.alcoves.append(alcove)
        image = AlcoveImage(alcove.image())
        if image.key() != frozenset(p.key() for p in cell.points()):
            result.failures.append(f"alcove image differs from cell ({cell.row},{cell.col})")
        if image.kind() != "T":
            result.failures.append(f"alcove image of cell ({cell.row},{cell.col}) is not a triangle")
        if len(alcove.root_lattice_vertices()) != 1:
            result.failures.append(f"cell ({cell.row},{cell.col}) has {len(alcove.root_lattice_vertices())} root-lattice vertices")

    u, v, _, _ = _frame()
    zero = origin(PENTAGON_N)
    region = (zero, u.scaled(size), v.scaled(size))
    total = zero.a.ring.zero()
    for cell in result.cells:
        total = total + _cross(*cell.outline())
    if total != _cross(*region):
        result.failures.append(f"cell areas sum to {total}, region is {_cross(*region)}")

    edges: Counter = Counter()
    ends: dict[frozenset, tuple[PlanarPoint, PlanarPoint]] = {}
    for cell in result.cells:
        outline = cell.outline()
        for k in range(3):
            p, q = outline[k], outline[(k + 1) % 3]
            key = frozenset((p.key(), q.key()))
            edges[key] += 1
            ends[key] = (p, q)
    boundary = 0
    for key, count in edges.items():
        p, q = ends[key]
        on_side = any(
            planar.collinear(region[k], region[(k + 1) % 3], p) and planar.collinear(region[k], region[(k + 1) % 3], q)
            for k in range(3)
        )
        if count == 1 and on_side:
            boundary += 1
        elif count != 2 or on_side:
            result.failures.append(f"edge used {count} times (on boundary: {on_side})")
    if boundary != 3 * size:
        result.failures.append(f"{boundary} boundary edges, expected {3 * size}")
    overlaps = overlapping_pairs([[p.xy for p in cell.outline()] for cell in result.cells])
    if overlaps:
        result.failures.append(f"{len(overlaps)} overlapping cell pairs")
    logger.info("region of size %s: %s alcoves, %s failures", size, len(result.alcoves), len(result.failures))
    return result


def find_tiling25() -> RegionTiling:
    """The 25 alcoves whose images tile the triangle with corners 0, psi'(5 w_2), psi'(5 w_3)."""
    return find_region_tiling(CELLS_PER_SIDE)


@dataclass
class Walk:
    """A run of wall crossings from `start`; lead_in and lead_out are the crossings before and after it."""

    start: Alcove
    steps: list[int] = field(default_factory=list)
    lead_in: int = 0
    lead_out: int = 0
    seed: int | None = None

    def alcoves(self) -> list[Alcove]:
        visited = [self.start]
        for k in self.steps:
            visited.append(visited[-1].flip(k))
        return visited

    def context(self, targets: Iterable[Alcove]) -> dict[Alcove, tuple[int, int]]:
        """(predecessor wall, successor wall) at the first visit of each target."""
        sequence = self.alcoves()
        walls = [self.lead_in, *self.steps, self.lead_out]
        first: dict[Alcove, tuple[int, int]] = {}
        for index, alcove in enumerate(sequence):
            if alcove not in first:
                first[alcove] = (walls[index], walls[index + 1])
        out = {}
        for target in targets:
            if target not in first:
                raise WalkError(f"walk never visits alcove {target.vertices}")
            before, after = first[target]
            if before == after:
                raise WalkError(f"walk enters and leaves {target.vertices} through the same wall {before}")
            out[target] = first[target]
        return out

    def to_json(self) -> dict:
        return {"seed": self.seed, "start": [list(v) for v in self.start.vertices], "lead_in": self.lead_in, "steps": self.steps, "lead_out": self.lead_out}


def _next_wall(current: Alcove, target: Alcove, last: int | None) -> list[int]:
    return [k for k in current.separating_walls(target) if k != last]


def plan_walk(targets: Sequence[Alcove], seed: int = 0, start: Alcove | None = None, max_steps: int | None = None) -> Walk:
    """Seeded walk through every target along shortest galleries.

    A step never undoes the previous one while another target still lies ahead. When every
    remaining target is behind the last wall the walk turns back, unless it has just entered
    a target for the first time; then it detours through another wall so that target is
    entered and left through different walls.
    """
    if not targets:
        raise WalkError("no alcoves to visit")
    rng = random.Random(seed)
    start = start or targets[0]
    m = start.m
    max_steps = max_steps or 200 * len(targets) + 1000
    walk = Walk(start, seed=seed)
    current = start
    visited = {start}
    target_set = set(targets)
    remaining = target_set - visited
    fresh_target = start in target_set
    last: int | None = None
    discarded = detours = 0
    target = rng.choice(sorted(remaining)) if remaining else None
    while remaining:
        if target not in remaining:
            target = rng.choice(sorted(remaining))
        walls = _next_wall(current, target, last)
        if not walls:
            ahead = [t for t in sorted(remaining) if _next_wall(current, t, last)]
            if ahead:
                target = rng.choice(ahead)
                walls = _next_wall(current, target, last)
            elif fresh_target:
                walls = [k for k in range(m) if k != last]
                detours += 1
            else:
                walls = [last]
        k = rng.choice(walls)
        current = current.flip(k)
        walk.steps.append(k)
        last = k
        fresh_target = current not in visited and current in target_set
        if current not in visited and current not in target_set:
            discarded += 1
        visited.add(current)
        remaining.discard(current)
        if len(walk.steps) > max_steps:
            raise WalkError(f"walk exceeded {max_steps} steps with {len(remaining)} alcoves left")
    first_step = walk.steps[0] if walk.steps else None
    walk.lead_in = rng.choice([k for k in range(m) if k != first_step])
    walk.lead_out = rng.choice([k for k in range(m) if k != (last if last is not None else walk.lead_in)])
    logger.info("walk seed=%s: %s steps, %s discarded alcoves, %s detours", seed, len(walk.steps), discarded, detours)
    return walk


def walk_from_steps(start: Alcove, steps: Sequence[int], lead_in: int, lead_out: int) -> Walk:
    m = start.m
    for k in (*steps, lead_in, lead_out):
        if not 0 <= k < m:
            raise WalkError(f"wall index {k} out of range for m={m}")
    return Walk(start, list(steps), lead_in, lead_out)


@dataclass(frozen=True)
class GoldenPiece:
    kind: str
    points: tuple[PlanarPoint, PlanarPoint, PlanarPoint]
    alcove_index: int

    def to_json(self) -> dict:
        return {"kind": self.kind, "alcove": self.alcove_index, "points": [p.to_json() for p in self.points]}


def _ccw(points: tuple[PlanarPoint, PlanarPoint, PlanarPoint]) -> tuple[PlanarPoint, PlanarPoint, PlanarPoint]:
    if planar.signed_area([p.xy for p in points]) < 0:
        return points[0], points[2], points[1]
    return points


def _golden_kind(points: Sequence[PlanarPoint]) -> str:
    one = points[0].ring.one()
    unit = sum(1 for i in range(3) if planar.squared_distance(points[i], points[(i + 1) % 3]) == one)
    if unit == 2:
        return "T2"
    if unit == 1:
        return "T1"
    raise AlcoveError(f"piece with {unit} unit sides is not a Golden-Pair triangle")


def split_alcove(alcove: Alcove, before: int, after: int, index: int = 0) -> tuple[list[GoldenPiece], str]:
    """Split a triangular image into T2 at the apex plus a rhombus cut into T1 and T2; returns the diagonal."""
    if before == after:
        raise AlcoveError(f"predecessor and successor walls coincide ({before})")
    points = alcove.image()
    ring = points[0].ring
    golden2 = ring.gen() + 1
    inverse2 = 2 - ring.gen()
    one = ring.one()

    def d2(a: int, b: int) -> RingElem:
        return planar.squared_distance(points[a], points[b])

    apex = [k for k in range(len(points)) if sum(1 for j in range(len(points)) if j != k and d2(k, j) == golden2) == 2]
    if len(apex) != 1:
        raise AlcoveError(f"alcove image {alcove.vertices} is not a triangle with an apex")
    top = apex[0]
    sides = [k for k in range(len(points)) if k != top and d2(top, k) == one]
    corners = [k for k in range(len(points)) if k != top and k not in sides]
    s1, s2 = sides
    b = next(k for k in corners if d2(s1, k) == inverse2)
    c = next(k for k in corners if k != b)
    shared = [k for k in range(len(points)) if k not in (before, after)]
    if top in shared:
        missing = after
    else:
        missing = before if after == top else after
    if missing in (s2, b):
        diagonal = "s1-c"
        triples = [(top, s1, s2), (s1, b, c), (s1, c, s2)]
    else:
        diagonal = "s2-b"
        triples = [(top, s1, s2), (s1, b, s2), (b, c, s2)]
    pieces = []
    for triple in triples:
        pts = _ccw(tuple(points[k] for k in triple))
        pieces.append(GoldenPiece(_golden_kind(pts), pts, index))
    return pieces, diagonal


@dataclass
class GoldenTiling:
    extent: int
    walk: Walk
    pieces: list[GoldenPiece] = field(default_factory=list)
    diagonals: list[str] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)

    @property
    def counts(self) -> dict[str, int]:
        counter = Counter(p.kind for p in self.pieces)
        return {"T1": counter.get("T1", 0), "T2": counter.get("T2", 0)}

    @property
    def ok(self) -> bool:
        counts = self.counts
        return not self.failures and 2 * counts["T1"] == counts["T2"]

    def signature(self) -> tuple[str, ...]:
        return tuple(self.diagonals)

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "extent": self.extent,
            "counts": self.counts,
            "walk": self.walk.to_json(),
            "pieces": [p.to_json() for p in self.pieces],
            "failures": self.failures,
        }


def aperiodic_tile(extent: int = 1, seed: int = 0, walk: Walk | None = None) -> GoldenTiling:
    """Golden-Pair tiling of the region of side 5*extent cells driven by a reflection walk."""
    if extent < 1:
        raise AlcoveError(f"extent must be positive, got {extent}")
    region = find_region_tiling(CELLS_PER_SIDE * extent)
    if not region.ok:
        raise AlcoveError(f"region of extent {extent} does not tile: {region.failures[:3]}")
    walk = walk or plan_walk(region.alcoves, seed, start=Alcove.fundamental(PENTAGON_N))
    context = walk.context(region.alcoves)
    tiling = GoldenTiling(extent, walk)
    for index, alcove in enumerate(region.alcoves):
        before, after = context[alcove]
        pieces, diagonal = split_alcove(alcove, before, after, index)
        tiling.pieces.extend(pieces)
        tiling.diagonals.append(diagonal)

    u, v, _, _ = _frame()
    zero = origin(PENTAGON_N)
    size = CELLS_PER_SIDE * extent
    total = zero.a.ring.zero()
    for piece in tiling.pieces:
        total = total + _cross(*piece.points)
    if total != _cross(zero, u.scaled(size), v.scaled(size)):
        tiling.failures.append("piece areas do not add up to the region")
    overlaps = overlapping_pairs([[p.xy for p in piece.points] for piece in tiling.pieces])
    if overlaps:
        tiling.failures.append(f"{len(overlaps)} overlapping piece pairs")
    if len(tiling.pieces) != 75 * extent * extent:
        tiling.failures.append(f"{len(tiling.pieces)} pieces, expected {75 * extent * extent}")
    logger.info("golden tiling extent=%s seed=%s: %s", extent, walk.seed, tiling.counts)
    return tiling
