"""Triangles of the regular m-gon, star products and decompositions.

Angles are integers in units of pi/m. The side opposite an angle a has length
p_{a-1}, so lengths and (normalised) areas are exact elements of the chord ring;
float coordinates are only used to place pieces and detect overlaps.
"""
from __future__ import annotations

import functools
import itertools
import logging
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from pentacrystal.algebra.chordring import RingElem, chord_index, chord_ring, normal_chord_index
from pentacrystal.geometry import planar
from pentacrystal.geometry.planar import XY

logger = logging.getLogger(__name__)

METHODS = ("pair", "inscribed", "nine", "pt", "square")
REACH_METHODS = ("pair", "inscribed", "pt")


class TilingError(ValueError):
    """Raised when a tiling operation is given pieces that do not fit."""


class ConservationError(RuntimeError):
    """Raised when a decomposition fails an exact or geometric conservation check."""


def _min_rotation(seq: Sequence) -> tuple:
    seq = tuple(seq)
    return min(seq[k:] + seq[:k] for k in range(len(seq)))


def chord_len(m: int, angle: int) -> RingElem:
    """Side length opposite an angle of `angle` units in a unit-scale triangle."""
    return chord_index(m, angle - 1)


@dataclass(frozen=True)
class Triangle:
    """Triangle with angles (i, j, k) listed counter-clockwise, stored as its least rotation."""

    m: int
    angles: tuple[int, int, int]

    def __post_init__(self) -> None:
        angles = tuple(int(a) for a in self.angles)
        if len(angles) != 3 or min(angles) < 1 or sum(angles) != self.m:
            raise TilingError(f"angles {angles} do not form a triangle of the {self.m}-gon")
        object.__setattr__(self, "angles", _min_rotation(angles))

    @classmethod
    def of(cls, m: int, i: int, j: int, k: int) -> Triangle:
        return cls(m, (i, j, k))

    @property
    def parity(self) -> bool:
        """False for the representative with the smaller listing (always False when isosceles)."""
        return self.angles > _min_rotation(reversed(self.angles))

    def is_isosceles(self) -> bool:
        return len(set(self.angles)) < 3

    def mirror(self) -> Triangle:
        return Triangle(self.m, tuple(reversed(self.angles)))

    def rotation(self, corner: int) -> tuple[int, int, int]:
        """Listing (x, y, i) read from the vertex after `corner`, ending at `corner`."""
        a = self.angles
        return a[(corner + 1) % 3], a[(corner + 2) % 3], a[corner % 3]

    def unit_area(self) -> RingElem:
        result = chord_ring(self.m).one()
        for a in self.angles:
            result = result * chord_len(self.m, a)
        return result

    @property
    def label(self) -> str:
        body = "T{" + ",".join(str(a) for a in sorted(self.angles)) + "}"
        return body + ("'" if self.parity else "")

    def __str__(self) -> str:
        return self.label


def triangles(m: int) -> list[Triangle]:
    """Every triangle of the m-gon, both parities."""
    found = {Triangle.of(m, i, j, m - i - j) for i in range(1, m) for j in range(1, m - i)}
    return sorted(found, key=lambda t: t.angles)


@dataclass(frozen=True)
class ScaledTriangle:
    base: Triangle
    scale: RingElem

    @classmethod
    def unit(cls, base: Triangle) -> ScaledTriangle:
        return cls(base, chord_ring(base.m).one())

    @property
    def m(self) -> int:
        return self.base.m

    def __str__(self) -> str:
        return f"({self.scale}){self.base.label}"


def area(t: ScaledTriangle) -> RingElem:
    """Area divided by (1/2) sin(pi/m): p_{i-1} p_{j-1} p_{k-1} scale^2."""
    return t.base.unit_area() * t.scale * t.scale


def chord_product_failures(m: int) -> list[tuple[int, int]]:
    """(t, i) where p_t p_i differs from the sum of p_{i+t-2j}, j = 0..t."""
    failures = []
    for t in range(0, m):
        for i in range(t, m - t - 2):
            left = chord_index(m, t) * chord_index(m, i)
            right = chord_ring(m).zero()
            for j in range(t + 1):
                right = right + chord_index(m, i + t - 2 * j)
            if left != right:
                failures.append((t, i))
    return failures


@dataclass(frozen=True)
class Part:
    """Labelled counter-clockwise triangle: vertex labels, the angle at each, and a scale."""

    vertices: tuple[str, str, str]
    angles: tuple[int, int, int]
    scale: RingElem

    @property
    def m(self) -> int:
        return sum(self.angles)

    @property
    def triangle(self) -> ScaledTriangle:
        return ScaledTriangle(Triangle(self.m, self.angles), self.scale)

    def edge_length(self, k: int) -> RingElem:
        """Length of the edge from vertex k to vertex k+1."""
        return chord_len(self.m, self.angles[(k + 2) % 3]) * self.scale

    def edges(self) -> list[tuple[str, str, RingElem]]:
        return [(self.vertices[k], self.vertices[(k + 1) % 3], self.edge_length(k)) for k in range(3)]

    def mirrored(self) -> Part:
        return Part(tuple(reversed(self.vertices)), tuple(reversed(self.angles)), self.scale)


@dataclass
class Decomposition:
    method: str
    whole: Part
    parts: list[Part]
    placement: dict[str, XY] = field(default_factory=dict)

    @property
    def m(self) -> int:
        return self.whole.m

    def part_counts(self) -> Counter:
        return Counter(part.triangle.base for part in self.parts)

    def mirrored(self) -> Decomposition:
        return Decomposition(self.method, self.whole.mirrored(), [p.mirrored() for p in self.parts])

    def adjacency(self) -> list[tuple[int, int]]:
        owners: dict[frozenset, list[int]] = defaultdict(list)
        for index, part in enumerate(self.parts):
            for u, v, _ in part.edges():
                owners[frozenset((u, v))].append(index)
        return sorted(tuple(sorted(o)) for o in owners.values() if len(o) == 2)

    def to_json(self) -> dict:
        return {
            "method": self.method,
            "m": self.m,
            "whole": _part_json(self.whole),
            "parts": [_part_json(p) for p in self.parts],
            "adjacency": [list(pair) for pair in self.adjacency()],
            "placement": {k: [round(v[0], 6), round(v[1], 6)] for k, v in sorted(self.placement.items())},
        }


def _part_json(part: Part) -> dict:
    return {
        "vertices": list(part.vertices),
        "angles": list(part.angles),
        "triangle": part.triangle.base.label,
        "scale": list(part.scale.coords),
    }


def _third_vertex(p: XY, q: XY, angles: tuple[int, int, int], k: int, m: int) -> XY:
    """Vertex k+2 of a CCW triangle given vertices k and k+1."""
    at_p = angles[k % 3] * math.pi / m
    ratio = math.sin(angles[(k + 1) % 3] * math.pi / m) / math.sin(angles[(k + 2) % 3] * math.pi / m)
    return planar.add(p, planar.scale(planar.rotate(planar.sub(q, p), at_p), ratio))


def place(parts: Sequence[Part], order: Sequence[int], tol: float) -> dict[str, XY]:
    """Float positions by propagation across shared edges, starting from the first part in `order`."""
    m = parts[0].m
    seed = parts[order[0]]
    positions: dict[str, XY] = {seed.vertices[0]: (0.0, 0.0), seed.vertices[1]: (float(seed.edge_length(0)), 0.0)}
    progress = True
    while progress:
        progress = False
        for index in order:
            part = parts[index]
            placed = [v in positions for v in part.vertices]
            if sum(placed) < 2:
                continue
            for k in range(3):
                if placed[k] and placed[(k + 1) % 3]:
                    third = _third_vertex(positions[part.vertices[k]], positions[part.vertices[(k + 1) % 3]], part.angles, k, m)
                    label = part.vertices[(k + 2) % 3]
                    if label in positions:
                        if planar.dist(positions[label], third) > tol:
                            raise ConservationError(f"vertex {label} placed inconsistently by part {index}")
                    else:
                        positions[label] = third
                        progress = True
                    break
    missing = {v for part in parts for v in part.vertices} - set(positions)
    if missing:
        raise ConservationError(f"pieces are not edge-connected; unplaced vertices {sorted(missing)}")
    return positions


def _normalise(positions: dict[str, XY], origin: XY, toward: XY) -> dict[str, XY]:
    angle = math.atan2(toward[1] - origin[1], toward[0] - origin[0])
    return {k: planar.rotate(planar.sub(v, origin), -angle) for k, v in positions.items()}


def verify_decomposition(d: Decomposition) -> list[str]:
    """Every exact and float check; an empty list means the decomposition is sound."""
    failures: list[str] = []
    m = d.m
    whole = d.whole
    total = chord_ring(m).zero()
    for part in d.parts:
        total = total + area(part.triangle)
    if total != area(whole.triangle):
        failures.append(f"area: parts sum to {total}, whole is {area(whole.triangle)}")

    size = max(float(e) for _, _, e in whole.edges())
    tol = 1e-9 * max(1.0, size)
    forward = list(range(len(d.parts)))
    try:
        first = place(d.parts, forward, tol)
        second = place(d.parts, [forward[0]] + forward[:0:-1], tol)
    except ConservationError as exc:
        return failures + [str(exc)]
    for label, xy in first.items():
        if planar.dist(xy, second[label]) > tol:
            failures.append(f"placement: traversals disagree at {label}")
    corners = [first.get(v) for v in whole.vertices]
    if any(c is None for c in corners):
        return failures + ["placement: a corner of the whole is not a vertex of any part"]
    d.placement = _normalise(first, corners[0], corners[1])
    corners = [d.placement[v] for v in whole.vertices]
    if planar.signed_area(corners) <= 0:
        failures.append("orientation: whole is not counter-clockwise")
    for u, v, length in whole.edges():
        if abs(planar.dist(d.placement[u], d.placement[v]) - float(length)) > tol:
            failures.append(f"whole side {u}{v} has the wrong length")

    sides = [(whole.vertices[k], whole.vertices[(k + 1) % 3]) for k in range(3)]

    def side_of(label: str) -> list[int]:
        xy = d.placement[label]
        return [s for s, (u, v) in enumerate(sides) if planar.point_segment_distance(xy, d.placement[u], d.placement[v]) <= tol]

    angle_sum: Counter = Counter()
    for index, part in enumerate(d.parts):
        pts = [d.placement[v] for v in part.vertices]
        if planar.signed_area(pts) <= 0:
            failures.append(f"orientation: part {index} is not counter-clockwise")
        for v, a in zip(part.vertices, part.angles):
            angle_sum[v] += a
        for u, v, length in part.edges():
            if abs(planar.dist(d.placement[u], d.placement[v]) - float(length)) > tol:
                failures.append(f"part {index} edge {u}{v} has the wrong length")
    for first_index, second_index in itertools.combinations(range(len(d.parts)), 2):
        a = [d.placement[v] for v in d.parts[first_index].vertices]
        b = [d.placement[v] for v in d.parts[second_index].vertices]
        if planar.convex_overlap(a, b, tol):
            failures.append(f"overlap between parts {first_index} and {second_index}")

    corner_angle = dict(zip(whole.vertices, whole.angles))
    for label, total_angle in angle_sum.items():
        if label in corner_angle:
            expected = corner_angle[label]
        elif side_of(label):
            expected = m
        else:
            expected = 2 * m
        if total_angle != expected:
            failures.append(f"angle sum at {label} is {total_angle}, expected {expected}")

    owners: dict[frozenset, list[RingElem]] = defaultdict(list)
    ends: dict[frozenset, tuple[str, str]] = {}
    for part in d.parts:
        for u, v, length in part.edges():
            key = frozenset((u, v))
            owners[key].append(length)
            ends[key] = (u, v)
    side_totals = [chord_ring(m).zero() for _ in sides]
    for key, lengths in owners.items():
        u, v = ends[key]
        if len(lengths) > 2:
            failures.append(f"edge {u}{v} shared by {len(lengths)} parts")
        elif len(lengths) == 2:
            if lengths[0] != lengths[1]:
                failures.append(f"edge {u}{v} has unequal exact lengths")
        else:
            common = set(side_of(u)) & set(side_of(v))
            if not common:
                failures.append(f"edge {u}{v} is unshared but not on the boundary")
            else:
                s = min(common)
                side_totals[s] = side_totals[s] + lengths[0]
    for s, (u, v) in enumerate(sides):
        expected = whole.edge_length(s)
        if side_totals[s] != expected:
            failures.append(f"boundary edges on {u}{v} sum to {side_totals[s]}, side is {expected}")
    return failures


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise TilingError(message)


def _pair(whole: ScaledTriangle, corner: int, t: int) -> Decomposition:
    m = whole.m
    x, y, i = whole.base.rotation(corner)
    _require(0 < t < i, f"pair needs 0 < t < {i}, got t={t}")
    _require(whole.scale == chord_index(m, x + t - 1), f"pair with t={t} needs scale p_{x + t - 1}")
    j = x + i
    big = Part(("A", "B", "C"), (x, y, i), whole.scale)
    parts = [
        Part(("A", "D", "C"), (j - i, m - j + i - t, t), chord_index(m, j - 1)),
        Part(("D", "B", "C"), (j - i + t, m - j, i - t), chord_index(m, j - i - 1)),
    ]
    return Decomposition("pair", big, parts)


def _inscribed(whole: ScaledTriangle, corner: int, t: int) -> Decomposition:
    m = whole.m
    x, y, i = whole.base.rotation(corner)
    _require(i == min(whole.base.angles) and i > 1, f"inscribed needs the smallest angle > 1 at the corner, got {i}")
    _require(0 < t < i, f"inscribed needs 0 < t < {i}, got t={t}")
    _require(whole.scale == chord_index(m, 2 * t - 1), f"inscribed with t={t} needs scale p_{2 * t - 1}")
    j = x + i
    small = chord_index(m, t - 1)
    big = Part(("v0", "vi", "vj"), (j - i, m - j, i), whole.scale)
    parts = [
        Part(("v0", "u1", "u3"), (j - i, m - j - t, i + t), small),
        Part(("u1", "vi", "u2"), (j - i + t, m - j, i - t), small),
        Part(("u2", "vj", "u3"), (m - j + t, i, j - i - t), small),
        Part(("u1", "u2", "u3"), (i, j - i, m - j), small),
    ]
    return Decomposition("inscribed", big, parts)


def _grid(whole: ScaledTriangle, corner: int, t: int, shifted: bool, method: str) -> Decomposition:
    m = whole.m
    x, y, z = whole.base.rotation(corner)
    i, j, k = z, x, y
    one = chord_ring(m).one()
    size = t + 1

    def v(c: int, r: int) -> str:
        return f"V{c},{r}"

    big = Part((v(0, 0), v(size, size), v(size, 0)), (i, j, k), whole.scale)
    parts: list[Part] = []
    for c in range(size):
        for r in range(c + 1):
            if shifted:
                angles = (i + c - 2 * r, j + t - 2 * c + r, k - t + c + r)
            else:
                angles = (i, j, k)
            parts.append(Part((v(c, r), v(c + 1, r + 1), v(c + 1, r)), angles, one))
    for c in range(1, size):
        for r in range(1, c + 1):
            if shifted:
                angles = (j + t - 2 * c + r, k - t + c + r - 1, i + c - 2 * r + 1)
            else:
                angles = (j, k, i)
            parts.append(Part((v(c, r - 1), v(c, r), v(c + 1, r)), angles, one))
    return Decomposition(method, big, parts)


def _pt(whole: ScaledTriangle, corner: int, t: int, method: str = "pt") -> Decomposition:
    m = whole.m
    _require(t >= 1, f"pt needs t >= 1, got {t}")
    _require(min(whole.base.angles) > t, f"pt with t={t} needs every angle > {t}, got {whole.base.angles}")
    _require(whole.scale == chord_index(m, t), f"pt with t={t} needs scale p_{t}")
    return _grid(whole, corner, t, shifted=True, method=method)


def _square(whole: ScaledTriangle, corner: int, n: int) -> Decomposition:
    _require(n >= 1, f"square needs n >= 1, got {n}")
    _require(whole.scale == chord_ring(whole.m).from_int(n), f"square with n={n} needs integer scale {n}")
    return _grid(whole, corner, n - 1, shifted=False, method="square")


def build_decomposition(whole: ScaledTriangle, method: str, t: int = 1, corner: int | None = None) -> Decomposition:
    """Construct the pieces of a decomposition family without verifying them."""
    if method not in METHODS:
        raise ValueError(f"unknown decomposition method {method!r}; expected one of {METHODS}")
    if corner is None:
        corner = whole.base.angles.index(min(whole.base.angles)) if method == "inscribed" else 0
    if method == "pair":
        return _pair(whole, corner, t)
    if method == "inscribed":
        return _inscribed(whole, corner, t)
    if method == "nine":
        return _pt(whole, corner, 2, method="nine")
    if method == "pt":
        return _pt(whole, corner, t)
    return _square(whole, corner, t)


def decompose(whole: ScaledTriangle, method: str, t: int = 1, corner: int | None = None) -> Decomposition:
    """Decompose and verify; a failed check raises ConservationError."""
    d = build_decomposition(whole, method, t, corner)
    failures = verify_decomposition(d)
    if failures:
        raise ConservationError(f"{method} decomposition of {whole}: {failures[0]}")
    logger.debug("%s decomposition of %s into %s parts verified", method, whole, len(d.parts))
    return d


def decomposition_instances(m: int, max_t: int = 3) -> Iterable[tuple[ScaledTriangle, str, int, int]]:
    """All valid (whole, method, t, corner) instances of the chord-scaled families for one m."""
    for base in triangles(m):
        for corner in range(3):
            x, y, i = base.rotation(corner)
            for t in range(1, i):
                yield ScaledTriangle(base, chord_index(m, x + t - 1)), "pair", t, corner
            if i == min(base.angles) and i > 1:
                for t in range(1, i):
                    if 2 * t - 1 <= m - 2:
                        yield ScaledTriangle(base, chord_index(m, 2 * t - 1)), "inscribed", t, corner
            if corner == 0:
                for t in range(1, max_t + 1):
                    if min(base.angles) > t and t <= m - 2:
                        yield ScaledTriangle(base, chord_index(m, t)), "pt", t, corner


@dataclass(frozen=True)
class Polygon:
    """Counter-clockwise polygon: angle units at each vertex and the exact length of the edge leaving it."""

    m: int
    angles: tuple[int, ...]
    edges: tuple[RingElem, ...]

    @classmethod
    def from_triangle(cls, t: ScaledTriangle) -> Polygon:
        a = t.base.angles
        return cls(t.m, a, tuple(chord_len(t.m, a[(k + 2) % 3]) * t.scale for k in range(3)))

    def __len__(self) -> int:
        return len(self.angles)

    def canonical(self) -> tuple:
        return _min_rotation(tuple((a, e.coords) for a, e in zip(self.angles, self.edges)))

    def xy(self) -> list[XY]:
        points: list[XY] = [(0.0, 0.0)]
        heading = 0.0
        for k in range(len(self.angles) - 1):
            length = float(self.edges[k])
            last = points[-1]
            points.append((last[0] + length * math.cos(heading), last[1] + length * math.sin(heading)))
            heading += math.pi - self.angles[k + 1] * math.pi / self.m
        return points

    def closes(self, tol: float = 1e-9) -> bool:
        points = self.xy()
        heading = sum(math.pi - a * math.pi / self.m for a in self.angles[1:])
        length = float(self.edges[-1])
        end = (points[-1][0] + length * math.cos(heading), points[-1][1] + length * math.sin(heading))
        return planar.dist(end, points[0]) <= tol * max(1.0, sum(float(e) for e in self.edges))

    def as_triangle(self) -> ScaledTriangle | None:
        if len(self.angles) != 3:
            return None
        a, b, c = self.angles
        ring = chord_ring(self.m)
        s = ring.solve(chord_len(self.m, c), self.edges[0])
        if s is None:
            return None
        if chord_len(self.m, a) * s != self.edges[1] or chord_len(self.m, b) * s != self.edges[2]:
            return None
        return ScaledTriangle(Triangle(self.m, (a, b, c)), s)


def _as_polygon(piece: ScaledTriangle | Polygon) -> Polygon:
    return piece if isinstance(piece, Polygon) else Polygon.from_triangle(piece)


def _drop_straight(angles: list[int], edges: list[RingElem], m: int) -> tuple[list[int], list[RingElem]]:
    changed = True
    while changed and len(angles) > 3:
        changed = False
        for k, a in enumerate(angles):
            if a == m:
                prev = (k - 1) % len(angles)
                edges[prev] = edges[prev] + edges[k]
                del angles[k]
                del edges[k]
                changed = True
                break
    return angles, edges


def star(first: ScaledTriangle | Polygon, second: ScaledTriangle | Polygon, edge: tuple[int, int]) -> ScaledTriangle | Polygon:
    """Glue edge s of the first piece to edge t of the second, reversing orientation along the seam."""
    p, q = _as_polygon(first), _as_polygon(second)
    if p.m != q.m:
        raise TilingError(f"pieces from different polygons: m={p.m} and m={q.m}")
    m = p.m
    s, t = edge
    if not (0 <= s < len(p) and 0 <= t < len(q)):
        raise TilingError(f"edge pair {edge} out of range")
    if p.edges[s] != q.edges[t]:
        raise TilingError(f"edge {s} ({p.edges[s]}) and edge {t} ({q.edges[t]}) differ in length")
    np_, nq = len(p), len(q)
    angles: list[int] = [p.angles[(s + 1) % np_] + q.angles[t]]
    edges: list[RingElem] = [p.edges[(s + 1) % np_]]
    for k in range(2, np_):
        angles.append(p.angles[(s + k) % np_])
        edges.append(p.edges[(s + k) % np_])
    angles.append(p.angles[s] + q.angles[(t + 1) % nq])
    edges.append(q.edges[(t + 1) % nq])
    for k in range(2, nq):
        angles.append(q.angles[(t + k) % nq])
        edges.append(q.edges[(t + k) % nq])
    if max(angles) >= 2 * m:
        raise TilingError("pieces overlap at a glued vertex")
    angles, edges = _drop_straight(angles, edges, m)
    result = Polygon(m, tuple(angles), tuple(edges))
    if not planar.is_simple_polygon(result.xy()) or not result.closes():
        raise TilingError("pieces overlap")
    triangle = result.as_triangle()
    return triangle if triangle is not None else result


def _same(a: ScaledTriangle | Polygon, b: ScaledTriangle | Polygon) -> bool:
    if isinstance(a, ScaledTriangle) and isinstance(b, ScaledTriangle):
        return a.base == b.base and a.scale == b.scale
    return _as_polygon(a).canonical() == _as_polygon(b).canonical()


def star_search(pieces: Sequence[ScaledTriangle], target: ScaledTriangle | Polygon | None = None, limit: int = 200_000) -> list[tuple[ScaledTriangle | Polygon, list[tuple[int, int]]]]:
    """Glue the pieces one after another over every edge choice; keep results equal to target (or all)."""
    results: list[tuple[ScaledTriangle | Polygon, list[tuple[int, int]]]] = []
    seen: set = set()
    budget = [limit]

    def extend(current: ScaledTriangle | Polygon, remaining: tuple[ScaledTriangle, ...], path: list[tuple[int, int]]) -> bool:
        budget[0] -= 1
        if budget[0] < 0:
            return True
        if not remaining:
            key = _as_polygon(current).canonical()
            if key not in seen and (target is None or _same(current, target)):
                seen.add(key)
                results.append((current, list(path)))
                return target is not None
            return False
        for index in sorted({remaining.index(piece) for piece in remaining}):
            piece = remaining[index]
            rest = remaining[:index] + remaining[index + 1 :]
            poly = _as_polygon(current)
            other = _as_polygon(piece)
            for s in range(len(poly)):
                for t in range(len(other)):
                    if poly.edges[s] != other.edges[t]:
                        continue
                    try:
                        glued = star(current, piece, (s, t))
                    except TilingError:
                        continue
                    if extend(glued, rest, path + [(s, t)]):
                        return True
        return False

    if not pieces:
        return results
    extend(pieces[0], tuple(pieces[1:]), [])
    return results


def star_relation_m7() -> tuple[Polygon, Polygon] | None:
    """Common quadrilateral of T{2,2,3}*T{1,1,5} and T{1,2,4}*T{1,3,3}."""
    m = 7
    t0, t1 = ScaledTriangle.unit(Triangle.of(m, 2, 2, 3)), ScaledTriangle.unit(Triangle.of(m, 1, 1, 5))
    t2, t3 = ScaledTriangle.unit(Triangle.of(m, 1, 2, 4)), ScaledTriangle.unit(Triangle.of(m, 1, 3, 3))
    left = {_as_polygon(r).canonical(): _as_polygon(r) for r, _ in star_search([t0, t1])}
    for result, _ in star_search([t2, t3]):
        poly = _as_polygon(result)
        if poly.canonical() in left:
            return left[poly.canonical()], poly
    return None


@dataclass(frozen=True)
class ReachNode:
    """One step of a derivation: a scaled triangle, the cut applied to it, and the derivations of its parts."""

    triangle: Triangle
    scale: tuple[int, ...]
    method: str | None = None
    children: tuple[ReachNode, ...] = ()

    @property
    def depth(self) -> int:
        return 0 if not self.children else 1 + max(c.depth for c in self.children)

    def to_json(self) -> dict:
        return {
            "triangle": self.triangle.label,
            "angles": list(self.triangle.angles),
            "scale": [f"p{i}" for i in self.scale],
            "method": self.method,
            "parts": [c.to_json() for c in self.children],
        }


def _scale_key(m: int, indices: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(i for i in (normal_chord_index(m, k) for k in indices) if i != 0))


def _remove(scale: tuple[int, ...], index: int) -> tuple[int, ...] | None:
    if index not in scale:
        return None
    out = list(scale)
    out.remove(index)
    return tuple(out)


def _moves(triangle: Triangle, scale: tuple[int, ...]) -> Iterable[tuple[str, list[tuple[Triangle, tuple[int, ...]]]]]:
    m = triangle.m
    for corner in range(3):
        x, y, i = triangle.rotation(corner)
        for t in range(1, i):
            rest = _remove(scale, normal_chord_index(m, x + t - 1))
            if rest is None:
                continue
            j = x + i
            yield "pair", [
                (Triangle(m, (j - i, m - j + i - t, t)), _scale_key(m, rest + (j - 1,))),
                (Triangle(m, (j - i + t, m - j, i - t)), _scale_key(m, rest + (j - i - 1,))),
            ]
        if i == min(triangle.angles) and i > 1:
            for t in range(1, i):
                rest = _remove(scale, normal_chord_index(m, 2 * t - 1))
                if rest is None:
                    continue
                j = x + i
                shapes = [(j - i, m - j - t, i + t), (j - i + t, m - j, i - t), (m - j + t, i, j - i - t), (i, j - i, m - j)]
                yield "inscribed", [(Triangle(m, a), _scale_key(m, rest + (t - 1,))) for a in shapes]
        for index in set(scale):
            rest = _remove(scale, index)
            for t in {index, m - 2 - index}:
                if t >= 1 and min(triangle.angles) > t:
                    method = "nine" if m == 9 and t == 2 else "pt"
                    decomposition = _grid(ScaledTriangle.unit(triangle), corner, t, shifted=True, method=method)
                    yield method, [(p.triangle.base, rest) for p in decomposition.parts]


def closure_reach(m: int, target: ScaledTriangle, budget: int, generators: Iterable[Triangle] | None = None) -> ReachNode | None:
    """Shallowest derivation of `target` from unscaled generators by pair, inscribed and pt cuts, or None."""
    if budget < 0:
        raise ValueError(f"budget must be nonnegative, got {budget}")
    allowed = frozenset(generators) if generators is not None else frozenset(triangles(m))
    scale = scale_indices(target)

    @functools.lru_cache(maxsize=None)
    def search(triangle: Triangle, scale: tuple[int, ...], depth: int) -> ReachNode | None:
        if not scale and triangle in allowed:
            return ReachNode(triangle, scale)
        if depth == 0:
            return None
        for method, parts in _moves(triangle, scale):
            children = []
            for part_triangle, part_scale in parts:
                child = search(part_triangle, part_scale, depth - 1)
                if child is None:
                    break
                children.append(child)
            else:
                return ReachNode(triangle, scale, method, tuple(children))
        return None

    for depth in range(budget + 1):
        found = search(target.base, scale, depth)
        if found is not None:
            logger.info("%s reached at depth %s", target, depth)
            return found
    logger.info("%s not reached within budget %s", target, budget)
    return None


def scale_indices(target: ScaledTriangle) -> tuple[int, ...]:
    """Chord indices whose product is the scale of target (searched over small products)."""
    m = target.m
    ring = chord_ring(m)
    if target.scale == ring.one():
        return ()
    candidates = range(1, (m - 2) // 2 + 1)
    for count in range(1, 9):
        for combo in itertools.combinations_with_replacement(candidates, count):
            value = ring.one()
            for k in combo:
                value = value * chord_index(m, k)
            if value == target.scale:
                return tuple(combo)
    raise TilingError(f"scale {target.scale} is not a product of at most 8 chords")


def chord_product(m: int, indices: Iterable[int]) -> RingElem:
    value = chord_ring(m).one()
    for k in indices:
        value = value * chord_index(m, k)
    return value
