"""SVG scenes for root diagrams, weight diagrams, tilings and alcove shape classes."""
from __future__ import annotations

import logging
import math
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from typing import Any, Sequence

from pentacrystal.geometry.planar import XY

logger = logging.getLogger(__name__)

TARGETS = ("root-diagram", "weight-diagram", "tiling", "alcove-shapes")

DEFAULT_PALETTE: dict[str, str] = {
    "node": "#222222",
    "edge": "#555555",
    "short": "#bc4b51",
    "long": "#2f4858",
    "T1": "#f4a259",
    "T2": "#5b8e7d",
    "part": "#e9c46a",
    "shape": "#8cb369",
    "label": "#111111",
}


class RenderError(ValueError):
    """Raised when a scene cannot be built from the data it was given."""


@dataclass(frozen=True)
class RenderSpec:
    target: str
    m: int = 5
    scale: float = 120.0
    margin: float = 20.0
    node_radius: float = 3.0
    palette: dict[str, str] = field(default_factory=lambda: dict(DEFAULT_PALETTE), compare=False, hash=False)

    def __post_init__(self) -> None:
        if self.target not in TARGETS:
            raise RenderError(f"unknown render target {self.target!r}; expected one of {TARGETS}")
        if self.scale <= 0:
            raise RenderError(f"scale must be positive, got {self.scale}")

    def color(self, key: str) -> str:
        return self.palette.get(key, DEFAULT_PALETTE.get(key, "#000000"))


@dataclass
class Scene:
    """Plane geometry in model units: filled polygons, segments, nodes and text labels, each with a palette key."""

    polygons: list[tuple[list[XY], str]] = field(default_factory=list)
    segments: list[tuple[XY, XY, str]] = field(default_factory=list)
    nodes: list[tuple[XY, str]] = field(default_factory=list)
    labels: list[tuple[XY, str]] = field(default_factory=list)

    def points(self) -> list[XY]:
        pts = [p for poly, _ in self.polygons for p in poly]
        pts += [p for a, b, _ in self.segments for p in (a, b)]
        pts += [p for p, _ in self.nodes]
        pts += [p for p, _ in self.labels]
        return pts

    def is_empty(self) -> bool:
        return not self.points()


def fmt(value: float) -> str:
    """Fixed six-decimal rendering with negative zero folded to zero."""
    if abs(value) < 5e-7:
        value = 0.0
    return f"{value:.6f}"


def _bounds(scene: Scene) -> tuple[float, float, float, float]:
    pts = scene.points()
    if not pts:
        return 0.0, 0.0, 1.0, 1.0
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    return min(xs), min(ys), max(xs), max(ys)


def transform(spec: RenderSpec, scene: Scene) -> tuple[float, float, Any]:
    """Canvas width, height and the model-to-canvas map (y axis flipped)."""
    x0, y0, x1, y1 = _bounds(scene)
    width = (x1 - x0) * spec.scale + 2 * spec.margin
    height = (y1 - y0) * spec.scale + 2 * spec.margin

    def to_canvas(p: XY) -> XY:
        return (p[0] - x0) * spec.scale + spec.margin, (y1 - p[1]) * spec.scale + spec.margin

    return width, height, to_canvas


def render_svg(spec: RenderSpec, scene: Scene) -> str:
    """Serialise a scene; identical inputs give byte-identical documents."""
    width, height, to_canvas = transform(spec, scene)
    root = ET.Element(
        "svg",
        xmlns="http://www.w3.org/2000/svg",
        version="1.1",
        width=fmt(width),
        height=fmt(height),
        viewBox=f"0 0 {fmt(width)} {fmt(height)}",
    )
    ET.SubElement(root, "title").text = f"{spec.target} m={spec.m}"
    shapes = ET.SubElement(root, "g", id="polygons")
    for poly, key in scene.polygons:
        points = " ".join(f"{fmt(x)},{fmt(y)}" for x, y in map(to_canvas, poly))
        ET.SubElement(shapes, "polygon", points=points, fill=spec.color(key), stroke=spec.color("edge"), **{"stroke-width": "1", "class": key})
    lines = ET.SubElement(root, "g", id="segments")
    for a, b, key in scene.segments:
        (ax, ay), (bx, by) = to_canvas(a), to_canvas(b)
        ET.SubElement(lines, "line", x1=fmt(ax), y1=fmt(ay), x2=fmt(bx), y2=fmt(by), stroke=spec.color(key), **{"stroke-width": "1", "class": key})
    nodes = ET.SubElement(root, "g", id="nodes")
    for p, key in scene.nodes:
        cx, cy = to_canvas(p)
        ET.SubElement(nodes, "circle", cx=fmt(cx), cy=fmt(cy), r=fmt(spec.node_radius), fill=spec.color(key), **{"class": key})
    labels = ET.SubElement(root, "g", id="labels")
    for p, text in scene.labels:
        x, y = to_canvas(p)
        label = ET.SubElement(labels, "text", x=fmt(x), y=fmt(y), fill=spec.color("label"), **{"font-size": "10"})
        label.text = text
    return ET.tostring(root, encoding="unicode")


def write_svg(spec: RenderSpec, scene: Scene, path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(render_svg(spec, scene))
    logger.info("wrote %s", path)


def _angle(p: XY) -> float:
    return math.atan2(p[1], p[0]) % (2 * math.pi)


def root_diagram_scene(m: int) -> Scene:
    """Roots of the odd dihedral case placed in the plane; one ring of nodes per root length."""
    from pentacrystal.algebra.chordring import bridge_ring
    from pentacrystal.geometry.alcove import plane_root
    from pentacrystal.geometry.planar import PlanarPoint
    from pentacrystal.groups.coxeter import root_orbit

    if m % 2 == 0:
        raise RenderError(f"root diagrams are drawn for odd m only, got {m}")
    n = (m - 1) // 2
    ring = bridge_ring(n)
    alpha, beta = plane_root(n, "alpha", ring), plane_root(n, "beta", ring)
    zero = PlanarPoint(ring.zero(), ring.zero(), m)
    by_length: dict[float, list[XY]] = {}
    for vector in sorted(root_orbit(m)):
        a, b = ring.elem(vector[:n]), ring.elem(vector[n:])
        point = (zero + alpha.scaled(a) + beta.scaled(b)).xy
        by_length.setdefault(round(math.hypot(*point), 6), []).append(point)
    scene = Scene()
    for index, (_, ring_points) in enumerate(sorted(by_length.items())):
        key = "short" if index == 0 else "long"
        ordered = sorted(ring_points, key=_angle)
        for k, p in enumerate(ordered):
            scene.nodes.append((p, key))
            scene.segments.append((p, ordered[(k + 1) % len(ordered)], key))
    return scene


def weight_diagram_scene(n: int) -> Scene:
    """The shoelace x_0, ..., x_2n+1 of the fundamental alcove image and the zig-zag triangles of the defining weights."""
    from pentacrystal.geometry.alcove import fundamental_image, zigzag_triangulation, zigzag_vertices

    points = [p.xy for p in fundamental_image(n)]
    scene = Scene()
    for triangle in zigzag_triangulation(n):
        scene.polygons.append(([p.xy for p in triangle.points], "shape"))
    for i in range(len(points) - 1):
        scene.segments.append((points[i], points[i + 1], "edge"))
    for i, p in enumerate(points[:-1]):
        scene.nodes.append((p, "node"))
        scene.labels.append((p, f"x{i}"))
    for i, v in enumerate(zigzag_vertices(n)):
        scene.labels.append((v.xy, f"v{i}"))
    return scene


def tiling_scene(pieces: Sequence[tuple[Sequence[XY], str]]) -> Scene:
    """One filled polygon per (points, kind) piece."""
    scene = Scene()
    for points, kind in pieces:
        if len(points) < 3:
            raise RenderError(f"a tile needs at least three points, got {len(points)}")
        scene.polygons.append((list(points), kind))
    return scene


def golden_tiling_scene(tiling) -> Scene:
    return tiling_scene([([p.xy for p in piece.points], piece.kind) for piece in tiling.pieces])


def decomposition_scene(decomposition) -> Scene:
    placement = decomposition.placement
    if not placement:
        raise RenderError("decomposition has no placement; verify it before rendering")
    return tiling_scene([([placement[v] for v in part.vertices], "part") for part in decomposition.parts])


def alcove_shapes_scene(report, columns: int = 4, spacing: float = 3.0) -> Scene:
    """The representative of every shape class on a grid, hull filled and image points marked."""
    from pentacrystal.geometry.planar import convex_hull

    scene = Scene()
    for index, shape in enumerate(report.classes):
        dx, dy = (index % columns) * spacing, -(index // columns) * spacing
        points = [(x + dx, y + dy) for x, y in (p.xy for p in shape.representative.points)]
        scene.polygons.append((convex_hull(points), "shape"))
        for p in points:
            scene.nodes.append((p, "node"))
        scene.labels.append(((dx - 1.0, dy + 1.2), shape.label))
    return scene
