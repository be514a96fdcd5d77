"""PNG output of a scene through Pillow."""
from __future__ import annotations

import logging

from pentacrystal.render.svg import RenderSpec, Scene, transform

logger = logging.getLogger(__name__)


def write_png(spec: RenderSpec, scene: Scene, path) -> None:
    from PIL import Image, ImageDraw

    width, height, to_canvas = transform(spec, scene)
    image = Image.new("RGB", (max(1, round(width)), max(1, round(height))), "white")
    draw = ImageDraw.Draw(image)
    for poly, key in scene.polygons:
        draw.polygon([to_canvas(p) for p in poly], fill=spec.color(key), outline=spec.color("edge"))
    for a, b, key in scene.segments:
        draw.line([to_canvas(a), to_canvas(b)], fill=spec.color(key), width=1)
    r = spec.node_radius
    for p, key in scene.nodes:
        x, y = to_canvas(p)
        draw.ellipse([x - r, y - r, x + r, y + r], fill=spec.color(key))
    for p, text in scene.labels:
        draw.text(to_canvas(p), text, fill=spec.color("label"))
    image.save(path, format="PNG")
    logger.info("wrote %s (%sx%s)", path, image.width, image.height)
