from __future__ import annotations

import xml.etree.ElementTree as ET

import pytest

from pentacrystal.geometry import alcove
from pentacrystal.render import svg
from pentacrystal.render.raster import write_png
from pentacrystal.render.svg import RenderError, RenderSpec, Scene


def test_root_diagram_has_twenty_nodes():
    """The pentagon root diagram draws one node per root on two rings."""
    scene = svg.root_diagram_scene(5)
    assert len(scene.nodes) == 20
    assert {key for _, key in scene.nodes} == {"short", "long"}
    document = svg.render_svg(RenderSpec("root-diagram"), scene)
    assert document.count("<circle") == 20


def test_svg_is_byte_stable():
    """Rendering the same scene twice gives identical bytes."""
    spec = RenderSpec("root-diagram", m=5)
    first = svg.render_svg(spec, svg.root_diagram_scene(5))
    second = svg.render_svg(spec, svg.root_diagram_scene(5))
    assert first == second


def test_empty_scene_renders_skeleton():
    """An empty tiling still yields a parseable SVG document."""
    document = svg.render_svg(RenderSpec("tiling"), Scene())
    root = ET.fromstring(document)
    assert root.tag.endswith("svg")
    assert "<polygon" not in document


def test_fixed_decimal_formatting():
    """Coordinates use six decimals and never print negative zero."""
    assert svg.fmt(-0.0) == "0.000000"
    assert svg.fmt(-1e-9) == "0.000000"
    assert svg.fmt(1.5) == "1.500000"


def test_render_spec_validation():
    """Unknown targets and non-positive scales are refused."""
    with pytest.raises(RenderError):
        RenderSpec("poster")
    with pytest.raises(RenderError):
        RenderSpec("tiling", scale=0)


def test_tiling_scene_rejects_degenerate_pieces():
    """A tile needs three points."""
    with pytest.raises(RenderError):
        svg.tiling_scene([([(0.0, 0.0), (1.0, 0.0)], "T1")])


def test_golden_tiling_scene_has_75_polygons():
    """Each Golden-Pair piece becomes one polygon."""
    scene = svg.golden_tiling_scene(alcove.aperiodic_tile(1, seed=0))
    document = svg.render_svg(RenderSpec("tiling"), scene)
    assert document.count("<polygon") == 75


def test_root_diagram_needs_odd_m():
    """Even m has no root diagram of this kind."""
    with pytest.raises(RenderError):
        svg.root_diagram_scene(6)


def test_weight_diagram_labels():
    """The weight diagram labels x0 through x_2n and the zig-zag corners v0 through v_2n."""
    scene = svg.weight_diagram_scene(2)
    assert [text for _, text in scene.labels] == ["x0", "x1", "x2", "x3", "x4", "v0", "v1", "v2", "v3", "v4"]
    assert len(scene.polygons) == 3


def test_write_svg_and_png(tmp_path):
    """Both writers produce files on disk."""
    scene = svg.root_diagram_scene(5)
    spec = RenderSpec("root-diagram")
    svg.write_svg(spec, scene, tmp_path / "roots.svg")
    write_png(spec, scene, tmp_path / "roots.png")
    assert (tmp_path / "roots.svg").read_text(encoding="utf-8").startswith("<svg")
    assert (tmp_path / "roots.png").read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
