from __future__ import annotations

import argparse
import asyncio

from pentacrystal.cli import AppContext, CommandResult
from pentacrystal.geometry import alcove
from pentacrystal.render import svg
from pentacrystal.render.svg import TARGETS, RenderSpec, Scene


def setup_render_parser(subparsers, parents: list[argparse.ArgumentParser]) -> argparse.ArgumentParser:
    parser = subparsers.add_parser("render", parents=parents, help="draw a root diagram, weight diagram, tiling or alcove shapes")
    parser.add_argument("--target", choices=TARGETS, required=True)
    parser.set_defaults(handler=handle)
    return parser


async def build_scene(ctx: AppContext, args: argparse.Namespace) -> tuple[Scene, str]:
    """The scene for a target and the stem of its default file name."""
    if args.target == "root-diagram":
        m = 5 if args.m is None else args.m
        return svg.root_diagram_scene(m), f"root-diagram-m{m}"
    if args.target == "weight-diagram":
        n = 2 if args.n is None else args.n
        return svg.weight_diagram_scene(n), f"weight-diagram-n{n}"
    if args.target == "alcove-shapes":
        report = await asyncio.to_thread(alcove.shape_classes)
        return svg.alcove_shapes_scene(report), "alcove-shapes"
    seed = ctx.config.tiling_seed if args.seed is None else args.seed
    golden = await asyncio.to_thread(ctx.alcove_service.golden_tiling, 1, seed)
    return svg.golden_tiling_scene(golden), f"tiling-seed{seed}"


async def handle(ctx: AppContext, args: argparse.Namespace) -> CommandResult:
    scene, stem = await build_scene(ctx, args)
    payload = {
        "target": args.target,
        "nodes": len(scene.nodes),
        "polygons": len(scene.polygons),
        "segments": len(scene.segments),
    }
    if args.svg is None and args.png is None:
        path = ctx.config.output_dir / f"{stem}.svg"
        path.parent.mkdir(parents=True, exist_ok=True)
        spec = RenderSpec(args.target, m=5 if args.m is None else args.m, scale=float(ctx.config.svg_scale))
        svg.write_svg(spec, scene, path)
        payload["path"] = str(path)
    text = f"{args.target}: {payload['nodes']} nodes, {payload['polygons']} polygons"
    return CommandResult(True, payload, text, scene=scene, target=args.target)
