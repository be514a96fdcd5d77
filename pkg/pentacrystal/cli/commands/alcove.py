from __future__ import annotations

import argparse
import asyncio

from pentacrystal.cli import AppContext, CommandResult
from pentacrystal.geometry import alcove
from pentacrystal.render.svg import alcove_shapes_scene, golden_tiling_scene


def setup_alcove_parser(subparsers, parents: list[argparse.ArgumentParser]) -> argparse.ArgumentParser:
    parser = subparsers.add_parser("alcove", parents=parents, help="A_4 alcove images and the Golden-Pair tiling")
    parser.add_argument("action", choices=("shapes", "lines", "tiling25", "tile", "verify"))
    parser.add_argument("--extent", type=int, default=1, help="tile a triangle of 5*extent cells per side")
    parser.set_defaults(handler=handle)
    return parser


async def handle(ctx: AppContext, args: argparse.Namespace) -> CommandResult:
    service = ctx.alcove_service
    if args.action == "shapes":
        report = await asyncio.to_thread(alcove.shape_classes)
        text = f"{report.images} images in {len(report.classes)} shape classes: " + " ".join(c.label for c in report.classes)
        return CommandResult(report.ok, report.as_dict(), text, scene=alcove_shapes_scene(report), target="alcove-shapes")
    if args.action == "lines":
        report = await asyncio.to_thread(service.line_suite, 3 if args.n is None else args.n)
        rows = [f"n={name[1:]}: {value['detail']['counts']}" for name, value in report.results.items()]
        return CommandResult(report.ok, report.as_dict(), "\n".join(rows))
    if args.action == "tiling25":
        region, drift = await service.tiling25()
        payload = {**region.as_dict(), "drift": drift}
        text = f"{len(region.alcoves)} alcoves tile T" if region.ok else f"tiling failed: {region.failures[:3]}"
        if drift:
            text += f"; {len(drift)} differences from the frozen set"
        return CommandResult(region.ok and not drift, payload, text)
    if args.action == "tile":
        seed = ctx.config.tiling_seed if args.seed is None else args.seed
        golden = await asyncio.to_thread(service.golden_tiling, args.extent, seed)
        counts = golden.counts
        text = f"{len(golden.pieces)} pieces: T1 x{counts['T1']}, T2 x{counts['T2']} (seed {seed})"
        return CommandResult(golden.ok, golden.as_dict(), text, scene=golden_tiling_scene(golden))
    report = await service.alcove_suite(3 if args.n is None else args.n)
    text = "alcove checks pass" if report.ok else "failing: " + ", ".join(report.failures)
    return CommandResult(report.ok, report.as_dict(), text)
