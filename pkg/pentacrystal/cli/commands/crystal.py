from __future__ import annotations

import argparse
import asyncio
import json

from pentacrystal.cli import AppContext, CommandResult
from pentacrystal.crystal import bridge, pentagon
from pentacrystal.crystal.engine import BJCrystal, JSeq, ModuleSpec
from pentacrystal.services.crystal_service import RANK_TWO_TYPES

CRYSTAL_TYPES = ("pentagon", "pentagon-swapped", "module", "classical", *RANK_TWO_TYPES)


def build_crystal(kind: str, n: int, window: int) -> BJCrystal:
    if kind == "pentagon":
        return pentagon.pentagon_crystal(window)
    if kind == "pentagon-swapped":
        return pentagon.pentagon_crystal(window, swapped=True)
    if kind == "module":
        return bridge.module_crystal(n, window)
    if kind == "classical":
        return bridge.classical_crystal(n, window)
    return BJCrystal(ModuleSpec.classical(RANK_TWO_TYPES[kind]), JSeq(("1", "2"), window))


def setup_crystal_parser(subparsers, parents: list[argparse.ArgumentParser]) -> argparse.ArgumentParser:
    parser = subparsers.add_parser("crystal", parents=parents, help="closures of the generic crystal engine")
    parser.add_argument("action", choices=("closure", "cutoff"))
    parser.add_argument("--type", dest="crystal_type", choices=CRYSTAL_TYPES, default="pentagon")
    parser.set_defaults(handler=handle)
    return parser


async def handle(ctx: AppContext, args: argparse.Namespace) -> CommandResult:
    depth = ctx.config.default_depth if args.depth is None else args.depth
    if args.action == "cutoff":
        report = await asyncio.to_thread(ctx.crystal_service.cutoff_suite, depth)
        lines = [f"{name}: support {value['detail']['max_support']} (limit {value['detail']['limit']})" for name, value in report.results.items()]
        return CommandResult(report.ok, report.as_dict(), "\n".join(lines))
    n = 2 if args.n is None else args.n
    crystal = build_crystal(args.crystal_type, n, ctx.config.crystal_window)
    closure = await asyncio.to_thread(crystal.closure, depth)
    payload = json.loads(closure.to_json(crystal))
    payload["layer_counts"] = closure.layer_counts()
    text = f"{args.crystal_type} closure to depth {depth}: layers {closure.layer_counts()} ({len(closure.elements)} elements)"
    return CommandResult(True, payload, text)
