from __future__ import annotations

import argparse
import asyncio

from pentacrystal.algebra.chordring import chord_index, chord_ring
from pentacrystal.cli import AppContext, CommandResult, UsageError
from pentacrystal.cli.commands.ring import parse_coords
from pentacrystal.geometry import tiling
from pentacrystal.geometry.tiling import METHODS, ScaledTriangle, Triangle
from pentacrystal.render.svg import decomposition_scene, tiling_scene
from pentacrystal.services.tiling_service import shape_counts


def whole_for(base: Triangle, method: str, t: int, corner: int) -> ScaledTriangle:
    """The scaled triangle a method cuts: the smallest scale its parts fit into."""
    m = base.m
    if method == "pair":
        x, _, _ = base.rotation(corner)
        index = x + t - 1
    elif method == "inscribed":
        index = 2 * t - 1
    elif method == "nine":
        index = 2
    elif method == "pt":
        index = t
    else:
        return ScaledTriangle(base, chord_ring(m).from_int(t))
    if not 0 <= index <= m - 2:
        raise UsageError(f"{method} with t={t} needs chord p_{index}, outside the {m}-gon")
    return ScaledTriangle(base, chord_index(m, index))


def parse_angles(raw: str) -> tuple[int, int, int]:
    angles = parse_coords(raw)
    if len(angles) != 3:
        raise UsageError(f"a triangle has three angles, got {raw!r}")
    return angles[0], angles[1], angles[2]


def setup_tile_parser(subparsers, parents: list[argparse.ArgumentParser]) -> argparse.ArgumentParser:
    parser = subparsers.add_parser("tile", parents=parents, help="decompositions and the chord-scaled closure")
    parser.add_argument("action", choices=("decompose", "reach", "star", "verify"))
    parser.add_argument("--angles", default="1,1,3", help="angle units i,j,k summing to m")
    parser.add_argument("--method", choices=METHODS, default="pair")
    parser.add_argument("--t", type=int, default=1)
    parser.add_argument("--corner", type=int, default=None)
    parser.add_argument("--scale", default="", help="chord indices whose product scales the target of `reach`")
    parser.add_argument("--from", dest="generators", default=None, help="semicolon separated angle triples `reach` may start from (default: every triangle)")
    parser.set_defaults(handler=handle)
    return parser


async def handle(ctx: AppContext, args: argparse.Namespace) -> CommandResult:
    if args.action == "verify":
        report = await asyncio.to_thread(ctx.tiling_service.tiling_suite)
        text = f"{report.results.get('instances', 0)} decompositions: " + ("conserved" if report.ok else "failing: " + ", ".join(report.failures))
        return CommandResult(report.ok, report.as_dict(), text)
    if args.action == "star":
        relation = await asyncio.to_thread(tiling.star_relation_m7)
        if relation is None:
            return CommandResult(False, {"found": False}, "no common quadrilateral found")
        left, right = relation
        payload = {"found": True, "left": list(left.angles), "right": list(right.angles)}
        scene = tiling_scene([(left.xy(), "T1")])
        return CommandResult(True, payload, f"common piece with angles {list(left.angles)}", scene=scene)

    m = 5 if args.m is None else args.m
    angles = parse_angles(args.angles)
    base = Triangle(m, angles)
    if args.action == "reach":
        scale = tuple(parse_coords(args.scale))
        generators = None if args.generators is None else [parse_angles(raw) for raw in args.generators.split(";") if raw.strip()]
        node = await asyncio.to_thread(ctx.tiling_service.reach, m, base.angles, scale, generators)
        if node is None:
            return CommandResult(False, {"reached": False}, f"{base} at scale {list(scale)} not reached within the budget")
        return CommandResult(True, {"reached": True, "derivation": node.to_json()}, f"{base} reached in {node.depth} cuts")

    corner = args.corner
    if corner is None:
        corner = base.angles.index(min(base.angles)) if args.method == "inscribed" else 0
    t = 2 if args.method == "nine" else args.t
    whole = whole_for(base, args.method, t, corner)
    decomposition = tiling.build_decomposition(whole, args.method, t, corner)
    failures = tiling.verify_decomposition(decomposition)
    payload = {**decomposition.to_json(), "counts": shape_counts(decomposition), "failures": failures}
    text = f"{whole} by {args.method}: " + ", ".join(f"{k} x{v}" for k, v in payload["counts"].items())
    if failures:
        return CommandResult(False, payload, text + f"\n{len(failures)} failures: {failures[0]}")
    return CommandResult(True, payload, text, scene=decomposition_scene(decomposition))
