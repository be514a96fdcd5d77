from __future__ import annotations

import argparse
import asyncio
import json
from dataclasses import asdict

from pentacrystal.cli import AppContext, CommandResult, UsageError
from pentacrystal.crystal import pentagon
from pentacrystal.crystal.engine import CrystalElt


def parse_element(raw: str, width: int = 2) -> CrystalElt:
    """An element written as JSON entries of `width` integers, e.g. ``[[1,0],[0,2]]``."""
    try:
        entries = json.loads(raw)
        if not all(isinstance(e, list) and len(e) == width for e in entries):
            raise ValueError(f"entries must be lists of {width} integers")
        return CrystalElt(tuple(tuple(e) for e in entries))
    except (ValueError, TypeError) as exc:
        raise UsageError(f"cannot read element {raw!r}: {exc}") from exc


def setup_pentagon_parser(subparsers, parents: list[argparse.ArgumentParser]) -> argparse.ArgumentParser:
    parser = subparsers.add_parser("pentagon", parents=parents, help="the pentagonal crystal")
    parser.add_argument("action", choices=("verify", "member", "normal", "transport"))
    parser.add_argument("--element", default="[]", help="JSON list of [m, n] entries")
    parser.set_defaults(handler=handle)
    return parser


async def handle(ctx: AppContext, args: argparse.Namespace) -> CommandResult:
    if args.action == "verify":
        depth = ctx.config.default_depth if args.depth is None else args.depth
        report = await asyncio.to_thread(ctx.crystal_service.pentagon_suite, depth)
        layers = report.results.get("layers", [])
        text = f"layers {layers}: " + ("all checks pass" if report.ok else "failing: " + ", ".join(report.failures))
        return CommandResult(report.ok, report.as_dict(), text)

    b = parse_element(args.element)
    if args.action == "member":
        ok, params = pentagon.member_prop54(b)
        payload = {"element": b.to_json(), "member": ok, "params": asdict(params), "inequalities": params.inequalities()}
        text = f"{b.to_json()} {'is' if ok else 'is not'} in the crystal ({params})"
        return CommandResult(True, payload, text)

    crystal = pentagon.pentagon_crystal(ctx.config.crystal_window)
    if not pentagon.member_prop54(b)[0]:
        return CommandResult(False, {"element": b.to_json(), "member": False}, f"{b.to_json()} is not in the crystal")
    if args.action == "normal":
        word = pentagon.normal_form(b, crystal)
        payload = {
            "element": b.to_json(),
            "blocks": [[root, list(mn)] for root, mn in word.blocks],
            "steps": [[root, comp] for root, comp in word.steps],
        }
        return CommandResult(True, payload, str(word))
    target = pentagon.pentagon_crystal(ctx.config.crystal_window, swapped=True)
    image = pentagon.transport(b, crystal, target)
    payload = {"element": b.to_json(), "image": image.to_json(), "weight": list(crystal.weight(b))}
    return CommandResult(True, payload, f"{b.to_json()} -> {image.to_json()}")
