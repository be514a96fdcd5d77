from __future__ import annotations

import argparse
import asyncio

from pentacrystal.cli import AppContext, CommandResult, UsageError
from pentacrystal.cli.commands.pentagon import parse_element
from pentacrystal.crystal import bridge


def setup_bridge_parser(subparsers, parents: list[argparse.ArgumentParser]) -> argparse.ArgumentParser:
    parser = subparsers.add_parser("bridge", parents=parents, help="the odd-m module crystal against classical A_2n")
    parser.add_argument("action", choices=("check", "map"))
    parser.add_argument("--element", default="[]", help="JSON list of module entries, n integers each")
    parser.set_defaults(handler=handle)
    return parser


async def handle(ctx: AppContext, args: argparse.Namespace) -> CommandResult:
    n = 2 if args.n is None else args.n
    if n < 1:
        raise UsageError(f"n must be positive, got {n}")
    if args.action == "check":
        depth = ctx.config.default_depth if args.depth is None else args.depth
        report = await asyncio.to_thread(ctx.crystal_service.bridge_suite, n, depth)
        text = f"A_{2 * n} bridge at depth {depth}: " + ("intertwines" if report.ok else "failing: " + ", ".join(report.failures))
        return CommandResult(report.ok, report.as_dict(), text)
    dictionary = bridge.BasisDict(n)
    b = parse_element(args.element, width=n)
    classical = bridge.to_classical(b, dictionary)
    back = bridge.from_classical(classical, dictionary)
    payload = {"element": b.to_json(), "classical": [e[0] for e in classical.entries], "pattern": list(dictionary.classical_pattern())}
    return CommandResult(back == b, payload, f"{b.to_json()} -> {payload['classical']}")
