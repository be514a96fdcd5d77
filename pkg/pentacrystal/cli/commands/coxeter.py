from __future__ import annotations

import argparse
import asyncio

from pentacrystal.cli import AppContext, CommandResult, UsageError
from pentacrystal.groups import coxeter
from pentacrystal.render.svg import root_diagram_scene


def setup_coxeter_parser(subparsers, parents: list[argparse.ArgumentParser]) -> argparse.ArgumentParser:
    parser = subparsers.add_parser("coxeter", parents=parents, help="dihedral and augmented groups, roots, dodecahedron")
    parser.add_argument("action", choices=("order", "check", "roots", "dodeca"))
    parser.add_argument("--augmented", action="store_true", help="close the augmented generators instead of the dihedral pair")
    parser.add_argument("--all", dest="all_targets", action="store_true", help="`check` every tabulated m")
    parser.set_defaults(handler=handle)
    return parser


async def handle(ctx: AppContext, args: argparse.Namespace) -> CommandResult:
    m = 5 if args.m is None else args.m
    if m < 3:
        raise UsageError(f"m must be at least 3, got {m}")
    service = ctx.group_service
    if args.action == "order":
        if args.augmented:
            order = await asyncio.to_thread(service.augmented_order, m)
        else:
            order = await asyncio.to_thread(service.dihedral_order, m)
        payload = {"m": m, "augmented": args.augmented, "order": order, "target": coxeter.target_name(m) if args.augmented else f"I_2({m})"}
        return CommandResult(True, payload, str(order))
    if args.action == "check":
        if args.all_targets:
            report = await asyncio.to_thread(service.group_suite)
        else:
            report = await asyncio.to_thread(service.coxeter_suite, m)
        text = f"{coxeter.target_name(m)}: " + ("relations hold" if report.ok else "failing: " + ", ".join(report.failures))
        return CommandResult(report.ok, report.as_dict(), text)
    if args.action == "roots":
        if m % 2 == 0:
            raise UsageError(f"the root system is built for odd m only, got {m}")
        report = await asyncio.to_thread(service.root_suite, m)
        summary = report.results["summary"]
        text = f"{summary['roots']} roots in {summary['w_orbits']} W-orbits"
        return CommandResult(report.ok, report.as_dict(), text, scene=root_diagram_scene(m), target="root-diagram")
    dodeca = await asyncio.to_thread(coxeter.dodeca_report)
    return CommandResult(dodeca.ok, dodeca.as_dict(), "dodecahedron products reproduced" if dodeca.ok else "dodecahedron products differ")
