from __future__ import annotations

import argparse
import json
import logging
from datetime import datetime, timezone
from pathlib import Path
from typing import Sequence

from pentacrystal.cli import AppContext, CommandResult
from pentacrystal.cli.commands.alcove import setup_alcove_parser
from pentacrystal.cli.commands.bridge import setup_bridge_parser
from pentacrystal.cli.commands.cheb import setup_cheb_parser
from pentacrystal.cli.commands.coxeter import setup_coxeter_parser
from pentacrystal.cli.commands.crystal import setup_crystal_parser
from pentacrystal.cli.commands.pentagon import setup_pentagon_parser
from pentacrystal.cli.commands.render import setup_render_parser
from pentacrystal.cli.commands.ring import setup_ring_parser
from pentacrystal.cli.commands.tile import setup_tile_parser
from pentacrystal.config import Config
from pentacrystal.render.raster import write_png
from pentacrystal.render.svg import RenderSpec, write_svg
from pentacrystal.services.alcove_service import AlcoveService
from pentacrystal.services.algebra_service import AlgebraService
from pentacrystal.services.crystal_service import CrystalService
from pentacrystal.services.group_service import GroupService
from pentacrystal.services.tiling_service import TilingService
from pentacrystal.storage.repositories import RepositoryProvider

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

VERBS = (
    setup_cheb_parser,
    setup_ring_parser,
    setup_crystal_parser,
    setup_pentagon_parser,
    setup_bridge_parser,
    setup_coxeter_parser,
    setup_tile_parser,
    setup_alcove_parser,
    setup_render_parser,
)


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the JSON report instead of the summary")
    common.add_argument("--svg", metavar="OUT", default=None, help="write the command's drawing as SVG")
    common.add_argument("--png", metavar="OUT", default=None, help="write the command's drawing as PNG")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--depth", type=int, default=None)
    common.add_argument("--m", type=int, default=None)
    common.add_argument("--n", type=int, default=None)
    common.add_argument("--no-record", action="store_true", help="do not add this run to the ledger")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pentacrystal", description="Non-crystallographic crystals, chord rings and golden tilings.")
    subparsers = parser.add_subparsers(dest="verb", required=True)
    parents = [_common_options()]
    for setup in VERBS:
        setup(subparsers, parents)
    return parser


def build_context(config: Config, repositories: RepositoryProvider) -> AppContext:
    return AppContext(
        repositories=repositories,
        config=config,
        algebra_service=AlgebraService(seed=config.tiling_seed),
        crystal_service=CrystalService(config.crystal_window),
        group_service=GroupService(config.group_cap),
        tiling_service=TilingService(reach_budget=config.reach_budget),
        alcove_service=AlcoveService(repositories.goldens, seed=config.tiling_seed),
    )


def _parameters(args: argparse.Namespace) -> dict:
    return {k: v for k, v in vars(args).items() if k != "handler" and isinstance(v, (str, int, float, bool, type(None)))}


def _write_artifacts(ctx: AppContext, args: argparse.Namespace, result: CommandResult) -> bool:
    if args.svg is None and args.png is None:
        return True
    if result.scene is None:
        logger.error("%s %s draws nothing; drop --svg/--png", args.verb, getattr(args, "action", ""))
        return False
    spec = RenderSpec(result.target, m=5 if args.m is None else args.m, scale=float(ctx.config.svg_scale))
    for path, writer in ((args.svg, write_svg), (args.png, write_png)):
        if path is not None:
            Path(path).parent.mkdir(parents=True, exist_ok=True)
            writer(spec, result.scene, path)
    return True


async def run(argv: Sequence[str] | None, ctx: AppContext) -> int:
    """Parse, dispatch one verb, print its output, write artifacts and record the run; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE

    started_at = datetime.now(timezone.utc)
    try:
        result = await args.handler(ctx, args)
    except ValueError as exc:
        logger.error("%s: %s", args.verb, exc)
        return EXIT_USAGE
    except Exception:  # noqa: BLE001
        logger.exception("%s failed", args.verb)
        return EXIT_FAILED
    finished_at = datetime.now(timezone.utc)

    print(json.dumps(result.payload, indent=2, sort_keys=True, default=str) if args.json else result.text)
    if not _write_artifacts(ctx, args, result):
        return EXIT_USAGE
    if not args.no_record:
        await ctx.repositories.runs.record_run(
            args.verb,
            _parameters(args),
            result.ok,
            result.payload,
            started_at=started_at,
            finished_at=finished_at,
            seed=args.seed,
        )
    if not result.ok:
        logger.warning("%s reported failures", args.verb)
        return EXIT_FAILED
    return EXIT_OK
