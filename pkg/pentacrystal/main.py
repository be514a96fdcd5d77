from __future__ import annotations

import asyncio
import logging
import sys
from typing import Sequence

from pentacrystal.cli.app import build_context, run
from pentacrystal.config import Config
from pentacrystal.paths import schema_path
from pentacrystal.storage.repositories import Database, RepositoryProvider

logger = logging.getLogger(__name__)


async def main(argv: Sequence[str] | None = None) -> int:
    config = Config.from_env()
    logging.basicConfig(level=config.log_level, format="[%(asctime)s] %(levelname)s:%(name)s:%(message)s")

    database = Database(config.db_path, schema_path())
    await database.ensure_schema()
    repositories = RepositoryProvider.build(database)
    ctx = build_context(config, repositories)
    logger.debug("ledger at %s, artifacts under %s", config.db_path, config.output_dir)
    return await run(sys.argv[1:] if argv is None else argv, ctx)


if __name__ == "__main__":
    raise SystemExit(asyncio.run(main()))
