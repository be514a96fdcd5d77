from __future__ import annotations

import logging
from typing import TYPE_CHECKING, Awaitable, Callable

import aiosqlite

if TYPE_CHECKING:
    from pentacrystal.storage.repositories import Database

logger = logging.getLogger(__name__)

MigrationStep = Callable[[aiosqlite.Connection], Awaitable[None]]


async def _ensure_meta(conn: aiosqlite.Connection) -> None:
    await conn.execute(
        """
        CREATE TABLE IF NOT EXISTS schema_meta (
            version INTEGER NOT NULL
        );
        """
    )
    cursor = await conn.execute("SELECT COUNT(*) FROM schema_meta")
    count = (await cursor.fetchone())[0]
    if count == 0:
        await conn.execute("INSERT INTO schema_meta (version) VALUES (1)")


async def _upgrade_to_v2(conn: aiosqlite.Connection) -> None:
    # Ledgers created before seeds were tracked separately.
    cursor = await conn.execute("PRAGMA table_info(runs)")
    existing_cols = {row[1] for row in await cursor.fetchall()}
    if "seed" not in existing_cols:
        await conn.execute("ALTER TABLE runs ADD COLUMN seed INTEGER")
    if "duration_ms" not in existing_cols:
        await conn.execute("ALTER TABLE runs ADD COLUMN duration_ms INTEGER")


async def _upgrade_to_v3(conn: aiosqlite.Connection) -> None:
    cursor = await conn.execute("PRAGMA table_info(golden_alcoves)")
    existing_cols = {row[1] for row in await cursor.fetchall()}
    if "image_json" not in existing_cols:
        await conn.execute("ALTER TABLE golden_alcoves ADD COLUMN image_json TEXT")


MIGRATIONS: dict[int, MigrationStep] = {
    2: _upgrade_to_v2,
    3: _upgrade_to_v3,
}

LATEST_VERSION = max(MIGRATIONS)


async def current_version(conn: aiosqlite.Connection) -> int:
    cursor = await conn.execute("SELECT MAX(version) FROM schema_meta")
    row = await cursor.fetchone()
    return int(row[0] or 1)


async def apply_migrations(database: "Database") -> int:
    async with database.connect() as conn:
        await _ensure_meta(conn)
        version = await current_version(conn)
        for target in sorted(MIGRATIONS):
            if target <= version:
                continue
            logger.info("Migrating %s to schema v%s", database.path, target)
            await MIGRATIONS[target](conn)
            await conn.execute("UPDATE schema_meta SET version=?", (target,))
            version = target
        await conn.commit()
        return version
