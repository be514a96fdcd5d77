from __future__ import annotations

from datetime import datetime, timedelta, timezone

import aiosqlite
import pytest

from pentacrystal.paths import schema_path
from pentacrystal.services.alcove_service import TILING25_SET, AlcoveService
from pentacrystal.storage import migrations
from pentacrystal.storage.repositories import Database, RepositoryProvider


async def _repositories(tmp_path) -> RepositoryProvider:
    db = Database(tmp_path / "test.sqlite", schema_path())
    await db.ensure_schema()
    return RepositoryProvider.build(db)


@pytest.mark.asyncio
async def test_run_ledger_round_trip(tmp_path):
    """Recorded runs come back newest first with decoded parameters and report."""
    repos = await _repositories(tmp_path)
    start = datetime(2024, 1, 1, tzinfo=timezone.utc)
    await repos.runs.record_run("coxeter", {"m": 5}, True, {"order": 120}, start, start + timedelta(seconds=2), seed=7)
    await repos.runs.record_run("tile", {"m": 9}, False)

    rows = await repos.runs.latest_runs()
    assert [row["verb"] for row in rows] == ["tile", "coxeter"]
    coxeter = rows[1]
    assert coxeter["ok"] is True
    assert coxeter["parameters"] == {"m": 5}
    assert coxeter["report"] == {"order": 120}
    assert coxeter["seed"] == 7
    assert coxeter["duration_ms"] == 2000
    assert rows[0]["report"] is None

    only = await repos.runs.latest_runs("coxeter")
    assert len(only) == 1


@pytest.mark.asyncio
async def test_golden_set_replace_and_load(tmp_path):
    """Saving a set replaces earlier contents; loading keeps index order."""
    repos = await _repositories(tmp_path)
    assert not await repos.goldens.has_set("demo")
    await repos.goldens.save_set("demo", [{"vertices": [[0, 0]]}, {"vertices": [[1, 0]], "image": [[1, 0, 0, 1]]}])
    await repos.goldens.save_set("demo", [{"vertices": [[2, 2]]}])
    rows = await repos.goldens.load_set("demo")
    assert rows == [{"index": 0, "vertices": [[2, 2]], "image": None}]
    assert await repos.goldens.has_set("demo")


@pytest.mark.asyncio
async def test_reset_all_clears_tables(tmp_path):
    """reset_all empties the ledger and the golden store."""
    repos = await _repositories(tmp_path)
    await repos.runs.record_run("cheb", {}, True)
    await repos.goldens.save_set("demo", [{"vertices": []}])
    await repos.reset_all()
    assert await repos.runs.latest_runs() == []
    assert not await repos.goldens.has_set("demo")


@pytest.mark.asyncio
async def test_migrations_upgrade_old_ledger(tmp_path):
    """A ledger created before seeds and images were stored gains the columns."""
    path = tmp_path / "old.sqlite"
    async with aiosqlite.connect(path) as conn:
        await conn.executescript(
            """
            CREATE TABLE runs (
                id INTEGER PRIMARY KEY AUTOINCREMENT,
                verb TEXT NOT NULL,
                parameters_json TEXT NOT NULL DEFAULT '{}',
                ok INTEGER NOT NULL DEFAULT 0,
                report_json TEXT,
                started_at TIMESTAMP NOT NULL,
                finished_at TIMESTAMP
            );
            CREATE TABLE golden_alcoves (
                set_name TEXT NOT NULL,
                alcove_index INTEGER NOT NULL,
                vertices_json TEXT NOT NULL,
                created_at TIMESTAMP DEFAULT CURRENT_TIMESTAMP,
                PRIMARY KEY (set_name, alcove_index)
            );
            """
        )
        await conn.commit()
    db = Database(path, schema_path())
    await db.ensure_schema()
    async with db.connect() as conn:
        version = await migrations.current_version(conn)
        cursor = await conn.execute("PRAGMA table_info(runs)")
        columns = {row[1] for row in await cursor.fetchall()}
    assert version == migrations.LATEST_VERSION
    assert {"seed", "duration_ms"} <= columns
    repos = RepositoryProvider.build(db)
    await repos.goldens.save_set("demo", [{"vertices": [[1]], "image": [[0]]}])
    assert (await repos.goldens.load_set("demo"))[0]["image"] == [[0]]


@pytest.mark.asyncio
async def test_tiling25_is_frozen_then_compared(tmp_path):
    """The first run freezes the 25 alcoves; later runs find no drift."""
    repos = await _repositories(tmp_path)
    service = AlcoveService(repos.goldens)
    region, drift = await service.tiling25()
    assert region.ok and drift == []
    assert len(await repos.goldens.load_set(TILING25_SET)) == 25
    _, drift = await service.tiling25()
    assert drift == []


@pytest.mark.asyncio
async def test_tiling25_reports_drift(tmp_path):
    """A tampered frozen set is reported as drift."""
    repos = await _repositories(tmp_path)
    service = AlcoveService(repos.goldens)
    await service.tiling25()
    rows = await repos.goldens.load_set(TILING25_SET)
    rows[0]["vertices"] = [[9, 9, 9, 9]] * 5
    await repos.goldens.save_set(TILING25_SET, rows)
    _, drift = await service.tiling25()
    assert len(drift) == 1
