from __future__ import annotations

import asyncio
import json
from contextlib import asynccontextmanager
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, AsyncIterator, Dict, Iterable, List, Optional, Sequence

import aiosqlite

from pentacrystal.storage import migrations


def _row_to_dict(row: aiosqlite.Row | None) -> Optional[dict]:
    return dict(row) if row is not None else None


def _rows_to_dicts(rows: Iterable[aiosqlite.Row] | None) -> list[dict]:
    return [dict(r) for r in rows] if rows else []


def _utcnow() -> datetime:
    return datetime.now(timezone.utc)


class Database:
    def __init__(self, path: Path, schema_path: Path):
        self.path = Path(path)
        self.schema_path = Path(schema_path)
        self._connect_lock = asyncio.Lock()

    @asynccontextmanager
    async def connect(self) -> AsyncIterator[aiosqlite.Connection]:
        async with self._connect_lock:
            db = await aiosqlite.connect(self.path)
        db.row_factory = aiosqlite.Row
        try:
            yield db
        finally:
            await db.close()

    async def ensure_schema(self) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.schema_path, "r", encoding="utf-8") as schema_file:
            schema_sql = schema_file.read()
        async with self.connect() as conn:
            await conn.executescript(schema_sql)
            await conn.commit()
        await migrations.apply_migrations(self)


class RunRepository:
    """One row per CLI verb invocation."""

    def __init__(self, database: Database):
        self.database = database

    async def record_run(
        self,
        verb: str,
        parameters: Dict[str, Any],
        ok: bool,
        report: Any = None,
        started_at: Optional[datetime] = None,
        finished_at: Optional[datetime] = None,
        seed: Optional[int] = None,
    ) -> int:
        started_at = started_at or _utcnow()
        finished_at = finished_at or _utcnow()
        duration_ms = int((finished_at - started_at).total_seconds() * 1000)
        async with self.database.connect() as conn:
            cursor = await conn.execute(
                """
                INSERT INTO runs (verb, parameters_json, ok, report_json, started_at, finished_at, seed, duration_ms)
                VALUES (?, ?, ?, ?, ?, ?, ?, ?)
                """,
                (
                    verb,
                    json.dumps(parameters, sort_keys=True, default=str),
                    1 if ok else 0,
                    json.dumps(report, sort_keys=True, default=str) if report is not None else None,
                    started_at.isoformat(),
                    finished_at.isoformat(),
                    seed,
                    duration_ms,
                ),
            )
            await conn.commit()
            return cursor.lastrowid

    async def latest_runs(self, verb: str | None = None, limit: int = 10) -> List[dict]:
        async with self.database.connect() as conn:
            if verb is None:
                cursor = await conn.execute("SELECT * FROM runs ORDER BY id DESC LIMIT ?", (int(limit),))
            else:
                cursor = await conn.execute(
                    "SELECT * FROM runs WHERE verb=? ORDER BY id DESC LIMIT ?", (verb, int(limit))
                )
            rows = _rows_to_dicts(await cursor.fetchall())
        for row in rows:
            row["ok"] = bool(row["ok"])
            row["parameters"] = json.loads(row.pop("parameters_json") or "{}")
            report_json = row.pop("report_json")
            row["report"] = json.loads(report_json) if report_json else None
        return rows


class GoldenRepository:
    """Frozen alcove sets, compared against fresh computations to detect drift."""

    def __init__(self, database: Database):
        self.database = database

    async def save_set(self, set_name: str, alcoves: Sequence[Dict[str, Any]]) -> int:
        """Replace the named set; each entry carries ``vertices`` and optionally ``image``."""
        async with self.database.connect() as conn:
            try:
                await conn.execute("DELETE FROM golden_alcoves WHERE set_name=?", (set_name,))
                for index, alcove in enumerate(alcoves):
                    image = alcove.get("image")
                    await conn.execute(
                        """
                        INSERT INTO golden_alcoves (set_name, alcove_index, vertices_json, image_json)
                        VALUES (?, ?, ?, ?)
                        """,
                        (
                            set_name,
                            index,
                            json.dumps(alcove["vertices"]),
                            json.dumps(image) if image is not None else None,
                        ),
                    )
                await conn.commit()
            except Exception:
                await conn.rollback()
                raise
        return len(alcoves)

    async def load_set(self, set_name: str) -> List[dict]:
        async with self.database.connect() as conn:
            cursor = await conn.execute(
                "SELECT * FROM golden_alcoves WHERE set_name=? ORDER BY alcove_index", (set_name,)
            )
            rows = _rows_to_dicts(await cursor.fetchall())
        return [
            {
                "index": row["alcove_index"],
                "vertices": json.loads(row["vertices_json"]),
                "image": json.loads(row["image_json"]) if row["image_json"] else None,
            }
            for row in rows
        ]

    async def has_set(self, set_name: str) -> bool:
        async with self.database.connect() as conn:
            cursor = await conn.execute("SELECT 1 FROM golden_alcoves WHERE set_name=? LIMIT 1", (set_name,))
            return await cursor.fetchone() is not None


@dataclass
class RepositoryProvider:
    database: Database
    runs: RunRepository
    goldens: GoldenRepository

    @classmethod
    def build(cls, database: Database) -> "RepositoryProvider":
        return cls(
            database=database,
            runs=RunRepository(database),
            goldens=GoldenRepository(database),
        )

    async def reset_all(self) -> None:
        async with self.database.connect() as conn:
            await conn.execute("BEGIN")
            try:
                for table in ("runs", "golden_alcoves"):
                    await conn.execute(f"DELETE FROM {table}")
                await conn.commit()
            except Exception:
                await conn.rollback()
                raise
