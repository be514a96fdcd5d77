from __future__ import annotations

from pathlib import Path


PROJECT_ROOT = Path(__file__).resolve().parent.parent


def resolve_project_path(path: str | Path) -> Path:
    """Resolve a path relative to the project root if it is not absolute."""
    candidate = Path(path)
    return candidate if candidate.is_absolute() else PROJECT_ROOT / candidate


def schema_path() -> Path:
    return Path(__file__).resolve().parent / "storage" / "schema.sql"
