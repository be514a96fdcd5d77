from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from pathlib import Path

from dotenv import load_dotenv

from pentacrystal.paths import resolve_project_path


automatically_loaded = load_dotenv()

logger = logging.getLogger(__name__)


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name, str(default))
    try:
        return int(raw)
    except ValueError:
        logger.warning("%s=%r is not an integer; using %s", name, raw, default)
        return default


@dataclass
class Config:
    db_path: Path
    output_dir: Path
    default_depth: int
    group_cap: int
    crystal_window: int
    reach_budget: int
    tiling_seed: int
    svg_scale: int
    log_level: str

    @classmethod
    def from_env(cls) -> "Config":
        log_level = os.getenv("LOG_LEVEL", "INFO").upper()
        if not isinstance(logging.getLevelName(log_level), int):
            logger.warning("LOG_LEVEL=%r is not a logging level; using INFO", log_level)
            log_level = "INFO"
        return cls(
            db_path=resolve_project_path(os.getenv("DATABASE_PATH", "pentacrystal.sqlite")),
            output_dir=resolve_project_path(os.getenv("OUTPUT_DIR", "out")),
            default_depth=_int_env("DEFAULT_DEPTH", 6),
            group_cap=_int_env("GROUP_CAP", 100_000),
            crystal_window=_int_env("CRYSTAL_WINDOW", 16),
            reach_budget=_int_env("REACH_BUDGET", 7),
            tiling_seed=_int_env("TILING_SEED", 0),
            svg_scale=_int_env("SVG_SCALE", 120),
            log_level=log_level,
        )
