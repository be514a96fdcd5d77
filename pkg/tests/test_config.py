from __future__ import annotations

from pathlib import Path

from pentacrystal import paths
from pentacrystal.config import Config
from pentacrystal.storage.repositories import RepositoryProvider


def test_resolve_project_path(tmp_path):
    """Relative paths hang off the project root and absolute ones pass through."""
    assert paths.resolve_project_path("out") == paths.PROJECT_ROOT / "out"
    assert paths.resolve_project_path(tmp_path) == tmp_path
    assert paths.schema_path().name == "schema.sql"
    assert paths.schema_path().is_file()


def test_paths_module_surface():
    """Only the helpers the package calls are exported."""
    assert not hasattr(paths, "project_path")
    assert not hasattr(RepositoryProvider, "as_dict")


def test_config_defaults(monkeypatch):
    """Unset variables fall back to the documented defaults."""
    for name in ("DATABASE_PATH", "OUTPUT_DIR", "DEFAULT_DEPTH", "GROUP_CAP", "CRYSTAL_WINDOW", "REACH_BUDGET", "TILING_SEED", "SVG_SCALE", "LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)
    config = Config.from_env()
    assert config.reach_budget == 7
    assert config.default_depth == 6
    assert config.crystal_window == 16
    assert config.log_level == "INFO"
    assert config.db_path == paths.PROJECT_ROOT / "pentacrystal.sqlite"


def test_config_rejects_malformed_values(monkeypatch, tmp_path):
    """A malformed integer or level falls back to the default."""
    monkeypatch.setenv("REACH_BUDGET", "seven")
    monkeypatch.setenv("LOG_LEVEL", "chatty")
    monkeypatch.setenv("OUTPUT_DIR", str(tmp_path))
    config = Config.from_env()
    assert config.reach_budget == 7
    assert config.log_level == "INFO"
    assert config.output_dir == Path(tmp_path)
