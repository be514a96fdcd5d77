from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from pentacrystal.config import Config
    from pentacrystal.render.svg import Scene
    from pentacrystal.services.alcove_service import AlcoveService
    from pentacrystal.services.algebra_service import AlgebraService
    from pentacrystal.services.crystal_service import CrystalService
    from pentacrystal.services.group_service import GroupService
    from pentacrystal.services.tiling_service import TilingService
    from pentacrystal.storage.repositories import RepositoryProvider


class UsageError(ValueError):
    """Arguments that parse but do not describe a valid request."""


@dataclass
class AppContext:
    repositories: "RepositoryProvider"
    config: "Config"
    algebra_service: "AlgebraService"
    crystal_service: "CrystalService"
    group_service: "GroupService"
    tiling_service: "TilingService"
    alcove_service: "AlcoveService"


@dataclass
class CommandResult:
    """What a verb hands back: pass/fail, the JSON payload, a text summary and optionally something to draw."""

    ok: bool
    payload: Any
    text: str
    scene: "Scene | None" = None
    target: str = "tiling"
