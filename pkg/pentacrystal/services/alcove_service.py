from __future__ import annotations

import logging

from pentacrystal.geometry import alcove
from pentacrystal.geometry.alcove import GoldenTiling, RegionTiling
from pentacrystal.services.report import SuiteReport
from pentacrystal.storage.repositories import GoldenRepository

logger = logging.getLogger(__name__)

TILING25_SET = "tiling25"

# n -> (sums on a W-line through the origin, all nonzero sums of distinct defining weights)
LINE_COUNTS: dict[int, tuple[int, int]] = {1: (6, 6), 2: (30, 30), 3: (98, 126), 4: (254, 510)}


def _frozen_rows(region: RegionTiling) -> list[dict]:
    return [
        {"vertices": [list(v) for v in a.vertices], "image": [[*p.a.coords, *p.b.coords] for p in a.image()]}
        for a in region.alcoves
    ]


class AlcoveService:
    """Alcove geometry checks; the 25-alcove tiling is frozen in the golden store the first time it is found."""

    def __init__(self, goldens: GoldenRepository | None = None, seed: int = 0):
        self.goldens = goldens
        self.seed = seed

    async def tiling25(self) -> tuple[RegionTiling, list[str]]:
        """The tiling and its drift against the frozen set (empty when it matches or was just frozen)."""
        region = alcove.find_tiling25()
        if self.goldens is None or not region.ok:
            return region, []
        rows = _frozen_rows(region)
        if not await self.goldens.has_set(TILING25_SET):
            await self.goldens.save_set(TILING25_SET, rows)
            logger.info("froze %s alcoves as %s", len(rows), TILING25_SET)
            return region, []
        stored = await self.goldens.load_set(TILING25_SET)
        drift = []
        if len(stored) != len(rows):
            drift.append(f"stored set has {len(stored)} alcoves, found {len(rows)}")
        for row, fresh in zip(stored, rows):
            if row["vertices"] != fresh["vertices"]:
                drift.append(f"alcove {row['index']} moved from {row['vertices']} to {fresh['vertices']}")
        if drift:
            logger.warning("%s drifted from the frozen set: %s differences", TILING25_SET, len(drift))
        return region, drift

    def golden_tiling(self, extent: int = 1, seed: int | None = None) -> GoldenTiling:
        return alcove.aperiodic_tile(extent, self.seed if seed is None else seed)

    def line_suite(self, max_n: int = 3) -> SuiteReport:
        report = SuiteReport("lines", {"max_n": max_n})
        for n in range(1, max_n + 1):
            got = alcove.weight_line_count(n)
            report.check(f"n{n}", got == LINE_COUNTS.get(n, got), {"counts": list(got), "expected": list(LINE_COUNTS.get(n, got))})
        return report

    async def alcove_suite(self, line_n: int = 3) -> SuiteReport:
        report = SuiteReport("alcove", {"seed": self.seed, "line_n": line_n})
        for n in (1, 2, 3):
            failures = alcove.affine_reflection_failures(n)
            report.check(f"affine_reflections_n{n}", not failures, failures or None)
        failures = alcove.psi_commutation_failures(alcove.PENTAGON_N)
        report.check("psi_commutation", not failures, failures[:10] or None)
        for n in (1, 2, 3, 4):
            failures = alcove.shoelace_failures(n)
            report.check(f"shoelace_n{n}", not failures, failures or None)
            failures = alcove.zigzag_failures(n)
            report.check(f"zigzag_n{n}", not failures, failures or None)
        shapes = alcove.shape_classes()
        report.check("shape_classes", shapes.ok, {"images": shapes.images, "classes": [c.label for c in shapes.classes], "failures": shapes.failures})
        report.merge(self.line_suite(line_n), "lines")
        region, drift = await self.tiling25()
        report.check("tiling25", region.ok, region.failures or None)
        report.check("tiling25_frozen", not drift, drift[:10] or None)
        golden = self.golden_tiling()
        report.check("golden_pair", golden.ok, {"counts": golden.counts, "failures": golden.failures})
        return report
