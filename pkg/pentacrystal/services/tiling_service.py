from __future__ import annotations

import logging
from collections import Counter

from pentacrystal.algebra.chordring import chord_index, chord_ring
from pentacrystal.geometry import tiling
from pentacrystal.geometry.tiling import ScaledTriangle, Triangle
from pentacrystal.services.report import SuiteReport

logger = logging.getLogger(__name__)


def shape_counts(decomposition: tiling.Decomposition) -> dict[str, int]:
    """Part counts keyed by sorted angle triple, parity ignored."""
    counts: Counter = Counter()
    for part in decomposition.parts:
        counts["T{" + ",".join(str(a) for a in sorted(part.angles)) + "}"] += 1
    return dict(sorted(counts.items()))


class TilingService:
    def __init__(self, max_m: int = 13, max_t: int = 3, reach_budget: int = 7):
        self.max_m = max_m
        self.max_t = max_t
        self.reach_budget = reach_budget

    def conservation(self, m: int) -> tuple[int, list[dict]]:
        """Verify every family instance for one m; returns (instances checked, failures)."""
        checked, failures = 0, []
        for whole, method, t, corner in tiling.decomposition_instances(m, self.max_t):
            checked += 1
            d = tiling.build_decomposition(whole, method, t, corner)
            problems = tiling.verify_decomposition(d)
            if problems:
                failures.append({"whole": str(whole), "method": method, "t": t, "corner": corner, "problems": problems[:3]})
        logger.debug("m=%s: %s decompositions, %s failing", m, checked, len(failures))
        return checked, failures

    def squares(self, m: int, max_n: int = 3) -> list[tuple[int, tiling.Decomposition]]:
        out = []
        for base in tiling.triangles(m):
            for n in range(1, max_n + 1):
                whole = ScaledTriangle(base, chord_ring(m).from_int(n))
                out.append((n, tiling.build_decomposition(whole, "square", n)))
        return out

    def tiling_suite(self) -> SuiteReport:
        report = SuiteReport("tiling", {"max_m": self.max_m, "max_t": self.max_t})
        total = 0
        for m in range(3, self.max_m + 1):
            checked, failures = self.conservation(m)
            total += checked
            if failures:
                report.check(f"conservation_m{m}", False, failures[:5])
            chords = tiling.chord_product_failures(m)
            if chords:
                report.check(f"chord_products_m{m}", False, chords[:10])
        report.note("instances", total)
        report.check("conservation", not any(name.startswith("conservation_") for name in report.failures))

        nine = tiling.build_decomposition(ScaledTriangle(Triangle.of(9, 3, 3, 3), chord_index(9, 2)), "nine")
        counts = shape_counts(nine)
        nine_ok = counts == {"T{1,3,5}": 3, "T{2,3,4}": 6} and not tiling.verify_decomposition(nine)
        report.check("nine_piece", nine_ok, counts)

        square_failures = []
        for m in (5, 7):
            for n, d in self.squares(m):
                same = all(part.triangle.base == d.whole.triangle.base for part in d.parts)
                if len(d.parts) != n * n or not same or tiling.verify_decomposition(d):
                    square_failures.append(f"{d.whole.triangle} n={n}")
        report.check("square", not square_failures, square_failures[:10] or None)

        relation = tiling.star_relation_m7()
        report.check("star_relation_m7", relation is not None, [list(p.angles) for p in relation] if relation else None)
        return report

    def reach(
        self,
        m: int,
        angles: tuple[int, int, int],
        scale: tuple[int, ...],
        generators: list[tuple[int, int, int]] | None = None,
    ) -> tiling.ReachNode | None:
        target = ScaledTriangle(Triangle(m, angles), tiling.chord_product(m, scale))
        allowed = None if generators is None else [Triangle(m, a) for a in generators]
        return tiling.closure_reach(m, target, self.reach_budget, allowed)
