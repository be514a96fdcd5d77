from __future__ import annotations

import itertools
import logging
from fractions import Fraction
from typing import Iterator

from pentacrystal.algebra.chordring import cutoff_ratio
from pentacrystal.crystal import bridge, pentagon
from pentacrystal.crystal.engine import BJCrystal, CrystalElt, JSeq, ModuleSpec, upper_normal
from pentacrystal.services.report import SuiteReport

logger = logging.getLogger(__name__)

# Cartan matrices of the finite rank-two types with y = a a' a positive integer.
RANK_TWO_TYPES: dict[str, list[list[int]]] = {
    "A2": [[2, -1], [-1, 2]],
    "B2": [[2, -2], [-1, 2]],
    "G2": [[2, -3], [-1, 2]],
}


def _compositions(total: int, slots: int) -> Iterator[tuple[int, ...]]:
    if slots == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, slots - 1):
            yield (first, *rest)


def pentagon_candidates(max_height: int) -> Iterator[CrystalElt]:
    """Every element with support at most five and total degree at most max_height."""
    slots = 2 * pentagon.SUPPORT_LIMIT
    for height in range(max_height + 1):
        for flat in _compositions(height, slots):
            yield CrystalElt(tuple(zip(flat[0::2], flat[1::2])))


def cutoff_position(cartan: list[list[int]]) -> int:
    """First n with T_n(y) = 0 for y = a a'; entries vanish from position n on."""
    y = cartan[0][1] * cartan[1][0]
    for n in range(4, 32):
        if cutoff_ratio(n, Fraction(y)) == 0:
            return n
    raise ValueError(f"no cutoff below 32 for y={y}")


class CrystalService:
    """Invariant suites of the pentagonal crystal, the A_2n bridge and the finite rank-two cutoffs."""

    def __init__(self, window: int = 16):
        self.window = window

    def pentagon_suite(self, depth: int) -> SuiteReport:
        report = SuiteReport("pentagon", {"depth": depth})
        crystal = pentagon.pentagon_crystal(self.window)
        closure = crystal.closure(depth)
        elements = closure.elements
        report.note("layers", closure.layer_counts())

        inequality_set = {b for b in pentagon_candidates(depth) if pentagon.member_prop54(b)[0]}
        missing = sorted(b.entries for b in elements - inequality_set)
        extra = sorted(b.entries for b in inequality_set - elements)
        report.check("membership", not missing and not extra, {"closure_only": missing[:10], "inequality_only": extra[:10]} if missing or extra else None)

        members = elements & inequality_set
        nullity = []
        for b in sorted(members, key=lambda elt: elt.entries):
            for which, (root, comp) in pentagon.OPERATORS.items():
                if pentagon.e_kill(b, which) != (crystal.apply_e(b, root, comp) is None):
                    nullity.append({"element": b.to_json(), "operator": which})
        report.check("e_annihilation", not nullity, nullity[:10] or None)

        characters = []
        for weight in itertools.chain.from_iterable(_compositions(h, 4) for h in range(depth + 1)):
            count = closure.weights.get(tuple(-w for w in weight), 0)
            expected = pentagon.char_coeff(weight)
            if count != expected:
                characters.append({"weight": list(weight), "layer": count, "partitions": expected})
        report.check("character", not characters, characters[:10] or None)

        report.merge(self.transport_suite(min(depth, 8), crystal), "transport")

        words = []
        for b in sorted(members, key=lambda elt: elt.entries):
            try:
                word = pentagon.normal_form(b, crystal)
            except pentagon.NotInCrystalError as exc:
                words.append({"element": b.to_json(), "error": str(exc)})
                continue
            if pentagon.apply_word(word, crystal) != b:
                words.append({"element": b.to_json(), "word": str(word)})
        report.check("normal_form", not words, words[:10] or None)

        normal = all(upper_normal(crystal, elements, root, comp) for root, comp in crystal.operators())
        report.check("upper_normal", normal)
        logger.info("pentagon suite at depth %s: %s elements, %s failures", depth, len(elements), len(report.failures))
        return report

    def transport_suite(self, depth: int, source: BJCrystal | None = None) -> SuiteReport:
        report = SuiteReport("transport", {"depth": depth})
        source = source or pentagon.pentagon_crystal(self.window)
        target = pentagon.pentagon_crystal(self.window, swapped=True)
        source_layers = source.closure(depth).layers
        target_layers = target.closure(depth).layers
        weight_failures, inverse_failures, layer_failures = [], [], []
        for height, (layer, expected) in enumerate(zip(source_layers, target_layers)):
            images = set()
            for b in layer:
                image = pentagon.transport(b, source, target)
                images.add(image)
                if source.weight(b) != target.weight(image):
                    weight_failures.append(b.to_json())
                if pentagon.transport_inverse(image, target, source) != b:
                    inverse_failures.append(b.to_json())
            if images != expected:
                layer_failures.append(height)
        report.check("weights", not weight_failures, weight_failures[:10] or None)
        report.check("inverse", not inverse_failures, inverse_failures[:10] or None)
        report.check("bijection", not layer_failures, layer_failures or None)
        return report

    def bridge_suite(self, n: int, depth: int) -> SuiteReport:
        report = SuiteReport("bridge", {"n": n, "depth": depth})
        report.check("identification", bridge.BasisDict(n).identification_holds())
        intertwine = bridge.intertwine_check(n, depth)
        report.check("intertwining", intertwine.ok, intertwine.as_dict())
        ascending, descending = bridge.block_order_counts(n, depth)
        report.check("block_order", ascending == descending, {"ascending": ascending, "descending": descending})
        return report

    def cutoff_suite(self, depth: int) -> SuiteReport:
        report = SuiteReport("cutoff", {"depth": depth})
        for name, cartan in RANK_TWO_TYPES.items():
            crystal = BJCrystal(ModuleSpec.classical(cartan), JSeq(("1", "2"), self.window))
            limit = cutoff_position(cartan) - 1
            support = max(b.support for b in crystal.closure(depth).elements)
            report.check(name, support <= limit, {"max_support": support, "limit": limit})
        return report
