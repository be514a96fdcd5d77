"""Dictionary between the rank-two crystal over Z[2cos pi/(2n+1)] and the integer crystal of type A_2n."""
from __future__ import annotations

import functools
import logging
from dataclasses import dataclass, field

from pentacrystal.algebra.chordring import QuotientRing, bridge_ring, cheb
from pentacrystal.crystal.engine import BJCrystal, CrystalElt, JSeq, ModuleSpec, cartan_type_a

logger = logging.getLogger(__name__)

ALPHA = "alpha"
BETA = "beta"


@dataclass(frozen=True)
class BasisDict:
    """Identification p_2i = g_i, p_2i+1 = g_{n-i-1} and the position dictionary for a given n."""

    n: int
    ring: QuotientRing = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")
        object.__setattr__(self, "ring", bridge_ring(self.n))

    @property
    def m(self) -> int:
        return 2 * self.n + 1

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(str(k) for k in range(1, 2 * self.n + 1))

    def label_of(self, root: str, comp: int) -> str:
        if not 0 <= comp < self.n:
            raise ValueError(f"component {comp} out of range for n={self.n}")
        if root == ALPHA:
            return str(2 * comp + 1)
        if root == BETA:
            return str(2 * self.n - 2 * comp)
        raise ValueError(f"unknown root {root!r}")

    def operator_of(self, label: str) -> tuple[str, int]:
        k = int(label)
        if not 1 <= k <= 2 * self.n:
            raise ValueError(f"label {label} out of range for A_{2 * self.n}")
        if k % 2:
            return ALPHA, (k - 1) // 2
        return BETA, (2 * self.n - k) // 2

    def chord_coords(self, i: int) -> tuple[int, ...]:
        """Coordinates of p_i in the basis g_0..g_{n-1}."""
        return self.ring.coords_of_poly(cheb("P", i))

    def identification_holds(self) -> bool:
        for i in range(self.n):
            unit = tuple(1 if k == i else 0 for k in range(self.n))
            if self.chord_coords(2 * i) != unit:
                return False
            flipped = tuple(1 if k == self.n - i - 1 else 0 for k in range(self.n))
            if self.chord_coords(2 * i + 1) != flipped:
                return False
        return self.chord_coords(self.n) == self.chord_coords(self.n - 1)

    def classical_pattern(self, descending: bool = False) -> tuple[str, ...]:
        odd = [str(2 * i + 1) for i in range(self.n)]
        even = [str(2 * i + 2) for i in range(self.n)]
        if descending:
            odd.reverse()
            even.reverse()
        return tuple(odd + even)

    def classical_position(self, position: int, root: str, comp: int) -> int:
        if root == ALPHA:
            return (position - 1) * self.n + comp + 1
        return position * self.n - comp


@functools.lru_cache(maxsize=None)
def module_spec(n: int) -> ModuleSpec:
    ring = bridge_ring(n)
    minus_x = -ring.gen()
    return ModuleSpec.rank_two(ring, minus_x, minus_x, (ALPHA, BETA))


@functools.lru_cache(maxsize=None)
def classical_spec(n: int) -> ModuleSpec:
    labels = tuple(str(k) for k in range(1, 2 * n + 1))
    return ModuleSpec.classical(cartan_type_a(2 * n), labels)


def module_crystal(n: int, window: int = 16) -> BJCrystal:
    return BJCrystal(module_spec(n), JSeq((ALPHA, BETA), max(window, 2)))


def classical_crystal(n: int, window: int | None = None, descending: bool = False) -> BJCrystal:
    dictionary = BasisDict(n)
    pattern = dictionary.classical_pattern(descending)
    size = window or max(16, 2 * n * (2 * n + 2))
    return BJCrystal(classical_spec(n), JSeq(pattern, size))


def to_classical(b: CrystalElt, dictionary: BasisDict) -> CrystalElt:
    """Spread each module entry over the n integer slots of its classical block."""
    n = dictionary.n
    if b.support > dictionary.m:
        raise ValueError(f"support {b.support} exceeds {dictionary.m} positions")
    slots = [0] * (dictionary.m * n)
    for position, entry in enumerate(b.entries, start=1):
        root = ALPHA if position % 2 else BETA
        for comp, value in enumerate(entry):
            slots[dictionary.classical_position(position, root, comp) - 1] = value
    return CrystalElt(tuple((v,) for v in slots))


def from_classical(c: CrystalElt, dictionary: BasisDict) -> CrystalElt:
    n = dictionary.n
    if c.support > dictionary.m * n:
        raise ValueError(f"support {c.support} exceeds {dictionary.m * n} positions")
    entries = []
    for position in range(1, dictionary.m + 1):
        root = ALPHA if position % 2 else BETA
        entries.append(tuple(c.entry(dictionary.classical_position(position, root, comp), 1)[0] for comp in range(n)))
    return CrystalElt(tuple(entries))


def classical_weight_to_module(weight: tuple[int, ...], dictionary: BasisDict) -> tuple[int, ...]:
    """Reorder a classical weight (over labels 1..2n) as a module weight over (root, g_i)."""
    n = dictionary.n
    out = [0] * (2 * n)
    for index, value in enumerate(weight):
        root, comp = dictionary.operator_of(str(index + 1))
        out[(0 if root == ALPHA else n) + comp] = value
    return tuple(out)


@dataclass
class IntertwineReport:
    n: int
    depth: int
    module_counts: list[int] = field(default_factory=list)
    classical_counts: list[int] = field(default_factory=list)
    checked: int = 0
    failures: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures and self.module_counts == self.classical_counts

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "depth": self.depth,
            "ok": self.ok,
            "checked": self.checked,
            "module_counts": self.module_counts,
            "classical_counts": self.classical_counts,
            "failures": self.failures[:20],
        }


def block_order_counts(n: int, depth: int) -> tuple[list[int], list[int]]:
    """Layer sizes of the classical closure with ascending and with descending blocks of J."""
    ascending = classical_crystal(n).closure(depth).layer_counts()
    descending = classical_crystal(n, descending=True).closure(depth).layer_counts()
    return ascending, descending


def intertwine_check(n: int, depth: int) -> IntertwineReport:
    """Check to_classical(f b) = f_psi to_classical(b) over the module closure, and compare layer sizes."""
    dictionary = BasisDict(n)
    module = module_crystal(n)
    classical = classical_crystal(n)
    report = IntertwineReport(n, depth)
    module_closure = module.closure(depth)
    classical_closure = classical.closure(depth)
    report.module_counts = module_closure.layer_counts()
    report.classical_counts = classical_closure.layer_counts()
    for layer in module_closure.layers[:-1] if depth > 0 else []:
        for b in layer:
            image = to_classical(b, dictionary)
            for root, comp in module.operators():
                label = dictionary.label_of(root, comp)
                left = to_classical(module.apply_f(b, root, comp), dictionary)
                right = classical.apply_f(image, label, 0)
                report.checked += 1
                if left != right:
                    report.failures.append(
                        {"element": b.to_json(), "operator": [root, comp], "module_side": left.to_json(), "classical_side": right.to_json()}
                    )
    for b in module_closure.elements:
        expected = module.weight(b)
        got = classical_weight_to_module(classical.weight(to_classical(b, dictionary)), dictionary)
        if expected != got:
            report.failures.append({"element": b.to_json(), "weight": list(expected), "classical_weight": list(got)})
    logger.info("intertwining n=%s depth=%s: %s checks, %s failures", n, depth, report.checked, len(report.failures))
    return report
