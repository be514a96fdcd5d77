"""Module-valued Kashiwara crystals B_J(infinity).

An element is a finite sequence of elementary-crystal entries, position 1 being
the rightmost tensor factor. Each entry is an s-tuple of naturals, the
coordinates of an element of the coefficient module in its declared basis.
"""
from __future__ import annotations

import json
import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Protocol, Sequence

from pentacrystal.algebra.chordring import QuotientRing, RingElem, integer_ring

logger = logging.getLogger(__name__)

EXPORT_SCHEMA_VERSION = 1
DEFAULT_WINDOW = 16

Entry = tuple[int, ...]


class WindowOverflowError(RuntimeError):
    """Raised when an insertion would fall outside the truncation window of J."""


@dataclass(frozen=True)
class ModuleSpec:
    """Coefficient module, simple roots and the off-diagonal Cartan values gamma-check(delta)."""

    ring: QuotientRing
    roots: tuple[str, ...]
    cartan: Mapping[tuple[str, str], RingElem]
    _coupling: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        one = self.ring.one()
        if one.coords != tuple(1 if i == 0 else 0 for i in range(self.ring.rank)):
            raise ValueError("first basis element of the coefficient module must be 1")
        coupling: dict[tuple[str, str], tuple[tuple[int, ...], ...]] = {}
        for gamma in self.roots:
            for delta in self.roots:
                if gamma == delta:
                    value = self.ring.from_int(2)
                else:
                    value = self.cartan.get((gamma, delta), self.ring.zero())
                coupling[(gamma, delta)] = self.ring.mult_matrix(value)
        self._coupling.update(coupling)

    def __hash__(self) -> int:
        return hash((self.ring, self.roots))

    @property
    def s(self) -> int:
        return self.ring.rank

    @property
    def labels(self) -> tuple[str, ...]:
        return self.ring.labels

    def coupling(self, gamma: str, delta: str) -> tuple[tuple[int, ...], ...]:
        """Integer matrix of multiplication by gamma-check(delta)."""
        try:
            return self._coupling[(gamma, delta)]
        except KeyError:
            raise ValueError(f"unknown root pair ({gamma}, {delta})") from None

    def check_root(self, root: str) -> None:
        if root not in self.roots:
            raise ValueError(f"unknown root label {root!r}; expected one of {self.roots}")

    @classmethod
    def classical(cls, cartan: Sequence[Sequence[int]], labels: Sequence[str] | None = None) -> ModuleSpec:
        """Integer crystal (s = 1) for a generalized Cartan matrix."""
        size = len(cartan)
        labels = tuple(labels) if labels else tuple(str(i + 1) for i in range(size))
        ring = integer_ring()
        values = {
            (labels[i], labels[j]): ring.from_int(cartan[i][j])
            for i in range(size)
            for j in range(size)
            if i != j
        }
        return cls(ring, labels, values)

    @classmethod
    def rank_two(cls, ring: QuotientRing, a_ab: RingElem, a_ba: RingElem, roots: tuple[str, str] = ("alpha", "beta")) -> ModuleSpec:
        first, second = roots
        return cls(ring, roots, {(first, second): a_ab, (second, first): a_ba})


def cartan_type_a(k: int) -> list[list[int]]:
    return [[2 if i == j else -1 if abs(i - j) == 1 else 0 for j in range(k)] for i in range(k)]


def cartan_type_b(k: int) -> list[list[int]]:
    """Type B_k with the short root last."""
    matrix = cartan_type_a(k)
    if k >= 2:
        matrix[k - 1][k - 2] = -2
    return matrix


@dataclass(frozen=True)
class JSeq:
    """Periodic sequence of simple roots read from position 1 upward, truncated to a window."""

    pattern: tuple[str, ...]
    window: int = DEFAULT_WINDOW

    def __post_init__(self) -> None:
        if not self.pattern:
            raise ValueError("J needs at least one root")
        if self.window < len(self.pattern):
            raise ValueError(f"window {self.window} shorter than the period {len(self.pattern)}")

    @property
    def period(self) -> int:
        return len(self.pattern)

    def root_at(self, position: int) -> str:
        if position < 1:
            raise ValueError(f"positions start at 1, got {position}")
        return self.pattern[(position - 1) % self.period]

    def positions_of(self, root: str, upto: int) -> list[int]:
        return [k for k in range(1, upto + 1) if self.root_at(k) == root]

    def grown(self) -> JSeq:
        return JSeq(self.pattern, self.window * 2)


@dataclass(frozen=True)
class CrystalElt:
    entries: tuple[Entry, ...]
    jseq: JSeq | None = field(default=None, compare=False, hash=False)

    def __post_init__(self) -> None:
        entries = tuple(tuple(int(v) for v in entry) for entry in self.entries)
        if any(v < 0 for entry in entries for v in entry):
            raise ValueError(f"crystal entries must be nonnegative, got {entries}")
        end = len(entries)
        while end and not any(entries[end - 1]):
            end -= 1
        object.__setattr__(self, "entries", entries[:end])

    @property
    def support(self) -> int:
        return len(self.entries)

    @property
    def height(self) -> int:
        return sum(sum(entry) for entry in self.entries)

    def entry(self, position: int, s: int) -> Entry:
        if 1 <= position <= len(self.entries):
            return self.entries[position - 1]
        return (0,) * s

    def is_highest(self) -> bool:
        return not self.entries

    def to_json(self) -> list[list[int]]:
        return [list(entry) for entry in self.entries]


def _matvec(matrix: Sequence[Sequence[int]], vector: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(row[k] * vector[k] for k in range(len(vector))) for row in matrix)


class CrystalLike(Protocol):
    def epsilon(self, b, root: str, comp: int) -> float: ...

    def apply_e(self, b, root: str, comp: int): ...


@dataclass
class ClosureResult:
    layers: list[set[CrystalElt]]
    weights: Counter

    @property
    def elements(self) -> set[CrystalElt]:
        out: set[CrystalElt] = set()
        for layer in self.layers:
            out |= layer
        return out

    def layer_counts(self) -> list[int]:
        return [len(layer) for layer in self.layers]

    def to_json(self, crystal: BJCrystal) -> str:
        rows = [
            {"entries": b.to_json(), "weight": list(crystal.weight(b))}
            for layer in self.layers
            for b in sorted(layer, key=lambda elt: elt.entries)
        ]
        return json.dumps({"schema": EXPORT_SCHEMA_VERSION, "roots": list(crystal.spec.roots), "elements": rows})


class BJCrystal:
    """B_J(infinity) over a ModuleSpec, truncated to the window of J."""

    def __init__(self, spec: ModuleSpec, jseq: JSeq, auto_grow: bool = True):
        for root in jseq.pattern:
            spec.check_root(root)
        self.spec = spec
        self.jseq = jseq
        self.auto_grow = auto_grow

    @property
    def highest(self) -> CrystalElt:
        return CrystalElt((), self.jseq)

    def _ensure_window(self, b: CrystalElt) -> None:
        while b.support + self.jseq.period > self.jseq.window:
            if not self.auto_grow:
                raise WindowOverflowError(
                    f"support {b.support} plus period {self.jseq.period} exceeds window {self.jseq.window}"
                )
            self.jseq = self.jseq.grown()
            logger.info("window of J grown to %s positions", self.jseq.window)

    def kashiwara_components(self, b: CrystalElt, root: str) -> dict[int, Entry]:
        """r-values of `root` at every position of J carrying it, up to the first position above the support."""
        self.spec.check_root(root)
        self._ensure_window(b)
        s = self.spec.s
        top = b.support + self.jseq.period
        running = [0] * s
        values: dict[int, Entry] = {}
        for position in range(top, 0, -1):
            carried = self.jseq.root_at(position)
            entry = b.entry(position, s)
            if carried == root:
                values[position] = tuple(entry[i] + running[i] for i in range(s))
            if any(entry):
                shift = _matvec(self.spec.coupling(root, carried), entry)
                running = [running[i] + shift[i] for i in range(s)]
        return dict(sorted(values.items()))

    def _component_values(self, b: CrystalElt, root: str, comp: int) -> list[tuple[int, int]]:
        if not 0 <= comp < self.spec.s:
            raise ValueError(f"component {comp} out of range for rank {self.spec.s}")
        values = self.kashiwara_components(b, root)
        first_dummy = min(k for k in values if k > b.support)
        return [(k, r[comp]) for k, r in values.items() if k <= first_dummy]

    def insertion_position(self, b: CrystalElt, root: str, comp: int) -> int:
        candidates = self._component_values(b, root, comp)
        top = max(r for _, r in candidates)
        return min(k for k, r in candidates if r == top)

    def apply_f(self, b: CrystalElt, root: str, comp: int) -> CrystalElt:
        position = self.insertion_position(b, root, comp)
        s = self.spec.s
        entries = [b.entry(k, s) for k in range(1, max(position, b.support) + 1)]
        bumped = list(entries[position - 1])
        bumped[comp] += 1
        entries[position - 1] = tuple(bumped)
        result = CrystalElt(tuple(entries), self.jseq)
        self._ensure_window(result)
        return result

    def apply_e(self, b: CrystalElt, root: str, comp: int) -> CrystalElt | None:
        candidates = self._component_values(b, root, comp)
        top = max(r for _, r in candidates)
        if top <= 0:
            return None
        position = max(k for k, r in candidates if r == top)
        s = self.spec.s
        entry = b.entry(position, s)
        if entry[comp] == 0:
            return None
        entries = [b.entry(k, s) for k in range(1, b.support + 1)]
        lowered = list(entry)
        lowered[comp] -= 1
        entries[position - 1] = tuple(lowered)
        return CrystalElt(tuple(entries), self.jseq)

    def epsilon(self, b: CrystalElt, root: str, comp: int) -> int:
        return max(0, max(r for _, r in self._component_values(b, root, comp)))

    def pairing(self, b: CrystalElt, root: str) -> Entry:
        """Coordinates of <wt(b), root-check> in the module basis."""
        self.spec.check_root(root)
        s = self.spec.s
        total = [0] * s
        for position, entry in enumerate(b.entries, start=1):
            shift = _matvec(self.spec.coupling(root, self.jseq.root_at(position)), entry)
            total = [total[i] - shift[i] for i in range(s)]
        return tuple(total)

    def phi(self, b: CrystalElt, root: str, comp: int) -> int:
        return self.epsilon(b, root, comp) + self.pairing(b, root)[comp]

    def weight(self, b: CrystalElt) -> tuple[int, ...]:
        """Coefficients over (root, basis element), roots outermost; all nonpositive."""
        s = self.spec.s
        index = {root: i for i, root in enumerate(self.spec.roots)}
        out = [0] * (len(self.spec.roots) * s)
        for position, entry in enumerate(b.entries, start=1):
            base = index[self.jseq.root_at(position)] * s
            for i, v in enumerate(entry):
                out[base + i] -= v
        return tuple(out)

    def operators(self) -> list[tuple[str, int]]:
        return [(root, comp) for root in self.spec.roots for comp in range(self.spec.s)]

    def closure(self, depth: int, schedule: str = "forward") -> ClosureResult:
        """All elements reachable from the highest element by at most `depth` f-operators, layered by height."""
        if depth < 0:
            raise ValueError(f"depth must be nonnegative, got {depth}")
        ops = self.operators()
        if schedule == "reverse":
            ops = list(reversed(ops))
        elif schedule != "forward":
            raise ValueError(f"unknown schedule {schedule!r}")
        layers: list[set[CrystalElt]] = [{self.highest}]
        for level in range(depth):
            frontier = layers[-1]
            ordered = sorted(frontier, key=lambda elt: elt.entries, reverse=(schedule == "reverse"))
            layers.append({self.apply_f(b, root, comp) for b in ordered for root, comp in ops})
            logger.debug("closure layer %s has %s elements", level + 1, len(layers[-1]))
        weights: Counter = Counter(self.weight(b) for layer in layers for b in layer)
        logger.info("closure to depth %s: %s elements", depth, sum(len(layer) for layer in layers))
        return ClosureResult(layers, weights)

    def f_word(self, b: CrystalElt) -> list[tuple[str, int]]:
        """Some word of f-operators carrying the highest element to b, found by e-descent."""
        word: list[tuple[str, int]] = []
        current = b
        while not current.is_highest():
            for root, comp in self.operators():
                lowered = self.apply_e(current, root, comp)
                if lowered is not None:
                    word.append((root, comp))
                    current = lowered
                    break
            else:
                raise ValueError(f"{b.entries} is not reachable from the highest element")
        word.reverse()
        return word

    def apply_word(self, word: Iterable[tuple[str, int]], start: CrystalElt | None = None) -> CrystalElt:
        current = self.highest if start is None else start
        for root, comp in word:
            current = self.apply_f(current, root, comp)
        return current


@dataclass(frozen=True)
class ElementaryCrystal:
    """B_root = {b_root(m) : m in N^s} with weight -(g.m) root."""

    spec: ModuleSpec
    root: str

    def epsilon(self, b: Entry, root: str, comp: int) -> float:
        if root != self.root:
            return -math.inf
        return b[comp]

    def apply_e(self, b: Entry, root: str, comp: int) -> Entry | None:
        if root != self.root or b[comp] == 0:
            return None
        return tuple(v - 1 if i == comp else v for i, v in enumerate(b))

    def apply_f(self, b: Entry, root: str, comp: int) -> Entry | None:
        if root != self.root:
            return None
        return tuple(v + 1 if i == comp else v for i, v in enumerate(b))


def upper_normal(crystal: CrystalLike, elements: Iterable, root: str, comp: int, max_steps: int = 10_000) -> bool:
    """True when epsilon counts exactly the e-applications before the null element, for every element."""
    for b in elements:
        expected = crystal.epsilon(b, root, comp)
        steps = 0
        current = crystal.apply_e(b, root, comp)
        while current is not None:
            steps += 1
            if steps > max_steps:
                logger.warning("e-chain exceeded %s steps", max_steps)
                return False
            current = crystal.apply_e(current, root, comp)
        if steps != expected:
            return False
    return True
