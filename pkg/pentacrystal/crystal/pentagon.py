"""The pentagonal crystal: B_J(infinity) over Z[g] for the dihedral group of order 10."""
from __future__ import annotations

import functools
import logging
from dataclasses import dataclass
from typing import Iterable

from pentacrystal.algebra.chordring import golden_ring
from pentacrystal.crystal.engine import BJCrystal, CrystalElt, JSeq, ModuleSpec

logger = logging.getLogger(__name__)

ALPHA = "alpha"
BETA = "beta"

# operator names over the basis (1, g)
OPERATORS: dict[str, tuple[str, int]] = {
    "alpha": (ALPHA, 0),
    "g_alpha": (ALPHA, 1),
    "beta": (BETA, 0),
    "g_beta": (BETA, 1),
}

# positive roots over (alpha, g alpha, beta, g beta)
SHORT_ROOTS: tuple[tuple[int, int, int, int], ...] = (
    (1, 0, 0, 0),
    (1, 0, 0, 1),
    (0, 1, 0, 1),
    (0, 1, 1, 0),
    (0, 0, 1, 0),
)
LONG_ROOTS: tuple[tuple[int, int, int, int], ...] = (
    (0, 1, 0, 0),
    (0, 1, 1, 1),
    (1, 1, 1, 1),
    (1, 1, 0, 1),
    (0, 0, 0, 1),
)
POSITIVE_ROOTS = SHORT_ROOTS + LONG_ROOTS

SUPPORT_LIMIT = 5


class NotInCrystalError(ValueError):
    """Raised when an element does not belong to B_J(infinity)."""


@functools.lru_cache(maxsize=None)
def pentagon_spec() -> ModuleSpec:
    ring = golden_ring()
    minus_g = -ring.gen()
    return ModuleSpec.rank_two(ring, minus_g, minus_g, (ALPHA, BETA))


def pentagon_crystal(window: int = 16, swapped: bool = False) -> BJCrystal:
    """B_J with alpha at odd positions, or B_J' with the roles of alpha and beta exchanged."""
    pattern = (BETA, ALPHA) if swapped else (ALPHA, BETA)
    return BJCrystal(pentagon_spec(), JSeq(pattern, window))


def times_g(a: int, b: int) -> tuple[int, int]:
    """g(a + bg) in the basis (1, g)."""
    return b, a + b


@dataclass(frozen=True)
class Prop54Params:
    u: int
    v: int
    s: int
    t: int
    a: int
    a_prime: int

    def inequalities(self) -> list[int]:
        u, v, s, t, a, a2 = self.u, self.v, self.s, self.t, self.a, self.a_prime
        return [
            u,
            v,
            u + t,
            v + s,
            v + t,
            s + t + v,
            v + t + a,
            u + t + a2,
            s + v + t + a,
            s + v + t + a2,
            s + t + v + a + a2,
        ]


def _mn(b: CrystalElt, k: int) -> tuple[int, int]:
    entry = b.entry(k, 2)
    return entry[0], entry[1]


def prop54_params(b: CrystalElt) -> Prop54Params:
    m2, n2 = _mn(b, 2)
    m3, n3 = _mn(b, 3)
    m4, n4 = _mn(b, 4)
    m5, n5 = _mn(b, 5)
    u = n2 - m3
    v = m2 + n2 - n3
    s = n2 - v - m4
    t = m2 + n2 - u - v - n4
    a = m2 - v - t - m5
    a_prime = n2 - u - v - s - t - n5
    return Prop54Params(u, v, s, t, a, a_prime)


def member_prop54(b: CrystalElt) -> tuple[bool, Prop54Params]:
    params = prop54_params(b)
    if b.support > SUPPORT_LIMIT:
        return False, params
    return all(value >= 0 for value in params.inequalities()), params


def e_kill(b: CrystalElt, which: str) -> bool:
    """Closed-form test for the e-operator `which` annihilating b."""
    ok, p = member_prop54(b)
    if not ok:
        raise NotInCrystalError(f"{b.entries} fails the membership inequalities")
    m1, n1 = _mn(b, 1)
    m5, n5 = _mn(b, 5)
    if which == "alpha":
        return p.a >= 0 and p.a + p.u - m1 >= 0 and m5 == 0
    if which == "g_alpha":
        return p.a_prime >= 0 and p.a_prime + p.v - n1 >= 0 and n5 == 0
    if which == "beta":
        return p.s >= 0 and p.u + p.t + p.a_prime == 0
    if which == "g_beta":
        return p.t >= 0 and p.a + p.a_prime + p.s + p.t + p.v == 0
    raise ValueError(f"unknown operator {which!r}; expected one of {sorted(OPERATORS)}")


@dataclass(frozen=True)
class OperatorWord:
    """Blocks (root, (m, n)) from the outermost F inward, and the f-steps in application order."""

    blocks: tuple[tuple[str, tuple[int, int]], ...]
    steps: tuple[tuple[str, int], ...]

    def is_empty(self) -> bool:
        return not self.steps

    def __str__(self) -> str:
        parts = [f"F_{root}^({m},{n})" for root, (m, n) in self.blocks if m or n]
        return " ".join(parts) if parts else "1"


def _strip(crystal: BJCrystal, b: CrystalElt, root: str, comp: int, limit: int | None = None) -> tuple[CrystalElt, int]:
    count = 0
    while limit is None or count < limit:
        lowered = crystal.apply_e(b, root, comp)
        if lowered is None:
            break
        b, count = lowered, count + 1
    return b, count


def killed_by(crystal: BJCrystal, b: CrystalElt, root: str) -> bool:
    """E_root b = 0: both components of `root` annihilate b."""
    return all(crystal.apply_e(b, root, comp) is None for comp in (0, 1))


def _descend(crystal: BJCrystal, b: CrystalElt, roots: tuple[str, ...]) -> list[tuple[str, tuple[int, int]]] | None:
    if not roots:
        return [] if b.is_highest() else None
    root = roots[0]
    _, most = _strip(crystal, b, root, 0)
    for m in range(most + 1):
        partial, _ = _strip(crystal, b, root, 0, m)
        below, n = _strip(crystal, partial, root, 1)
        if not killed_by(crystal, below, root):
            continue
        rest = _descend(crystal, below, roots[1:])
        if rest is not None:
            return [(root, (m, n)), *rest]
    return None


def block_steps(blocks: Iterable[tuple[str, tuple[int, int]]]) -> list[tuple[str, int]]:
    """f-steps of F^(m_1) ... F^(m_5) b_inf: innermost block first, g-component before the unit one."""
    steps: list[tuple[str, int]] = []
    for root, (m, n) in reversed(list(blocks)):
        steps.extend([(root, 1)] * n)
        steps.extend([(root, 0)] * m)
    return steps


def is_normal(blocks: Iterable[tuple[str, tuple[int, int]]], crystal: BJCrystal | None = None) -> bool:
    """Every block acts on an element its own E annihilates."""
    crystal = crystal or pentagon_crystal()
    current = crystal.highest
    for root, (m, n) in reversed(list(blocks)):
        if not killed_by(crystal, current, root):
            return False
        current = crystal.apply_word([(root, 1)] * n + [(root, 0)] * m, current)
    return True


def normal_form(b: CrystalElt, crystal: BJCrystal | None = None) -> OperatorWord:
    """The word F^(m_1) F^(m_2) ... F^(m_5) in normal form with b = F^(m_1) ... F^(m_5) b_inf."""
    crystal = crystal or pentagon_crystal()
    ok, _ = member_prop54(b)
    if not ok:
        raise NotInCrystalError(f"{b.entries} is not in B_J(infinity)")
    roots = tuple(crystal.jseq.root_at(k) for k in range(1, SUPPORT_LIMIT + 1))
    blocks = _descend(crystal, b, roots)
    if blocks is None:
        raise NotInCrystalError(f"e-descent from {b.entries} does not reach the highest element in {len(roots)} blocks")
    word = OperatorWord(tuple(blocks), tuple(block_steps(blocks)))
    if not is_normal(word.blocks, crystal) or crystal.apply_word(word.steps) != b:
        raise NotInCrystalError(f"word {word} found for {b.entries} is not a normal form of it")
    return word


def apply_word(word: OperatorWord, crystal: BJCrystal | None = None) -> CrystalElt:
    crystal = crystal or pentagon_crystal()
    return crystal.apply_word(word.steps)


def transport(b: CrystalElt, source: BJCrystal | None = None, target: BJCrystal | None = None) -> CrystalElt:
    """Image of b under the isomorphism B_J -> B_J' fixing the highest element."""
    source = source or pentagon_crystal()
    target = target or pentagon_crystal(swapped=True)
    ok, _ = member_prop54(b)
    if not ok:
        raise NotInCrystalError(f"{b.entries} is not in B_J(infinity)")
    return target.apply_word(source.f_word(b))


def transport_inverse(b: CrystalElt, source: BJCrystal | None = None, target: BJCrystal | None = None) -> CrystalElt:
    """Image of b in B_J' back in B_J."""
    source = source or pentagon_crystal(swapped=True)
    target = target or pentagon_crystal()
    return target.apply_word(source.f_word(b))


def weight_vector(crystal: BJCrystal, b: CrystalElt) -> tuple[int, int, int, int]:
    """Positive weight coordinates over (alpha, g alpha, beta, g beta)."""
    return tuple(-v for v in crystal.weight(b))  # type: ignore[return-value]


@functools.lru_cache(maxsize=None)
def _partitions(weight: tuple[int, int, int, int], start: int) -> int:
    if not any(weight):
        return 1
    total = 0
    for index in range(start, len(POSITIVE_ROOTS)):
        root = POSITIVE_ROOTS[index]
        rest = tuple(w - r for w, r in zip(weight, root))
        if min(rest) < 0:
            continue
        total += _partitions(rest, index)
    return total


def char_coeff(weight: Iterable[int]) -> int:
    """Number of multisets of positive roots summing to the weight."""
    weight = tuple(int(w) for w in weight)
    if len(weight) != 4:
        raise ValueError(f"weight must have 4 coordinates, got {weight}")
    if min(weight) < 0:
        return 0
    return _partitions(weight, 0)


def g_multiple(root: tuple[int, int, int, int]) -> tuple[int, int, int, int]:
    a0, a1 = times_g(root[0], root[1])
    b0, b1 = times_g(root[2], root[3])
    return a0, a1, b0, b1
