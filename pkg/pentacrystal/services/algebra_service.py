from __future__ import annotations

import functools
import logging
import math
import random
from fractions import Fraction

import sympy

from pentacrystal.algebra.chordring import (
    X,
    IntPoly,
    QuotientRing,
    RingElem,
    cheb,
    chord_index,
    chord_ring,
    cutoff_ratio,
    cutoff_ratio_function,
    golden_ring,
    irreducible,
)
from pentacrystal.services.report import SuiteReport

logger = logging.getLogger(__name__)


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


def q_identity_failures(max_n: int = 20) -> list[str]:
    """Products Q_n(x) Q_k(-x) against their P expressions, n = 0..max_n."""
    failures = []
    for n in range(max_n + 1):
        q_n, q_prev, q_next = cheb("Q", n), cheb("Q", n - 1), cheb("Q", n + 1)
        if q_n * q_n.reflect() != cheb("P", 2 * n) * _sign(n):
            failures.append(f"(i) n={n}")
        if q_n * q_prev.reflect() != cheb("P", 2 * n - 1) * _sign(n - 1) + _sign(n):
            failures.append(f"(ii) n={n}")
        if q_next * q_prev.reflect() != cheb("P", 2 * n) * _sign(n + 1) + X * _sign(n):
            failures.append(f"(iii) n={n}")
    return failures


def s_identity_failures(max_n: int = 20) -> list[str]:
    """S_n against P_{n-2}, ..., P_{n+1}, n = 1..max_n."""
    failures = []
    for n in range(1, max_n + 1):
        s = cheb("S", n)
        p = functools.partial(cheb, "P")
        if s * p(n - 1) != p(2 * n - 1):
            failures.append(f"(i) n={n}")
        if s * p(n) != p(2 * n) + 1:
            failures.append(f"(ii) n={n}")
        if s * p(n + 1) != p(2 * n + 1) + X:
            failures.append(f"(iii) n={n}")
        if s * p(n - 2) != p(2 * n - 2) - 1:
            failures.append(f"(iv) n={n}")
    return failures


def trig_failures(max_n: int = 12, parts: int = 17, tol: float = 1e-9) -> list[tuple[int, int]]:
    """(n, k) where sin(theta) P_n(2 cos theta) misses sin((n+1) theta) at theta = k pi / parts."""
    failures = []
    for n in range(max_n + 1):
        p = cheb("P", n)
        for k in range(1, parts):
            theta = k * math.pi / parts
            if abs(math.sin(theta) * p(2 * math.cos(theta)) - math.sin((n + 1) * theta)) >= tol:
                failures.append((n, k))
    return failures


def irreducibility_table(max_n: int = 12) -> dict[str, list[dict]]:
    rows_q = [
        {"n": n, "irreducible": irreducible(cheb("Q", n)), "expected": bool(sympy.isprime(2 * n + 1))}
        for n in range(1, max_n + 1)
    ]
    rows_s = [
        {"n": n, "irreducible": irreducible(cheb("S", n)), "expected": n & (n - 1) == 0}
        for n in range(1, max_n + 1)
    ]
    return {"Q": rows_q, "S": rows_s}


def closed_form_failures(max_n: int = 20) -> list[int]:
    """n where the cutoff ratio at y = x^2 disagrees with P_{n-2}(x) / (x P_{n-3}(x))."""
    failures = []
    for n in range(3, max_n + 1):
        ratio = cutoff_ratio_function(n)
        left = ratio.numerator.compose_square() * X * cheb("P", n - 3)
        right = ratio.denominator.compose_square() * cheb("P", n - 2)
        if left != right:
            failures.append(n)
    return failures


def power_view(ring: QuotientRing) -> QuotientRing:
    return ring.with_basis("power", [IntPoly.monomial(k) for k in range(ring.rank)])


def _random_elem(ring: QuotientRing, rng: random.Random, bound: int = 5) -> RingElem:
    return ring.elem(rng.randint(-bound, bound) for _ in range(ring.rank))


def ring_law_failures(moduli: tuple[int, ...] = (5, 7, 8, 9, 12), samples: int = 25, seed: int = 0) -> list[str]:
    rng = random.Random(seed)
    failures = []
    for m in moduli:
        ring = chord_ring(m)
        power = power_view(ring)
        for index in range(samples):
            a, b, c = (_random_elem(ring, rng) for _ in range(3))
            if a * b != b * a:
                failures.append(f"m={m} sample {index}: commutativity")
            if (a * b) * c != a * (b * c):
                failures.append(f"m={m} sample {index}: associativity")
            if a * (b + c) != a * b + a * c:
                failures.append(f"m={m} sample {index}: distributivity")
            if a * 1 != a:
                failures.append(f"m={m} sample {index}: unit")
            if a.in_ring(power).in_ring(ring) != a:
                failures.append(f"m={m} sample {index}: basis change")
            if abs(float(a * b) - float(a) * float(b)) > 1e-6 * (1 + abs(float(a) * float(b))):
                failures.append(f"m={m} sample {index}: evaluation")
    return failures


class AlgebraService:
    """Identity suite for the Chebyshev family and the chord rings."""

    def __init__(self, max_n: int = 20, irreducible_n: int = 12, seed: int = 0):
        self.max_n = max_n
        self.irreducible_n = irreducible_n
        self.seed = seed

    def identities(self) -> SuiteReport:
        report = SuiteReport("cheb", {"max_n": self.max_n, "irreducible_n": self.irreducible_n})
        failures = q_identity_failures(self.max_n)
        report.check("q_products", not failures, failures or None)
        failures = s_identity_failures(self.max_n)
        report.check("s_products", not failures, failures or None)
        trig = trig_failures(min(self.max_n, 12))
        report.check("trigonometric", not trig, trig or None)
        table = irreducibility_table(self.irreducible_n)
        for kind, rows in table.items():
            bad = [row["n"] for row in rows if row["irreducible"] != row["expected"]]
            report.check(f"irreducible_{kind}", not bad, bad or None)
        closed = closed_form_failures(self.max_n)
        report.check("cutoff_closed_form", not closed, closed or None)
        self._cutoff_examples(report)
        logger.info("identity suite: %s failures", len(report.failures))
        return report

    def _cutoff_examples(self, report: SuiteReport) -> None:
        golden = golden_ring()
        g = golden.gen()
        report.check("cutoff_T3", all(cutoff_ratio(3, Fraction(y, 3)) == 1 for y in range(1, 10)))
        report.check("cutoff_T4_at_1", cutoff_ratio(4, 1) == 0)
        report.check("cutoff_T6_at_g2", cutoff_ratio_function(6).vanishes_at(g * g))

    def ring_laws(self, samples: int = 25) -> SuiteReport:
        report = SuiteReport("ring", {"samples": samples, "seed": self.seed})
        golden = golden_ring()
        g = golden.gen()
        report.check("golden_square", g * g == golden.one() + g)
        p1, p2, p3 = (chord_index(7, i) for i in (1, 2, 3))
        report.check("chord_product_m7", p1 * p2 == p3 + p1)
        failures = ring_law_failures(samples=samples, seed=self.seed)
        report.check("laws", not failures, failures[:20] or None)
        return report
