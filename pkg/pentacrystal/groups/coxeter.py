"""Dihedral and augmented Weyl groups as integer matrices.

For odd m = 2n+1 the lattice is M alpha + M beta with M = Z[g] on the basis
g_i = P_2i(g); coordinates are (a_0..a_{n-1}, b_0..b_{n-1}). For even m the
two halves live in the rings M_alpha and M_beta of the even case.
"""
from __future__ import annotations

import functools
import logging
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
import sympy

from pentacrystal.algebra.chordring import IntPoly, QuotientRing, bridge_ring, chord_ring, even_ring

logger = logging.getLogger(__name__)

DEFAULT_GROUP_CAP = 100_000

Vector = tuple[int, ...]


class GroupCapExceededError(RuntimeError):
    """Raised when a group closure grows beyond the configured cap."""


class LinMap:
    """Square integer matrix acting on coordinate vectors."""

    __slots__ = ("matrix", "name", "_key")

    def __init__(self, matrix: Sequence[Sequence[int]] | np.ndarray, name: str = ""):
        array = np.array(matrix, dtype=np.int64)
        if array.ndim != 2 or array.shape[0] != array.shape[1]:
            raise ValueError(f"LinMap needs a square matrix, got shape {array.shape}")
        array.setflags(write=False)
        self.matrix = array
        self.name = name
        self._key = array.tobytes()

    @classmethod
    def identity(cls, size: int) -> LinMap:
        return cls(np.eye(size, dtype=np.int64), "1")

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    @property
    def key(self) -> bytes:
        return self._key

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LinMap) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __matmul__(self, other: LinMap) -> LinMap:
        name = f"{self.name}*{other.name}" if self.name and other.name else ""
        return LinMap(self.matrix @ other.matrix, name)

    def __call__(self, vector: Sequence[int]) -> Vector:
        return tuple(int(v) for v in self.matrix @ np.array(vector, dtype=np.int64))

    def __pow__(self, exponent: int) -> LinMap:
        result = LinMap.identity(self.size)
        for _ in range(exponent):
            result = result @ self
        return result

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.matrix, np.eye(self.size, dtype=np.int64)))

    def order(self, limit: int = 64) -> int | None:
        current = self
        for k in range(1, limit + 1):
            if current.is_identity():
                return k
            current = current @ self
        return None

    def tolist(self) -> list[list[int]]:
        return self.matrix.tolist()

    def __repr__(self) -> str:
        return f"LinMap({self.name or self.matrix.tolist()})"


def group_closure(gens: Sequence[LinMap], cap: int = DEFAULT_GROUP_CAP) -> tuple[int, list[LinMap]]:
    """Breadth-first closure of the generated group; elements are keyed by their matrices."""
    if not gens:
        raise ValueError("group closure needs at least one generator")
    identity = LinMap.identity(gens[0].size)
    seen = {identity.key: identity}
    queue = deque([identity])
    while queue:
        current = queue.popleft()
        for gen in gens:
            product = LinMap(current.matrix @ gen.matrix)
            if product.key in seen:
                continue
            seen[product.key] = product
            if len(seen) > cap:
                raise GroupCapExceededError(f"group closure exceeded cap {cap}")
            queue.append(product)
    logger.debug("group closure: %s elements from %s generators", len(seen), len(gens))
    return len(seen), list(seen.values())


def _reflection(size: int, row: int, functional: Sequence[int], name: str) -> LinMap:
    """lambda -> lambda - f(lambda) e_row."""
    matrix = np.eye(size, dtype=np.int64)
    matrix[row, :] -= np.array(functional, dtype=np.int64)
    return LinMap(matrix, name)


def _columns_to_matrix(columns: Sequence[Sequence[int]]) -> np.ndarray:
    return np.array(columns, dtype=np.int64).T if columns else np.zeros((0, 0), dtype=np.int64)


@dataclass(frozen=True)
class LatticeFrame:
    """Rings carrying the alpha and beta halves and the cross-coupling matrices of the Cartan values."""

    m: int
    alpha_ring: QuotientRing
    beta_ring: QuotientRing
    into_alpha: np.ndarray = field(compare=False, repr=False)
    into_beta: np.ndarray = field(compare=False, repr=False)

    @property
    def size(self) -> int:
        return self.alpha_ring.rank + self.beta_ring.rank

    @property
    def n_alpha(self) -> int:
        return self.alpha_ring.rank

    @property
    def n_beta(self) -> int:
        return self.beta_ring.rank


@functools.lru_cache(maxsize=None)
def lattice_frame(m: int) -> LatticeFrame:
    """Coordinate frame of M_alpha + M_beta for the augmented Weyl group of I_2(m)."""
    if m < 3:
        raise ValueError(f"m must be at least 3, got {m}")
    if m % 2:
        ring = bridge_ring((m - 1) // 2)
        g = ring.mult_matrix(ring.gen())
        matrix = np.array(g, dtype=np.int64)
        return LatticeFrame(m, ring, ring, matrix, matrix)
    alpha = even_ring(m, "alpha")
    beta = even_ring(m, "beta")
    y = IntPoly.of(0, 1)
    into_alpha = _columns_to_matrix([alpha.coords_of_poly(y * b) for b in beta.basis])
    into_beta = _columns_to_matrix([beta.coords_of_poly(a) for a in alpha.basis])
    return LatticeFrame(m, alpha, beta, into_alpha, into_beta)


@functools.lru_cache(maxsize=None)
def _aug_gens(m: int) -> tuple[LinMap, ...]:
    frame = lattice_frame(m)
    na, nb, size = frame.n_alpha, frame.n_beta, frame.size
    gens: list[LinMap] = []
    for i in range(na):
        functional = np.zeros(size, dtype=np.int64)
        functional[i] = 2
        functional[na:] = -frame.into_alpha[i, :]
        gens.append(_reflection(size, i, functional, f"s_alpha_{i + 1}"))
    for i in range(nb):
        functional = np.zeros(size, dtype=np.int64)
        functional[na + i] = 2
        functional[:na] = -frame.into_beta[i, :]
        gens.append(_reflection(size, na + i, functional, f"s_beta_{i + 1}"))
    return tuple(gens)


def aug_gens(m: int) -> list[LinMap]:
    """s_alpha_1.., s_beta_1.. acting on the coordinates of the frame of m."""
    return list(_aug_gens(m))


def gen_by_name(m: int) -> dict[str, LinMap]:
    return {gen.name: gen for gen in _aug_gens(m)}


def simple_reflection(m: int, root: str) -> LinMap:
    """s_alpha or s_beta as the product of its augmented components."""
    if root not in ("alpha", "beta"):
        raise ValueError(f"unknown root {root!r}")
    parts = [gen for gen in _aug_gens(m) if gen.name.startswith(f"s_{root}_")]
    result = LinMap.identity(lattice_frame(m).size)
    for part in parts:
        result = result @ part
    result.name = f"s_{root}"
    return result


def target_type(m: int) -> tuple[str, int]:
    if m % 2:
        return "A", m - 1
    return "B", m // 2


def ordered_gens(m: int) -> list[LinMap]:
    """Augmented generators listed as the images of s_1..s_k of the target Coxeter system."""
    by_name = gen_by_name(m)
    if m % 2:
        n = (m - 1) // 2
        order = []
        for label in range(1, 2 * n + 1):
            if label % 2:
                order.append(f"s_alpha_{(label - 1) // 2 + 1}")
            else:
                order.append(f"s_beta_{(2 * n - label) // 2 + 1}")
    elif m % 4 == 0:
        n = m // 4
        order = [name for i in range(1, n + 1) for name in (f"s_beta_{i}", f"s_alpha_{i}")]
    else:
        n = (m - 2) // 4
        order = [name for i in range(1, n + 1) for name in (f"s_alpha_{i}", f"s_beta_{i}")]
        order.append(f"s_alpha_{n + 1}")
    return [by_name[name] for name in order]


def coxeter_matrix(kind: str, k: int) -> list[list[int]]:
    if kind not in ("A", "B"):
        raise ValueError(f"unsupported Coxeter type {kind!r}")
    matrix = [[1 if i == j else 3 if abs(i - j) == 1 else 2 for j in range(k)] for i in range(k)]
    if kind == "B" and k >= 2:
        matrix[k - 1][k - 2] = matrix[k - 2][k - 1] = 4
    return matrix


def weyl_order(kind: str, k: int) -> int:
    if kind == "A":
        return math.factorial(k + 1)
    if kind == "B":
        return 2**k * math.factorial(k)
    raise ValueError(f"unsupported Coxeter type {kind!r}")


def cartan_matrix(kind: str, k: int) -> list[list[int]]:
    """C[l][k] = alpha_l-check(alpha_k); for B_k the last root is short."""
    matrix = [[2 if i == j else -1 if abs(i - j) == 1 else 0 for j in range(k)] for i in range(k)]
    if kind == "B" and k >= 2:
        matrix[k - 1][k - 2] = -2
    return matrix


@dataclass
class CoxeterReport:
    kind: str
    rank: int
    order: int
    expected_order: int
    relation_failures: list[tuple[int, int, int | None, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.relation_failures and self.order == self.expected_order

    def as_dict(self) -> dict:
        return {
            "type": f"{self.kind}_{self.rank}",
            "order": self.order,
            "expected_order": self.expected_order,
            "relation_failures": [list(f) for f in self.relation_failures],
            "ok": self.ok,
        }


def coxeter_report(gens: Sequence[LinMap], target: str, cap: int = DEFAULT_GROUP_CAP) -> CoxeterReport:
    kind, rank = target[0], int(target.split("_", 1)[1] if "_" in target else target[1:])
    if len(gens) != rank:
        raise ValueError(f"{target} needs {rank} generators, got {len(gens)}")
    matrix = coxeter_matrix(kind, rank)
    failures = []
    for i in range(rank):
        for j in range(rank):
            expected = matrix[i][j]
            got = (gens[i] @ gens[j]).order(limit=2 * expected + 2)
            if got != expected:
                failures.append((i + 1, j + 1, got, expected))
    order, _ = group_closure(gens, cap)
    return CoxeterReport(kind, rank, order, weyl_order(kind, rank), failures)


def coxeter_check(gens: Sequence[LinMap], target: str, cap: int = DEFAULT_GROUP_CAP) -> bool:
    """True iff the generators satisfy the Coxeter relations of `target` (e.g. "A_4") and generate a group of its order."""
    return coxeter_report(gens, target, cap).ok


def target_name(m: int) -> str:
    kind, rank = target_type(m)
    return f"{kind}_{rank}"


def psi_generator(m: int, label: int) -> LinMap:
    """Image of the simple reflection s_label of the target system."""
    gens = ordered_gens(m)
    if not 1 <= label <= len(gens):
        raise ValueError(f"generator s_{label} outside the target of rank {len(gens)}")
    return gens[label - 1]


def _unit_index(m: int, label: int) -> int:
    gen = psi_generator(m, label)
    frame = lattice_frame(m)
    kind, index = gen.name.split("_")[1], int(gen.name.split("_")[2]) - 1
    return index if kind == "alpha" else frame.n_alpha + index


def psi_image(m: int, vector: Sequence[int], mode: str = "split") -> Vector:
    """Image of a vector over the simple roots (or fundamental weights) of the target system.

    The coordinate attached to alpha_l is carried to the frame coordinate of the
    generator psi(s_l). For m = 4n+2 the mode "single" reinterprets both halves in
    Z[y]/(T_2n+1), where the map stops being injective.
    """
    frame = lattice_frame(m)
    vector = tuple(int(v) for v in vector)
    if len(vector) != frame.size:
        raise ValueError(f"object of length {len(vector)} outside the domain of rank {frame.size}")
    out = [0] * frame.size
    for label, value in enumerate(vector, start=1):
        out[_unit_index(m, label)] += value
    if mode == "split":
        return tuple(out)
    if mode != "single" or m % 2:
        raise ValueError(f"mode {mode!r} not available for m={m}")
    single = even_ring(m, "single")
    alpha_poly = frame.alpha_ring.poly_of(out[: frame.n_alpha])
    beta_poly = frame.beta_ring.poly_of(out[frame.n_alpha :])
    return single.coords_of_poly(alpha_poly) + single.coords_of_poly(beta_poly)


def psi_equivariance_failures(m: int) -> list[tuple[int, int]]:
    """Pairs (l, k) where psi(s_l) psi(alpha_k) differs from psi(s_l alpha_k)."""
    kind, rank = target_type(m)
    cartan = cartan_matrix(kind, rank)
    failures = []
    for l in range(1, rank + 1):
        gen = psi_generator(m, l)
        for k in range(1, rank + 1):
            unit = [1 if j == k else 0 for j in range(1, rank + 1)]
            reflected = [u - (cartan[l - 1][k - 1] if j == l else 0) for j, u in enumerate(unit, start=1)]
            if gen(psi_image(m, unit)) != psi_image(m, reflected):
                failures.append((l, k))
    return failures


def ring_generators_commute(m: int) -> bool:
    gens = _aug_gens(m)
    for root in ("alpha", "beta"):
        parts = [gen for gen in gens if gen.name.startswith(f"s_{root}_")]
        for first in parts:
            if first.order(limit=2) != 2:
                return False
            for second in parts:
                if first @ second != second @ first:
                    return False
    return True


def dihedral_gens(m: int) -> tuple[LinMap, LinMap]:
    """s_alpha, s_beta on (a, b) in Z[2cos pi/m] on the chord basis, with Cartan value -x."""
    ring = chord_ring(m)
    x = np.array(ring.mult_matrix(ring.gen()), dtype=np.int64)
    r = ring.rank
    eye = np.eye(r, dtype=np.int64)
    zero = np.zeros((r, r), dtype=np.int64)
    s_alpha = np.block([[-eye, x], [zero, eye]])
    s_beta = np.block([[eye, zero], [x, -eye]])
    return LinMap(s_alpha, "s_alpha"), LinMap(s_beta, "s_beta")


def dihedral_order_check(m: int) -> bool:
    """(s_alpha s_beta) has order exactly m."""
    s_alpha, s_beta = dihedral_gens(m)
    return (s_alpha @ s_beta).order(limit=m) == m


def root_orbit(m: int, gens: Iterable[LinMap] | None = None) -> set[Vector]:
    frame = lattice_frame(m)
    gens = list(gens) if gens is not None else aug_gens(m)
    start = tuple(1 if i == 0 else 0 for i in range(frame.size))
    seen = {start}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for gen in gens:
            image = gen(current)
            if image not in seen:
                seen.add(image)
                queue.append(image)
    return seen


def _orbits(vectors: set[Vector], gens: Sequence[LinMap]) -> list[set[Vector]]:
    remaining = set(vectors)
    orbits = []
    while remaining:
        seed = min(remaining)
        orbit = {seed}
        queue = deque([seed])
        while queue:
            current = queue.popleft()
            for gen in gens:
                image = gen(current)
                if image not in orbit:
                    orbit.add(image)
                    queue.append(image)
        orbits.append(orbit)
        remaining -= orbit
    return orbits


@dataclass
class RootReport:
    m: int
    roots: set[Vector]
    short_roots: set[Vector]
    w_orbits: int
    aug_orbits: int
    stable: bool

    @property
    def ok(self) -> bool:
        return self.stable and self.aug_orbits == 1 and self.short_roots <= self.roots

    def as_dict(self) -> dict:
        return {
            "m": self.m,
            "roots": len(self.roots),
            "short_roots": len(self.short_roots),
            "w_orbits": self.w_orbits,
            "aug_orbits": self.aug_orbits,
            "stable": self.stable,
            "ok": self.ok,
        }


def root_report(m: int) -> RootReport:
    """Root system of the odd dihedral case, generated by the augmented group from alpha."""
    if m % 2 == 0:
        raise ValueError(f"root systems are built for odd m only, got {m}")
    frame = lattice_frame(m)
    gens = aug_gens(m)
    roots = root_orbit(m, gens)
    dihedral = [simple_reflection(m, "alpha"), simple_reflection(m, "beta")]
    alpha = tuple(1 if i == 0 else 0 for i in range(frame.size))
    beta = tuple(1 if i == frame.n_alpha else 0 for i in range(frame.size))
    short = set().union(*(o for o in _orbits(roots, dihedral) if alpha in o or beta in o))
    stable = all(gen(v) in roots for gen in gens for v in roots)
    w_orbits = len(_orbits(roots, dihedral))
    aug_orbits = len(_orbits(roots, gens))
    logger.info("root system m=%s: %s roots, %s W-orbits", m, len(roots), w_orbits)
    return RootReport(m, roots, short, w_orbits, aug_orbits, stable)


# Action of the augmented generators on the roots of m=5, over (alpha, g alpha, beta, g beta).
ROOT_ACTION_EXPECTED: dict[str, dict[str, list]] = {
    "s_alpha_1": {
        "fixed": [(0, 1, 0, 0), (0, 0, 1, 0), (0, 1, 1, 0)],
        "swapped": [
            ((1, 0, 0, 0), (-1, 0, 0, 0)),
            ((1, 0, 0, 1), (0, 0, 0, 1)),
            ((0, 1, 0, 1), (1, 1, 0, 1)),
            ((0, 1, 1, 1), (1, 1, 1, 1)),
        ],
    },
    "s_alpha_2": {
        "fixed": [(1, 0, 0, 0), (1, 1, 1, 1), (0, 1, 1, 1)],
        "swapped": [
            ((0, 1, 0, 0), (0, -1, 0, 0)),
            ((1, 0, 0, 1), (1, 1, 0, 1)),
            ((0, 1, 1, 0), (0, 0, 1, 0)),
            ((0, 0, 0, 1), (0, 1, 0, 1)),
        ],
    },
}


def root_action_table(m: int = 5) -> dict[str, dict[str, list]]:
    """Fixed positive roots and swapped pairs (with a positive member) of each augmented generator."""
    roots = root_orbit(m)
    positive = sorted(v for v in roots if all(c >= 0 for c in v))
    table: dict[str, dict[str, list]] = {}
    for gen in aug_gens(m):
        fixed = [v for v in positive if gen(v) == v]
        swapped = []
        for v in positive:
            image = gen(v)
            if image == v:
                continue
            pair = (v, image)
            if (image, v) not in swapped:
                swapped.append(pair)
        table[gen.name] = {"fixed": fixed, "swapped": swapped}
    return table


def root_action_matches(m: int = 5) -> bool:
    table = root_action_table(m)
    for name, expected in ROOT_ACTION_EXPECTED.items():
        got = table[name]
        if set(got["fixed"]) != set(expected["fixed"]):
            return False
        got_pairs = {frozenset(p) for p in got["swapped"]}
        if got_pairs != {frozenset(p) for p in expected["swapped"]}:
            return False
    return True


@dataclass
class DodecaReport:
    products: dict[str, sympy.Expr]
    expected: dict[str, sympy.Expr]
    projections: dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(sympy.simplify(self.products[k] - self.expected[k]) == 0 for k in self.expected) and all(
            self.projections.values()
        )

    def as_dict(self) -> dict:
        return {
            "products": {k: str(sympy.nsimplify(v)) for k, v in self.products.items()},
            "projections": self.projections,
            "ok": self.ok,
        }


def dodeca_vectors() -> list[sympy.Matrix]:
    g = (1 + sympy.sqrt(5)) / 2
    s = sympy.sqrt(1 - g**2 / 4)
    return [
        sympy.Matrix([1, 0, (g + 1) / 2]),
        sympy.Matrix([-(g**2) / 2, g * s, (g - 1) / 2]),
        sympy.Matrix([g, 0, (g - 1) / 2]),
        sympy.Matrix([-g / 2, s, (g + 1) / 2]),
    ]


def dodeca_report() -> DodecaReport:
    g = (1 + sympy.sqrt(5)) / 2
    vectors = dodeca_vectors()
    products: dict[str, sympy.Expr] = {}
    for i in range(4):
        for j in range(i, 4):
            products[f"({i + 1},{j + 1})"] = sympy.radsimp(sympy.expand(vectors[i].dot(vectors[j])))
    diag = 3 * (g + 2) / 4
    near = -sympy.Rational(1, 2) - g / 4
    far = 5 * g / 4
    expected = {
        "(1,1)": diag,
        "(2,2)": diag,
        "(3,3)": diag,
        "(4,4)": diag,
        "(1,2)": near,
        "(3,4)": near,
        "(1,4)": -near,
        "(1,3)": far,
        "(2,4)": far,
        "(2,3)": -far,
    }
    # planar parts: alpha_3 against alpha_1 and alpha_2 against alpha_4
    plane = [v[:2, 0] for v in vectors]
    projections = {
        "alpha_3 = g alpha": sympy.simplify(plane[2] - g * plane[0]) == sympy.zeros(2, 1),
        "alpha_2 = g beta": sympy.simplify(plane[1] - g * plane[3]) == sympy.zeros(2, 1),
    }
    return DodecaReport(products, expected, projections)


def dodeca_check() -> bool:
    return dodeca_report().ok
