"""Chebyshev polynomials and exact arithmetic in quotient rings of Z[x].

Every ring carries a declared Z-basis; ring elements are integer coordinate
tuples in that basis. A float value of the generator is attached for
rendering and cross-checks only, never for equality decisions.
"""
from __future__ import annotations

import functools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import sympy

logger = logging.getLogger(__name__)

MAX_FACTOR_DEGREE = 16
BASIS_KINDS = ("power", "chebyshev-p", "bridge", "even-alpha", "even-beta")
CHEB_KINDS = ("P", "Pc", "Q", "S", "T")

_X = sympy.Symbol("x")


class RingMismatchError(ValueError):
    """Raised when elements of different quotient rings are combined."""


class CutoffPoleError(ZeroDivisionError):
    """Raised when a cutoff ratio is evaluated at one of its poles."""


class DegreeTooLargeError(ValueError):
    """Raised when a polynomial is beyond the degree accepted by the factoriser."""


@dataclass(frozen=True)
class IntPoly:
    """Dense integer polynomial, constant term first. The zero polynomial has no coefficients."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        coeffs = tuple(int(c) for c in self.coeffs)
        end = len(coeffs)
        while end and coeffs[end - 1] == 0:
            end -= 1
        object.__setattr__(self, "coeffs", coeffs[:end])

    @classmethod
    def of(cls, *coeffs: int) -> IntPoly:
        return cls(tuple(coeffs))

    @classmethod
    def constant(cls, value: int) -> IntPoly:
        return cls((value,))

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> IntPoly:
        return cls((0,) * degree + (coeff,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.leading == 1

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __add__(self, other: IntPoly | int) -> IntPoly:
        other = _as_poly(other)
        size = max(len(self.coeffs), len(other.coeffs))
        return IntPoly(tuple(self.coeff(k) + other.coeff(k) for k in range(size)))

    __radd__ = __add__

    def __neg__(self) -> IntPoly:
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: IntPoly | int) -> IntPoly:
        return self + (-_as_poly(other))

    def __rsub__(self, other: IntPoly | int) -> IntPoly:
        return _as_poly(other) - self

    def __mul__(self, other: IntPoly | int) -> IntPoly:
        if isinstance(other, int):
            return IntPoly(tuple(other * c for c in self.coeffs))
        if self.is_zero() or other.is_zero():
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> IntPoly:
        if exponent < 0:
            raise ValueError(f"negative exponent {exponent}")
        result = IntPoly.constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def divmod_monic(self, divisor: IntPoly) -> tuple[IntPoly, IntPoly]:
        """Quotient and remainder by a monic divisor, exact over Z."""
        if not divisor.is_monic():
            raise ValueError(f"divisor {divisor} is not monic")
        rem = list(self.coeffs)
        d = divisor.degree
        if len(rem) - 1 < d:
            return IntPoly(), self
        quot = [0] * (len(rem) - d)
        for k in range(len(rem) - 1, d - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            quot[k - d] = c
            for j, dc in enumerate(divisor.coeffs):
                rem[k - d + j] -= c * dc
        return IntPoly(tuple(quot)), IntPoly(tuple(rem[:d]))

    def __mod__(self, divisor: IntPoly) -> IntPoly:
        return self.divmod_monic(divisor)[1]

    def __call__(self, value):
        result = 0 * value if not isinstance(value, (int, float, Fraction)) else 0
        for c in reversed(self.coeffs):
            result = result * value + c
        return result

    def reflect(self) -> IntPoly:
        """Return p(-x)."""
        return IntPoly(tuple(c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs)))

    def scale_arg(self, a: int) -> IntPoly:
        """Return p(a*x)."""
        return IntPoly(tuple(c * a**k for k, c in enumerate(self.coeffs)))

    def div_x(self) -> IntPoly:
        if self.coeff(0) != 0:
            raise ValueError(f"{self} is not divisible by x")
        return IntPoly(self.coeffs[1:])

    def in_square(self) -> IntPoly:
        """Rewrite an even polynomial in x as a polynomial in y = x^2."""
        if any(c for c in self.coeffs[1::2]):
            raise ValueError(f"{self} is not an even polynomial")
        return IntPoly(self.coeffs[::2])

    def compose_square(self) -> IntPoly:
        """Return p(x^2)."""
        out: list[int] = []
        for c in self.coeffs:
            out.extend((c, 0))
        return IntPoly(tuple(out))

    def to_sympy(self, symbol: sympy.Symbol = _X) -> sympy.Poly:
        return sympy.Poly(list(reversed(self.coeffs)) or [0], symbol, domain="ZZ")

    @classmethod
    def from_sympy(cls, poly: sympy.Poly) -> IntPoly:
        return cls(tuple(int(c) for c in reversed(poly.all_coeffs())))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            term = "" if k == 0 else "x" if k == 1 else f"x^{k}"
            body = str(mag) if (mag != 1 or not term) else ""
            parts.append(f"{sign} {body}{term}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def _as_poly(value: IntPoly | int) -> IntPoly:
    return value if isinstance(value, IntPoly) else IntPoly.constant(value)


X = IntPoly.of(0, 1)


@functools.lru_cache(maxsize=None)
def _chebyshev_p(n: int) -> IntPoly:
    if n == -2:
        return IntPoly.constant(-1)
    if n == -1:
        return IntPoly()
    if n == 0:
        return IntPoly.constant(1)
    return X * _chebyshev_p(n - 1) - _chebyshev_p(n - 2)


def cheb(kind: str, n: int) -> IntPoly:
    """Chebyshev family member.

    P: P_{n+1} = x P_n - P_{n-1}, P_{-1} = 0, P_0 = 1.
    Pc: P_n(2x) - x P_{n-1}(2x).
    Q: P_n - P_{n-1}, also defined at n = -1 where it equals 1.
    S: P_n - P_{n-2} for n >= 1, with S_0 = 1.
    T: the even-case basis polynomials in y = x^2 (S_k for k even, S_k / x for k odd).
    """
    if kind not in CHEB_KINDS:
        raise ValueError(f"unknown Chebyshev kind {kind!r}")
    low = {"P": -1, "Q": -1}.get(kind, 0)
    if n < low:
        raise ValueError(f"index {n} out of range for kind {kind}")
    if kind == "P":
        return _chebyshev_p(n)
    if kind == "Pc":
        previous = _chebyshev_p(n - 1).scale_arg(2)
        return _chebyshev_p(n).scale_arg(2) - X * previous
    if kind == "Q":
        return _chebyshev_p(n) - _chebyshev_p(n - 1)
    if kind == "S":
        if n == 0:
            return IntPoly.constant(1)
        return _chebyshev_p(n) - _chebyshev_p(n - 2)
    s = cheb("S", n)
    return s.in_square() if n % 2 == 0 else s.div_x().in_square()


def factor(p: IntPoly) -> tuple[int, list[tuple[IntPoly, int]]]:
    """Content and irreducible factors over Q (primitive, with multiplicities)."""
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if p.degree > MAX_FACTOR_DEGREE:
        raise DegreeTooLargeError(f"degree {p.degree} exceeds {MAX_FACTOR_DEGREE}")
    content, factors = p.to_sympy().factor_list()
    return int(content), [(IntPoly.from_sympy(f), int(mult)) for f, mult in factors]


def irreducible(p: IntPoly) -> bool:
    if p.degree < 1:
        return False
    _, factors = factor(p)
    return len(factors) == 1 and factors[0][1] == 1


def _integer_matrix(rows: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(v) for v in row) for row in rows)


@dataclass(frozen=True)
class QuotientRing:
    """Z[x]/(modulus) with a declared Z-basis of rank deg(modulus)."""

    modulus: IntPoly
    basis_kind: str
    basis: tuple[IntPoly, ...]
    evaluation: float | None = None
    name: str = ""
    labels: tuple[str, ...] = field(default=(), compare=False)
    _to_power: tuple[tuple[int, ...], ...] = field(default=(), init=False, repr=False, compare=False)
    _from_power: tuple[tuple[int, ...], ...] = field(default=(), init=False, repr=False, compare=False)
    _table: tuple = field(default=(), init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not self.modulus.is_monic():
            raise ValueError(f"modulus {self.modulus} must be monic")
        if self.basis_kind not in BASIS_KINDS:
            raise ValueError(f"unknown basis kind {self.basis_kind!r}")
        rank = self.modulus.degree
        if len(self.basis) != rank:
            raise ValueError(f"basis has {len(self.basis)} elements, rank is {rank}")
        columns = [self._power_coords(b) for b in self.basis]
        to_power = sympy.Matrix(rank, rank, lambda i, j: columns[j][i])
        det = to_power.det()
        if det not in (1, -1):
            raise ValueError(f"basis of {self.name or self.modulus} is not unimodular (det {det})")
        from_power = to_power.inv()
        object.__setattr__(self, "_to_power", _integer_matrix(to_power.tolist()))
        object.__setattr__(self, "_from_power", _integer_matrix(from_power.tolist()))
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"b{i}" for i in range(rank)))
        table = tuple(
            tuple(self.coords_of_poly(self.basis[i] * self.basis[j]) for j in range(rank))
            for i in range(rank)
        )
        object.__setattr__(self, "_table", table)

    @property
    def rank(self) -> int:
        return self.modulus.degree

    def _power_coords(self, p: IntPoly) -> tuple[int, ...]:
        reduced = p % self.modulus
        return tuple(reduced.coeff(k) for k in range(self.rank))

    def coords_of_poly(self, p: IntPoly) -> tuple[int, ...]:
        power = self._power_coords(p)
        return tuple(sum(row[k] * power[k] for k in range(self.rank)) for row in self._from_power)

    def poly_of(self, coords: Sequence[int]) -> IntPoly:
        power = tuple(sum(row[k] * coords[k] for k in range(self.rank)) for row in self._to_power)
        return IntPoly(power)

    def elem(self, coords: Iterable[int]) -> RingElem:
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {len(coords)}")
        return RingElem(self, coords)

    def from_poly(self, p: IntPoly) -> RingElem:
        return RingElem(self, self.coords_of_poly(p))

    def from_int(self, value: int) -> RingElem:
        return self.from_poly(IntPoly.constant(value))

    def zero(self) -> RingElem:
        return RingElem(self, (0,) * self.rank)

    def one(self) -> RingElem:
        return self.from_int(1)

    def gen(self) -> RingElem:
        return self.from_poly(X)

    def basis_element(self, i: int) -> RingElem:
        return RingElem(self, tuple(1 if k == i else 0 for k in range(self.rank)))

    def multiply_coords(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        out = [0] * self.rank
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            row = self._table[i]
            for j, bj in enumerate(b):
                if bj == 0:
                    continue
                prod = ai * bj
                for k, c in enumerate(row[j]):
                    if c:
                        out[k] += prod * c
        return tuple(out)

    def mult_matrix(self, value: RingElem) -> tuple[tuple[int, ...], ...]:
        """Integer matrix M with coords(value * e) = M @ coords(e)."""
        if value.ring != self:
            raise RingMismatchError(f"{value.ring.name} element used in {self.name}")
        columns = [self.multiply_coords(value.coords, self.basis_element(j).coords) for j in range(self.rank)]
        return tuple(tuple(columns[j][i] for j in range(self.rank)) for i in range(self.rank))

    def with_basis(self, basis_kind: str, basis: Sequence[IntPoly], labels: Sequence[str] = ()) -> QuotientRing:
        return QuotientRing(self.modulus, basis_kind, tuple(basis), self.evaluation, self.name, tuple(labels))

    def value(self, coords: Sequence[int]) -> float:
        if self.evaluation is None:
            raise ValueError(f"ring {self.name or self.modulus} has no floating evaluation")
        return float(sum(c * b(self.evaluation) for c, b in zip(coords, self.basis)))

    def solve(self, factor_elem: RingElem, target: RingElem) -> RingElem | None:
        """Exact s with factor_elem * s = target, or None when no integral solution exists."""
        matrix = sympy.Matrix(self.mult_matrix(factor_elem))
        rhs = sympy.Matrix(target.coords)
        try:
            solution, params = matrix.gauss_jordan_solve(rhs)
        except ValueError:
            return None
        if params.shape[0]:
            solution = solution.subs({p: 0 for p in params})
        if any(not v.is_integer for v in solution):
            return None
        candidate = self.elem(int(v) for v in solution)
        return candidate if candidate * factor_elem == target else None


@dataclass(frozen=True)
class RingElem:
    ring: QuotientRing
    coords: tuple[int, ...]

    def _coerce(self, other: RingElem | int) -> RingElem:
        if isinstance(other, int):
            return self.ring.from_int(other)
        if other.ring != self.ring:
            raise RingMismatchError(f"cannot combine {self.ring.name or self.ring.modulus} with {other.ring.name or other.ring.modulus}")
        return other

    def __add__(self, other: RingElem | int) -> RingElem:
        other = self._coerce(other)
        return RingElem(self.ring, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self) -> RingElem:
        return RingElem(self.ring, tuple(-a for a in self.coords))

    def __sub__(self, other: RingElem | int) -> RingElem:
        return self + (-self._coerce(other))

    def __rsub__(self, other: RingElem | int) -> RingElem:
        return self._coerce(other) - self

    def __mul__(self, other: RingElem | int) -> RingElem:
        if isinstance(other, int):
            return RingElem(self.ring, tuple(other * a for a in self.coords))
        other = self._coerce(other)
        return RingElem(self.ring, self.ring.multiply_coords(self.coords, other.coords))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> RingElem:
        if exponent < 0:
            raise ValueError(f"negative exponent {exponent}; ring elements are not inverted")
        result = self.ring.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.coords)

    def to_poly(self) -> IntPoly:
        return self.ring.poly_of(self.coords)

    def in_ring(self, target: QuotientRing) -> RingElem:
        """Same element in another basis of the same quotient."""
        if target.modulus != self.ring.modulus:
            raise RingMismatchError(f"basis change needs equal moduli, got {self.ring.modulus} and {target.modulus}")
        return target.from_poly(self.to_poly())

    def __float__(self) -> float:
        return self.ring.value(self.coords)

    def __str__(self) -> str:
        terms = [f"{c}*{label}" for c, label in zip(self.coords, self.ring.labels) if c]
        return " + ".join(terms) if terms else "0"


def ring_arith(ring: QuotientRing, op: str, a: RingElem, b: RingElem | None = None) -> RingElem:
    if op == "basis_change":
        return a.in_ring(ring)
    if b is None:
        raise ValueError(f"operation {op} needs two operands")
    for operand in (a, b):
        if operand.ring != ring:
            raise RingMismatchError(f"operand from {operand.ring.name or operand.ring.modulus} used in {ring.name or ring.modulus}")
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown ring operation {op!r}")


def chord_modulus(m: int) -> IntPoly:
    if m < 3:
        raise ValueError(f"m must be at least 3, got {m}")
    return cheb("P", m // 2) - cheb("P", (m - 3) // 2)


@functools.lru_cache(maxsize=None)
def chord_ring(m: int) -> QuotientRing:
    """Z[2cos pi/m] on the chord basis p_0..p_{r-1}."""
    modulus = chord_modulus(m)
    rank = modulus.degree
    basis = tuple(cheb("P", i) for i in range(rank))
    return QuotientRing(
        modulus,
        "chebyshev-p",
        basis,
        evaluation=2 * math.cos(math.pi / m),
        name=f"chord[{m}]",
        labels=tuple(f"p{i}" for i in range(rank)),
    )


def golden_ring() -> QuotientRing:
    """Z[g] with g^2 = g + 1 on the basis (1, g)."""
    ring = chord_ring(5)
    return ring.with_basis("chebyshev-p", ring.basis, ("1", "g"))


@functools.lru_cache(maxsize=None)
def integer_ring() -> QuotientRing:
    return QuotientRing(X, "power", (IntPoly.constant(1),), evaluation=0.0, name="Z", labels=("1",))


@functools.lru_cache(maxsize=None)
def bridge_ring(n: int) -> QuotientRing:
    """Z[x]/(Q_n) on the basis g_i = P_{2i}, i = 0..n-1."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    basis = tuple(cheb("P", 2 * i) % cheb("Q", n) for i in range(n))
    return QuotientRing(
        cheb("Q", n),
        "bridge",
        basis,
        evaluation=2 * math.cos(math.pi / (2 * n + 1)),
        name=f"bridge[{n}]",
        labels=tuple(f"g{i}" for i in range(n)),
    )


@functools.lru_cache(maxsize=None)
def even_ring(m: int, side: str) -> QuotientRing:
    """Rings of the even case in y = x^2.

    m = 4n: both sides share Z[y]/(T_2n) and differ by basis.
    m = 4n+2: the alpha side is Z[y]/(y T_{2n+1}), the beta side Z[y]/(T_{2n+1});
    side "single" gives Z[y]/(T_{2n+1}) on the power basis.
    """
    if m < 4 or m % 2:
        raise ValueError(f"even ring needs even m >= 4, got {m}")
    y_value = 4 * math.cos(math.pi / m) ** 2
    T = functools.partial(cheb, "T")
    if m % 4 == 0:
        n = m // 4
        modulus = T(2 * n)
        if side == "alpha":
            basis = tuple(T(2 * (n - i)) for i in range(1, n + 1))
            kind = "even-alpha"
        elif side == "beta":
            basis = tuple(T(2 * (n - i) + 1) for i in range(1, n + 1))
            kind = "even-beta"
        elif side == "single":
            basis = tuple(IntPoly.monomial(k) for k in range(n))
            kind = "power"
        else:
            raise ValueError(f"unknown side {side!r}")
    else:
        n = (m - 2) // 4
        if side == "alpha":
            modulus = IntPoly.of(0, 1) * T(2 * n + 1)
            basis = tuple(T(2 * (n + 1 - i)) for i in range(1, n + 2))
            kind = "even-alpha"
        elif side == "beta":
            modulus = T(2 * n + 1)
            basis = tuple(T(2 * (n - i) + 1) for i in range(1, n + 1))
            kind = "even-beta"
        elif side == "single":
            modulus = T(2 * n + 1)
            basis = tuple(IntPoly.monomial(k) for k in range(n))
            kind = "power"
        else:
            raise ValueError(f"unknown side {side!r}")
    labels = tuple(f"{side[0]}{i + 1}" for i in range(len(basis)))
    return QuotientRing(modulus, kind, basis, evaluation=y_value, name=f"even[{m},{side}]", labels=labels)


@functools.lru_cache(maxsize=None)
def minimal_ring(m: int) -> QuotientRing:
    """Z[x] modulo the irreducible factor of the chord modulus vanishing at 2cos pi/m."""
    value = 2 * math.cos(math.pi / m)
    _, factors = factor(chord_modulus(m))
    for candidate, _ in factors:
        if abs(candidate(value)) < 1e-9:
            if candidate.leading < 0:
                candidate = -candidate
            rank = candidate.degree
            return QuotientRing(
                candidate,
                "power",
                tuple(IntPoly.monomial(k) for k in range(rank)),
                evaluation=value,
                name=f"min[{m}]",
                labels=tuple("1" if k == 0 else f"g^{k}" for k in range(rank)),
            )
    raise ArithmeticError(f"no factor of the chord modulus vanishes at 2cos(pi/{m})")


def chord(m: int, j: int) -> RingElem:
    """The chord p_{j-1} of the regular m-gon joining vertices j apart."""
    if not 1 <= j <= m - 1:
        raise ValueError(f"chord index {j} out of range for m={m}")
    return chord_index(m, j - 1)


def chord_index(m: int, i: int) -> RingElem:
    """p_i for 0 <= i <= m-2, using p_i = p_{m-2-i}."""
    if not 0 <= i <= m - 2:
        raise ValueError(f"chord p_{i} out of range for m={m}")
    ring = chord_ring(m)
    return ring.from_poly(cheb("P", i))


def normal_chord_index(m: int, i: int) -> int:
    return min(i, m - 2 - i)


@dataclass(frozen=True)
class CutoffRatio:
    """Reduced rational function numerator(y) / denominator(y)."""

    n: int
    numerator: IntPoly
    denominator: IntPoly

    def evaluate(self, y: Fraction | int) -> Fraction:
        y = Fraction(y)
        den = self.denominator(y)
        if den == 0:
            raise CutoffPoleError(f"T_{self.n} has a pole at y={y}")
        return Fraction(self.numerator(y)) / den

    def vanishes_at(self, y: RingElem) -> bool:
        return self.numerator(y).is_zero() and not self.denominator(y).is_zero()


@functools.lru_cache(maxsize=None)
def cutoff_ratio_function(n: int) -> CutoffRatio:
    """T_3 = 1 and T_{k+1} = 1 - 1/(y T_k), kept in lowest terms."""
    if n < 3:
        raise ValueError(f"cutoff ratio needs n >= 3, got {n}")
    y = sympy.Symbol("y")
    num, den = IntPoly.constant(1), IntPoly.constant(1)
    for _ in range(3, n):
        y_num = IntPoly.of(0, 1) * num
        num, den = y_num - den, y_num
        p, q = num.to_sympy(y), den.to_sympy(y)
        common = p.gcd(q)
        p, q = p.exquo(common), q.exquo(common)
        if q.LC() < 0:
            p, q = -p, -q
        num, den = IntPoly.from_sympy(p), IntPoly.from_sympy(q)
    return CutoffRatio(n, num, den)


def cutoff_ratio(n: int, y: Fraction | int) -> Fraction:
    """Evaluate T_n at a rational y by the recurrence, falling back to the closed form at a pole."""
    if n < 3:
        raise ValueError(f"cutoff ratio needs n >= 3, got {n}")
    y = Fraction(y)
    value = Fraction(1)
    for k in range(3, n):
        step = y * value
        if step == 0:
            logger.info("recurrence for T_%s hits a pole at k=%s, y=%s; using closed form", n, k, y)
            return cutoff_ratio_function(n).evaluate(y)
        value = 1 - 1 / step
    return value
