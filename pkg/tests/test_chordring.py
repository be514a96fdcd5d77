from __future__ import annotations

import math
from fractions import Fraction

import pytest

from pentacrystal.algebra.chordring import (
    CutoffPoleError,
    IntPoly,
    RingMismatchError,
    bridge_ring,
    cheb,
    chord,
    chord_index,
    chord_ring,
    cutoff_ratio,
    cutoff_ratio_function,
    even_ring,
    golden_ring,
    irreducible,
    ring_arith,
)
from pentacrystal.services.algebra_service import (
    AlgebraService,
    closed_form_failures,
    q_identity_failures,
    s_identity_failures,
)
from pentacrystal.services.crystal_service import RANK_TWO_TYPES, cutoff_position


def test_chebyshev_small_members():
    """Check the first members of each family against their closed forms."""
    assert cheb("P", 2) == IntPoly.of(-1, 0, 1)
    assert cheb("P", 3) == IntPoly.of(0, -2, 0, 1)
    assert cheb("Q", 2) == IntPoly.of(-1, -1, 1)
    assert cheb("Q", -1) == IntPoly.constant(1)
    assert cheb("S", 0) == IntPoly.constant(1)
    assert cheb("S", 2) == IntPoly.of(-2, 0, 1)


def test_chebyshev_trigonometric_value():
    """P_n(2cos t) equals sin((n+1)t)/sin t."""
    theta = math.pi / 7
    for n in range(8):
        value = cheb("P", n)(2 * math.cos(theta))
        assert value == pytest.approx(math.sin((n + 1) * theta) / math.sin(theta))


def test_product_identities_hold():
    """The Q and S product identities hold exactly up to n = 20."""
    assert q_identity_failures(20) == []
    assert s_identity_failures(20) == []


def test_irreducibility_pattern():
    """Q_n is irreducible exactly when 2n+1 is prime; S_n exactly at powers of two."""
    assert irreducible(cheb("Q", 3))
    assert not irreducible(cheb("Q", 4))
    assert irreducible(cheb("S", 4))
    assert not irreducible(cheb("S", 3))


def test_golden_ring_square():
    """g^2 = g + 1 in the golden ring."""
    ring = golden_ring()
    g = ring.gen()
    assert g * g == ring.one() + g
    assert float(g) == pytest.approx((1 + math.sqrt(5)) / 2)


def test_chord_products_m7():
    """In the heptagon p1 p2 = p1 + p2 and p_i = p_{m-2-i}."""
    p1, p2 = chord_index(7, 1), chord_index(7, 2)
    assert p1 * p2 == p1 + p2
    assert chord_index(7, 3) == p2
    assert chord(7, 2) == p1


def test_ring_mismatch_is_rejected():
    """Arithmetic across different rings raises instead of guessing."""
    a = chord_ring(5).gen()
    b = chord_ring(7).gen()
    with pytest.raises(RingMismatchError):
        ring_arith(chord_ring(5), "add", a, b)
    with pytest.raises(RingMismatchError):
        a.in_ring(chord_ring(7))


def test_basis_change_round_trip():
    """The bridge basis and the chord basis of the same quotient agree on every element."""
    bridge = bridge_ring(3)
    chords = chord_ring(7)
    value = bridge.elem((2, -1, 3))
    moved = value.in_ring(chords)
    assert moved.in_ring(bridge) == value
    assert float(moved) == pytest.approx(float(value))


def test_even_rings_share_modulus_when_m_divisible_by_four():
    """For m = 8 the alpha and beta bases describe the same quotient."""
    alpha, beta = even_ring(8, "alpha"), even_ring(8, "beta")
    assert alpha.modulus == beta.modulus
    one = alpha.one()
    assert one.in_ring(beta).in_ring(alpha) == one


def test_cutoff_ratio_values():
    """T_3 = 1, T_4 vanishes at y = 1, and each finite rank-two type has its cutoff."""
    assert cutoff_ratio(3, Fraction(7, 2)) == 1
    assert cutoff_ratio(4, 1) == 0
    assert cutoff_ratio(4, 2) == Fraction(1, 2)
    assert {name: cutoff_position(c) for name, c in RANK_TWO_TYPES.items()} == {"A2": 4, "B2": 5, "G2": 7}
    assert closed_form_failures(12) == []


def test_cutoff_ratio_pole():
    """Evaluating the reduced ratio at a zero of its denominator raises."""
    ratio = cutoff_ratio_function(5)
    with pytest.raises(CutoffPoleError):
        ratio.evaluate(1)


def test_cutoff_vanishes_at_golden_square():
    """T_6 vanishes at y = g^2, the pentagonal coupling."""
    g = golden_ring().gen()
    assert cutoff_ratio_function(6).vanishes_at(g * g)


def test_algebra_service_suites_pass():
    """The identity and ring-law suites report no failures."""
    service = AlgebraService(max_n=12, irreducible_n=10)
    identities = service.identities()
    assert identities.ok, identities.failures
    laws = service.ring_laws(samples=5)
    assert laws.ok, laws.failures


def test_ring_power_matches_repeated_product():
    """Powers agree with repeated multiplication and refuse negative exponents."""
    g = chord_index(5, 1)
    product = g.ring.one()
    for exponent in range(8):
        assert g**exponent == product
        product = product * g
    with pytest.raises(ValueError):
        g**-1
