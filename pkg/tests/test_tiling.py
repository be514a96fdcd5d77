from __future__ import annotations

import pytest

from pentacrystal.algebra.chordring import chord_index, chord_ring
from pentacrystal.geometry import planar, tiling
from pentacrystal.geometry.tiling import ScaledTriangle, Triangle, TilingError
from pentacrystal.services.tiling_service import TilingService, shape_counts


def test_triangle_normalises_rotation():
    """Angle listings are stored as their least rotation."""
    assert Triangle.of(5, 3, 1, 1).angles == (1, 1, 3)
    assert Triangle.of(5, 3, 1, 1).label == "T{1,1,3}"
    with pytest.raises(TilingError):
        Triangle.of(5, 1, 1, 2)


def test_pentagon_has_two_triangles():
    """The pentagon admits exactly T{1,1,3} and T{1,2,2}."""
    assert [t.angles for t in tiling.triangles(5)] == [(1, 1, 3), (1, 2, 2)]


def test_chord_products_expand():
    """p_t p_i is the sum of p_{i+t-2j} for every small m."""
    for m in range(3, 12):
        assert tiling.chord_product_failures(m) == []


def test_pair_decomposition_of_golden_gnomon():
    """p1 T{1,1,3} splits into unit T{1,1,3} and T{1,2,2}."""
    whole = ScaledTriangle(Triangle.of(5, 1, 1, 3), chord_index(5, 1))
    d = tiling.decompose(whole, "pair", 1, 2)
    assert sorted(part.triangle.base.angles for part in d.parts) == [(1, 1, 3), (1, 2, 2)]
    assert all(part.scale == chord_ring(5).one() for part in d.parts)
    assert d.placement


def test_wrong_scale_is_rejected():
    """A method refuses a whole whose scale does not match it."""
    whole = ScaledTriangle.unit(Triangle.of(5, 1, 1, 3))
    with pytest.raises(TilingError):
        tiling.build_decomposition(whole, "pair", 1, 2)


def test_nine_piece_decomposition():
    """p2 T{3,3,3} in the 9-gon is three T{1,3,5} and six T{2,3,4}."""
    whole = ScaledTriangle(Triangle.of(9, 3, 3, 3), chord_index(9, 2))
    d = tiling.build_decomposition(whole, "nine")
    assert len(d.parts) == 9
    assert shape_counts(d) == {"T{1,3,5}": 3, "T{2,3,4}": 6}
    assert tiling.verify_decomposition(d) == []


@pytest.mark.parametrize("n", [1, 2, 3])
def test_integer_scale_square(n):
    """n T splits into n^2 copies of T."""
    base = Triangle.of(7, 1, 2, 4)
    whole = ScaledTriangle(base, chord_ring(7).from_int(n))
    d = tiling.build_decomposition(whole, "square", n)
    assert len(d.parts) == n * n
    assert all(part.triangle.base == base for part in d.parts)
    assert tiling.verify_decomposition(d) == []


def test_conservation_for_small_m():
    """Every family instance for m up to 8 conserves area and edges."""
    service = TilingService(max_m=8, max_t=2)
    for m in range(3, 9):
        checked, failures = service.conservation(m)
        assert failures == []
    checked, _ = service.conservation(7)
    assert checked > 0


def test_placed_parts_fill_whole():
    """Part areas in the plane add up to the placed whole."""
    whole = ScaledTriangle(Triangle.of(7, 2, 2, 3), chord_index(7, 1))
    d = tiling.decompose(whole, "pt", 1)
    total = sum(abs(planar.signed_area([d.placement[v] for v in p.vertices])) for p in d.parts)
    outer = abs(planar.signed_area([d.placement[v] for v in d.whole.vertices]))
    assert total == pytest.approx(outer)


def test_closure_reach_finds_one_cut():
    """p1 T{1,1,3} is reached from unit triangles by a single pair cut."""
    node = TilingService().reach(5, (1, 1, 3), (1,))
    assert node is not None
    assert node.depth == 1
    assert node.method == "pair"
    assert node.to_json()["scale"] == ["p1"]


def test_star_relation_m7():
    """T{2,2,3}*T{1,1,5} and T{1,2,4}*T{1,3,3} share a quadrilateral."""
    relation = tiling.star_relation_m7()
    assert relation is not None
    left, right = relation
    assert len(left) == 4
    assert left.canonical() == right.canonical()


@pytest.mark.parametrize("power", range(5))
def test_closure_reach_golden_powers(power):
    """g^n T{1,1,3} is reached from unit triangles for n up to 4 within the default budget."""
    service = TilingService()
    assert service.reach_budget == 7
    node = service.reach(5, (1, 1, 3), (1,) * power)
    assert node is not None
    assert node.depth <= 7
    assert node.triangle == Triangle.of(5, 1, 1, 3)


def test_closure_reach_m7_without_the_thin_triangle():
    """T{1,1,5} is not obtained from the other three triangles of the heptagon."""
    generators = [Triangle.of(7, 2, 2, 3), Triangle.of(7, 1, 2, 4), Triangle.of(7, 1, 3, 3)]
    target = ScaledTriangle.unit(Triangle.of(7, 1, 1, 5))
    assert tiling.closure_reach(7, target, 4, generators=generators) is None
    assert TilingService().reach(7, (1, 1, 5), (), generators=[(2, 2, 3), (1, 2, 4), (1, 3, 3)]) is None


def test_closure_reach_m9_uses_the_nine_cut():
    """p2 T{3,3,3} for m = 9 comes from the shifted grid of step two."""
    target = ScaledTriangle(Triangle.of(9, 3, 3, 3), chord_index(9, 2))
    node = tiling.closure_reach(9, target, 2)
    assert node is not None
    assert node.depth == 1
    assert node.method == "nine"
