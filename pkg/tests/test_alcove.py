from __future__ import annotations

import pytest

from pentacrystal.geometry import alcove
from pentacrystal.geometry.alcove import Alcove, AlcoveError, WalkError


def test_fundamental_alcove_is_alcove():
    """The fundamental alcove and its wall crossings stay alcoves."""
    a = Alcove.fundamental(2)
    assert alcove.is_alcove(a)
    for k in range(a.m):
        flipped = a.flip(k)
        assert alcove.is_alcove(flipped)
        assert flipped.flip(k) == a


@pytest.mark.parametrize("n", [1, 2, 3])
def test_affine_reflections(n):
    """The affine Weyl group generators act as reflections on weights."""
    assert alcove.affine_reflection_failures(n) == []


def test_plane_map_commutes_with_reflections():
    """psi' intertwines the A_4 reflections with the dihedral ones."""
    assert alcove.psi_commutation_failures(2) == []


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_shoelace_image(n):
    """The fundamental alcove image zig-zags through 2n+2 points."""
    assert alcove.shoelace_failures(n) == []
    assert len(alcove.fundamental_image(n)) == 2 * n + 2


@pytest.mark.parametrize("n, expected", [(1, (6, 6)), (2, (30, 30)), (3, (98, 126))])
def test_weight_line_counts(n, expected):
    """Sums of distinct defining weights on W-lines through the origin."""
    assert alcove.weight_line_count(n) == expected


def test_shape_classes():
    """Images of the Weyl-group translates of the fundamental alcove fall into 12 classes."""
    report = alcove.shape_classes()
    assert report.ok, report.failures
    assert len(report.classes) == 12
    assert sum(c.size for c in report.classes) == report.images


def test_tiling25():
    """25 alcoves tile the triangle, each with one root-lattice vertex."""
    region = alcove.find_tiling25()
    assert region.ok, region.failures
    assert len(region.alcoves) == 25
    assert all(len(a.root_lattice_vertices()) == 1 for a in region.alcoves)


def test_golden_tiling_counts():
    """One fundamental triangle splits into 75 Golden-Pair pieces at 1:2."""
    tiling = alcove.aperiodic_tile(1, seed=0)
    assert tiling.ok, tiling.failures
    assert len(tiling.pieces) == 75
    assert tiling.counts == {"T1": 25, "T2": 50}


def test_golden_tiling_is_seeded():
    """The same seed gives the same tiling and some seeds differ."""
    first = alcove.aperiodic_tile(1, seed=3)
    again = alcove.aperiodic_tile(1, seed=3)
    assert first.signature() == again.signature()
    signatures = {alcove.aperiodic_tile(1, seed=s).signature() for s in range(10)}
    assert len(signatures) > 1


def test_walk_rejects_bad_input():
    """Walks need targets and valid wall indices."""
    with pytest.raises(WalkError):
        alcove.plan_walk([])
    with pytest.raises(WalkError):
        alcove.walk_from_steps(Alcove.fundamental(2), [7], 0, 1)
    with pytest.raises(AlcoveError):
        alcove.aperiodic_tile(0)


@pytest.mark.parametrize("seed", range(10))
def test_golden_tiling_for_every_seed(seed):
    """Every seed walks through the whole region and tiles it with 75 pieces."""
    tiling = alcove.aperiodic_tile(1, seed=seed)
    assert tiling.ok, tiling.failures
    assert len(tiling.pieces) == 75


@pytest.mark.parametrize("seed", [0, 4, 9])
def test_walk_enters_and_leaves_targets_through_different_walls(seed):
    """The first visit of each target alcove uses two distinct walls."""
    region = alcove.find_region_tiling(alcove.CELLS_PER_SIDE)
    walk = alcove.plan_walk(region.alcoves, seed, start=Alcove.fundamental(2))
    context = walk.context(region.alcoves)
    assert set(context) == set(region.alcoves)
    assert all(before != after for before, after in context.values())


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_zigzag_triangulation(n):
    """The defining weights lie on the unit circle and cut the (2n+1)-gon into T_i with angles (1, i, 2n-i)."""
    assert alcove.zigzag_failures(n) == []
    triangles = alcove.zigzag_triangulation(n)
    assert [t.index for t in triangles] == list(range(1, 2 * n))
    assert all(sum(t.angles) == 2 * n + 1 for t in triangles)


def test_zigzag_triangles_of_the_pentagon():
    """In the pentagon T_1 is the {1,1,3} triangle with sides 1, g, 1 and T_2 is {1,2,2}."""
    first, second, third = alcove.zigzag_triangulation(2)
    assert first.angles == (1, 1, 3)
    assert first.sides == (0, 1, 0)
    assert second.angles == (1, 2, 2)
    assert second.sides == (1, 1, 0)
    assert third.angles == (1, 3, 1)
    assert third.label == first.label


def test_zigzag_triangles_of_the_heptagon():
    """The heptagon splits into {1,1,5}, {1,2,4}, {1,3,3} and mirror images."""
    labels = [t.label for t in alcove.zigzag_triangulation(3)]
    assert labels == [(1, 1, 5), (1, 2, 4), (1, 3, 3), (1, 2, 4), (1, 1, 5)]


def test_zigzag_vertices_are_defining_weights():
    """v_0 .. v_2n are the defining weights, v_0 = w_1 and v_2n = -w_2n."""
    n = 2
    weights = [alcove.zigzag_weight(n, i) for i in range(2 * n + 1)]
    assert set(weights) == set(alcove.defining_weights(n))
    assert weights[0] == alcove.fundamental_weight(n, 1)
    assert weights[-1] == alcove.times(-1, alcove.fundamental_weight(n, 2 * n))
    with pytest.raises(ValueError):
        alcove.zigzag_weight(n, 2 * n + 1)
