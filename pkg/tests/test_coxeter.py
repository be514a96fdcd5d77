from __future__ import annotations

import pytest

from pentacrystal.groups import coxeter
from pentacrystal.services.group_service import GroupService


@pytest.mark.parametrize(
    "m, target, order",
    [(5, "A_4", 120), (6, "B_3", 48), (8, "B_4", 384)],
)
def test_augmented_group_orders(m, target, order):
    """The augmented generators close to the expected Weyl group."""
    assert coxeter.target_name(m) == target
    assert GroupService().augmented_order(m) == order
    assert coxeter.coxeter_check(coxeter.ordered_gens(m), target)


def test_dihedral_group_order():
    """The two simple reflections generate a dihedral group of order 2m."""
    service = GroupService()
    assert service.dihedral_order(5) == 10
    assert service.dihedral_order(8) == 16
    assert coxeter.dihedral_order_check(7)


def test_generators_are_involutions():
    """Every augmented generator squares to the identity."""
    for gen in coxeter.aug_gens(5):
        assert (gen @ gen).is_identity()
        assert gen.order() == 2


def test_group_cap_is_enforced():
    """Closure stops once the cap is passed."""
    with pytest.raises(coxeter.GroupCapExceededError):
        coxeter.group_closure(coxeter.aug_gens(7), cap=100)


def test_pentagon_root_system():
    """Twenty roots in two orbits of the dihedral group, one orbit of the augmented group."""
    report = coxeter.root_report(5)
    assert len(report.roots) == 20
    assert report.w_orbits == 2
    assert report.aug_orbits == 1
    assert report.ok
    assert coxeter.root_action_matches(5)


def test_root_report_rejects_even_m():
    """Root systems are only built for odd m."""
    with pytest.raises(ValueError):
        coxeter.root_report(6)


def test_psi_equivariance_and_commuting_generators():
    """The lattice map intertwines the actions and the ring generators commute with them."""
    assert coxeter.psi_equivariance_failures(5) == []
    assert coxeter.ring_generators_commute(5)


def test_dodecahedron_products():
    """The dodecahedron scalar products come out exactly."""
    assert coxeter.dodeca_check()


def test_coxeter_suite_for_pentagon():
    """The service suite for m = 5 reports no failures."""
    report = GroupService().coxeter_suite(5)
    assert report.ok, report.failures
    assert report.results["expected_type"]["detail"] == {"target": "A_4", "order": 120}
