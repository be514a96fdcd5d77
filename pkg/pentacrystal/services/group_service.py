from __future__ import annotations

import logging

from pentacrystal.groups import coxeter
from pentacrystal.services.report import SuiteReport

logger = logging.getLogger(__name__)

# m -> expected augmented group (type, order)
AUGMENTED_TARGETS: dict[int, tuple[str, int]] = {
    5: ("A_4", 120),
    6: ("B_3", 48),
    7: ("A_6", 5040),
    8: ("B_4", 384),
    10: ("B_5", 3840),
}


class GroupService:
    def __init__(self, cap: int = coxeter.DEFAULT_GROUP_CAP):
        self.cap = cap

    def augmented_order(self, m: int) -> int:
        order, _ = coxeter.group_closure(coxeter.aug_gens(m), self.cap)
        return order

    def dihedral_order(self, m: int) -> int:
        order, _ = coxeter.group_closure(list(coxeter.dihedral_gens(m)), self.cap)
        return order

    def coxeter_suite(self, m: int) -> SuiteReport:
        report = SuiteReport("coxeter", {"m": m, "cap": self.cap})
        target = coxeter.target_name(m)
        cox = coxeter.coxeter_report(coxeter.ordered_gens(m), target, self.cap)
        report.check("relations", cox.ok, cox.as_dict())
        expected = AUGMENTED_TARGETS.get(m)
        if expected is not None:
            report.check("expected_type", (target, cox.order) == expected, {"target": target, "order": cox.order})
        report.check("dihedral_order", coxeter.dihedral_order_check(m))
        report.check("ring_generators_commute", coxeter.ring_generators_commute(m))
        involutions = [gen.name for gen in coxeter.aug_gens(m) if not (gen @ gen).is_identity()]
        report.check("involutions", not involutions, involutions or None)
        if m % 2:
            failures = coxeter.psi_equivariance_failures(m)
            report.check("psi_equivariance", not failures, failures[:10] or None)
        return report

    def group_suite(self) -> SuiteReport:
        report = SuiteReport("groups", {"cap": self.cap})
        for m in sorted(AUGMENTED_TARGETS):
            report.merge(self.coxeter_suite(m), f"m{m}")
        report.merge(self.root_suite(), "roots")
        dodeca = coxeter.dodeca_report()
        report.check("dodecahedron", dodeca.ok, dodeca.as_dict())
        return report

    def root_suite(self, m: int = 5) -> SuiteReport:
        report = SuiteReport("roots", {"m": m})
        roots = coxeter.root_report(m)
        report.note("summary", roots.as_dict())
        report.check("stable", roots.ok)
        if m == 5:
            report.check("count", len(roots.roots) == 20, len(roots.roots))
            report.check("w_orbits", roots.w_orbits == 2, roots.w_orbits)
            report.check("action_table", coxeter.root_action_matches(m))
        return report
