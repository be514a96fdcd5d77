from __future__ import annotations

import itertools

import pytest

from pentacrystal.crystal import bridge, pentagon
from pentacrystal.crystal.engine import BJCrystal, CrystalElt, JSeq, ModuleSpec, WindowOverflowError, upper_normal
from pentacrystal.services.crystal_service import RANK_TWO_TYPES, CrystalService, pentagon_candidates


def test_crystal_element_trims_trailing_zeros():
    """Trailing zero entries do not change an element."""
    assert CrystalElt(((1, 0), (0, 0))) == CrystalElt(((1, 0),))
    assert CrystalElt(((0, 0),)).is_highest()
    with pytest.raises(ValueError):
        CrystalElt(((-1, 0),))


def test_pentagon_first_layers():
    """Heights 0, 1, 2 hold 1, 4 and 13 elements, the root-partition counts."""
    crystal = pentagon.pentagon_crystal()
    assert crystal.closure(2).layer_counts() == [1, 4, 13]


def test_f_then_e_returns():
    """e undoes f for every operator on a small closure."""
    crystal = pentagon.pentagon_crystal()
    for b in crystal.closure(3).elements:
        for root, comp in crystal.operators():
            assert crystal.apply_e(crystal.apply_f(b, root, comp), root, comp) == b


def test_highest_element_is_killed_by_every_e():
    """The highest element has no e-predecessor."""
    crystal = pentagon.pentagon_crystal()
    for root, comp in crystal.operators():
        assert crystal.apply_e(crystal.highest, root, comp) is None
    for which in pentagon.OPERATORS:
        assert pentagon.e_kill(crystal.highest, which)


def test_membership_inequalities():
    """Membership accepts the closure and rejects support beyond five."""
    crystal = pentagon.pentagon_crystal()
    for b in crystal.closure(4).elements:
        assert pentagon.member_prop54(b)[0]
    too_long = CrystalElt(((0, 0),) * 5 + ((1, 0),))
    assert not pentagon.member_prop54(too_long)[0]
    with pytest.raises(pentagon.NotInCrystalError):
        pentagon.e_kill(too_long, "alpha")


def test_membership_matches_closure_at_small_depth():
    """The inequality set and the closure agree on every element up to height 4."""
    crystal = pentagon.pentagon_crystal()
    closure = crystal.closure(4).elements
    inequality_set = {b for b in pentagon_candidates(4) if pentagon.member_prop54(b)[0]}
    assert inequality_set == closure


def test_normal_form_reproduces_element():
    """The block word rebuilds every element up to height 6 and is in normal form."""
    crystal = pentagon.pentagon_crystal()
    for b in crystal.closure(6).elements:
        word = pentagon.normal_form(b, crystal)
        assert pentagon.apply_word(word, crystal) == b
        assert pentagon.is_normal(word.blocks, crystal)
        assert len(word.blocks) == pentagon.SUPPORT_LIMIT
    assert str(pentagon.normal_form(crystal.highest, crystal)) == "1"


def test_normal_form_of_one_step():
    """f_alpha b_inf has m_1 = (1, 0) and every other block empty."""
    crystal = pentagon.pentagon_crystal()
    word = pentagon.normal_form(crystal.apply_word([("alpha", 0)]), crystal)
    assert word.blocks[0] == ("alpha", (1, 0))
    assert all(mn == (0, 0) for _, mn in word.blocks[1:])
    assert [root for root, _ in word.blocks] == ["alpha", "beta", "alpha", "beta", "alpha"]


def _splits(total: tuple[int, int], slots: int):
    for first in itertools.product(range(total[0] + 1), repeat=slots):
        if sum(first) != total[0]:
            continue
        for second in itertools.product(range(total[1] + 1), repeat=slots):
            if sum(second) == total[1]:
                yield tuple(zip(first, second))


def test_normal_forms_are_unique_at_one_weight():
    """Normal words of weight -(2 alpha + g alpha + beta) hit each element of that weight exactly once."""
    crystal = pentagon.pentagon_crystal()
    images = []
    for alphas in _splits((2, 1), 3):
        for betas in _splits((1, 0), 2):
            blocks = (
                ("alpha", alphas[0]),
                ("beta", betas[0]),
                ("alpha", alphas[1]),
                ("beta", betas[1]),
                ("alpha", alphas[2]),
            )
            if pentagon.is_normal(blocks, crystal):
                images.append(crystal.apply_word(pentagon.block_steps(blocks)))
    expected = {b for b in crystal.closure(4).elements if pentagon.weight_vector(crystal, b) == (2, 1, 1, 0)}
    assert len(images) == len(set(images))
    assert set(images) == expected
    assert len(expected) == pentagon.char_coeff((2, 1, 1, 0))


def test_pentagon_suite_normal_forms_at_depth_six():
    """The suite finds a normal form for every member up to height 6."""
    report = CrystalService().pentagon_suite(6)
    assert report.results["normal_form"]["ok"], report.results["normal_form"]

def test_transport_preserves_weight():
    """The J to J' isomorphism keeps weights and inverts."""
    source = pentagon.pentagon_crystal()
    target = pentagon.pentagon_crystal(swapped=True)
    for b in source.closure(4).elements:
        image = pentagon.transport(b, source, target)
        assert source.weight(b) == target.weight(image)
        assert pentagon.transport_inverse(image, target, source) == b


def test_character_coefficients():
    """Vector partition counts of small weights."""
    assert pentagon.char_coeff((0, 0, 0, 0)) == 1
    assert pentagon.char_coeff((1, 0, 0, 0)) == 1
    assert pentagon.char_coeff((1, 0, 0, 1)) == 2
    assert pentagon.char_coeff((-1, 0, 0, 0)) == 0


def test_upper_normal_on_closure():
    """epsilon counts the e-steps before an element is killed."""
    crystal = pentagon.pentagon_crystal()
    elements = crystal.closure(3).elements
    for root, comp in crystal.operators():
        assert upper_normal(crystal, elements, root, comp)


def test_window_overflow_without_growth():
    """A fixed window refuses elements that do not fit."""
    crystal = BJCrystal(pentagon.pentagon_spec(), JSeq(("alpha", "beta"), 3), auto_grow=False)
    with pytest.raises(WindowOverflowError):
        crystal.apply_f(CrystalElt(((0, 0), (1, 0))), "alpha", 0)


def test_classical_rank_two_cutoffs():
    """Finite rank-two types stop at support 3, 4 and 6."""
    limits = {"A2": 3, "B2": 4, "G2": 6}
    for name, cartan in RANK_TWO_TYPES.items():
        crystal = BJCrystal(ModuleSpec.classical(cartan), JSeq(("1", "2"), 16))
        support = max(b.support for b in crystal.closure(6).elements)
        assert support <= limits[name]


def test_basis_dictionary_identification():
    """p_2i = g_i and p_2i+1 = g_{n-i-1} in the bridge ring."""
    for n in (1, 2, 3):
        assert bridge.BasisDict(n).identification_holds()
    dictionary = bridge.BasisDict(2)
    assert [dictionary.operator_of(label) for label in dictionary.labels] == [
        ("alpha", 0),
        ("beta", 1),
        ("alpha", 1),
        ("beta", 0),
    ]


def test_to_classical_round_trip():
    """Spreading module entries over classical slots is invertible."""
    dictionary = bridge.BasisDict(2)
    b = CrystalElt(((1, 2), (0, 1), (3, 0)))
    assert bridge.from_classical(bridge.to_classical(b, dictionary), dictionary) == b


def test_bridge_intertwines():
    """Module operators match classical A_4 operators on a depth-3 closure."""
    report = bridge.intertwine_check(2, 3)
    assert report.ok, report.as_dict()
    ascending, descending = bridge.block_order_counts(2, 3)
    assert ascending == descending


def test_crystal_service_suites():
    """The pentagon and cutoff suites pass at a small depth."""
    service = CrystalService()
    pentagon_report = service.pentagon_suite(4)
    assert pentagon_report.ok, pentagon_report.failures
    assert service.cutoff_suite(5).ok
