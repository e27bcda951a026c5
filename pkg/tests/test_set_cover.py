import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings

from sspt.set_cover import (
    CoverSubset,
    SetCoverInstance,
    exact_cover,
    greedy_cover,
    harmonic,
)
from sspt.utils import InvariantViolation, TooLarge

from .strategies import set_covers


def _brute_force(inst: SetCoverInstance) -> int:
    best = None
    for size in range(len(inst.subsets) + 1):
        for combo in itertools.combinations(range(len(inst.subsets)), size):
            if inst.covers(combo):
                weight = sum(inst.subsets[i].weight for i in combo)
                best = weight if best is None else min(best, weight)
    return best


def test_harmonic():
    assert harmonic(0) == 0
    assert harmonic(1) == 1
    assert harmonic(3) == Fraction(11, 6)


class TestInstance:
    def test_member_outside_universe(self):
        with pytest.raises(InvariantViolation):
            SetCoverInstance.from_sets(2, [{0, 2}])

    def test_negative_weight(self):
        with pytest.raises(InvariantViolation):
            SetCoverInstance(1, (CoverSubset(0, frozenset({0}), -1),))

    def test_covers(self, abc_cover):
        assert abc_cover.covers([0, 1])
        assert abc_cover.covers([0, 2])
        assert not abc_cover.covers([1])


class TestGreedy:
    def test_abc_picks_a_then_b(self, abc_cover):
        solution = greedy_cover(abc_cover)
        assert solution.chosen == (0, 1)
        assert solution.covered
        assert solution.total_weight == 2

    def test_empty_universe(self):
        solution = greedy_cover(SetCoverInstance(0, ()))
        assert solution.chosen == ()
        assert solution.covered

    def test_infeasible(self):
        solution = greedy_cover(SetCoverInstance(1, ()))
        assert not solution.covered

    def test_ratio_beats_size(self):
        # the big set costs 10 for 3 elements, three singletons cost 1 each
        inst = SetCoverInstance.from_sets(
            3, [{0, 1, 2}, {0}, {1}, {2}], weights=[10, 1, 1, 1]
        )
        solution = greedy_cover(inst)
        assert solution.chosen == (1, 2, 3)
        assert solution.total_weight == 3

    def test_tie_goes_to_lower_owner(self):
        inst = SetCoverInstance(
            2,
            (
                CoverSubset(9, frozenset({0, 1})),
                CoverSubset(4, frozenset({0, 1})),
            ),
        )
        solution = greedy_cover(inst)
        assert solution.chosen == (1,)
        assert solution.owners(inst) == [4]

    @settings(max_examples=200, deadline=None)
    @given(inst=set_covers(weighted=True))
    def test_within_harmonic_factor(self, inst):
        solution = greedy_cover(inst)
        assert solution.covered
        assert inst.covers(solution.chosen)
        optimum = exact_cover(inst).total_weight
        assert solution.total_weight <= harmonic(inst.universe_size) * optimum


class TestExact:
    def test_abc(self, abc_cover):
        solution = exact_cover(abc_cover)
        assert solution.total_weight == 2
        assert len(solution.chosen) == 2

    def test_single_subset(self):
        inst = SetCoverInstance.from_sets(2, [{0, 1}], weights=[5])
        solution = exact_cover(inst)
        assert solution.chosen == (0,)
        assert solution.total_weight == 5

    def test_prefers_cheap_singletons(self):
        inst = SetCoverInstance.from_sets(2, [{0}, {1}, {0, 1}], weights=[1, 1, 3])
        solution = exact_cover(inst)
        assert solution.chosen == (0, 1)
        assert solution.total_weight == 2

    def test_infeasible(self):
        solution = exact_cover(SetCoverInstance.from_sets(2, [{0}]))
        assert not solution.covered

    def test_too_many_subsets(self):
        inst = SetCoverInstance.from_sets(1, [{0}] * 26)
        with pytest.raises(TooLarge):
            exact_cover(inst)

    @settings(max_examples=200, deadline=None)
    @given(inst=set_covers(weighted=True))
    def test_matches_brute_force(self, inst):
        solution = exact_cover(inst)
        assert inst.covers(solution.chosen)
        assert solution.total_weight == _brute_force(inst)

    @settings(max_examples=100, deadline=None)
    @given(inst=set_covers())
    def test_unit_weights_minimize_size(self, inst):
        assert len(exact_cover(inst).chosen) == _brute_force(inst)
