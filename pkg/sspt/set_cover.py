import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import FrozenSet, Iterable, List, Optional, Tuple

from .utils import EXACT_COVER_MAX_SUBSETS, InvariantViolation, TooLarge

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class CoverSubset:
    """
    One subset of a set cover instance

    ``owner`` the vertex this subset belongs to (``N(owner)``)

    ``members`` universe indices covered

    ``weight`` cost of picking the subset
    """

    owner: int
    members: FrozenSet[int]
    weight: int = 1


@dataclass(frozen=True)
class SetCoverInstance:
    """
    Universe ``0 .. universe_size - 1`` and a family of weighted subsets
    """

    universe_size: int
    subsets: Tuple[CoverSubset, ...]

    def __post_init__(self):
        if self.universe_size < 0:
            raise InvariantViolation("universe size must be nonnegative")
        for subset in self.subsets:
            if subset.weight < 0:
                raise InvariantViolation(
                    f"subset of {subset.owner} has negative weight"
                )
            for member in subset.members:
                if not 0 <= member < self.universe_size:
                    raise InvariantViolation(
                        f"member {member} of subset {subset.owner} outside the universe"
                    )

    @classmethod
    def from_sets(
        cls,
        universe_size: int,
        sets: Iterable[Iterable[int]],
        weights: Optional[Iterable[int]] = None,
    ) -> "SetCoverInstance":
        """
        Builds an instance whose subset ``i`` is owned by ``i``
        """
        sets = [frozenset(members) for members in sets]
        weights = list(weights) if weights is not None else [1] * len(sets)
        return cls(
            universe_size,
            tuple(
                CoverSubset(owner, members, weight)
                for owner, (members, weight) in enumerate(zip(sets, weights))
            ),
        )

    def is_unit_weight(self) -> bool:
        """
        Gets if every subset weighs 1
        """
        return all(subset.weight == 1 for subset in self.subsets)

    def covers(self, chosen: Iterable[int]) -> bool:
        """
        Gets if the subsets at indices ``chosen`` cover the universe
        """
        covered: set = set()
        for index in chosen:
            covered |= self.subsets[index].members
        return len(covered) == self.universe_size


@dataclass(frozen=True)
class CoverSolution:
    """
    ``chosen`` subset indices in pick order

    ``covered`` if the chosen subsets cover the universe
    """

    chosen: Tuple[int, ...]
    covered: bool
    total_weight: int

    def owners(self, instance: SetCoverInstance) -> List[int]:
        """
        Gets the owners of the chosen subsets, in pick order
        """
        return [instance.subsets[index].owner for index in self.chosen]


def harmonic(n: int) -> Fraction:
    """
    Gets the n-th harmonic number as an exact fraction
    """
    return sum((Fraction(1, i) for i in range(1, n + 1)), Fraction(0))


def greedy_cover(inst: SetCoverInstance) -> CoverSolution:
    """
    Greedy weighted set cover: repeatedly picks the subset with the smallest
    weight per newly covered element

    Ratios are compared by cross-multiplication; ties go to the lower owner,
    then the lower index. Returns ``covered=False`` when the remaining
    subsets add nothing.
    """
    universe = frozenset(range(inst.universe_size))
    covered: set = set()
    chosen: List[int] = []
    total = 0

    while covered != universe:
        best: Optional[Tuple[int, int, int]] = None  # index, weight, gain
        for index, subset in enumerate(inst.subsets):
            gain = len(subset.members - covered)
            if gain == 0:
                continue
            if best is None:
                best = (index, subset.weight, gain)
                continue

            best_index, best_weight, best_gain = best
            lhs, rhs = subset.weight * best_gain, best_weight * gain
            if lhs < rhs or (
                lhs == rhs and subset.owner < inst.subsets[best_index].owner
            ):
                best = (index, subset.weight, gain)

        if best is None:
            _LOGGER.info(
                "Greedy cover stuck with %s of %s elements covered",
                len(covered),
                inst.universe_size,
            )
            return CoverSolution(tuple(chosen), False, total)

        index = best[0]
        chosen.append(index)
        total += inst.subsets[index].weight
        covered |= inst.subsets[index].members
        _LOGGER.debug(
            "greedy picked subset %s (owner %s)", index, inst.subsets[index].owner
        )

    _LOGGER.info("Greedy cover picked %s subsets, weight %s", len(chosen), total)
    return CoverSolution(tuple(chosen), True, total)


def exact_cover(inst: SetCoverInstance) -> CoverSolution:
    """
    Minimum weight cover by enumeration. Among optimal covers the
    lexicographically smallest index tuple wins

    Raises ``TooLarge`` past ``EXACT_COVER_MAX_SUBSETS`` subsets
    """
    m = len(inst.subsets)
    if m > EXACT_COVER_MAX_SUBSETS:
        raise TooLarge(
            f"exact cover enumerates at most {EXACT_COVER_MAX_SUBSETS} subsets, got {m}"
        )

    full = (1 << inst.universe_size) - 1
    masks = [sum(1 << member for member in subset.members) for subset in inst.subsets]
    weights = [subset.weight for subset in inst.subsets]

    union = 0
    for mask in masks:
        union |= mask
    if union != full:
        return CoverSolution((), False, 0)

    unit = inst.is_unit_weight()
    best: Optional[Tuple[int, Tuple[int, ...]]] = None
    for size in range(m + 1):
        if unit and best is not None:
            break
        for combo in combinations(range(m), size):
            mask = 0
            for index in combo:
                mask |= masks[index]
            if mask != full:
                continue

            weight = sum(weights[index] for index in combo)
            if best is None or (weight, combo) < best:
                best = (weight, combo)
            if unit:
                break

    if best is None:
        raise InvariantViolation("covering union found no cover")
    return CoverSolution(best[1], True, best[0])
