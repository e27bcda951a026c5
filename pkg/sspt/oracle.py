"""
Brute-force exact solvers, the ground truth for approximation checks.

Only usable at desk scale: the search enumerates subsets of candidate
non-terminals, so cost grows as ``2^m``.
"""
import logging
import time
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, List, Optional, Sequence, Tuple

from .graph import bfs_tree, reachable_from, reaching
from .instance import Instance
from .steiner import SolutionReport, shortest_path_instance, verify_solution
from .tree import Arborescence
from .utils import (
    DEFAULT_ORACLE_BUDGET,
    ORACLE_BUDGET_ENV,
    ORACLE_TIME_LIMIT_ENV,
    InvariantViolation,
    TerminalUnreachable,
    TooLarge,
    UnreachableTarget,
    env_int,
)

_LOGGER = logging.getLogger(__name__)

# how many subsets are tried between two clock reads
_CLOCK_STRIDE = 256


@dataclass(frozen=True)
class OracleBudget:
    """
    Limits of an exhaustive search

    ``max_nonterminals_enumerated`` largest candidate set the search accepts

    ``time_limit`` seconds before the search gives up, ``None`` for no limit
    """

    max_nonterminals_enumerated: int = DEFAULT_ORACLE_BUDGET
    time_limit: Optional[float] = None

    @classmethod
    def from_env(cls) -> "OracleBudget":
        """
        Reads ``SSPT_ORACLE_BUDGET`` and ``SSPT_ORACLE_TIME_LIMIT``, falling
        back to the defaults
        """
        budget = env_int(ORACLE_BUDGET_ENV, DEFAULT_ORACLE_BUDGET)
        limit = env_int(ORACLE_TIME_LIMIT_ENV, None)
        return cls(
            max_nonterminals_enumerated=budget or 0,
            time_limit=None if limit is None else float(limit),
        )


class _Clock:
    def __init__(self, budget: OracleBudget):
        self._deadline = (
            None if budget.time_limit is None else time.monotonic() + budget.time_limit
        )
        self._ticks = 0

    def tick(self) -> None:
        self._ticks += 1
        if self._deadline is None or self._ticks % _CLOCK_STRIDE:
            return
        if time.monotonic() > self._deadline:
            raise TooLarge("oracle time limit exceeded")


def _candidates(inst: Instance, budget: OracleBudget) -> List[int]:
    """
    Gets the non-terminals that can appear in a minimal tree: reachable from
    the source and reaching some terminal
    """
    g, s, terminals = inst.get_graph(), inst.get_source(), inst.get_terminals()
    useful = reachable_from(g, s) & reaching(g, terminals)
    candidates = sorted(v for v in useful if v != s and v not in terminals)

    try:
        bfs_tree(g, s, terminals)
    except UnreachableTarget as exc:
        raise TerminalUnreachable(exc.vertex) from None

    if len(candidates) > budget.max_nonterminals_enumerated:
        raise TooLarge(
            f"{len(candidates)} candidate non-terminals exceed the budget of "
            f"{budget.max_nonterminals_enumerated}"
        )
    _LOGGER.info("Oracle enumerates subsets of %s candidates", len(candidates))
    return candidates


def _tree_within(inst: Instance, chosen: Sequence[int]) -> Optional[Arborescence]:
    """
    Gets a BFS tree spanning the terminals using only the source, the
    terminals and ``chosen``; ``None`` if some terminal is cut off
    """
    allowed = set(inst.get_terminals()) | set(chosen) | {inst.get_source()}
    try:
        return bfs_tree(
            inst.get_graph(), inst.get_source(), inst.get_terminals(), allowed
        )
    except UnreachableTarget:
        return None


def _subsets(candidates: List[int]) -> Iterator[Tuple[int, ...]]:
    for size in range(len(candidates) + 1):
        yield from combinations(candidates, size)


def exact_uvdst(
    inst: Instance, budget: Optional[OracleBudget] = None
) -> SolutionReport:
    """
    Minimum non-terminal count tree by enumerating candidate subsets in
    increasing size; the first feasible subset (lexicographically smallest
    of its size) is optimal

    Raises ``TooLarge`` past the budget, ``TerminalUnreachable`` when no
    tree exists
    """
    budget = budget or OracleBudget()
    candidates = _candidates(inst, budget)
    clock = _Clock(budget)

    for chosen in _subsets(candidates):
        clock.tick()
        tree = _tree_within(inst, chosen)
        if tree is None:
            continue

        nt = inst.nt_count(tree)
        if nt != len(chosen):
            raise InvariantViolation(
                f"tree over {len(chosen)} candidates has {nt} non-terminals"
            )
        _LOGGER.info("Exact optimum: %s non-terminals", nt)
        return SolutionReport(tree, nt, inst.nt_weight(tree))

    raise TerminalUnreachable(min(inst.get_terminals()))


def exact_vdst(inst: Instance, budget: Optional[OracleBudget] = None) -> SolutionReport:
    """
    Minimum non-terminal weight tree by enumerating every candidate subset;
    ties go to the smaller, then lexicographically smaller subset
    """
    budget = budget or OracleBudget()
    candidates = _candidates(inst, budget)
    clock = _Clock(budget)

    best: Optional[Tuple[int, Arborescence]] = None
    for chosen in _subsets(candidates):
        clock.tick()
        weight = sum(inst.weight_of(v) for v in chosen)
        if best is not None and weight >= best[0]:
            continue
        tree = _tree_within(inst, chosen)
        if tree is None:
            continue
        best = (inst.nt_weight(tree), tree)

    if best is None:
        raise TerminalUnreachable(min(inst.get_terminals()))

    tree = best[1]
    _LOGGER.info("Exact optimum: weight %s", best[0])
    return SolutionReport(tree, inst.nt_count(tree), best[0])


def _checked(inst: Instance, report: SolutionReport) -> SolutionReport:
    verdict = verify_solution(inst, report.tree, require_shortest=True)
    if not verdict.passed:
        raise InvariantViolation(
            f"oracle tree is not a shortest path tree: {verdict.failures}"
        )
    return report


def exact_sspt(inst: Instance, budget: Optional[OracleBudget] = None) -> SolutionReport:
    """
    Exact Steiner shortest path tree: ``exact_uvdst`` on the shortest path
    subgraph pruned to the terminals
    """
    return _checked(inst, exact_uvdst(shortest_path_instance(inst, prune=True), budget))


def exact_weighted_sspt(
    inst: Instance, budget: Optional[OracleBudget] = None
) -> SolutionReport:
    """
    Exact weighted Steiner shortest path tree: ``exact_vdst`` on the pruned
    shortest path subgraph
    """
    return _checked(inst, exact_vdst(shortest_path_instance(inst, prune=True), budget))
