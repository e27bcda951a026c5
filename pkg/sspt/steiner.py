import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from .graph import (
    bfs_hops,
    bfs_tree,
    dijkstra,
    induced_subgraph,
    tarjan_scc,
    vertex_weighted_tree,
)
from .instance import Instance
from .set_cover import CoverSubset, SetCoverInstance, greedy_cover, harmonic
from .subgraph import build_sps, prune_to_terminals
from .tree import Arborescence
from .utils import (
    InfeasibleCover,
    InvariantViolation,
    PreconditionViolated,
    TerminalUnreachable,
    VerificationReport,
)

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class SourceComponents:
    """
    Strongly-connected components of the terminal-induced subgraph, and the
    covering structure around its source components

    ``components`` terminal sets in topological order

    ``sources`` indices into ``components`` of the components no other
    component reaches; position in this tuple is the set cover universe index

    ``pre_s`` maps each covering vertex to the universe indices it has an
    edge into. The instance source is included when it has such edges.
    """

    components: Tuple[FrozenSet[int], ...]
    sources: Tuple[int, ...]
    pre_s: Dict[int, FrozenSet[int]]

    def source_sets(self) -> List[FrozenSet[int]]:
        """
        Gets the terminal set of every source component, in universe order
        """
        return [self.components[index] for index in self.sources]


@dataclass(frozen=True)
class BoundCertificate:
    """
    Numbers behind the approximation guarantee of one run

    ``radius`` hop radius from the source over every reachable vertex

    ``radius_cover`` hop radius over the chosen covering vertices only

    ``harmonic_bound`` H(universe_size)

    ``cover_size`` chosen covering vertices, the source excluded

    ``cover_weight`` total weight of the chosen covering vertices

    ``bfs_nt`` non-terminals of the tree before covering edges and expansion

    ``weight_ratio`` max of D(v) / W(v) over chosen covering vertices, for
    weighted runs with positive weights; ``None`` otherwise

    ``weighted`` whether the run minimized vertex weight
    """

    radius: int
    radius_cover: int
    harmonic_bound: Fraction
    universe_size: int
    cover_size: int
    cover_weight: int
    bfs_nt: int
    weight_ratio: Optional[Fraction] = None
    weighted: bool = False

    def bound_factor(self) -> Optional[Fraction]:
        """
        Gets the factor over OPT the run is within: ``R * H(|S|)`` for uniform
        runs, ``rho * H(|S|)`` for weighted ones

        A weighted run with a zero-weight covering vertex has no ``rho`` and
        so no bound; that gives ``None``
        """
        if not self.weighted:
            return self.radius * self.harmonic_bound
        if self.weight_ratio is None:
            return None
        return self.weight_ratio * self.harmonic_bound


@dataclass(frozen=True)
class SolutionReport:
    """
    A feasible tree with its objective values

    ``cover_owners`` the chosen covering vertices in pick order (empty for
    exact solutions)

    ``certificate`` is ``None`` for exact solutions
    """

    tree: Arborescence
    nt_count: int
    nt_weight: int
    certificate: Optional[BoundCertificate] = None
    cover_owners: Tuple[int, ...] = ()


def _check_terminals_reachable(inst: Instance) -> List[Optional[int]]:
    hops = bfs_hops(inst.get_graph(), inst.get_source())
    for t in sorted(inst.get_terminals()):
        if hops[t] is None:
            raise TerminalUnreachable(t)
    return hops


def source_components(inst: Instance) -> SourceComponents:
    """
    Finds the source components of the terminal-induced subgraph and, in one
    edge scan, every reachable non-terminal with edges into them
    """
    g = inst.get_graph()
    terminals = inst.get_terminals()

    induced, remap = induced_subgraph(g, terminals)
    original = sorted(remap)
    partition = tarjan_scc(induced)

    components = tuple(
        frozenset(original[local] for local in group) for group in partition.members()
    )
    entered = set()
    for u, v, _ in induced.get_edges():
        cu, cv = partition.component_of[u], partition.component_of[v]
        if cu != cv:
            entered.add(cv)
    # universe order follows the lowest terminal of each source component
    sources = tuple(
        sorted(
            (c for c in range(partition.component_count) if c not in entered),
            key=lambda c: min(components[c]),
        )
    )

    position_of: Dict[int, int] = {}
    for position, c in enumerate(sources):
        for t in components[c]:
            position_of[t] = position

    hops = bfs_hops(g, inst.get_source())
    neighborhoods: Dict[int, Set[int]] = {}
    for u, v, _ in g.get_edges():
        if u in terminals or hops[u] is None or v not in position_of:
            continue
        neighborhoods.setdefault(u, set()).add(position_of[v])

    _LOGGER.info(
        "Found %s terminal components, %s of them sources, %s covering vertices",
        len(components),
        len(sources),
        len(neighborhoods),
    )
    return SourceComponents(
        components=components,
        sources=sources,
        pre_s={v: frozenset(members) for v, members in sorted(neighborhoods.items())},
    )


def build_cover_instance(
    inst: Instance, sc: SourceComponents, weighted: Optional[bool] = None
) -> SetCoverInstance:
    """
    Builds the set cover instance over the source components: one subset
    ``N(v)`` per covering vertex ``v``, owned by ``v``

    ``weighted`` uses vertex weights as subset weights (default: when the
    instance has them); otherwise every subset weighs 1. The source always
    weighs 0.
    """
    if weighted is None:
        weighted = inst.is_weighted()

    subsets = []
    for owner, members in sorted(sc.pre_s.items()):
        if owner == inst.get_source():
            weight = 0
        elif weighted:
            weight = inst.weight_of(owner)
        else:
            weight = 1
        subsets.append(CoverSubset(owner, members, weight))

    return SetCoverInstance(len(sc.sources), tuple(subsets))


def _covering_edges(
    inst: Instance, sc: SourceComponents, chosen: List[int]
) -> List[Tuple[int, int, int]]:
    """
    Picks for every source component the lowest ``(v, t)`` edge with ``v``
    among the chosen covering vertices and ``t`` in the component
    """
    g = inst.get_graph()
    picked: List[Tuple[int, int, int]] = []
    for members in sc.source_sets():
        candidates = [
            (v, t, w)
            for v in sorted(chosen)
            for t, w in g.out_edges(v)
            if t in members
        ]
        if not candidates:
            raise InfeasibleCover(
                f"no chosen vertex covers component {sorted(members)}"
            )
        picked.append(min(candidates))
    return picked


def expand_to_all_terminals(
    inst: Instance, sc: SourceComponents, t: Arborescence
) -> Arborescence:
    """
    Extends ``t``, which spans a terminal of every source component, to span
    all terminals without adding non-terminals

    Runs a DFS forest inside the terminal-induced subgraph from the lowest
    spanned terminal of each source component and grafts every forest edge
    whose head is not yet in the tree.

    Raises ``PreconditionViolated`` naming an unspanned source component
    """
    g = inst.get_graph()
    terminals = inst.get_terminals()

    roots = []
    for members in sc.source_sets():
        spanned = sorted(v for v in members if v in t)
        if not spanned:
            raise PreconditionViolated(
                f"source component {sorted(members)} has no spanned terminal"
            )
        roots.append(spanned[0])

    parent = t.get_parent_map()
    in_tree = set(t.get_vertices())
    visited: Set[int] = set()
    for root in roots:
        if root in visited:
            continue
        visited.add(root)
        stack = [(root, iter([(v, w) for v, w in g.out_edges(root) if v in terminals]))]
        while stack:
            vertex, neighbors = stack[-1]
            step = next(neighbors, None)
            if step is None:
                stack.pop()
                continue

            head, weight = step
            if head in visited:
                continue
            visited.add(head)
            if head not in in_tree:
                parent[head] = (vertex, weight)
                in_tree.add(head)
            stack.append(
                (head, iter([(v, w) for v, w in g.out_edges(head) if v in terminals]))
            )

    expanded = Arborescence(t.get_root(), parent)
    before, after = inst.nt_count(t), inst.nt_count(expanded)
    if before != after:
        raise InvariantViolation(
            f"expansion changed the non-terminal count from {before} to {after}"
        )
    return expanded


def _weight_ratio(
    inst: Instance, owners: List[int], costs: List[Optional[int]]
) -> Optional[Fraction]:
    """
    Gets max D(v) / W(v) over non-source owners, D excluding the source weight
    """
    s = inst.get_source()
    base = costs[s] or 0
    ratio = Fraction(0)
    for v in owners:
        if v == s:
            continue
        cost = costs[v]
        if inst.weight_of(v) == 0 or cost is None:
            return None
        ratio = max(ratio, Fraction(cost - base, inst.weight_of(v)))
    return ratio


def _run_cover_pipeline(inst: Instance, weighted: bool) -> SolutionReport:
    """
    Shared body of ``approx_uvdst`` and ``approx_vdst``
    """
    g, s = inst.get_graph(), inst.get_source()
    hops = _check_terminals_reachable(inst)
    radius = max(h for h in hops if h is not None)

    if not inst.get_terminals():
        _LOGGER.warning("Instance has no terminals, returning the trivial tree")
        tree = Arborescence(s)
        certificate = BoundCertificate(
            radius,
            0,
            Fraction(0),
            0,
            0,
            0,
            0,
            weight_ratio=Fraction(0) if weighted else None,
            weighted=weighted,
        )
        return SolutionReport(tree, 0, 0, certificate)

    sc = source_components(inst)
    cover_inst = build_cover_instance(inst, sc, weighted=weighted)
    cover = greedy_cover(cover_inst)
    if not cover.covered:
        raise InfeasibleCover("set cover over source components has no solution")

    owners = cover.owners(cover_inst)
    targets = set(owners)

    weight_ratio = None
    if weighted:
        base, costs = vertex_weighted_tree(g, s, targets, inst.weights())
        weight_ratio = _weight_ratio(inst, owners, costs)
    else:
        base = bfs_tree(g, s, targets)
    bfs_nt = inst.nt_count(base)

    parent = base.get_parent_map()
    for v, t, w in _covering_edges(inst, sc, owners):
        if t not in base:
            parent[t] = (v, w)
    covered_tree = Arborescence(s, parent)

    tree = expand_to_all_terminals(inst, sc, covered_tree)
    nt_count, nt_weight = inst.nt_count(tree), inst.nt_weight(tree)
    if nt_count != bfs_nt:
        raise InvariantViolation(
            f"tree has {nt_count} non-terminals, its path tree had {bfs_nt}"
        )

    certificate = BoundCertificate(
        radius=radius,
        radius_cover=max(hops[v] or 0 for v in owners),
        harmonic_bound=harmonic(cover_inst.universe_size),
        universe_size=cover_inst.universe_size,
        cover_size=sum(1 for v in owners if v != s),
        cover_weight=sum(inst.weight_of(v) for v in owners if v != s),
        bfs_nt=bfs_nt,
        weight_ratio=weight_ratio,
        weighted=weighted,
    )
    _LOGGER.info("Tree spans %s vertices with %s non-terminals", len(tree), nt_count)
    return SolutionReport(tree, nt_count, nt_weight, certificate, tuple(owners))


def approx_uvdst(inst: Instance) -> SolutionReport:
    """
    Approximates the minimum non-terminal directed Steiner tree: cover the
    source components greedily, connect the covering vertices by a BFS tree,
    attach the covering edges, then expand inside the terminals

    Vertex weights, if any, are ignored.

    Raises ``TerminalUnreachable`` when some terminal cannot be reached
    """
    _LOGGER.info("Running cover approximation on %s", inst)
    return _run_cover_pipeline(inst, weighted=False)


def approx_vdst(inst: Instance) -> SolutionReport:
    """
    Weighted version of ``approx_uvdst``: weighted greedy cover and a
    minimum vertex-weight path tree instead of the BFS tree

    Instances without vertex weights are treated as uniform.
    """
    if not inst.is_weighted():
        _LOGGER.info("Instance has no vertex weights, using weight 1 for non-terminals")
    return _run_cover_pipeline(inst, weighted=True)


def shortest_path_instance(inst: Instance, prune: bool = True) -> Instance:
    """
    Gets ``inst`` over its shortest path subgraph, pruned to the terminals
    when ``prune`` is set. Solving it as an unweighted directed instance
    solves the shortest path tree problem on ``inst``
    """
    _check_terminals_reachable(inst)
    sps = build_sps(inst.get_graph(), inst.get_source())
    if prune:
        sps = prune_to_terminals(sps, inst.get_terminals())
    return inst.with_graph(sps.get_graph())


def solve_sspt(inst: Instance, prune: bool = True) -> SolutionReport:
    """
    Approximates the Steiner shortest path tree: runs ``approx_uvdst`` on the
    shortest path subgraph (pruned to the terminals unless ``prune`` is
    False). Every root path of the result is a shortest path in ``inst``

    Vertex ids are shared with ``inst``, so the tree needs no remapping.
    """
    return approx_uvdst(shortest_path_instance(inst, prune))


def solve_weighted_sspt(inst: Instance, prune: bool = True) -> SolutionReport:
    """
    Like ``solve_sspt`` but minimizes the total non-terminal weight with
    ``approx_vdst``
    """
    return approx_vdst(shortest_path_instance(inst, prune))


def verify_solution(
    inst: Instance, t: Arborescence, require_shortest: bool = False
) -> VerificationReport:
    """
    Checks that ``t`` is an arborescence rooted at the source, uses only
    edges of the instance graph, spans every terminal and, with
    ``require_shortest``, that every tree path is a shortest path
    """
    report = VerificationReport()
    g, s = inst.get_graph(), inst.get_source()
    n = g.get_vertex_count()

    if t.get_root() != s:
        report.fail(
            f"tree is rooted at {t.get_root()}, not at source {s}", t.get_root()
        )
        return report

    for u, v, w in t.get_edges():
        if not (0 <= u < n and 0 <= v < n):
            report.fail(f"edge ({u}, {v}) leaves the vertex range", (u, v, w))
            return report
        actual = g.edge_weight(u, v)
        if actual is None:
            report.fail(f"edge ({u}, {v}) is not in the graph", (u, v, w))
        elif actual != w:
            report.fail(f"edge ({u}, {v}) weighs {actual}, tree says {w}", (u, v, w))

    depth: Dict[int, int] = {s: 0}
    for v in t.get_vertices():
        try:
            path = t.path_to(v)
        except InvariantViolation as exc:
            report.fail(str(exc), v)
            continue
        total = 0
        for u, x in zip(path, path[1:]):
            total += g.edge_weight(u, x) or 0
        depth[v] = total

    missing = sorted(x for x in inst.get_terminals() if x not in t)
    if missing:
        report.fail(f"terminal {missing[0]} is not spanned", missing[0])

    if require_shortest and report.passed:
        dist = dijkstra(g, s)
        for v in sorted(depth):
            if depth[v] != dist[v]:
                report.fail(
                    f"tree path to {v} weighs {depth[v]}, shortest is {dist[v]}", v
                )

    return report

