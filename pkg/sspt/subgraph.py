import logging
from collections import deque
from dataclasses import dataclass
from typing import AbstractSet, Dict, FrozenSet, List, Optional, Tuple

import networkx as nx
import numpy as np

from .graph import Distances, Graph, bfs_hops, dijkstra, tarjan_scc
from .utils import (
    DEFAULT_PATH_SAMPLES,
    TerminalUnreachable,
    UnreachableTarget,
    VerificationReport,
)

_LOGGER = logging.getLogger(__name__)

RELEVANT_ALL = "all-reachable"
RELEVANT_GIVEN = "given"


class SpSubgraph:
    """
    Represents the shortest path subgraph of a graph from ``source``: every
    reachable vertex and every edge lying on some shortest path

    Vertex ids are the ones of the original graph; dropped vertices keep
    their id but have no incident edges. Every edge keeps its original
    weight.

    ``graph`` the retained edges

    ``source`` the root

    ``dist`` distances measured in the original graph

    ``vertex_set`` the retained vertices
    """

    def __init__(
        self,
        graph: Graph,
        source: int,
        dist: Distances,
        vertex_set: AbstractSet[int],
    ):
        self._graph = graph
        self._source = source
        self._dist: Tuple[Optional[int], ...] = tuple(dist)
        self._vertex_set: FrozenSet[int] = frozenset(vertex_set)

    def get_graph(self) -> Graph:
        """
        Gets the retained edges as a directed graph on the original ids
        """
        return self._graph

    def get_source(self) -> int:
        """
        Gets the source vertex
        """
        return self._source

    def get_distances(self) -> Distances:
        """
        Gets distances from the source in the original graph
        """
        return list(self._dist)

    def get_vertex_set(self) -> FrozenSet[int]:
        """
        Gets the retained vertices
        """
        return self._vertex_set

    def get_layers(self) -> List[List[int]]:
        """
        Groups retained vertices by distance, nearest layer first
        """
        layers: Dict[int, List[int]] = {}
        for vertex in sorted(self._vertex_set):
            layers.setdefault(self._dist[vertex], []).append(vertex)  # type: ignore
        return [layers[d] for d in sorted(layers)]

    def get_zero_weight_components(self) -> List[List[int]]:
        """
        Gets the strongly-connected components with more than one vertex.
        They only exist when the original graph has a zero-weight cycle
        """
        partition = tarjan_scc(self._graph)
        return [group for group in partition.members() if len(group) > 1]

    def is_acyclic(self) -> bool:
        """
        Gets if the subgraph has no directed cycle
        """
        return not self.get_zero_weight_components()

    def __repr__(self) -> str:
        return (
            f"SpSubgraph(source={self._source}, vertices={len(self._vertex_set)}, "
            f"edges={self._graph.get_edge_count()})"
        )


@dataclass(frozen=True)
class ShallownessReport:
    """
    Hop radius of a graph and of its shortest path subgraph over ``relevant_set``

    ``relevant_label`` records what the maximum ranges over
    """

    radius_hops: int
    sp_radius_hops: int
    relevant_set: FrozenSet[int]
    relevant_label: str


def build_sps(g: Graph, s: int) -> SpSubgraph:
    """
    Builds the shortest path subgraph of ``g`` rooted at ``s``: reachable
    vertices plus every edge ``(u, v)`` with ``d(u) + w(u, v) = d(v)``
    """
    _LOGGER.info("Building shortest path subgraph from %s...", s)
    dist = dijkstra(g, s)

    edges = []
    for u, v, w in g.get_edges():
        du = dist[u]
        if du is not None and du + w == dist[v]:
            edges.append((u, v, w))

    vertex_set = {v for v, d in enumerate(dist) if d is not None}
    _LOGGER.info(
        "Kept %s of %s edges over %s vertices",
        len(edges),
        g.get_edge_count(),
        len(vertex_set),
    )
    return SpSubgraph(Graph(g.get_vertex_count(), edges), s, dist, vertex_set)


def prune_to_terminals(sps: SpSubgraph, x: AbstractSet[int]) -> SpSubgraph:
    """
    Prunes ``sps`` to the vertices and edges on some walk through ``sps`` from
    the source to a vertex of ``x``, by a reverse scan from ``x``. Zero-weight
    cycles that lead into ``x`` are kept whole, including back through the
    source

    Raises ``TerminalUnreachable`` for a vertex of ``x`` missing from ``sps``
    """
    for t in sorted(x):
        if t not in sps.get_vertex_set():
            raise TerminalUnreachable(t)

    graph = sps.get_graph()
    marked = set(x)
    queue = deque(sorted(x))
    while queue:
        v = queue.popleft()
        for u, _ in graph.in_edges(v):
            if u not in marked:
                marked.add(u)
                queue.append(u)
    marked.add(sps.get_source())

    edges = [(u, v, w) for u, v, w in graph.get_edges() if u in marked and v in marked]
    _LOGGER.info(
        "Pruned to %s terminals: %s vertices, %s edges",
        len(x),
        len(marked),
        len(edges),
    )
    return SpSubgraph(
        Graph(graph.get_vertex_count(), edges),
        sps.get_source(),
        sps.get_distances(),
        marked,
    )


def _radius(hops: Distances, relevant: AbstractSet[int]) -> int:
    radius = 0
    for v in sorted(relevant):
        h = hops[v]
        if h is None:
            raise UnreachableTarget(v)
        radius = max(radius, h)
    return radius


def shallowness(
    g: Graph, s: int, relevant: Optional[AbstractSet[int]] = None
) -> ShallownessReport:
    """
    Gets the hop radius from ``s`` in ``g`` and in its shortest path subgraph

    ``relevant`` vertices the maximum ranges over; ``None`` means every
    vertex reachable from ``s``
    """
    hops = bfs_hops(g, s)
    if relevant is None:
        label = RELEVANT_ALL
        relevant = {v for v, h in enumerate(hops) if h is not None}
    else:
        label = RELEVANT_GIVEN

    radius = _radius(hops, relevant)
    sp_radius = _radius(bfs_hops(build_sps(g, s).get_graph(), s), relevant)

    return ShallownessReport(
        radius_hops=radius,
        sp_radius_hops=sp_radius,
        relevant_set=frozenset(relevant),
        relevant_label=label,
    )


def verify_sps(
    g: Graph,
    sps: SpSubgraph,
    samples: int = DEFAULT_PATH_SAMPLES,
    seed: int = 0,
) -> VerificationReport:
    """
    Checks ``sps`` against distances recomputed independently with
    Bellman-Ford: every retained edge qualifies, every qualifying edge is
    retained, and ``samples`` random paths inside ``sps`` weigh exactly
    ``dist[y] - dist[x]``
    """
    report = VerificationReport()
    s = sps.get_source()

    lengths = nx.single_source_bellman_ford_path_length(g.to_networkx(), s)
    dist: Distances = [lengths.get(v) for v in range(g.get_vertex_count())]

    if sps.get_distances() != dist:
        first = next(
            v for v, d in enumerate(sps.get_distances()) if d != dist[v]
        )
        report.fail(f"recorded distance of {first} disagrees", first)

    expected_vertices = {v for v, d in enumerate(dist) if d is not None}
    if not expected_vertices <= sps.get_vertex_set():
        missing = min(expected_vertices - sps.get_vertex_set())
        report.fail(f"reachable vertex {missing} missing", missing)

    retained = set(sps.get_graph().get_edges())
    for u, v, w in sorted(retained):
        du = dist[u]
        if g.edge_weight(u, v) != w or du is None or du + w != dist[v]:
            report.fail(f"edge ({u}, {v}) is not on a shortest path", (u, v, w))

    for u, v, w in g.get_edges():
        du = dist[u]
        if du is not None and du + w == dist[v] and (u, v, w) not in retained:
            report.fail(f"qualifying edge ({u}, {v}) is missing", (u, v, w))

    _check_sampled_paths(sps, dist, samples, seed, report)
    return report


def _check_sampled_paths(
    sps: SpSubgraph,
    dist: Distances,
    samples: int,
    seed: int,
    report: VerificationReport,
) -> None:
    """
    Random walks inside ``sps``; each walk prefix is a path whose weight
    must telescope to ``dist[end] - dist[start]``
    """
    graph = sps.get_graph()
    starts = sorted(v for v in sps.get_vertex_set() if graph.out_edges(v))
    if not starts:
        return

    rng = np.random.Generator(np.random.PCG64(seed))
    for _ in range(samples):
        start = starts[int(rng.integers(len(starts)))]
        current, weight, visited = start, 0, {start}
        while graph.out_edges(current):
            choices = graph.out_edges(current)
            head, w = choices[int(rng.integers(len(choices)))]
            if head in visited:
                break
            visited.add(head)
            weight += w
            current = head
            d_start, d_end = dist[start], dist[current]
            if d_start is None or d_end is None or weight != d_end - d_start:
                report.fail(
                    f"path {start} -> {current} weighs {weight}, "
                    f"expected {d_end} - {d_start}",
                    (start, current),
                )
                return
