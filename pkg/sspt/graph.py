import heapq
import logging
from collections import deque
from dataclasses import dataclass
from typing import (
    TYPE_CHECKING,
    AbstractSet,
    Dict,
    FrozenSet,
    Iterable,
    List,
    Optional,
    Sequence,
    Tuple,
)

from .tree import Arborescence
from .utils import MAX_EDGE_WEIGHT, InvariantViolation, UnreachableTarget

if TYPE_CHECKING:
    import networkx as nx

_LOGGER = logging.getLogger(__name__)

UNREACHABLE = None

# dist[v] is an int, or UNREACHABLE
Distances = List[Optional[int]]

Edge = Tuple[int, int, int]


class Graph:
    """
    Represents a directed graph with nonnegative integer edge weights

    ``vertex_count`` vertices are numbered ``0 .. vertex_count - 1``

    ``edges`` is an iterable of ``(tail, head, weight)``

    ``directed`` when False every edge is stored as two opposite directed
    edges; the flag is kept for reporting and serialization

    Self-loops are dropped and parallel edges collapse to their minimum
    weight. Instances are immutable.
    """

    def __init__(
        self, vertex_count: int, edges: Iterable[Edge] = (), directed: bool = True
    ):
        if isinstance(vertex_count, bool) or not isinstance(vertex_count, int):
            raise InvariantViolation(
                f"vertex count must be an integer, got {vertex_count!r}"
            )
        if vertex_count < 0:
            raise InvariantViolation(
                f"vertex count must be nonnegative, got {vertex_count}"
            )

        self._vertex_count = vertex_count
        self._directed = bool(directed)

        best: Dict[Tuple[int, int], int] = {}
        for edge in edges:
            tail, head, weight = self._check_edge(edge)
            if tail == head:
                _LOGGER.debug("dropping self-loop at %s", tail)
                continue

            pairs = [(tail, head)] if self._directed else [(tail, head), (head, tail)]
            for pair in pairs:
                if pair not in best or weight < best[pair]:
                    best[pair] = weight

        self._edges: Tuple[Edge, ...] = tuple(
            (u, v, w) for (u, v), w in sorted(best.items())
        )
        self._out: List[List[Tuple[int, int]]] = [[] for _ in range(vertex_count)]
        self._in: List[List[Tuple[int, int]]] = [[] for _ in range(vertex_count)]
        for u, v, w in self._edges:
            self._out[u].append((v, w))
            self._in[v].append((u, w))
        for adjacency in self._in:
            adjacency.sort()

    def _check_edge(self, edge: Sequence[int]) -> Edge:
        """
        Validates one raw edge triple
        """
        if len(edge) != 3:
            raise InvariantViolation(f"edge must be (tail, head, weight), got {edge!r}")

        for item in edge:
            if isinstance(item, bool) or not isinstance(item, int):
                raise InvariantViolation(f"edge fields must be integers, got {edge!r}")

        tail, head, weight = edge
        for vertex in (tail, head):
            if not 0 <= vertex < self._vertex_count:
                raise InvariantViolation(
                    f"edge endpoint {vertex} out of range [0, {self._vertex_count})"
                )
        if not 0 <= weight <= MAX_EDGE_WEIGHT:
            raise InvariantViolation(f"edge weight {weight} out of range [0, 2^40]")

        return int(tail), int(head), int(weight)

    def get_vertex_count(self) -> int:
        """
        Gets the number of vertices
        """
        return self._vertex_count

    def get_edges(self) -> List[Edge]:
        """
        Gets all directed edges sorted by ``(tail, head)``
        """
        return list(self._edges)

    def get_undirected_edges(self) -> List[Edge]:
        """
        Gets one ``(u, v, w)`` with ``u < v`` per undirected edge.
        Only meaningful when the graph was built undirected
        """
        return [(u, v, w) for u, v, w in self._edges if u < v]

    def get_edge_count(self) -> int:
        """
        Gets the number of directed edges
        """
        return len(self._edges)

    def get_directed(self) -> bool:
        """
        Gets if the graph was built as directed
        """
        return self._directed

    def out_edges(self, vertex: int) -> List[Tuple[int, int]]:
        """
        Gets ``(head, weight)`` pairs leaving ``vertex``, ascending by head
        """
        return self._out[vertex]

    def in_edges(self, vertex: int) -> List[Tuple[int, int]]:
        """
        Gets ``(tail, weight)`` pairs entering ``vertex``, ascending by tail
        """
        return self._in[vertex]

    def edge_weight(self, tail: int, head: int) -> Optional[int]:
        """
        Gets the weight of edge ``tail -> head``, ``None`` if absent
        """
        if not 0 <= tail < self._vertex_count:
            return None
        for v, w in self._out[tail]:
            if v == head:
                return w
        return None

    def has_edge(self, tail: int, head: int) -> bool:
        """
        Gets if edge ``tail -> head`` exists
        """
        return self.edge_weight(tail, head) is not None

    def to_networkx(self) -> "nx.DiGraph":
        """
        Converts to a ``networkx.DiGraph`` with a ``weight`` edge attribute
        """
        import networkx as nx

        digraph = nx.DiGraph()
        digraph.add_nodes_from(range(self._vertex_count))
        digraph.add_weighted_edges_from(self._edges)
        return digraph

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self._vertex_count == other._vertex_count
            and self._directed == other._directed
            and self._edges == other._edges
        )

    def __hash__(self) -> int:
        return hash((self._vertex_count, self._directed, self._edges))

    def __repr__(self) -> str:
        return (
            f"Graph(vertex_count={self._vertex_count}, "
            f"edges={len(self._edges)}, directed={self._directed})"
        )


@dataclass(frozen=True)
class SccPartition:
    """
    Strongly-connected components of a graph

    Components are numbered in topological order of the condensation, so
    ``condensation_order`` is always ``(0, 1, ..., component_count - 1)``
    """

    component_of: Tuple[int, ...]
    component_count: int
    condensation_order: Tuple[int, ...]

    def members(self) -> List[List[int]]:
        """
        Gets the ascending vertex list of every component
        """
        groups: List[List[int]] = [[] for _ in range(self.component_count)]
        for vertex, component in enumerate(self.component_of):
            groups[component].append(vertex)
        return groups


def _check_vertex(g: Graph, vertex: int) -> None:
    if not 0 <= vertex < g.get_vertex_count():
        raise InvariantViolation(
            f"vertex {vertex} out of range [0, {g.get_vertex_count()})"
        )


def dijkstra(g: Graph, s: int) -> Distances:
    """
    Gets shortest path distances from ``s``, ``UNREACHABLE`` for vertices
    with no path
    """
    _check_vertex(g, s)

    dist: Distances = [UNREACHABLE] * g.get_vertex_count()
    dist[s] = 0
    heap = [(0, s)]
    done = [False] * g.get_vertex_count()

    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True

        for v, w in g.out_edges(u):
            candidate = d + w
            current = dist[v]
            if current is None or candidate < current:
                dist[v] = candidate
                heapq.heappush(heap, (candidate, v))

    return dist


def bfs_hops(g: Graph, s: int) -> Distances:
    """
    Gets the minimum number of edges on a path from ``s`` to every vertex,
    ignoring weights
    """
    _check_vertex(g, s)

    hops: Distances = [UNREACHABLE] * g.get_vertex_count()
    hops[s] = 0
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for v, _ in g.out_edges(u):
            if hops[v] is None:
                hops[v] = hops[u] + 1  # type: ignore
                queue.append(v)

    return hops


def _tree_from_predecessors(
    s: int,
    pred: Dict[int, Tuple[int, int]],
    targets: Iterable[int],
) -> Arborescence:
    """
    Keeps only the predecessor paths leading to ``targets`` so that every
    leaf is a target
    """
    parent: Dict[int, Tuple[int, int]] = {}
    for target in sorted(set(targets)):
        v = target
        while v != s and v not in parent:
            parent[v] = pred[v]
            v = pred[v][0]

    return Arborescence(s, parent)


def bfs_tree(
    g: Graph,
    s: int,
    targets: AbstractSet[int],
    within: Optional[AbstractSet[int]] = None,
) -> Arborescence:
    """
    Builds a minimum-hop tree from ``s`` to ``targets``, pruned so every
    leaf is a target

    ``within`` (optional) restricts the search to these vertices; ``s`` is
    always allowed

    Neighbors are expanded in ascending id, so the first discoverer of a
    vertex becomes its parent.
    """
    _check_vertex(g, s)

    pred: Dict[int, Tuple[int, int]] = {}
    seen = {s}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for v, w in g.out_edges(u):
            if v in seen or (within is not None and v not in within):
                continue
            seen.add(v)
            pred[v] = (u, w)
            queue.append(v)

    for target in sorted(targets):
        if target not in seen:
            raise UnreachableTarget(target)

    return _tree_from_predecessors(s, pred, targets)


def vertex_weighted_tree(
    g: Graph,
    s: int,
    targets: AbstractSet[int],
    weights: Sequence[int],
) -> Tuple[Arborescence, Distances]:
    """
    Builds a tree of minimum vertex-weight paths from ``s`` to ``targets``

    A path costs the sum of ``weights`` over all of its vertices, ``s``
    included. Ties prefer fewer hops, then the lower predecessor id.

    Returns the tree (leaves are targets) and the path cost of every vertex
    """
    _check_vertex(g, s)

    n = g.get_vertex_count()
    label: List[Optional[Tuple[int, int, int]]] = [None] * n
    label[s] = (weights[s], 0, -1)
    pred: Dict[int, Tuple[int, int]] = {}
    done = [False] * n
    heap = [(weights[s], 0, s)]

    while heap:
        cost, hops, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True

        for v, w in g.out_edges(u):
            if done[v]:
                continue
            candidate = (cost + weights[v], hops + 1, u)
            current = label[v]
            if current is None or candidate < current:
                label[v] = candidate
                pred[v] = (u, w)
                heapq.heappush(heap, (candidate[0], candidate[1], v))

    for target in sorted(targets):
        if label[target] is None:
            raise UnreachableTarget(target)

    costs: Distances = [None if entry is None else entry[0] for entry in label]
    return _tree_from_predecessors(s, pred, targets), costs


def tarjan_scc(g: Graph) -> SccPartition:
    """
    Gets the strongly-connected components of ``g`` with Tarjan's algorithm,
    numbered in topological order of the condensation
    """
    n = g.get_vertex_count()
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: List[int] = []
    found: List[List[int]] = []
    counter = 0

    for root in range(n):
        if index[root] != -1:
            continue

        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        work = [(root, 0)]

        # iterative DFS; each frame is (vertex, next out-edge position)
        while work:
            v, i = work[-1]
            out = g.out_edges(v)
            if i < len(out):
                work[-1] = (v, i + 1)
                w = out[i][0]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue

            work.pop()
            if low[v] == index[v]:
                component = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    component.append(w)
                    if w == v:
                        break
                found.append(component)
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])

    # Tarjan emits components in reverse topological order
    found.reverse()
    component_of = [0] * n
    for number, component in enumerate(found):
        for vertex in component:
            component_of[vertex] = number

    return SccPartition(
        component_of=tuple(component_of),
        component_count=len(found),
        condensation_order=tuple(range(len(found))),
    )


def induced_subgraph(g: Graph, keep: AbstractSet[int]) -> Tuple[Graph, Dict[int, int]]:
    """
    Gets the subgraph induced by ``keep`` and the remapping of kept vertex
    ids onto ``0 .. len(keep) - 1`` (ascending order preserved)
    """
    for vertex in keep:
        _check_vertex(g, vertex)

    remap = {old: new for new, old in enumerate(sorted(keep))}
    edges = [
        (remap[u], remap[v], w)
        for u, v, w in g.get_edges()
        if u in remap and v in remap
    ]
    return Graph(len(remap), edges, directed=g.get_directed()), remap


def reachable_from(g: Graph, s: int) -> FrozenSet[int]:
    """
    Gets every vertex reachable from ``s``, ``s`` included
    """
    hops = bfs_hops(g, s)
    return frozenset(v for v, h in enumerate(hops) if h is not None)


def reaching(g: Graph, targets: Iterable[int]) -> FrozenSet[int]:
    """
    Gets every vertex that reaches at least one of ``targets`` (targets included)
    """
    seen = set(targets)
    queue = deque(sorted(seen))
    while queue:
        v = queue.popleft()
        for u, _ in g.in_edges(v):
            if u not in seen:
                seen.add(u)
                queue.append(u)
    return frozenset(seen)
