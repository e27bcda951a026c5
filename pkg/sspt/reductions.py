import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .graph import Graph, reachable_from, tarjan_scc
from .instance import Instance
from .set_cover import CoverSolution, SetCoverInstance
from .tree import Arborescence
from .utils import InfeasibleCover, InfeasibleTree, NotAcyclic, PreconditionViolated

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class GadgetMap:
    """
    Vertex correspondence of the set cover gadget

    ``set_vertex_of`` vertex of every subset, by subset index

    ``element_vertex_of`` vertex of every universe element

    ``cover_instance`` the set cover instance the gadget was built from
    """

    set_vertex_of: Tuple[int, ...]
    element_vertex_of: Tuple[int, ...]
    source: int
    cover_instance: SetCoverInstance


def gadget_from_set_cover(sc: SetCoverInstance) -> Tuple[Instance, GadgetMap]:
    """
    Builds the hardness gadget of a set cover instance: source ``0``, one
    vertex per subset joined to the source, one terminal per element joined
    to every subset containing it. Undirected, all weights 1.

    Trees rooted at the source correspond one-to-one with covers, with
    non-terminal count equal to cover size.
    """
    m = len(sc.subsets)
    set_vertex_of = tuple(1 + i for i in range(m))
    element_vertex_of = tuple(1 + m + x for x in range(sc.universe_size))

    edges = [(0, set_vertex_of[i], 1) for i in range(m)]
    for i, subset in enumerate(sc.subsets):
        for x in sorted(subset.members):
            edges.append((set_vertex_of[i], element_vertex_of[x], 1))

    graph = Graph(1 + m + sc.universe_size, edges, directed=False)
    _LOGGER.info("Built gadget with %s subsets over %s elements", m, sc.universe_size)
    return (
        Instance(graph, 0, element_vertex_of),
        GadgetMap(set_vertex_of, element_vertex_of, 0, sc),
    )


def map_tree_to_cover(t: Arborescence, gadget_map: GadgetMap) -> CoverSolution:
    """
    Reads the cover off a feasible gadget tree: the subsets whose vertices
    the tree uses

    Raises ``InfeasibleTree`` if the tree does not span every element or the
    subsets it uses do not cover the universe
    """
    if t.get_root() != gadget_map.source:
        raise InfeasibleTree(f"tree root {t.get_root()} is not the gadget source")

    missing = [x for x, v in enumerate(gadget_map.element_vertex_of) if v not in t]
    if missing:
        raise InfeasibleTree(f"element {missing[0]} is not spanned")

    chosen = tuple(i for i, v in enumerate(gadget_map.set_vertex_of) if v in t)
    sc = gadget_map.cover_instance
    if not sc.covers(chosen):
        raise InfeasibleTree("subsets used by the tree do not cover the universe")

    return CoverSolution(
        chosen=chosen,
        covered=True,
        total_weight=sum(sc.subsets[i].weight for i in chosen),
    )


def map_cover_to_tree(cover: CoverSolution, gadget_map: GadgetMap) -> Arborescence:
    """
    Lifts a cover to the gadget tree using exactly the chosen subsets; every
    element hangs off the first chosen subset (by index) containing it

    Raises ``InfeasibleCover`` if ``cover`` leaves an element uncovered
    """
    sc = gadget_map.cover_instance
    parent: Dict[int, Tuple[int, int]] = {}
    for i in sorted(cover.chosen):
        parent[gadget_map.set_vertex_of[i]] = (gadget_map.source, 1)

    for x, vertex in enumerate(gadget_map.element_vertex_of):
        owner: Optional[int] = next(
            (i for i in sorted(cover.chosen) if x in sc.subsets[i].members), None
        )
        if owner is None:
            raise InfeasibleCover(f"element {x} is not covered")
        parent[vertex] = (gadget_map.set_vertex_of[owner], 1)

    return Arborescence(gadget_map.source, parent)


def uvdst_to_dsspt(inst: Instance) -> Instance:
    """
    Gets the directed shortest path tree instance with every edge weight set
    to 0, where every tree is a shortest path tree
    """
    g = inst.get_graph()
    graph = Graph(g.get_vertex_count(), [(u, v, 0) for u, v, _ in g.get_edges()])
    return inst.with_graph(graph)


def longest_hop_distances(inst: Instance) -> List[int]:
    """
    Gets the maximum number of edges on a path from the source to every
    vertex of an acyclic graph where the source reaches everything

    Raises ``NotAcyclic`` or ``PreconditionViolated``
    """
    g, s = inst.get_graph(), inst.get_source()
    partition = tarjan_scc(g)
    if partition.component_count != g.get_vertex_count():
        cycle = next(group for group in partition.members() if len(group) > 1)
        raise NotAcyclic(f"vertices {cycle} lie on a cycle")

    unreached = sorted(set(range(g.get_vertex_count())) - reachable_from(g, s))
    if unreached:
        raise PreconditionViolated(
            f"vertex {unreached[0]} is unreachable from the source"
        )

    order = sorted(range(g.get_vertex_count()), key=lambda v: partition.component_of[v])
    longest = [0] * g.get_vertex_count()
    for u in order:
        for v, _ in g.out_edges(u):
            longest[v] = max(longest[v], longest[u] + 1)
    return longest


def acyclic_uvdst_to_usspt(inst: Instance) -> Instance:
    """
    Gets an undirected shortest path tree instance whose shortest path
    subgraph is the input DAG: edge ``(u, v)`` weighs ``D(v) - D(u)`` where
    ``D`` is the longest hop distance from the source
    """
    longest = longest_hop_distances(inst)
    g = inst.get_graph()
    edges = [(u, v, longest[v] - longest[u]) for u, v, _ in g.get_edges()]
    graph = Graph(g.get_vertex_count(), edges, directed=False)
    return inst.with_graph(graph)


def usspt_to_dsspt(inst: Instance) -> Instance:
    """
    Gets the directed instance with every undirected edge replaced by its
    two directions

    Raises ``PreconditionViolated`` for an instance already flagged directed
    """
    g = inst.get_graph()
    if g.get_directed():
        raise PreconditionViolated("instance is already directed")
    graph = Graph(g.get_vertex_count(), g.get_edges(), directed=True)
    return inst.with_graph(graph)


def vdst_to_dst(inst: Instance) -> Instance:
    """
    Moves vertex weights onto edges: every edge into ``v`` weighs ``W(v)``.
    The edge weight of a tree then equals its non-terminal weight, the
    form edge-weighted directed Steiner tree solvers take
    """
    g = inst.get_graph()
    source = inst.get_source()
    edges = [
        (u, v, 0 if v == source else inst.weight_of(v)) for u, v, _ in g.get_edges()
    ]
    graph = Graph(g.get_vertex_count(), edges)
    return Instance(graph, source, inst.get_terminals())
