from sspt.generators import GeneratorSpec, generate
from sspt.graph import Graph, bfs_tree, dijkstra, tarjan_scc
from sspt.instance import Instance
from sspt.instance_io import (
    load_instance,
    parse_instance,
    parse_solution,
    serialize_instance,
    serialize_solution,
)
from sspt.oracle import OracleBudget, exact_sspt, exact_uvdst, exact_vdst
from sspt.reductions import (
    acyclic_uvdst_to_usspt,
    gadget_from_set_cover,
    usspt_to_dsspt,
    uvdst_to_dsspt,
    vdst_to_dst,
)
from sspt.set_cover import SetCoverInstance, exact_cover, greedy_cover
from sspt.steiner import (
    SolutionReport,
    approx_uvdst,
    approx_vdst,
    solve_sspt,
    solve_weighted_sspt,
    verify_solution,
)
from sspt.subgraph import SpSubgraph, build_sps, prune_to_terminals, shallowness
from sspt.tree import Arborescence
from sspt.utils import SsptError

__all__ = [
    "Graph",
    "Arborescence",
    "Instance",
    "SpSubgraph",
    "SetCoverInstance",
    "SolutionReport",
    "OracleBudget",
    "GeneratorSpec",
    "SsptError",
    "dijkstra",
    "bfs_tree",
    "tarjan_scc",
    "build_sps",
    "prune_to_terminals",
    "shallowness",
    "greedy_cover",
    "exact_cover",
    "approx_uvdst",
    "approx_vdst",
    "solve_sspt",
    "solve_weighted_sspt",
    "verify_solution",
    "exact_uvdst",
    "exact_vdst",
    "exact_sspt",
    "gadget_from_set_cover",
    "uvdst_to_dsspt",
    "acyclic_uvdst_to_usspt",
    "usspt_to_dsspt",
    "vdst_to_dst",
    "generate",
    "load_instance",
    "parse_instance",
    "parse_solution",
    "serialize_instance",
    "serialize_solution",
]
