import networkx as nx
import pytest
from hypothesis import HealthCheck, given, settings

from sspt.generators import GeneratorSpec, generate
from sspt.graph import Graph, reachable_from
from sspt.instance_io import serialize_sps
from sspt.subgraph import (
    RELEVANT_ALL,
    RELEVANT_GIVEN,
    SpSubgraph,
    build_sps,
    prune_to_terminals,
    shallowness,
    verify_sps,
)
from sspt.utils import TerminalUnreachable

from .strategies import graphs, nx_distances, tight_edges

PROPERTY_SETTINGS = settings(
    max_examples=150,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)


def _edge_pairs(sps: SpSubgraph):
    return {(u, v) for u, v, _ in sps.get_graph().get_edges()}


class TestBuildSps:
    def test_four_cycle_matches_golden_file(self, four_cycle, golden_dir):
        text = serialize_sps(build_sps(four_cycle, 0))
        assert text == (golden_dir / "four_cycle_sps.json").read_text()

    def test_four_cycle_keeps_two_paths(self, four_cycle):
        sps = build_sps(four_cycle, 0)
        assert _edge_pairs(sps) == {(0, 1), (1, 2), (0, 3), (3, 2)}
        assert sps.get_layers() == [[0], [1, 3], [2]]
        assert sps.is_acyclic()

    def test_single_edge(self):
        sps = build_sps(Graph(2, [(0, 1, 7)]), 0)
        assert sps.get_graph().get_edges() == [(0, 1, 7)]

    def test_long_direct_edge_is_dropped(self):
        sps = build_sps(Graph(3, [(0, 1, 5), (0, 2, 1), (2, 1, 2)]), 0)
        assert _edge_pairs(sps) == {(0, 2), (2, 1)}

    def test_unreachable_vertices_are_left_out(self):
        sps = build_sps(Graph(3, [(0, 1, 1), (2, 1, 1)]), 0)
        assert sps.get_vertex_set() == {0, 1}
        assert sps.get_distances() == [0, 1, None]
        assert _edge_pairs(sps) == {(0, 1)}

    def test_zero_weight_cycle_is_reported(self):
        g = Graph(3, [(0, 1, 0), (1, 2, 0), (2, 1, 0)])
        sps = build_sps(g, 0)
        assert sps.get_zero_weight_components() == [[1, 2]]
        assert not sps.is_acyclic()

    @PROPERTY_SETTINGS
    @given(g=graphs(max_vertices=9, max_weight=6))
    def test_keeps_exactly_the_tight_edges(self, g):
        sps = build_sps(g, 0)
        assert _edge_pairs(sps) == tight_edges(g, 0)
        assert sps.get_vertex_set() == reachable_from(g, 0)

    def test_generated_graphs_keep_the_tight_edges(self):
        for seed in range(500):
            n = 2 + seed % 59
            spec = GeneratorSpec(
                "random-gnp",
                seed=seed,
                n=n,
                p=min(1.0, 3 / n),
                min_weight=0,
                max_weight=10,
            )
            g = generate(spec).get_graph()
            assert _edge_pairs(build_sps(g, 0)) == tight_edges(g, 0), seed

    @PROPERTY_SETTINGS
    @given(g=graphs(max_vertices=7, max_weight=4))
    def test_every_path_is_shortest(self, g):
        sps = build_sps(g, 0)
        dist = sps.get_distances()
        digraph = sps.get_graph().to_networkx()

        for x in sorted(sps.get_vertex_set()):
            between = nx_distances(g, x)
            for y in sorted(reachable_from(sps.get_graph(), x) - {x}):
                assert between[y] == dist[y] - dist[x]
                for path in nx.all_simple_paths(digraph, x, y):
                    weight = sum(
                        g.edge_weight(u, v) for u, v in zip(path, path[1:])
                    )
                    assert weight == between[y]

    @pytest.mark.parametrize("seed", range(10))
    def test_generated_paths_are_shortest(self, seed):
        spec = GeneratorSpec("shallow-random", seed=seed, n=12, p=0.2, radius=3)
        g = generate(spec).get_graph()
        sps = build_sps(g, 0)
        dist = sps.get_distances()
        for x in sorted(sps.get_vertex_set()):
            between = nx_distances(g, x)
            for y in reachable_from(sps.get_graph(), x):
                assert between[y] == dist[y] - dist[x]


class TestPrune:
    def test_four_cycle_to_one_neighbor(self, four_cycle):
        pruned = prune_to_terminals(build_sps(four_cycle, 0), {1})
        assert pruned.get_vertex_set() == {0, 1}
        assert pruned.get_graph().get_edges() == [(0, 1, 1)]

    def test_diamond_survives(self, diamond):
        pruned = prune_to_terminals(build_sps(diamond, 0), {3})
        assert pruned.get_graph().get_edges() == diamond.get_edges()

    def test_all_vertices_leave_it_unchanged(self, four_cycle):
        sps = build_sps(four_cycle, 0)
        pruned = prune_to_terminals(sps, {1, 2, 3})
        assert pruned.get_graph() == sps.get_graph()
        assert pruned.get_vertex_set() == sps.get_vertex_set()

    def test_unreachable_terminal(self):
        sps = build_sps(Graph(3, [(0, 1, 1)]), 0)
        with pytest.raises(TerminalUnreachable) as info:
            prune_to_terminals(sps, {2})
        assert info.value.vertex == 2

    def test_zero_cycle_back_through_the_source(self):
        g = Graph(3, [(0, 1, 0), (1, 0, 0), (0, 2, 0), (2, 0, 0)])
        pruned = prune_to_terminals(build_sps(g, 0), {1})
        assert pruned.get_vertex_set() == {0, 1, 2}
        assert _edge_pairs(pruned) == {(0, 1), (1, 0), (0, 2), (2, 0)}

    def test_zero_cycle_past_the_terminal(self):
        g = Graph(3, [(0, 1, 1), (1, 2, 0), (2, 1, 0)])
        pruned = prune_to_terminals(build_sps(g, 0), {1})
        assert pruned.get_vertex_set() == {0, 1, 2}

    def test_no_terminals_keeps_the_source(self, four_cycle):
        pruned = prune_to_terminals(build_sps(four_cycle, 0), set())
        assert pruned.get_vertex_set() == {0}
        assert pruned.get_graph().get_edges() == []

    @PROPERTY_SETTINGS
    @given(g=graphs(max_vertices=8, max_weight=4))
    def test_matches_brute_force(self, g):
        sps = build_sps(g, 0)
        x = {v for v in sps.get_vertex_set() if v % 2 == 1}
        pruned = prune_to_terminals(sps, x)

        digraph = sps.get_graph().to_networkx()
        expected = {0} | x
        for t in x:
            expected |= nx.ancestors(digraph, t)
        assert pruned.get_vertex_set() == expected
        assert _edge_pairs(pruned) == {
            (u, v) for u, v in _edge_pairs(sps) if u in expected and v in expected
        }


class TestShallowness:
    def test_star(self):
        g = Graph(4, [(0, 1, 1), (0, 2, 1), (0, 3, 1)])
        report = shallowness(g, 0, {1, 2, 3})
        assert (report.radius_hops, report.sp_radius_hops) == (1, 1)
        assert report.relevant_label == RELEVANT_GIVEN

    def test_four_cycle(self, four_cycle):
        report = shallowness(four_cycle, 0, {2})
        assert (report.radius_hops, report.sp_radius_hops) == (2, 2)

    def test_tight_shortcut(self):
        g = Graph(3, [(0, 1, 1), (1, 2, 1), (0, 2, 2)])
        report = shallowness(g, 0, {2})
        assert (report.radius_hops, report.sp_radius_hops) == (1, 1)

    def test_loose_shortcut_deepens_the_subgraph(self):
        g = Graph(3, [(0, 1, 1), (1, 2, 1), (0, 2, 5)])
        report = shallowness(g, 0, {2})
        assert (report.radius_hops, report.sp_radius_hops) == (1, 2)

    def test_defaults_to_reachable_vertices(self):
        g = Graph(4, [(0, 1, 1), (1, 2, 1)])
        report = shallowness(g, 0)
        assert report.relevant_set == {0, 1, 2}
        assert report.relevant_label == RELEVANT_ALL
        assert report.radius_hops == 2


class TestVerifySps:
    @PROPERTY_SETTINGS
    @given(g=graphs(max_vertices=8))
    def test_built_subgraph_passes(self, g):
        report = verify_sps(g, build_sps(g, 0))
        assert report.passed, report.failures

    def test_extra_edge_fails(self, four_cycle):
        sps = build_sps(four_cycle, 0)
        tampered = SpSubgraph(
            Graph(4, sps.get_graph().get_edges() + [(2, 1, 1)]),
            0,
            sps.get_distances(),
            sps.get_vertex_set(),
        )
        report = verify_sps(four_cycle, tampered)
        assert not report.passed
        assert report.witness == (2, 1, 1)

    def test_missing_edge_fails(self, four_cycle):
        sps = build_sps(four_cycle, 0)
        kept = [edge for edge in sps.get_graph().get_edges() if edge != (3, 2, 1)]
        tampered = SpSubgraph(
            Graph(4, kept), 0, sps.get_distances(), sps.get_vertex_set()
        )
        report = verify_sps(four_cycle, tampered)
        assert not report.passed
        assert report.witness == (3, 2, 1)

    def test_wrong_distance_fails(self, diamond):
        sps = build_sps(diamond, 0)
        tampered = SpSubgraph(sps.get_graph(), 0, [0, 1, 1, 3], sps.get_vertex_set())
        report = verify_sps(diamond, tampered)
        assert not report.passed
        assert report.witness == 3
