import pytest

from sspt.generators import FAMILIES, GeneratorSpec, generate
from sspt.graph import bfs_hops, reachable_from
from sspt.subgraph import shallowness
from sspt.utils import InvalidSpec


@pytest.mark.parametrize("family", FAMILIES)
def test_same_seed_same_instance(family):
    spec = GeneratorSpec(family, seed=17)
    assert generate(spec) == generate(spec)


@pytest.mark.parametrize("family", FAMILIES)
@pytest.mark.parametrize("seed", range(5))
def test_terminals_are_reachable(family, seed):
    inst = generate(GeneratorSpec(family, seed=seed, n=12, p=0.2))
    reachable = reachable_from(inst.get_graph(), inst.get_source())
    assert inst.get_terminals() <= reachable
    assert inst.get_source() not in inst.get_terminals()


def test_full_layers():
    inst = generate(GeneratorSpec("layered", widths=(1, 3, 3), p=1.0))
    g = inst.get_graph()
    assert g.get_vertex_count() == 7
    assert g.get_edge_count() == 3 + 9
    assert shallowness(g, 0).radius_hops == 2


def test_sparse_layers_stay_connected():
    inst = generate(GeneratorSpec("layered", seed=4, widths=(1, 4, 4, 4), p=0.0))
    assert reachable_from(inst.get_graph(), 0) == set(range(13))


@pytest.mark.parametrize("seed", range(8))
@pytest.mark.parametrize("radius", [1, 2, 4])
def test_shallow_random_respects_the_radius(seed, radius):
    spec = GeneratorSpec("shallow-random", seed=seed, n=20, radius=radius, p=0.05)
    hops = bfs_hops(generate(spec).get_graph(), 0)
    assert all(h is not None for h in hops)
    assert max(hops) <= radius


def test_grid():
    inst = generate(GeneratorSpec("grid", rows=3, cols=4))
    g = inst.get_graph()
    assert not g.get_directed()
    assert g.get_vertex_count() == 12
    assert len(g.get_undirected_edges()) == 3 * 3 + 4 * 2


def test_gadget():
    inst = generate(GeneratorSpec("gadget", seed=1, subsets=5, universe=4))
    assert inst.get_graph().get_vertex_count() == 1 + 5 + 4
    assert inst.get_terminals() == {6, 7, 8, 9}


def test_vertex_weights():
    spec = GeneratorSpec("random-gnp", seed=3, n=10, p=0.4, vertex_weight_max=5)
    inst = generate(spec)
    for v, w in enumerate(inst.get_vertex_weights()):
        if inst.is_terminal(v):
            assert w == 0
        else:
            assert 1 <= w <= 5


def test_edge_weights_in_range():
    spec = GeneratorSpec("random-gnp", seed=2, n=10, p=0.5, min_weight=2, max_weight=4)
    weights = {w for _, _, w in generate(spec).get_graph().get_edges()}
    assert weights <= {2, 3, 4}


@pytest.mark.parametrize(
    "spec",
    [
        GeneratorSpec("tree"),
        GeneratorSpec("random-gnp", seed=-1),
        GeneratorSpec("random-gnp", p=1.5),
        GeneratorSpec("random-gnp", terminal_fraction=-0.1),
        GeneratorSpec("random-gnp", min_weight=5, max_weight=2),
        GeneratorSpec("random-gnp", vertex_weight_max=0),
        GeneratorSpec("random-gnp", n=0),
        GeneratorSpec("shallow-random", radius=0),
        GeneratorSpec("layered", widths=(2, 3)),
        GeneratorSpec("layered", widths=(1, 0)),
        GeneratorSpec("gadget", subsets=0),
        GeneratorSpec("grid", rows=0),
    ],
)
def test_invalid_spec(spec):
    with pytest.raises(InvalidSpec):
        generate(spec)
