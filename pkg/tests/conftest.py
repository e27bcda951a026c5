from pathlib import Path

import pytest

from sspt.graph import Graph
from sspt.instance import Instance
from sspt.set_cover import SetCoverInstance

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def golden_dir() -> Path:
    return GOLDEN


@pytest.fixture
def four_cycle() -> Graph:
    # undirected cycle s=0, v1=1, v2=2, v3=3, unit weights
    return Graph(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)], directed=False)


@pytest.fixture
def four_cycle_instance(four_cycle: Graph) -> Instance:
    return Instance(four_cycle, 0, [2])


@pytest.fixture
def diamond() -> Graph:
    # s=0 -> a=1 -> t=3, s -> b=2 -> t
    return Graph(4, [(0, 1, 1), (0, 2, 1), (1, 3, 1), (2, 3, 1)])


@pytest.fixture
def star_instance() -> Instance:
    # s=0 -> v=1 -> t1=2, t2=3
    return Instance(Graph(4, [(0, 1, 1), (1, 2, 1), (1, 3, 1)]), 0, [2, 3])


@pytest.fixture
def abc_cover() -> SetCoverInstance:
    # A={0,1}, B={1,2}, C={2}
    return SetCoverInstance.from_sets(3, [{0, 1}, {1, 2}, {2}])


@pytest.fixture
def free_hub_instance() -> Instance:
    # s=0 -> u=1 (W=100) -> hub=2 (W=0) -> t1=3, t2=4; s -> w1=5 -> t1; s -> w2=6 -> t2
    edges = [
        (0, 1, 1),
        (1, 2, 0),
        (2, 3, 1),
        (2, 4, 1),
        (0, 5, 1),
        (5, 3, 1),
        (0, 6, 1),
        (6, 4, 1),
    ]
    return Instance(Graph(7, edges), 0, [3, 4], vertex_weights=[0, 100, 0, 0, 0, 1, 1])
