"""
Seeded instance generators for test corpora and benchmarks.

All randomness comes from numpy's PCG64 bit generator seeded with
``GeneratorSpec.seed``, so a spec always yields the same instance.
"""
import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from .graph import Graph, reachable_from
from .instance import Instance
from .reductions import gadget_from_set_cover
from .set_cover import SetCoverInstance
from .utils import InvalidSpec

_LOGGER = logging.getLogger(__name__)

FAMILIES = ("layered", "random-gnp", "shallow-random", "gadget", "grid")


@dataclass(frozen=True)
class GeneratorSpec:
    """
    Parameters of one generated instance

    ``family`` one of ``FAMILIES``

    ``seed`` PCG64 seed

    ``n`` vertex count (random-gnp, shallow-random)

    ``p`` edge probability (random-gnp, layered when below 1), chord
    probability (shallow-random) or extra membership probability (gadget)

    ``widths`` layer sizes, first layer is the source alone (layered)

    ``radius`` hop radius bound (shallow-random)

    ``terminal_fraction`` share of non-source vertices made terminals

    ``max_weight`` edge weights are drawn from ``min_weight .. max_weight``

    ``vertex_weight_max`` when set, non-terminals get weights ``1 .. vertex_weight_max``

    ``subsets`` / ``universe`` gadget set cover size

    ``rows`` / ``cols`` grid size
    """

    family: str
    seed: int = 0
    n: int = 10
    p: float = 0.3
    widths: Tuple[int, ...] = (1, 3, 3)
    radius: int = 3
    terminal_fraction: float = 0.3
    min_weight: int = 1
    max_weight: int = 10
    directed: bool = True
    vertex_weight_max: Optional[int] = None
    subsets: int = 4
    universe: int = 4
    rows: int = 3
    cols: int = 3

    def validate(self) -> None:
        """
        Raises ``InvalidSpec`` on bad parameters
        """
        if self.family not in FAMILIES:
            raise InvalidSpec(
                f"unknown family {self.family!r}, expected one of {FAMILIES}"
            )
        if not 0 <= self.seed < 2**64:
            raise InvalidSpec("seed must fit in 64 bits")
        if not 0.0 <= self.p <= 1.0:
            raise InvalidSpec(f"p must lie in [0, 1], got {self.p}")
        if not 0.0 <= self.terminal_fraction <= 1.0:
            raise InvalidSpec("terminal_fraction must lie in [0, 1]")
        if not 0 <= self.min_weight <= self.max_weight:
            raise InvalidSpec("need 0 <= min_weight <= max_weight")
        if self.vertex_weight_max is not None and self.vertex_weight_max < 1:
            raise InvalidSpec("vertex_weight_max must be at least 1")
        if self.family in ("random-gnp", "shallow-random") and self.n < 1:
            raise InvalidSpec("n must be at least 1")
        if self.family == "shallow-random" and self.radius < 1:
            raise InvalidSpec("radius must be at least 1")
        if self.family == "layered" and (
            not self.widths or self.widths[0] != 1 or min(self.widths) < 1
        ):
            raise InvalidSpec("layer widths must be positive and start with 1")
        if self.family == "gadget" and (self.subsets < 1 or self.universe < 0):
            raise InvalidSpec("gadget needs at least one subset")
        if self.family == "grid" and (self.rows < 1 or self.cols < 1):
            raise InvalidSpec("grid needs positive rows and cols")


def _rng(spec: GeneratorSpec) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(spec.seed))


def _weight(rng: np.random.Generator, spec: GeneratorSpec) -> int:
    return int(rng.integers(spec.min_weight, spec.max_weight, endpoint=True))


def _pick_terminals(
    rng: np.random.Generator, spec: GeneratorSpec, pool: List[int]
) -> List[int]:
    """
    Draws ``terminal_fraction`` of ``pool`` (at least one if the pool is not empty)
    """
    if not pool:
        return []
    count = max(1, int(round(spec.terminal_fraction * len(pool))))
    picked = rng.choice(len(pool), size=min(count, len(pool)), replace=False)
    return sorted(pool[int(i)] for i in picked)


def _finish(
    rng: np.random.Generator, spec: GeneratorSpec, graph: Graph, source: int = 0
) -> Instance:
    """
    Chooses terminals among vertices reachable from the source and, when
    asked, non-terminal vertex weights
    """
    pool = sorted(reachable_from(graph, source) - {source})
    terminals = _pick_terminals(rng, spec, pool)

    weights = None
    if spec.vertex_weight_max is not None:
        chosen = set(terminals)
        weights = [
            0
            if v in chosen
            else int(rng.integers(1, spec.vertex_weight_max, endpoint=True))
            for v in range(graph.get_vertex_count())
        ]
    return Instance(graph, source, terminals, weights)


def _layered(rng: np.random.Generator, spec: GeneratorSpec) -> Instance:
    layers: List[List[int]] = []
    next_id = 0
    for width in spec.widths:
        layers.append(list(range(next_id, next_id + width)))
        next_id += width

    edges = []
    for upper, lower in zip(layers, layers[1:]):
        for v in lower:
            tails = [u for u in upper if spec.p >= 1.0 or rng.random() < spec.p]
            if not tails:
                tails = [upper[int(rng.integers(len(upper)))]]
            edges.extend((u, v, _weight(rng, spec)) for u in tails)

    return _finish(rng, spec, Graph(next_id, edges, directed=spec.directed))


def _random_gnp(rng: np.random.Generator, spec: GeneratorSpec) -> Instance:
    edges = []
    for u in range(spec.n):
        for v in range(spec.n):
            if u != v and rng.random() < spec.p:
                edges.append((u, v, _weight(rng, spec)))
    return _finish(rng, spec, Graph(spec.n, edges, directed=spec.directed))


def _shallow_random(rng: np.random.Generator, spec: GeneratorSpec) -> Instance:
    # backbone: each vertex hangs below an earlier vertex of depth < radius
    depth = [0]
    edges = []
    for v in range(1, spec.n):
        shallow = [u for u in range(v) if depth[u] < spec.radius]
        u = shallow[int(rng.integers(len(shallow)))]
        depth.append(depth[u] + 1)
        edges.append((u, v, _weight(rng, spec)))

    for u in range(spec.n):
        for v in range(1, spec.n):
            if u != v and rng.random() < spec.p:
                edges.append((u, v, _weight(rng, spec)))

    return _finish(rng, spec, Graph(spec.n, edges, directed=spec.directed))


def random_set_cover(
    rng: np.random.Generator, spec: GeneratorSpec
) -> SetCoverInstance:
    """
    Draws a feasible set cover instance: every element joins one random
    subset, then each other membership with probability ``p``
    """
    members: List[set] = [set() for _ in range(spec.subsets)]
    for x in range(spec.universe):
        members[int(rng.integers(spec.subsets))].add(x)
        for i in range(spec.subsets):
            if rng.random() < spec.p:
                members[i].add(x)
    return SetCoverInstance.from_sets(spec.universe, members)


def _gadget(rng: np.random.Generator, spec: GeneratorSpec) -> Instance:
    inst, _ = gadget_from_set_cover(random_set_cover(rng, spec))
    return inst


def _grid(rng: np.random.Generator, spec: GeneratorSpec) -> Instance:
    def vertex(r: int, c: int) -> int:
        return r * spec.cols + c

    edges = []
    for r in range(spec.rows):
        for c in range(spec.cols):
            if c + 1 < spec.cols:
                edges.append((vertex(r, c), vertex(r, c + 1), _weight(rng, spec)))
            if r + 1 < spec.rows:
                edges.append((vertex(r, c), vertex(r + 1, c), _weight(rng, spec)))

    graph = Graph(spec.rows * spec.cols, edges, directed=False)
    return _finish(rng, spec, graph)


_BUILDERS: Dict[str, Callable[[np.random.Generator, GeneratorSpec], Instance]] = {
    "layered": _layered,
    "random-gnp": _random_gnp,
    "shallow-random": _shallow_random,
    "gadget": _gadget,
    "grid": _grid,
}


def generate(spec: GeneratorSpec) -> Instance:
    """
    Generates the instance described by ``spec``

    Raises ``InvalidSpec`` on bad parameters
    """
    spec.validate()
    _LOGGER.info("Generating %s instance with seed %s", spec.family, spec.seed)
    return _BUILDERS[spec.family](_rng(spec), spec)
