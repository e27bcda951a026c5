import logging
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .graph import Graph
from .tree import Arborescence
from .utils import InvariantViolation

_LOGGER = logging.getLogger(__name__)


class Instance:
    """
    Represents an SSPT, UVDST or VDST instance

    ``graph`` the graph to span

    ``source`` the root of every feasible tree

    ``terminals`` vertices every feasible tree must contain; ``source`` is
    never a terminal

    ``vertex_weights`` (optional) one nonnegative weight per vertex; terminal
    weights are forced to 0. Without it every non-terminal weighs 1
    """

    def __init__(
        self,
        graph: Graph,
        source: int,
        terminals: Iterable[int],
        vertex_weights: Optional[Sequence[int]] = None,
    ):
        n = graph.get_vertex_count()
        if not 0 <= source < n:
            raise InvariantViolation(f"source {source} out of range [0, {n})")

        terminal_set = frozenset(terminals)
        for t in terminal_set:
            if not 0 <= t < n:
                raise InvariantViolation(f"terminal {t} out of range [0, {n})")
        if source in terminal_set:
            raise InvariantViolation(f"source {source} must not be a terminal")

        weights: Optional[Tuple[int, ...]] = None
        if vertex_weights is not None:
            if len(vertex_weights) != n:
                raise InvariantViolation(
                    f"expected {n} vertex weights, got {len(vertex_weights)}"
                )
            checked: List[int] = []
            for v, w in enumerate(vertex_weights):
                if isinstance(w, bool) or not isinstance(w, int) or w < 0:
                    raise InvariantViolation(
                        f"vertex weight of {v} must be a nonnegative integer, got {w!r}"
                    )
                if v in terminal_set and w != 0:
                    _LOGGER.warning("Forcing weight of terminal %s from %s to 0", v, w)
                    w = 0
                checked.append(int(w))
            weights = tuple(checked)

        self._graph = graph
        self._source = source
        self._terminals: FrozenSet[int] = terminal_set
        self._vertex_weights = weights

    def get_graph(self) -> Graph:
        """
        Gets the instance graph
        """
        return self._graph

    def get_source(self) -> int:
        """
        Gets the source vertex
        """
        return self._source

    def get_terminals(self) -> FrozenSet[int]:
        """
        Gets the terminal set
        """
        return self._terminals

    def get_vertex_weights(self) -> Optional[Tuple[int, ...]]:
        """
        Gets per-vertex weights, ``None`` when the instance is uniform
        """
        return self._vertex_weights

    def is_weighted(self) -> bool:
        """
        Gets if the instance carries explicit vertex weights
        """
        return self._vertex_weights is not None

    def is_terminal(self, vertex: int) -> bool:
        """
        Gets if ``vertex`` is a terminal
        """
        return vertex in self._terminals

    def weight_of(self, vertex: int) -> int:
        """
        Gets the weight of ``vertex``: explicit weight, else 0 for terminals
        and 1 for everything else
        """
        if self._vertex_weights is not None:
            return self._vertex_weights[vertex]
        return 0 if vertex in self._terminals else 1

    def weights(self) -> List[int]:
        """
        Gets ``weight_of`` for every vertex
        """
        return [self.weight_of(v) for v in range(self._graph.get_vertex_count())]

    def nt_count(self, tree: Arborescence) -> int:
        """
        Gets the number of non-terminals in ``tree``; the source never counts
        """
        return len(self._tree_non_terminals(tree))

    def nt_weight(self, tree: Arborescence) -> int:
        """
        Gets the total weight of the non-terminals in ``tree``
        """
        return sum(self.weight_of(v) for v in self._tree_non_terminals(tree))

    def _tree_non_terminals(self, tree: Arborescence) -> List[int]:
        return [v for v in tree.non_terminals(self._terminals) if v != self._source]

    def with_graph(self, graph: Graph) -> "Instance":
        """
        Gets a copy of this instance over another graph on the same vertex ids
        """
        return Instance(graph, self._source, self._terminals, self._vertex_weights)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Instance):
            return NotImplemented
        return (
            self._graph == other._graph
            and self._source == other._source
            and self._terminals == other._terminals
            and self._vertex_weights == other._vertex_weights
        )

    def __hash__(self) -> int:
        return hash((self._graph, self._source, self._terminals, self._vertex_weights))

    def __repr__(self) -> str:
        return (
            f"Instance({self._graph!r}, source={self._source}, "
            f"terminals={sorted(self._terminals)}, weighted={self.is_weighted()})"
        )
