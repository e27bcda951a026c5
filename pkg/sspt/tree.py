import logging
from typing import AbstractSet, Dict, Iterator, List, Mapping, Optional, Tuple

from .utils import InvariantViolation

_LOGGER = logging.getLogger(__name__)


class Arborescence:
    """
    Represents a tree rooted at ``root`` with every edge directed away from it

    ``root`` is the root vertex

    ``parent`` maps every non-root vertex to ``(parent vertex, edge weight)``

    Validity (acyclic parent pointers, edges present in a graph) is checked by
    ``verify_solution``, not here, so that broken trees read from disk can
    still be reported on.
    """

    def __init__(
        self, root: int, parent: Optional[Mapping[int, Tuple[int, int]]] = None
    ):
        parent = dict(parent or {})
        if root in parent:
            raise InvariantViolation(f"root {root} must not have a parent")

        self._root = root
        self._parent: Dict[int, Tuple[int, int]] = {
            v: (int(p), int(w)) for v, (p, w) in sorted(parent.items())
        }

    def get_root(self) -> int:
        """
        Gets the root vertex
        """
        return self._root

    def get_parent(self, vertex: int) -> Optional[Tuple[int, int]]:
        """
        Gets ``(parent, weight)`` of ``vertex``, ``None`` for the root or
        absent vertices
        """
        return self._parent.get(vertex)

    def get_parent_map(self) -> Dict[int, Tuple[int, int]]:
        """
        Gets a copy of the parent map
        """
        return dict(self._parent)

    def get_vertices(self) -> List[int]:
        """
        Gets all tree vertices in ascending order
        """
        return sorted({self._root, *self._parent})

    def get_edges(self) -> List[Tuple[int, int, int]]:
        """
        Gets tree edges as ``(tail, head, weight)`` sorted by head
        """
        return [(p, v, w) for v, (p, w) in self._parent.items()]

    def children(self) -> Dict[int, List[int]]:
        """
        Gets children lists keyed by vertex, children ascending
        """
        kids: Dict[int, List[int]] = {}
        for v, (p, _) in self._parent.items():
            kids.setdefault(p, []).append(v)
        return kids

    def path_to(self, vertex: int) -> List[int]:
        """
        Gets the root-to-``vertex`` vertex sequence

        Raises ``InvariantViolation`` if the parent chain loops or never
        reaches the root
        """
        path = [vertex]
        seen = {vertex}
        while path[-1] != self._root:
            entry = self._parent.get(path[-1])
            if entry is None:
                raise InvariantViolation(f"vertex {path[-1]} is detached from the root")
            if entry[0] in seen:
                raise InvariantViolation(f"parent pointers loop through {entry[0]}")
            seen.add(entry[0])
            path.append(entry[0])
        path.reverse()
        return path

    def non_terminals(self, terminals: AbstractSet[int]) -> List[int]:
        """
        Gets tree vertices that are neither the root nor terminals
        """
        return [v for v in self._parent if v not in terminals]

    def __contains__(self, vertex: object) -> bool:
        return vertex == self._root or vertex in self._parent

    def __iter__(self) -> Iterator[int]:
        return iter(self.get_vertices())

    def __len__(self) -> int:
        return len(self._parent) + 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Arborescence):
            return NotImplemented
        return self._root == other._root and self._parent == other._parent

    def __hash__(self) -> int:
        return hash((self._root, tuple(self._parent.items())))

    def __repr__(self) -> str:
        return f"Arborescence(root={self._root}, parent={self._parent})"
