"""
Canonical text formats for instances, set cover instances, shortest path
subgraphs and solutions.

Every file is a JSON object written in one canonical layout: fixed key
order, one list item per line for edge-like lists, sorted ids. The grammar
is documented in ``docs/source/formats.rst``.
"""
import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Optional, Sequence, Tuple, Union

from .graph import Graph
from .instance import Instance
from .set_cover import CoverSubset, SetCoverInstance
from .steiner import BoundCertificate, SolutionReport
from .subgraph import SpSubgraph
from .tree import Arborescence
from .utils import FORMAT_VERSION, InvariantViolation, ParseError

_LOGGER = logging.getLogger(__name__)

# keys whose list values are written one item per line
_BLOCK_KEYS = {"edges", "parent", "subsets"}


def _write(fields: Sequence[Tuple[str, Any]]) -> str:
    """
    Writes ``fields`` in the canonical layout
    """
    lines = ["{"]
    for position, (key, value) in enumerate(fields):
        comma = "," if position < len(fields) - 1 else ""
        if key in _BLOCK_KEYS and value:
            lines.append(f"  {json.dumps(key)}: [")
            for index, item in enumerate(value):
                item_comma = "," if index < len(value) - 1 else ""
                lines.append(f"    {json.dumps(item)}{item_comma}")
            lines.append(f"  ]{comma}")
        else:
            lines.append(f"  {json.dumps(key)}: {json.dumps(value)}{comma}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _is_int(item: Any) -> bool:
    return isinstance(item, int) and not isinstance(item, bool)


def _read(text: str) -> Dict[str, Any]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None

    if not isinstance(data, dict):
        raise ParseError("line 1 column 1", "expected a JSON object")

    version = data.get("format_version")
    if not _is_int(version) or version != FORMAT_VERSION:
        raise ParseError("format_version", f"unsupported version {version!r}")
    return data


def _field(data: Dict[str, Any], key: str, kind: str, optional: bool = False) -> Any:
    """
    Fetches ``key`` and checks it is an ``int``, ``bool``, ``int-list`` or
    ``triple-list`` (list of ``[int, int, int]``)
    """
    if key not in data:
        if optional:
            return None
        raise ParseError(key, "missing field")

    value = data[key]
    if value is None and optional:
        return None

    ok = {
        "int": lambda: _is_int(value),
        "bool": lambda: isinstance(value, bool),
        "int-list": lambda: isinstance(value, list) and all(_is_int(i) for i in value),
        "triple-list": lambda: isinstance(value, list)
        and all(
            isinstance(item, list) and len(item) == 3 and all(_is_int(i) for i in item)
            for item in value
        ),
    }[kind]()
    if not ok:
        raise ParseError(key, f"expected {kind}, got {value!r}")
    return value


def _invariant(location: str, exc: InvariantViolation) -> InvariantViolation:
    return InvariantViolation(f"{location}: {exc}")


def serialize_instance(inst: Instance) -> str:
    """
    Writes ``inst`` in canonical form. Undirected graphs list each edge once
    with ``tail < head``
    """
    g = inst.get_graph()
    edges = g.get_edges() if g.get_directed() else g.get_undirected_edges()
    weights = inst.get_vertex_weights()
    return _write(
        [
            ("format_version", FORMAT_VERSION),
            ("directed", g.get_directed()),
            ("n", g.get_vertex_count()),
            ("source", inst.get_source()),
            ("terminals", sorted(inst.get_terminals())),
            ("vertex_weights", None if weights is None else list(weights)),
            ("edges", [list(edge) for edge in edges]),
        ]
    )


def parse_instance(text: str) -> Instance:
    """
    Reads an instance file

    Raises ``ParseError`` for malformed text and ``InvariantViolation`` when
    the content breaks a graph or instance invariant
    """
    data = _read(text)
    directed = _field(data, "directed", "bool")
    n = _field(data, "n", "int")
    source = _field(data, "source", "int")
    terminals = _field(data, "terminals", "int-list")
    weights = _field(data, "vertex_weights", "int-list", optional=True)
    edges = _field(data, "edges", "triple-list")

    if len(set(terminals)) != len(terminals):
        raise InvariantViolation("terminals: duplicate terminal")

    try:
        graph = Graph(n, [tuple(edge) for edge in edges], directed=directed)
    except InvariantViolation as exc:
        raise _invariant("edges", exc) from None
    try:
        return Instance(graph, source, terminals, weights)
    except InvariantViolation as exc:
        raise _invariant("instance", exc) from None


def load_instance(path: Union[str, Path]) -> Instance:
    """
    Reads an instance file from ``path``
    """
    _LOGGER.info("Loading instance from %s", path)
    return parse_instance(Path(path).read_text())


def dump_instance(inst: Instance, path: Union[str, Path]) -> None:
    """
    Writes ``inst`` to ``path``
    """
    Path(path).write_text(serialize_instance(inst))


def serialize_set_cover(sc: SetCoverInstance) -> str:
    """
    Writes a set cover instance; each subset is ``[owner, [members], weight]``
    """
    return _write(
        [
            ("format_version", FORMAT_VERSION),
            ("universe_size", sc.universe_size),
            (
                "subsets",
                [[s.owner, sorted(s.members), s.weight] for s in sc.subsets],
            ),
        ]
    )


def parse_set_cover(text: str) -> SetCoverInstance:
    """
    Reads a set cover file
    """
    data = _read(text)
    universe_size = _field(data, "universe_size", "int")
    raw = data.get("subsets")
    if not isinstance(raw, list):
        raise ParseError("subsets", "expected a list")

    subsets = []
    for index, item in enumerate(raw):
        if (
            not isinstance(item, list)
            or len(item) != 3
            or not _is_int(item[0])
            or not isinstance(item[1], list)
            or not all(_is_int(m) for m in item[1])
            or not _is_int(item[2])
        ):
            raise ParseError(f"subsets[{index}]", "expected [owner, [members], weight]")
        subsets.append(CoverSubset(item[0], frozenset(item[1]), item[2]))

    try:
        return SetCoverInstance(universe_size, tuple(subsets))
    except InvariantViolation as exc:
        raise _invariant("subsets", exc) from None


def serialize_sps(sps: SpSubgraph) -> str:
    """
    Writes a shortest path subgraph: its source, distances (``null`` when
    unreachable) and retained edges
    """
    graph = sps.get_graph()
    return _write(
        [
            ("format_version", FORMAT_VERSION),
            ("source", sps.get_source()),
            ("n", graph.get_vertex_count()),
            ("dist", sps.get_distances()),
            ("edges", [list(edge) for edge in graph.get_edges()]),
        ]
    )


def certificate_fields(cert: Optional[BoundCertificate]) -> Optional[Dict[str, Any]]:
    if cert is None:
        return None
    return {
        "radius": cert.radius,
        "radius_cover": cert.radius_cover,
        "harmonic_bound": str(cert.harmonic_bound),
        "universe_size": cert.universe_size,
        "cover_size": cert.cover_size,
        "cover_weight": cert.cover_weight,
        "bfs_nt": cert.bfs_nt,
        "weight_ratio": None if cert.weight_ratio is None else str(cert.weight_ratio),
        "weighted": cert.weighted,
    }


def serialize_solution(report: SolutionReport) -> str:
    """
    Writes a solution: root, parent list ``[vertex, parent, weight]``,
    objective values and the bound certificate (fractions as ``"p/q"``)
    """
    tree = report.tree
    return _write(
        [
            ("format_version", FORMAT_VERSION),
            ("root", tree.get_root()),
            ("nt_count", report.nt_count),
            ("nt_weight", report.nt_weight),
            ("cover_owners", list(report.cover_owners)),
            ("certificate", certificate_fields(report.certificate)),
            (
                "parent",
                [[v, p, w] for v, (p, w) in sorted(tree.get_parent_map().items())],
            ),
        ]
    )


def _parse_certificate(raw: Any) -> Optional[BoundCertificate]:
    if raw is None:
        return None
    if not isinstance(raw, dict):
        raise ParseError("certificate", "expected an object or null")
    try:
        ratio = raw.get("weight_ratio")
        return BoundCertificate(
            radius=int(raw["radius"]),
            radius_cover=int(raw["radius_cover"]),
            harmonic_bound=Fraction(raw["harmonic_bound"]),
            universe_size=int(raw["universe_size"]),
            cover_size=int(raw["cover_size"]),
            cover_weight=int(raw["cover_weight"]),
            bfs_nt=int(raw["bfs_nt"]),
            weight_ratio=None if ratio is None else Fraction(ratio),
            weighted=bool(raw.get("weighted", False)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError("certificate", f"bad certificate: {exc}") from None


def parse_solution(text: str) -> SolutionReport:
    """
    Reads a solution file. The tree is not checked against any instance;
    use ``verify_solution`` for that
    """
    data = _read(text)
    root = _field(data, "root", "int")
    parent_rows = _field(data, "parent", "triple-list")
    owners = _field(data, "cover_owners", "int-list", optional=True) or []

    parent: Dict[int, Tuple[int, int]] = {}
    for v, p, w in parent_rows:
        if v in parent:
            raise ParseError("parent", f"vertex {v} listed twice")
        parent[v] = (p, w)

    try:
        tree = Arborescence(root, parent)
    except InvariantViolation as exc:
        raise _invariant("parent", exc) from None

    return SolutionReport(
        tree=tree,
        nt_count=_field(data, "nt_count", "int"),
        nt_weight=_field(data, "nt_weight", "int"),
        certificate=_parse_certificate(data.get("certificate")),
        cover_owners=tuple(owners),
    )


def parse_steinlib(text: str) -> Instance:
    """
    Hook for SteinLib ``.stp`` files. Not supported yet
    """
    raise NotImplementedError("SteinLib import is not supported")

