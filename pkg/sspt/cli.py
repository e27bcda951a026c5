"""
Command line front end: generate, solve, verify, reduce and benchmark
instances. Run ``sspt --help`` for the subcommands.
"""
import argparse
import asyncio
import csv
import hashlib
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, TypeVar

from .generators import FAMILIES, GeneratorSpec, generate
from .instance import Instance
from .instance_io import (
    certificate_fields,
    load_instance,
    parse_set_cover,
    parse_solution,
    serialize_instance,
    serialize_solution,
    serialize_sps,
)
from .oracle import (
    OracleBudget,
    exact_sspt,
    exact_uvdst,
    exact_vdst,
    exact_weighted_sspt,
)
from .reductions import (
    acyclic_uvdst_to_usspt,
    gadget_from_set_cover,
    usspt_to_dsspt,
    uvdst_to_dsspt,
)
from .steiner import (
    BoundCertificate,
    SolutionReport,
    approx_uvdst,
    approx_vdst,
    solve_sspt,
    solve_weighted_sspt,
    verify_solution,
)
from .subgraph import build_sps, prune_to_terminals, shallowness
from .utils import (
    InfeasibleCover,
    InfeasibleTree,
    InvalidSpec,
    InvariantViolation,
    NotAcyclic,
    ParseError,
    PreconditionViolated,
    SsptError,
    TooLarge,
    UnreachableTarget,
)

_LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3
EXIT_BUDGET = 4

_INFEASIBLE_ERRORS = (
    UnreachableTarget,
    InfeasibleCover,
    InfeasibleTree,
    NotAcyclic,
    PreconditionViolated,
)

T = TypeVar("T")


@dataclass
class RunReport:
    """
    Structured outcome of one command, printed with ``--json``

    ``optimum`` and ``ratio`` are only set when the exact oracle ran, and
    ``ratio`` only when an approximate solution was compared against it
    """

    command: str
    instance_digest: Optional[str] = None
    timings: Dict[str, float] = field(default_factory=dict)
    summary: Dict[str, Any] = field(default_factory=dict)
    verdict: Optional[Dict[str, Any]] = None
    certificate: Optional[Dict[str, Any]] = None
    optimum: Optional[int] = None
    ratio: Optional[Fraction] = None

    def timed(self, stage: str, func: Callable[[], T]) -> T:
        """
        Runs ``func`` and records its wall time under ``stage``
        """
        start = time.perf_counter()
        try:
            return func()
        finally:
            self.timings[stage] = round(time.perf_counter() - start, 6)

    def as_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "command": self.command,
            "instance_digest": self.instance_digest,
            "timings": self.timings,
            "summary": self.summary,
            "verdict": self.verdict,
            "certificate": self.certificate,
        }
        if self.optimum is not None:
            data["optimum"] = self.optimum
        if self.ratio is not None:
            data["ratio"] = str(self.ratio)
        return data


@dataclass(frozen=True)
class BenchRow:
    """
    One line of the benchmark table
    """

    name: str
    vertices: int
    terminals: int
    approx: Optional[int] = None
    optimum: Optional[int] = None
    ratio: Optional[Fraction] = None
    radius: Optional[int] = None
    harmonic: Optional[Fraction] = None
    bound: Optional[Fraction] = None
    seconds: float = 0.0
    error: str = ""

    def as_dict(self) -> Dict[str, Any]:
        def text(value: Optional[Fraction]) -> Optional[str]:
            return None if value is None else str(value)

        return {
            "name": self.name,
            "vertices": self.vertices,
            "terminals": self.terminals,
            "approx": self.approx,
            "optimum": self.optimum,
            "ratio": text(self.ratio),
            "radius": self.radius,
            "harmonic": text(self.harmonic),
            "bound": text(self.bound),
            "seconds": self.seconds,
            "error": self.error,
        }


def instance_digest(inst: Instance) -> str:
    """
    Gets the SHA-256 of the canonical text of ``inst``
    """
    return hashlib.sha256(serialize_instance(inst).encode()).hexdigest()


def _certificate_report(cert: Optional[BoundCertificate]) -> Optional[Dict[str, Any]]:
    data = certificate_fields(cert)
    if cert is not None and data is not None:
        factor = cert.bound_factor()
        data["bound_factor"] = None if factor is None else str(factor)
    return data


def approximation_ratio(approx: int, optimum: int) -> Fraction:
    """
    Gets ``approx / optimum``, taking ``0 / 0`` as 1
    """
    if optimum == 0:
        return Fraction(1) if approx == 0 else Fraction(approx)
    return Fraction(approx, optimum)


def _summary(report: SolutionReport) -> Dict[str, Any]:
    return {
        "vertices": len(report.tree),
        "nt_count": report.nt_count,
        "nt_weight": report.nt_weight,
        "cover_owners": list(report.cover_owners),
    }


def _approx_solver(args: argparse.Namespace) -> Callable[[Instance], SolutionReport]:
    if args.uvdst:
        return approx_vdst if args.weighted else approx_uvdst
    prune = not args.no_prune
    if args.weighted:
        return lambda inst: solve_weighted_sspt(inst, prune)
    return lambda inst: solve_sspt(inst, prune)


def _exact_solver(
    weighted: bool, uvdst: bool, budget: OracleBudget
) -> Callable[[Instance], SolutionReport]:
    if uvdst:
        solver = exact_vdst if weighted else exact_uvdst
    else:
        solver = exact_weighted_sspt if weighted else exact_sspt
    return lambda inst: solver(inst, budget)


def _budget(args: argparse.Namespace) -> OracleBudget:
    budget = OracleBudget.from_env()
    if getattr(args, "budget", None) is not None:
        budget = OracleBudget(args.budget, budget.time_limit)
    return budget


def _emit(args: argparse.Namespace, report: RunReport, lines: Sequence[str]) -> None:
    if args.json:
        print(json.dumps(report.as_dict(), indent=2))
    else:
        for line in lines:
            print(line)


def _write_or_print(text: str, output: Optional[str]) -> None:
    if output:
        Path(output).write_text(text)
        _LOGGER.info("Wrote %s", output)
    else:
        sys.stdout.write(text)


def cmd_gen(args: argparse.Namespace) -> int:
    widths: Tuple[int, ...] = (1, 3, 3)
    if args.widths:
        try:
            widths = tuple(int(w) for w in args.widths.split(","))
        except ValueError:
            raise InvalidSpec(f"bad layer widths {args.widths!r}") from None

    spec = GeneratorSpec(
        family=args.family,
        seed=args.seed,
        n=args.n,
        p=args.p,
        widths=widths,
        radius=args.radius,
        terminal_fraction=args.terminal_fraction,
        min_weight=args.min_weight,
        max_weight=args.max_weight,
        directed=not args.undirected,
        vertex_weight_max=args.vertex_weight_max,
        subsets=args.subsets,
        universe=args.universe,
        rows=args.rows,
        cols=args.cols,
    )
    inst = generate(spec)
    _write_or_print(serialize_instance(inst), args.output)

    report = RunReport("gen", instance_digest(inst))
    report.summary = {
        "family": spec.family,
        "seed": spec.seed,
        "vertices": inst.get_graph().get_vertex_count(),
        "edges": inst.get_graph().get_edge_count(),
        "terminals": len(inst.get_terminals()),
    }
    if args.output:
        _emit(args, report, _lines(report.summary))
    return EXIT_OK


def cmd_sps(args: argparse.Namespace) -> int:
    inst = load_instance(args.file)
    report = RunReport("sps", instance_digest(inst))
    g, s = inst.get_graph(), inst.get_source()

    sps = report.timed("build_sps", lambda: build_sps(g, s))
    if args.terminals:
        terminals = inst.get_terminals()
        sps = report.timed("prune", lambda: prune_to_terminals(sps, terminals))
    shallow = report.timed("shallowness", lambda: shallowness(g, s))
    # null when some terminal is unreachable
    terminal_radius: Tuple[Optional[int], Optional[int]] = (None, None)
    try:
        over_terminals = report.timed(
            "shallowness_terminals",
            lambda: shallowness(g, s, inst.get_terminals()),
        )
        terminal_radius = (over_terminals.radius_hops, over_terminals.sp_radius_hops)
    except UnreachableTarget:
        _LOGGER.warning("Some terminal is unreachable, no terminal radius")

    report.summary = {
        "pruned": args.terminals,
        "vertices": len(sps.get_vertex_set()),
        "edges": sps.get_graph().get_edge_count(),
        "acyclic": sps.is_acyclic(),
        "layers": len(sps.get_layers()),
        "zero_weight_components": len(sps.get_zero_weight_components()),
        "radius_hops": shallow.radius_hops,
        "sp_radius_hops": shallow.sp_radius_hops,
        "radius_over": shallow.relevant_label,
        "terminal_radius_hops": terminal_radius[0],
        "terminal_sp_radius_hops": terminal_radius[1],
    }
    if args.output:
        Path(args.output).write_text(serialize_sps(sps))

    _emit(args, report, _lines(report.summary))
    return EXIT_OK


def cmd_approx(args: argparse.Namespace) -> int:
    inst = load_instance(args.file)
    report = RunReport("approx", instance_digest(inst))
    solution = report.timed("solve", lambda: _approx_solver(args)(inst))
    verdict = report.timed(
        "verify",
        lambda: verify_solution(inst, solution.tree, require_shortest=not args.uvdst),
    )

    report.summary = _summary(solution)
    report.certificate = _certificate_report(solution.certificate)
    report.verdict = {"passed": verdict.passed, "failures": verdict.failures}

    if args.compare:
        solver = _exact_solver(args.weighted, args.uvdst, _budget(args))
        try:
            exact = report.timed("oracle", lambda: solver(inst))
        except TooLarge as exc:
            _LOGGER.warning("Skipping comparison: %s", exc)
        else:
            weighted = args.weighted
            report.optimum = exact.nt_weight if weighted else exact.nt_count
            value = solution.nt_weight if weighted else solution.nt_count
            report.ratio = approximation_ratio(value, report.optimum)

    if args.output:
        Path(args.output).write_text(serialize_solution(solution))
        lines = _lines(report.summary)
        if report.ratio is not None:
            lines += [f"optimum: {report.optimum}", f"ratio: {_fmt(report.ratio)}"]
        _emit(args, report, lines)
    elif args.json:
        _emit(args, report, [])
    else:
        sys.stdout.write(serialize_solution(solution))

    return EXIT_OK if verdict.passed else EXIT_VERIFY_FAILED


def cmd_exact(args: argparse.Namespace) -> int:
    inst = load_instance(args.file)
    report = RunReport("exact", instance_digest(inst))
    solver = _exact_solver(args.weighted, args.uvdst, _budget(args))
    solution = report.timed("oracle", lambda: solver(inst))

    report.summary = _summary(solution)
    report.optimum = solution.nt_weight if args.weighted else solution.nt_count
    if args.output:
        Path(args.output).write_text(serialize_solution(solution))

    _emit(args, report, [f"OPT: {report.optimum}", f"vertices: {len(solution.tree)}"])
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    inst = load_instance(args.file)
    solution = parse_solution(Path(args.solution).read_text())
    report = RunReport("verify", instance_digest(inst))
    verdict = report.timed(
        "verify", lambda: verify_solution(inst, solution.tree, args.shortest)
    )

    actual = inst.nt_count(solution.tree)
    if verdict.passed and actual != solution.nt_count:
        verdict.fail(
            f"solution claims {solution.nt_count} non-terminals, tree has {actual}"
        )

    report.verdict = {
        "passed": verdict.passed,
        "failures": verdict.failures,
        "witness": None if verdict.witness is None else str(verdict.witness),
    }
    lines = ["PASS"] if verdict.passed else ["FAIL"] + verdict.failures
    _emit(args, report, lines)
    return EXIT_OK if verdict.passed else EXIT_VERIFY_FAILED


def cmd_reduce(args: argparse.Namespace) -> int:
    if args.to == "gadget-from-cover":
        cover = parse_set_cover(Path(args.file).read_text())
        reduced, _ = gadget_from_set_cover(cover)
    else:
        inst = load_instance(args.file)
        if args.to == "usspt":
            reduced = acyclic_uvdst_to_usspt(inst)
        elif inst.get_graph().get_directed():
            reduced = uvdst_to_dsspt(inst)
        else:
            reduced = usspt_to_dsspt(inst)

    _write_or_print(serialize_instance(reduced), args.output)
    return EXIT_OK


def bench_instance(path: Path, budget: OracleBudget) -> BenchRow:
    """
    Solves one corpus file approximately and, within ``budget``, exactly
    """
    start = time.perf_counter()
    try:
        inst = load_instance(path)
    except SsptError as exc:
        return BenchRow(path.name, 0, 0, error=type(exc).__name__)

    weighted = inst.is_weighted()
    base: Dict[str, Any] = {
        "name": path.name,
        "vertices": inst.get_graph().get_vertex_count(),
        "terminals": len(inst.get_terminals()),
    }

    try:
        solution = solve_weighted_sspt(inst) if weighted else solve_sspt(inst)
    except SsptError as exc:
        return BenchRow(**base, error=type(exc).__name__)

    value = solution.nt_weight if weighted else solution.nt_count
    cert = solution.certificate
    optimum = ratio = None
    try:
        exact = _exact_solver(weighted, False, budget)(inst)
        optimum = exact.nt_weight if weighted else exact.nt_count
        ratio = approximation_ratio(value, optimum)
    except TooLarge:
        _LOGGER.info("Skipping oracle for %s, too large", path.name)

    return BenchRow(
        **base,
        approx=value,
        optimum=optimum,
        ratio=ratio,
        radius=None if cert is None else cert.radius,
        harmonic=None if cert is None else cert.harmonic_bound,
        bound=None if cert is None else cert.bound_factor(),
        seconds=round(time.perf_counter() - start, 3),
    )


async def async_bench_corpus(
    paths: Sequence[Path], budget: OracleBudget, jobs: Optional[int] = None
) -> List[BenchRow]:
    """
    Benchmarks ``paths`` in up to ``jobs`` worker processes (one per CPU by
    default); rows come back in the order of ``paths``
    """
    loop = asyncio.get_running_loop()
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(
            await asyncio.gather(
                *[
                    loop.run_in_executor(pool, bench_instance, path, budget)
                    for path in paths
                ]
            )
        )


_TABLE_WIDTHS = (24, 5, 5, 5, 5, 7, 3, 7, 7, 8)


def _table_line(cells: Sequence[str]) -> str:
    first = f"{cells[0]:<{_TABLE_WIDTHS[0]}}"
    rest = [f"{cell:>{width}}" for cell, width in zip(cells[1:], _TABLE_WIDTHS[1:])]
    return " ".join([first] + rest)


def _lines(summary: Dict[str, Any]) -> List[str]:
    return [f"{key}: {value}" for key, value in summary.items()]


def _fmt(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, Fraction):
        return f"{float(value):.3f}"
    return str(value)


def cmd_bench(args: argparse.Namespace) -> int:
    corpus = Path(args.corpus)
    if not corpus.is_dir():
        raise InvalidSpec(f"corpus {corpus} is not a directory")
    if args.jobs is not None and args.jobs < 1:
        raise InvalidSpec("--jobs must be at least 1")

    paths = sorted(corpus.glob("*.json"), key=lambda p: p.name)
    _LOGGER.info("Benchmarking %s instances from %s", len(paths), corpus)
    rows = asyncio.run(async_bench_corpus(paths, _budget(args), args.jobs))

    if args.csv:
        with open(args.csv, "w", newline="") as handle:
            names = [f.name for f in fields(BenchRow)]
            writer = csv.DictWriter(handle, fieldnames=names)
            writer.writeheader()
            for row in rows:
                writer.writerow(row.as_dict())

    if args.json:
        print(json.dumps([row.as_dict() for row in rows], indent=2))
        return EXIT_OK

    header = ("name", "n", "|X|", "nt", "OPT", "ratio", "R", "H", "bound", "sec")
    print(_table_line(header) + " error")
    print("=" * 90)
    for row in rows:
        cells = (
            row.name,
            row.vertices,
            row.terminals,
            row.approx,
            row.optimum,
            row.ratio,
            row.radius,
            row.harmonic,
            row.bound,
            f"{row.seconds:.3f}",
        )
        print(_table_line([_fmt(cell) for cell in cells]) + f" {row.error}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "-v", "--verbose", action="count", default=0, help="more logging, repeatable"
    )
    common.add_argument(
        "--json", action="store_true", help="print a machine readable report"
    )

    parser = argparse.ArgumentParser(
        prog="sspt", description="Steiner shortest path tree toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", parents=[common], help="generate a seeded instance")
    gen.add_argument("--family", choices=FAMILIES, required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("-n", type=int, default=10, help="vertex count")
    gen.add_argument("-p", type=float, default=0.3, help="edge probability")
    gen.add_argument("--widths", help="comma separated layer widths, first is 1")
    gen.add_argument("--radius", type=int, default=3)
    gen.add_argument("--terminal-fraction", type=float, default=0.3)
    gen.add_argument("--min-weight", type=int, default=1)
    gen.add_argument("--max-weight", type=int, default=10)
    gen.add_argument("--undirected", action="store_true")
    gen.add_argument("--vertex-weight-max", type=int)
    gen.add_argument("--subsets", type=int, default=4)
    gen.add_argument("--universe", type=int, default=4)
    gen.add_argument("--rows", type=int, default=3)
    gen.add_argument("--cols", type=int, default=3)
    gen.add_argument("-o", "--output")
    gen.set_defaults(func=cmd_gen)

    sps = sub.add_parser(
        "sps", parents=[common], help="build the shortest path subgraph"
    )
    sps.add_argument("file")
    sps.add_argument(
        "-x", "--terminals", action="store_true", help="prune to the terminals"
    )
    sps.add_argument("-o", "--output", help="write the subgraph file")
    sps.set_defaults(func=cmd_sps)

    approx = sub.add_parser(
        "approx", parents=[common], help="approximate a Steiner shortest path tree"
    )
    approx.add_argument("file")
    approx.add_argument(
        "--weighted", action="store_true", help="minimize vertex weight"
    )
    approx.add_argument(
        "--uvdst",
        action="store_true",
        help="solve the graph as given, no shortest paths",
    )
    approx.add_argument(
        "--no-prune", action="store_true", help="skip pruning to the terminals"
    )
    approx.add_argument(
        "--compare", action="store_true", help="also run the exact oracle"
    )
    approx.add_argument("--budget", type=int, help="oracle candidate budget")
    approx.add_argument("-o", "--output", help="write the solution file")
    approx.set_defaults(func=cmd_approx)

    exact = sub.add_parser(
        "exact", parents=[common], help="solve exactly by enumeration"
    )
    exact.add_argument("file")
    exact.add_argument("--budget", type=int, help="max candidate non-terminals")
    exact.add_argument("--weighted", action="store_true")
    exact.add_argument("--uvdst", action="store_true")
    exact.add_argument("-o", "--output", help="write the solution file")
    exact.set_defaults(func=cmd_exact)

    verify = sub.add_parser("verify", parents=[common], help="check a solution file")
    verify.add_argument("file")
    verify.add_argument("solution")
    verify.add_argument(
        "--shortest", action="store_true", help="require shortest tree paths"
    )
    verify.set_defaults(func=cmd_verify)

    reduce = sub.add_parser("reduce", parents=[common], help="transform an instance")
    reduce.add_argument("file")
    reduce.add_argument(
        "--to", choices=("dsspt", "usspt", "gadget-from-cover"), required=True
    )
    reduce.add_argument("-o", "--output")
    reduce.set_defaults(func=cmd_reduce)

    bench = sub.add_parser(
        "bench", parents=[common], help="benchmark a corpus directory"
    )
    bench.add_argument("--corpus", required=True)
    bench.add_argument("--budget", type=int)
    bench.add_argument("--jobs", type=int, help="worker processes, default one per CPU")
    bench.add_argument("--csv", help="also write the table as CSV")
    bench.set_defaults(func=cmd_bench)

    return parser


def exit_code_for(exc: BaseException) -> int:
    """
    Maps a library error to the process exit code
    """
    if isinstance(exc, TooLarge):
        return EXIT_BUDGET
    if isinstance(exc, _INFEASIBLE_ERRORS):
        return EXIT_INFEASIBLE
    return EXIT_USAGE


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    level = max(logging.DEBUG, logging.WARNING - 10 * args.verbose)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")

    try:
        return args.func(args)
    except (ParseError, InvariantViolation, InvalidSpec, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SsptError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exit_code_for(exc)
