import logging
import os
from dataclasses import dataclass, field
from typing import Any, List, Optional

_LOGGER = logging.getLogger(__name__)

MAX_EDGE_WEIGHT = 2**40

FORMAT_VERSION = 1

DEFAULT_ORACLE_BUDGET = 22
EXACT_COVER_MAX_SUBSETS = 25
DEFAULT_PATH_SAMPLES = 50

ORACLE_BUDGET_ENV = "SSPT_ORACLE_BUDGET"
ORACLE_TIME_LIMIT_ENV = "SSPT_ORACLE_TIME_LIMIT"


class SsptError(Exception):
    """
    Base error for sspt
    """


class InvariantViolation(SsptError):
    """
    Error raised when a graph, instance or tree breaks one of its invariants
    """


class ParseError(SsptError):
    """
    Error related to a malformed instance, solution or set cover file

    ``location`` is a line/column or field name

    ``reason`` says what was wrong there
    """

    def __init__(self, location: str, reason: str):
        super().__init__(f"{location}: {reason}")
        self.location = location
        self.reason = reason


class UnreachableTarget(SsptError):
    """
    Error raised when a required vertex cannot be reached from the source
    """

    def __init__(self, vertex: int, message: Optional[str] = None):
        super().__init__(message or f"vertex {vertex} is unreachable from the source")
        self.vertex = vertex


class TerminalUnreachable(UnreachableTarget):
    """
    Error raised when a terminal cannot be reached from the source
    """

    def __init__(self, vertex: int):
        super().__init__(vertex, f"terminal {vertex} is unreachable from the source")


class InfeasibleCover(SsptError):
    """
    Error raised when a set cover instance has no cover
    """


class PreconditionViolated(SsptError):
    """
    Error raised when an operation is called outside of its precondition
    """


class TooLarge(SsptError):
    """
    Error raised when an exhaustive search would exceed its budget
    """


class NotAcyclic(SsptError):
    """
    Error raised when a transform needs a DAG and gets a cyclic graph
    """


class InfeasibleTree(SsptError):
    """
    Error raised when a tree is not a feasible solution for its instance
    """


class InvalidSpec(SsptError):
    """
    Error related to bad generator parameters or configuration values
    """


@dataclass
class VerificationReport:
    """
    Result of a verification pass. Verification never raises, failures are
    collected here instead.

    ``witness`` is the first offending vertex or edge, if any
    """

    passed: bool = True
    failures: List[str] = field(default_factory=list)
    witness: Optional[Any] = None

    def fail(self, reason: str, witness: Any = None) -> None:
        """
        Records a failure, keeping the first witness seen
        """
        _LOGGER.debug("verification failure: %s", reason)
        self.passed = False
        self.failures.append(reason)
        if self.witness is None:
            self.witness = witness


def env_int(name: str, default: Optional[int]) -> Optional[int]:
    """
    Reads a nonnegative integer from the environment, ``default`` when unset
    """
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default

    try:
        value = int(raw)
    except ValueError:
        raise InvalidSpec(f"{name} must be an integer, got {raw!r}") from None

    if value < 0:
        raise InvalidSpec(f"{name} must be nonnegative, got {value}")

    return value
