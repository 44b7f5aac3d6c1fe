"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations

from typing import Tuple


class HappyLabError(Exception):
    """Base class for every error raised by happylab."""


# ---------------------------------------------------------------------------
# Instance / coloring validation
# ---------------------------------------------------------------------------


class InstanceError(HappyLabError, ValueError):
    """An instance or coloring breaks one of its invariants."""


class EmptyLabelClass(InstanceError):
    def __init__(self, label: int) -> None:
        self.label = label
        super().__init__(f"Label {label} is not pre-assigned to any vertex")


class BadEdge(InstanceError):
    def __init__(self, edge: Tuple[int, int], reason: str) -> None:
        self.edge = edge
        super().__init__(f"Bad edge {edge}: {reason}")


class NegativeWeight(InstanceError):
    def __init__(self, vertex: int) -> None:
        self.vertex = vertex
        super().__init__(f"Vertex {vertex} has a negative weight")


class PrecolorViolation(InstanceError):
    def __init__(self, vertex: int, expected: int, got: int) -> None:
        self.vertex = vertex
        super().__init__(
            f"Vertex {vertex} is pre-colored {expected} but the coloring assigns {got}"
        )


# ---------------------------------------------------------------------------
# Numeric domain errors
# ---------------------------------------------------------------------------


class OutOfRange(HappyLabError, ValueError):
    """A fractional value lies outside [0, 1] or a required endpoint is missing."""


class InvariantViolation(HappyLabError, ValueError):
    """A fractional labeling is infeasible for the instance it is used with."""


class ThetaOutOfRange(HappyLabError, ValueError):
    def __init__(self, theta: object) -> None:
        self.theta = theta
        super().__init__(f"theta must lie in (1/2, 1], got {theta}")


class BadParameters(HappyLabError, ValueError):
    """Generator parameters are outside their documented ranges."""


class InvalidHypergraph(HappyLabError, ValueError):
    """A hypergraph breaks one of its invariants."""


class FormatError(HappyLabError, ValueError):
    """A happygraph / happyhyper file could not be parsed."""

    def __init__(self, message: str, line: int = 0) -> None:
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


# ---------------------------------------------------------------------------
# Solvers
# ---------------------------------------------------------------------------


class SolverFailure(HappyLabError, RuntimeError):
    """The LP backend could not produce a trustworthy answer."""


class BudgetExceeded(HappyLabError, RuntimeError):
    def __init__(self, size: int, base: int, budget: int) -> None:
        self.size = size
        self.base = base
        self.budget = budget
        super().__init__(
            f"Exhaustive search needs {base}^{size} candidates, over the budget of {budget}"
        )
