"""LP solver interface."""

from __future__ import annotations

from typing import Protocol, runtime_checkable

from happylab.lp.model import LinearProgram, LPSolution


@runtime_checkable
class LPSolver(Protocol):
    """Shared interface for the built-in simplex and external backends."""

    exact: bool
    tolerance: float

    def solve(self, lp: LinearProgram) -> LPSolution: ...
