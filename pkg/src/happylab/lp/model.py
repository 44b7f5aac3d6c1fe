"""A small linear-program container with named variables."""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from typing import Dict, List, Mapping, NamedTuple, Optional, Tuple, Union

Number = Union[Fraction, float, int]


class Sense(str, Enum):
    minimize = "min"
    maximize = "max"


class Relation(str, Enum):
    le = "<="
    eq = "="
    ge = ">="


class LPStatus(str, Enum):
    optimal = "optimal"
    infeasible = "infeasible"
    unbounded = "unbounded"


class Constraint(NamedTuple):
    coeffs: Tuple[Tuple[int, Number], ...]   # (variable index, coefficient)
    relation: Relation
    rhs: Number
    name: str


class LPSolution(NamedTuple):
    status: LPStatus
    objective: Optional[Number]
    values: Dict[str, Number]
    pivots: int = 0

    @property
    def is_optimal(self) -> bool:
        return self.status == LPStatus.optimal


class LinearProgram:
    """Variables are registered by name and addressed by insertion index."""

    def __init__(self, sense: Sense, name: str = "lp") -> None:
        self.name = name
        self.sense = sense
        self.names: List[str] = []
        self.lower: List[Number] = []
        self.upper: List[Optional[Number]] = []
        self.costs: List[Number] = []
        self.constraints: List[Constraint] = []
        self._index: Dict[str, int] = {}

    # ------------------------------------------------------------------
    # Building
    # ------------------------------------------------------------------

    def add_variable(
        self,
        name: str,
        lower: Number = 0,
        upper: Optional[Number] = None,
        cost: Number = 0,
    ) -> int:
        if name in self._index:
            raise ValueError(f"Variable {name!r} is already registered")
        if upper is not None and upper < lower:
            raise ValueError(f"Variable {name!r} has lower bound {lower} > upper bound {upper}")
        self._index[name] = len(self.names)
        self.names.append(name)
        self.lower.append(lower)
        self.upper.append(upper)
        self.costs.append(cost)
        return self._index[name]

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"Unknown LP variable {name!r}") from None

    def fix(self, name: str, value: Number) -> None:
        j = self.index(name)
        self.lower[j] = value
        self.upper[j] = value

    def add_constraint(
        self,
        coeffs: Mapping[str, Number],
        relation: Relation,
        rhs: Number,
        name: Optional[str] = None,
    ) -> None:
        row = tuple((self.index(var), c) for var, c in coeffs.items() if c != 0)
        label = name or f"c{len(self.constraints) + 1}"
        self.constraints.append(Constraint(row, relation, rhs, label))

    # ------------------------------------------------------------------
    # Inspection
    # ------------------------------------------------------------------

    @property
    def num_variables(self) -> int:
        return len(self.names)

    def objective_value(self, values: Mapping[str, Number]) -> Number:
        return sum(
            (c * values[n] for n, c in zip(self.names, self.costs) if c != 0),
            Fraction(0),
        )

    def violations(self, values: Mapping[str, Number], tolerance: float = 0) -> List[str]:
        """Names of constraints and bounds that *values* breaks by more than *tolerance*."""
        broken: List[str] = []
        for j, name in enumerate(self.names):
            x = values[name]
            if x < self.lower[j] - tolerance:
                broken.append(f"{name} >= {self.lower[j]}")
            upper = self.upper[j]
            if upper is not None and x > upper + tolerance:
                broken.append(f"{name} <= {upper}")
        for con in self.constraints:
            lhs = sum((c * values[self.names[j]] for j, c in con.coeffs), Fraction(0))
            gap = lhs - con.rhs
            if con.relation == Relation.le and gap > tolerance:
                broken.append(con.name)
            elif con.relation == Relation.ge and gap < -tolerance:
                broken.append(con.name)
            elif con.relation == Relation.eq and abs(gap) > tolerance:
                broken.append(con.name)
        return broken
