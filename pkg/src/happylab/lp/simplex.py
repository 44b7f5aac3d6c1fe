"""Dense two-phase simplex with Bland's rule, over Fractions or floats.

The exact mode keeps every tableau entry a ``Fraction`` and compares against
zero; the float mode compares against ``tolerance``. A presolve pass removes
fixed variables and turns single-variable rows into bounds before the tableau
is built, which shrinks the happiness LPs considerably (pre-colored rows are
fully determined).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from happylab.console import debug
from happylab.errors import SolverFailure
from happylab.lp import LPSolver
from happylab.lp.model import (
    LinearProgram,
    LPSolution,
    LPStatus,
    Number,
    Relation,
    Sense,
)
from happylab.models import to_fraction

TOLERANCE = 1e-9
_MAX_PIVOTS = 200_000

_FLIP = {Relation.le: Relation.ge, Relation.ge: Relation.le, Relation.eq: Relation.eq}

Row = Tuple[Dict[int, Number], Relation, Number]


class _Infeasible(Exception):
    pass


class SimplexSolver:
    def __init__(
        self,
        exact: bool = True,
        tolerance: float = TOLERANCE,
        max_pivots: int = _MAX_PIVOTS,
    ) -> None:
        self.exact = exact
        self.tolerance = tolerance
        self.max_pivots = max_pivots
        self._eps: Number = Fraction(0) if exact else tolerance
        self._zero: Number = Fraction(0) if exact else 0.0
        self._one: Number = Fraction(1) if exact else 1.0

    def _num(self, x: Number) -> Number:
        return to_fraction(x) if self.exact else float(x)

    # ------------------------------------------------------------------
    # Public API
    # ------------------------------------------------------------------

    def solve(self, lp: LinearProgram) -> LPSolution:
        try:
            lower, upper, fixed, rows = self._presolve(lp)
        except _Infeasible:
            return LPSolution(LPStatus.infeasible, None, {})

        free = [j for j in range(lp.num_variables) if j not in fixed]
        status, shifted, pivots = self._two_phase(lp, free, lower, upper, rows)
        if status != LPStatus.optimal:
            debug(f"simplex: {lp.name} is {status.value} after {pivots} pivots")
            return LPSolution(status, None, {}, pivots)

        values: Dict[str, Number] = {}
        for j, name in enumerate(lp.names):
            values[name] = fixed[j] if j in fixed else lower[j] + shifted.get(j, self._zero)

        broken = lp.violations(values, 0 if self.exact else self.tolerance)
        if broken:
            raise SolverFailure(
                f"Simplex returned a point violating {len(broken)} constraint(s) of "
                f"{lp.name}: {', '.join(broken[:5])}"
            )
        objective = lp.objective_value(values)
        debug(
            f"simplex: {lp.name} optimal after {pivots} pivots "
            f"({len(free)} free of {lp.num_variables} variables)"
        )
        return LPSolution(LPStatus.optimal, objective, values, pivots)

    # ------------------------------------------------------------------
    # Presolve
    # ------------------------------------------------------------------

    def _holds(self, lhs: Number, relation: Relation, rhs: Number) -> bool:
        gap = lhs - rhs
        if relation == Relation.le:
            return gap <= self._eps
        if relation == Relation.ge:
            return gap >= -self._eps
        return abs(gap) <= self._eps

    def _presolve(
        self, lp: LinearProgram
    ) -> Tuple[List[Number], List[Optional[Number]], Dict[int, Number], List[Row]]:
        lower = [self._num(x) for x in lp.lower]
        upper = [None if u is None else self._num(u) for u in lp.upper]
        rows: List[Row] = [
            ({j: self._num(c) for j, c in con.coeffs}, con.relation, self._num(con.rhs))
            for con in lp.constraints
        ]
        fixed: Dict[int, Number] = {}

        changed = True
        while changed:
            changed = False
            for j in range(lp.num_variables):
                if j in fixed or upper[j] is None:
                    continue
                if upper[j] < lower[j] - self._eps:
                    raise _Infeasible
                if upper[j] - lower[j] <= self._eps:
                    fixed[j] = lower[j]
                    changed = True

            kept: List[Row] = []
            for coeffs, relation, rhs in rows:
                for j in [j for j in coeffs if j in fixed]:
                    rhs -= coeffs.pop(j) * fixed[j]
                if not coeffs:
                    if not self._holds(self._zero, relation, rhs):
                        raise _Infeasible
                    continue
                if len(coeffs) == 1:
                    ((j, a),) = coeffs.items()
                    bound = rhs / a
                    rel = relation if a > 0 else _FLIP[relation]
                    if rel in (Relation.le, Relation.eq):
                        upper[j] = bound if upper[j] is None else min(upper[j], bound)
                    if rel in (Relation.ge, Relation.eq):
                        lower[j] = max(lower[j], bound)
                    changed = True
                    continue
                kept.append((coeffs, relation, rhs))
            rows = kept
        return lower, upper, fixed, rows

    # ------------------------------------------------------------------
    # Tableau
    # ------------------------------------------------------------------

    def _two_phase(
        self,
        lp: LinearProgram,
        free: List[int],
        lower: List[Number],
        upper: List[Optional[Number]],
        rows: List[Row],
    ) -> Tuple[LPStatus, Dict[int, Number], int]:
        column = {j: c for c, j in enumerate(free)}
        p = len(free)

        # Shift x = lower + x' so every structural column is x' >= 0.
        shaped: List[Tuple[Dict[int, Number], Relation, Number]] = []
        for coeffs, relation, rhs in rows:
            rhs = rhs - sum((a * lower[j] for j, a in coeffs.items()), self._zero)
            shaped.append(({column[j]: a for j, a in coeffs.items()}, relation, rhs))
        for j in free:
            if upper[j] is not None:
                shaped.append(({column[j]: self._one}, Relation.le, upper[j] - lower[j]))

        normalized = []
        for coeffs, relation, rhs in shaped:
            if rhs < 0:
                coeffs = {c: -a for c, a in coeffs.items()}
                relation, rhs = _FLIP[relation], -rhs
            normalized.append((coeffs, relation, rhs))

        num_slack = sum(1 for _, rel, _ in normalized if rel != Relation.eq)
        num_art = sum(1 for _, rel, _ in normalized if rel != Relation.le)
        first_art = p + num_slack
        width = first_art + num_art

        tableau: List[List[Number]] = []
        basis: List[int] = []
        slack, art = p, first_art
        for coeffs, relation, rhs in normalized:
            row = [self._zero] * (width + 1)
            for c, a in coeffs.items():
                row[c] = a
            row[-1] = rhs
            if relation == Relation.le:
                row[slack] = self._one
                basis.append(slack)
                slack += 1
            else:
                if relation == Relation.ge:
                    row[slack] = -self._one
                    slack += 1
                row[art] = self._one
                basis.append(art)
                art += 1
            tableau.append(row)

        pivots = 0
        if num_art:
            z = [self._zero] * (width + 1)
            for c in range(first_art, width):
                z[c] = -self._one
            for i, b in enumerate(basis):
                if b >= first_art:
                    z = [zc + tc for zc, tc in zip(z, tableau[i])]
            status, pivots = self._optimize(tableau, z, basis, width, pivots)
            if -z[-1] < -self._eps:
                return LPStatus.infeasible, {}, pivots
            pivots = self._drive_out(tableau, basis, first_art, pivots)

        sign = 1 if lp.sense == Sense.maximize else -1
        cost = [self._zero] * (width + 1)
        for j in free:
            cost[column[j]] = sign * self._num(lp.costs[j])
        z = list(cost)
        for i, b in enumerate(basis):
            if cost[b]:
                cb = cost[b]
                z = [zc - cb * tc for zc, tc in zip(z, tableau[i])]
        status, pivots = self._optimize(tableau, z, basis, first_art, pivots)
        if status != LPStatus.optimal:
            return status, {}, pivots

        shifted = {free[b]: tableau[i][-1] for i, b in enumerate(basis) if b < p}
        return LPStatus.optimal, shifted, pivots

    def _optimize(
        self,
        tableau: List[List[Number]],
        z: List[Number],
        basis: List[int],
        limit: int,
        pivots: int,
    ) -> Tuple[LPStatus, int]:
        """Run Bland's rule pivots; only columns below *limit* may enter."""
        eps = self._eps
        while True:
            entering = next((c for c in range(limit) if z[c] > eps), None)
            if entering is None:
                return LPStatus.optimal, pivots
            leave: Optional[int] = None
            best: Optional[Number] = None
            for i, row in enumerate(tableau):
                a = row[entering]
                if a <= eps:
                    continue
                ratio = row[-1] / a
                if (
                    best is None
                    or ratio < best - eps
                    or (abs(ratio - best) <= eps and basis[i] < basis[leave])
                ):
                    leave, best = i, ratio
            if leave is None:
                return LPStatus.unbounded, pivots
            self._pivot(tableau, z, basis, leave, entering)
            pivots += 1
            if pivots > self.max_pivots:
                raise SolverFailure(f"Simplex exceeded {self.max_pivots} pivots")

    def _drive_out(
        self, tableau: List[List[Number]], basis: List[int], first_art: int, pivots: int
    ) -> int:
        """Pivot zero-valued artificials out of the basis; drop redundant rows."""
        i = 0
        while i < len(tableau):
            if basis[i] < first_art:
                i += 1
                continue
            row = tableau[i]
            j = next((c for c in range(first_art) if abs(row[c]) > self._eps), None)
            if j is None:
                del tableau[i]
                del basis[i]
                continue
            self._pivot(tableau, None, basis, i, j)
            pivots += 1
            i += 1
        return pivots

    def _pivot(
        self,
        tableau: List[List[Number]],
        z: Optional[List[Number]],
        basis: List[int],
        r: int,
        j: int,
    ) -> None:
        row = tableau[r]
        p = row[j]
        if p != 1:
            for c, v in enumerate(row):
                if v:
                    row[c] = v / p
        row[j] = self._one
        nonzero = [c for c, v in enumerate(row) if v]
        targets = [other for i, other in enumerate(tableau) if i != r]
        if z is not None:
            targets.append(z)
        for other in targets:
            f = other[j]
            if not f:
                continue
            for c in nonzero:
                other[c] -= f * row[c]
            other[j] = self._zero
        basis[r] = j


def get_solver(name: Optional[str] = None) -> LPSolver:
    """Return the LP backend named *name*, or the one selected on the command line."""
    from happylab.state import SolverName, state

    choice = SolverName(name) if name else state.solver
    if choice == SolverName.highs:
        from happylab.lp.highs import HighsSolver

        return HighsSolver()
    return SimplexSolver(exact=choice == SolverName.exact)
