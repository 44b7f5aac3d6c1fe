"""HiGHS backend through ``scipy.optimize.linprog``.

Requires the optional ``highs`` extra (scipy). Imported lazily by
:func:`happylab.lp.simplex.get_solver` so the base install never touches scipy.
"""

from __future__ import annotations

from typing import Dict, List

from happylab.console import debug
from happylab.errors import SolverFailure
from happylab.lp.model import LinearProgram, LPSolution, LPStatus, Number, Relation, Sense

TOLERANCE = 1e-9

# linprog status codes
_OPTIMAL, _ITERATION_LIMIT, _INFEASIBLE, _UNBOUNDED = 0, 1, 2, 3


class HighsSolver:
    exact = False

    def __init__(self, tolerance: float = TOLERANCE) -> None:
        try:
            from scipy.optimize import linprog
        except ImportError:
            raise SolverFailure(
                "The highs solver needs scipy. Install it with: pip install 'happylab[highs]'"
            ) from None
        self._linprog = linprog
        self.tolerance = tolerance

    def solve(self, lp: LinearProgram) -> LPSolution:
        n = lp.num_variables
        sign = -1.0 if lp.sense == Sense.maximize else 1.0
        c = [sign * float(x) for x in lp.costs]

        A_ub: List[List[float]] = []
        b_ub: List[float] = []
        A_eq: List[List[float]] = []
        b_eq: List[float] = []
        for con in lp.constraints:
            row = [0.0] * n
            for j, a in con.coeffs:
                row[j] = float(a)
            if con.relation == Relation.eq:
                A_eq.append(row)
                b_eq.append(float(con.rhs))
            elif con.relation == Relation.le:
                A_ub.append(row)
                b_ub.append(float(con.rhs))
            else:
                A_ub.append([-a for a in row])
                b_ub.append(-float(con.rhs))

        bounds = [
            (float(lo), None if hi is None else float(hi))
            for lo, hi in zip(lp.lower, lp.upper)
        ]
        result = self._linprog(
            c,
            A_ub=A_ub or None,
            b_ub=b_ub or None,
            A_eq=A_eq or None,
            b_eq=b_eq or None,
            bounds=bounds,
            method="highs",
        )
        debug(f"highs: {lp.name} status {result.status} ({result.message})")

        if result.status == _INFEASIBLE:
            return LPSolution(LPStatus.infeasible, None, {})
        if result.status == _UNBOUNDED:
            return LPSolution(LPStatus.unbounded, None, {})
        if result.status != _OPTIMAL:
            raise SolverFailure(f"HiGHS failed on {lp.name}: {result.message}")

        values: Dict[str, Number] = {name: float(x) for name, x in zip(lp.names, result.x)}
        broken = lp.violations(values, self.tolerance * max(1, n))
        if broken:
            raise SolverFailure(
                f"HiGHS returned a point violating {len(broken)} constraint(s) of "
                f"{lp.name}: {', '.join(broken[:5])}"
            )
        return LPSolution(LPStatus.optimal, lp.objective_value(values), values, int(result.nit))
