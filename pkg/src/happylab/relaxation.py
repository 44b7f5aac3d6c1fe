"""LP relaxations of MHV and MUHV.

Variables are named ``y_{v}_{i}``, then ``z_{v}_{i}`` / ``x_{v}_{i}``, then
``z_{v}`` / ``x_{v}`` (0-based vertex, 1-based label), registered in that
order and row-major by vertex then label.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, NamedTuple, Optional, Tuple

from happylab.console import debug
from happylab.errors import SolverFailure
from happylab.lovasz import check_labeling
from happylab.lp import LPSolver
from happylab.lp.model import LinearProgram, LPSolution, Relation, Sense
from happylab.lp.simplex import get_solver
from happylab.models import FractionalLabeling, Instance, Objective

# Largest denominator kept when snapping a floating-point labeling to rationals.
SNAP_DENOMINATOR = 1_000_000


class Tightening(NamedTuple):
    """Optimal auxiliary values for a fixed labeling."""

    per_label: Tuple[Tuple[Fraction, ...], ...]   # [v][i - 1]: z_v^i or x_v^i
    totals: Tuple[Fraction, ...]                  # z_v or x_v
    objective: Fraction


class Relaxation(NamedTuple):
    objective: Objective
    lp: LinearProgram
    solution: LPSolution
    labeling: FractionalLabeling
    value: Fraction


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------


def _add_labeling_block(lp: LinearProgram, inst: Instance) -> None:
    for v in range(inst.num_vertices):
        for i in inst.labels:
            lp.add_variable(f"y_{v}_{i}")
            if inst.precolor[v] is not None:
                lp.fix(f"y_{v}_{i}", 1 if inst.precolor[v] == i else 0)
    for v in range(inst.num_vertices):
        lp.add_constraint({f"y_{v}_{i}": 1 for i in inst.labels}, Relation.eq, 1, f"rowsum_{v}")


def build_lp_mhv(inst: Instance) -> LinearProgram:
    """maximize sum w_v z_v with z_v^i <= y_h^i over the closed neighbourhood of v."""
    lp = LinearProgram(Sense.maximize, "lp_mhv")
    _add_labeling_block(lp, inst)
    for v in range(inst.num_vertices):
        for i in inst.labels:
            lp.add_variable(f"z_{v}_{i}")
    for v in range(inst.num_vertices):
        lp.add_variable(f"z_{v}", cost=inst.weights[v])

    for v in range(inst.num_vertices):
        closed = sorted((v,) + inst.neighbors[v])
        for i in inst.labels:
            for h in closed:
                lp.add_constraint(
                    {f"z_{v}_{i}": 1, f"y_{h}_{i}": -1}, Relation.le, 0, f"min_{v}_{i}_{h}"
                )
        total = {f"z_{v}": 1}
        total.update({f"z_{v}_{i}": -1 for i in inst.labels})
        lp.add_constraint(total, Relation.eq, 0, f"sum_{v}")
    return lp


def build_lp_muhv(inst: Instance) -> LinearProgram:
    """minimize sum w_v x_v with x_v^i >= y_v^i - y_h^i over the open neighbourhood of v."""
    lp = LinearProgram(Sense.minimize, "lp_muhv")
    _add_labeling_block(lp, inst)
    for v in range(inst.num_vertices):
        for i in inst.labels:
            lp.add_variable(f"x_{v}_{i}")
    for v in range(inst.num_vertices):
        lp.add_variable(f"x_{v}", cost=inst.weights[v])

    for v in range(inst.num_vertices):
        for i in inst.labels:
            for h in inst.neighbors[v]:
                lp.add_constraint(
                    {f"x_{v}_{i}": 1, f"y_{v}_{i}": -1, f"y_{h}_{i}": 1},
                    Relation.ge,
                    0,
                    f"gap_{v}_{i}_{h}",
                )
        total = {f"x_{v}": 1}
        total.update({f"x_{v}_{i}": -1 for i in inst.labels})
        lp.add_constraint(total, Relation.eq, 0, f"sum_{v}")
    return lp


def build_lp(inst: Instance, objective: Objective) -> LinearProgram:
    return build_lp_mhv(inst) if objective == Objective.mhv else build_lp_muhv(inst)


# ---------------------------------------------------------------------------
# Solving
# ---------------------------------------------------------------------------


def solve_lp(lp: LinearProgram, solver: Optional[LPSolver] = None) -> LPSolution:
    return (solver or get_solver()).solve(lp)


def extract_labeling(inst: Instance, solution: LPSolution) -> FractionalLabeling:
    """Read the y block back as a FractionalLabeling.

    Floating-point values are snapped to nearby rationals and each row is
    repaired on its largest entry so the row sums stay exactly 1.
    """
    rows: List[List[Fraction]] = []
    for v in range(inst.num_vertices):
        label = inst.precolor[v]
        if label is not None:
            rows.append([Fraction(int(i == label)) for i in inst.labels])
            continue
        raw = [solution.values[f"y_{v}_{i}"] for i in inst.labels]
        if all(isinstance(x, Fraction) for x in raw):
            rows.append(list(raw))
            continue
        row = [
            min(Fraction(1), max(Fraction(0), Fraction(x).limit_denominator(SNAP_DENOMINATOR)))
            for x in raw
        ]
        top = max(range(len(row)), key=lambda j: (row[j], -j))
        row[top] += 1 - sum(row)
        rows.append(row)
    return FractionalLabeling.of(rows)


def relax(inst: Instance, objective: Objective, solver: Optional[LPSolver] = None) -> Relaxation:
    """Build and solve the LP matching *objective*; return its optimum and labeling."""
    solver = solver or get_solver()
    lp = build_lp(inst, objective)
    debug(f"{lp.name}: {lp.num_variables} variables, {len(lp.constraints)} constraints")
    solution = solver.solve(lp)
    if not solution.is_optimal:
        raise SolverFailure(f"{lp.name} came back {solution.status.value}")
    labeling = extract_labeling(inst, solution)
    if solver.exact:
        value = Fraction(solution.objective)
    else:
        value = tighten(inst, labeling, objective).objective
    return Relaxation(objective, lp, solution, labeling, value)


# ---------------------------------------------------------------------------
# Tightening
# ---------------------------------------------------------------------------


def tighten_mhv(inst: Instance, Y: FractionalLabeling) -> Tightening:
    """z_v^i = min of y^i over the closed neighbourhood of v."""
    check_labeling(inst, Y)
    per_label = []
    for v in range(inst.num_vertices):
        closed = (v,) + inst.neighbors[v]
        per_label.append(tuple(min(Y.values[h][i - 1] for h in closed) for i in inst.labels))
    return _totals(inst, per_label)


def tighten_muhv(inst: Instance, Y: FractionalLabeling) -> Tightening:
    """x_v^i = max(0, y_v^i - y_h^i) over the open neighbourhood of v."""
    check_labeling(inst, Y)
    per_label = []
    for v in range(inst.num_vertices):
        row = Y.values[v]
        per_label.append(
            tuple(
                max([Fraction(0)] + [row[i - 1] - Y.values[h][i - 1] for h in inst.neighbors[v]])
                for i in inst.labels
            )
        )
    return _totals(inst, per_label)


def tighten(inst: Instance, Y: FractionalLabeling, objective: Objective) -> Tightening:
    return tighten_mhv(inst, Y) if objective == Objective.mhv else tighten_muhv(inst, Y)


def _totals(inst: Instance, per_label: List[Tuple[Fraction, ...]]) -> Tightening:
    totals = tuple(sum(row, Fraction(0)) for row in per_label)
    objective = sum((w * t for w, t in zip(inst.weights, totals)), Fraction(0))
    return Tightening(tuple(per_label), totals, objective)
