"""θ-threshold rounding of fractional labelings.

For θ in (1/2, 1] every vertex whose y_v^i exceeds θ (strictly) gets label i;
the remaining vertices all get one fallback label i'. The random variant draws
θ and i' uniformly; the derandomized variant enumerates every distinct
outcome together with its exact probability.
"""

from __future__ import annotations

import random
from enum import Enum
from fractions import Fraction
from typing import List, NamedTuple, Optional, Tuple

from happylab.console import debug
from happylab.errors import OutOfRange, PrecolorViolation, ThetaOutOfRange
from happylab.graph import VertexSubset, evaluate
from happylab.lovasz import check_labeling
from happylab.lp import LPSolver
from happylab.models import Coloring, FractionalLabeling, Instance, Objective, to_fraction
from happylab.relaxation import relax

HALF = Fraction(1, 2)

# θ = (2^64 + m) / 2^65 with m drawn from 64 random bits, m != 0.
_THETA_BITS = 64


class RoundingMode(str, Enum):
    random = "random"
    derandomized = "derandomized"


class LevelSets(NamedTuple):
    parts: Tuple[VertexSubset, ...]   # S_i(θ), index i - 1
    covered: VertexSubset             # S(θ)
    residual: VertexSubset            # R(θ)
    mirror: VertexSubset              # Q(θ) = R(1 - θ), diagnostic only


class RoundingOutcome(NamedTuple):
    theta: Fraction
    fallback_label: int
    coloring: Coloring
    value_mhv: Fraction
    value_muhv: Fraction
    lp_value: Optional[Fraction] = None

    def value(self, objective: Objective) -> Fraction:
        return self.value_mhv if objective == Objective.mhv else self.value_muhv


class RoundingCell(NamedTuple):
    low: Fraction
    high: Fraction
    fallback_label: int
    probability: Fraction
    outcome: RoundingOutcome


class RoundingDistribution(NamedTuple):
    cells: Tuple[RoundingCell, ...]
    expected_mhv: Fraction
    expected_muhv: Fraction

    def expected(self, objective: Objective) -> Fraction:
        return self.expected_mhv if objective == Objective.mhv else self.expected_muhv


# ---------------------------------------------------------------------------
# Level sets
# ---------------------------------------------------------------------------


def _above(Y: FractionalLabeling, threshold: Fraction) -> Tuple[VertexSubset, ...]:
    parts = [0] * Y.num_labels
    for v, row in enumerate(Y.values):
        for i, y in enumerate(row):
            if y > threshold:
                parts[i] |= 1 << v
    return tuple(parts)


def _residual(Y: FractionalLabeling, threshold: Fraction) -> VertexSubset:
    covered = 0
    for part in _above(Y, threshold):
        covered |= part
    return ((1 << Y.num_vertices) - 1) & ~covered


def level_sets(Y: FractionalLabeling, theta: object) -> LevelSets:
    theta = to_fraction(theta)
    if not HALF < theta <= 1:
        raise ThetaOutOfRange(theta)
    parts = _above(Y, theta)
    covered = 0
    for part in parts:
        covered |= part
    residual = ((1 << Y.num_vertices) - 1) & ~covered
    return LevelSets(parts, covered, residual, _residual(Y, 1 - theta))


# ---------------------------------------------------------------------------
# Single draws
# ---------------------------------------------------------------------------


def round_at(
    inst: Instance, Y: FractionalLabeling, theta: object, fallback: int
) -> RoundingOutcome:
    """The coloring produced by one fixed (θ, i') pair.

    At θ = 1 no entry exceeds the threshold, so pre-colored vertices would be
    relabelled; that raises PrecolorViolation.
    """
    check_labeling(inst, Y)
    if not 1 <= fallback <= inst.num_labels:
        raise OutOfRange(f"Fallback label {fallback} outside 1..{inst.num_labels}")
    sets = level_sets(Y, theta)
    assignment = [fallback] * inst.num_vertices
    for i, part in enumerate(sets.parts, start=1):
        for v in range(inst.num_vertices):
            if part >> v & 1:
                assignment[v] = i
    for v, label in enumerate(inst.precolor):
        if label is not None and assignment[v] != label:
            raise PrecolorViolation(v, label, assignment[v])
    coloring = Coloring(assignment=tuple(assignment))
    return RoundingOutcome(
        theta=to_fraction(theta),
        fallback_label=fallback,
        coloring=coloring,
        value_mhv=evaluate(inst, coloring, Objective.mhv),
        value_muhv=evaluate(inst, coloring, Objective.muhv),
    )


def draw_theta(rng: random.Random) -> Fraction:
    """Uniform θ in the open interval (1/2, 1) at 64-bit resolution."""
    m = 0
    while m == 0:
        m = rng.getrandbits(_THETA_BITS)
    return Fraction((1 << _THETA_BITS) + m, 1 << (_THETA_BITS + 1))


def round_random(inst: Instance, Y: FractionalLabeling, seed: int) -> RoundingOutcome:
    """One randomized rounding draw, reproducible from *seed* (Mersenne Twister)."""
    rng = random.Random(seed)
    theta = draw_theta(rng)
    fallback = rng.randrange(inst.num_labels) + 1
    return round_at(inst, Y, theta, fallback)


# ---------------------------------------------------------------------------
# Derandomization
# ---------------------------------------------------------------------------


def breakpoints(Y: FractionalLabeling) -> List[Fraction]:
    """1/2, 1 and every distinct entry of Y strictly between them, ascending."""
    inner = {y for row in Y.values for y in row if HALF < y < 1}
    return sorted(inner | {HALF, Fraction(1)})


def round_derandomized(
    inst: Instance, Y: FractionalLabeling, objective: Objective
) -> Tuple[RoundingOutcome, RoundingDistribution]:
    """Enumerate every (θ-interval, fallback label) cell and pick the best.

    The coloring is constant while θ stays strictly between two consecutive
    breakpoints, so each cell is evaluated at its midpoint.
    """
    check_labeling(inst, Y)
    points = breakpoints(Y)
    share = Fraction(1, inst.num_labels)
    cells: List[RoundingCell] = []
    for low, high in zip(points, points[1:]):
        theta = (low + high) / 2
        weight = (high - low) / HALF * share
        for fallback in inst.labels:
            outcome = round_at(inst, Y, theta, fallback)
            cells.append(RoundingCell(low, high, fallback, weight, outcome))
    debug(f"derandomized rounding: {len(points) - 1} intervals, {len(cells)} cells")

    expected_mhv = sum((c.probability * c.outcome.value_mhv for c in cells), Fraction(0))
    expected_muhv = sum((c.probability * c.outcome.value_muhv for c in cells), Fraction(0))
    best = cells[0]
    for cell in cells[1:]:
        current, candidate = best.outcome.value(objective), cell.outcome.value(objective)
        better = candidate > current if objective == Objective.mhv else candidate < current
        if better:
            best = cell
    return best.outcome, RoundingDistribution(tuple(cells), expected_mhv, expected_muhv)


# ---------------------------------------------------------------------------
# Pipeline
# ---------------------------------------------------------------------------


def solve_approx(
    inst: Instance,
    objective: Objective,
    mode: RoundingMode = RoundingMode.derandomized,
    seed: int = 0,
    solver: Optional[LPSolver] = None,
) -> RoundingOutcome:
    """Solve the matching LP relaxation and round its labeling."""
    relaxation = relax(inst, objective, solver)
    if mode == RoundingMode.random:
        outcome = round_random(inst, relaxation.labeling, seed)
    else:
        outcome, _ = round_derandomized(inst, relaxation.labeling, objective)
    return outcome._replace(lp_value=relaxation.value)
