"""Lovász extension of set functions over vertex subsets.

Two evaluation paths are provided. :func:`lovasz_value` integrates the level
sets ``{v : y_v >= t}`` over ``t`` in [0, 1] and accepts any vector in
[0, 1]^n. :func:`lovasz_telescoping` is the permutation sum
``sum_j (y_pi(j) - y_pi(j+1)) h({pi(1)..pi(j)})`` and requires the vector to
contain both a 1 and a 0; it serves as a cross-check of the first.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

from happylab.errors import InvariantViolation, OutOfRange
from happylab.graph import VertexSubset, f_unhappy, g_happy
from happylab.models import FractionalLabeling, Instance, Objective, to_fraction


class Orientation(str, Enum):
    submodular = "submodular"
    supermodular = "supermodular"
    unknown = "unknown"


class SetFunctionHandle:
    """A set function on subsets of ``0..n-1`` together with its declared orientation."""

    def __init__(
        self,
        evaluator: Callable[[VertexSubset], Fraction],
        num_vertices: int,
        orientation: Orientation = Orientation.unknown,
    ) -> None:
        self.evaluator = evaluator
        self.num_vertices = num_vertices
        self.orientation = orientation
        empty = evaluator(0)
        if empty != 0:
            raise InvariantViolation(f"A set function must vanish on the empty set, got {empty}")

    def __call__(self, X: VertexSubset) -> Fraction:
        return self.evaluator(X)

    def chain_values(self, order: Sequence[int]) -> List[Fraction]:
        """h of every prefix of *order*: ``[h({o0}), h({o0, o1}), ...]``."""
        values: List[Fraction] = []
        mask = 0
        for v in order:
            mask |= 1 << v
            values.append(self.evaluator(mask))
        return values


class GraphSetFunction(SetFunctionHandle):
    """f (boundary weight) or g (interior weight) of an instance.

    Prefix chains are evaluated incrementally: for every vertex in the growing
    set we track how many of its neighbours are still outside.
    """

    def __init__(self, inst: Instance, objective: Objective) -> None:
        self.inst = inst
        self.objective = objective
        if objective == Objective.muhv:
            super().__init__(lambda X: f_unhappy(inst, X), inst.num_vertices, Orientation.submodular)
        else:
            super().__init__(lambda X: g_happy(inst, X), inst.num_vertices, Orientation.supermodular)

    def chain_values(self, order: Sequence[int]) -> List[Fraction]:
        inst = self.inst
        weights, nbrs = inst.weights, inst.neighbors
        outside: Dict[int, int] = {}
        inside = 0
        boundary_weight = Fraction(0)
        set_weight = Fraction(0)
        values: List[Fraction] = []
        for v in order:
            inside |= 1 << v
            set_weight += weights[v]
            count = 0
            for u in nbrs[v]:
                if u in outside:
                    outside[u] -= 1
                    if outside[u] == 0:
                        boundary_weight -= weights[u]
                else:
                    count += 1
            outside[v] = count
            if count:
                boundary_weight += weights[v]
            if self.objective == Objective.muhv:
                values.append(boundary_weight)
            else:
                values.append(set_weight - boundary_weight)
        return values


def f_handle(inst: Instance) -> GraphSetFunction:
    return GraphSetFunction(inst, Objective.muhv)


def g_handle(inst: Instance) -> GraphSetFunction:
    return GraphSetFunction(inst, Objective.mhv)


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


def _coerce(y: Sequence[object], n: int) -> List[Fraction]:
    values = [to_fraction(x) for x in y]
    if len(values) != n:
        raise OutOfRange(f"Expected a vector of {n} entries, got {len(values)}")
    for v, x in enumerate(values):
        if x < 0 or x > 1:
            raise OutOfRange(f"Entry {v} = {x} lies outside [0, 1]")
    return values


def _descending(values: Sequence[Fraction]) -> List[int]:
    # Ties are broken by vertex index.
    return sorted(range(len(values)), key=lambda v: (-values[v], v))


def lovasz_value(h: SetFunctionHandle, y: Sequence[object]) -> Fraction:
    """Level-set form: sum over distinct values u_1 > ... > u_m of (u_r - u_{r+1}) h({y >= u_r})."""
    values = _coerce(y, h.num_vertices)
    order = _descending(values)
    chain = h.chain_values(order)
    total = Fraction(0)
    for j, v in enumerate(order):
        following = values[order[j + 1]] if j + 1 < len(order) else Fraction(0)
        step = values[v] - following
        if step:
            total += step * chain[j]
    return total


def lovasz_telescoping(
    h: SetFunctionHandle, y: Sequence[object], order: Optional[Sequence[int]] = None
) -> Fraction:
    """Permutation form over ``1 = y_pi(1) >= ... >= y_pi(n) = 0``.

    *order* may fix a particular non-increasing permutation; by default ties
    go to the smaller vertex index.
    """
    values = _coerce(y, h.num_vertices)
    if max(values) != 1 or min(values) != 0:
        raise OutOfRange("The permutation form needs an entry equal to 1 and an entry equal to 0")
    if order is None:
        order = _descending(values)
    else:
        order = list(order)
        if sorted(order) != list(range(h.num_vertices)):
            raise InvariantViolation("order must be a permutation of the vertices")
        if any(values[a] < values[b] for a, b in zip(order, order[1:])):
            raise InvariantViolation("order must list the entries in non-increasing order")
    chain = h.chain_values(order[:-1])
    return sum(
        ((values[order[j]] - values[order[j + 1]]) * chain[j] for j in range(len(order) - 1)),
        Fraction(0),
    )


def check_labeling(inst: Instance, Y: FractionalLabeling) -> None:
    """Raise InvariantViolation unless *Y* is a feasible labeling for *inst*."""
    if Y.num_vertices != inst.num_vertices or Y.num_labels != inst.num_labels:
        raise InvariantViolation(
            f"Labeling is {Y.num_vertices}x{Y.num_labels}, "
            f"instance needs {inst.num_vertices}x{inst.num_labels}"
        )
    for v, label in enumerate(inst.precolor):
        if label is not None and Y.values[v][label - 1] != 1:
            raise InvariantViolation(f"Vertex {v} is pre-colored {label} but y = {Y.values[v]}")


def relaxation_objective(inst: Instance, Y: FractionalLabeling, objective: Objective) -> Fraction:
    """Sum over labels of the Lovász extension of f (MUHV) or g (MHV) at each column."""
    check_labeling(inst, Y)
    h = GraphSetFunction(inst, objective)
    return sum((lovasz_value(h, Y.column(i)) for i in inst.labels), Fraction(0))
