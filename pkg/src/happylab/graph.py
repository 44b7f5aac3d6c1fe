"""Boundary, interior, the set functions f and g, and coloring evaluation.

Vertex subsets are plain ``int`` bitsets: bit v is set iff vertex v belongs to
the subset.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Dict, Iterable, Iterator, Mapping, Union

from happylab.errors import InstanceError, PrecolorViolation
from happylab.models import Coloring, Instance, Objective, checked

VertexSubset = int


# ---------------------------------------------------------------------------
# Bitset helpers
# ---------------------------------------------------------------------------


def subset(vertices: Iterable[int]) -> VertexSubset:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def members(mask: VertexSubset) -> Iterator[int]:
    """Yield the vertices of *mask* in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def full_set(inst: Instance) -> VertexSubset:
    return (1 << inst.num_vertices) - 1


def weight_of(inst: Instance, mask: VertexSubset) -> Fraction:
    """w(X)."""
    return sum((inst.weights[v] for v in members(mask)), Fraction(0))


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


def validate_instance(raw: Union[Instance, Mapping[str, Any]]) -> Instance:
    """Return a validated Instance or raise the first domain error found.

    Raises EmptyLabelClass, BadEdge or NegativeWeight for the corresponding
    invariant; other malformations surface as a generic InstanceError.
    """
    data: Dict[str, Any] = raw.model_dump() if isinstance(raw, Instance) else dict(raw)
    return checked(Instance, InstanceError, **data)


def check_coloring(inst: Instance, col: Coloring) -> None:
    """Raise unless *col* is a total coloring of *inst* that respects the pre-coloring."""
    if len(col.assignment) != inst.num_vertices:
        raise InstanceError(
            f"Coloring has {len(col.assignment)} entries for {inst.num_vertices} vertices"
        )
    for v, label in enumerate(col.assignment):
        if label > inst.num_labels:
            raise InstanceError(f"Vertex {v} has label {label} outside 1..{inst.num_labels}")
        expected = inst.precolor[v]
        if expected is not None and expected != label:
            raise PrecolorViolation(v, expected, label)


# ---------------------------------------------------------------------------
# Boundary / interior
# ---------------------------------------------------------------------------


def boundary(inst: Instance, X: VertexSubset) -> VertexSubset:
    """∂(X): the vertices of X with at least one neighbor outside X."""
    outside = ~X
    nbr = inst.neighbor_masks
    result = 0
    for v in members(X):
        if nbr[v] & outside:
            result |= 1 << v
    return result


def interior(inst: Instance, X: VertexSubset) -> VertexSubset:
    """ι(X) = X − ∂(X)."""
    return X & ~boundary(inst, X)


def f_unhappy(inst: Instance, X: VertexSubset) -> Fraction:
    """f(X) = w(∂(X)); submodular."""
    return weight_of(inst, boundary(inst, X))


def g_happy(inst: Instance, X: VertexSubset) -> Fraction:
    """g(X) = w(ι(X)) = w(X) − f(X); supermodular."""
    return weight_of(inst, interior(inst, X))


# ---------------------------------------------------------------------------
# Colorings
# ---------------------------------------------------------------------------


def evaluate(inst: Instance, col: Coloring, objective: Objective) -> Fraction:
    """Total weight of unhappy (MUHV) or happy (MHV) vertices under *col*."""
    check_coloring(inst, col)
    parts = col.parts(inst.num_labels)
    if objective == Objective.muhv:
        return sum((f_unhappy(inst, S) for S in parts), Fraction(0))
    return sum((g_happy(inst, S) for S in parts), Fraction(0))


# ---------------------------------------------------------------------------
# Statistics
# ---------------------------------------------------------------------------


def max_degree(inst: Instance) -> int:
    """Δ, reported only; no algorithm depends on it."""
    return max((len(nbrs) for nbrs in inst.neighbors), default=0)


def describe(inst: Instance) -> Dict[str, Any]:
    return {
        "vertices": inst.num_vertices,
        "edges": inst.num_edges,
        "labels": inst.num_labels,
        "max_degree": max_degree(inst),
        "total_weight": inst.total_weight,
        "uncolored": len(inst.uncolored),
        "terminals": {label: len(inst.terminals(label)) for label in inst.labels},
    }
