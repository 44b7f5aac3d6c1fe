"""Exhaustive oracle and the single-color greedy baseline."""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import List, NamedTuple, Optional, Tuple

from happylab.console import debug
from happylab.errors import BudgetExceeded
from happylab.graph import evaluate
from happylab.models import Coloring, Instance, Objective

DEFAULT_BUDGET = 20_000_000
BUDGET_ENV = "HAPPYLAB_BUDGET"


class Solution(NamedTuple):
    coloring: Coloring
    value: Fraction
    candidates: int = 1


def enumeration_budget(explicit: Optional[int] = None) -> int:
    """Explicit value, else ``HAPPYLAB_BUDGET``, else the built-in default."""
    if explicit is not None:
        return explicit
    raw = os.environ.get(BUDGET_ENV)
    if raw:
        return int(float(raw))
    return DEFAULT_BUDGET


# ---------------------------------------------------------------------------
# Exhaustive search
# ---------------------------------------------------------------------------


class _Search(NamedTuple):
    unhappy: int          # scaled by the common weight denominator
    assignment: Tuple[int, ...]
    candidates: int


def _scaled_weights(inst: Instance) -> Tuple[List[int], int]:
    scale = 1
    for w in inst.weights:
        scale = scale * w.denominator // math.gcd(scale, w.denominator)
    return [int(w * scale) for w in inst.weights], scale


def _relabel(
    nbrs: Tuple[Tuple[int, ...], ...],
    weights: List[int],
    labels: List[int],
    diff: List[int],
    x: int,
    new: int,
) -> int:
    """Give vertex x label *new*; return the change in unhappy weight."""
    old = labels[x]
    labels[x] = new
    delta = 0
    before_x = diff[x]
    for u in nbrs[x]:
        lu = labels[u]
        was, now = lu != old, lu != new
        if was == now:
            continue
        if now:
            if diff[u] == 0:
                delta += weights[u]
            diff[u] += 1
            diff[x] += 1
        else:
            diff[u] -= 1
            diff[x] -= 1
            if diff[u] == 0:
                delta -= weights[u]
    if before_x == 0 and diff[x]:
        delta += weights[x]
    elif before_x and diff[x] == 0:
        delta -= weights[x]
    return delta


def _search(inst: Instance, first_label: Optional[int] = None) -> _Search:
    """Odometer over the uncolored vertices; the last one turns fastest."""
    k = inst.num_labels
    nbrs = inst.neighbors
    weights, _ = _scaled_weights(inst)
    free = list(inst.uncolored)
    labels = [c if c is not None else 1 for c in inst.precolor]
    if first_label is not None:
        labels[free[0]] = first_label
        free = free[1:]

    diff = [sum(1 for u in nbrs[v] if labels[u] != labels[v]) for v in range(len(labels))]
    unhappy = sum(w for w, d in zip(weights, diff) if d)
    best, best_labels = unhappy, tuple(labels)
    candidates = 1

    while True:
        pos = len(free) - 1
        while pos >= 0 and labels[free[pos]] == k:
            unhappy += _relabel(nbrs, weights, labels, diff, free[pos], 1)
            pos -= 1
        if pos < 0:
            break
        x = free[pos]
        unhappy += _relabel(nbrs, weights, labels, diff, x, labels[x] + 1)
        candidates += 1
        if unhappy < best:
            best, best_labels = unhappy, tuple(labels)
    return _Search(best, best_labels, candidates)


def solve_exact(
    inst: Instance,
    objective: Objective,
    budget: Optional[int] = None,
    workers: int = 1,
) -> Solution:
    """Enumerate all k^u completions of the pre-coloring.

    The same completion minimizes unhappy weight and maximizes happy weight;
    among optima the lexicographically smallest assignment is returned.
    """
    u, k = len(inst.uncolored), inst.num_labels
    limit = enumeration_budget(budget)
    if k**u > limit:
        raise BudgetExceeded(u, k, limit)
    debug(f"exact: {k}^{u} = {k**u} candidates, {workers} worker(s)")

    if workers > 1 and u > 0:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_search, [inst] * k, list(inst.labels)))
        found = chunks[0]
        for chunk in chunks[1:]:
            if chunk.unhappy < found.unhappy:
                found = chunk
        candidates = sum(c.candidates for c in chunks)
    else:
        found = _search(inst)
        candidates = found.candidates

    _, scale = _scaled_weights(inst)
    unhappy = Fraction(found.unhappy, scale)
    value = unhappy if objective == Objective.muhv else inst.total_weight - unhappy
    return Solution(Coloring(assignment=found.assignment), value, candidates)


# ---------------------------------------------------------------------------
# Greedy baseline
# ---------------------------------------------------------------------------


def solve_greedy(inst: Instance, objective: Objective) -> Solution:
    """Best of the k colorings that give every uncolored vertex one common label."""
    best: Optional[Solution] = None
    for label in inst.labels:
        coloring = Coloring(assignment=tuple(c if c is not None else label for c in inst.precolor))
        value = evaluate(inst, coloring, objective)
        if best is None:
            best = Solution(coloring, value)
            continue
        better = value > best.value if objective == Objective.mhv else value < best.value
        if better:
            best = Solution(coloring, value)
    return best._replace(candidates=inst.num_labels)
