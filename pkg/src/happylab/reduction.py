"""Hypergraph multiway cut: reduction to MUHV, solution back-mapping and an
exhaustive oracle."""

from __future__ import annotations

import os
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Tuple

import networkx as nx
from networkx.utils import UnionFind

from happylab.console import debug
from happylab.errors import BudgetExceeded, InvalidHypergraph
from happylab.graph import validate_instance
from happylab.models import Coloring, Hypergraph, Instance, ReductionMap

DEFAULT_HYPMC_BUDGET = 22
HYPMC_BUDGET_ENV = "HAPPYLAB_HYPMC_BUDGET"


class CutSolution(NamedTuple):
    edges: Tuple[int, ...]   # removed hyperedge indices, ascending
    value: Fraction


def hypmc_budget(explicit: Optional[int] = None) -> int:
    if explicit is not None:
        return explicit
    raw = os.environ.get(HYPMC_BUDGET_ENV)
    return int(raw) if raw else DEFAULT_HYPMC_BUDGET


def reduce_hypmc(H: Hypergraph) -> Tuple[Instance, ReductionMap]:
    """One zero-weight vertex per hypergraph vertex, one vertex v_e of weight
    w(e) per hyperedge, joined to the members of e. Terminal t_i is
    pre-colored i.

    Hypergraph vertex v keeps index v; v_e gets index ``num_vertices + e``.
    """
    n, m = H.num_vertices, len(H.hyperedges)
    edges = [(v, n + e) for e, edge in enumerate(H.hyperedges) for v in edge.members]
    precolor = [None] * (n + m)
    for label, t in enumerate(H.terminals, start=1):
        precolor[t] = label
    try:
        inst = validate_instance(
            {
                "num_vertices": n + m,
                "edges": edges,
                "weights": [Fraction(0)] * n + [edge.weight for edge in H.hyperedges],
                "num_labels": H.num_terminals,
                "precolor": precolor,
            }
        )
    except ValueError as exc:
        raise InvalidHypergraph(f"Hypergraph does not reduce to a valid instance: {exc}") from exc
    mapping = ReductionMap(
        vertex_map=tuple(range(n)),
        hyperedge_map=tuple(n + e for e in range(m)),
        terminal_labels=tuple(range(1, H.num_terminals + 1)),
    )
    return inst, mapping


def backmap_solution(H: Hypergraph, mapping: ReductionMap, col: Coloring) -> Tuple[int, ...]:
    """Hyperedges whose vertex v_e is unhappy under *col*."""
    labels = col.assignment
    cut = []
    for e, edge in enumerate(H.hyperedges):
        own = labels[mapping.hyperedge_map[e]]
        if any(labels[mapping.vertex_map[v]] != own for v in edge.members):
            cut.append(e)
    return tuple(cut)


def disconnects_terminals(H: Hypergraph, removed: Iterable[int]) -> bool:
    """True iff deleting *removed* leaves every terminal in its own component."""
    gone = set(removed)
    graph = nx.Graph()
    graph.add_nodes_from(range(H.num_vertices))
    for e, edge in enumerate(H.hyperedges):
        if e not in gone:
            graph.add_edges_from((("e", e), v) for v in edge.members)
    component = {}
    for index, nodes in enumerate(nx.connected_components(graph)):
        for node in nodes:
            component[node] = index
    seen = {component[t] for t in H.terminals}
    return len(seen) == H.num_terminals


def _separates(H: Hypergraph, kept_mask: int) -> bool:
    uf = UnionFind(range(H.num_vertices))
    for e, edge in enumerate(H.hyperedges):
        if kept_mask >> e & 1:
            uf.union(*edge.members)
    return len({uf[t] for t in H.terminals}) == H.num_terminals


def solve_hypmc_exact(H: Hypergraph, budget: Optional[int] = None) -> CutSolution:
    """Minimum-weight disconnecting hyperedge set by enumerating every subset.

    Ties go to the subset with the smallest bitmask.
    """
    m = len(H.hyperedges)
    limit = hypmc_budget(budget)
    if m > limit:
        raise BudgetExceeded(m, 2, 2**limit)
    weights = [edge.weight for edge in H.hyperedges]
    full = (1 << m) - 1
    best_mask: Optional[int] = None
    best = Fraction(0)
    checked = 0
    for removed in range(1 << m):
        weight = sum((weights[e] for e in range(m) if removed >> e & 1), Fraction(0))
        if best_mask is not None and weight >= best:
            continue
        checked += 1
        if _separates(H, full & ~removed):
            best_mask, best = removed, weight
    debug(f"hypmc: 2^{m} subsets, {checked} connectivity checks")
    assert best_mask is not None  # removing everything always separates
    return CutSolution(tuple(e for e in range(m) if best_mask >> e & 1), best)
