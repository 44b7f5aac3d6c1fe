"""Instance generators: integrality-gap family, the contraction counterexample,
seeded random instances, random labelings and random hypergraphs."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from typing import List, NamedTuple, Optional, Tuple, Union

import networkx as nx

from happylab.errors import BadParameters, InvalidHypergraph
from happylab.graph import validate_instance
from happylab.models import (
    FractionalLabeling,
    Hyperedge,
    Hypergraph,
    Instance,
    checked,
    to_fraction,
)

Seed = Union[int, random.Random, None]

# Redraws allowed when a connected random graph is requested.
_CONNECT_ATTEMPTS = 1000


def _rng(seed: Seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


# ---------------------------------------------------------------------------
# Integrality-gap family
# ---------------------------------------------------------------------------


def gen_gap_instance(k: int, w_t: object = 1, w_b: object = 0) -> Instance:
    """k terminals t_i pre-colored i, plus one uncolored b_ij per pair i < j
    adjacent to exactly t_i and t_j.

    Terminals are vertices ``0..k-1``; the b vertices follow in lexicographic
    order of (i, j).
    """
    if k < 2:
        raise BadParameters(f"The gap family needs k >= 2, got {k}")
    w_t, w_b = to_fraction(w_t), to_fraction(w_b)
    if w_t < 0 or w_b < 0:
        raise BadParameters("Gap instance weights must be non-negative")
    pairs = list(combinations(range(k), 2))
    edges: List[Tuple[int, int]] = []
    for index, (i, j) in enumerate(pairs):
        b = k + index
        edges += [(i, b), (j, b)]
    return validate_instance(
        {
            "num_vertices": k + len(pairs),
            "edges": edges,
            "weights": [w_t] * k + [w_b] * len(pairs),
            "num_labels": k,
            "precolor": list(range(1, k + 1)) + [None] * len(pairs),
        }
    )


def gap_fractional_labeling(k: int) -> FractionalLabeling:
    """Terminals integral; b_ij puts 1/2 on label i and 1/2 on label j."""
    if k < 2:
        raise BadParameters(f"The gap family needs k >= 2, got {k}")
    half = Fraction(1, 2)
    rows = [[Fraction(int(i == t)) for i in range(k)] for t in range(k)]
    for i, j in combinations(range(k), 2):
        rows.append([half if label in (i, j) else Fraction(0) for label in range(k)])
    return FractionalLabeling.of(rows)


# ---------------------------------------------------------------------------
# Contraction counterexample
# ---------------------------------------------------------------------------


class ContractionPair(NamedTuple):
    original: Instance
    contracted: Instance


def gen_contraction_pair(W: object = 10, eps: object = 1) -> ContractionPair:
    """Three triangles joined by a cross edge each, and the 6-cycle obtained by
    merging the two pre-colored vertices of every label.

    The contracted instance lists its vertices as
    ``[v12, v3, v45, v6, v78, v9]``.
    """
    W, eps = to_fraction(W), to_fraction(eps)
    if not W > eps > 0:
        raise BadParameters(f"Need W > eps > 0, got W={W}, eps={eps}")

    triangles = [(a, a + 1) for a in (0, 3, 6)] + [(a, a + 2) for a in (0, 3, 6)]
    triangles += [(a + 1, a + 2) for a in (0, 3, 6)]
    original = validate_instance(
        {
            "num_vertices": 9,
            "edges": triangles + [(1, 5), (4, 8), (7, 2)],
            "weights": [W, eps, eps] * 3,
            "num_labels": 3,
            "precolor": [1, 1, None, 2, 2, None, 3, 3, None],
        }
    )
    contracted = validate_instance(
        {
            "num_vertices": 6,
            "edges": [(0, 1), (2, 3), (4, 5), (0, 3), (2, 5), (4, 1)],
            "weights": [W + eps, eps] * 3,
            "num_labels": 3,
            "precolor": [1, None, 2, None, 3, None],
        }
    )
    return ContractionPair(original, contracted)


# ---------------------------------------------------------------------------
# Random instances
# ---------------------------------------------------------------------------


def gen_random(
    n: int,
    k: int,
    edge_probability: float,
    weight_range: Tuple[int, int] = (0, 10),
    precolored_per_label: int = 1,
    seed: Seed = None,
    connected: bool = False,
    weight_denominator: int = 1,
) -> Instance:
    """Seeded G(n, p) graph with uniform rational weights.

    Weights are ``m / weight_denominator`` with m uniform over the integers
    of ``weight_range`` scaled by the denominator. The first
    ``k * precolored_per_label`` vertices are pre-colored round-robin.
    """
    if k < 2:
        raise BadParameters(f"Need k >= 2, got {k}")
    if precolored_per_label < 1:
        raise BadParameters("Every label needs at least one pre-colored vertex")
    if n < k * precolored_per_label:
        raise BadParameters(f"n={n} is smaller than k * per = {k * precolored_per_label}")
    if not 0 <= edge_probability <= 1:
        raise BadParameters(f"Edge probability {edge_probability} outside [0, 1]")
    lo, hi = weight_range
    if lo < 0 or hi < lo:
        raise BadParameters(f"Bad weight range {weight_range}")
    if weight_denominator < 1:
        raise BadParameters("weight_denominator must be positive")

    rng = _rng(seed)
    for _ in range(_CONNECT_ATTEMPTS):
        graph = nx.gnp_random_graph(n, edge_probability, seed=rng)
        if not connected or nx.is_connected(graph):
            break
    else:
        raise BadParameters(
            f"No connected G({n}, {edge_probability}) found in {_CONNECT_ATTEMPTS} draws"
        )

    d = weight_denominator
    weights = [Fraction(rng.randint(lo * d, hi * d), d) for _ in range(n)]
    assigned = k * precolored_per_label
    precolor: List[Optional[int]] = [(v % k) + 1 if v < assigned else None for v in range(n)]
    return validate_instance(
        {
            "num_vertices": n,
            "edges": sorted(graph.edges()),
            "weights": weights,
            "num_labels": k,
            "precolor": precolor,
        }
    )


def random_labeling(inst: Instance, seed: Seed = None, denominator: int = 12) -> FractionalLabeling:
    """A feasible fractional labeling with entries that are multiples of 1/denominator."""
    rng = _rng(seed)
    k = inst.num_labels
    rows: List[List[Fraction]] = []
    for label in inst.precolor:
        if label is not None:
            rows.append([Fraction(int(i == label)) for i in inst.labels])
            continue
        cuts = sorted(rng.randint(0, denominator) for _ in range(k - 1))
        bounds = [0] + cuts + [denominator]
        rows.append([Fraction(b - a, denominator) for a, b in zip(bounds, bounds[1:])])
    return FractionalLabeling.of(rows)


# ---------------------------------------------------------------------------
# Random hypergraphs
# ---------------------------------------------------------------------------


def random_hypergraph(
    num_vertices: int,
    num_edges: int,
    k: int,
    max_size: int = 3,
    seed: Seed = None,
    weight_range: Tuple[int, int] = (1, 9),
) -> Hypergraph:
    """k random terminals and *num_edges* hyperedges of 1..max_size distinct members."""
    if k < 2 or num_vertices < k:
        raise BadParameters(f"Need 2 <= k <= num_vertices, got k={k}, n={num_vertices}")
    if num_edges < 0 or max_size < 1:
        raise BadParameters("num_edges must be >= 0 and max_size >= 1")
    lo, hi = weight_range
    if lo < 0 or hi < lo:
        raise BadParameters(f"Bad weight range {weight_range}")

    rng = _rng(seed)
    terminals = rng.sample(range(num_vertices), k)
    edges = []
    for _ in range(num_edges):
        size = rng.randint(1, min(max_size, num_vertices))
        members = rng.sample(range(num_vertices), size)
        edges.append(Hyperedge(members=members, weight=rng.randint(lo, hi)))
    return checked(
        Hypergraph,
        InvalidHypergraph,
        num_vertices=num_vertices,
        hyperedges=edges,
        terminals=terminals,
    )
