from __future__ import annotations

from enum import Enum
from fractions import Fraction
from typing import Any, Iterable, List, Optional, Tuple, Type, TypeVar

from pydantic import (
    BaseModel,
    ConfigDict,
    PrivateAttr,
    ValidationError,
    field_validator,
    model_validator,
)

from happylab.errors import (
    BadEdge,
    EmptyLabelClass,
    HappyLabError,
    InvalidHypergraph,
    InvariantViolation,
    NegativeWeight,
    OutOfRange,
)


class Objective(str, Enum):
    mhv = "mhv"
    muhv = "muhv"


def to_fraction(value: Any) -> Fraction:
    """Coerce ints, decimal strings, ``p/q`` strings and Fractions to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError("Booleans are not rational numbers")
    if isinstance(value, str):
        value = value.strip()
    try:
        return Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"Not a rational number: {value!r}") from exc


def domain_error(exc: ValidationError) -> Optional[HappyLabError]:
    """Return the first happylab exception a pydantic validator raised, if any."""
    for err in exc.errors():
        cause = (err.get("ctx") or {}).get("error")
        if isinstance(cause, HappyLabError):
            return cause
    return None


def validation_messages(exc: ValidationError) -> List[dict]:
    """Flatten pydantic errors into simple field/message dicts."""
    out: List[dict] = []
    for err in exc.errors():
        field = ".".join(f"[{p}]" if isinstance(p, int) else str(p) for p in err["loc"])
        out.append({"field": field.replace(".[", "[") or "instance", "message": err["msg"]})
    return out


M = TypeVar("M", bound=BaseModel)


def checked(model: Type[M], fallback: Type[HappyLabError], **data: Any) -> M:
    """Construct *model*, re-raising the domain error behind a ValidationError."""
    try:
        return model(**data)
    except ValidationError as exc:
        cause = domain_error(exc)
        if cause is not None:
            raise cause from None
        messages = "; ".join(f"{m['field']}: {m['message']}" for m in validation_messages(exc))
        raise fallback(messages) from None


_FRACTIONS = ConfigDict(frozen=True, arbitrary_types_allowed=True)


# ---------------------------------------------------------------------------
# Instance
# ---------------------------------------------------------------------------


class Instance(BaseModel):
    """
    A vertex-weighted undirected graph with a partial k-coloring.

    Vertices are ``0..num_vertices-1``. ``precolor[v]`` is a label in ``1..k``
    or None for an uncolored vertex. Every label must be pre-assigned to at
    least one vertex.
    """

    model_config = _FRACTIONS

    num_vertices: int
    edges: Tuple[Tuple[int, int], ...]
    weights: Tuple[Fraction, ...]
    num_labels: int
    precolor: Tuple[Optional[int], ...]

    _neighbors: Tuple[Tuple[int, ...], ...] = PrivateAttr(default=())
    _neighbor_masks: Tuple[int, ...] = PrivateAttr(default=())

    @field_validator("num_vertices")
    @classmethod
    def _num_vertices(cls, v: int) -> int:
        if v < 1:
            raise ValueError("An instance needs at least one vertex")
        return v

    @field_validator("num_labels")
    @classmethod
    def _num_labels(cls, v: int) -> int:
        if v < 2:
            raise ValueError("At least two labels are required")
        return v

    @field_validator("weights", mode="before")
    @classmethod
    def _weights(cls, v: Iterable[Any]) -> Tuple[Fraction, ...]:
        weights = tuple(to_fraction(x) for x in v)
        for vertex, w in enumerate(weights):
            if w < 0:
                raise NegativeWeight(vertex)
        return weights

    @field_validator("precolor", mode="before")
    @classmethod
    def _precolor(cls, v: Iterable[Any]) -> Tuple[Optional[int], ...]:
        # 0 is the on-disk code for "uncolored".
        return tuple(None if c in (None, 0) else int(c) for c in v)

    @field_validator("edges", mode="before")
    @classmethod
    def _edges(cls, v: Iterable[Any]) -> Tuple[Tuple[int, int], ...]:
        seen = set()
        for pair in v:
            a, b = (int(x) for x in pair)
            if a == b:
                raise BadEdge((a, b), "self-loops are not allowed")
            key = (min(a, b), max(a, b))
            if key in seen:
                raise BadEdge(key, "duplicate edge")
            seen.add(key)
        return tuple(sorted(seen))

    @model_validator(mode="after")
    def _consistent(self) -> "Instance":
        n, k = self.num_vertices, self.num_labels
        if len(self.weights) != n:
            raise ValueError(f"Expected {n} weights, got {len(self.weights)}")
        if len(self.precolor) != n:
            raise ValueError(f"Expected {n} precolor entries, got {len(self.precolor)}")
        for a, b in self.edges:
            if not (0 <= a < n and 0 <= b < n):
                raise BadEdge((a, b), f"endpoint outside 0..{n - 1}")
        used = set()
        for vertex, label in enumerate(self.precolor):
            if label is None:
                continue
            if not 1 <= label <= k:
                raise ValueError(f"Vertex {vertex} has label {label} outside 1..{k}")
            used.add(label)
        for label in range(1, k + 1):
            if label not in used:
                raise EmptyLabelClass(label)
        return self

    def model_post_init(self, __context: Any) -> None:
        n = self.num_vertices
        adjacency: List[List[int]] = [[] for _ in range(n)]
        for a, b in self.edges:
            if not (0 <= a < n and 0 <= b < n):
                continue  # reported by _consistent
            adjacency[a].append(b)
            adjacency[b].append(a)
        self._neighbors = tuple(tuple(sorted(nbrs)) for nbrs in adjacency)
        self._neighbor_masks = tuple(sum(1 << u for u in nbrs) for nbrs in adjacency)

    # Convenience helpers --------------------------------------------------

    @property
    def neighbors(self) -> Tuple[Tuple[int, ...], ...]:
        return self._neighbors

    @property
    def neighbor_masks(self) -> Tuple[int, ...]:
        return self._neighbor_masks

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def labels(self) -> range:
        return range(1, self.num_labels + 1)

    @property
    def total_weight(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    @property
    def uncolored(self) -> Tuple[int, ...]:
        return tuple(v for v, c in enumerate(self.precolor) if c is None)

    def terminals(self, label: int) -> Tuple[int, ...]:
        """T_i: the vertices pre-colored *label*."""
        return tuple(v for v, c in enumerate(self.precolor) if c == label)


# ---------------------------------------------------------------------------
# Coloring
# ---------------------------------------------------------------------------


class Coloring(BaseModel):
    """A total assignment of labels ``1..k`` to vertices."""

    model_config = ConfigDict(frozen=True)

    assignment: Tuple[int, ...]

    @field_validator("assignment")
    @classmethod
    def _assignment(cls, v: Tuple[int, ...]) -> Tuple[int, ...]:
        if any(label < 1 for label in v):
            raise ValueError("Labels start at 1")
        return v

    def part(self, label: int) -> int:
        """S_label as a vertex bitset."""
        mask = 0
        for v, c in enumerate(self.assignment):
            if c == label:
                mask |= 1 << v
        return mask

    def parts(self, num_labels: int) -> Tuple[int, ...]:
        masks = [0] * num_labels
        for v, c in enumerate(self.assignment):
            masks[c - 1] |= 1 << v
        return tuple(masks)


# ---------------------------------------------------------------------------
# FractionalLabeling
# ---------------------------------------------------------------------------


class FractionalLabeling(BaseModel):
    """
    An n×k matrix y with entries in [0, 1] and unit row sums.

    ``values[v][i - 1]`` is y_v^i. Pre-coloring consistency depends on an
    instance and is checked by :func:`happylab.lovasz.check_labeling`.
    """

    model_config = _FRACTIONS

    values: Tuple[Tuple[Fraction, ...], ...]

    @field_validator("values", mode="before")
    @classmethod
    def _values(cls, v: Iterable[Iterable[Any]]) -> Tuple[Tuple[Fraction, ...], ...]:
        rows = tuple(tuple(to_fraction(x) for x in row) for row in v)
        if not rows:
            raise InvariantViolation("A labeling needs at least one row")
        width = len(rows[0])
        for vertex, row in enumerate(rows):
            if len(row) != width:
                raise InvariantViolation(f"Row {vertex} has {len(row)} entries, expected {width}")
            if any(x < 0 or x > 1 for x in row):
                raise OutOfRange(f"Row {vertex} has an entry outside [0, 1]")
            if sum(row) != 1:
                raise InvariantViolation(f"Row {vertex} sums to {sum(row)}, expected 1")
        return rows

    @property
    def num_vertices(self) -> int:
        return len(self.values)

    @property
    def num_labels(self) -> int:
        return len(self.values[0])

    def column(self, label: int) -> Tuple[Fraction, ...]:
        """The vector y_label = (y_1^label, ..., y_n^label)."""
        return tuple(row[label - 1] for row in self.values)

    def is_integral(self) -> bool:
        return all(x in (0, 1) for row in self.values for x in row)

    @classmethod
    def of(cls, values: Iterable[Iterable[Any]]) -> "FractionalLabeling":
        """Build a labeling, raising OutOfRange / InvariantViolation directly."""
        return checked(cls, InvariantViolation, values=values)

    @classmethod
    def from_coloring(cls, coloring: Coloring, num_labels: int) -> "FractionalLabeling":
        return cls(
            values=[
                [Fraction(1) if c == label else Fraction(0) for label in range(1, num_labels + 1)]
                for c in coloring.assignment
            ]
        )


# ---------------------------------------------------------------------------
# Hypergraph
# ---------------------------------------------------------------------------


class Hyperedge(BaseModel):
    model_config = _FRACTIONS

    members: Tuple[int, ...]
    weight: Fraction

    @field_validator("members", mode="before")
    @classmethod
    def _members(cls, v: Iterable[Any]) -> Tuple[int, ...]:
        members = tuple(sorted({int(x) for x in v}))
        if not members:
            raise InvalidHypergraph("A hyperedge needs at least one vertex")
        return members

    @field_validator("weight", mode="before")
    @classmethod
    def _weight(cls, v: Any) -> Fraction:
        w = to_fraction(v)
        if w < 0:
            raise InvalidHypergraph("Hyperedge weights must be non-negative")
        return w


class Hypergraph(BaseModel):
    """A hyperedge-weighted hypergraph with k terminals ``terminals[i - 1] = t_i``."""

    model_config = ConfigDict(frozen=True)

    num_vertices: int
    hyperedges: Tuple[Hyperedge, ...]
    terminals: Tuple[int, ...]

    @model_validator(mode="after")
    def _consistent(self) -> "Hypergraph":
        n = self.num_vertices
        if n < 1:
            raise InvalidHypergraph("A hypergraph needs at least one vertex")
        if len(self.terminals) < 2:
            raise InvalidHypergraph("At least two terminals are required")
        if len(set(self.terminals)) != len(self.terminals):
            raise InvalidHypergraph("Terminals must be distinct")
        if any(not 0 <= t < n for t in self.terminals):
            raise InvalidHypergraph(f"Terminal outside 0..{n - 1}")
        for index, edge in enumerate(self.hyperedges):
            if any(not 0 <= v < n for v in edge.members):
                raise InvalidHypergraph(f"Hyperedge {index} has a vertex outside 0..{n - 1}")
        return self

    @property
    def num_terminals(self) -> int:
        return len(self.terminals)

    def weight_of(self, edge_indices: Iterable[int]) -> Fraction:
        return sum((self.hyperedges[e].weight for e in edge_indices), Fraction(0))


class ReductionMap(BaseModel):
    """Where each hypergraph vertex and hyperedge lands in the reduced instance."""

    model_config = ConfigDict(frozen=True)

    vertex_map: Tuple[int, ...]
    hyperedge_map: Tuple[int, ...]
    terminal_labels: Tuple[int, ...]

    @model_validator(mode="after")
    def _injective(self) -> "ReductionMap":
        images = list(self.vertex_map) + list(self.hyperedge_map)
        if len(set(images)) != len(images):
            raise InvalidHypergraph("Reduction map is not injective")
        return self
