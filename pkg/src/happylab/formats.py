"""Text formats.

happygraph v1 (one instance)::

    # happygraph v1
    n m k
    w_1 ... w_n          integers, decimals or p/q
    c_1 ... c_n          0 = uncolored, 1..k = label
    u v                  m lines, 1-based endpoints

happyhyper v1 (one hypergraph)::

    # happyhyper v1
    n m k
    t_1 ... t_k          1-based terminals
    weight size v_1 ... v_size      m lines

The reduction sidecar map has one ``e v_e`` line per hyperedge, both 1-based.
LP export uses the CPLEX LP text format.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Iterator, List, Sequence, Tuple

from happylab.errors import FormatError, InvalidHypergraph
from happylab.graph import validate_instance
from happylab.lp.model import LinearProgram, Number, Relation, Sense
from happylab.models import Hyperedge, Hypergraph, Instance, ReductionMap, checked, to_fraction

GRAPH_HEADER = "# happygraph v1"
HYPER_HEADER = "# happyhyper v1"
MAP_HEADER = "# happymap v1"


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------


def fmt_weight(w: Fraction) -> str:
    return str(w.numerator) if w.denominator == 1 else f"{w.numerator}/{w.denominator}"


def _lines(text: str) -> Iterator[Tuple[int, List[str]]]:
    """Yield (line number, tokens) for every non-blank line, comments removed."""
    for number, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].split()
        if body:
            yield number, body


def _ints(tokens: Sequence[str], line: int, what: str) -> List[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise FormatError(f"Expected integers for {what}, got {' '.join(tokens)!r}", line) from None


def _next(rows: Iterator[Tuple[int, List[str]]], what: str) -> Tuple[int, List[str]]:
    try:
        return next(rows)
    except StopIteration:
        raise FormatError(f"Unexpected end of file while reading {what}") from None


def _expect_len(tokens: Sequence[str], count: int, line: int, what: str) -> None:
    if len(tokens) != count:
        raise FormatError(f"Expected {count} {what}, got {len(tokens)}", line)


def _header(tokens: Sequence[str], line: int) -> Tuple[int, int, int]:
    _expect_len(tokens, 3, line, "header fields (n m k)")
    n, m, k = _ints(tokens, line, "the header")
    if n < 1 or m < 0 or k < 2:
        raise FormatError(f"Header needs n >= 1, m >= 0, k >= 2, got {n} {m} {k}", line)
    return n, m, k


def _no_trailing(rows: Iterator[Tuple[int, List[str]]]) -> None:
    for line, _ in rows:
        raise FormatError("Unexpected content after the last record", line)


# ---------------------------------------------------------------------------
# happygraph v1
# ---------------------------------------------------------------------------


def dumps_instance(inst: Instance) -> str:
    lines = [
        GRAPH_HEADER,
        f"{inst.num_vertices} {inst.num_edges} {inst.num_labels}",
        " ".join(fmt_weight(w) for w in inst.weights),
        " ".join(str(c or 0) for c in inst.precolor),
    ]
    lines += [f"{u + 1} {v + 1}" for u, v in inst.edges]
    return "\n".join(lines) + "\n"


def loads_instance(text: str) -> Instance:
    """Parse happygraph text; parse problems raise FormatError, invariant
    violations raise the matching InstanceError."""
    rows = _lines(text)
    line, tokens = _next(rows, "the header")
    n, m, k = _header(tokens, line)

    line, tokens = _next(rows, "weights")
    _expect_len(tokens, n, line, "weights")
    try:
        weights = [to_fraction(t) for t in tokens]
    except ValueError as exc:
        raise FormatError(str(exc), line) from None

    line, tokens = _next(rows, "pre-colors")
    _expect_len(tokens, n, line, "pre-color codes")
    precolor = _ints(tokens, line, "pre-colors")

    edges = []
    for _ in range(m):
        line, tokens = _next(rows, "edges")
        _expect_len(tokens, 2, line, "edge endpoints")
        u, v = _ints(tokens, line, "an edge")
        edges.append((u - 1, v - 1))
    _no_trailing(rows)

    return validate_instance(
        {
            "num_vertices": n,
            "edges": edges,
            "weights": weights,
            "num_labels": k,
            "precolor": precolor,
        }
    )


def read_instance(path: Path) -> Instance:
    return loads_instance(Path(path).read_text(encoding="utf-8"))


def write_instance(inst: Instance, path: Path) -> None:
    Path(path).write_text(dumps_instance(inst), encoding="utf-8")


# ---------------------------------------------------------------------------
# happyhyper v1
# ---------------------------------------------------------------------------


def dumps_hypergraph(H: Hypergraph) -> str:
    lines = [
        HYPER_HEADER,
        f"{H.num_vertices} {len(H.hyperedges)} {H.num_terminals}",
        " ".join(str(t + 1) for t in H.terminals),
    ]
    for edge in H.hyperedges:
        members = " ".join(str(v + 1) for v in edge.members)
        lines.append(f"{fmt_weight(edge.weight)} {len(edge.members)} {members}")
    return "\n".join(lines) + "\n"


def loads_hypergraph(text: str) -> Hypergraph:
    rows = _lines(text)
    line, tokens = _next(rows, "the header")
    n, m, k = _header(tokens, line)

    line, tokens = _next(rows, "terminals")
    _expect_len(tokens, k, line, "terminals")
    terminals = [t - 1 for t in _ints(tokens, line, "terminals")]

    edges = []
    for _ in range(m):
        line, tokens = _next(rows, "hyperedges")
        if len(tokens) < 2:
            raise FormatError("A hyperedge line needs a weight and a size", line)
        size = _ints(tokens[1:2], line, "the hyperedge size")[0]
        _expect_len(tokens[2:], size, line, "hyperedge members")
        try:
            weight = to_fraction(tokens[0])
        except ValueError as exc:
            raise FormatError(str(exc), line) from None
        members = [v - 1 for v in _ints(tokens[2:], line, "hyperedge members")]
        edges.append(checked(Hyperedge, InvalidHypergraph, members=members, weight=weight))
    _no_trailing(rows)

    return checked(
        Hypergraph, InvalidHypergraph, num_vertices=n, hyperedges=edges, terminals=terminals
    )


def read_hypergraph(path: Path) -> Hypergraph:
    return loads_hypergraph(Path(path).read_text(encoding="utf-8"))


def write_hypergraph(H: Hypergraph, path: Path) -> None:
    Path(path).write_text(dumps_hypergraph(H), encoding="utf-8")


# ---------------------------------------------------------------------------
# Reduction map
# ---------------------------------------------------------------------------


def dumps_map(mapping: ReductionMap) -> str:
    lines = [MAP_HEADER]
    lines += [f"{e + 1} {v + 1}" for e, v in enumerate(mapping.hyperedge_map)]
    return "\n".join(lines) + "\n"


def write_map(mapping: ReductionMap, path: Path) -> None:
    Path(path).write_text(dumps_map(mapping), encoding="utf-8")


# ---------------------------------------------------------------------------
# CPLEX LP export
# ---------------------------------------------------------------------------


def _lp_number(x: Number) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return repr(float(x))


def _lp_terms(pairs: Sequence[Tuple[Number, str]]) -> str:
    if not pairs:
        return "0"
    parts = []
    for index, (coef, name) in enumerate(pairs):
        sign = "-" if coef < 0 else "+"
        size = abs(Fraction(coef))
        term = name if size == 1 else f"{_lp_number(size)} {name}"
        if index == 0:
            parts.append(f"- {term}" if sign == "-" else term)
        else:
            parts.append(f"{sign} {term}")
    return " ".join(parts)


def dumps_lp(lp: LinearProgram) -> str:
    relation = {Relation.le: "<=", Relation.ge: ">=", Relation.eq: "="}
    lines = [f"\\ {lp.name}", "Maximize" if lp.sense == Sense.maximize else "Minimize"]
    objective = [(c, n) for n, c in zip(lp.names, lp.costs) if c != 0]
    lines.append(f" obj: {_lp_terms(objective)}")
    lines.append("Subject To")
    for con in lp.constraints:
        terms = _lp_terms([(c, lp.names[j]) for j, c in con.coeffs])
        lines.append(f" {con.name}: {terms} {relation[con.relation]} {_lp_number(con.rhs)}")
    lines.append("Bounds")
    for name, lo, hi in zip(lp.names, lp.lower, lp.upper):
        if hi is not None and lo == hi:
            lines.append(f" {name} = {_lp_number(lo)}")
        elif hi is not None:
            lines.append(f" {_lp_number(lo)} <= {name} <= {_lp_number(hi)}")
        elif lo != 0:
            lines.append(f" {name} >= {_lp_number(lo)}")
    lines.append("End")
    return "\n".join(lines) + "\n"


def write_lp(lp: LinearProgram, path: Path) -> None:
    Path(path).write_text(dumps_lp(lp), encoding="utf-8")
