"""Randomized property suites shared by ``happylab check`` and the test-suite.

Every suite draws its instances from one seeded ``random.Random`` so a
(suite, trials, seed) triple always replays the same run.
"""

from __future__ import annotations

import random
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, NamedTuple, Optional, Tuple, Union

from happylab import formats
from happylab.console import debug
from happylab.generators import gen_random, random_hypergraph, random_labeling
from happylab.graph import boundary, f_unhappy, full_set, g_happy, weight_of
from happylab.lovasz import f_handle, g_handle, lovasz_telescoping, lovasz_value, relaxation_objective
from happylab.lp.simplex import SimplexSolver
from happylab.models import Hypergraph, Instance, Objective
from happylab.reduction import backmap_solution, disconnects_terminals, reduce_hypmc, solve_hypmc_exact
from happylab.relaxation import relax, tighten
from happylab.rounding import round_derandomized
from happylab.solvers import solve_exact

Subject = Union[Instance, Hypergraph]

DEFAULT_TRIALS = 50
# Random subset pairs / labelings / columns examined per drawn instance.
PAIRS_PER_TRIAL = 20
LABELINGS_PER_TRIAL = 3
COLUMNS_PER_TRIAL = 10


class Failure(NamedTuple):
    trial: int
    message: str
    subject: Subject


class SuiteResult(NamedTuple):
    name: str
    trials: int
    seed: int
    checks: int
    failures: Tuple[Failure, ...]

    @property
    def passed(self) -> bool:
        return not self.failures

    def smallest_failure(self) -> Optional[Failure]:
        if not self.failures:
            return None
        return min(self.failures, key=lambda f: (f.subject.num_vertices, f.trial))


class Probe(NamedTuple):
    subject: Subject
    checks: int
    problems: List[str]


# ---------------------------------------------------------------------------
# Random draws
# ---------------------------------------------------------------------------


def _instance(rng: random.Random, max_n: int, labels: Tuple[int, ...] = (2, 3)) -> Instance:
    k = rng.choice(labels)
    return gen_random(
        n=rng.randint(k, max_n),
        k=k,
        edge_probability=rng.choice((0.2, 0.35, 0.5, 0.7)),
        weight_range=(0, 9),
        seed=rng,
        weight_denominator=rng.choice((1, 2, 3)),
    )


def _subset(rng: random.Random, n: int) -> int:
    return rng.getrandbits(n)


def _column(rng: random.Random, n: int) -> List[Fraction]:
    """Multiples of 1/12 with one entry pinned to 1 and another to 0."""
    y = [Fraction(rng.randint(0, 12), 12) for _ in range(n)]
    top, bottom = rng.sample(range(n), 2)
    y[top], y[bottom] = Fraction(1), Fraction(0)
    return y


# ---------------------------------------------------------------------------
# Probes
# ---------------------------------------------------------------------------


def probe_boundary(rng: random.Random) -> Probe:
    """Boundary inclusions for intersections and unions, plus g = w - f."""
    inst = _instance(rng, 14)
    n, problems = inst.num_vertices, []
    if boundary(inst, 0) or boundary(inst, full_set(inst)):
        problems.append("boundary of the empty or full set is not empty")
    for _ in range(PAIRS_PER_TRIAL):
        X, Y = _subset(rng, n), _subset(rng, n)
        bx, by = boundary(inst, X), boundary(inst, Y)
        b_and, b_or = boundary(inst, X & Y), boundary(inst, X | Y)
        if b_and & ~(bx | by):
            problems.append(f"boundary(X & Y) not within boundary(X) | boundary(Y) for X={X:#x}, Y={Y:#x}")
        if b_or & ~(bx | by):
            problems.append(f"boundary(X | Y) not within boundary(X) | boundary(Y) for X={X:#x}, Y={Y:#x}")
        if (b_and & b_or) & ~(bx & by):
            problems.append(f"boundary overlap not within boundary(X) & boundary(Y) for X={X:#x}, Y={Y:#x}")
        if g_happy(inst, X) != weight_of(inst, X) - f_unhappy(inst, X):
            problems.append(f"g(X) != w(X) - f(X) for X={X:#x}")
    return Probe(inst, 1 + 4 * PAIRS_PER_TRIAL, problems)


def probe_submodular(rng: random.Random) -> Probe:
    inst = _instance(rng, 14)
    problems = []
    for _ in range(PAIRS_PER_TRIAL):
        X, Y = _subset(rng, inst.num_vertices), _subset(rng, inst.num_vertices)
        f_lhs = f_unhappy(inst, X) + f_unhappy(inst, Y)
        f_rhs = f_unhappy(inst, X & Y) + f_unhappy(inst, X | Y)
        if f_lhs < f_rhs:
            problems.append(f"f is not submodular on X={X:#x}, Y={Y:#x}: {f_lhs} < {f_rhs}")
        g_lhs = g_happy(inst, X) + g_happy(inst, Y)
        g_rhs = g_happy(inst, X & Y) + g_happy(inst, X | Y)
        if g_lhs > g_rhs:
            problems.append(f"g is not supermodular on X={X:#x}, Y={Y:#x}: {g_lhs} > {g_rhs}")
    return Probe(inst, 2 * PAIRS_PER_TRIAL, problems)


def _lovasz_matches_lp(rng: random.Random, objective: Objective) -> Probe:
    inst = _instance(rng, 10, labels=(2, 3, 4))
    problems = []
    for _ in range(LABELINGS_PER_TRIAL):
        Y = random_labeling(inst, seed=rng)
        extension = relaxation_objective(inst, Y, objective)
        tightened = tighten(inst, Y, objective).objective
        if extension != tightened:
            problems.append(
                f"{objective.value}: Lovász sum {extension} != tightened LP objective {tightened}"
            )
    return Probe(inst, LABELINGS_PER_TRIAL, problems)


def probe_lovasz_lp_mhv(rng: random.Random) -> Probe:
    return _lovasz_matches_lp(rng, Objective.mhv)


def probe_lovasz_lp_muhv(rng: random.Random) -> Probe:
    return _lovasz_matches_lp(rng, Objective.muhv)


def probe_lovasz_forms(rng: random.Random) -> Probe:
    """Permutation form against level-set form; extension at 0/1 points."""
    inst = _instance(rng, 12)
    n, problems = inst.num_vertices, []
    for h in (f_handle(inst), g_handle(inst)):
        for _ in range(COLUMNS_PER_TRIAL):
            y = _column(rng, n)
            level, tele = lovasz_value(h, y), lovasz_telescoping(h, y)
            if level != tele:
                problems.append(f"{h.orientation.value}: level-set {level} != permutation {tele} at {y}")
            X = _subset(rng, n)
            point = [Fraction(X >> v & 1) for v in range(n)]
            if lovasz_value(h, point) != h(X):
                problems.append(f"{h.orientation.value}: extension differs from h at X={X:#x}")
    return Probe(inst, 4 * COLUMNS_PER_TRIAL, problems)


def probe_rounding_guarantee(rng: random.Random) -> Probe:
    """Derandomized expectations against the LP optima, best cell against the optimum."""
    inst = _instance(rng, 7, labels=(3, 4))
    k, problems = inst.num_labels, []
    solver = SimplexSolver(exact=True)
    upper, lower = 2 - Fraction(2, k), Fraction(2, k)

    muhv = relax(inst, Objective.muhv, solver)
    best, dist = round_derandomized(inst, muhv.labeling, Objective.muhv)
    if dist.expected_muhv > upper * muhv.value:
        problems.append(f"muhv expectation {dist.expected_muhv} > {upper} * LP {muhv.value}")
    if best.value_muhv > dist.expected_muhv:
        problems.append(f"best muhv cell {best.value_muhv} above its expectation {dist.expected_muhv}")
    optimum = solve_exact(inst, Objective.muhv).value
    if best.value_muhv > upper * optimum:
        problems.append(f"best muhv cell {best.value_muhv} > {upper} * optimum {optimum}")

    mhv = relax(inst, Objective.mhv, solver)
    _, dist = round_derandomized(inst, mhv.labeling, Objective.mhv)
    if dist.expected_mhv < lower * mhv.value:
        problems.append(f"mhv expectation {dist.expected_mhv} < {lower} * LP {mhv.value}")
    if muhv.value + mhv.value != inst.total_weight:
        problems.append(f"LP optima {muhv.value} + {mhv.value} != w(V) {inst.total_weight}")
    return Probe(inst, 5, problems)


def probe_reduction(rng: random.Random) -> Probe:
    """Hypergraph cut optimum against the MUHV optimum of the reduced instance."""
    k = rng.choice((2, 3))
    # at most 3^15 completions, inside the default enumeration budget
    nv, ne = rng.randint(k, 8), rng.randint(0, 10)
    H = random_hypergraph(nv, ne, k, max_size=3, seed=rng)
    problems = []
    cut = solve_hypmc_exact(H)
    inst, mapping = reduce_hypmc(H)
    solution = solve_exact(inst, Objective.muhv)
    if cut.value != solution.value:
        problems.append(f"hypergraph cut {cut.value} != reduced MUHV optimum {solution.value}")
    removed = backmap_solution(H, mapping, solution.coloring)
    if not disconnects_terminals(H, removed):
        problems.append(f"back-mapped hyperedges {removed} leave terminals connected")
    if H.weight_of(removed) != solution.value:
        problems.append(f"back-mapped weight {H.weight_of(removed)} != coloring value {solution.value}")
    return Probe(H, 3, problems)


SUITES: Dict[str, Callable[[random.Random], Probe]] = {
    "boundary": probe_boundary,
    "submodular": probe_submodular,
    "lovasz-lp-mhv": probe_lovasz_lp_mhv,
    "lovasz-lp-muhv": probe_lovasz_lp_muhv,
    "lovasz-forms": probe_lovasz_forms,
    "rounding-guarantee": probe_rounding_guarantee,
    "reduction": probe_reduction,
}


# ---------------------------------------------------------------------------
# Runner
# ---------------------------------------------------------------------------


def run_suite(name: str, trials: int = DEFAULT_TRIALS, seed: int = 0) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(name)
    probe = SUITES[name]
    rng = random.Random(f"{name}:{seed}")
    checks, failures = 0, []
    for trial in range(trials):
        result = probe(rng)
        checks += result.checks
        failures += [Failure(trial, message, result.subject) for message in result.problems]
    debug(f"{name}: {trials} trials, {checks} checks, {len(failures)} failure(s)")
    return SuiteResult(name, trials, seed, checks, tuple(failures))


def dump_failure(result: SuiteResult, dest: Path) -> Optional[Path]:
    """Write the smallest failing instance of *result* under *dest*."""
    failure = result.smallest_failure()
    if failure is None:
        return None
    dest.mkdir(parents=True, exist_ok=True)
    stem = f"{result.name}-seed{result.seed}-trial{failure.trial}"
    if isinstance(failure.subject, Hypergraph):
        path = dest / f"{stem}.hyp"
        formats.write_hypergraph(failure.subject, path)
    else:
        path = dest / f"{stem}.hg"
        formats.write_instance(failure.subject, path)
    return path
