"""Tests for θ-threshold rounding, random and derandomized."""

from __future__ import annotations

import math
import random
import statistics
from fractions import Fraction

import pytest
from hypothesis import given, settings

from happylab.errors import OutOfRange, PrecolorViolation, ThetaOutOfRange
from happylab.generators import gap_fractional_labeling, gen_gap_instance, gen_random, random_labeling
from happylab.lp.simplex import SimplexSolver
from happylab.models import FractionalLabeling, Objective
from happylab.relaxation import relax
from happylab.rounding import (
    RoundingMode,
    breakpoints,
    draw_theta,
    level_sets,
    round_at,
    round_derandomized,
    round_random,
    solve_approx,
)
from tests.strategies import instances, instances_with_labeling

HALF = Fraction(1, 2)


@pytest.fixture
def small():
    """Path t1 - b - t2 with b leaning towards label 1."""
    inst = gen_gap_instance(2, 1, 1)
    Y = FractionalLabeling.of([[1, 0], [0, 1], ["3/4", "1/4"]])
    return inst, Y


# ---------------------------------------------------------------------------
# Level sets
# ---------------------------------------------------------------------------


class TestLevelSets:
    def test_threshold_is_strict(self):
        Y = FractionalLabeling.of([[1, 0], ["3/4", "1/4"], ["1/2", "1/2"]])
        sets = level_sets(Y, Fraction(3, 4))
        assert sets.parts == (0b001, 0)
        assert sets.residual == 0b110

    def test_partition(self):
        Y = FractionalLabeling.of([[1, 0], ["3/4", "1/4"], ["1/2", "1/2"]])
        sets = level_sets(Y, Fraction(2, 3))
        assert sets.parts == (0b011, 0)
        assert sets.covered == 0b011
        assert sets.residual == 0b100

    def test_mirror(self):
        Y = FractionalLabeling.of([[1, 0], ["3/4", "1/4"], ["1/2", "1/2"]])
        assert level_sets(Y, Fraction(2, 3)).mirror == 0
        assert level_sets(Y, Fraction(9, 10)).mirror == 0

    @pytest.mark.parametrize("theta", [HALF, Fraction(1, 4), Fraction(3, 2)])
    def test_theta_out_of_range(self, theta):
        with pytest.raises(ThetaOutOfRange):
            level_sets(gap_fractional_labeling(2), theta)

    def test_theta_one_allowed(self):
        sets = level_sets(gap_fractional_labeling(2), 1)
        assert sets.covered == 0


# ---------------------------------------------------------------------------
# Single draws
# ---------------------------------------------------------------------------


class TestRoundAt:
    def test_above_threshold(self, small):
        inst, Y = small
        outcome = round_at(inst, Y, Fraction(2, 3), 2)
        assert outcome.coloring.assignment == (1, 2, 1)
        assert outcome.value_muhv == 2
        assert outcome.value_mhv == 1

    def test_fallback(self, small):
        inst, Y = small
        assert round_at(inst, Y, Fraction(4, 5), 2).coloring.assignment == (1, 2, 2)

    def test_theta_one_breaks_precoloring(self, small):
        inst, Y = small
        with pytest.raises(PrecolorViolation):
            round_at(inst, Y, 1, 1)

    def test_bad_fallback(self, small):
        inst, Y = small
        with pytest.raises(OutOfRange):
            round_at(inst, Y, Fraction(2, 3), 3)

    def test_value_by_objective(self, small):
        inst, Y = small
        outcome = round_at(inst, Y, Fraction(2, 3), 1)
        assert outcome.value(Objective.muhv) == outcome.value_muhv
        assert outcome.value(Objective.mhv) == outcome.value_mhv


class TestRandom:
    def test_draw_theta_open_interval(self):
        rng = random.Random(0)
        for _ in range(200):
            assert HALF < draw_theta(rng) < 1

    def test_reproducible(self, small):
        inst, Y = small
        assert round_random(inst, Y, 7) == round_random(inst, Y, 7)

    def test_fallback_in_range(self, small):
        inst, Y = small
        assert {round_random(inst, Y, s).fallback_label for s in range(40)} <= {1, 2}


# ---------------------------------------------------------------------------
# Derandomization
# ---------------------------------------------------------------------------


class TestDerandomized:
    def test_breakpoints(self, small):
        _, Y = small
        assert breakpoints(Y) == [HALF, Fraction(3, 4), Fraction(1)]

    def test_cells(self, small):
        inst, Y = small
        _, dist = round_derandomized(inst, Y, Objective.muhv)
        assert len(dist.cells) == 4
        assert all(c.probability == Fraction(1, 4) for c in dist.cells)

    def test_expectation(self, small):
        inst, Y = small
        _, dist = round_derandomized(inst, Y, Objective.muhv)
        # (1, 2, 1) and (1, 2, 2) both leave two unit-weight vertices unhappy
        assert dist.expected(Objective.muhv) == 2
        assert dist.expected(Objective.mhv) == 1

    @pytest.mark.parametrize("k", [2, 3, 4])
    def test_gap_instance_cells_all_equal(self, k):
        inst = gen_gap_instance(k)
        best, dist = round_derandomized(inst, gap_fractional_labeling(k), Objective.muhv)
        assert len(dist.cells) == k
        assert {c.outcome.value_muhv for c in dist.cells} == {Fraction(k - 1)}
        assert best.value_muhv == k - 1

    def test_gap_k3_meets_bound_with_equality(self):
        _, dist = round_derandomized(gen_gap_instance(3), gap_fractional_labeling(3), Objective.muhv)
        assert dist.expected_muhv == (2 - Fraction(2, 3)) * Fraction(3, 2)

    @settings(max_examples=40, deadline=None)
    @given(instances_with_labeling(max_n=7))
    def test_probabilities_sum_to_one(self, pair):
        inst, Y = pair
        _, dist = round_derandomized(inst, Y, Objective.mhv)
        assert sum(c.probability for c in dist.cells) == 1

    @settings(max_examples=40, deadline=None)
    @given(instances_with_labeling(max_n=7))
    def test_best_cell_beats_expectation(self, pair):
        inst, Y = pair
        best, dist = round_derandomized(inst, Y, Objective.muhv)
        assert best.value_muhv <= dist.expected_muhv
        best, dist = round_derandomized(inst, Y, Objective.mhv)
        assert best.value_mhv >= dist.expected_mhv

    def test_random_draws_land_in_their_cell(self):
        inst = gen_random(7, 3, 0.5, seed=5)
        Y = random_labeling(inst, seed=5)
        _, dist = round_derandomized(inst, Y, Objective.muhv)
        for seed in range(200):
            outcome = round_random(inst, Y, seed)
            (cell,) = [
                c
                for c in dist.cells
                if c.low < outcome.theta < c.high and c.fallback_label == outcome.fallback_label
            ]
            assert cell.outcome.coloring == outcome.coloring

    @pytest.mark.parametrize("seed", range(10))
    def test_monte_carlo_mean_within_four_standard_errors(self, seed):
        inst = gen_random(7, 3, 0.5, seed=seed)
        Y = random_labeling(inst, seed=seed)
        _, dist = round_derandomized(inst, Y, Objective.muhv)
        draws = [float(round_random(inst, Y, 10_000 * seed + s).value_muhv) for s in range(2000)]
        stderr = statistics.stdev(draws) / math.sqrt(len(draws))
        assert abs(statistics.fmean(draws) - float(dist.expected_muhv)) <= 4 * stderr + 1e-9


# ---------------------------------------------------------------------------
# Guarantees against the LP
# ---------------------------------------------------------------------------


class TestGuarantees:
    @settings(max_examples=100, deadline=None)
    @given(instances(max_n=6, max_k=3))
    def test_muhv_expectation_within_factor(self, inst):
        k = inst.num_labels
        relaxation = relax(inst, Objective.muhv, SimplexSolver())
        _, dist = round_derandomized(inst, relaxation.labeling, Objective.muhv)
        assert dist.expected_muhv <= (2 - Fraction(2, k)) * relaxation.value

    @settings(max_examples=100, deadline=None)
    @given(instances(max_n=6, max_k=3))
    def test_mhv_expectation_within_factor(self, inst):
        k = inst.num_labels
        relaxation = relax(inst, Objective.mhv, SimplexSolver())
        _, dist = round_derandomized(inst, relaxation.labeling, Objective.mhv)
        assert dist.expected_mhv >= Fraction(2, k) * relaxation.value


class TestSolveApprox:
    def test_gap_muhv(self):
        outcome = solve_approx(gen_gap_instance(3), Objective.muhv, solver=SimplexSolver())
        assert outcome.value_muhv == 2
        assert outcome.lp_value == Fraction(3, 2)

    def test_gap_mhv(self):
        outcome = solve_approx(gen_gap_instance(3), Objective.mhv, solver=SimplexSolver())
        assert outcome.value_mhv == 1

    def test_random_mode_is_seeded(self):
        inst = gen_random(6, 3, 0.5, seed=2)
        first = solve_approx(inst, Objective.muhv, RoundingMode.random, seed=9, solver=SimplexSolver())
        again = solve_approx(inst, Objective.muhv, RoundingMode.random, seed=9, solver=SimplexSolver())
        assert first.coloring == again.coloring
        assert first.theta == again.theta
