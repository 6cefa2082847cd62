"""Tests for the greedy method."""

from fractions import Fraction

import numpy as np
import pytest

from command.bench_commands import BenchCommands
from greedy_solver import greedy_select, greedy_step
from ratio_math import ratio_of, validate_instance
from ratio_types import (
    AllExcluded,
    IndexOutOfRange,
    InvalidSubsetSize,
    ProblemInstance,
    RatioValue,
    SolverTag,
)
from theory_checks import check_monotone_trace, random_instance


def test_counterexample_trace(instance_b: ProblemInstance) -> None:
    """Test the pick sequence and q_k values on the counterexample."""
    selection, trace = greedy_select(instance_b, 3)
    assert trace.picks == (1, 2, 3)
    assert [(q.num, q.den) for q in trace.q] == [(1, 10), (4, 13), (10, 25)]
    assert selection.indices == (1, 2, 3)
    assert selection.value == RatioValue(2, 5)
    assert selection.solver is SolverTag.GREEDY
    assert not trace.ties_encountered


def test_worked_instance(instance_a: ProblemInstance) -> None:
    """Test greedy on the four-element worked example."""
    selection, trace = greedy_select(instance_a, 2)
    assert trace.picks == (1, 2)
    assert selection.value.same_pair(5, 8)


def test_counterexample_pair_is_optimal(instance_b: ProblemInstance) -> None:
    """Test that n=2 on the counterexample gives 4/13."""
    selection, _ = greedy_select(instance_b, 2)
    assert selection.indices == (1, 2)
    assert selection.value.same_pair(4, 13)


def test_greedy_step(instance_b: ProblemInstance) -> None:
    """Test single steps and the exhausted case."""
    assert greedy_step(instance_b, 0, 0, set()) == (1, False)
    assert greedy_step(instance_b, 1, 10, {1}) == (2, False)
    assert greedy_step(instance_b, 4, 13, {1, 2}) == (3, False)
    with pytest.raises(AllExcluded):
        greedy_step(instance_b, 14, 31, {1, 2, 3, 4})


def test_ties_go_to_smallest_index() -> None:
    """Test tie-breaking and the tie flag."""
    instance = validate_instance([1, 1, 2], [1, 1, 1])
    selection, trace = greedy_select(instance, 1)
    assert trace.picks == (1,)
    assert trace.ties_encountered
    _, trace = greedy_select(instance, 2)
    assert trace.picks == (1, 2)


def test_tie_flag_cleared_by_strictly_better_candidate() -> None:
    """Test that an early tie does not count once a better candidate appears."""
    instance = validate_instance([2, 2, 1], [1, 1, 1])
    _, trace = greedy_select(instance, 1)
    assert trace.picks == (3,)
    assert not trace.ties_encountered


def test_subset_size_bounds(instance_a: ProblemInstance) -> None:
    """Test that n must satisfy 1 <= n < N."""
    for n in (0, 4, 5):
        with pytest.raises(InvalidSubsetSize):
            greedy_select(instance_a, n)


def test_float_path_matches_exact(instance_b: ProblemInstance) -> None:
    """Test that the float path reproduces the exact picks."""
    floats = validate_instance(instance_b.a, instance_b.b, arithmetic="float")
    selection, trace = greedy_select(floats, 3)
    assert trace.picks == (1, 2, 3)
    assert selection.value.as_float() == pytest.approx(0.4)
    assert not trace.ties_encountered


def test_float_tie_detection() -> None:
    """Test that equal float ratios raise the tie flag."""
    instance = validate_instance([1.0, 1.0, 2.0], [1.0, 1.0, 1.0], arithmetic="float")
    _, trace = greedy_select(instance, 1)
    assert trace.picks == (1,)
    assert trace.ties_encountered


def test_float_near_equal_quotients_decided_by_cross_multiplication() -> None:
    """Test that candidates dividing to the same float are ordered by cross-multiplication."""
    a = [1.1962159966701553, 1.1962159966701638]
    b = [0.7927207490124871, 0.7927207490124928]
    instance = validate_instance(a, b, arithmetic="float")
    expected = min((1, 2), key=lambda i: Fraction(a[i - 1]) / Fraction(b[i - 1]))
    assert expected == 2
    _, trace = greedy_select(instance, 1)
    assert trace.picks == (2,)
    assert not trace.ties_encountered
    assert greedy_step(instance, 0.0, 0.0, set()) == (2, False)


def test_float_sums_match_ratio_of() -> None:
    """Test that the float q_n is the same pair ratio_of computes for the selection."""
    instance = validate_instance([0.1, 0.2, 0.3, 5.0], [1.0, 1.0, 1.0, 1.0], arithmetic="float")
    selection, trace = greedy_select(instance, 3)
    assert trace.picks == (1, 2, 3)
    assert trace.partial_num[-1] == 0.6
    expected = ratio_of(instance, selection.indices)
    assert selection.value.same_pair(expected.num, expected.den)


def test_greedy_step_rejects_out_of_range_exclusions(instance_b: ProblemInstance) -> None:
    """Test that excluded indices must lie in [1, N]."""
    floats = validate_instance(instance_b.a, instance_b.b, arithmetic="float")
    for instance in (instance_b, floats):
        for bad in ({0}, {-1}, {5}, {1, 9}):
            with pytest.raises(IndexOutOfRange):
                greedy_step(instance, 0, 0, bad)


def test_trace_is_monotone_and_prefix_consistent() -> None:
    """Test the monotone trace and prefix property on seeded instances."""
    for seed in range(20):
        instance = random_instance(seed, 16, 8)
        _, full = greedy_select(instance, 15)
        assert check_monotone_trace(full)
        for m in (1, 5, 10):
            _, short = greedy_select(instance, m)
            assert short.picks == full.prefix(m).picks


def test_float_input_is_not_mutated() -> None:
    """Test that greedy leaves the caller's arrays alone."""
    a = np.array([3.0, 2.0, 5.0, 7.0])
    b = np.array([6.0, 2.0, 2.0, 8.0])
    instance = validate_instance(a, b, arithmetic="float")
    greedy_select(instance, 3)
    assert a.tolist() == [3.0, 2.0, 5.0, 7.0]
    assert b.tolist() == [6.0, 2.0, 2.0, 8.0]


@pytest.mark.slow
def test_linear_scaling() -> None:
    """Test that float greedy time grows roughly linearly in N."""
    report = BenchCommands(seed=0).handle_bench([100_000, 1_000_000], 100, repeats=3)
    small, large = report.rows
    assert large.median_ms < 2000.0
    assert large.time_ratio is not None
    assert 5.0 <= large.time_ratio <= 20.0
    assert small.time_ratio is None
