"""Tests for the exhaustive, reduced and Dinkelbach oracles."""

import pytest

from exact_oracles import (
    brute_force_min,
    decoupled_lower_bound,
    dinkelbach_min,
    reduced_search_min,
    search_space_counts,
)
from greedy_solver import greedy_select
from ratio_math import validate_instance
from ratio_types import (
    ConfigError,
    EnumerationCapExceeded,
    InvalidGreedySet,
    InvalidSubsetSize,
    ProblemInstance,
    RatioValue,
    SolverTag,
)
from theory_checks import random_instance


def test_counterexample_optimum(instance_b: ProblemInstance) -> None:
    """Test that every oracle finds {1, 3, 4} at 11/28."""
    brute = brute_force_min(instance_b, 3)
    assert brute.minimizers == ((1, 3, 4),)
    assert brute.value.same_pair(11, 28)
    assert brute.enumerated == 4
    assert brute.solver is SolverTag.BRUTE

    reduced = reduced_search_min(instance_b, 3, (1, 2, 3))
    assert reduced.minimizers == ((1, 3, 4),)
    assert reduced.value == RatioValue(11, 28)
    assert reduced.enumerated == 4

    dink, iterations = dinkelbach_min(instance_b, 3)
    assert dink.minimizers == ((1, 3, 4),)
    assert dink.value.same_pair(11, 28)
    assert iterations == 2
    assert [(lam.num, lam.den) for lam in dink.trajectory] == [(10, 25), (11, 28)]


def test_worked_instance(instance_a: ProblemInstance) -> None:
    """Test all oracles on the four-element example."""
    brute = brute_force_min(instance_a, 2)
    assert brute.minimizers == ((1, 2),)
    assert brute.value.same_pair(5, 8)
    assert brute.enumerated == 6

    reduced = reduced_search_min(instance_a, 2, (1, 2))
    assert reduced.value == RatioValue(5, 8)
    assert reduced.enumerated == 5

    dink, iterations = dinkelbach_min(instance_a, 2)
    assert dink.minimizers == ((1, 2),)
    assert iterations == 1


def test_all_minimizers_reported() -> None:
    """Test that tied optima are all returned, sorted."""
    instance = validate_instance([1, 1, 1, 5], [1, 1, 1, 1])
    brute = brute_force_min(instance, 2)
    assert brute.minimizers == ((1, 2), (1, 3), (2, 3))
    assert brute.value == RatioValue(1, 1)
    dink, iterations = dinkelbach_min(instance, 2)
    assert dink.value == brute.value
    assert iterations == 1


def test_single_index(instance_b: ProblemInstance) -> None:
    """Test n=1 picks the smallest element ratio."""
    assert brute_force_min(instance_b, 1).minimizers == ((1,),)


def test_search_space_counts() -> None:
    """Test the full and reduced family sizes."""
    assert search_space_counts(10, 3) == (120, 85)
    assert search_space_counts(4, 2) == (6, 5)
    assert search_space_counts(4, 3) == (4, 4)
    assert search_space_counts(30, 5)[0] == 142506
    with pytest.raises(InvalidSubsetSize):
        search_space_counts(4, 4)
    with pytest.raises(InvalidSubsetSize):
        search_space_counts(4, 0)


def test_enumeration_cap(instance_b: ProblemInstance) -> None:
    """Test that the cap is checked before enumerating."""
    with pytest.raises(EnumerationCapExceeded) as exc:
        brute_force_min(instance_b, 2, cap=5)
    assert exc.value.details == {"count": 6, "cap": 5}
    assert brute_force_min(instance_b, 2, cap=6).enumerated == 6
    with pytest.raises(EnumerationCapExceeded):
        reduced_search_min(instance_b, 2, (1, 2), cap=4)


def test_oracles_need_exact_arithmetic(instance_b: ProblemInstance) -> None:
    """Test that float instances are refused."""
    floats = validate_instance(instance_b.a, instance_b.b, arithmetic="float")
    with pytest.raises(ConfigError):
        brute_force_min(floats, 2)
    with pytest.raises(ConfigError):
        dinkelbach_min(floats, 2)


def test_invalid_greedy_set(instance_b: ProblemInstance) -> None:
    """Test validation of the greedy set passed to reduced search."""
    for bad in ((1, 2), (1, 1, 2), (1, 2, 9)):
        with pytest.raises(InvalidGreedySet):
            reduced_search_min(instance_b, 3, bad)


def test_parallel_enumeration_matches_serial() -> None:
    """Test that splitting ranks across workers changes nothing."""
    instance = random_instance(7, 11, 4)
    serial = brute_force_min(instance, 4)
    parallel = brute_force_min(instance, 4, workers=3)
    assert parallel.minimizers == serial.minimizers
    assert parallel.value.same_pair(serial.value.num, serial.value.den)
    assert parallel.enumerated == serial.enumerated == 330


def test_oracles_agree_on_seeded_instances() -> None:
    """Test oracle agreement and the bound ordering on a small corpus."""
    for seed in range(30):
        instance = random_instance(seed, 9, 6)
        for n in range(1, 9):
            greedy, _ = greedy_select(instance, n)
            brute = brute_force_min(instance, n)
            reduced = reduced_search_min(instance, n, greedy.indices)
            dink, _ = dinkelbach_min(instance, n)
            assert dink.value == brute.value
            assert reduced.value == brute.value
            assert reduced.enumerated == search_space_counts(9, n)[1]
            assert decoupled_lower_bound(instance, n) <= brute.value <= greedy.value


def test_decoupled_lower_bound(instance_b: ProblemInstance) -> None:
    """Test the independent numerator/denominator bound."""
    bound = decoupled_lower_bound(instance_b, 3)
    assert bound.same_pair(8, 28)
    assert bound < RatioValue(11, 28)
