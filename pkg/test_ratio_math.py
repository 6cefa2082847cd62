"""Tests for instance validation, exact ratios and decimal scaling."""

from decimal import Decimal

import numpy as np
import pytest

from ratio_math import (
    check_indices,
    compare_ratios,
    permute_instance,
    ratio_of,
    scale_instance,
    validate_instance,
)
from ratio_types import (
    DuplicateIndex,
    EmptySelection,
    IndexOutOfRange,
    MismatchedLengths,
    NonPositiveElement,
    Ordering,
    ParseError,
    ProblemInstance,
    RatioValue,
    TooShort,
)
from utils.combinatorics import binomial, next_combination, split_ranks, unrank_combination
from utils.number_utils import format_scaled, parse_decimal, scale_to_integers


def test_validate_scales_decimals_to_shared_integers() -> None:
    """Test that decimal inputs share one power-of-ten scale."""
    instance = validate_instance(["1.5", "2"], ["0.25", "3"])
    assert instance.scale == 2
    assert instance.a == (150, 200)
    assert instance.b == (25, 300)
    assert instance.is_exact


def test_validate_keeps_integers_unscaled(instance_a: ProblemInstance) -> None:
    """Test that integer inputs keep scale zero."""
    assert instance_a.scale == 0
    assert instance_a.a == (3, 2, 5, 7)
    assert instance_a.N == 4


def test_validate_errors() -> None:
    """Test that length, size and positivity are checked in that order."""
    with pytest.raises(MismatchedLengths):
        validate_instance([1], [1, 2])
    with pytest.raises(TooShort):
        validate_instance([1], [1])
    with pytest.raises(NonPositiveElement) as exc:
        validate_instance([1, 0], [1, 1])
    assert exc.value.details == {"array": "a", "index": 2}
    with pytest.raises(NonPositiveElement) as exc:
        validate_instance([1, 2], [1, "-3"])
    assert exc.value.details["array"] == "b"
    with pytest.raises(NonPositiveElement):
        validate_instance([1, "nan"], [1, 1])


def test_validate_float_path() -> None:
    """Test that the float path yields read-only float64 arrays."""
    instance = validate_instance([1, 2.5], [3, 4], arithmetic="float")
    assert not instance.is_exact
    assert isinstance(instance.a, np.ndarray)
    assert not instance.a.flags.writeable
    with pytest.raises(NonPositiveElement) as exc:
        validate_instance([1.0, 2.0], [1.0, np.inf], arithmetic="float")
    assert exc.value.details == {"array": "b", "index": 2}
    with pytest.raises(ParseError):
        validate_instance(["x", "1"], [1, 1], arithmetic="float")


def test_ratio_value_compares_by_cross_multiplication() -> None:
    """Test that equal fractions compare equal without being reduced."""
    r = RatioValue(10, 25)
    assert r == RatioValue(2, 5)
    assert r.same_pair(10, 25)
    assert not r.same_pair(2, 5)
    assert hash(r) == hash(RatioValue(2, 5))
    assert compare_ratios(RatioValue(1, 3), RatioValue(1, 2)) is Ordering.LESS
    assert compare_ratios(RatioValue(3, 4), RatioValue(2, 3)) is Ordering.GREATER
    assert RatioValue(5, 8) < RatioValue(2, 3)
    with pytest.raises(ValueError):
        RatioValue(1, 0)


def test_ratio_of_worked_instance(instance_a: ProblemInstance) -> None:
    """Test the worked example's optimal pair value."""
    value = ratio_of(instance_a, [1, 2])
    assert value.same_pair(5, 8)
    assert ratio_of(instance_a, [2, 1]).same_pair(5, 8)
    assert ratio_of(instance_a, [1, 2, 3, 4]).same_pair(17, 18)


def test_check_indices(instance_a: ProblemInstance) -> None:
    """Test index set validation."""
    assert check_indices(instance_a, (4, 1)) == [4, 1]
    with pytest.raises(EmptySelection):
        check_indices(instance_a, [])
    with pytest.raises(IndexOutOfRange):
        check_indices(instance_a, [0])
    with pytest.raises(IndexOutOfRange):
        check_indices(instance_a, [5])
    with pytest.raises(DuplicateIndex):
        check_indices(instance_a, [1, 1])


def test_scale_and_permute(instance_b: ProblemInstance) -> None:
    """Test the scaling and reordering helpers."""
    scaled = scale_instance(instance_b, 3, 7)
    assert scaled.a == (3, 9, 18, 12)
    assert scaled.b == (70, 21, 84, 42)
    permuted = permute_instance(instance_b, [3, 2, 1, 0])
    assert permuted.a == (4, 6, 3, 1)
    assert ratio_of(permuted, [1, 2, 4]) == ratio_of(instance_b, [1, 3, 4])


def test_parse_decimal() -> None:
    """Test decimal literal parsing."""
    assert parse_decimal("1e-3") == Decimal("0.001")
    assert parse_decimal(0.1) == Decimal("0.1")
    assert parse_decimal(" 7 ") == Decimal(7)
    for bad in ("nan", "inf", "abc", True):
        with pytest.raises(ParseError):
            parse_decimal(bad)  # type: ignore[arg-type]


def test_parse_decimal_numpy_scalars() -> None:
    """Test that numpy integers and floats parse like their Python counterparts."""
    assert parse_decimal(np.int64(7)) == Decimal(7)  # type: ignore[arg-type]
    assert parse_decimal(np.float64(3.0)) == Decimal("3.0")
    assert parse_decimal(np.float32(0.5)) == Decimal("0.5")  # type: ignore[arg-type]
    for bad in (np.bool_(True), np.float64("nan"), np.float64("inf")):
        with pytest.raises(ParseError):
            parse_decimal(bad)  # type: ignore[arg-type]


def test_validate_exact_accepts_numpy_arrays(instance_a: ProblemInstance) -> None:
    """Test exact validation of integer and float64 numpy arrays."""
    from_ints = validate_instance(np.array([3, 2, 5, 7]), np.array([6, 2, 2, 8]))
    assert from_ints.same_values(instance_a)
    assert all(type(v) is int for v in (*from_ints.a, *from_ints.b))
    from_floats = validate_instance(
        np.array([3.0, 2.0, 5.0, 7.0]), np.array([6.0, 2.0, 2.0, 8.0])
    )
    assert ratio_of(from_floats, [1, 2]) == ratio_of(instance_a, [1, 2])
    halves = validate_instance(np.array([0.5, 1.5]), np.array([1, 2]))
    assert halves.a == (5, 15)
    assert halves.b == (10, 20)
    assert halves.scale == 1
    with pytest.raises(NonPositiveElement):
        validate_instance(np.array([1, 0]), np.array([1, 1]))


def test_scaling_is_exact_beyond_decimal_precision() -> None:
    """Test that long literals survive scaling digit for digit."""
    literal = "12345678901234567890123456789012345.5"
    a, b, scale = scale_to_integers([Decimal(literal)], [Decimal("2")])
    assert scale == 1
    assert a == [123456789012345678901234567890123455]
    assert b == [20]
    assert format_scaled(a[0], scale) == literal


def test_format_scaled() -> None:
    """Test un-scaling integers to decimal strings."""
    assert format_scaled(150, 2) == "1.50"
    assert format_scaled(-5, 1) == "-0.5"
    assert format_scaled(25, 0) == "25"
    assert Decimal(format_scaled(3, 4)) == Decimal("0.0003")


def test_combination_stepping() -> None:
    """Test lexicographic successor and unranking agree."""
    combo = [0, 1]
    seen = [tuple(combo)]
    while next_combination(combo, 4) >= 0:
        seen.append(tuple(combo))
    assert seen == [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    assert [tuple(unrank_combination(r, 4, 2)) for r in range(6)] == seen
    last = [2, 3]
    assert next_combination(last, 4) == -1
    assert last == [2, 3]
    with pytest.raises(ValueError):
        unrank_combination(6, 4, 2)


def test_split_ranks_and_binomial() -> None:
    """Test rank partitioning and the binomial helper."""
    assert [len(r) for r in split_ranks(10, 3)] == [4, 3, 3]
    assert split_ranks(2, 5) == [range(0, 1), range(1, 2)]
    assert split_ranks(0, 4) == [range(0, 0)]
    assert binomial(3, 5) == 0
    assert binomial(30, 5) == 142506
