"""Instance validation, exact ratio comparison and index-set evaluation."""

import logging
import math
from typing import Iterable, List, Sequence

import numpy as np

from ratio_types import (
    Arithmetic,
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
from utils.number_utils import RawNumber, parse_decimal, scale_to_integers

# Set up logging
logger = logging.getLogger("ratiopick.ratio_math")


def validate_instance(
    a: Sequence[RawNumber],
    b: Sequence[RawNumber],
    arithmetic: Arithmetic = "exact",
) -> ProblemInstance:
    """Validate two raw arrays and build a problem instance.

    In the exact path the inputs are parsed as decimals and scaled by a shared
    power of ten to Python ints. In the float path they become float64 arrays;
    float sums carry no overflow guarantee.

    Args:
        a: Numerator array
        b: Denominator array
        arithmetic: "exact" or "float"

    Returns:
        The validated instance

    Raises:
        MismatchedLengths: If len(a) != len(b)
        TooShort: If N < 2
        NonPositiveElement: If some element is not strictly positive
    """
    if len(a) != len(b):
        raise MismatchedLengths(
            f"Arrays differ in length: len(a)={len(a)}, len(b)={len(b)}",
            len_a=len(a),
            len_b=len(b),
        )
    if len(a) < 2:
        raise TooShort(f"Need at least 2 elements, got {len(a)}", N=len(a))

    if arithmetic == "float":
        return _validate_float(a, b)

    parsed = {}
    for name, values in (("a", a), ("b", b)):
        decimals = []
        for i, value in enumerate(values, start=1):
            try:
                d = parse_decimal(value)
            except ParseError as e:
                raise NonPositiveElement(
                    f"Element {i} of {name} is not a finite number: {value!r}",
                    array=name,
                    index=i,
                ) from e
            if d <= 0:
                raise NonPositiveElement(
                    f"Element {i} of {name} must be positive, got {value}",
                    array=name,
                    index=i,
                )
            decimals.append(d)
        parsed[name] = decimals

    a_int, b_int, scale = scale_to_integers(parsed["a"], parsed["b"])
    logger.debug(f"Validated exact instance N={len(a_int)} scale=10^{scale}")
    return ProblemInstance(a=tuple(a_int), b=tuple(b_int), scale=scale)


def _validate_float(a: Sequence[RawNumber], b: Sequence[RawNumber]) -> ProblemInstance:
    arrays = {}
    for name, values in (("a", a), ("b", b)):
        try:
            arr = np.array(values, dtype=np.float64)
        except (TypeError, ValueError) as e:
            raise ParseError(f"Array {name} is not numeric: {e}", array=name) from e
        bad = np.flatnonzero(~(np.isfinite(arr) & (arr > 0)))
        if bad.size:
            i = int(bad[0]) + 1
            raise NonPositiveElement(
                f"Element {i} of {name} must be positive and finite, got {arr[i - 1]}",
                array=name,
                index=i,
            )
        arr.setflags(write=False)
        arrays[name] = arr
    return ProblemInstance(a=arrays["a"], b=arrays["b"], arithmetic="float")


def compare_ratios(r1: RatioValue, r2: RatioValue) -> Ordering:
    """Order two ratios by cross-multiplication; never divides."""
    return r1.compare(r2)


def check_indices(instance: ProblemInstance, indices: Iterable[int]) -> List[int]:
    """Validate a 1-based index set against an instance.

    Returns:
        The indices as a list in the given order

    Raises:
        EmptySelection: If no index was given
        IndexOutOfRange: If an index is outside [1, N]
        DuplicateIndex: If an index repeats
    """
    chosen = [int(i) for i in indices]
    if not chosen:
        raise EmptySelection("Index set is empty")
    seen = set()
    for i in chosen:
        if not 1 <= i <= instance.N:
            raise IndexOutOfRange(
                f"Index {i} outside [1, {instance.N}]", index=i, N=instance.N
            )
        if i in seen:
            raise DuplicateIndex(f"Index {i} appears more than once", index=i)
        seen.add(i)
    return chosen


def ratio_of(instance: ProblemInstance, indices: Iterable[int]) -> RatioValue:
    """Evaluate (sum of a) / (sum of b) over a 1-based index set.

    Args:
        instance: The problem instance
        indices: Distinct 1-based indices

    Returns:
        The unreduced ratio of the two sums
    """
    chosen = check_indices(instance, indices)
    if instance.is_exact:
        return RatioValue(
            sum(instance.a[i - 1] for i in chosen),
            sum(instance.b[i - 1] for i in chosen),
        )
    return RatioValue(
        math.fsum(float(instance.a[i - 1]) for i in chosen),
        math.fsum(float(instance.b[i - 1]) for i in chosen),
    )


def scale_instance(
    instance: ProblemInstance, s_num: int = 1, t_num: int = 1
) -> ProblemInstance:
    """Multiply a by s_num and b by t_num (exact path only)."""
    return ProblemInstance(
        a=tuple(s_num * x for x in instance.a),
        b=tuple(t_num * x for x in instance.b),
        scale=instance.scale,
    )


def permute_instance(instance: ProblemInstance, perm: Sequence[int]) -> ProblemInstance:
    """Reorder both arrays so that new position k holds old element perm[k] (0-based)."""
    return ProblemInstance(
        a=tuple(instance.a[p] for p in perm),
        b=tuple(instance.b[p] for p in perm),
        scale=instance.scale,
        arithmetic=instance.arithmetic,
    )
