"""Greedy single-index augmentation for ratio-of-sums subset selection.

Each iteration scans the remaining indices once and keeps the one minimizing
(p + a_k) / (q + b_k), where p and q are the running sums of the picks so far.
Every candidate costs one addition on top and one on the bottom, so a run of
n iterations costs O(nN + n^2). Ties go to the smallest index.

The float path keeps its running sums with math.fsum over the picks, which is
the same correctly rounded sum ratio_of computes, so q_n matches it bit for bit.
"""

import logging
import math
from typing import AbstractSet, List, Sequence, Tuple

import numpy as np

from ratio_types import (
    AllExcluded,
    GreedyTrace,
    IndexOutOfRange,
    InvalidSubsetSize,
    ProblemInstance,
    RatioValue,
    Scalar,
    Selection,
    SolverTag,
)

# Set up logging
logger = logging.getLogger("ratiopick.greedy_solver")

# Candidates within this many ulps of the smallest quotient go to cross-multiplication
FLOAT_BAND_ULPS = 8


def greedy_step(
    instance: ProblemInstance,
    partial_num: Scalar,
    partial_den: Scalar,
    excluded: AbstractSet[int],
) -> Tuple[int, bool]:
    """Pick the next index for a greedy run.

    Args:
        instance: The problem instance
        partial_num: Sum of a over the excluded indices (0 when none)
        partial_den: Sum of b over the excluded indices (0 when none)
        excluded: 1-based indices already chosen

    Returns:
        The smallest 1-based index attaining the minimum, and whether two or
        more candidates attain it

    Raises:
        IndexOutOfRange: If an excluded index is outside [1, N]
        AllExcluded: If no index remains
    """
    for i in excluded:
        if not 1 <= i <= instance.N:
            raise IndexOutOfRange(
                f"Excluded index {i} outside [1, {instance.N}]", index=i, N=instance.N
            )
    if len(excluded) >= instance.N:
        raise AllExcluded(
            f"All {instance.N} indices are excluded", N=instance.N
        )
    taken = [False] * instance.N
    for i in excluded:
        taken[i - 1] = True
    if instance.is_exact:
        k, tie = _scan_exact(instance.a, instance.b, partial_num, partial_den, taken)
    else:
        k, tie = _scan_float(
            np.asarray(instance.a),
            np.asarray(instance.b),
            float(partial_num),
            float(partial_den),
            [i - 1 for i in excluded],
        )
    return k + 1, tie


def _scan_exact(
    a: Sequence[int], b: Sequence[int], p: int, q: int, taken: List[bool]
) -> Tuple[int, bool]:
    best = -1
    best_num = best_den = 0
    tie = False
    for k in range(len(a)):
        if taken[k]:
            continue
        num = p + a[k]
        den = q + b[k]
        if best < 0:
            best, best_num, best_den = k, num, den
            continue
        diff = num * best_den - best_num * den
        if diff < 0:
            best, best_num, best_den = k, num, den
            tie = False
        elif diff == 0:
            tie = True
    return best, tie


def _scan_float(
    a: np.ndarray, b: np.ndarray, p: float, q: float, taken: List[int]
) -> Tuple[int, bool]:
    # Division only narrows the field to a few ulps around the minimum;
    # the winner and the tie flag come from cross-multiplication
    values = a + p
    den = b + q
    np.divide(values, den, out=values)
    if taken:
        values[taken] = np.inf
    low = values.min()
    near = np.flatnonzero(values <= low + FLOAT_BAND_ULPS * np.spacing(low))
    nums = (p + a[near]).tolist()
    dens = (q + b[near]).tolist()
    best = 0
    tie = False
    for j in range(1, len(near)):
        diff = nums[j] * dens[best] - nums[best] * dens[j]
        if diff < 0:
            best, tie = j, False
        elif diff == 0:
            tie = True
    return int(near[best]), tie


def greedy_select(
    instance: ProblemInstance, n: int
) -> Tuple[Selection, GreedyTrace]:
    """Run the greedy method for n iterations.

    Args:
        instance: The problem instance
        n: Subset size, 1 <= n < N

    Returns:
        The selection and the full per-iteration trace

    Raises:
        InvalidSubsetSize: If n is out of range
    """
    if not 1 <= n < instance.N:
        raise InvalidSubsetSize(
            f"Subset size must satisfy 1 <= n < N={instance.N}, got {n}",
            n=n,
            N=instance.N,
        )

    picks: List[int] = []
    q_values: List[RatioValue] = []
    nums: List[Scalar] = []
    dens: List[Scalar] = []
    ties = False

    if instance.is_exact:
        a, b = instance.a, instance.b
        taken = [False] * instance.N
        p: Scalar = 0
        q: Scalar = 0
        for m in range(n):
            k, tie = _scan_exact(a, b, p, q, taken)  # type: ignore[arg-type]
            taken[k] = True
            p += a[k]
            q += b[k]
            ties = ties or tie
            picks.append(k + 1)
            nums.append(p)
            dens.append(q)
            q_values.append(RatioValue(p, q))
            logger.debug(f"Iteration {m + 1}: picked {k + 1}, q={p}/{q}, tie={tie}")
    else:
        a_arr = np.asarray(instance.a, dtype=np.float64)
        b_arr = np.asarray(instance.b, dtype=np.float64)
        chosen: List[int] = []
        p = 0.0
        q = 0.0
        for m in range(n):
            k, tie = _scan_float(a_arr, b_arr, p, q, chosen)
            chosen.append(k)
            p = math.fsum(a_arr[chosen].tolist())
            q = math.fsum(b_arr[chosen].tolist())
            ties = ties or tie
            picks.append(k + 1)
            nums.append(p)
            dens.append(q)
            q_values.append(RatioValue(p, q))

    trace = GreedyTrace(
        picks=tuple(picks),
        q=tuple(q_values),
        partial_num=tuple(nums),
        partial_den=tuple(dens),
        ties_encountered=ties,
    )
    selection = Selection(
        indices=tuple(sorted(picks)), value=q_values[-1], solver=SolverTag.GREEDY
    )
    logger.info(
        f"Greedy selected {n} of {instance.N} ({instance.arithmetic}), "
        f"value={q_values[-1].as_float():.6g}, ties={ties}"
    )
    return selection, trace
