"""Exact oracles: exhaustive search, greedy-reduced search and Dinkelbach iteration.

All three work on the exact path only and serve as ground truth for the greedy
method. Exhaustive search cost grows like C(N, n), which for n proportional to
N behaves as c**N / sqrt(N) with 1 < c <= 2 (Stirling), hence the cap.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import config
from greedy_solver import greedy_select
from ratio_types import (
    ConfigError,
    EnumerationCapExceeded,
    InvalidGreedySet,
    InvalidSubsetSize,
    ProblemInstance,
    RatioValue,
    SolverTag,
)
from utils.combinatorics import binomial, next_combination, split_ranks, unrank_combination

# Set up logging
logger = logging.getLogger("ratiopick.exact_oracles")

IndexSet = Tuple[int, ...]


@dataclass(frozen=True)
class OracleResult:
    """Outcome of an exact search."""

    minimizers: Tuple[IndexSet, ...]  # 1-based sets, sorted lexicographically
    value: RatioValue
    enumerated: int
    solver: SolverTag
    trajectory: Tuple[RatioValue, ...] = ()  # Dinkelbach lambda sequence


@dataclass(frozen=True)
class _ScanResult:
    best_num: int
    best_den: int
    minimizers: List[IndexSet]
    enumerated: int


def _check_subset_size(instance: ProblemInstance, n: int) -> None:
    if not 1 <= n < instance.N:
        raise InvalidSubsetSize(
            f"Subset size must satisfy 1 <= n < N={instance.N}, got {n}",
            n=n,
            N=instance.N,
        )


def _require_exact(instance: ProblemInstance, what: str) -> None:
    if not instance.is_exact:
        raise ConfigError(f"{what} requires exact arithmetic")


def _check_cap(count: int, cap: Optional[int]) -> None:
    limit = config.ENUMERATION_CAP if cap is None else cap
    if count > limit:
        raise EnumerationCapExceeded(
            f"Search space of {count} sets exceeds the cap of {limit}",
            count=count,
            cap=limit,
        )


def _scan(
    a: Sequence[int],
    b: Sequence[int],
    pool: Sequence[int],
    k: int,
    base: Tuple[int, ...],
    ranks: range,
) -> _ScanResult:
    """Scan k-subsets of pool, in lexicographic rank range `ranks`, joined with base.

    Prefix sums are kept per position, so stepping to the successor only
    recomputes the positions at and after the leftmost change.
    """
    base_num = sum(a[i] for i in base)
    base_den = sum(b[i] for i in base)
    if k == 0:
        members = tuple(sorted(i + 1 for i in base))
        return _ScanResult(base_num, base_den, [members], 1)
    if not ranks:
        return _ScanResult(0, 0, [], 0)

    combo = unrank_combination(ranks.start, len(pool), k)
    pn = [base_num] * (k + 1)
    pd = [base_den] * (k + 1)
    changed = 0
    best_num = best_den = 0
    minimizers: List[IndexSet] = []
    enumerated = 0

    for _ in ranks:
        for j in range(changed, k):
            item = pool[combo[j]]
            pn[j + 1] = pn[j] + a[item]
            pd[j + 1] = pd[j] + b[item]
        num, den = pn[k], pd[k]
        enumerated += 1
        if not minimizers:
            diff = -1
        else:
            diff = num * best_den - best_num * den
        if diff <= 0:
            members = tuple(sorted([i + 1 for i in base] + [pool[c] + 1 for c in combo]))
            if diff < 0:
                best_num, best_den = num, den
                minimizers = [members]
            else:
                minimizers.append(members)
        changed = next_combination(combo, len(pool))
        if changed < 0:
            break

    return _ScanResult(best_num, best_den, minimizers, enumerated)


def _merge(results: Iterable[_ScanResult]) -> _ScanResult:
    best: Optional[_ScanResult] = None
    minimizers: List[IndexSet] = []
    enumerated = 0
    for result in results:
        enumerated += result.enumerated
        if not result.minimizers:
            continue
        if best is None:
            best = result
            minimizers = list(result.minimizers)
            continue
        diff = result.best_num * best.best_den - best.best_num * result.best_den
        if diff < 0:
            best = result
            minimizers = list(result.minimizers)
        elif diff == 0:
            minimizers.extend(result.minimizers)
    assert best is not None, "no candidate sets were scanned"
    return _ScanResult(best.best_num, best.best_den, sorted(set(minimizers)), enumerated)


def brute_force_min(
    instance: ProblemInstance,
    n: int,
    cap: Optional[int] = None,
    workers: int = 1,
) -> OracleResult:
    """Find every global minimizer by trying all C(N, n) index sets.

    Args:
        instance: Exact problem instance
        n: Subset size, 1 <= n < N
        cap: Largest number of sets to enumerate (config.ENUMERATION_CAP if None)
        workers: Processes to split the lexicographic rank space across

    Returns:
        All minimizers, the optimal value and the number of sets examined

    Raises:
        InvalidSubsetSize: If n is out of range
        EnumerationCapExceeded: If C(N, n) exceeds the cap
    """
    _require_exact(instance, "Exhaustive search")
    _check_subset_size(instance, n)
    total = binomial(instance.N, n)
    _check_cap(total, cap)

    pool = list(range(instance.N))
    a, b = list(instance.a), list(instance.b)
    if workers > 1 and total > 1:
        chunks = split_ranks(total, workers)
        with ProcessPoolExecutor(max_workers=workers) as executor:
            futures = [
                executor.submit(_scan, a, b, pool, n, (), chunk) for chunk in chunks
            ]
            merged = _merge(f.result() for f in futures)
    else:
        merged = _merge([_scan(a, b, pool, n, (), range(total))])

    logger.debug(
        f"Brute force N={instance.N} n={n}: {merged.enumerated} sets, "
        f"{len(merged.minimizers)} minimizer(s)"
    )
    return OracleResult(
        minimizers=tuple(merged.minimizers),
        value=RatioValue(merged.best_num, merged.best_den),
        enumerated=merged.enumerated,
        solver=SolverTag.BRUTE,
    )


def reduced_search_min(
    instance: ProblemInstance,
    n: int,
    greedy_set: Iterable[int],
    cap: Optional[int] = None,
) -> OracleResult:
    """Exhaustive search restricted to sets sharing an index with the greedy set.

    Sets are generated grouped by their smallest greedy member g_t: g_t is fixed,
    the greedy members below it are excluded, and the remaining n - 1 indices
    range over everything else. The groups partition the family, giving
    C(N, n) - C(N - n, n) candidates in total.

    Args:
        instance: Exact problem instance
        n: Subset size, 1 <= n < N
        greedy_set: A greedy output of size n (1-based)
        cap: Largest number of sets to enumerate

    Returns:
        The optimal value with the minimizers found inside the reduced family

    Raises:
        InvalidGreedySet: If greedy_set has the wrong size or bad indices
        EnumerationCapExceeded: If the reduced family exceeds the cap
    """
    _require_exact(instance, "Reduced search")
    _check_subset_size(instance, n)
    greedy = sorted(int(i) for i in greedy_set)
    if (
        len(greedy) != n
        or len(set(greedy)) != n
        or any(not 1 <= i <= instance.N for i in greedy)
    ):
        raise InvalidGreedySet(
            f"Greedy set {greedy} is not {n} distinct indices in [1, {instance.N}]",
            greedy_set=greedy,
            n=n,
        )
    _, reduced = search_space_counts(instance.N, n)
    _check_cap(reduced, cap)

    a, b = list(instance.a), list(instance.b)
    zero_based = [g - 1 for g in greedy]
    results = []
    for t, g in enumerate(zero_based):
        blocked = set(zero_based[: t + 1])
        pool = [i for i in range(instance.N) if i not in blocked]
        count = binomial(len(pool), n - 1)
        results.append(_scan(a, b, pool, n - 1, (g,), range(count)))
    merged = _merge(results)

    if merged.enumerated != reduced:
        logger.error(f"Reduced search examined {merged.enumerated}, expected {reduced}")
    return OracleResult(
        minimizers=tuple(merged.minimizers),
        value=RatioValue(merged.best_num, merged.best_den),
        enumerated=merged.enumerated,
        solver=SolverTag.REDUCED,
    )


def _transformed(a: int, b: int, lam: RatioValue) -> int:
    # a - lam*b scaled by lam.den > 0, which keeps the order
    return a * lam.den - lam.num * b


def dinkelbach_min(
    instance: ProblemInstance, n: int
) -> Tuple[OracleResult, int]:
    """Parametric search: lambda <- value of the set minimizing sum(a_i - lambda*b_i).

    Starts from the greedy value and stops once the smallest transformed sum
    is exactly zero. The inner step takes the n smallest transformed values,
    breaking ties by smallest index.

    Args:
        instance: Exact problem instance
        n: Subset size, 1 <= n < N

    Returns:
        An OracleResult holding one global minimizer and the lambda sequence,
        and the number of inner selections performed
    """
    _require_exact(instance, "Dinkelbach iteration")
    _check_subset_size(instance, n)
    a, b = instance.a, instance.b
    greedy, _ = greedy_select(instance, n)
    lam = greedy.value
    trajectory = [lam]
    iterations = 0

    while True:
        iterations += 1
        order = sorted(
            range(instance.N),
            key=lambda i: (_transformed(a[i], b[i], lam), i),  # type: ignore[arg-type]
        )
        chosen = sorted(order[:n])
        total = sum(_transformed(a[i], b[i], lam) for i in chosen)  # type: ignore[arg-type]
        value = RatioValue(sum(a[i] for i in chosen), sum(b[i] for i in chosen))
        logger.debug(f"Dinkelbach iteration {iterations}: lambda={lam.num}/{lam.den}, sum={total}")
        if total == 0:
            break
        if total > 0:
            # lambda is attained by some set, so the minimum can never be positive
            raise RuntimeError(f"Dinkelbach transformed minimum is positive: {total}")
        lam = value
        trajectory.append(lam)

    result = OracleResult(
        minimizers=(tuple(i + 1 for i in chosen),),
        value=value,
        enumerated=iterations,
        solver=SolverTag.DINKELBACH,
        trajectory=tuple(trajectory),
    )
    return result, iterations


def search_space_counts(N: int, n: int) -> Tuple[int, int]:  # noqa: N803
    """Sizes of the full family and of the greedy-intersecting family.

    Returns:
        (C(N, n), C(N, n) - C(N - n, n)); the subtrahend is 0 when 2n > N

    Raises:
        InvalidSubsetSize: If n is out of range
    """
    if not 1 <= n < N:
        raise InvalidSubsetSize(
            f"Subset size must satisfy 1 <= n < N={N}, got {n}", n=n, N=N
        )
    full = binomial(N, n)
    return full, full - binomial(N - n, n)


def decoupled_lower_bound(instance: ProblemInstance, n: int) -> RatioValue:
    """Lower bound from choosing numerator and denominator indices independently.

    The n smallest a over the n largest b can only undercut any same-index set.
    """
    _check_subset_size(instance, n)
    smallest_a = sorted(instance.a)[:n]
    largest_b = sorted(instance.b, reverse=True)[:n]
    if instance.is_exact:
        return RatioValue(sum(smallest_a), sum(largest_b))
    return RatioValue(float(sum(smallest_a)), float(sum(largest_b)))
