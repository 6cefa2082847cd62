"""Executable checks of the greedy method's proven properties, and the sweeps that drive them.

The checks cover the z-array sign property, the monotone greedy trace, the
intersection theorem (unequal-ratio minimizers share an index with the greedy
set; all-equal minimizers make greedy exact) and n=2 exactness. Every check
recomputes its verdict from fresh solver output.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from tqdm import tqdm

from exact_oracles import (
    OracleResult,
    brute_force_min,
    decoupled_lower_bound,
    dinkelbach_min,
    reduced_search_min,
    search_space_counts,
)
from greedy_solver import greedy_select
from ratio_math import validate_instance
from ratio_types import (
    EnumerationCapExceeded,
    GreedyTrace,
    InvalidSubsetSize,
    MismatchedLengths,
    NonPositiveElement,
    Ordering,
    ProblemInstance,
    RatioValue,
    Selection,
    TooShort,
)
from utils.combinatorics import binomial
from utils.number_utils import format_scalar
from utils.seeded_random import SplitMix64, derive_seed

# Set up logging
logger = logging.getLogger("ratiopick.theory_checks")

# Stream identifiers for derive_seed
Z_ARRAY_STREAM = 1
TRACE_STREAM = 2
CORPUS_STREAM = 3

Z_ARRAY_MAX_LEN = 32


@dataclass(frozen=True)
class ZClassification:
    """The z-array of two positive arrays and its sign classification."""

    z: Tuple[int, ...]
    has_nonpositive: bool
    all_zero: bool
    common_ratio: Optional[RatioValue]  # C = y_i / x_i, set only when all_zero


@dataclass(frozen=True)
class InstanceDigest:
    """Everything needed to regenerate an instance: random_instance(seed, N, magnitude_bits)."""

    seed: int
    N: int
    n: int
    magnitude_bits: int


@dataclass(frozen=True)
class TheoremVerdict:
    """Intersection-theorem outcome for one minimizer."""

    minimizer: Tuple[int, ...]
    hypothesis_unequal_ratios: bool
    intersection_nonempty: bool
    greedy_exact: bool
    passed: bool
    finding: bool  # violation downgraded because an all-equal minimizer coexists
    instance_digest: Optional[InstanceDigest] = None


@dataclass(frozen=True)
class N2Verdict:
    """n=2 exactness outcome."""

    hypothesis_unequal_ratios: bool
    greedy_value: RatioValue
    optimal_value: RatioValue
    exact: bool

    @property
    def passed(self) -> bool:
        return self.exact


def z_array(x: Sequence[int], y: Sequence[int]) -> ZClassification:
    """Compute z_i = x_i * sum(y) - y_i * sum(x) and classify its signs.

    Args:
        x: Positive values, length >= 1
        y: Positive values, same length as x

    Returns:
        The z-array with its classification

    Raises:
        MismatchedLengths: If the lengths differ
        TooShort: If the arrays are empty
        NonPositiveElement: If some element is not positive
    """
    if len(x) != len(y):
        raise MismatchedLengths(
            f"Arrays differ in length: {len(x)} vs {len(y)}", len_a=len(x), len_b=len(y)
        )
    if not x:
        raise TooShort("Need at least 1 element", N=0)
    for name, values in (("x", x), ("y", y)):
        for i, v in enumerate(values, start=1):
            if not v > 0:
                raise NonPositiveElement(
                    f"Element {i} of {name} must be positive, got {v}", array=name, index=i
                )

    sx = sum(x)
    sy = sum(y)
    z = tuple(xi * sy - yi * sx for xi, yi in zip(x, y))
    all_zero = all(zi == 0 for zi in z)
    has_nonpositive = min(z) <= 0
    if not has_nonpositive:
        # z sums to zero, so this cannot happen for positive inputs
        logger.error(f"z-array has no non-positive element: {z}")
    common = RatioValue(y[0], x[0]) if all_zero else None
    return ZClassification(
        z=z, has_nonpositive=has_nonpositive, all_zero=all_zero, common_ratio=common
    )


def check_monotone_trace(trace: GreedyTrace) -> bool:
    """True iff q_1 <= q_2 <= ... <= q_n under exact comparison."""
    return all(
        trace.q[k].compare(trace.q[k + 1]) is not Ordering.GREATER
        for k in range(len(trace.q) - 1)
    )


def element_ratios_equal(instance: ProblemInstance, indices: Sequence[int]) -> bool:
    """True iff a_j / b_j is the same for every 1-based index j in the set."""
    first = indices[0] - 1
    a, b = instance.a, instance.b
    return all(a[j - 1] * b[first] == a[first] * b[j - 1] for j in indices[1:])


def _theorem_verdicts(
    instance: ProblemInstance,
    greedy: Selection,
    brute: OracleResult,
    digest: Optional[InstanceDigest],
) -> List[TheoremVerdict]:
    greedy_set = set(greedy.indices)
    greedy_exact = greedy.value == brute.value
    equal_flags = [element_ratios_equal(instance, J) for J in brute.minimizers]
    any_all_equal = any(equal_flags)

    verdicts = []
    for J, all_equal in zip(brute.minimizers, equal_flags):
        intersects = bool(greedy_set.intersection(J))
        finding = False
        if all_equal:
            passed = greedy_exact
        elif intersects:
            passed = True
        elif any_all_equal:
            passed = True
            finding = True
        else:
            passed = False
        verdicts.append(
            TheoremVerdict(
                minimizer=J,
                hypothesis_unequal_ratios=not all_equal,
                intersection_nonempty=intersects,
                greedy_exact=greedy_exact,
                passed=passed,
                finding=finding,
                instance_digest=digest,
            )
        )
    return verdicts


def check_intersection_theorem(
    instance: ProblemInstance,
    n: int,
    cap: Optional[int] = None,
    digest: Optional[InstanceDigest] = None,
) -> List[TheoremVerdict]:
    """Check the intersection theorem against every exhaustive minimizer.

    A minimizer with unequal element ratios must share an index with the
    greedy set. If any minimizer has all-equal element ratios, greedy must be
    exact. A missing intersection is downgraded to a finding when an
    all-equal minimizer coexists with it.

    Args:
        instance: Exact problem instance
        n: Subset size, 2 <= n < N
        cap: Enumeration cap for the exhaustive oracle
        digest: Optional reproducibility token attached to each verdict

    Returns:
        One verdict per minimizer

    Raises:
        InvalidSubsetSize: If n < 2 or n >= N
        EnumerationCapExceeded: If exhaustive search is too large
    """
    if not 2 <= n < instance.N:
        raise InvalidSubsetSize(
            f"The theorem needs 2 <= n < N={instance.N}, got {n}", n=n, N=instance.N
        )
    greedy, _ = greedy_select(instance, n)
    brute = brute_force_min(instance, n, cap=cap)
    return _theorem_verdicts(instance, greedy, brute, digest)


def check_n2_exactness(instance: ProblemInstance, cap: Optional[int] = None) -> N2Verdict:
    """Check that greedy finds the optimum for n=2.

    With an unequal-ratio minimizer this is the pairwise exactness result;
    otherwise it follows from the all-equal case of the intersection theorem.

    Raises:
        InvalidSubsetSize: If N < 3
        EnumerationCapExceeded: If exhaustive search is too large
    """
    if instance.N < 3:
        raise InvalidSubsetSize(
            f"n=2 exactness needs N >= 3, got N={instance.N}", n=2, N=instance.N
        )
    greedy, _ = greedy_select(instance, 2)
    brute = brute_force_min(instance, 2, cap=cap)
    return _n2_verdict(instance, greedy, brute)


def _n2_verdict(
    instance: ProblemInstance, greedy: Selection, brute: OracleResult
) -> N2Verdict:
    hypothesis = any(not element_ratios_equal(instance, J) for J in brute.minimizers)
    return N2Verdict(
        hypothesis_unequal_ratios=hypothesis,
        greedy_value=greedy.value,
        optimal_value=brute.value,
        exact=greedy.value == brute.value,
    )


def random_instance(seed: int, N: int, magnitude_bits: int) -> ProblemInstance:  # noqa: N803
    """Deterministic random instance with entries in [1, 2**magnitude_bits].

    Uses SplitMix64 seeded with `seed`: the N entries of a are drawn first,
    then the N entries of b.
    """
    if N < 2:
        raise TooShort(f"Need N >= 2, got {N}", N=N)
    if magnitude_bits < 1:
        raise ValueError(f"magnitude_bits must be >= 1, got {magnitude_bits}")
    stream = SplitMix64(seed)
    a = stream.positive_ints(N, magnitude_bits)
    b = stream.positive_ints(N, magnitude_bits)
    return validate_instance(a, b)


# Sweeps

HARD_PROPERTIES = (
    "z_array_signs",
    "monotone_trace",
    "greedy_prefix_consistency",
    "theorem_intersection",
    "pair_exactness",
    "greedy_not_below_optimum",
    "oracle_dinkelbach_agreement",
    "oracle_reduced_agreement",
    "oracle_reduced_count",
    "decoupled_lower_bound",
)
SOFT_PROPERTIES = ("reduced_family_holds_all_minimizers",)


@dataclass
class PropertyTally:
    """Pass/fail counts for one property."""

    passed: int = 0
    failed: int = 0
    skipped: int = 0
    findings: int = 0

    def merge(self, other: "PropertyTally") -> None:
        self.passed += other.passed
        self.failed += other.failed
        self.skipped += other.skipped
        self.findings += other.findings


@dataclass(frozen=True)
class Violation:
    """A failed property with enough detail to reproduce it."""

    prop: str
    digest: InstanceDigest
    a: Tuple[str, ...]
    b: Tuple[str, ...]
    detail: str


@dataclass
class AuditResult:
    """Outcome of one sweep unit (one random instance or z-array sample)."""

    key: Tuple[int, int]  # (stream, trial)
    tallies: Dict[str, PropertyTally] = field(default_factory=dict)
    violations: List[Violation] = field(default_factory=list)
    inexact_by_n: Dict[int, int] = field(default_factory=dict)
    max_gap: Fraction = Fraction(0)

    def tally(self, prop: str) -> PropertyTally:
        return self.tallies.setdefault(prop, PropertyTally())

    def record(
        self,
        prop: str,
        ok: bool,
        digest: InstanceDigest,
        instance: Optional[ProblemInstance] = None,
        detail: str = "",
    ) -> None:
        tally = self.tally(prop)
        if ok:
            tally.passed += 1
            return
        tally.failed += 1
        a = tuple(format_scalar(v, instance.scale) for v in instance.a) if instance else ()
        b = tuple(format_scalar(v, instance.scale) for v in instance.b) if instance else ()
        self.violations.append(Violation(prop, digest, a, b, detail))
        logger.warning(f"Property {prop} violated on {digest}: {detail}")


@dataclass
class SweepSummary:
    """Merged outcome of all sweep units."""

    tallies: Dict[str, PropertyTally]
    violations: List[Violation]
    inexact_by_n: Dict[int, int]
    max_gap: Fraction

    @property
    def ok(self) -> bool:
        return all(self.tallies[p].failed == 0 for p in HARD_PROPERTIES)


def audit_z_array(seed: int, trial: int, magnitude_bits: int) -> AuditResult:
    """Check the z-array signs on one random pair; every eighth pair is proportional."""
    result = AuditResult(key=(Z_ARRAY_STREAM, trial))
    trial_seed = derive_seed(seed, Z_ARRAY_STREAM, trial)
    stream = SplitMix64(trial_seed)
    length = stream.between(1, Z_ARRAY_MAX_LEN)
    x = stream.positive_ints(length, magnitude_bits)
    if stream.below(8) == 0:
        factor = stream.between(1, 1 << magnitude_bits)
        y = [factor * v for v in x]
    else:
        y = stream.positive_ints(length, magnitude_bits)
    digest = InstanceDigest(trial_seed, length, length, magnitude_bits)

    zc = z_array(x, y)
    ok = sum(zc.z) == 0 and zc.has_nonpositive
    if ok and not any(v < 0 for v in zc.z):
        # No strictly negative entry forces all-zero and a common ratio
        ok = zc.all_zero and zc.common_ratio is not None and all(
            yi * x[0] == y[0] * xi for xi, yi in zip(x, y)
        )
    result.record("z_array_signs", ok, digest, detail=f"x={x} y={y} z={zc.z}")
    return result


def audit_greedy_trace(
    seed: int, trial: int, max_N: int, magnitude_bits: int  # noqa: N803
) -> AuditResult:
    """Check the monotone trace and prefix consistency on one random instance.

    Running to n = N - 1 covers every n, since shorter runs are prefixes.
    """
    result = AuditResult(key=(TRACE_STREAM, trial))
    trial_seed = derive_seed(seed, TRACE_STREAM, trial)
    N = SplitMix64(derive_seed(trial_seed, 0)).between(2, max(2, max_N))
    instance = random_instance(trial_seed, N, magnitude_bits)
    digest = InstanceDigest(trial_seed, N, N - 1, magnitude_bits)

    _, trace = greedy_select(instance, N - 1)
    result.record(
        "monotone_trace",
        check_monotone_trace(trace),
        digest,
        instance,
        detail=f"q={[(q.num, q.den) for q in trace.q]}",
    )
    m = SplitMix64(derive_seed(trial_seed, 1)).between(1, N - 1)
    _, short = greedy_select(instance, m)
    prefix = trace.prefix(m)
    consistent = short.picks == prefix.picks and all(
        x.same_pair(y.num, y.den) for x, y in zip(short.q, prefix.q)
    )
    result.record(
        "greedy_prefix_consistency",
        consistent,
        replace(digest, n=m),
        instance,
        detail=f"picks(m={m})={short.picks} vs prefix={prefix.picks}",
    )
    return result


def audit_corpus_instance(
    seed: int, trial: int, max_N: int, magnitude_bits: int, cap: int  # noqa: N803
) -> AuditResult:
    """Run the theorem, n=2 and oracle-agreement checks for every 2 <= n < N."""
    result = AuditResult(key=(CORPUS_STREAM, trial))
    trial_seed = derive_seed(seed, CORPUS_STREAM, trial)
    N = SplitMix64(derive_seed(trial_seed, 0)).between(3, max(3, max_N))
    instance = random_instance(trial_seed, N, magnitude_bits)
    brute_props = (
        "theorem_intersection",
        "greedy_not_below_optimum",
        "oracle_dinkelbach_agreement",
        "oracle_reduced_agreement",
        "oracle_reduced_count",
        "decoupled_lower_bound",
        "reduced_family_holds_all_minimizers",
    )

    for n in range(2, N):
        digest = InstanceDigest(trial_seed, N, n, magnitude_bits)
        greedy, _ = greedy_select(instance, n)
        try:
            brute = brute_force_min(instance, n, cap=cap)
        except EnumerationCapExceeded:
            for prop in brute_props:
                result.tally(prop).skipped += 1
            if n == 2:
                result.tally("pair_exactness").skipped += 1
            continue

        verdicts = _theorem_verdicts(instance, greedy, brute, digest)
        failed = [v for v in verdicts if not v.passed]
        result.record(
            "theorem_intersection",
            not failed,
            digest,
            instance,
            detail=f"greedy={greedy.indices} failing minimizers={[v.minimizer for v in failed]}",
        )
        if any(v.finding for v in verdicts):
            result.tally("theorem_intersection").findings += 1

        result.record(
            "greedy_not_below_optimum",
            brute.value <= greedy.value,
            digest,
            instance,
        )
        if greedy.value != brute.value:
            result.inexact_by_n[n] = result.inexact_by_n.get(n, 0) + 1
            gap = greedy.value.as_fraction() - brute.value.as_fraction()
            result.max_gap = max(result.max_gap, gap)

        if n == 2:
            n2 = _n2_verdict(instance, greedy, brute)
            result.record(
                "pair_exactness",
                n2.passed,
                digest,
                instance,
                detail=f"greedy={greedy.indices} optimum={brute.minimizers}",
            )

        dink, _ = dinkelbach_min(instance, n)
        lambdas = dink.trajectory
        decreasing = all(lambdas[i + 1] < lambdas[i] for i in range(len(lambdas) - 1))
        result.record(
            "oracle_dinkelbach_agreement",
            dink.value == brute.value and decreasing,
            digest,
            instance,
            detail=f"dinkelbach={dink.value} brute={brute.value} lambdas={lambdas}",
        )

        reduced = reduced_search_min(instance, n, greedy.indices, cap=cap)
        result.record(
            "oracle_reduced_agreement",
            reduced.value == brute.value,
            digest,
            instance,
            detail=f"reduced={reduced.value} brute={brute.value}",
        )
        full, expected = search_space_counts(N, n)
        result.record(
            "oracle_reduced_count",
            reduced.enumerated == expected
            and reduced.enumerated + binomial(N - n, n) == brute.enumerated == full,
            digest,
            instance,
            detail=f"reduced={reduced.enumerated} expected={expected} full={brute.enumerated}",
        )

        outside = [J for J in brute.minimizers if J not in set(reduced.minimizers)]
        result.tally("reduced_family_holds_all_minimizers").passed += 1
        if outside:
            result.tally("reduced_family_holds_all_minimizers").findings += 1

        result.record(
            "decoupled_lower_bound",
            decoupled_lower_bound(instance, n) <= brute.value,
            digest,
            instance,
        )
    return result


def _units(trials: int) -> Iterator[Tuple[int, int]]:
    for trial in range(trials):
        for stream in (Z_ARRAY_STREAM, TRACE_STREAM, CORPUS_STREAM):
            yield stream, trial


def _run_unit(
    stream: int,
    trial: int,
    seed: int,
    max_N: int,  # noqa: N803
    trace_max_N: int,  # noqa: N803
    magnitude_bits: int,
    cap: int,
) -> AuditResult:
    if stream == Z_ARRAY_STREAM:
        return audit_z_array(seed, trial, magnitude_bits)
    if stream == TRACE_STREAM:
        return audit_greedy_trace(seed, trial, trace_max_N, magnitude_bits)
    return audit_corpus_instance(seed, trial, max_N, magnitude_bits, cap)


def run_sweeps(
    seed: int,
    trials: int,
    max_N: int,  # noqa: N803
    trace_max_N: int,  # noqa: N803
    magnitude_bits: int,
    cap: int,
    workers: int = 1,
    progress: bool = False,
) -> SweepSummary:
    """Run every property sweep over `trials` seeded units per stream.

    Units are merged in (stream, trial) order, so the summary does not depend
    on the worker count.
    """
    units = list(_units(trials))
    args = (seed, max_N, trace_max_N, magnitude_bits, cap)
    results: List[AuditResult] = []
    bar = tqdm(total=len(units), desc="Verifying", disable=not progress)
    if workers > 1 and units:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            futures = [executor.submit(_run_unit, s, t, *args) for s, t in units]
            for future in futures:
                results.append(future.result())
                bar.update(1)
    else:
        for s, t in units:
            results.append(_run_unit(s, t, *args))
            bar.update(1)
    bar.close()

    tallies = {p: PropertyTally() for p in (*HARD_PROPERTIES, *SOFT_PROPERTIES)}
    violations: List[Violation] = []
    inexact: Dict[int, int] = {}
    max_gap = Fraction(0)
    for res in sorted(results, key=lambda r: r.key):
        for prop, tally in res.tallies.items():
            tallies[prop].merge(tally)
        violations.extend(res.violations)
        for n, count in res.inexact_by_n.items():
            inexact[n] = inexact.get(n, 0) + count
        max_gap = max(max_gap, res.max_gap)

    summary = SweepSummary(tallies, violations, dict(sorted(inexact.items())), max_gap)
    logger.info(
        f"Sweeps finished: {len(units)} units, {len(violations)} violation(s), ok={summary.ok}"
    )
    return summary
