"""Command handlers for the property verification sweeps."""

import logging
import time

from ratio_types import ConfigError
from reports import PropertyResult, VerificationReport, ViolationRecord
from theory_checks import HARD_PROPERTIES, SweepSummary, Violation, run_sweeps

# Set up logging
logger = logging.getLogger("ratiopick.command.verify_commands")


def _violation_record(violation: Violation) -> ViolationRecord:
    digest = violation.digest
    return ViolationRecord(
        property=violation.prop,
        seed=digest.seed,
        N=digest.N,
        n=digest.n,
        magnitude_bits=digest.magnitude_bits,
        a=list(violation.a),
        b=list(violation.b),
        detail=violation.detail,
    )


class VerifyCommands:
    """Handlers for the verify command."""

    def __init__(self, workers: int = 1, progress: bool = True) -> None:
        if workers < 1:
            raise ConfigError(f"--workers must be at least 1, got {workers}", workers=workers)
        self.workers = workers
        self.progress = progress

    def handle_verify(
        self,
        trials: int,
        max_N: int,  # noqa: N803
        trace_max_N: int,  # noqa: N803
        magnitude_bits: int,
        seed: int,
        cap: int,
    ) -> VerificationReport:
        """Handle the verify command.

        Args:
            trials: Seeded units per sweep stream
            max_N: Largest N in the exhaustive corpus
            trace_max_N: Largest N for the greedy-trace sweep
            magnitude_bits: Random entries are drawn from [1, 2**magnitude_bits]
            seed: Master seed
            cap: Enumeration cap; larger instances are skipped, not failed

        Returns:
            Per-property counts, violating instances and the greedy gap summary

        Raises:
            ConfigError: If any knob is out of range
        """
        checks = (
            ("trials", trials, 0),
            ("max_N", max_N, 3),
            ("trace_max_N", trace_max_N, 2),
            ("magnitude_bits", magnitude_bits, 1),
            ("cap", cap, 1),
        )
        for name, value, low in checks:
            if value < low:
                raise ConfigError(f"{name} must be at least {low}, got {value}", **{name: value})
        if seed < 0:
            raise ConfigError(f"seed must be non-negative, got {seed}", seed=seed)

        start = time.perf_counter()
        summary = run_sweeps(
            seed,
            trials,
            max_N,
            trace_max_N,
            magnitude_bits,
            cap,
            workers=self.workers,
            progress=self.progress,
        )
        elapsed = (time.perf_counter() - start) * 1000.0
        return self._report(summary, seed, trials, max_N, trace_max_N, magnitude_bits, cap, elapsed)

    def _report(
        self,
        summary: SweepSummary,
        seed: int,
        trials: int,
        max_N: int,  # noqa: N803
        trace_max_N: int,  # noqa: N803
        magnitude_bits: int,
        cap: int,
        elapsed_ms: float,
    ) -> VerificationReport:
        properties = {
            name: PropertyResult(
                hard=name in HARD_PROPERTIES,
                passed=tally.passed,
                failed=tally.failed,
                skipped=tally.skipped,
                findings=tally.findings,
            )
            for name, tally in summary.tallies.items()
        }
        if not summary.ok:
            failed = [p for p, r in properties.items() if r.hard and r.failed]
            logger.error(f"Hard properties failed: {', '.join(failed)}")
        return VerificationReport(
            seed=seed,
            trials=trials,
            max_N=max_N,
            trace_max_N=trace_max_N,
            magnitude_bits=magnitude_bits,
            cap=cap,
            properties=properties,
            violations=[_violation_record(v) for v in summary.violations],
            inexact_by_n={str(n): count for n, count in summary.inexact_by_n.items()},
            max_greedy_gap=str(summary.max_gap),
            ok=summary.ok,
            timing_ms=elapsed_ms,
        )
