"""Command handlers for solving a single instance."""

import logging
import time
from typing import List, Optional

from exact_oracles import (
    brute_force_min,
    decoupled_lower_bound,
    dinkelbach_min,
    reduced_search_min,
)
from greedy_solver import greedy_select
from ratio_types import Arithmetic, ConfigError, GreedyTrace, ProblemInstance, SolverTag
from reports import RatioRecord, SolveReport, TraceEntry
from utils.matrix_io import load_instance

# Set up logging
logger = logging.getLogger("ratiopick.command.solve_commands")


def trace_entries(trace: GreedyTrace, scale: int) -> List[TraceEntry]:
    """q_k after each greedy pick, un-scaled to decimal strings."""
    return [
        TraceEntry.from_step(pick, q.num, q.den, scale)
        for pick, q in zip(trace.picks, trace.q)
    ]


class SolveCommands:
    """Handlers for the solve command."""

    def __init__(self, cap: Optional[int] = None, workers: int = 1) -> None:
        """Initialize solve commands.

        Args:
            cap: Enumeration cap for the exact oracles (config default if None)
            workers: Processes for rank-partitioned exhaustive search
        """
        if workers < 1:
            raise ConfigError(f"--workers must be at least 1, got {workers}", workers=workers)
        if cap is not None and cap < 1:
            raise ConfigError(f"--cap must be at least 1, got {cap}", cap=cap)
        self.cap = cap
        self.workers = workers

    def handle_solve(
        self,
        input_path: str,
        n: int,
        mode: str = "greedy",
        arithmetic: Arithmetic = "exact",
        trace: bool = False,
    ) -> SolveReport:
        """Handle the solve command.

        Args:
            input_path: CSV file with header `a,b`
            n: Subset size
            mode: greedy, brute, reduced or dinkelbach
            arithmetic: exact or float; float is greedy-only
            trace: Include the greedy q_k sequence for non-greedy modes too

        Returns:
            The solve report

        Raises:
            ConfigError: On an unknown mode or float arithmetic with an exact oracle
        """
        try:
            tag = SolverTag(mode)
        except ValueError as e:
            raise ConfigError(f"Unknown mode {mode!r}", mode=mode) from e
        if arithmetic == "float" and tag is not SolverTag.GREEDY:
            raise ConfigError(
                f"Float arithmetic is only available for greedy, not {mode}",
                mode=mode,
                arithmetic=arithmetic,
            )

        instance = load_instance(input_path, arithmetic=arithmetic)
        start = time.perf_counter()
        report = self._solve(instance, n, tag, trace)
        report.timing_ms = (time.perf_counter() - start) * 1000.0
        logger.info(
            f"Solved {input_path} with {tag.value}: {report.indices} "
            f"= {report.ratio.num}/{report.ratio.den} in {report.timing_ms:.1f} ms"
        )
        return report

    def _solve(
        self, instance: ProblemInstance, n: int, tag: SolverTag, with_trace: bool
    ) -> SolveReport:
        scale = instance.scale
        greedy, greedy_trace = greedy_select(instance, n)
        report = SolveReport(
            mode=tag.value,
            arithmetic=instance.arithmetic,
            N=instance.N,
            n=n,
            indices=list(greedy.indices),
            ratio=RatioRecord.from_ratio(greedy.value, scale),
            ties_encountered=greedy_trace.ties_encountered,
            timing_ms=0.0,
            lower_bound=RatioRecord.from_ratio(decoupled_lower_bound(instance, n), scale),
        )
        if tag is SolverTag.GREEDY or with_trace:
            report.trace = trace_entries(greedy_trace, scale)
        if tag is SolverTag.GREEDY:
            return report

        if tag is SolverTag.BRUTE:
            result = brute_force_min(instance, n, cap=self.cap, workers=self.workers)
            report.enumerated = result.enumerated
        elif tag is SolverTag.REDUCED:
            result = reduced_search_min(instance, n, greedy.indices, cap=self.cap)
            report.enumerated = result.enumerated
        else:
            result, iterations = dinkelbach_min(instance, n)
            report.iterations = iterations

        report.indices = list(result.minimizers[0])
        report.minimizers = [list(m) for m in result.minimizers]
        report.ratio = RatioRecord.from_ratio(result.value, scale)
        return report
