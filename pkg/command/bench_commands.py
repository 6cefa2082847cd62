"""Command handlers for the timing benchmark."""

import logging
import statistics
import time
from typing import Callable, List, Optional, Sequence

import numpy as np
from rich.table import Table

from exact_oracles import brute_force_min
from greedy_solver import greedy_select
from ratio_types import Arithmetic, ConfigError, ProblemInstance, SolverTag
from reports import BenchReport, BenchRow
from theory_checks import random_instance

# Set up logging
logger = logging.getLogger("ratiopick.command.bench_commands")


def bench_instance(
    rng: np.random.Generator, N: int, arithmetic: Arithmetic, magnitude_bits: int  # noqa: N803
) -> ProblemInstance:
    """Random instance for timing; float entries lie in (0, 1]."""
    if arithmetic == "float":
        a = 1.0 - rng.random(N)
        b = 1.0 - rng.random(N)
        a.setflags(write=False)
        b.setflags(write=False)
        return ProblemInstance(a=a, b=b, arithmetic="float")
    high = 1 << magnitude_bits
    a_int = rng.integers(1, high, size=N, endpoint=True)
    b_int = rng.integers(1, high, size=N, endpoint=True)
    return ProblemInstance(a=tuple(int(v) for v in a_int), b=tuple(int(v) for v in b_int))


def median_ms(run: Callable[[], object], repeats: int) -> float:
    """Median wall time of `repeats` calls, in milliseconds."""
    samples = []
    for _ in range(repeats):
        start = time.perf_counter()
        run()
        samples.append((time.perf_counter() - start) * 1000.0)
    return statistics.median(samples)


def render_bench_table(report: BenchReport) -> Table:
    """Aligned text view of a bench report."""
    table = Table(title=f"ratiopick bench (seed {report.seed})")
    table.add_column("solver")
    table.add_column("arithmetic")
    table.add_column("N", justify="right")
    table.add_column("n", justify="right")
    table.add_column("median ms", justify="right")
    table.add_column("ratio", justify="right")
    table.add_column("enumerated", justify="right")
    for row in report.rows:
        table.add_row(
            row.solver,
            row.arithmetic,
            str(row.N),
            str(row.n),
            f"{row.median_ms:.3f}",
            "" if row.time_ratio is None else f"{row.time_ratio:.2f}",
            "" if row.enumerated is None else str(row.enumerated),
        )
    return table


class BenchCommands:
    """Handlers for the bench command."""

    def __init__(self, seed: int = 0, magnitude_bits: int = 8) -> None:
        self.seed = seed
        self.magnitude_bits = magnitude_bits

    def handle_bench(
        self,
        sizes: Sequence[int],
        n: int,
        repeats: int = 5,
        arithmetic: Arithmetic = "float",
        brute_N: Optional[int] = None,  # noqa: N803
        brute_n: Optional[int] = None,
    ) -> BenchReport:
        """Handle the bench command.

        Greedy runs at every size; exhaustive search runs once at (brute_N, brute_n)
        when requested, on an exact instance.

        Raises:
            ConfigError: If sizes are not ascending or n is not below the smallest size
        """
        if not sizes:
            raise ConfigError("--sizes must name at least one size")
        if any(later <= earlier for earlier, later in zip(sizes, sizes[1:])):
            raise ConfigError(f"--sizes must be strictly ascending, got {list(sizes)}", sizes=list(sizes))
        if not 1 <= n < sizes[0]:
            raise ConfigError(
                f"--n must satisfy 1 <= n < {sizes[0]}, got {n}", n=n, min_size=sizes[0]
            )
        if repeats < 1:
            raise ConfigError(f"--repeats must be at least 1, got {repeats}", repeats=repeats)
        if (brute_N is None) != (brute_n is None):
            raise ConfigError("--brute-N and --brute-n must be given together")

        rng = np.random.default_rng(self.seed)
        rows: List[BenchRow] = []
        previous: Optional[float] = None
        for N in sizes:
            instance = bench_instance(rng, N, arithmetic, self.magnitude_bits)
            elapsed = median_ms(lambda: greedy_select(instance, n), repeats)
            rows.append(
                BenchRow(
                    solver=SolverTag.GREEDY.value,
                    arithmetic=arithmetic,
                    N=N,
                    n=n,
                    repeats=repeats,
                    median_ms=elapsed,
                    time_ratio=None if previous is None else elapsed / previous,
                )
            )
            logger.info(f"greedy N={N} n={n}: {elapsed:.3f} ms")
            previous = elapsed

        if brute_N is not None and brute_n is not None:
            rows.append(self._bench_brute(brute_N, brute_n, repeats))
        return BenchReport(seed=self.seed, rows=rows)

    def _bench_brute(self, N: int, n: int, repeats: int) -> BenchRow:  # noqa: N803
        instance = random_instance(self.seed, N, self.magnitude_bits)
        results = []

        def run() -> None:
            results.append(brute_force_min(instance, n))

        elapsed = median_ms(run, repeats)
        logger.info(f"brute N={N} n={n}: {results[-1].enumerated} sets in {elapsed:.3f} ms")
        return BenchRow(
            solver=SolverTag.BRUTE.value,
            arithmetic="exact",
            N=N,
            n=n,
            repeats=repeats,
            median_ms=elapsed,
            enumerated=results[-1].enumerated,
        )
