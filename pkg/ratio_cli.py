#!/usr/bin/env python3
"""Command-line interface for ratio-of-sums subset selection."""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, NoReturn, Optional, Sequence

from pydantic import BaseModel
from rich.console import Console
from rich.logging import RichHandler

import config
from command import BenchCommands, GappyCommands, SolveCommands, VerifyCommands
from command.bench_commands import render_bench_table
from ratio_types import ConfigError, RatioPickError, SolverTag
from reports import ErrorReport, VerificationReport, to_json

# Set up logging
logger = logging.getLogger("ratiopick.ratio_cli")
console = Console(stderr=True)

EXIT_OK = 0
EXIT_DOMAIN_ERROR = 1
EXIT_CONFIG_ERROR = 2


class _ArgumentParser(argparse.ArgumentParser):
    """Raises ConfigError instead of exiting, so errors reach the JSON output."""

    def error(self, message: str) -> NoReturn:
        raise ConfigError(f"{self.prog}: {message}")


def setup_logging(verbose: bool = False) -> None:
    """Send log records to stderr through rich."""
    level = logging.DEBUG if verbose else getattr(logging, config.LOG_LEVEL.upper(), logging.INFO)
    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=console, rich_tracebacks=True)],
        force=True,
    )

    # Silence noisy loggers
    logging.getLogger("asyncio").setLevel(logging.WARNING)
    logging.getLogger("concurrent.futures").setLevel(logging.WARNING)


def parse_sizes(text: str) -> List[int]:
    """Parse a comma-separated list of sizes such as 100000,1000000."""
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"not a list of integers: {text!r}") from e


def setup_argparse() -> argparse.ArgumentParser:
    """Set up command line argument parsing."""
    defaults = config.get_sweep_options()
    parser = _ArgumentParser(
        description="Choose n of N indices minimizing sum(a)/sum(b) over the chosen indices"
    )
    subparsers = parser.add_subparsers(dest="command", help="Commands")

    # Common arguments for every command
    common_args = argparse.ArgumentParser(add_help=False)
    common_args.add_argument(
        "--output",
        default="-",
        help="Where to write the JSON report ('-' for standard output)",
    )
    common_args.add_argument(
        "--verbose",
        action="store_true",
        help="Log per-iteration detail",
    )

    # Solve command
    solve_parser = subparsers.add_parser(
        "solve", help="Solve one instance from a CSV file", parents=[common_args]
    )
    solve_parser.add_argument("--input", required=True, help="CSV file with header a,b")
    solve_parser.add_argument("--n", type=int, required=True, help="Subset size")
    solve_parser.add_argument(
        "--mode",
        choices=[tag.value for tag in SolverTag],
        default=SolverTag.GREEDY.value,
        help="Solver to run",
    )
    solve_parser.add_argument(
        "--arithmetic",
        choices=["exact", "float"],
        default="exact",
        help="Exact rationals or binary64 (greedy only)",
    )
    solve_parser.add_argument(
        "--trace", action="store_true", help="Include the greedy q_k sequence"
    )
    solve_parser.add_argument(
        "--cap",
        type=int,
        default=defaults["cap"],
        help="Largest number of index sets an exact oracle may enumerate",
    )
    solve_parser.add_argument(
        "--workers", type=int, default=1, help="Processes for exhaustive search"
    )

    # Verify command
    verify_parser = subparsers.add_parser(
        "verify", help="Run the seeded property sweeps", parents=[common_args]
    )
    verify_parser.add_argument(
        "--trials", type=int, default=defaults["trials"], help="Units per sweep"
    )
    verify_parser.add_argument(
        "--max-N",
        dest="max_N",
        type=int,
        default=defaults["max_N"],
        help="Largest N of the exhaustive corpus",
    )
    verify_parser.add_argument(
        "--trace-max-N",
        dest="trace_max_N",
        type=int,
        default=defaults["trace_max_N"],
        help="Largest N of the greedy trace sweep",
    )
    verify_parser.add_argument(
        "--magnitude-bits",
        type=int,
        default=defaults["magnitude_bits"],
        help="Entries are drawn from [1, 2**bits]",
    )
    verify_parser.add_argument("--seed", type=int, default=defaults["seed"])
    verify_parser.add_argument(
        "--cap",
        type=int,
        default=defaults["cap"],
        help="Instances above this many sets are skipped",
    )
    verify_parser.add_argument(
        "--workers", type=int, default=1, help="Processes to spread the corpus over"
    )
    verify_parser.add_argument(
        "--no-progress", action="store_true", help="Hide the progress bar"
    )

    # Bench command
    bench_parser = subparsers.add_parser(
        "bench", help="Time the greedy method across sizes", parents=[common_args]
    )
    bench_parser.add_argument(
        "--sizes", type=parse_sizes, required=True, help="Ascending sizes, comma separated"
    )
    bench_parser.add_argument("--n", type=int, required=True, help="Subset size")
    bench_parser.add_argument("--repeats", type=int, default=5, help="Runs per size")
    bench_parser.add_argument(
        "--arithmetic", choices=["exact", "float"], default="float"
    )
    bench_parser.add_argument("--seed", type=int, default=defaults["seed"])
    bench_parser.add_argument(
        "--magnitude-bits", type=int, default=defaults["magnitude_bits"]
    )
    bench_parser.add_argument(
        "--brute-N", dest="brute_N", type=int, help="Also time exhaustive search at this N"
    )
    bench_parser.add_argument("--brute-n", type=int, help="Subset size for the brute row")

    # Gappy command
    gappy_parser = subparsers.add_parser(
        "gappy", help="Choose Gappy sample entries", parents=[common_args]
    )
    gappy_parser.add_argument("--u", required=True, help="Single-column file holding u")
    gappy_parser.add_argument("--uhat", required=True, help="Matrix file holding U_hat")
    gappy_parser.add_argument("--n", type=int, required=True, help="Number of samples")
    gappy_parser.add_argument("--f", help="Optional vector to reconstruct")

    return parser


def write_output(text: str, output: Optional[str]) -> None:
    """Write a report to a file, or to standard output for '-'."""
    if output in (None, "-"):
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    Path(output).write_text(text, encoding="utf-8")  # type: ignore[arg-type]


def run_command(args: argparse.Namespace) -> BaseModel:
    """Dispatch parsed arguments to the matching handler."""
    if args.command == "solve":
        return SolveCommands(cap=args.cap, workers=args.workers).handle_solve(
            args.input, args.n, mode=args.mode, arithmetic=args.arithmetic, trace=args.trace
        )
    if args.command == "verify":
        handler = VerifyCommands(workers=args.workers, progress=not args.no_progress)
        return handler.handle_verify(
            trials=args.trials,
            max_N=args.max_N,
            trace_max_N=args.trace_max_N,
            magnitude_bits=args.magnitude_bits,
            seed=args.seed,
            cap=args.cap,
        )
    if args.command == "bench":
        bench = BenchCommands(seed=args.seed, magnitude_bits=args.magnitude_bits)
        report = bench.handle_bench(
            args.sizes,
            args.n,
            repeats=args.repeats,
            arithmetic=args.arithmetic,
            brute_N=args.brute_N,
            brute_n=args.brute_n,
        )
        console.print(render_bench_table(report))
        return report
    if args.command == "gappy":
        return GappyCommands().handle_gappy(args.u, args.uhat, args.n, f_path=args.f)
    raise ConfigError("No command given; use one of solve, verify, bench, gappy")


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point for the CLI.

    Returns:
        0 on success, 1 on a domain error or failed hard property, 2 on a bad argument
    """
    parser = setup_argparse()
    output: Optional[str] = "-"
    try:
        args = parser.parse_args(argv)
        output = args.output if args.command else "-"
        setup_logging(getattr(args, "verbose", False))
        report = run_command(args)
    except ConfigError as e:
        logger.error(str(e))
        write_output(to_json(ErrorReport(error=e.to_dict())), output)
        return EXIT_CONFIG_ERROR
    except RatioPickError as e:
        logger.error(str(e))
        write_output(to_json(ErrorReport(error=e.to_dict())), output)
        return EXIT_DOMAIN_ERROR
    except OSError as e:
        logger.error(f"I/O error: {e}", exc_info=True)
        error = {"type": type(e).__name__, "message": str(e)}
        write_output(to_json(ErrorReport(error=error)), output)
        return EXIT_DOMAIN_ERROR

    write_output(to_json(report), output)
    if isinstance(report, VerificationReport) and not report.ok:
        return EXIT_DOMAIN_ERROR
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
