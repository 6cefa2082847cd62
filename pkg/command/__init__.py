"""Command handlers for the ratiopick CLI."""

from .bench_commands import BenchCommands
from .gappy_commands import GappyCommands
from .solve_commands import SolveCommands
from .verify_commands import VerifyCommands

__all__ = [
    "BenchCommands",
    "GappyCommands",
    "SolveCommands",
    "VerifyCommands",
]
