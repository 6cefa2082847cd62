"""Shared fixtures: the two worked instances and small file writers."""

from pathlib import Path
from typing import Callable, Sequence

import pytest

from ratio_math import validate_instance
from ratio_types import ProblemInstance

# Four-element example with optimum {1, 2} at n = 2
INSTANCE_A = ((3, 2, 5, 7), (6, 2, 2, 8))
# Counterexample where greedy misses the optimum at n = 3
INSTANCE_B = ((1, 3, 6, 4), (10, 3, 12, 6))


@pytest.fixture
def instance_a() -> ProblemInstance:
    return validate_instance(*INSTANCE_A)


@pytest.fixture
def instance_b() -> ProblemInstance:
    return validate_instance(*INSTANCE_B)


@pytest.fixture
def write_csv(tmp_path: Path) -> Callable[[str, str], Path]:
    """Write raw CSV text to a temporary file and return its path."""

    def _write(name: str, text: str) -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8", newline="")
        return path

    return _write


@pytest.fixture
def write_instance(write_csv: Callable[[str, str], Path]) -> Callable[[str, Sequence, Sequence], Path]:
    """Write a and b as an `a,b` CSV file."""

    def _write(name: str, a: Sequence, b: Sequence) -> Path:
        rows = "".join(f"{x},{y}\n" for x, y in zip(a, b))
        return write_csv(name, "a,b\n" + rows)

    return _write


@pytest.fixture
def gappy_files(write_csv: Callable[[str, str], Path]) -> Callable[..., tuple]:
    """Write u and U_hat as matrix files."""

    def _write(u: Sequence[float], Uhat: Sequence[Sequence[float]]) -> tuple:  # noqa: N803
        u_path = write_csv("u.txt", "".join(f"{v!r}\n" for v in u))
        uhat_path = write_csv("uhat.txt", "".join(" ".join(repr(v) for v in row) + "\n" for row in Uhat))
        return u_path, uhat_path

    return _write
