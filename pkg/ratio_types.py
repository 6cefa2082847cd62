"""Type definitions for ratio-of-sums subset selection."""

import logging
from dataclasses import dataclass, fields
from enum import Enum
from fractions import Fraction
from functools import total_ordering
from typing import Any, Dict, Literal, Sequence, Tuple, Union

# Set up logging
logger = logging.getLogger("ratiopick.ratio_types")

Scalar = Union[int, float]
Arithmetic = Literal["exact", "float"]


class SolverTag(str, Enum):
    """Which solver produced a selection."""

    GREEDY = "greedy"
    BRUTE = "brute"
    REDUCED = "reduced"
    DINKELBACH = "dinkelbach"


class Ordering(Enum):
    """Result of comparing two ratios."""

    LESS = -1
    EQUAL = 0
    GREATER = 1


class RatioPickError(ValueError):
    """Base class for all domain errors.

    Keyword details end up in the machine-readable error object the CLI writes.
    """

    def __init__(self, message: str, **details: Any) -> None:
        super().__init__(message)
        self.details: Dict[str, Any] = details

    def to_dict(self) -> Dict[str, Any]:
        """Serialize the error for JSON reports."""
        return {"type": type(self).__name__, "message": str(self), **self.details}


class MismatchedLengths(RatioPickError):
    """The two arrays (or a vector and a matrix) disagree in length."""


class NonPositiveElement(RatioPickError):
    """An array element is zero, negative or not finite."""


class TooShort(RatioPickError):
    """Fewer than two elements were supplied."""


class IndexOutOfRange(RatioPickError):
    """A 1-based index falls outside [1, N]."""


class DuplicateIndex(RatioPickError):
    """An index set repeats an index."""


class EmptySelection(RatioPickError):
    """An index set is empty."""


class AllExcluded(RatioPickError):
    """Every index is excluded, so no candidate remains."""


class InvalidSubsetSize(RatioPickError):
    """Subset size n is outside 1 <= n < N."""


class EnumerationCapExceeded(RatioPickError):
    """An exhaustive search would examine more sets than the cap allows."""


class InvalidGreedySet(RatioPickError):
    """A greedy set has the wrong size or holds out-of-range indices."""


class ParseError(RatioPickError):
    """An input file could not be parsed."""


class NotUnit(RatioPickError):
    """The target basis vector does not have unit length."""


class NotOrthonormal(RatioPickError):
    """The complement basis is not orthonormal or not orthogonal to u."""


class ZeroRow(RatioPickError):
    """A derived a_i or b_i is zero."""


class DegenerateSelection(RatioPickError):
    """The selected entries of u are all zero."""


class ConfigError(RatioPickError):
    """Invalid command-line arguments or configuration."""


@total_ordering
@dataclass(frozen=True, eq=False)
class RatioValue:
    """A fraction of element sums kept as an unreduced (num, den) pair.

    Equality and ordering go through cross-multiplication, so (10, 25) == (2, 5).
    """

    num: Scalar
    den: Scalar

    def __post_init__(self) -> None:
        if not self.den > 0:
            raise ValueError(f"Ratio denominator must be positive, got {self.den}")

    def compare(self, other: "RatioValue") -> Ordering:
        """Order two ratios by the sign of num1*den2 - num2*den1."""
        diff = self.num * other.den - other.num * self.den
        if diff < 0:
            return Ordering.LESS
        if diff > 0:
            return Ordering.GREATER
        return Ordering.EQUAL

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RatioValue):
            return NotImplemented
        return self.compare(other) is Ordering.EQUAL

    def __lt__(self, other: "RatioValue") -> bool:
        return self.compare(other) is Ordering.LESS

    def __hash__(self) -> int:
        return hash(self.as_fraction())

    def as_fraction(self) -> Fraction:
        """Exact value; floats convert through their binary expansion."""
        return Fraction(self.num) / Fraction(self.den)

    def as_float(self) -> float:
        return float(self.num / self.den)

    def same_pair(self, num: Scalar, den: Scalar) -> bool:
        """True iff this value is literally (num, den), not just an equal fraction."""
        return self.num == num and self.den == den


@dataclass(frozen=True, eq=False)
class ProblemInstance:
    """Paired positive arrays a and b of common length N.

    In the exact path both arrays hold Python ints: the inputs multiplied by
    10**scale, with one scale shared by a and b so every ratio is unchanged.
    In the float path they hold read-only float64 numpy arrays and scale is 0.
    """

    a: Sequence[Scalar]
    b: Sequence[Scalar]
    scale: int = 0
    arithmetic: Arithmetic = "exact"

    @property
    def N(self) -> int:  # noqa: N802
        return len(self.a)

    @property
    def is_exact(self) -> bool:
        return self.arithmetic == "exact"

    def same_values(self, other: "ProblemInstance") -> bool:
        """Element-wise equality of both arrays and the scale."""
        return (
            self.scale == other.scale
            and list(self.a) == list(other.a)
            and list(self.b) == list(other.b)
        )


@dataclass(frozen=True)
class Selection:
    """An index set of size n with its value and the solver that produced it."""

    indices: Tuple[int, ...]  # 1-based, sorted ascending
    value: RatioValue
    solver: SolverTag


@dataclass(frozen=True)
class GreedyTrace:
    """Per-iteration record of a greedy run."""

    picks: Tuple[int, ...]  # 1-based, in the order chosen
    q: Tuple[RatioValue, ...]
    partial_num: Tuple[Scalar, ...]
    partial_den: Tuple[Scalar, ...]
    ties_encountered: bool

    def __post_init__(self) -> None:
        if len(set(self.picks)) != len(self.picks):
            raise ValueError(f"Greedy picks must be distinct: {self.picks}")

    def prefix(self, m: int) -> "GreedyTrace":
        """The first m iterations of this trace.

        The tie flag is kept as-is since ties later in the run are not tracked per step.
        """
        values = {f.name: getattr(self, f.name) for f in fields(self)}
        for name in ("picks", "q", "partial_num", "partial_den"):
            values[name] = values[name][:m]
        return GreedyTrace(**values)
