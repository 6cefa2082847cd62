"""Decimal parsing and power-of-ten scaling for the exact arithmetic path."""

import numbers
from decimal import Decimal, InvalidOperation
from typing import List, Sequence, Tuple, Union

from ratio_types import ParseError, Scalar

RawNumber = Union[int, float, str, Decimal]


def parse_decimal(value: RawNumber) -> Decimal:
    """Parse a decimal literal (or number) into a finite Decimal.

    Floats go through repr so that 0.1 parses as the literal 0.1. Numpy scalars
    are converted to the matching Python int or float first.

    Raises:
        ParseError: If the value is not a finite decimal literal
    """
    if isinstance(value, bool):
        raise ParseError(f"Not a decimal literal: {value!r}", value=str(value))
    try:
        if isinstance(value, str):
            parsed = Decimal(value.strip())
        elif isinstance(value, Decimal):
            parsed = value
        elif isinstance(value, numbers.Integral):
            parsed = Decimal(int(value))
        elif isinstance(value, numbers.Real):
            parsed = Decimal(repr(float(value)))
        else:
            parsed = Decimal(value)
    except (InvalidOperation, TypeError, ValueError) as e:
        raise ParseError(f"Not a decimal literal: {value!r}", value=str(value)) from e
    if not parsed.is_finite():
        raise ParseError(f"Not a finite number: {value!r}", value=str(value))
    return parsed


def common_scale(values: Sequence[Decimal]) -> int:
    """Smallest power of ten that turns every value into an integer."""
    scale = 0
    for value in values:
        exponent = value.as_tuple().exponent
        if isinstance(exponent, int) and -exponent > scale:
            scale = -exponent
    return scale


def scale_to_integers(
    a: Sequence[Decimal], b: Sequence[Decimal]
) -> Tuple[List[int], List[int], int]:
    """Multiply both arrays by one shared power of ten so all entries are integers.

    Returns:
        The scaled a, the scaled b, and the exponent used
    """
    scale = common_scale([*a, *b])
    return (
        [_to_scaled_int(v, scale) for v in a],
        [_to_scaled_int(v, scale) for v in b],
        scale,
    )


def _to_scaled_int(value: Decimal, scale: int) -> int:
    # Built from the digit tuple; Decimal arithmetic rounds past 28 digits
    sign, digits, exponent = value.as_tuple()
    assert isinstance(exponent, int)
    magnitude = int("".join(map(str, digits)) or "0") * 10 ** (exponent + scale)
    return -magnitude if sign else magnitude


def format_scaled(value: int, scale: int) -> str:
    """Render value / 10**scale as an exact plain decimal string."""
    digits = tuple(int(c) for c in str(abs(value)))
    return format(Decimal((1 if value < 0 else 0, digits, -scale)), "f")


def format_scalar(value: Scalar, scale: int = 0) -> str:
    """Render an exact scaled integer or a float as a decimal string."""
    if isinstance(value, int):
        return format_scaled(value, scale)
    return repr(float(value))
