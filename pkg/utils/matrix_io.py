"""Input files: CSV problem instances and dense text matrices."""

import csv
import logging
import re
from pathlib import Path
from typing import List, Union

import numpy as np

from ratio_math import validate_instance
from ratio_types import Arithmetic, ParseError, ProblemInstance
from utils.number_utils import RawNumber, parse_decimal

# Set up logging
logger = logging.getLogger("ratiopick.utils.matrix_io")

_DELIMITERS = re.compile(r"[,\s]+")


def read_matrix(path: Union[str, Path]) -> np.ndarray:
    """Read a dense row-major matrix.

    Blank lines and lines starting with '#' are skipped.

    Raises:
        ParseError: On a non-numeric entry or a ragged row (line number reported)
    """
    rows: List[List[float]] = []
    with open(path, "r", encoding="utf-8-sig") as f:
        for line_no, line in enumerate(f, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            fields = [t for t in _DELIMITERS.split(text) if t]
            try:
                row = [float(t) for t in fields]
            except ValueError as e:
                raise ParseError(
                    f"{path}:{line_no}: not a number ({e})", path=str(path), line=line_no
                ) from e
            if rows and len(row) != len(rows[0]):
                raise ParseError(
                    f"{path}:{line_no}: expected {len(rows[0])} columns, got {len(row)}",
                    path=str(path),
                    line=line_no,
                )
            rows.append(row)
    if not rows:
        raise ParseError(f"{path}: no data rows", path=str(path), line=0)
    logger.debug(f"Read {len(rows)}x{len(rows[0])} matrix from {path}")
    return np.array(rows, dtype=np.float64)


def read_vector(path: Union[str, Path]) -> np.ndarray:
    """Read a single-column file as a 1-D vector.

    Raises:
        ParseError: If the file has more than one column
    """
    matrix = read_matrix(path)
    if matrix.shape[1] != 1:
        raise ParseError(
            f"{path}: expected a single column, got {matrix.shape[1]}",
            path=str(path),
            line=1,
        )
    return matrix[:, 0]


def load_instance(path: Union[str, Path], arithmetic: Arithmetic = "exact") -> ProblemInstance:
    """Load a CSV instance with header `a,b`; data row k is index k.

    Line numbers in errors count the header as line 1. Blank lines are skipped.

    Raises:
        ParseError: On a missing header, a ragged row or a non-decimal value
    """
    a: List[RawNumber] = []
    b: List[RawNumber] = []
    with open(path, "r", encoding="utf-8-sig", newline="") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header is None or [h.strip().lower() for h in header] != ["a", "b"]:
            raise ParseError(f"{path}:1: expected header 'a,b', got {header}", path=str(path), line=1)
        for row in reader:
            line_no = reader.line_num
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != 2:
                raise ParseError(
                    f"{path}:{line_no}: expected 2 fields, got {len(row)}",
                    path=str(path),
                    line=line_no,
                )
            try:
                a_val, b_val = (parse_decimal(cell) for cell in row)
            except ParseError as e:
                raise ParseError(f"{path}:{line_no}: {e}", path=str(path), line=line_no) from e
            a.append(a_val)
            b.append(b_val)

    logger.debug(f"Read {len(a)} rows from {path}")
    if arithmetic == "float":
        return validate_instance([float(v) for v in a], [float(v) for v in b], arithmetic="float")
    return validate_instance(a, b)
