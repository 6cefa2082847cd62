"""Gappy reconstruction with a one-dimensional target basis.

A vector f living in span(u, U_hat) is approximated from n sampled entries
(the selection matrix P) by q = u * c, with c = (u^T P P^T u)^-1 u^T P P^T f.
The reconstruction error is bounded by ||(u^T P P^T u)^-1 u^T P P^T U_hat||_2 |U_hat^T f|,
and that factor is in turn bounded by ||P^T U_hat||_F / |P^T u|. Squaring the
last bound gives exactly a ratio of sums with a_i = sum_j U_hat_ij^2 and
b_i = u_i^2, which is what the greedy method minimizes.

Everything here runs in binary64.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

import config
from greedy_solver import greedy_select
from ratio_math import check_indices, ratio_of, validate_instance
from ratio_types import (
    DegenerateSelection,
    MismatchedLengths,
    NotOrthonormal,
    NotUnit,
    ProblemInstance,
    Selection,
    ZeroRow,
)

# Set up logging
logger = logging.getLogger("ratiopick.gappy_adapter")

MAX_REGENERATE_ATTEMPTS = 100


@dataclass(frozen=True, eq=False)
class GappyInstance:
    """Target vector u, complement basis U_hat (N x L) and the derived arrays."""

    u: np.ndarray
    Uhat: np.ndarray
    instance: ProblemInstance

    @property
    def N(self) -> int:  # noqa: N802
        return int(self.u.shape[0])


@dataclass(frozen=True)
class BoundReport:
    """Both sides of the sampling bound for one selection."""

    lhs: float  # ||(u^T P P^T u)^-1 u^T P P^T U_hat||_2
    rhs: float  # ||P^T U_hat||_F / |P^T u|
    ratio: float  # selected sum(a) / sum(b)
    identity_error: float  # |rhs^2 - ratio| / ratio

    @property
    def bound_holds(self) -> bool:
        return self.lhs <= self.rhs * (1 + config.BOUND_TOLERANCE) + config.BOUND_TOLERANCE

    @property
    def identity_holds(self) -> bool:
        return self.identity_error <= config.BOUND_TOLERANCE


@dataclass(frozen=True)
class ReconstructionReport:
    """Gappy reconstruction of one vector f from the selected entries."""

    coefficient: float  # c
    error: float  # |f - q|
    projection_error: float  # |f - f_hat|
    sampling_error: float  # |f_hat - q|
    sampling_bound: float  # lhs * |U_hat^T f|

    @property
    def pythagoras_holds(self) -> bool:
        lhs = self.error**2
        rhs = self.projection_error**2 + self.sampling_error**2
        return abs(lhs - rhs) <= config.RECONSTRUCTION_TOLERANCE * max(1.0, lhs)

    @property
    def bound_holds(self) -> bool:
        return self.sampling_error <= self.sampling_bound * (
            1 + config.RECONSTRUCTION_TOLERANCE
        ) + config.RECONSTRUCTION_TOLERANCE


def _as_basis(u: Sequence[float], Uhat: Sequence[Sequence[float]]) -> Tuple[np.ndarray, np.ndarray]:  # noqa: N803
    u_arr = np.asarray(u, dtype=np.float64).reshape(-1)
    U_arr = np.asarray(Uhat, dtype=np.float64)  # noqa: N806
    if U_arr.ndim == 1:
        U_arr = U_arr.reshape(-1, 1)  # noqa: N806
    if U_arr.ndim != 2 or U_arr.shape[0] != u_arr.shape[0]:
        raise MismatchedLengths(
            f"u has {u_arr.shape[0]} entries but U_hat has shape {U_arr.shape}",
            len_a=int(U_arr.shape[0]),
            len_b=int(u_arr.shape[0]),
        )
    return u_arr, U_arr


def build_gappy(u: Sequence[float], Uhat: Sequence[Sequence[float]]) -> GappyInstance:  # noqa: N803
    """Validate a basis pair and derive a_i = sum_j U_hat_ij^2, b_i = u_i^2.

    Raises:
        MismatchedLengths: If the dimensions disagree
        NotUnit: If |u| differs from 1 by more than the unit tolerance
        NotOrthonormal: If U_hat^T U_hat is not the identity or U_hat^T u is not zero
        ZeroRow: If some a_i or b_i is zero
    """
    u_arr, U_arr = _as_basis(u, Uhat)  # noqa: N806
    norm = float(np.linalg.norm(u_arr))
    if abs(norm - 1.0) > config.UNIT_TOLERANCE:
        raise NotUnit(f"|u| = {norm!r}, expected 1", norm=norm)

    gram_error = float(np.max(np.abs(U_arr.T @ U_arr - np.eye(U_arr.shape[1]))))
    if gram_error > config.ORTHONORMAL_TOLERANCE:
        raise NotOrthonormal(
            f"U_hat columns are not orthonormal (max deviation {gram_error:.3g})",
            deviation=gram_error,
        )
    cross_error = float(np.max(np.abs(U_arr.T @ u_arr)))
    if cross_error > config.ORTHONORMAL_TOLERANCE:
        raise NotOrthonormal(
            f"U_hat is not orthogonal to u (max |U_hat^T u| {cross_error:.3g})",
            deviation=cross_error,
        )

    a = np.sum(U_arr**2, axis=1)
    b = u_arr**2
    for name, arr in (("a", a), ("b", b)):
        zeros = np.flatnonzero(arr == 0.0)
        if zeros.size:
            i = int(zeros[0]) + 1
            raise ZeroRow(f"Derived {name}_{i} is zero", array=name, index=i)

    instance = validate_instance(a, b, arithmetic="float")
    u_arr.setflags(write=False)
    U_arr.setflags(write=False)
    return GappyInstance(u=u_arr, Uhat=U_arr, instance=instance)


def build_arrays(u: Sequence[float], Uhat: Sequence[Sequence[float]]) -> ProblemInstance:  # noqa: N803
    """The (a, b) instance whose ratio equals the squared sampling bound."""
    return build_gappy(u, Uhat).instance


def bound_check(gappy: GappyInstance, selection: Sequence[int]) -> BoundReport:
    """Evaluate both sides of the sampling bound for a 1-based selection.

    With one-dimensional U, (u^T P P^T u)^-1 is a scalar and the left side is
    |sum_i u_i U_hat_i,:| / sum_i u_i^2 over the selected rows.

    Raises:
        DegenerateSelection: If every selected u_i is zero
    """
    idx = np.asarray(check_indices(gappy.instance, selection)) - 1
    us = gappy.u[idx]
    rows = gappy.Uhat[idx, :]
    weight = float(us @ us)
    if weight == 0.0:
        raise DegenerateSelection("Selected entries of u are all zero")

    lhs = float(np.linalg.norm(us @ rows)) / weight
    rhs = float(np.linalg.norm(rows, "fro")) / math.sqrt(weight)
    ratio = ratio_of(gappy.instance, selection).as_float()
    error = abs(rhs**2 - ratio) / ratio
    report = BoundReport(lhs=lhs, rhs=rhs, ratio=ratio, identity_error=error)
    if not report.bound_holds or not report.identity_holds:
        logger.warning(f"Sampling bound check failed for {list(selection)}: {report}")
    return report


def gappy_solve(
    u: Sequence[float], Uhat: Sequence[Sequence[float]], n: int  # noqa: N803
) -> Tuple[Selection, BoundReport]:
    """Choose n sample entries greedily and report the resulting bound."""
    gappy = build_gappy(u, Uhat)
    selection, _ = greedy_select(gappy.instance, n)
    report = bound_check(gappy, selection.indices)
    logger.info(
        f"Gappy selection {selection.indices}: lhs={report.lhs:.6g}, rhs={report.rhs:.6g}"
    )
    return selection, report


def gappy_reconstruct(
    gappy: GappyInstance, selection: Sequence[int], f: Sequence[float]
) -> ReconstructionReport:
    """Reconstruct f from its selected entries and check the error split and bound.

    Raises:
        MismatchedLengths: If f has the wrong length
    """
    f_arr = np.asarray(f, dtype=np.float64).reshape(-1)
    if f_arr.shape[0] != gappy.N:
        raise MismatchedLengths(
            f"f has {f_arr.shape[0]} entries, expected {gappy.N}",
            len_a=int(f_arr.shape[0]),
            len_b=gappy.N,
        )
    idx = np.asarray(check_indices(gappy.instance, selection)) - 1
    us = gappy.u[idx]
    weight = float(us @ us)
    if weight == 0.0:
        raise DegenerateSelection("Selected entries of u are all zero")

    c = float(us @ f_arr[idx]) / weight
    q = gappy.u * c
    f_hat = gappy.u * float(gappy.u @ f_arr)
    lhs = bound_check(gappy, selection).lhs
    return ReconstructionReport(
        coefficient=c,
        error=float(np.linalg.norm(f_arr - q)),
        projection_error=float(np.linalg.norm(f_arr - f_hat)),
        sampling_error=float(np.linalg.norm(f_hat - q)),
        sampling_bound=lhs * float(np.linalg.norm(gappy.Uhat.T @ f_arr)),
    )


def random_orthonormal_pair(
    seed: int, N: int, L: int, rng: Optional[np.random.Generator] = None  # noqa: N803
) -> Tuple[np.ndarray, np.ndarray]:
    """Seeded unit vector u and N x L orthonormal U_hat with U_hat^T u = 0.

    Orthonormalizes N x (L + 1) Gaussian columns with a QR factorization and
    regenerates whenever some derived a_i or b_i is exactly zero.
    """
    if not 1 <= L < N:
        raise ValueError(f"Need 1 <= L < N, got L={L}, N={N}")
    rng = rng or np.random.default_rng(seed)
    for attempt in range(MAX_REGENERATE_ATTEMPTS):
        Q, _ = np.linalg.qr(rng.standard_normal((N, L + 1)))  # noqa: N806
        u = Q[:, 0].copy()
        Uhat = Q[:, 1:].copy()  # noqa: N806
        if np.all(u != 0.0) and np.all(np.sum(Uhat**2, axis=1) != 0.0):
            return u, Uhat
        logger.debug(f"Regenerating orthonormal pair (attempt {attempt + 1})")
    raise RuntimeError(f"No pair without zero rows after {MAX_REGENERATE_ATTEMPTS} attempts")
