"""Tests for Gappy sample selection and the sampling bound."""

import numpy as np
import pytest

from gappy_adapter import (
    bound_check,
    build_arrays,
    build_gappy,
    gappy_reconstruct,
    gappy_solve,
    random_orthonormal_pair,
)
from greedy_solver import greedy_select
from ratio_types import InvalidSubsetSize, MismatchedLengths, NotOrthonormal, NotUnit, ZeroRow

U = [2 / 3, 2 / 3, 1 / 3]
UHAT = [[1 / 3], [-2 / 3], [2 / 3]]


def test_build_arrays() -> None:
    """Test the derived numerator and denominator arrays."""
    instance = build_arrays(U, UHAT)
    assert not instance.is_exact
    assert np.allclose(instance.a, [1 / 9, 4 / 9, 4 / 9], rtol=0, atol=1e-15)
    assert np.allclose(instance.b, [4 / 9, 4 / 9, 1 / 9], rtol=0, atol=1e-15)


def test_solve_three_vector_example() -> None:
    """Test the selection and both sides of the bound for n=2."""
    selection, report = gappy_solve(U, UHAT, 2)
    assert selection.indices == (1, 2)
    assert report.rhs**2 == pytest.approx(0.625, rel=1e-12)
    assert report.lhs == pytest.approx(0.25, abs=1e-12)
    assert report.ratio == pytest.approx(0.625, rel=1e-12)
    assert report.bound_holds
    assert report.identity_holds


def test_bound_is_tight_on_single_entry() -> None:
    """Test that one sample gives equal sides."""
    gappy = build_gappy(U, UHAT)
    report = bound_check(gappy, [3])
    assert report.lhs == pytest.approx(2.0, rel=1e-12)
    assert report.rhs == pytest.approx(2.0, rel=1e-12)
    assert report.bound_holds


def test_full_selection_has_no_sampling_error() -> None:
    """Test that sampling every entry makes the left side vanish."""
    gappy = build_gappy(U, UHAT)
    report = bound_check(gappy, [1, 2, 3])
    assert report.lhs < 1e-10
    assert report.bound_holds


def test_basis_validation() -> None:
    """Test the unit, orthogonality and zero-row checks."""
    with pytest.raises(NotUnit):
        build_gappy([1.0, 1.0, 0.0], [[0.0], [0.0], [1.0]])
    with pytest.raises(NotOrthonormal):
        build_gappy(U, [[2 / 3], [2 / 3], [1 / 3]])
    with pytest.raises(NotOrthonormal):
        build_gappy(U, [[1 / 3, 1 / 3], [-2 / 3, -2 / 3], [2 / 3, 2 / 3]])
    with pytest.raises(ZeroRow) as exc:
        build_gappy([1.0, 0.0, 0.0], [[0.0], [1.0], [0.0]])
    assert exc.value.details == {"array": "a", "index": 1}
    with pytest.raises(MismatchedLengths):
        build_gappy(U, [[1.0], [0.0]])


def test_subset_size_checked() -> None:
    """Test that n=N is rejected."""
    with pytest.raises(InvalidSubsetSize):
        gappy_solve(U, UHAT, 3)


def test_reconstruction_split_and_bound() -> None:
    """Test the error split and sampling bound for a vector in span(u, U_hat)."""
    gappy = build_gappy(U, UHAT)
    f = 0.7 * np.asarray(U) + 0.3 * np.asarray(UHAT)[:, 0]
    report = gappy_reconstruct(gappy, [1, 2], f)
    assert report.pythagoras_holds
    assert report.bound_holds
    assert report.projection_error == pytest.approx(0.3, rel=1e-12)

    exact = gappy_reconstruct(gappy, [1, 2], U)
    assert exact.coefficient == pytest.approx(1.0, rel=1e-12)
    assert exact.error < 1e-12
    with pytest.raises(MismatchedLengths):
        gappy_reconstruct(gappy, [1], [1.0, 2.0])


def test_identity_on_random_orthonormal_pairs() -> None:
    """Test rhs^2 == selected ratio on seeded random bases."""
    for seed in range(100):
        u, Uhat = random_orthonormal_pair(seed, 12, 3)  # noqa: N806
        gappy = build_gappy(u, Uhat)
        n = 1 + seed % 11
        selection, _ = greedy_select(gappy.instance, n)
        report = bound_check(gappy, selection.indices)
        assert report.identity_holds
        assert report.bound_holds


def test_random_pair_is_reproducible() -> None:
    """Test seeded basis generation."""
    u1, U1 = random_orthonormal_pair(5, 6, 2)  # noqa: N806
    u2, U2 = random_orthonormal_pair(5, 6, 2)  # noqa: N806
    assert np.array_equal(u1, u2) and np.array_equal(U1, U2)
    assert U1.shape == (6, 2)
    with pytest.raises(ValueError):
        random_orthonormal_pair(0, 3, 3)
