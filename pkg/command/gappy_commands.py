"""Command handlers for Gappy sample selection."""

import logging
from typing import Optional

from gappy_adapter import build_gappy, gappy_reconstruct, gappy_solve
from reports import BoundRecord, GappyReport, RatioRecord, ReconstructionRecord
from utils.matrix_io import read_matrix, read_vector

# Set up logging
logger = logging.getLogger("ratiopick.command.gappy_commands")


class GappyCommands:
    """Handlers for the gappy command."""

    def handle_gappy(
        self, u_path: str, uhat_path: str, n: int, f_path: Optional[str] = None
    ) -> GappyReport:
        """Handle the gappy command.

        Args:
            u_path: Single-column file holding the unit vector u
            uhat_path: N x L matrix file holding U_hat
            n: Number of sample entries to choose
            f_path: Optional vector to reconstruct from the chosen entries

        Returns:
            The selection with both sides of the sampling bound
        """
        u = read_vector(u_path)
        Uhat = read_matrix(uhat_path)  # noqa: N806
        selection, bound = gappy_solve(u, Uhat, n)

        report = GappyReport(
            N=int(u.shape[0]),
            L=int(Uhat.shape[1]),
            n=n,
            selection=list(selection.indices),
            ratio=RatioRecord.from_ratio(selection.value),
            bound=BoundRecord(
                lhs=bound.lhs,
                rhs=bound.rhs,
                rhs_squared=bound.rhs**2,
                ratio=bound.ratio,
                identity_error=bound.identity_error,
                bound_holds=bound.bound_holds,
                identity_holds=bound.identity_holds,
            ),
        )
        if f_path is not None:
            gappy = build_gappy(u, Uhat)
            rec = gappy_reconstruct(gappy, selection.indices, read_vector(f_path))
            report.reconstruction = ReconstructionRecord(
                coefficient=rec.coefficient,
                error=rec.error,
                projection_error=rec.projection_error,
                sampling_error=rec.sampling_error,
                sampling_bound=rec.sampling_bound,
                pythagoras_holds=rec.pythagoras_holds,
                bound_holds=rec.bound_holds,
            )
            logger.info(f"Reconstruction error {rec.error:.6g} (bound {rec.sampling_bound:.6g})")
        return report
