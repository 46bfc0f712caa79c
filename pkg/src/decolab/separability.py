"""PPT (positive partial transpose) diagnostics across the single-qubit cuts.

A negative partial transpose certifies entanglement; the converse does not
hold for 2x4 cuts, so a PPT outcome is never reported as separability.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg, qsys

NPT_TOL = 1e-10


@dataclass(frozen=True)
class PptReport:
    """Minimum partial-transpose eigenvalue per transposed qubit (1, 2, 3)."""

    per_cut_min_eigenvalue: np.ndarray
    npt: bool


def ppt_report(rho) -> PptReport:
    """Minimum eigenvalue of the partial transpose over each qubit."""
    mins = np.array([
        linalg.hermitian_eigen(qsys.partial_transpose(rho, q)).eigenvalues[-1]
        for q in (1, 2, 3)
    ])
    return PptReport(per_cut_min_eigenvalue=mins, npt=bool(mins.min() < -NPT_TOL))
