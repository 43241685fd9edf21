"""PT-symmetric Scarf-II spectra: closed forms, shooting, matrix models."""

from ._scarf import (
    NonexistentLevel,
    SolverError,
    branch_onset,
    crossing_dependence,
    crossings,
    eigenstate,
    identity_coefficient,
    indices,
    is_defective,
    jacobi,
    jost_a,
    level_energy,
    level_exists,
    model_spectrum,
    pochhammer,
    pt_flip_residual,
    scan_poles,
    shoot,
    shot_eigenstate,
    spectrum,
    trace_curve,
    verify_jacobi_identity,
)

__all__ = [name for name in dir() if not name.startswith("_")]
