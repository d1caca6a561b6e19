"""High-precision eigensolver for a symmetric triple-well box potential."""

from ._triplewell import (
    PRECISION_FLOOR_ENV,
    AnalysisError,
    BracketError,
    DegenerateMinimumError,
    IncompleteScanError,
    InvalidParameterError,
    NodeAmbiguityError,
    NodeMismatchError,
    PrecisionInsufficientError,
    __version__,
    compare_report,
    fd_richardson,
    fd_spectrum,
    minimize_ground,
    model_energies,
    model_states,
    oracle_report,
    reference_rows_report,
    scan_levels,
    spectrum_report,
    variational_report,
    wavefunction_report,
    wavefunction_samples,
)

__all__ = [
    "PRECISION_FLOOR_ENV",
    "AnalysisError",
    "BracketError",
    "DegenerateMinimumError",
    "IncompleteScanError",
    "InvalidParameterError",
    "NodeAmbiguityError",
    "NodeMismatchError",
    "PrecisionInsufficientError",
    "__version__",
    "compare_report",
    "fd_richardson",
    "fd_spectrum",
    "minimize_ground",
    "model_energies",
    "model_states",
    "oracle_report",
    "reference_rows_report",
    "scan_levels",
    "spectrum_report",
    "variational_report",
    "wavefunction_report",
    "wavefunction_samples",
]
