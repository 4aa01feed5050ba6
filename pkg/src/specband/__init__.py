"""Rhaly and generalized Cesàro operators on weighted c0 spaces."""
from .criteria import (
    Verdict,
    c0_matrix_bounded,
    cesaro_mu,
    cesaro_verdict,
    operator_verdicts,
    rhaly_beta,
    rhaly_verdict,
)
from .finsec import (
    eigen_residual,
    finite_rank_error,
    smallest_singular_value,
    truncation_sweep,
    weyl_witness,
)
from .operators import GenCesaro, OperatorSpec, Rhaly, adjoint_entry, apply_truncated, conjugated_entry, entry, truncate
from .seqcore import (
    CoeffSpec,
    SeqWindow,
    WeightSpec,
    ratio_limsup_estimate,
    reciprocal_partial_sum,
    weight_value,
    weighted_norm,
)
from .spectra import (
    SpectralReport,
    a1_a2_membership,
    adjoint_eigenvector_rhaly,
    eigenvector_cesaro,
    eigenvector_rhaly,
    fine_spectrum_report,
    goldberg_noncompact_report,
    kummer_certificate,
    point_spectrum,
)

__version__ = "0.1.0"
