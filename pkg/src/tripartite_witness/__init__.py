"""Entanglement tests for tripartite states from principal-basis correlation tensors."""

from .basis import conjugation_coefficients, index_pairs, principal_basis
from .criteria import (
    CoefficientTriple,
    Verdict,
    corollary1_detect,
    corollary2_detect,
    f_delta,
    ghz_threshold,
    sweep_threshold,
    theorem1_value,
    theorem2_check,
)
from .linalg import dagger, hermitian_eigenvalues, kron, singular_values, trace_norm
from .oracle import partial_transpose, ppt_report, validate_bounds
from .states import NoiseFamily, canonical_biseparable, ghz, noisy_state, schmidt_spectrum, w3
from .tensor import CorrelationDecomposition, decompose, n_matrix, s_matrix, t_matrix, t_scalar

__version__ = "0.1.0"
