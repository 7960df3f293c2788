"""Recovery of zero level-set surfaces of bandlimited trigonometric
polynomials from samples, and local kernel representation of bandlimited
functions on such surfaces."""

from .exceptions import (AnchorSelectionError, FormatError, IllConditionedKernelError, InvalidArgumentError,
                         SamplingError)
from .freqset import FrequencySet, minkowski_sum, rect, shift_set
from .interpolant import Interpolant, anchor_count, build_interpolant, eval_interpolant, select_anchors
from .recovery import (RecoveryResult, coefficient_match, numerical_rank, rank_identity_check,
                       recover_coefficients, surface_distance_report)
from .trigpoly import (TrigPolynomial, dirichlet_kernel, evaluate, feature_map, feature_matrix, kernel_matrix,
                       multiply, random_polynomial, random_real_polynomial)
from .zerosampler import SampleSet, sample_zero_set, trace_zero_set

__version__ = "0.1.0"

__all__ = [
    "AnchorSelectionError", "FormatError", "FrequencySet", "IllConditionedKernelError", "Interpolant",
    "InvalidArgumentError", "RecoveryResult", "SampleSet", "SamplingError", "TrigPolynomial", "anchor_count",
    "build_interpolant", "coefficient_match", "dirichlet_kernel", "eval_interpolant", "evaluate",
    "feature_map", "feature_matrix", "kernel_matrix", "minkowski_sum", "multiply", "numerical_rank",
    "random_polynomial", "random_real_polynomial", "rank_identity_check", "recover_coefficients", "rect",
    "sample_zero_set", "shift_set", "surface_distance_report", "trace_zero_set",
]
