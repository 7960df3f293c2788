"""Local kernel representation of bandlimited functions on a surface.

On the zero set of a polynomial with bandwidth ``L``, the features of
bandwidth ``G`` (``G`` containing ``L``) span only ``P = |G| - |G:L|``
dimensions. Any ``G``-bandlimited ``f`` restricted to the surface is then
fixed by its values at ``P`` admissible anchor points, and

    f(x) = sum_i p_i k(x_i, x),    p^T = [f(x_1) ... f(x_P)] K^+

with the Dirichlet kernel ``k`` of bandwidth ``G`` and ``K[i, j] = k(x_i, x_j)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .exceptions import AnchorSelectionError, IllConditionedKernelError, InvalidArgumentError
from .freqset import FrequencySet, shift_set
from .recovery import DEFAULT_RANK_TOL, numerical_rank
from .trigpoly import TrigPolynomial, feature_matrix, kernel_matrix
from .zerosampler import DEFAULT_TOL, SampleSet, sample_zero_set

DEFAULT_PINV_TOL = 1e-10
DEFAULT_POOL_FACTOR = 4


def anchor_count(gamma: FrequencySet, lam: FrequencySet) -> int:
    """``|gamma| - |gamma:lam|``, the rank of on-surface features of bandwidth gamma."""
    return len(gamma) - len(shift_set(gamma, lam))


def select_anchors(surface: TrigPolynomial, gamma: FrequencySet, seed: int = 0, max_retries: int = 20,
                   rel_tol: float = DEFAULT_RANK_TOL, pool_factor: int = DEFAULT_POOL_FACTOR,
                   tol: float = DEFAULT_TOL) -> SampleSet:
    """Draw ``P`` certified anchor points on the zero set of ``surface``.

    Each attempt samples ``pool_factor * P`` random points on the surface
    and keeps the ``P`` chosen first by column-pivoted QR of their feature
    matrix. The set is accepted when ``numerical_rank(Phi_gamma) == P`` at
    ``rel_tol``. ``pool_factor=1`` keeps every drawn point, i.e. plain
    random anchors with redraws.

    Raises
    ------
    AnchorSelectionError
        When no attempt reaches rank ``P``; reports the best rank seen.
    """
    P = anchor_count(gamma, surface.support)
    if P < 1:
        raise InvalidArgumentError("the surface bandwidth leaves no anchor degrees of freedom")
    if pool_factor < 1:
        raise InvalidArgumentError("pool_factor must be at least 1")
    best = 0
    for attempt in range(max_retries):
        pool = sample_zero_set(surface, pool_factor * P, tol=tol, seed=[seed, attempt])
        if pool_factor > 1:
            _, _, piv = scipy.linalg.qr(feature_matrix(gamma, pool), mode="economic", pivoting=True)
            pool = pool.take(np.sort(piv[:P]))
        rank = numerical_rank(feature_matrix(gamma, pool), rel_tol)
        if rank == P:
            return pool
        best = max(best, rank)
    raise AnchorSelectionError(
        f"best anchor rank {best} < {P} after {max_retries} attempts", achieved_rank=best, required_rank=P
    )


@dataclass(frozen=True, eq=False)
class Interpolant:
    """Anchors, weights and kernel bandwidth of a local representation."""

    anchors: SampleSet
    weights: np.ndarray
    kernel_bandwidth: FrequencySet
    kernel_matrix_rank: int
    pinv_tol: float

    def __call__(self, x) -> complex | np.ndarray:
        return eval_interpolant(self, x)

    @property
    def num_parameters(self) -> int:
        return self.weights.shape[0]

    def to_json(self) -> dict:
        from .io import interpolant_to_json

        return interpolant_to_json(self)


def build_interpolant(f_values, anchors: SampleSet, gamma: FrequencySet,
                      pinv_tol: float = DEFAULT_PINV_TOL) -> Interpolant:
    """Solve for the kernel weights from function values at the anchors.

    Raises
    ------
    IllConditionedKernelError
        If the kernel matrix has fewer than ``P`` eigenvalues above
        ``pinv_tol`` times the largest one.
    """
    f = np.asarray(f_values, dtype=complex).ravel()
    if f.shape[0] != len(anchors):
        raise InvalidArgumentError(f"{f.shape[0]} function values for {len(anchors)} anchors")
    if anchors.dim != gamma.dim:
        raise InvalidArgumentError(f"anchors have dim {anchors.dim}, gamma has dim {gamma.dim}")
    K = kernel_matrix(gamma, anchors)
    K = 0.5 * (K + K.conj().T)
    eig = np.linalg.eigvalsh(K)
    rank = int(np.count_nonzero(eig > pinv_tol * eig[-1]))
    if rank < len(anchors):
        raise IllConditionedKernelError(
            f"kernel matrix has numerical rank {rank} < {len(anchors)} at tolerance {pinv_tol:g}",
            rank=rank, size=len(anchors),
        )
    weights = np.linalg.pinv(K, rtol=pinv_tol, hermitian=True).T @ f
    weights.setflags(write=False)
    return Interpolant(anchors, weights, gamma, rank, pinv_tol)


def eval_interpolant(itp: Interpolant, x) -> complex | np.ndarray:
    """``sum_i p_i k(x_i, x)`` at one point or at ``(N, dim)`` points.

    Off the surface the result generally differs from the function that
    produced the anchor values.
    """
    arr = np.asarray(getattr(x, "points", x), dtype=float)
    single = arr.ndim <= 1 and not hasattr(x, "points")
    if single:
        if arr.size != itp.kernel_bandwidth.dim:
            raise InvalidArgumentError(f"point has dimension {arr.size}, expected {itp.kernel_bandwidth.dim}")
        arr = arr.reshape(1, -1)
    values = itp.weights @ kernel_matrix(itp.kernel_bandwidth, itp.anchors, arr)
    return complex(values[0]) if single else values
