"""Surface recovery from samples through the null space of the feature matrix.

Every sample ``x`` on the zero set satisfies ``c @ phi(x) == 0``, so the true
coefficient vector spans the null space of ``Phi(X).T`` once the samples
are rich enough (rank ``|L| - 1``).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import InvalidArgumentError
from .freqset import FrequencySet, shift_set
from .trigpoly import TrigPolynomial, feature_matrix
from .zerosampler import trace_zero_set

DEFAULT_RANK_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class RecoveryResult:
    """Outcome of :func:`recover_coefficients`.

    ``singular_values`` are those of ``Phi(X).T`` padded with zeros to
    ``len(bandwidth)`` entries, so a short sample set shows its rank
    deficit explicitly.
    """

    coefficients: TrigPolynomial
    null_space_dim: int
    singular_values: np.ndarray
    unique: bool

    def to_json(self, match: float | None = None) -> dict:
        from .io import recovery_to_json

        return recovery_to_json(self, match)


def numerical_rank(M, rel_tol: float = DEFAULT_RANK_TOL) -> int:
    """Number of singular values above ``rel_tol * sigma_max``."""
    M = np.asarray(M)
    if M.size == 0:
        raise InvalidArgumentError("numerical_rank of an empty matrix")
    if not rel_tol > 0:
        raise InvalidArgumentError("rel_tol must be positive")
    s = np.linalg.svd(M, compute_uv=False)
    if s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > rel_tol * s[0]))


def _realify(v: np.ndarray, support: FrequencySet) -> np.ndarray | None:
    """Rotate ``v`` so it is conjugate symmetric, if its direction allows it."""
    perm = support.negation_permutation
    if perm is None:
        return None
    mirrored = v[perm].conj()
    # mirrored is conj(alpha) c when v = alpha c with c conjugate symmetric
    phase = np.angle(np.vdot(mirrored, v))
    w = v * np.exp(-0.5j * phase)
    sym = 0.5 * (w + w[perm].conj())
    norm = np.linalg.norm(sym)
    if norm < 0.5:
        return None
    return sym / norm


def recover_coefficients(X, bandwidth: FrequencySet, rel_tol: float = DEFAULT_RANK_TOL) -> RecoveryResult:
    """Estimate the coefficient vector annihilating the samples ``X``.

    The returned polynomial is the right singular vector of ``Phi(X).T``
    for its smallest singular value, scaled to unit norm. On a symmetric
    bandwidth it is rotated to be conjugate symmetric (real-valued) when
    that is consistent with the vector. When the numerical null space has
    dimension above one the vector is still returned but ``unique`` is
    False.
    """
    Phi = feature_matrix(bandwidth, X)
    m = len(bandwidth)
    _, s, Vh = np.linalg.svd(Phi.T, full_matrices=True)
    padded = np.zeros(m)
    padded[: s.shape[0]] = s[:m]
    c = Vh[-1].conj()
    c = c / np.linalg.norm(c)
    real = _realify(c, bandwidth)
    poly = TrigPolynomial(bandwidth, c if real is None else real, real_valued=real is not None)
    rank = int(np.count_nonzero(padded > rel_tol * padded[0])) if padded[0] > 0 else 0
    null_dim = m - rank
    return RecoveryResult(poly, null_dim, padded, null_dim == 1)


def coefficient_match(recovered: TrigPolynomial, truth: TrigPolynomial) -> float:
    """Cosine of the angle between coefficient vectors, ``|<a, b>| / (|a| |b|)``."""
    if recovered.support != truth.support:
        raise InvalidArgumentError("coefficient_match needs identical supports")
    a, b = recovered.coeffs, truth.coeffs
    value = abs(np.vdot(a, b)) / (np.linalg.norm(a) * np.linalg.norm(b))
    return float(min(value, 1.0))


def rank_identity_check(X, gamma: FrequencySet, lam: FrequencySet,
                        rel_tol: float = DEFAULT_RANK_TOL) -> tuple[int, int]:
    """Observed rank of ``Phi_gamma(X)`` and the predicted ``|gamma| - |gamma:lam|``."""
    predicted = len(gamma) - len(shift_set(gamma, lam))
    observed = numerical_rank(feature_matrix(gamma, X), rel_tol)
    return observed, predicted


def _rms(p: TrigPolynomial, resolution: int) -> float:
    axes = np.meshgrid(*([np.arange(resolution) / resolution] * p.dim), indexing="ij")
    grid = np.stack(axes, axis=-1).reshape(-1, p.dim)
    return float(np.sqrt(np.mean(np.abs(p(grid)) ** 2)))


def surface_distance_report(recovered: TrigPolynomial, truth: TrigPolynomial,
                            grid_resolution: int = 64) -> float:
    """Scale-free discrepancy between two zero sets.

    Averages ``|recovered(x)| / rms(recovered)`` over refined trace points
    of ``truth`` and the mirror quantity over trace points of
    ``recovered``. Zero when the zero sets coincide.
    """
    for p in (recovered, truth):
        if not p.real_valued:
            raise InvalidArgumentError("surface_distance_report needs real-valued polynomials")
    if recovered.dim != truth.dim or truth.dim not in (2, 3):
        raise InvalidArgumentError("surface_distance_report supports matching dims 2 or 3")
    terms = []
    for src, other in ((truth, recovered), (recovered, truth)):
        trace = trace_zero_set(src, grid_resolution, refine=True)
        if len(trace) == 0:
            # an empty zero set cannot overlap anything
            terms.append(1.0)
            continue
        terms.append(float(np.mean(np.abs(other(trace))) / _rms(other, grid_resolution)))
    return 0.5 * (terms[0] + terms[1])
