"""Multidimensional trigonometric polynomials on the unit torus.

``psi(x) = sum_{k in L} c_k exp(2j*pi*k.x)`` for ``x`` in ``[0, 1)^n``. The
coefficient vector is dense and laid out in the canonical order of the
support :class:`~trigsurf.freqset.FrequencySet`, so ``psi(x)`` is the inner
product ``c @ feature_map(L, x)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import InvalidArgumentError
from .freqset import FrequencySet, minkowski_sum

TWO_PI_J = 2j * np.pi

# evaluation is chunked so point-by-frequency phase tables stay small
_CHUNK = 32768


def _as_points(X, dim: int) -> np.ndarray:
    pts = np.asarray(getattr(X, "points", X), dtype=float)
    if pts.ndim == 1:
        pts = pts.reshape(1, -1) if dim != 1 or pts.size == 1 else pts.reshape(-1, 1)
    if pts.ndim != 2 or pts.shape[1] != dim:
        raise InvalidArgumentError(f"points must have dimension {dim}, got shape {pts.shape}")
    return pts


def _as_point(x, dim: int) -> np.ndarray:
    x = np.asarray(x, dtype=float).ravel()
    if x.size != dim:
        raise InvalidArgumentError(f"point has dimension {x.size}, expected {dim}")
    return x


def feature_map(bandwidth: FrequencySet, x) -> np.ndarray:
    """Lift one point: ``exp(2j*pi*k.x)`` for each ``k`` in canonical order."""
    x = _as_point(x, bandwidth.dim)
    return np.exp(TWO_PI_J * (bandwidth.indices @ x))


def feature_matrix(bandwidth: FrequencySet, X) -> np.ndarray:
    """Stack lifted points as columns, giving a ``(len(bandwidth), N)`` matrix.

    ``X`` is a :class:`~trigsurf.zerosampler.SampleSet` or an ``(N, dim)`` array.
    """
    pts = _as_points(X, bandwidth.dim)
    if pts.shape[0] == 0:
        raise InvalidArgumentError("cannot build a feature matrix from zero points")
    return np.exp(TWO_PI_J * (bandwidth.indices @ pts.T))


def dirichlet_kernel(bandwidth: FrequencySet, x, y) -> complex:
    """``phi(x)^H phi(y) = sum_k exp(2j*pi*k.(y - x))``."""
    return complex(np.vdot(feature_map(bandwidth, x), feature_map(bandwidth, y)))


def kernel_matrix(bandwidth: FrequencySet, X, Y=None) -> np.ndarray:
    """Matrix of Dirichlet kernel values ``K[i, j] = k(X[i], Y[j])``."""
    FX = feature_matrix(bandwidth, X)
    FY = FX if Y is None else feature_matrix(bandwidth, Y)
    return FX.conj().T @ FY


@dataclass(frozen=True, eq=False)
class TrigPolynomial:
    """Coefficient vector over a frequency support.

    Attributes
    ----------
    support : FrequencySet
    coeffs : ndarray of complex, shape (len(support),)
        Coefficients in the canonical order of ``support``.
    real_valued : bool
        When set, ``c[-k] == conj(c[k])`` is enforced so the polynomial is
        real on the torus. Rounding-level asymmetry is projected away.
    seed : int, optional
        Seed the polynomial was generated from, if any.
    anchor : ndarray, optional
        A point where the polynomial was constructed to vanish.
    """

    support: FrequencySet
    coeffs: np.ndarray
    real_valued: bool = False
    seed: int | None = None
    anchor: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).ravel()
        if c.shape[0] != len(self.support):
            raise InvalidArgumentError(
                f"{c.shape[0]} coefficients for a support of size {len(self.support)}"
            )
        if not np.any(c):
            raise InvalidArgumentError("coefficients are all zero")
        if self.real_valued:
            perm = self.support.negation_permutation
            if perm is None:
                raise InvalidArgumentError("a real-valued polynomial needs a symmetric support")
            mirrored = c[perm].conj()
            if np.max(np.abs(c - mirrored)) > 1e-9 * np.sum(np.abs(c)):
                raise InvalidArgumentError("coefficients are not conjugate symmetric")
            c = 0.5 * (c + mirrored)
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        if self.anchor is not None:
            object.__setattr__(self, "anchor", _as_point(self.anchor, self.dim))

    @property
    def dim(self) -> int:
        return self.support.dim

    def __call__(self, x) -> complex | np.ndarray:
        """Evaluate at one point (scalar result) or at ``(N, dim)`` points."""
        arr = np.asarray(getattr(x, "points", x), dtype=float)
        if arr.ndim <= 1 and not hasattr(x, "points"):
            return complex(self.coeffs @ feature_map(self.support, arr))
        pts = _as_points(arr, self.dim)
        out = np.empty(pts.shape[0], dtype=complex)
        for start in range(0, pts.shape[0], _CHUNK):
            block = pts[start:start + _CHUNK]
            out[start:start + _CHUNK] = np.exp(TWO_PI_J * (block @ self.support.indices.T)) @ self.coeffs
        return out

    def coefficient(self, k) -> complex:
        return complex(self.coeffs[self.support.position(k)])

    def l1_norm(self) -> float:
        return float(np.sum(np.abs(self.coeffs)))

    def normalized(self) -> TrigPolynomial:
        """Copy scaled to unit l2 norm."""
        return TrigPolynomial(self.support, self.coeffs / np.linalg.norm(self.coeffs),
                              self.real_valued, self.seed, self.anchor)

    def translate(self, t) -> TrigPolynomial:
        """The polynomial ``x -> self(x - t)``, whose zero set is shifted by ``t``."""
        t = _as_point(t, self.dim)
        c = self.coeffs * np.exp(-TWO_PI_J * (self.support.indices @ t))
        anchor = None if self.anchor is None else np.mod(self.anchor + t, 1.0)
        return TrigPolynomial(self.support, c, self.real_valued, self.seed, anchor)

    def to_json(self) -> dict:
        from .io import polynomial_to_json

        return polynomial_to_json(self)


def evaluate(p: TrigPolynomial, x) -> complex | np.ndarray:
    """``sum_k c_k exp(2j*pi*k.x)``; see :meth:`TrigPolynomial.__call__`."""
    return p(x)


def constant(dim: int, value: complex = 1.0) -> TrigPolynomial:
    support = FrequencySet(np.zeros((1, dim), dtype=int), dim=dim)
    return TrigPolynomial(support, [value], real_valued=np.imag(value) == 0)


def multiply(a: TrigPolynomial, b: TrigPolynomial) -> TrigPolynomial:
    """Product polynomial via coefficient convolution over the Minkowski sum."""
    if a.dim != b.dim:
        raise InvalidArgumentError(f"dimension mismatch: {a.dim} vs {b.dim}")
    support = minkowski_sum(a.support, b.support)
    sums = (a.support.indices[:, None, :] + b.support.indices[None, :, :]).reshape(-1, a.dim)
    rows = np.fromiter((support.position(k) for k in sums), dtype=np.intp, count=sums.shape[0])
    c = np.zeros(len(support), dtype=complex)
    np.add.at(c, rows, np.outer(a.coeffs, b.coeffs).ravel())
    return TrigPolynomial(support, c, real_valued=a.real_valued and b.real_valued)


def _upper_half(indices: np.ndarray) -> np.ndarray:
    """Mask of nonzero ``k`` whose first nonzero entry is positive."""
    nz = indices != 0
    first = np.argmax(nz, axis=1)
    lead = indices[np.arange(indices.shape[0]), first]
    return nz.any(axis=1) & (lead > 0)


CURVE_MODELS = ("centered", "anchored")


def random_real_polynomial(bandwidth: FrequencySet, seed: int, model: str = "centered") -> TrigPolynomial:
    """Random conjugate-symmetric polynomial with a nonempty zero set.

    Coefficients on one half of the (symmetric) support are standard complex
    Gaussians and the other half holds their conjugates. ``c_0`` depends on
    ``model``:

    ``"centered"``
        ``c_0 = 0``. A real trigonometric polynomial with zero mean takes
        both signs on the torus, so the zero set is never empty.
    ``"anchored"``
        ``c_0`` is a real Gaussian, then shifted so the polynomial vanishes
        at a uniform random point recorded as ``anchor``. Level sets through
        points near an extremum are tiny loops, which makes high-bandwidth
        feature matrices on them numerically rank deficient.
    """
    if model not in CURVE_MODELS:
        raise InvalidArgumentError(f"unknown curve model {model!r}; expected one of {CURVE_MODELS}")
    perm = bandwidth.negation_permutation
    if perm is None:
        raise InvalidArgumentError("random_real_polynomial needs a symmetric bandwidth")
    origin = np.all(bandwidth.indices == 0, axis=1)
    if not origin.any():
        raise InvalidArgumentError("bandwidth must contain the zero frequency")
    if len(bandwidth) == 1:
        raise InvalidArgumentError("a constant polynomial has no zero set")
    rng = np.random.default_rng(seed)
    upper = _upper_half(bandwidth.indices)
    m = int(upper.sum())
    c = np.zeros(len(bandwidth), dtype=complex)
    c[upper] = (rng.standard_normal(m) + 1j * rng.standard_normal(m)) / np.sqrt(2)
    c[perm[upper]] = c[upper].conj()
    if model == "centered":
        return TrigPolynomial(bandwidth, c, real_valued=True, seed=seed)
    c[origin] = rng.standard_normal()
    x0 = rng.random(bandwidth.dim)
    c[origin] -= (c @ feature_map(bandwidth, x0)).real
    return TrigPolynomial(bandwidth, c, real_valued=True, seed=seed, anchor=x0)


def random_polynomial(bandwidth: FrequencySet, seed: int) -> TrigPolynomial:
    """Polynomial with i.i.d. standard complex Gaussian coefficients."""
    rng = np.random.default_rng(seed)
    n = len(bandwidth)
    c = (rng.standard_normal(n) + 1j * rng.standard_normal(n)) / np.sqrt(2)
    return TrigPolynomial(bandwidth, c, seed=seed)
