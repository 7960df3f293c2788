"""Random points on, and dense traces of, the zero set of a real polynomial.

Points are drawn by slicing: fix every coordinate but one at random, locate
the sign changes of the resulting one-dimensional trigonometric polynomial
on a uniform grid, pick one bracket at random and bisect it. Each requested
point uses its own generator spawned from the seed, so results do not
depend on evaluation order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import InvalidArgumentError, SamplingError
from .trigpoly import TWO_PI_J, TrigPolynomial

DEFAULT_TOL = 1e-12
DEFAULT_MAX_ATTEMPTS = 1000
SLICE_NODES = 256


@dataclass(frozen=True, eq=False)
class SampleSet:
    """Ordered points in ``[0, 1)^n`` with component tags and residuals."""

    points: np.ndarray
    components: np.ndarray | None = None
    residuals: np.ndarray | None = None
    dim: int = field(init=False)

    def __post_init__(self):
        pts = np.array(self.points, dtype=float)
        if pts.ndim == 1:
            pts = pts.reshape(-1, 1)
        if pts.ndim != 2 or pts.shape[1] < 1:
            raise InvalidArgumentError(f"points must be an (N, dim) array, got shape {pts.shape}")
        if pts.size and (np.any(pts < 0.0) or np.any(pts >= 1.0)):
            raise InvalidArgumentError("sample coordinates must lie in [0, 1)")
        n = pts.shape[0]
        comps = np.zeros(n, dtype=np.int64) if self.components is None else np.array(self.components, dtype=np.int64)
        res = np.full(n, np.nan) if self.residuals is None else np.array(self.residuals, dtype=float)
        if comps.shape != (n,) or res.shape != (n,):
            raise InvalidArgumentError("components and residuals need one entry per point")
        for arr in (pts, comps, res):
            arr.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "residuals", res)
        object.__setattr__(self, "dim", pts.shape[1])

    def __len__(self) -> int:
        return self.points.shape[0]

    def take(self, rows) -> SampleSet:
        rows = np.asarray(rows, dtype=np.intp)
        return SampleSet(self.points[rows], self.components[rows], self.residuals[rows])

    def shifted(self, t) -> SampleSet:
        """Translate every point by ``t`` on the torus; residuals are dropped."""
        return SampleSet(_wrap(self.points + np.asarray(t, dtype=float)), self.components)

    @staticmethod
    def concatenate(sets: list[SampleSet]) -> SampleSet:
        if not sets:
            raise InvalidArgumentError("nothing to concatenate")
        if len({s.dim for s in sets}) != 1:
            raise InvalidArgumentError("sample sets have different dimensions")
        return SampleSet(
            np.concatenate([s.points for s in sets]),
            np.concatenate([s.components for s in sets]),
            np.concatenate([s.residuals for s in sets]),
        )


def _wrap(x: np.ndarray) -> np.ndarray:
    x = np.mod(x, 1.0)
    # fmod of a tiny negative number rounds up to exactly 1.0
    return np.where(x >= 1.0, 0.0, x)


def _slice_coefficients(p: TrigPolynomial, axis: int, x: np.ndarray):
    """Restrict ``p`` to the line through ``x`` along ``axis``.

    Returns the frequencies ``m`` and coefficients ``b_m`` of the
    one-dimensional polynomial ``t -> p(x with x[axis] = t)``.
    """
    K = p.support.indices
    rest = np.delete(K, axis, axis=1) @ np.delete(x, axis)
    weighted = p.coeffs * np.exp(TWO_PI_J * rest)
    freqs, inverse = np.unique(K[:, axis], return_inverse=True)
    b = np.zeros(freqs.shape[0], dtype=complex)
    np.add.at(b, inverse, weighted)
    return freqs, b


def _eval_1d(freqs: np.ndarray, b: np.ndarray, t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    return (np.exp(TWO_PI_J * np.multiply.outer(t, freqs)) @ b).real


def _bisect(freqs, b, lo: float, hi: float, f_lo: float, tol: float) -> float:
    mid = 0.5 * (lo + hi)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        f_mid = float(_eval_1d(freqs, b, mid))
        if abs(f_mid) <= 0.5 * tol or not lo < mid < hi:
            break
        if (f_mid < 0) == (f_lo < 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return mid


def _check_real(p: TrigPolynomial) -> None:
    if not p.real_valued:
        raise InvalidArgumentError("the zero-set sampler needs a real-valued polynomial")


def _draw_point(p: TrigPolynomial, rng: np.random.Generator, tol: float, max_attempts: int,
                nodes: int) -> tuple[np.ndarray, float]:
    grid = np.arange(nodes + 1) / nodes
    for _ in range(max_attempts):
        axis = int(rng.integers(p.dim))
        x = rng.random(p.dim)
        freqs, b = _slice_coefficients(p, axis, x)
        vals = _eval_1d(freqs, b, grid)
        exact = np.flatnonzero(vals[:-1] == 0.0)
        brackets = np.flatnonzero(vals[:-1] * vals[1:] < 0.0)
        candidates = np.concatenate([exact, brackets])
        if candidates.size == 0:
            continue
        j = int(candidates[rng.integers(candidates.size)])
        if vals[j] == 0.0:
            t = grid[j]
        else:
            t = _bisect(freqs, b, grid[j], grid[j + 1], vals[j], tol)
        x[axis] = t
        x = _wrap(x)
        residual = abs(p(x))
        if residual <= tol:
            return x, residual
    raise SamplingError(f"no root found in {max_attempts} slices", attempts=max_attempts)


def sample_zero_set(p: TrigPolynomial, count: int, tol: float = DEFAULT_TOL, seed: int = 0,
                    max_attempts: int = DEFAULT_MAX_ATTEMPTS, component: int = 0,
                    nodes: int = SLICE_NODES) -> SampleSet:
    """Draw ``count`` independent points with ``|p(x)| <= tol``.

    Parameters
    ----------
    p : TrigPolynomial
        Real-valued polynomial whose zero set is sampled.
    count : int
        Number of points.
    tol : float
        Residual bound certified for every returned point.
    seed : int
        Root seed; point ``i`` uses the ``i``-th spawned child stream.
    max_attempts : int
        Slices tried per point before giving up.
    component : int
        Tag stored with every point.

    Raises
    ------
    SamplingError
        If some point exhausts ``max_attempts`` slices.
    """
    _check_real(p)
    if count < 1:
        raise InvalidArgumentError("count must be at least 1")
    if not tol > 0:
        raise InvalidArgumentError("tol must be positive")
    streams = np.random.SeedSequence(seed).spawn(count)
    pts = np.empty((count, p.dim))
    res = np.empty(count)
    for i, ss in enumerate(streams):
        pts[i], res[i] = _draw_point(p, np.random.default_rng(ss), tol, max_attempts, nodes)
    return SampleSet(pts, np.full(count, component), res)


def trace_zero_set(p: TrigPolynomial, grid_resolution: int, refine: bool = False) -> SampleSet:
    """Sign-change crossings of ``p`` on the edges of a periodic uniform grid.

    Every grid edge whose endpoint values differ in sign contributes the
    linear-interpolation crossing; nodes where ``p`` is exactly zero are
    emitted as-is. With ``refine`` the crossing is instead bisected along
    its edge to rounding level.
    """
    _check_real(p)
    if p.dim not in (2, 3):
        raise InvalidArgumentError(f"tracing supports dim 2 or 3, got {p.dim}")
    if grid_resolution < 2:
        raise InvalidArgumentError("grid_resolution must be at least 2")
    R = int(grid_resolution)
    axes = np.meshgrid(*([np.arange(R) / R] * p.dim), indexing="ij")
    nodes = np.stack(axes, axis=-1).reshape(-1, p.dim)
    V = p(nodes).real.reshape((R,) * p.dim)

    found = [nodes[(V == 0.0).ravel()]]
    for axis in range(p.dim):
        V_next = np.roll(V, -1, axis=axis)
        mask = (V * V_next < 0.0).ravel()
        v0, v1 = V.ravel()[mask], V_next.ravel()[mask]
        base = nodes[mask]
        if refine:
            frac = _refine_edges(p, base, axis, v0, R)
        else:
            frac = v0 / (v0 - v1)
        pts = base.copy()
        pts[:, axis] += frac / R
        found.append(pts)
    pts = _wrap(np.concatenate(found))
    return SampleSet(pts, residuals=np.abs(p(pts)) if len(pts) else None)


def _refine_edges(p: TrigPolynomial, base: np.ndarray, axis: int, v0: np.ndarray, R: int) -> np.ndarray:
    lo = np.zeros(base.shape[0])
    hi = np.ones(base.shape[0])
    sign0 = np.sign(v0)
    probe = base.copy()
    for _ in range(52):
        mid = 0.5 * (lo + hi)
        probe[:, axis] = base[:, axis] + mid / R
        same = np.sign(p(probe).real) == sign0
        lo = np.where(same, mid, lo)
        hi = np.where(same, hi, mid)
    return 0.5 * (lo + hi)
