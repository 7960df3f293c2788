"""Finite sets of integer frequency vectors.

A :class:`FrequencySet` is the support of a multidimensional trigonometric
polynomial. Indices are kept deduplicated and in lexicographic order; that
order fixes the row order of every feature matrix and the layout of every
coefficient vector in the package.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .exceptions import InvalidArgumentError


class FrequencySet:
    """Immutable, lexicographically ordered set of integer vectors.

    Parameters
    ----------
    indices : array_like of int, shape (m, dim)
        Frequency vectors. Duplicates are removed and rows are sorted.
    dim : int, optional
        Ambient dimension. Required when ``indices`` is empty.
    """

    def __init__(self, indices: Iterable[Sequence[int]] | np.ndarray, dim: int | None = None):
        arr = np.asarray(list(indices) if not isinstance(indices, np.ndarray) else indices)
        if arr.size == 0:
            if dim is None:
                raise InvalidArgumentError("dim is required for an empty FrequencySet")
            arr = np.zeros((0, dim), dtype=np.int64)
        if arr.ndim == 1 and dim == 1:
            arr = arr.reshape(-1, 1)
        if arr.ndim != 2:
            raise InvalidArgumentError(f"indices must be a 2-D array, got shape {arr.shape}")
        if dim is not None and arr.shape[1] != dim:
            raise InvalidArgumentError(f"indices have length {arr.shape[1]}, expected {dim}")
        if arr.shape[1] < 1:
            raise InvalidArgumentError("dim must be a positive integer")
        if arr.size and not np.all(np.equal(np.mod(arr, 1), 0)):
            raise InvalidArgumentError("frequency indices must be integers")
        arr = np.unique(arr.astype(np.int64), axis=0)
        arr.setflags(write=False)
        self._indices = arr
        self._dim = int(arr.shape[1])

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def indices(self) -> np.ndarray:
        """Read-only ``(len(self), dim)`` integer array in canonical order."""
        return self._indices

    def __len__(self) -> int:
        return self._indices.shape[0]

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return (tuple(int(v) for v in row) for row in self._indices)

    def __contains__(self, k) -> bool:
        return tuple(int(v) for v in np.ravel(k)) in self._position

    def __eq__(self, other) -> bool:
        if not isinstance(other, FrequencySet):
            return NotImplemented
        return self._dim == other._dim and np.array_equal(self._indices, other._indices)

    def __hash__(self) -> int:
        return hash((self._dim, self._indices.tobytes()))

    def __repr__(self) -> str:
        return f"FrequencySet(dim={self._dim}, size={len(self)})"

    @cached_property
    def _position(self) -> dict[tuple[int, ...], int]:
        return {k: i for i, k in enumerate(self)}

    def position(self, k) -> int:
        """Row of frequency ``k`` in the canonical order."""
        key = tuple(int(v) for v in np.ravel(k))
        try:
            return self._position[key]
        except KeyError:
            raise InvalidArgumentError(f"frequency {key} is not in the set") from None

    @cached_property
    def negation_permutation(self) -> np.ndarray | None:
        """Permutation ``perm`` with ``indices[perm[i]] == -indices[i]``.

        ``None`` when the set is not symmetric.
        """
        try:
            perm = np.array([self._position[tuple(-v for v in k)] for k in self], dtype=np.intp)
        except KeyError:
            return None
        return perm

    @property
    def symmetric(self) -> bool:
        """True when ``k`` in the set implies ``-k`` in the set."""
        return self.negation_permutation is not None

    def issubset(self, other: FrequencySet) -> bool:
        _check_dims(self, other)
        return all(k in other._position for k in self)

    def max_abs(self) -> int:
        """Largest absolute frequency component, ``max_k ||k||_inf``."""
        return int(np.max(np.abs(self._indices))) if len(self) else 0

    def to_json(self) -> dict:
        return {"dim": self._dim, "indices": self._indices.tolist()}

    @classmethod
    def from_json(cls, obj: dict) -> FrequencySet:
        from .io import frequency_set_from_json

        return frequency_set_from_json(obj)


def _check_dims(a: FrequencySet, b: FrequencySet) -> None:
    if a.dim != b.dim:
        raise InvalidArgumentError(f"dimension mismatch: {a.dim} vs {b.dim}")


def rect(dim: int, extents: Sequence[int]) -> FrequencySet:
    """Centered rectangle ``{k : |k_i| <= (extents[i] - 1) / 2}``.

    A ``3 x 3`` bandwidth is ``rect(2, [3, 3])`` and has nine frequencies.
    """
    extents = [int(e) for e in extents]
    if dim < 1 or len(extents) != dim:
        raise InvalidArgumentError(f"need {dim} extents, got {len(extents)}")
    for e in extents:
        if e < 1 or e % 2 == 0:
            raise InvalidArgumentError(f"extents must be odd and positive, got {e}")
    axes = [np.arange(-(e // 2), e // 2 + 1) for e in extents]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, dim)
    return FrequencySet(grid, dim=dim)


def minkowski_sum(a: FrequencySet, b: FrequencySet) -> FrequencySet:
    """All pairwise sums ``k_a + k_b``; the support of a coefficient convolution."""
    _check_dims(a, b)
    sums = (a.indices[:, None, :] + b.indices[None, :, :]).reshape(-1, a.dim)
    return FrequencySet(sums, dim=a.dim)


def shift_set(gamma: FrequencySet, lam: FrequencySet) -> FrequencySet:
    """Translates ``t`` with ``lam + t`` contained in ``gamma``.

    Raises
    ------
    InvalidArgumentError
        If ``lam`` is empty or not a subset of ``gamma``.
    """
    _check_dims(gamma, lam)
    if len(lam) == 0:
        raise InvalidArgumentError("lambda must be nonempty")
    if not lam.issubset(gamma):
        raise InvalidArgumentError("lambda is not contained in gamma")
    # every admissible t maps lam[0] onto some element of gamma
    candidates = gamma.indices - lam.indices[0]
    members = gamma._position
    shifts = [
        t for t in candidates
        if all(tuple(int(v) for v in row) in members for row in lam.indices + t)
    ]
    return FrequencySet(np.array(shifts).reshape(-1, gamma.dim), dim=gamma.dim)


def parse_extents(text: str) -> list[int]:
    """Parse ``"3,3"`` or ``"3x3"`` into ``[3, 3]``."""
    parts = text.replace("x", ",").replace("X", ",").split(",")
    try:
        return [int(p) for p in parts if p.strip()]
    except ValueError:
        raise InvalidArgumentError(f"cannot parse extents {text!r}") from None
