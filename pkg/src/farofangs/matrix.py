"""Binary feature-allocation matrices and their canonical forms."""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray


class DimensionError(ValueError):
    """Raised when allocations with incompatible shapes are combined."""


class FeatureAllocation:
    """An ``n x k`` binary matrix: rows are items, columns are features.

    The backing array is a read-only ``uint8`` copy, so instances can be
    shared freely. ``k == 0`` is the empty allocation.

    >>> z = FeatureAllocation([[1, 0], [0, 1]])
    >>> z.n, z.k
    (2, 2)
    """

    __slots__ = ("_data",)

    def __init__(self, data: ArrayLike, n: int | None = None):
        arr = np.asarray(data)
        if arr.size == 0 and arr.ndim < 2:
            if n is None:
                raise DimensionError("an empty allocation needs an explicit n")
            arr = np.zeros((n, 0), dtype=np.uint8)
        if arr.ndim != 2:
            raise DimensionError(f"expected a 2-d matrix, got shape {arr.shape}")
        if arr.shape[0] < 1:
            raise DimensionError("an allocation needs at least one item (row)")
        if n is not None and arr.shape[0] != n:
            raise DimensionError(f"expected {n} rows, got {arr.shape[0]}")
        if arr.size and not np.all((arr == 0) | (arr == 1)):
            raise ValueError("allocation entries must be 0 or 1")
        arr = np.array(arr, dtype=np.uint8, order="C")
        arr.flags.writeable = False
        self._data = arr

    @classmethod
    def empty(cls, n: int) -> "FeatureAllocation":
        return cls(np.zeros((n, 0), dtype=np.uint8))

    @property
    def data(self) -> NDArray[np.uint8]:
        return self._data

    @property
    def n(self) -> int:
        return self._data.shape[0]

    @property
    def k(self) -> int:
        return self._data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._data.shape

    def ones(self) -> int:
        return int(self._data.sum())

    def __array__(self, dtype=None, copy=None):
        return self._data if dtype is None else self._data.astype(dtype)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FeatureAllocation):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._data, other._data))

    def __hash__(self) -> int:
        return hash((self.shape, self._data.tobytes()))

    def __repr__(self) -> str:
        return f"FeatureAllocation(n={self.n}, k={self.k}, ones={self.ones()})"

    def tolist(self) -> list[list[int]]:
        return self._data.tolist()


def as_allocation(z: "FeatureAllocation | ArrayLike") -> FeatureAllocation:
    return z if isinstance(z, FeatureAllocation) else FeatureAllocation(z)


class SampleSet:
    """An ordered collection of allocations over the same ``n`` items."""

    def __init__(self, samples: Iterable["FeatureAllocation | ArrayLike"]):
        self.samples: list[FeatureAllocation] = [as_allocation(s) for s in samples]
        if not self.samples:
            raise ValueError("a sample set needs at least one allocation")
        n = self.samples[0].n
        for idx, s in enumerate(self.samples):
            if s.n != n:
                raise DimensionError(
                    f"sample {idx} has {s.n} rows but sample 0 has {n}"
                )
        self.n = n
        self.k_max = max(s.k for s in self.samples)

    def __len__(self) -> int:
        return len(self.samples)

    def __iter__(self):
        return iter(self.samples)

    def __getitem__(self, idx: int) -> FeatureAllocation:
        return self.samples[idx]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SampleSet):
            return NotImplemented
        return self.samples == other.samples

    def __repr__(self) -> str:
        return f"SampleSet(B={len(self)}, n={self.n}, k_max={self.k_max})"

    @property
    def widths(self) -> NDArray[np.int64]:
        return np.array([s.k for s in self.samples], dtype=np.int64)

    def stacked(self, k: int | None = None) -> NDArray[np.uint8]:
        """All samples zero-padded to width ``k`` (default ``k_max``), shape (B, n, k)."""
        k = self.k_max if k is None else k
        if k < self.k_max:
            raise DimensionError(f"cannot pad to {k} columns; k_max is {self.k_max}")
        out = np.zeros((len(self), self.n, k), dtype=np.uint8)
        for b, s in enumerate(self.samples):
            out[b, :, : s.k] = s.data
        return out


def as_sample_set(samples: "SampleSet | Sequence") -> SampleSet:
    return samples if isinstance(samples, SampleSet) else SampleSet(samples)


def column_values(z: FeatureAllocation) -> list[int]:
    """Integer value of each column, reading row 0 as the most significant bit."""
    return [int("".join(map(str, col)), 2) if len(col) else 0 for col in z.data.T.tolist()]


def left_order(z: "FeatureAllocation | ArrayLike") -> FeatureAllocation:
    """Canonical left-ordered form.

    Columns are sorted by descending binary value (row 0 most significant,
    stable for duplicates) and all-zero columns are dropped.
    """
    z = as_allocation(z)
    values = column_values(z)
    keep = [j for j in sorted(range(z.k), key=lambda j: -values[j]) if values[j] > 0]
    return FeatureAllocation(z.data[:, keep], n=z.n)


def strip_zero_columns(z: "FeatureAllocation | ArrayLike") -> FeatureAllocation:
    z = as_allocation(z)
    return FeatureAllocation(z.data[:, z.data.any(axis=0)], n=z.n)


def permute_columns(z: "FeatureAllocation | ArrayLike", perm: Sequence[int]) -> FeatureAllocation:
    """Column ``j`` of the result is column ``perm[j]`` of ``z``."""
    z = as_allocation(z)
    perm = np.asarray(perm, dtype=np.int64)
    if sorted(perm.tolist()) != list(range(z.k)):
        raise ValueError(f"{perm.tolist()} is not a permutation of {z.k} columns")
    return FeatureAllocation(z.data[:, perm], n=z.n)


def augment(z: "FeatureAllocation | ArrayLike", k_target: int) -> FeatureAllocation:
    """Append ``k_target - k`` all-zero columns on the right."""
    z = as_allocation(z)
    if k_target < z.k:
        raise DimensionError(f"cannot augment {z.k} columns down to {k_target}")
    out = np.zeros((z.n, k_target), dtype=np.uint8)
    out[:, : z.k] = z.data
    return FeatureAllocation(out)


def adjacency(z: "FeatureAllocation | ArrayLike") -> NDArray[np.int64]:
    """Item-by-item count of shared features, ``Z Z'``."""
    d = as_allocation(z).data.astype(np.int64)
    return d @ d.T


def same_class(x: "FeatureAllocation | ArrayLike", y: "FeatureAllocation | ArrayLike") -> bool:
    """True when both matrices encode the same feature allocation."""
    return left_order(x) == left_order(y)
