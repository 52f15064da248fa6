"""Generalized Hamming distance and column-versus-column cost matrices.

Direction convention: the first argument is the estimate, the second the
sample (or truth). Penalty ``a`` prices a one in the estimate where the
sample has a zero; ``b = 2 - a`` prices the reverse. With this direction the
cellwise optimal decision for a cell whose posterior proportion of ones is
``p`` is "1 iff p > a/2", because a one costs ``a (1 - p)`` in expectation
and a zero costs ``b p``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from . import _kernels
from .matrix import DimensionError, FeatureAllocation, as_allocation


@dataclass(frozen=True)
class LossParams:
    """Penalty pair with ``a + b = 2``; only ``a`` is stored."""

    a: float = 1.0

    def __post_init__(self):
        a = float(self.a)
        if not (0.0 < a < 2.0):
            raise ValueError(f"penalty a must lie in (0, 2), got {self.a!r}")
        object.__setattr__(self, "a", a)

    @property
    def b(self) -> float:
        return 2.0 - self.a

    def swapped(self) -> "LossParams":
        return LossParams(self.b)


def as_params(p: "LossParams | float | None") -> LossParams:
    if p is None:
        return LossParams()
    return p if isinstance(p, LossParams) else LossParams(p)


def disagreement_counts(x, y) -> tuple[int, int]:
    """(cells with x=1,y=0 ; cells with x=0,y=1) for equal-shape matrices."""
    x = as_allocation(x)
    y = as_allocation(y)
    if x.shape != y.shape:
        raise DimensionError(f"shape mismatch: {x.shape} vs {y.shape}")
    xd = x.data.astype(bool)
    yd = y.data.astype(bool)
    return int(np.count_nonzero(xd & ~yd)), int(np.count_nonzero(~xd & yd))


def gen_hamming(x, y, p: "LossParams | float | None" = None) -> float:
    """Generalized Hamming distance ``a * c10 + b * c01``."""
    p = as_params(p)
    c10, c01 = disagreement_counts(x, y)
    return p.a * c10 + p.b * c01


def cost_matrix(x, y, p: "LossParams | float | None" = None) -> NDArray[np.float64]:
    """Entry (i, j) is the distance between column i of ``x`` and column j of ``y``.

    Both matrices must already share ``n`` and ``k``. Built from column
    ones-counts and pairwise overlaps: ``a (m1_i - o_ij) + b (m2_j - o_ij)``.
    """
    p = as_params(p)
    x = as_allocation(x)
    y = as_allocation(y)
    if x.shape != y.shape:
        raise DimensionError(f"shape mismatch: {x.shape} vs {y.shape}")
    xd = x.data.astype(np.int64)
    yd = y.data.astype(np.int64)
    overlap = xd.T @ yd
    c10 = xd.sum(axis=0)[:, None] - overlap
    c01 = yd.sum(axis=0)[None, :] - overlap
    return p.a * c10 + p.b * c01


class Packed:
    """Column-packed view of an allocation for the compiled kernels."""

    __slots__ = ("words", "ones", "k")

    def __init__(self, z: FeatureAllocation, width: int | None = None):
        width = z.k if width is None else width
        self.k = z.k
        self.words = np.zeros((max(width, 1), _kernels.n_words(z.n)), dtype=np.uint64)
        self.ones = np.zeros(max(width, 1), dtype=np.int64)
        _kernels.pack_columns(z.data, self.words, self.ones)


def packed_samples(samples, width: int | None = None, pad: bool = False):
    """Stacked packed columns of a sample set.

    Returns ``(words, ones, widths)`` with shapes (B, K, W), (B, K), (B,).
    With ``pad=True`` every sample reports width ``K`` (zero columns are real
    columns); otherwise each keeps its own width and is augmented per pair.
    """
    width = samples.k_max if width is None else width
    nb = len(samples)
    words = np.zeros((nb, width, _kernels.n_words(samples.n)), dtype=np.uint64)
    ones = np.zeros((nb, width), dtype=np.int64)
    for b, s in enumerate(samples):
        _kernels.pack_columns(s.data, words[b], ones[b])
    widths = np.full(nb, width, dtype=np.int64) if pad else samples.widths
    return words, ones, widths
