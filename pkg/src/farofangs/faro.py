"""FARO loss: minimum generalized Hamming distance over column alignments."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .hamming import LossParams, Packed, as_params, cost_matrix, packed_samples
from .lap import Assignment, solve_lap
from .matrix import DimensionError, as_allocation, as_sample_set, augment


@dataclass(frozen=True)
class FaroResult:
    """Loss plus the witnessing alignment.

    Column ``i`` of the (augmented) first matrix is paired with column
    ``alignment.perm[i]`` of the (augmented) second matrix.
    """

    loss: float
    alignment: Assignment
    k_aligned: int


def faro_loss(x, y, p: "LossParams | float | None" = None) -> FaroResult:
    """FARO loss of estimate ``x`` against sample ``y``.

    The narrower matrix is padded with zero columns to the common width
    before the optimal alignment is found, so widths may differ (including
    zero columns on either side).
    """
    p = as_params(p)
    x = as_allocation(x)
    y = as_allocation(y)
    if x.n != y.n:
        raise DimensionError(f"row mismatch: {x.n} vs {y.n}")
    k = max(x.k, y.k)
    c = cost_matrix(augment(x, k), augment(y, k), p)
    alignment = solve_lap(c)
    return FaroResult(alignment.cost, alignment, k)


def expected_loss(candidate, samples, p: "LossParams | float | None" = None, *, pad: bool = False) -> float:
    """Monte Carlo expected FARO loss of ``candidate`` over a sample set.

    The candidate takes the estimate slot. Terms are summed in sample order,
    so the value is reproducible bit for bit. With ``pad=True`` every sample
    is first padded to the set's maximum width instead of being augmented
    pairwise; the value is the same up to rounding.
    """
    p = as_params(p)
    candidate = as_allocation(candidate)
    samples = as_sample_set(samples)
    if candidate.n != samples.n:
        raise DimensionError(f"row mismatch: candidate {candidate.n} vs samples {samples.n}")
    cp = Packed(candidate)
    sw, sm, sk = packed_samples(samples, pad=pad)
    total = _kernels.loss_sum(cp.words, cp.ones, candidate.k, sw, sm, sk, p.a, p.b)
    return total / len(samples)


def loss_to_each(candidate, samples, p: "LossParams | float | None" = None) -> np.ndarray:
    """Per-sample FARO losses (the terms averaged by :func:`expected_loss`)."""
    p = as_params(p)
    candidate = as_allocation(candidate)
    return np.array([faro_loss(candidate, s, p).loss for s in as_sample_set(samples)])
