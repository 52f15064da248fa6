"""Competing point estimates: the draws method, SIFA, and PSM least squares."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np
from numpy.typing import NDArray

from . import _kernels
from .fangs import _map, threshold_counts
from .hamming import LossParams, as_params, cost_matrix, packed_samples
from .lap import solve_lap
from .matrix import (
    DimensionError,
    FeatureAllocation,
    adjacency,
    as_allocation,
    as_sample_set,
    strip_zero_columns,
)


class DrawsResult(NamedTuple):
    estimate: FeatureAllocation
    expected_loss: float
    index: int


def draws_losses(samples, p: "LossParams | float | None" = None, threads: int = 1) -> NDArray[np.float64]:
    """Expected FARO loss of every sample used as the estimate, B^2 solves."""
    p = as_params(p)
    samples = as_sample_set(samples)
    nb = len(samples)
    sw, sm, sk = packed_samples(samples)
    sums = np.empty(nb, np.float64)
    chunks = max(1, min(threads, nb))
    bounds = np.linspace(0, nb, chunks + 1).astype(int)

    def run(c: int):
        _kernels.loss_sums_many(sw, sm, sk, sw, sm, sk, p.a, p.b, bounds[c], bounds[c + 1], sums)

    _map(run, range(chunks), chunks)
    return sums / nb


def draws_method(samples, p: "LossParams | float | None" = None, threads: int = 1) -> DrawsResult:
    """The sample with the lowest expected loss; ties go to the lowest index."""
    samples = as_sample_set(samples)
    losses = draws_losses(samples, p, threads)
    idx = int(np.argmin(losses))
    return DrawsResult(samples[idx], float(losses[idx]), idx)


def sifa_estimate(samples, p: "LossParams | float | None" = None) -> FeatureAllocation:
    """Sequential alignment, each sample to the previously aligned one, then cellwise mode.

    Alignment uses the LAP solver instead of enumerating permutations; ties in
    the mode resolve to 0.
    """
    p = as_params(p)
    samples = as_sample_set(samples)
    stacked = samples.stacked()
    counts = stacked[0].astype(np.int64)
    prev = FeatureAllocation(stacked[0])
    for b in range(1, len(samples)):
        cur = FeatureAllocation(stacked[b])
        inv = solve_lap(cost_matrix(cur, prev, p)).inverse()
        prev = FeatureAllocation(cur.data[:, list(inv)])
        counts += prev.data
    return strip_zero_columns(FeatureAllocation(threshold_counts(counts, len(samples), 1.0)))


def psm(samples) -> NDArray[np.float64]:
    """Pairwise similarity matrix: mean of ``Z Z'`` over the samples."""
    samples = as_sample_set(samples)
    return np.mean([adjacency(s) for s in samples], axis=0)


def psm_score(candidate, similarity: NDArray) -> float:
    """Sum of squared differences between ``Z Z'`` and the PSM."""
    candidate = as_allocation(candidate)
    similarity = np.asarray(similarity, dtype=np.float64)
    if similarity.shape != (candidate.n, candidate.n):
        raise DimensionError(f"PSM shape {similarity.shape} does not fit n={candidate.n}")
    return float(((adjacency(candidate) - similarity) ** 2).sum())
