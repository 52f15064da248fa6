"""Reproducible synthetic sample sets for tuning and testing."""

from __future__ import annotations

import numpy as np

from .matrix import FeatureAllocation, SampleSet, as_allocation


def random_truth(n: int, k: int, seed: int = 0, density: float = 0.5) -> FeatureAllocation:
    """A random ``n x k`` allocation with distinct, nonempty columns."""
    if k > 2**n - 1:
        raise ValueError(f"{n} items admit at most {2**n - 1} distinct features")
    rng = np.random.default_rng(seed)
    while True:
        z = (rng.random((n, k)) < density).astype(np.uint8)
        if k == 0:
            return FeatureAllocation(z)
        if z.any(axis=0).all() and len(np.unique(z, axis=1).T) == k:
            return FeatureAllocation(z)


def perturbed_samples(
    truth,
    b: int,
    flip_prob: float,
    seed: int = 0,
    *,
    max_extra: int = 0,
    extra_density: float = 0.1,
) -> SampleSet:
    """``b`` copies of ``truth`` with independent entrywise flips.

    ``max_extra > 0`` also appends between 0 and ``max_extra`` (uniform)
    sparse spurious columns to each copy, so sample widths vary.
    """
    truth = as_allocation(truth)
    if not 0.0 <= flip_prob <= 1.0:
        raise ValueError(f"flip_prob must lie in [0, 1], got {flip_prob}")
    if b < 1:
        raise ValueError("need at least one sample")
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(b):
        flips = rng.random(truth.shape) < flip_prob
        z = truth.data ^ flips.astype(np.uint8)
        if max_extra:
            extra = int(rng.integers(0, max_extra + 1))
            cols = (rng.random((truth.n, extra)) < extra_density).astype(np.uint8)
            z = np.hstack([z, cols])
        out.append(FeatureAllocation(z, n=truth.n))
    return SampleSet(out)
