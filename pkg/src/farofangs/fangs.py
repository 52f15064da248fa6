"""FANGS: baseline-aligned initialization followed by greedy sweetening.

Randomness is drawn from index-derived substreams of one seed: stream
``(0,)`` picks the baselines and stream ``(1, j)`` drives sweetening chain
``j``. Every worker owns its stream, so results do not depend on the number
of threads.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from . import _kernels
from .faro import expected_loss
from .hamming import LossParams, as_params, cost_matrix, packed_samples
from .lap import solve_lap
from .matrix import (
    DimensionError,
    FeatureAllocation,
    as_allocation,
    as_sample_set,
    augment,
    strip_zero_columns,
)


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SearchConfig:
    n_init: int = 16
    n_sweet: int = 4
    n_iter: int = 1000
    a: float = 1.0
    seed: int = 0
    threads: int = 0  # 0 picks os.cpu_count()

    def __post_init__(self):
        if self.n_init < 1:
            raise ConfigError(f"n_init must be at least 1, got {self.n_init}")
        if not 1 <= self.n_sweet <= self.n_init:
            raise ConfigError(f"n_sweet must lie in [1, n_init={self.n_init}], got {self.n_sweet}")
        if self.n_iter < 0:
            raise ConfigError(f"n_iter must be nonnegative, got {self.n_iter}")
        if not 0.0 < self.a < 2.0:
            raise ConfigError(f"a must lie in (0, 2), got {self.a}")
        if self.threads < 0:
            raise ConfigError(f"threads must be nonnegative, got {self.threads}")

    @property
    def params(self) -> LossParams:
        return LossParams(self.a)

    def workers(self) -> int:
        return self.threads or os.cpu_count() or 1


@dataclass
class SearchResult:
    """Outcome of :func:`fangs`.

    ``trace[j]`` lists ``(iteration, expected_loss)`` at every accepted flip
    of sweetening chain ``j``; ``baseline_losses`` are the expected losses of
    the ``n_init`` initial estimates in baseline draw order.
    """

    estimate: FeatureAllocation
    expected_loss: float
    seconds: float
    trace: list[list[tuple[int, float]]]
    n_accepted_flips: int
    baseline_losses: list[float]
    baseline_indices: list[int] = field(default_factory=list)
    initial_estimates: list[FeatureAllocation] = field(default_factory=list)
    advanced: list[int] = field(default_factory=list)
    best_chain: int = 0


def substream(seed: int, *key: int) -> np.random.Generator:
    """Independent generator for a given index path under ``seed``."""
    ss = np.random.SeedSequence(int(seed) & 0xFFFFFFFFFFFFFFFF, spawn_key=key)
    return np.random.default_rng(ss)


def _map(fn, items, workers: int):
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(i) for i in items]
    with ThreadPoolExecutor(max_workers=min(workers, len(items))) as pool:
        return list(pool.map(fn, items))


def threshold_counts(counts: NDArray, total: int, a: float) -> NDArray[np.uint8]:
    """1 where the proportion of ones strictly exceeds ``a / 2``."""
    return (counts / total > a / 2).astype(np.uint8)


def align_to_baseline(baseline, samples, p: "LossParams | float | None" = None) -> list[FeatureAllocation]:
    """Permute each sample's columns to best match ``baseline``.

    Everything is padded to a common width first. The sample sits in the
    estimate slot of the cost, the baseline in the sample slot.
    """
    p = as_params(p)
    baseline = as_allocation(baseline)
    samples = as_sample_set(samples)
    if baseline.n != samples.n:
        raise DimensionError(f"row mismatch: baseline {baseline.n} vs samples {samples.n}")
    k = max(samples.k_max, baseline.k)
    target = augment(baseline, k)
    out = []
    for s in samples:
        s = augment(s, k)
        inv = solve_lap(cost_matrix(s, target, p)).inverse()
        out.append(FeatureAllocation(s.data[:, list(inv)], n=s.n))
    return out


def mean_and_threshold(aligned, a: float) -> FeatureAllocation:
    """Cellwise proportion of ones, thresholded at ``a / 2``, zero columns removed."""
    aligned = [as_allocation(z) for z in aligned]
    if not aligned:
        raise ValueError("need at least one aligned matrix")
    shape = aligned[0].shape
    if any(z.shape != shape for z in aligned):
        raise DimensionError("aligned matrices must share one shape")
    counts = np.sum([z.data.astype(np.int64) for z in aligned], axis=0)
    return strip_zero_columns(FeatureAllocation(threshold_counts(counts, len(aligned), a), n=shape[0]))


def sweeten(candidate, samples, p: "LossParams | float | None", n_iter: int, rng: np.random.Generator):
    """Greedy single-cell flip search starting at ``candidate``.

    Proposals are uniform over the candidate's current ``n x k`` cells and a
    flip is kept only when it strictly lowers the expected FARO loss. Columns
    are never added; columns emptied along the way stay until the caller
    strips them. Returns ``(matrix, trace)`` with ``trace`` the accepted
    ``(iteration, expected_loss)`` pairs.
    """
    p = as_params(p)
    candidate = as_allocation(candidate)
    samples = as_sample_set(samples)
    if candidate.n != samples.n:
        raise DimensionError(f"row mismatch: candidate {candidate.n} vs samples {samples.n}")
    sw, sm, sk = packed_samples(samples)
    z, trace, _ = _sweeten_packed(candidate, sw, sm, sk, len(samples), p, n_iter, rng)
    return z, trace


def _sweeten_packed(candidate, sw, sm, sk, nb, p, n_iter, rng):
    n, k = candidate.shape
    cells = rng.integers(0, n * k, size=n_iter) if k and n_iter else np.zeros(0, np.int64)
    z = np.array(candidate.data, dtype=np.uint8)
    it = np.empty(len(cells), np.int64)
    loss = np.empty(len(cells), np.float64)
    final, accepted = _kernels.sweeten_chain(z, sw, sm, sk, p.a, p.b, cells.astype(np.int64), it, loss)
    trace = [(int(i), float(v) / nb) for i, v in zip(it[:accepted], loss[:accepted])]
    return FeatureAllocation(z), trace, final


def fangs(samples, cfg: SearchConfig | None = None) -> SearchResult:
    """Search for the feature allocation minimizing expected FARO loss."""
    cfg = cfg or SearchConfig()
    start = time.perf_counter()
    samples = as_sample_set(samples)
    nb = len(samples)
    if cfg.n_init > nb:
        raise ConfigError(f"n_init={cfg.n_init} exceeds the number of samples B={nb}")
    p = cfg.params
    workers = cfg.workers()

    kmax = samples.k_max
    dense = samples.stacked(kmax)
    sw, sm, sk = packed_samples(samples)

    # initialization: align everything to each baseline, average, threshold
    picks = substream(cfg.seed, 0).choice(nb, size=cfg.n_init, replace=False)

    def initial(idx: int):
        counts = _kernels.align_counts(sw[idx], sm[idx], kmax, sw, sm, dense, p.a, p.b)
        z = strip_zero_columns(FeatureAllocation(threshold_counts(counts, nb, p.a), n=samples.n))
        return z, expected_loss(z, samples, p)

    inits = _map(initial, picks.tolist(), workers)
    init_losses = [loss for _, loss in inits]
    advanced = sorted(range(cfg.n_init), key=lambda i: (init_losses[i], i))[: cfg.n_sweet]

    def chain(j: int):
        rng = substream(cfg.seed, 1, j)
        return _sweeten_packed(inits[advanced[j]][0], sw, sm, sk, nb, p, cfg.n_iter, rng)

    chains = _map(chain, range(cfg.n_sweet), workers)
    best = min(range(cfg.n_sweet), key=lambda j: (chains[j][2], j))
    estimate = strip_zero_columns(chains[best][0])
    return SearchResult(
        estimate=estimate,
        expected_loss=expected_loss(estimate, samples, p),
        seconds=time.perf_counter() - start,
        trace=[c[1] for c in chains],
        n_accepted_flips=sum(len(c[1]) for c in chains),
        baseline_losses=init_losses,
        baseline_indices=picks.tolist(),
        initial_estimates=[z for z, _ in inits],
        advanced=advanced,
        best_chain=best,
    )
