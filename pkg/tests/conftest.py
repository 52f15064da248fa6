import itertools

import numpy as np
import pytest

from farofangs import FeatureAllocation

# Two distinct allocations that share one adjacency matrix.
Z1 = np.array(
    [[0, 0, 0], [1, 0, 1], [0, 1, 1], [1, 0, 1], [1, 1, 0], [1, 1, 0]], dtype=np.uint8
)
Z2 = np.array(
    [[0, 0, 0, 0], [0, 0, 1, 1], [0, 1, 1, 0], [0, 0, 1, 1], [1, 0, 1, 0], [1, 0, 1, 0]],
    dtype=np.uint8,
)
# brute force over all 4! alignments of the padded pair, see oracle_faro
TWIN_LOSS = 4.0

ASSIGN_COST = np.array([[14, 3, 5, 8], [5, 12, 2, 6], [4, 7, 7, 10], [9, 2, 5, 2]], dtype=float)


def oracle_hamming(x, y, a):
    """Cell-by-cell loop, no vectorization."""
    x = np.asarray(x)
    y = np.asarray(y)
    b = 2.0 - a
    total = 0.0
    for i in range(x.shape[0]):
        for j in range(x.shape[1]):
            if x[i, j] == 1 and y[i, j] == 0:
                total += a
            elif x[i, j] == 0 and y[i, j] == 1:
                total += b
    return total


def pad(z, k):
    z = np.asarray(z)
    out = np.zeros((z.shape[0], k), dtype=np.uint8)
    out[:, : z.shape[1]] = z
    return out


def oracle_faro(x, y, a):
    """Minimum over every explicit column permutation of the padded second matrix."""
    x = np.asarray(x)
    y = np.asarray(y)
    k = max(x.shape[1], y.shape[1])
    xp, yp = pad(x, k), pad(y, k)
    return min(oracle_hamming(xp, yp[:, list(p)], a) for p in itertools.permutations(range(k)))


def oracle_lap(c):
    c = np.asarray(c)
    k = c.shape[0]
    return min(sum(c[i, p[i]] for i in range(k)) for p in itertools.permutations(range(k)))


def random_binary(rng, n, k, density=0.5):
    return (rng.random((n, k)) < density).astype(np.uint8)


@pytest.fixture
def z1():
    return FeatureAllocation(Z1)


@pytest.fixture
def z2():
    return FeatureAllocation(Z2)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
