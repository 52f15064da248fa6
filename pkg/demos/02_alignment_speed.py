"""
Exhaustive versus assignment-based alignment
=============================================

Trying every permutation costs ``k!`` evaluations. Casting the alignment
as a linear assignment problem costs ``O(k^3)``.
"""

# %%
import numpy as np

from farofangs import brute_force_lap, cost_matrix, solve_lap
from farofangs.lap import bench_alignment, format_bench

rng = np.random.default_rng(0)
x = rng.integers(0, 2, (50, 6))
y = rng.integers(0, 2, (50, 6))
c = cost_matrix(x, y)
print(c)
print("LAP:       ", solve_lap(c))
print("exhaustive:", brute_force_lap(c))

# %%
# Timings on random 100-row pairs. The ratio column grows roughly like k!/k^3.
print(format_bench(bench_alignment([4, 6, 8, 9], n=100, reps=20)))
