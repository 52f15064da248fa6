"""
Why pairwise similarity is not enough
=====================================

The pairwise similarity matrix ``Z Z'`` counts shared features per pair of
items. Different allocations can share it, so a loss built on it cannot
tell them apart. FARO loss can.
"""

# %%
import numpy as np

from farofangs import adjacency, faro_loss, psm, psm_score

z1 = np.array([[0, 0, 0], [1, 0, 1], [0, 1, 1], [1, 0, 1], [1, 1, 0], [1, 1, 0]])
z2 = np.array([[0, 0, 0, 0], [0, 0, 1, 1], [0, 1, 1, 0], [0, 0, 1, 1], [1, 0, 1, 0], [1, 0, 1, 0]])
print(adjacency(z1))
print("equal adjacency:", np.array_equal(adjacency(z1), adjacency(z2)))

# %%
sim = psm([z1, z2])
print("psm scores:", psm_score(z1, sim), psm_score(z2, sim))
print("FARO loss: ", faro_loss(z1, z2).loss)
