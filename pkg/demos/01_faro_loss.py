"""
Comparing feature allocations
=============================

Feature allocations have no natural column order, so two matrices are
compared after the best column alignment. Zero columns are added to the
narrower one first.
"""

# %%
import numpy as np

from farofangs import faro_loss, gen_hamming, left_order, permute_columns

x = np.array([[1, 0, 1], [1, 1, 0], [0, 1, 0], [0, 0, 1]])
y = permute_columns(x, [2, 0, 1])
print("raw Hamming:", gen_hamming(x, y))
print("FARO loss:  ", faro_loss(x, y).loss)
print("same canonical form:", left_order(x) == left_order(y))

# %%
# Asymmetric penalties. ``a`` charges a one in the estimate where the sample
# has a zero and ``b = 2 - a`` charges the reverse.
extra = np.array(x)
extra[3, 1] = 1
for a in (0.5, 1.0, 1.5):
    print(f"a={a}: loss(extra, x)={faro_loss(extra, x, a).loss}  loss(x, extra)={faro_loss(x, extra, a).loss}")

# %%
# Widths need not match; the alignment is reported 0-based on the padded width.
wide = np.hstack([x, np.array([[0], [0], [1], [1]])])
res = faro_loss(x, wide)
print(res.loss, res.k_aligned, res.alignment.perm)
