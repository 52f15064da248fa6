"""
How the penalty shapes the estimate
===================================

Cells are switched on when more than ``a / 2`` of the aligned samples have
a one there. Larger ``a`` therefore gives sparser estimates.
"""

# %%
from farofangs import SearchConfig, fangs
from farofangs.synthetic import perturbed_samples, random_truth

truth = random_truth(30, 4, seed=0)
# each sample carries up to six spurious sparse columns
samples = perturbed_samples(truth, 200, 0.08, seed=0, max_extra=6, extra_density=0.3)
print("sample widths:", sorted(set(samples.widths.tolist())))

# %%
print(f"truth: k={truth.k} ones={truth.ones()}")
for a in (0.25, 0.5, 1.0, 1.5, 1.75):
    est = fangs(samples, SearchConfig(a=a, seed=7)).estimate
    print(f"a={a:<5} k={est.k:<3} ones={est.ones()}")
