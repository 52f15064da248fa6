"""
Point estimates from a sample set
=================================

Perturbed copies of a known allocation stand in for posterior samples.
FANGS is compared with picking the best single sample (draws) and with
the sequential alignment-and-mode estimate (SIFA).
"""

# %%
from farofangs import SearchConfig, draws_method, expected_loss, faro_loss, fangs, sifa_estimate
from farofangs.synthetic import perturbed_samples, random_truth

truth = random_truth(40, 6, seed=1)
samples = perturbed_samples(truth, 200, 0.05, seed=1)
print(samples)

# %%
res = fangs(samples, SearchConfig(seed=1))
draws = draws_method(samples)
sifa = sifa_estimate(samples)

rows = [
    ("fangs", res.estimate, res.expected_loss),
    ("draws", draws.estimate, draws.expected_loss),
    ("sifa", sifa, expected_loss(sifa, samples)),
]
for name, est, loss in rows:
    print(f"{name:6s} expected loss {loss:8.3f}   loss to truth {faro_loss(est, truth).loss:5.1f}   k={est.k}")

# %%
# Here initialization already lands on the optimum, so the chains accept
# nothing. Sweetening the draws estimate instead shows the greedy phase at
# work: only strict improvements are kept.
from farofangs import sweeten
from farofangs.fangs import substream

improved, trace = sweeten(draws.estimate, samples, 1.0, 2000, substream(0, 0))
print(f"start {draws.expected_loss:.3f}")
for it, loss in trace:
    print(f"  iteration {it:4d}: {loss:.3f}")
print("loss to truth after sweetening:", faro_loss(improved, truth).loss)
