"""
Random counterexample search
============================

Each trial draws a pair from its own seeded stream, so a search is
reproducible from (seed, trial) alone and does not depend on how many
threads evaluate it. Perturbing the first published pair by 1% keeps the
operator-norm violation; in the Frobenius norm no violation exists for
t in [1/4, 3/4] and the search comes back empty.
"""

import tempfile

from mmv import FROBENIUS, OPERATOR, SearchConfig, save_witness, search_counterexample

# %% Near the first published pair the operator-norm comparison fails quickly.
config = SearchConfig(trials=100, seed=0, style="perturb-example1", norm=OPERATOR, t_grid=(0.15,))
result = search_counterexample(config)
print("found:", result.found, "after", result.trials_used, "trial(s)")
print(result.witness.report.as_line())

with tempfile.TemporaryDirectory() as out:
    for path in save_witness(result, config, out):
        print("wrote", path)

# %% Frobenius norm on random dense pairs: nothing to find.
config = SearchConfig(dim=3, trials=500, seed=1, style="dense", norm=FROBENIUS, t_grid=(0.25, 0.5, 0.75))
result = search_counterexample(config, workers=2)
print("found:", result.found, "after", result.trials_used, "trials")
