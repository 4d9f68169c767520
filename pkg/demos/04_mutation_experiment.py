# %% [markdown]
# # Checking completeness on mutants
#
# Random edits to the specification give implementations with at most m states.  An
# m-complete suite must fail every one that does not conform.

# %%
from collections import Counter

from fsmconf import fixtures
from fsmconf.mutation import MutationParams, completeness_experiment
from fsmconf.similarity import ThermostatMetric

spec = fixtures.specification()
t = ThermostatMetric(0.5)
params = MutationParams(seed=1, count=500, extra_states=0, max_edits=3)

# %%
for mode in ("strong", "classical"):
    report = completeness_experiment(spec, 2, t, params, mode=mode)
    print(mode, dict(Counter(r.classification for r in report.results)))
    print(report.summary())

# %% [markdown]
# With m = n the classical suite lets a couple of non-conforming mutants
# through; Implementation1 is one of that kind.  The strong suite misses none.
# Allowing an extra state (m = 3) lengthens the middle segments, and on this
# small spec that happens to hide the gap again.
