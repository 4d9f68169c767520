# %% [markdown]
# # Why plain separation is not enough
#
# Under a tolerance, "a is similar to b" is not transitive.  Two spec states
# can be told apart by an input, yet an implementation state can sit between
# them and look like both.

# %%
from fsmconf import fixtures
from fsmconf.separability import ball, compute_witnesses, separates, strongly_separates
from fsmconf.similarity import ThermostatMetric

spec, impl0 = fixtures.specification(), fixtures.implementation0()
t = ThermostatMetric(0.5)

# %%
# r gives 19 vs 20: dissimilar, but 19.5 is within 0.5 of both
print("r separates      ", separates(spec, "Off", "On", ("r",), t))
print("r strongly       ", strongly_separates(spec, "Off", "On", ("r",), t))
print("s strongly       ", strongly_separates(spec, "Off", "On", ("s",), t))

# %% [markdown]
# The ball around a spec state collects implementation states that a
# sequence cannot tell apart from it.  With `r` the balls overlap.

# %%
for w in (("r",), ("s",)):
    print(w, {s: sorted(ball(spec, impl0, s, [w], t)) for s in spec.states})

# %% [markdown]
# Shortest witnesses, strong and plain, at two thresholds.

# %%
for thr in (0.5, 0.1):
    cfg = ThermostatMetric(thr)
    print(f"t={thr}", "strong:", compute_witnesses(spec, cfg).lines(),
          "plain:", compute_witnesses(spec, cfg, strong=False).lines())
