# %% [markdown]
# # Generating suites, and one that misses a fault
#
# Suites are built from a state cover, every middle segment up to length
# m - n + 1, and the identifiers of the reached state.

# %%
from fsmconf import fixtures
from fsmconf.product import conforms, diff_sets
from fsmconf.separability import compute_witnesses, identification_sets, state_cover
from fsmconf.similarity import ThermostatMetric
from fsmconf.testgen import format_suite, hsi_generate, run_suite

spec, impl1 = fixtures.specification(), fixtures.implementation1()
t = ThermostatMetric(0.5)

strong = hsi_generate(spec, 2, t)
print(format_suite(strong))

# %%
# identifiers chosen only to separate, not strongly
classical = hsi_generate(spec, 2, t, mode="classical")
print(format_suite(classical))

# %%
for name, suite in (("strong", strong), ("classical", classical)):
    verdict = run_suite(impl1, suite, t)
    print(name, "passes" if verdict.passed else "catches the fault")
print("ground truth:", conforms(spec, impl1, t))

# %% [markdown]
# One step past the cover, outputs alone show no difference (D is empty).
# Appending the strong identifier `s` exposes it.

# %%
ids = identification_sets(compute_witnesses(spec, t), spec)
print(diff_sets(spec, impl1, state_cover(spec), ids, 1, t))
