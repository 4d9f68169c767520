# %% [markdown]
# # A thermostat under a tolerance
#
# The specification reports a temperature on `r` and toggles on `s`.
# Two implementations read the sensor half a degree high; the second one
# also forgets to switch back off.

# %%
from fsmconf import apply, conforms, fixtures, serialize_fsm
from fsmconf.fsm import format_outputs
from fsmconf.similarity import ThermostatMetric

spec = fixtures.specification()
impl0 = fixtures.implementation0()
impl1 = fixtures.implementation1()
print(serialize_fsm(spec))

# %% [markdown]
# Readings within half a degree count as the same; symbols must match exactly.

# %%
t = ThermostatMetric(0.5)
for m in (spec, impl0, impl1):
    print(m.name.ljust(16), format_outputs(apply(m, m.initial, ("s", "s", "s"))[1]))

# %%
for impl in (impl0, impl1):
    v = conforms(spec, impl, t)
    print(impl.name, "conforms" if v else f"fails on {'.'.join(v.counterexample)}")

# %% [markdown]
# Shrinking the tolerance to 0.1 makes the 0.5 offset visible right away.

# %%
v = conforms(spec, impl0, ThermostatMetric(0.1))
print(v.counterexample, format_outputs(v.expected), format_outputs(v.observed))
