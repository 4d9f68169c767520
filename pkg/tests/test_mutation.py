import random

import pytest

from fsmconf.fsm import Real, validate
from fsmconf.mutation import (MutationParams, classify, completeness_experiment,
                              default_magnitudes, exhaustive_transfer_mutants, generate_mutants,
                              perturb_output, redirect, split_state, swap_symbol)
from fsmconf.product import conforms
from fsmconf.randomfsm import random_separable_spec
from fsmconf.similarity import ThermostatMetric
from fsmconf.testgen import hsi_generate, run_suite


def test_perturb_output(spec):
    mu = perturb_output(spec, "Off", "r", 0.5)
    assert mu.output("Off", "r") == Real(19.5)
    diffs = [(s, x) for s in spec.states for x in spec.inputs if mu.step(s, x) != spec.step(s, x)]
    assert diffs == [("Off", "r")]


def test_transfer_fault_matches_impl1_structure(spec, impl1):
    mu = redirect(spec, "On", "s", "On")
    assert mu.delta("On", "s") == "On"
    assert impl1.delta("On1", "s") == "On1"


def test_swap_symbol(spec):
    assert swap_symbol(spec, "Off", "s", "off").output("Off", "s").name == "off"
    with pytest.raises(ValueError):
        swap_symbol(spec, "Off", "r", "off")


def test_split_state(spec):
    mu = split_state(spec, "Off", ("On", "s"), "r", output=Real(30.0))
    assert mu.n == 3 and validate(mu) == []
    copy = mu.delta("On", "s")
    assert copy != "Off" and mu.output(copy, "r") == Real(30.0)
    assert mu.step(copy, "s") == spec.step("Off", "s")


def test_generation_is_deterministic(spec):
    p = MutationParams(seed=7, count=50, extra_states=1, max_edits=3)
    a = list(generate_mutants(spec, p, 0.5))
    b = list(generate_mutants(spec, p, 0.5))
    assert a == b and len(a) == 50
    assert all(validate(m) == [] and m.n <= spec.n + 1 for m in a)
    assert any(m.n == spec.n + 1 for m in a)
    assert list(generate_mutants(spec, MutationParams(seed=8, count=50, extra_states=1), 0.5)) != a


def test_default_magnitudes():
    assert default_magnitudes(0.5) == (0.25, 0.5, 1.0, 2.0)


def test_params_validation():
    with pytest.raises(ValueError):
        MutationParams(operators=("nope",))
    with pytest.raises(ValueError):
        MutationParams(magnitudes=(0.0,))
    with pytest.raises(ValueError):
        MutationParams(extra_states=-1)


def test_classification():
    assert classify(True, True, 2, 2) == "true-pass"
    assert classify(False, False, 2, 2) == "true-fail"
    assert classify(False, True, 2, 2) == "completeness-violation"
    assert classify(True, False, 2, 2) == "sound-kill"
    assert classify(False, True, 3, 2) == "beyond-bound-pass"


def test_empty_experiment(spec, t05):
    report = completeness_experiment(spec, 2, t05, MutationParams(count=5, operators=()))
    assert report.results == [] and report.theorem_holds


def test_strong_experiment_on_thermostat(spec, t05):
    report = completeness_experiment(spec, 2, t05, MutationParams(seed=1, count=500, max_edits=3))
    assert len(report.results) == 500
    assert report.completeness_violations == 0
    assert report.sound_kills == 0
    assert report.lower_bound_violations == 0
    assert report.cover_violations == 0
    assert report.count("true-fail") > 0 and report.count("true-pass") > 0


def test_classical_experiment_misses_faults(spec, t05):
    report = completeness_experiment(spec, 2, t05, MutationParams(seed=1, count=500, max_edits=3),
                                     mode="classical")
    assert report.completeness_violations >= 1
    assert report.sound_kills == 0


def test_impl1_is_a_classical_escape(spec, impl1, t05):
    report = completeness_experiment(spec, 2, t05, MutationParams(), mode="classical",
                                     mutants=[impl1])
    assert report.results[0].classification == "completeness-violation"
    strong = completeness_experiment(spec, 2, t05, MutationParams(), mutants=[impl1])
    r = strong.results[0]
    assert r.classification == "true-fail"
    assert r.preconditions and r.smallest_level == 1 and r.lower_bound_ok


def test_exhaustive_transfer_faults(spec, t05):
    for k in (0, 1):
        suite = hsi_generate(spec, spec.n + k, t05)
        count = 0
        for mu in exhaustive_transfer_mutants(spec, k):
            count += 1
            if not conforms(spec, mu, t05).conforms:
                assert not run_suite(mu, suite, t05).passed, mu
        assert count == spec.n ** k * (spec.n + k) ** ((spec.n + k) * len(spec.inputs))


def test_exhaustive_limit(spec):
    with pytest.raises(ValueError, match="limit"):
        next(exhaustive_transfer_mutants(spec, 3, limit=1000))


def test_parallel_matches_sequential(spec, t05):
    p = MutationParams(seed=4, count=60, extra_states=1, max_edits=2)
    seq = completeness_experiment(spec, 3, t05, p)
    par = completeness_experiment(spec, 3, t05, p, jobs=2)
    assert seq.tsv() == par.tsv()


def test_random_specs_lower_bound():
    rng = random.Random(99)
    cfg = ThermostatMetric(0.5)
    grid = [i / 2 for i in range(11)]
    for i in range(5):
        spec = random_separable_spec(rng, cfg, 3, 2, grid=grid)
        p = MutationParams(seed=i, count=150, extra_states=1, max_edits=3)
        report = completeness_experiment(spec, spec.n + 1, cfg, p)
        assert report.completeness_violations == 0
        assert report.sound_kills == 0
        assert report.lower_bound_violations == 0
        assert report.cover_violations == 0
