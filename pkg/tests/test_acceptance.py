"""Acceptance criteria, one test each; a PASS/FAIL line per criterion is printed
in the terminal summary."""
import random
import time
from pathlib import Path

from fsmconf import fixtures
from fsmconf.fsm import Real, Symbol, apply, disjoint_union
from fsmconf.mutation import MutationParams, completeness_experiment
from fsmconf.product import conforms, diff_sets
from fsmconf.randomfsm import random_fsm, random_separable_spec
from fsmconf.separability import (ball, compute_witnesses, identification_sets, separates,
                                  state_cover, strongly_separates)
from fsmconf.similarity import DiscreteMetric, ThermostatMetric
from fsmconf.testgen import format_suite, hsi_generate, run_suite

from oracles import chain_machine, dfs_conforms, first_witness_by_enumeration

GOLDEN = Path(__file__).parent / "golden"
T05, T01 = ThermostatMetric(0.5), ThermostatMetric(0.1)
ON, OFF = Symbol("on"), Symbol("off")
CASES = 1000
GRID = [i / 2 for i in range(13)]


def spec_():
    return fixtures.specification()


def test_ac01_thermostat_golden_suite():
    suite = hsi_generate(spec_(), 2, T05)
    assert set(suite.tests) == {("r", "s"), ("s", "r", "s"), ("s", "s", "s")}
    assert format_suite(suite) == (GOLDEN / "thermostat_m2_t0.5.suite").read_text()


def test_ac02_conformance_verdicts():
    spec, impl0, impl1 = spec_(), fixtures.implementation0(), fixtures.implementation1()
    assert conforms(spec, impl0, T05).conforms
    v = conforms(spec, impl1, T05)
    assert not v.conforms
    assert v.counterexample == ("s", "s", "s")
    assert (v.expected, v.observed) == ((ON, OFF, ON), (ON, OFF, OFF))


def test_ac03_strong_vs_plain_separability():
    spec = spec_()
    assert strongly_separates(spec, "Off", "On", ("s",), T05) is True
    assert separates(spec, "Off", "On", ("r",), T05) is True
    assert strongly_separates(spec, "Off", "On", ("r",), T05) is False
    assert strongly_separates(spec, "Off", "On", ("r",), T01) is True


def test_ac04_balls():
    spec, impl0 = spec_(), fixtures.implementation0()
    assert ball(spec, impl0, "Off", [("s",)], T05) == {"Off0"}
    assert ball(spec, impl0, "On", [("s",)], T05) == {"On0"}
    assert ball(spec, impl0, "On", [("r",)], T05) == {"On0", "Off0"}


def test_ac05_diagnostic_sets():
    spec, impl1 = spec_(), fixtures.implementation1()
    ids = identification_sets(compute_witnesses(spec, T05), spec)
    ds = diff_sets(spec, impl1, state_cover(spec), ids, 1, T05)
    assert ds.d == set()
    assert ds.dw == {(("s",), ("s",))}


def test_ac06_incompleteness_reproduction():
    spec, impl1 = spec_(), fixtures.implementation1()
    suite = hsi_generate(spec, 2, T05, mode="classical")
    assert set(suite.tests) == {("r", "r"), ("s", "s", "r"), ("s", "r", "r")}
    assert run_suite(impl1, suite, T05).passed
    assert not conforms(spec, impl1, T05).conforms


def _experiment_runs():
    rng = random.Random(2024)
    reports = []
    for i in range(20):
        spec = random_separable_spec(rng, T05, max_states=4, max_inputs=3, grid=GRID,
                                     name=f"Rand{i}")
        params = MutationParams(seed=i, count=500, extra_states=1, max_edits=3)
        reports.append(completeness_experiment(spec, spec.n + 1, T05, params))
    return reports


_REPORTS = []


def test_ac07_empirical_completeness():
    start = time.perf_counter()
    _REPORTS[:] = _experiment_runs()
    elapsed = time.perf_counter() - start
    assert len(_REPORTS) >= 20
    for r in _REPORTS:
        assert len(r.results) >= 500
        assert all(res.states <= r.n + 1 for res in r.results)
        assert r.completeness_violations == 0, r.summary()
        assert r.sound_kills == 0, r.summary()
    assert sum(r.count("true-fail") for r in _REPORTS) > 0
    assert elapsed <= 60, f"{elapsed:.1f}s"


def test_ac08_oracle_equivalence():
    rng = random.Random(8)
    pairs = agree = conforming = 0
    for _ in range(150):
        k = rng.randint(1, 3)
        a = random_fsm(rng, rng.randint(1, 3), k, grid=[0, 0.5, 1, 1.5], symbols=["on"],
                       name="A", prefix="a")
        b = random_fsm(rng, rng.randint(1, 3), k, grid=[0, 0.5, 1, 1.5], symbols=["on"],
                       name="B", prefix="b")
        pairs += 1
        truth, _ = dfs_conforms(a, b, 0.5, a.n * b.n)
        agree += conforms(a, b, T05).conforms == truth
        conforming += truth
    assert pairs >= 100 and agree == pairs
    assert 0 < conforming < pairs


def _random_machine(rng, max_states=4, max_inputs=3, grid=GRID, symbols=("on", "off")):
    return random_fsm(rng, rng.randint(1, max_states), rng.randint(1, max_inputs), grid, symbols)


def _random_seq(rng, m, max_len=5):
    return tuple(rng.choice(m.inputs) for _ in range(rng.randint(0, max_len)))


def _distinct_pair(rng, m):
    return tuple(rng.sample(m.states, 2))


def _cases(seed):
    rng = random.Random(seed)
    n = 0
    while n < CASES:
        m = _random_machine(rng)
        if m.n < 2:
            continue
        n += 1
        yield rng, m


def test_ac09a_strong_implies_separable():
    hits = 0
    for rng, m in _cases(91):
        s1, s2 = _distinct_pair(rng, m)
        xs = _random_seq(rng, m)
        cfg = ThermostatMetric(rng.choice([0.0, 0.25, 0.5, 1.0]))
        if strongly_separates(m, s1, s2, xs, cfg):
            hits += 1
            assert separates(m, s1, s2, xs, cfg)
    assert hits > 100


def test_ac09b_symmetry_and_irreflexivity():
    for rng, m in _cases(92):
        s1, s2 = _distinct_pair(rng, m)
        xs = _random_seq(rng, m)
        assert strongly_separates(m, s1, s2, xs, T05) == strongly_separates(m, s2, s1, xs, T05)
        assert not separates(m, s1, s1, xs, T05)
        try:
            strongly_separates(m, s1, s1, xs, T05)
        except ValueError:
            pass
        else:
            raise AssertionError("strong separation of a state from itself accepted")
        wt = compute_witnesses(m, T05)
        assert wt.get(s1, s2) == wt.get(s2, s1)


def _candidates(y1, y2, t):
    """Adversary outputs: the outputs, their midpoint, points at distance t and a symbol."""
    pool = {y1, y2, ON, OFF, Symbol("idle")}
    reals = [y.value for y in (y1, y2) if isinstance(y, Real)]
    for v in reals:
        pool.update(Real(v + d) for d in (-t, t, -2 * t, 2 * t))
    if len(reals) == 2:
        pool.add(Real((reals[0] + reals[1]) / 2))
    return pool


def test_ac09c_three_outcome_against_chain_adversaries():
    strong_hits = weak_hits = 0
    for rng, m in _cases(93):
        s1, s2 = _distinct_pair(rng, m)
        xs = _random_seq(rng, m, 4) or (m.inputs[0],)
        t = rng.choice([0.25, 0.5, 1.0])
        cfg = ThermostatMetric(t)
        _, ys1 = apply(m, s1, xs)
        _, ys2 = apply(m, s2, xs)
        options = [sorted(_candidates(a, b, t), key=str) for a, b in zip(ys1, ys2)]
        if strongly_separates(m, s1, s2, xs, cfg):
            strong_hits += 1
            for _ in range(20):
                outs = [rng.choice(o) for o in options]
                adv = chain_machine(m.inputs, xs, outs, Real(0.0))
                u = disjoint_union(m, adv)
                assert separates(u, "c0", s1, xs, cfg) or separates(u, "c0", s2, xs, cfg)
        else:
            # the reduction is exact: a chain of midpoints is close to both
            weak_hits += 1
            outs = []
            for a, b in zip(ys1, ys2):
                outs.append(Real((a.value + b.value) / 2) if isinstance(a, Real) else a)
            u = disjoint_union(m, chain_machine(m.inputs, xs, outs, Real(0.0)))
            assert not separates(u, "c0", s1, xs, cfg) and not separates(u, "c0", s2, xs, cfg)
    assert strong_hits > 100 and weak_hits > 100


def test_ac09d_ball_disjointness():
    hits = 0
    for rng, m in _cases(94):
        s1, s2 = _distinct_pair(rng, m)
        xs = _random_seq(rng, m, 4)
        if not strongly_separates(m, s1, s2, xs, T05):
            continue
        hits += 1
        impl = random_fsm(rng, rng.randint(1, 5), len(m.inputs), GRID, ("on", "off"), "I", "q")
        assert not ball(m, impl, s1, [xs], T05) & ball(m, impl, s2, [xs], T05)
    assert hits > 100


def test_ac09e_witness_length_bound():
    for rng, m in _cases(95):
        wt = compute_witnesses(m, ThermostatMetric(rng.choice([0.0, 0.5, 1.0])))
        bound = m.n * (m.n - 1) // 2
        assert all(len(w) <= bound for w in wt.witnesses.values())


def test_ac09f_witness_minimality_by_enumeration():
    for rng, m in _cases(96):
        t = rng.choice([0.5, 1.0])
        wt = compute_witnesses(m, ThermostatMetric(t))
        bound = m.n * (m.n - 1) // 2
        for i, s1 in enumerate(m.states):
            for s2 in m.states[i + 1:]:
                assert wt.get(s1, s2) == first_witness_by_enumeration(m, s1, s2, t, bound)


def test_ac09g_discrete_metric_collapse():
    d = DiscreteMetric()
    for rng, m in _cases(97):
        s1, s2 = _distinct_pair(rng, m)
        s3 = rng.choice(m.states)
        xs = _random_seq(rng, m)
        d_sep = apply(m, s1, xs)[1] != apply(m, s2, xs)[1]
        assert strongly_separates(m, s1, s2, xs, d) == separates(m, s1, s2, xs, d) == d_sep
        if d_sep:
            assert separates(m, s1, s3, xs, d) or separates(m, s2, s3, xs, d)
        assert compute_witnesses(m, d).witnesses == compute_witnesses(m, d, strong=False).witnesses


def test_ac09h_conformance_monotone_in_threshold():
    rng = random.Random(98)
    thresholds = [0.0, 0.25, 0.5, 0.75, 1.0, 2.0]
    for _ in range(CASES):
        a = _random_machine(rng, 3, 2, [0, 0.5, 1], ("on",))
        b = random_fsm(rng, rng.randint(1, 3), len(a.inputs), [0, 0.5, 1, 1.5], ("on",), "B", "b")
        verdicts = [conforms(a, b, ThermostatMetric(t)).conforms for t in thresholds]
        first = verdicts.index(True) if True in verdicts else len(verdicts)
        assert all(verdicts[first:])


def test_ac10_lower_bound_on_states():
    reports = _REPORTS or _experiment_runs()
    checked = 0
    for r in reports:
        for res in r.results:
            if res.preconditions and not res.conforms:
                checked += 1
                assert res.lower_bound_ok, res
                assert res.states >= r.n + res.smallest_level - 1
        assert r.lower_bound_violations == 0
        assert r.cover_violations == 0
    assert checked > 0
