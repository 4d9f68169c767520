"""Mutant implementations and an empirical check of m-completeness.

Ground truth for every mutant is the product machine; the generated suite is
only ever the subject under evaluation.
"""
from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product as cartesian
from typing import Iterator, Sequence

from .fsm import Fsm, Real, Symbol, apply, validate
from .product import conforms, diff_sets
from .separability import compute_witnesses, identification_sets, state_cover
from .similarity import SimilarityConfig, similar_seq
from .testgen import TestSuite, hsi_generate, run_suite

__all__ = [
    "OPERATORS",
    "MutationParams",
    "MutantResult",
    "ExperimentReport",
    "default_magnitudes",
    "perturb_output",
    "swap_symbol",
    "redirect",
    "split_state",
    "generate_mutants",
    "exhaustive_transfer_mutants",
    "completeness_experiment",
]

OPERATORS = ("output-perturb", "output-symbol-swap", "transfer-fault", "add-state")


def default_magnitudes(threshold: float | None) -> tuple[float, ...]:
    """``t/2, t, 2t, 4t``: either side of the similarity and coverability bounds."""
    t = threshold or 0.5
    return (t / 2, t, 2 * t, 4 * t)


@dataclass(frozen=True)
class MutationParams:
    seed: int = 0
    count: int = 100
    extra_states: int = 0
    operators: tuple[str, ...] = OPERATORS
    magnitudes: tuple[float, ...] | None = None
    max_edits: int = 2

    def __post_init__(self):
        if self.count < 0:
            raise ValueError("count must be non-negative")
        if self.extra_states < 0:
            raise ValueError("extra_states must be non-negative")
        if self.max_edits < 1:
            raise ValueError("max_edits must be at least 1")
        unknown = set(self.operators) - set(OPERATORS)
        if unknown:
            raise ValueError(f"unknown operators: {', '.join(sorted(unknown))}")
        if self.magnitudes is not None and not all(0 < d < float("inf") for d in self.magnitudes):
            raise ValueError("magnitudes must be finite and positive")


# -- single edits --------------------------------------------------------------

def _edit(m: Fsm, state: str, x: str, dst=None, output=None) -> Fsm:
    table = m.table()
    old_dst, old_out = table[state][x]
    table[state][x] = (old_dst if dst is None else dst, old_out if output is None else output)
    return Fsm.from_table(m.name, m.states, m.initial, m.inputs, table)


def perturb_output(m: Fsm, state: str, x: str, delta: float) -> Fsm:
    y = m.output(state, x)
    if not isinstance(y, Real):
        raise ValueError(f"output of ({state}, {x}) is not real")
    return _edit(m, state, x, output=Real(y.value + delta))


def swap_symbol(m: Fsm, state: str, x: str, symbol: str) -> Fsm:
    if not isinstance(m.output(state, x), Symbol):
        raise ValueError(f"output of ({state}, {x}) is not a symbol")
    return _edit(m, state, x, output=Symbol(symbol))


def redirect(m: Fsm, state: str, x: str, target: str) -> Fsm:
    return _edit(m, state, x, dst=target)


def split_state(m: Fsm, state: str, incoming: tuple[str, str], divergent: str,
                dst: str | None = None, output=None, copy_name: str | None = None) -> Fsm:
    """Clone ``state``, route one incoming transition to the clone, and change
    the clone's ``divergent`` transition (its target and/or output)."""
    name = copy_name or _fresh(m, state)
    table = m.table()
    table[name] = dict(table[state])
    src, x = incoming
    table[src][x] = (name, table[src][x][1])
    old_dst, old_out = table[name][divergent]
    table[name][divergent] = (old_dst if dst is None else dst, old_out if output is None else output)
    return Fsm.from_table(m.name, m.states + (name,), m.initial, m.inputs, table)


def _fresh(m: Fsm, state: str) -> str:
    i = 1
    while f"{state}_c{i}" in m.states:
        i += 1
    return f"{state}_c{i}"


# -- random generation ---------------------------------------------------------

def _random_edit(m: Fsm, rng: random.Random, ops: Sequence[str], magnitudes, symbols,
                 max_states: int) -> Fsm | None:
    op = rng.choice(ops)
    cells = [(s, x) for s in m.states for x in m.inputs]
    if op == "output-perturb":
        cells = [c for c in cells if isinstance(m.output(*c), Real)]
        if not cells:
            return None
        s, x = rng.choice(cells)
        return perturb_output(m, s, x, rng.choice((-1, 1)) * rng.choice(magnitudes))
    if op == "output-symbol-swap":
        options = [(c, y) for c in cells if isinstance(m.output(*c), Symbol)
                   for y in symbols if y != m.output(*c).name]
        if not options:
            return None
        (s, x), y = rng.choice(options)
        return swap_symbol(m, s, x, y)
    if op == "transfer-fault":
        options = [(c, t) for c in cells for t in m.states if t != m.delta(*c)]
        if not options:
            return None
        (s, x), t = rng.choice(options)
        return redirect(m, s, x, t)
    # add-state
    if m.n >= max_states:
        return None
    s_in, x_in = rng.choice(cells)
    state = m.delta(s_in, x_in)
    name = _fresh(m, state)
    divergent = rng.choice(m.inputs)
    old_dst, old_out = m.step(state, divergent)
    if isinstance(old_out, Real) and rng.random() < 0.5:
        out = Real(old_out.value + rng.choice((-1, 1)) * rng.choice(magnitudes))
        return split_state(m, state, (s_in, x_in), divergent, output=out, copy_name=name)
    targets = [t for t in m.states + (name,) if t != old_dst]
    return split_state(m, state, (s_in, x_in), divergent, dst=rng.choice(targets), copy_name=name)


def generate_mutants(spec: Fsm, p: MutationParams, threshold: float | None = None) -> Iterator[Fsm]:
    """Yield ``p.count`` mutants, reproducibly for a given seed.

    Each mutant applies between one and ``p.max_edits`` random edits and has at
    most ``n + p.extra_states`` states.  Magnitudes default to
    :func:`default_magnitudes` of ``threshold``.
    """
    rng = random.Random(p.seed)
    magnitudes = tuple(p.magnitudes) if p.magnitudes else default_magnitudes(threshold)
    symbols = spec.symbols()
    ops = [op for op in OPERATORS if op in p.operators]
    if not ops:
        return
    max_states = spec.n + p.extra_states
    produced = 0
    attempts = 0
    while produced < p.count:
        attempts += 1
        if attempts > 100 * (p.count + 1):
            raise RuntimeError("mutation operators are not applicable to this specification")
        mutant = spec
        for _ in range(rng.randint(1, p.max_edits)):
            edited = _random_edit(mutant, rng, ops, magnitudes, symbols, max_states)
            if edited is not None:
                mutant = edited
        if mutant is spec:
            continue
        assert not validate(mutant), validate(mutant)
        produced += 1
        yield mutant.replace(name=f"{spec.name}_mut{produced}")


def exhaustive_transfer_mutants(spec: Fsm, extra_states: int = 0, limit: int = 200_000) -> Iterator[Fsm]:
    """Every machine with the specification's outputs and an arbitrary transition structure.

    Extra states copy the outputs of some specification state.  Raises
    ``ValueError`` when the enumeration would exceed ``limit`` machines.
    """
    n, k = spec.n, extra_states
    size = n + k
    total = n ** k * size ** (size * len(spec.inputs))
    if total > limit:
        raise ValueError(f"{total} mutants exceed the enumeration limit {limit}")
    names = list(spec.states) + [f"extra{i}" for i in range(k)]
    cells = [(s, x) for s in names for x in spec.inputs]
    idx = 0
    for origins in cartesian(spec.states, repeat=k):
        source = dict(zip(names, list(spec.states) + list(origins)))
        for targets in cartesian(names, repeat=len(cells)):
            table: dict = {s: {} for s in names}
            for (s, x), t in zip(cells, targets):
                table[s][x] = (t, spec.output(source[s], x))
            idx += 1
            yield Fsm.from_table(f"{spec.name}_tf{idx}", names, spec.initial, spec.inputs, table)


# -- the experiment -------------------------------------------------------------

@dataclass(frozen=True)
class MutantResult:
    index: int
    name: str
    states: int
    conforms: bool
    passed: bool
    classification: str
    smallest_level: int | None = None      # least l with D_l or DW_l non-empty
    preconditions: bool | None = None      # every v.w test passes
    lower_bound_ok: bool | None = None     # states >= n + l - 1
    cover_distinct: bool | None = None     # V reaches n distinct impl states

    def row(self) -> str:
        def b(v):
            return "-" if v is None else ("yes" if v else "no")
        level = "-" if self.smallest_level is None else str(self.smallest_level)
        return "\t".join((str(self.index), str(self.states), b(self.conforms), b(self.passed),
                          self.classification, level))


@dataclass
class ExperimentReport:
    spec_name: str
    m: int
    n: int
    mode: str
    suite_size: int
    results: list[MutantResult] = field(default_factory=list)

    HEADER = "id\tstates\tconforms\tpassed\tclassification\tsmallest_level"

    def count(self, classification: str) -> int:
        return sum(r.classification == classification for r in self.results)

    @property
    def completeness_violations(self) -> int:
        return self.count("completeness-violation")

    @property
    def sound_kills(self) -> int:
        return self.count("sound-kill")

    @property
    def lower_bound_violations(self) -> int:
        return sum(r.lower_bound_ok is False for r in self.results)

    @property
    def cover_violations(self) -> int:
        return sum(r.cover_distinct is False for r in self.results)

    @property
    def theorem_holds(self) -> bool:
        return self.completeness_violations == 0

    def totals(self) -> dict[str, int]:
        keys = ("true-pass", "true-fail", "completeness-violation", "sound-kill", "beyond-bound-pass")
        return {k: self.count(k) for k in keys}

    def tsv(self) -> str:
        return "\n".join([self.HEADER] + [r.row() for r in self.results]) + "\n"

    def summary(self) -> str:
        t = self.totals()
        lines = [
            f"spec={self.spec_name} n={self.n} m={self.m} mode={self.mode} "
            f"suite={self.suite_size} mutants={len(self.results)}",
            "  " + " ".join(f"{k}={v}" for k, v in t.items()),
            f"  lower-bound-violations={self.lower_bound_violations} "
            f"cover-violations={self.cover_violations}",
            f"  m-completeness {'holds' if self.theorem_holds else 'VIOLATED'}; "
            f"soundness {'holds' if self.sound_kills == 0 else 'VIOLATED'}",
        ]
        return "\n".join(lines) + "\n"


def classify(conf: bool, passed: bool, states: int, m: int) -> str:
    if conf:
        return "true-pass" if passed else "sound-kill"
    if not passed:
        return "true-fail"
    return "completeness-violation" if states <= m else "beyond-bound-pass"


@dataclass(frozen=True)
class _Context:
    spec: Fsm
    m: int
    cfg: SimilarityConfig
    suite: TestSuite
    cover: dict | None
    ids: dict | None


def _evaluate(ctx: _Context, index: int, mutant: Fsm) -> MutantResult:
    spec, cfg = ctx.spec, ctx.cfg
    conf = conforms(spec, mutant, cfg).conforms
    passed = run_suite(mutant, ctx.suite, cfg).passed
    result = dict(index=index, name=mutant.name, states=mutant.n, conforms=conf, passed=passed,
                  classification=classify(conf, passed, mutant.n, ctx.m))
    if ctx.ids is None:
        return MutantResult(**result)

    pre = True
    reached = set()
    for s, v in ctx.cover.items():
        q, _ = apply(mutant, mutant.initial, v)
        reached.add(q)
        for w in ctx.ids[s]:
            if not similar_seq(apply(spec, spec.initial, v + w)[1],
                               apply(mutant, mutant.initial, v + w)[1], cfg):
                pre = False
    result["preconditions"] = pre
    if pre:
        result["cover_distinct"] = len(reached) == spec.n
    if pre and not conf:
        bound = mutant.n - spec.n + 1
        level = None
        for ell in range(1, bound + 1):
            if not diff_sets(spec, mutant, ctx.cover, ctx.ids, ell, cfg).empty:
                level = ell
                break
        result["smallest_level"] = level
        result["lower_bound_ok"] = level is not None
    return MutantResult(**result)


def _evaluate_batch(args):
    ctx, batch = args
    return [_evaluate(ctx, i, mu) for i, mu in batch]


def completeness_experiment(spec: Fsm, m: int, cfg: SimilarityConfig, p: MutationParams,
                            mode: str = "strong", jobs: int = 1,
                            mutants: Sequence[Fsm] | None = None) -> ExperimentReport:
    """Generate one suite and classify every mutant against product-machine truth.

    In strong mode each non-conforming mutant that passes all ``v.w`` tests is
    also checked against the state-count lower bound: if ``l`` is the least
    level with a non-empty ``D_l`` or ``DW_l`` then the mutant has at least
    ``n + l - 1`` states.  Explicit ``mutants`` replace the generated ones.
    """
    suite = hsi_generate(spec, m, cfg, mode)
    cover = ids = None
    if mode == "strong":
        cover = state_cover(spec)
        ids = identification_sets(compute_witnesses(spec, cfg), spec)
    ctx = _Context(spec, m, cfg, suite, cover, ids)
    if mutants is None:
        mutants = list(generate_mutants(spec, p, cfg.threshold))
    indexed = list(enumerate(mutants, 1))
    report = ExperimentReport(spec.name, m, spec.n, mode, len(suite))
    if jobs > 1 and len(indexed) > 1:
        chunk = max(1, len(indexed) // (jobs * 4))
        batches = [(ctx, indexed[i:i + chunk]) for i in range(0, len(indexed), chunk)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_evaluate_batch, batches):
                report.results.extend(part)
    else:
        report.results.extend(_evaluate(ctx, i, mu) for i, mu in indexed)
    return report
