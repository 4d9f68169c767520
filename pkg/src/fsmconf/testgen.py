"""HSI-style test generation with strongly separating state identifiers."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as cartesian

from .fsm import (Fsm, FsmError, OutputValue, apply, format_inputs, format_outputs,
                  parse_inputs, parse_outputs)
from .separability import (compute_witnesses, identification_sets, seq_key,
                           state_cover)
from .similarity import SimilarityConfig, make_config

__all__ = ["TestSuite", "TestResult", "SuiteVerdict", "hsi_generate", "run_suite",
           "format_suite", "parse_suite", "NotSeparableError"]

MODES = ("strong", "classical")


class NotSeparableError(ValueError):
    def __init__(self, pairs, threshold_text, strong=True):
        self.pairs = list(pairs)
        kind = "strongly separable" if strong else "separable"
        listed = ", ".join(f"({a}, {b})" for a, b in self.pairs)
        super().__init__(f"not pairwise {kind} at threshold {threshold_text}: {listed}")


@dataclass
class TestSuite:
    __test__ = False  # not a pytest class

    tests: list[tuple[str, ...]]
    expected: list[tuple[OutputValue, ...]]
    spec_name: str
    m: int
    n: int
    metric: str
    threshold: str
    mode: str
    inputs: tuple[str, ...] = ()

    def __len__(self):
        return len(self.tests)

    def __iter__(self):
        return iter(zip(self.tests, self.expected))

    def config(self) -> SimilarityConfig:
        return make_config(self.metric, None if self.threshold == "-" else float(self.threshold))


def hsi_generate(spec: Fsm, m: int, cfg: SimilarityConfig, mode: str = "strong") -> TestSuite:
    """Derive ``RP({v.xs.w})`` for cover ``v``, ``|xs| <= m - n + 1`` and identifiers ``w``.

    ``mode="classical"`` uses plain separating sequences as identifiers.  The
    resulting suites are not m-complete under a similarity relation; the mode
    exists to demonstrate that.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    n = spec.n
    if m < n:
        raise ValueError(f"m = {m} is smaller than the number of states n = {n}")
    metric, threshold = cfg.describe()
    wt = compute_witnesses(spec, cfg, strong=(mode == "strong"))
    if not wt.total:
        raise NotSeparableError(wt.unseparable_pairs(), threshold, mode == "strong")
    cover = state_cover(spec)
    ids = identification_sets(wt, spec)
    key = seq_key(spec)

    middles = [xs for k in range(m - n + 2) for xs in cartesian(spec.inputs, repeat=k)]
    raw: list[tuple[str, ...]] = []
    for v in sorted(cover.values(), key=key):
        for xs in middles:
            target = apply(spec, spec.initial, v + xs)[0]
            # an empty identifier set (single-state spec) still exercises v.xs
            for w in sorted(ids[target], key=key) or [()]:
                raw.append(v + xs + w)

    prefixes = {t[:i] for t in raw for i in range(len(t))}
    tests: list[tuple[str, ...]] = []
    seen = set()
    for t in raw:
        if t not in prefixes and t not in seen:
            seen.add(t)
            tests.append(t)
    expected = [apply(spec, spec.initial, t)[1] for t in tests]
    return TestSuite(tests, expected, spec.name, m, n, metric, threshold, mode, spec.inputs)


@dataclass(frozen=True)
class TestResult:
    __test__ = False

    test: tuple[str, ...]
    expected: tuple[OutputValue, ...]
    observed: tuple[OutputValue, ...]
    first_failure: int | None   # 0-based position of the first dissimilar output

    @property
    def passed(self) -> bool:
        return self.first_failure is None


@dataclass
class SuiteVerdict:
    results: list[TestResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> list[TestResult]:
        return [r for r in self.results if not r.passed]

    def lines(self) -> list[str]:
        out = []
        for r in self.results:
            pos = "-" if r.passed else str(r.first_failure + 1)
            out.append("\t".join((format_inputs(r.test), "pass" if r.passed else "FAIL",
                                  format_outputs(r.expected), format_outputs(r.observed), pos)))
        failed = len(self.failures)
        out.append(f"# {len(self.results) - failed}/{len(self.results)} passed"
                   + ("" if not failed else f", {failed} failed"))
        return out


def run_suite(impl: Fsm, suite: TestSuite, cfg: SimilarityConfig) -> SuiteVerdict:
    if suite.inputs and set(suite.inputs) != set(impl.inputs):
        raise FsmError(f"input alphabet mismatch between suite and {impl.name}")
    verdict = SuiteVerdict()
    for test, exp in suite:
        _, obs = apply(impl, impl.initial, test)
        first = None
        if len(obs) != len(exp):
            first = min(len(obs), len(exp))
        else:
            for i, (a, b) in enumerate(zip(exp, obs)):
                if not cfg.similar(a, b):
                    first = i
                    break
        verdict.results.append(TestResult(test, exp, obs, first))
    return verdict


def format_suite(suite: TestSuite) -> str:
    head = (f"# spec={suite.spec_name} m={suite.m} n={suite.n} metric={suite.metric} "
            f"threshold={suite.threshold} mode={suite.mode}")
    body = [f"{format_inputs(t)}\t{format_outputs(e)}" for t, e in suite]
    return "\n".join([head] + body) + "\n"


def parse_suite(text: str) -> TestSuite:
    meta: dict[str, str] = {}
    tests, expected = [], []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        if line.startswith("#"):
            for tok in line[1:].split():
                if "=" in tok:
                    k, v = tok.split("=", 1)
                    meta[k] = v
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise FsmError("expected '<inputs>\\t<outputs>'", lineno)
        xs, ys = parse_inputs(parts[0].strip()), parse_outputs(parts[1].strip())
        if len(xs) != len(ys):
            raise FsmError(f"{len(xs)} inputs but {len(ys)} expected outputs", lineno)
        tests.append(xs)
        expected.append(ys)
    missing = [k for k in ("spec", "m", "n", "metric", "threshold", "mode") if k not in meta]
    if missing:
        raise FsmError(f"suite header lacks {', '.join(missing)}")
    return TestSuite(tests, expected, meta["spec"], int(meta["m"]), int(meta["n"]),
                     meta["metric"], meta["threshold"], meta["mode"], ())

