"""Product of a specification and an implementation; conformance checking."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product as cartesian
from typing import Mapping, Sequence

from .fsm import Fsm, FsmError, OutputValue, apply
from .similarity import SimilarityConfig, similar_seq

__all__ = ["ERROR", "ERR", "ProductMachine", "Verdict", "DiffSets",
           "product", "conforms", "diff_sets", "check_alphabets"]


class _Marker:
    __slots__ = ("label",)

    def __init__(self, label):
        self.label = label

    def __repr__(self):
        return self.label


ERROR = _Marker("ERROR")   # absorbing error state
ERR = _Marker("err")       # output on transitions into ERROR; never serialized


def check_alphabets(spec: Fsm, impl: Fsm) -> None:
    if set(spec.inputs) != set(impl.inputs):
        raise FsmError(
            f"input alphabet mismatch: {spec.name} has {{{', '.join(spec.inputs)}}}, "
            f"{impl.name} has {{{', '.join(impl.inputs)}}}")


@dataclass
class ProductMachine:
    """Reachable fragment of the synchronous product, plus the error state."""

    inputs: tuple[str, ...]
    initial: tuple[str, str]
    states: list = field(default_factory=list)
    transitions: dict = field(default_factory=dict)   # (state, x) -> (state, output)
    parent: dict = field(default_factory=dict)        # state -> (predecessor, input)

    @property
    def error_reachable(self) -> bool:
        return ERROR in self.parent

    def step(self, state, x):
        if state is ERROR:
            return ERROR, ERR
        return self.transitions[(state, x)]

    def path_to(self, state) -> tuple[str, ...]:
        """Shortest input sequence reaching ``state`` (BFS tree)."""
        path = []
        while state != self.initial:
            state, x = self.parent[state]
            path.append(x)
        return tuple(reversed(path))


def product(spec: Fsm, impl: Fsm, cfg: SimilarityConfig) -> ProductMachine:
    """Build the reachable product breadth-first from the initial pair.

    On input ``x`` a pair ``(s, q)`` moves to the successor pair when the two
    outputs are similar and to the absorbing error state otherwise.
    """
    check_alphabets(spec, impl)
    init = (spec.initial, impl.initial)
    pm = ProductMachine(spec.inputs, init, [init])
    seen = {init}
    queue = deque([init])
    while queue:
        s, q = node = queue.popleft()
        for x in spec.inputs:
            s2, y = spec.step(s, x)
            q2, yi = impl.step(q, x)
            if cfg.similar(y, yi):
                nxt, out = (s2, q2), yi
            else:
                nxt, out = ERROR, ERR
            pm.transitions[(node, x)] = (nxt, out)
            if nxt not in seen and nxt not in pm.parent:
                pm.parent[nxt] = (node, x)
                if nxt is not ERROR:
                    seen.add(nxt)
                    pm.states.append(nxt)
                    queue.append(nxt)
    return pm


@dataclass(frozen=True)
class Verdict:
    conforms: bool
    counterexample: tuple[str, ...] | None = None
    expected: tuple[OutputValue, ...] | None = None
    observed: tuple[OutputValue, ...] | None = None

    def __bool__(self):
        return self.conforms


def conforms(spec: Fsm, impl: Fsm, cfg: SimilarityConfig) -> Verdict:
    """Conformance holds iff the product's error state is unreachable.

    Otherwise the BFS path to the error state is a shortest counterexample,
    ties broken by input declaration order of ``spec``.
    """
    pm = product(spec, impl, cfg)
    if not pm.error_reachable:
        return Verdict(True)
    cex = pm.path_to(ERROR)
    return Verdict(False, cex, apply(spec, spec.initial, cex)[1], apply(impl, impl.initial, cex)[1])


@dataclass(frozen=True)
class DiffSets:
    level: int
    d: frozenset      # {(v, xs)}: spec and impl differ on v.xs
    dw: frozenset     # {(v, xs)}: differ on v.xs.w for some identifier w

    @property
    def empty(self) -> bool:
        return not self.d and not self.dw


def diff_sets(spec: Fsm, impl: Fsm, cover: Mapping[str, Sequence[str]],
              idsets: Mapping[str, set], level: int, cfg: SimilarityConfig) -> DiffSets:
    """Enumerate ``v . xs`` for ``v`` in the cover and every ``xs`` of length ``level``."""
    if level < 1:
        raise ValueError("level must be positive")
    check_alphabets(spec, impl)
    d, dw = set(), set()
    for v in cover.values():
        v = tuple(v)
        for xs in cartesian(spec.inputs, repeat=level):
            prefix = v + xs
            s, ys = apply(spec, spec.initial, prefix)
            q, yi = apply(impl, impl.initial, prefix)
            if not similar_seq(ys, yi, cfg):
                d.add((v, xs))
            for w in idsets.get(s, ()):
                if not similar_seq(ys + apply(spec, s, w)[1], yi + apply(impl, q, w)[1], cfg):
                    dw.add((v, xs))
                    break
    return DiffSets(level, frozenset(d), frozenset(dw))
