"""Separation, strong separation, witnesses, state covers and identifiers.

An input sequence *separates* two states when their output sequences are
not similar.  It *strongly separates* them when every state of every machine
over the same alphabets is separated from at least one of the two.  The
quantification over all machines reduces to a pointwise check: a chain
machine can emit any output sequence of the right length, so some state is
similar to both exactly when, at every position, a single output is similar
to both outputs there.  Hence ``xs`` strongly separates ``s1`` and ``s2``
iff at some position the two outputs are not jointly coverable.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .fsm import Fsm, FsmError, OutputValue, apply
from .similarity import SimilarityConfig, similar_seq

__all__ = [
    "WitnessTable",
    "separates",
    "strongly_separates",
    "compute_witnesses",
    "state_cover",
    "remove_prefixes",
    "identification_sets",
    "ball",
    "seq_key",
    "pair",
]

InputSeq = tuple  # tuple[str, ...]


def pair(s1: str, s2: str) -> frozenset:
    return frozenset((s1, s2))


def seq_key(m: Fsm):
    """Sort key for input sequences: shorter first, then by input declaration order."""
    rank = {x: i for i, x in enumerate(m.inputs)}
    return lambda xs: (len(xs), [rank[x] for x in xs])


def lex_key(m: Fsm):
    """Plain lexicographic order by input declaration order (prefixes first)."""
    rank = {x: i for i, x in enumerate(m.inputs)}
    return lambda xs: [rank[x] for x in xs]


def separates(m: Fsm, s1: str, s2: str, xs: Sequence[str], cfg: SimilarityConfig) -> bool:
    return not similar_seq(apply(m, s1, xs)[1], apply(m, s2, xs)[1], cfg)


def strongly_separates(m: Fsm, s1: str, s2: str, xs: Sequence[str], cfg: SimilarityConfig) -> bool:
    if s1 == s2:
        raise ValueError(f"strong separability is irreflexive; got ({s1}, {s1})")
    _, ys1 = apply(m, s1, xs)
    _, ys2 = apply(m, s2, xs)
    return any(not cfg.jointly_coverable(a, b) for a, b in zip(ys1, ys2))


@dataclass
class WitnessTable:
    """Shortest witnesses per unordered pair of distinct states."""

    witnesses: dict = field(default_factory=dict)   # frozenset -> tuple[str, ...]
    unseparable: set = field(default_factory=set)   # set[frozenset]
    order: tuple = ()                               # state declaration order
    strong: bool = True

    def get(self, s1: str, s2: str) -> tuple[str, ...] | None:
        return self.witnesses.get(pair(s1, s2))

    def __getitem__(self, key) -> tuple[str, ...]:
        s1, s2 = key
        w = self.get(s1, s2)
        if w is None:
            raise KeyError((s1, s2))
        return w

    @property
    def total(self) -> bool:
        return not self.unseparable

    def pairs(self) -> list[tuple[str, str]]:
        """All unordered pairs in declaration order, as ``(earlier, later)``."""
        st = self.order
        return [(st[i], st[j]) for i in range(len(st)) for j in range(i + 1, len(st))]

    def lines(self) -> list[str]:
        from .fsm import format_inputs
        out = []
        for s1, s2 in self.pairs():
            w = self.get(s1, s2)
            out.append(f"{s1} {s2} {'UNSEPARABLE' if w is None else format_inputs(w)}")
        return out

    def unseparable_pairs(self) -> list[tuple[str, str]]:
        return [p for p in self.pairs() if pair(*p) in self.unseparable]


def compute_witnesses(m: Fsm, cfg: SimilarityConfig, strong: bool = True) -> WitnessTable:
    """Shortest separating witnesses by pair refinement.

    Round 1 marks pairs with a single input whose outputs are apart; round
    ``k + 1`` marks pairs with an input leading to a pair marked in an earlier
    round, the witness being that input followed by the successor's witness.
    Inputs are tried in declaration order, so among shortest witnesses the
    lexicographically least one is chosen.  With ``strong=False`` outputs are
    merely required to be dissimilar, giving plain separating sequences.

    At most ``n(n-1)/2`` rounds are run; pairs still unmarked are reported as
    unseparable.
    """
    apart: Callable[[OutputValue, OutputValue], bool]
    if strong:
        apart = lambda a, b: not cfg.jointly_coverable(a, b)  # noqa: E731
    else:
        apart = lambda a, b: not cfg.similar(a, b)  # noqa: E731

    st = m.states
    all_pairs = [(st[i], st[j]) for i in range(len(st)) for j in range(i + 1, len(st))]
    found: dict[frozenset, tuple[str, ...]] = {}

    pending = []
    for s1, s2 in all_pairs:
        for x in m.inputs:
            if apart(m.output(s1, x), m.output(s2, x)):
                found[pair(s1, s2)] = (x,)
                break
        else:
            pending.append((s1, s2))

    rounds = len(st) * (len(st) - 1) // 2
    for _ in range(1, rounds):
        if not pending:
            break
        snapshot = dict(found)
        still = []
        for s1, s2 in pending:
            for x in m.inputs:
                nxt = pair(m.delta(s1, x), m.delta(s2, x))
                if nxt in snapshot:
                    found[pair(s1, s2)] = (x,) + snapshot[nxt]
                    break
            else:
                still.append((s1, s2))
        if len(still) == len(pending):
            break
        pending = still

    return WitnessTable(found, {pair(*p) for p in pending}, st, strong)


def state_cover(m: Fsm) -> dict[str, tuple[str, ...]]:
    """Breadth-first access sequences, one per state, prefix-closed."""
    cover = {m.initial: ()}
    queue = deque([m.initial])
    while queue:
        s = queue.popleft()
        for x in m.inputs:
            t = m.delta(s, x)
            if t not in cover:
                cover[t] = cover[s] + (x,)
                queue.append(t)
    missing = [s for s in m.states if s not in cover]
    if missing:
        raise FsmError(f"unreachable state(s) in {m.name}: {', '.join(missing)}")
    return {s: cover[s] for s in m.states}


def remove_prefixes(zs: Iterable[Sequence[str]]) -> set[tuple[str, ...]]:
    """Drop every sequence that is a proper prefix of another member."""
    items = {tuple(z) for z in zs}
    prefixes = {z[:i] for z in items for i in range(len(z))}
    return items - prefixes


def identification_sets(wt: WitnessTable, m: Fsm) -> dict[str, set[tuple[str, ...]]]:
    missing = [f"({a}, {b})" for a, b in wt.unseparable_pairs()]
    if missing:
        kind = "strongly separable" if wt.strong else "separable"
        raise ValueError(f"states not pairwise {kind}: {', '.join(missing)}")
    out = {}
    for s in m.states:
        ws = []
        for t in m.states:
            if t == s:
                continue
            w = wt.get(s, t)
            if w is None:
                raise ValueError(f"states not pairwise strongly separable: ({s}, {t})")
            ws.append(w)
        out[s] = remove_prefixes(ws)
    return out


def ball(spec: Fsm, impl: Fsm, s_i: str, ws: Iterable[Sequence[str]], cfg: SimilarityConfig) -> set[str]:
    """Implementation states that no sequence in ``ws`` separates from ``s_i``."""
    ws = [tuple(w) for w in ws]
    expected = [apply(spec, s_i, w)[1] for w in ws]
    return {
        q for q in impl.states
        if all(similar_seq(e, apply(impl, q, w)[1], cfg) for w, e in zip(ws, expected))
    }
