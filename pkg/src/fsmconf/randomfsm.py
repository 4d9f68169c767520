"""Random machines for experiments and property tests."""
from __future__ import annotations

import random
from typing import Sequence

from .fsm import Fsm, Real, Symbol
from .separability import compute_witnesses, state_cover
from .similarity import SimilarityConfig


def random_fsm(rng: random.Random, n: int, n_inputs: int, grid: Sequence[float] = (),
               symbols: Sequence[str] = (), name: str = "M", prefix: str = "s") -> Fsm:
    """Uniformly random complete machine; outputs drawn from ``grid`` reals and ``symbols``."""
    pool = [Real(float(v)) for v in grid] + [Symbol(s) for s in symbols]
    if not pool:
        raise ValueError("need at least one output value")
    states = [f"{prefix}{i}" for i in range(n)]
    inputs = [chr(ord("a") + i) for i in range(n_inputs)]
    table = {s: {x: (rng.choice(states), rng.choice(pool)) for x in inputs} for s in states}
    return Fsm.from_table(name, states, states[0], inputs, table)


def random_separable_spec(rng: random.Random, cfg: SimilarityConfig, max_states: int = 4,
                          max_inputs: int = 3, grid: Sequence[float] = (),
                          symbols: Sequence[str] = (), name: str = "Spec",
                          tries: int = 10_000) -> Fsm:
    """Rejection-sample a reachable machine whose states are pairwise strongly separable."""
    for _ in range(tries):
        n = rng.randint(1, max_states)
        k = rng.randint(1, max_inputs)
        m = random_fsm(rng, n, k, grid, symbols, name)
        try:
            state_cover(m)
        except ValueError:
            continue
        if compute_witnesses(m, cfg).total:
            return m
    raise RuntimeError("no strongly separable machine found")
