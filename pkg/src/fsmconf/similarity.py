"""Similarity of outputs under a metric and a threshold.

Two built-in metric families are provided:

* :class:`ThermostatMetric` -- absolute difference between reals, ``0``
  between equal symbols and ``inf`` otherwise; outputs are similar when the
  distance is at most the threshold.
* :class:`DiscreteMetric` -- similarity is equality, the classical setting.

Besides ``similar`` each family exposes ``jointly_coverable(a, b)``: whether
some single output is similar to both ``a`` and ``b``.  It is a primitive of
the family rather than something derived from ``distance`` because a general
metric space need not have midpoints.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

from .fsm import OutputValue, Real, Symbol, format_real

__all__ = [
    "ThermostatMetric",
    "DiscreteMetric",
    "SimilarityConfig",
    "make_config",
    "distance",
    "similar",
    "similar_seq",
    "jointly_coverable",
]

INF = math.inf


@dataclass(frozen=True)
class ThermostatMetric:
    threshold: float

    id = "thermostat"

    def __post_init__(self):
        t = self.threshold
        if not isinstance(t, (int, float)) or not math.isfinite(t) or t < 0:
            raise ValueError(f"threshold must be a finite non-negative number, got {t!r}")

    def distance(self, a: OutputValue, b: OutputValue) -> float:
        if isinstance(a, Real) and isinstance(b, Real):
            return abs(a.value - b.value)
        if isinstance(a, Symbol) and isinstance(b, Symbol) and a == b:
            return 0.0
        return INF

    def similar(self, a: OutputValue, b: OutputValue) -> bool:
        return self.distance(a, b) <= self.threshold

    def jointly_coverable(self, a: OutputValue, b: OutputValue) -> bool:
        # Over the reals the midpoint (a + b) / 2 covers both exactly when
        # |a - b| <= 2t.  A symbol is only similar to itself.
        if isinstance(a, Real) and isinstance(b, Real):
            return abs(a.value - b.value) <= 2 * self.threshold
        return a == b

    def describe(self) -> tuple[str, str]:
        return self.id, format_real(self.threshold)


@dataclass(frozen=True)
class DiscreteMetric:
    id = "discrete"

    @property
    def threshold(self):
        return None

    def distance(self, a: OutputValue, b: OutputValue) -> float:
        return 0.0 if a == b else INF

    def similar(self, a: OutputValue, b: OutputValue) -> bool:
        return a == b

    def jointly_coverable(self, a: OutputValue, b: OutputValue) -> bool:
        return a == b

    def describe(self) -> tuple[str, str]:
        return self.id, "-"


SimilarityConfig = Union[ThermostatMetric, DiscreteMetric]


def make_config(metric: str = "thermostat", threshold: float | None = None) -> SimilarityConfig:
    if metric == "thermostat":
        if threshold is None:
            raise ValueError("metric 'thermostat' requires a threshold")
        return ThermostatMetric(float(threshold))
    if metric == "discrete":
        if threshold is not None:
            raise ValueError("metric 'discrete' takes no threshold")
        return DiscreteMetric()
    raise ValueError(f"unknown metric {metric!r}")


def distance(a: OutputValue, b: OutputValue, cfg: SimilarityConfig) -> float:
    return cfg.distance(a, b)


def similar(a: OutputValue, b: OutputValue, cfg: SimilarityConfig) -> bool:
    return cfg.similar(a, b)


def similar_seq(ys1: Sequence[OutputValue], ys2: Sequence[OutputValue], cfg: SimilarityConfig) -> bool:
    """Pointwise similarity of two output sequences of equal length."""
    if len(ys1) != len(ys2):
        return False
    return all(cfg.similar(a, b) for a, b in zip(ys1, ys2))


def jointly_coverable(a: OutputValue, b: OutputValue, cfg: SimilarityConfig) -> bool:
    return cfg.jointly_coverable(a, b)
