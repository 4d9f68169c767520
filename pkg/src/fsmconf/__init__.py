"""Threshold-based conformance testing for finite state machines.

Outputs are compared with a similarity relation (a metric and a threshold)
instead of equality.  State identifiers are chosen to *strongly* separate
specification states, which keeps HSI-style test suites m-complete.
"""
from .fsm import (Fsm, FsmError, Real, Symbol, Transition, apply, disjoint_union,
                  load_fsm, parse_fsm, serialize_fsm, validate)
from .similarity import (DiscreteMetric, ThermostatMetric, distance, jointly_coverable,
                         make_config, similar, similar_seq)
from .separability import (WitnessTable, ball, compute_witnesses, identification_sets,
                           remove_prefixes, separates, state_cover, strongly_separates)
from .product import DiffSets, ProductMachine, Verdict, conforms, diff_sets, product
from .testgen import SuiteVerdict, TestSuite, format_suite, hsi_generate, parse_suite, run_suite

__version__ = "0.1.0"
