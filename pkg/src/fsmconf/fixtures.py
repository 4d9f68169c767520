"""The discretised thermostat: a specification and two implementations."""
from importlib import resources

from .fsm import Fsm, parse_fsm

NAMES = ("specification", "implementation0", "implementation1")


def fixture_text(name: str) -> str:
    return resources.files(__package__).joinpath(f"data/{name}.fsm").read_text(encoding="utf-8")


def fixture_path(name: str):
    return resources.files(__package__).joinpath(f"data/{name}.fsm")


def specification() -> Fsm:
    return parse_fsm(fixture_text("specification"))


def implementation0() -> Fsm:
    return parse_fsm(fixture_text("implementation0"))


def implementation1() -> Fsm:
    return parse_fsm(fixture_text("implementation1"))
