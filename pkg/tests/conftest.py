import pytest

from fsmconf import fixtures
from fsmconf.similarity import DiscreteMetric, ThermostatMetric


@pytest.fixture
def spec():
    return fixtures.specification()


@pytest.fixture
def impl0():
    return fixtures.implementation0()


@pytest.fixture
def impl1():
    return fixtures.implementation1()


@pytest.fixture
def t05():
    return ThermostatMetric(0.5)


@pytest.fixture
def t01():
    return ThermostatMetric(0.1)


@pytest.fixture
def discrete():
    return DiscreteMetric()


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::" in nodeid and rep.when == "call":
                name = nodeid.split("::")[-1]
                lines.append((name, "PASS" if outcome == "passed" else "FAIL",
                              getattr(rep, "duration", 0.0)))
    if lines:
        terminalreporter.section("acceptance criteria")
        for name, verdict, dur in sorted(lines):
            terminalreporter.write_line(f"{verdict}  {name}  ({dur:.2f}s)")
