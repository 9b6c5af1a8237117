from __future__ import annotations

from fractions import Fraction

import pytest

from nilrad import catalog
from nilrad.algebra import instantiate

ACCEPTANCE: dict[int, str] = {}


def law(name: str, value=None):
    e = catalog.get(name)
    return instantiate(e.law, Fraction(value)) if e.parametric else e.law


@pytest.fixture
def g117():
    return law("1.17")


@pytest.fixture
def g22():
    return law("2.2")


@pytest.fixture
def h3():
    return law("h3")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
