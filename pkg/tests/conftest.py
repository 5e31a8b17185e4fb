"""Shared fixtures and the hypothesis profile for the suite."""

import hypothesis
import pytest

from qexpand.ring import RatFun, SymbolTable

hypothesis.settings.register_profile("suite", max_examples=50, deadline=None)
hypothesis.settings.load_profile("suite")


@pytest.fixture(scope="session")
def table():
    return SymbolTable(("q", "a", "b"))


@pytest.fixture(scope="session")
def qab(table):
    return tuple(RatFun.sym(table, nm) for nm in ("q", "a", "b"))
