from __future__ import annotations

import json
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from qcotangent.scalars import Field
from qcotangent.tensor import TensorOp

FIXTURES = Path(__file__).parent / "fixtures"

settings.register_profile("default", deadline=None, max_examples=30,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def load_fixture(name: str) -> dict:
    return json.loads((FIXTURES / name).read_text())


def fixture_matrix(data: dict, key: str, field: Field, legs: int) -> TensorOp:
    """Fixture entries are text in q; parse them into the field."""
    n = data["n"]
    ent = {}
    for rc, text in data[key].items():
        r, c = (int(x) for x in rc.split(","))
        ent[(r, c)] = field.parse(text)
    return TensorOp(n, legs, ent, field.one)


@pytest.fixture(scope="session")
def f2():
    return Field(2)


@pytest.fixture(scope="session")
def f3():
    return Field(3)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
