"""Shared fixtures: the worked solutions stored under fixtures/."""

from pathlib import Path

import pytest

from ybsolve.ybs_format import read_ybs

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def fixture_path(name: str) -> str:
    return str(FIXTURES / name)


@pytest.fixture
def three():
    return read_ybs(fixture_path("three.ybs"))


@pytest.fixture
def gap():
    return read_ybs(fixture_path("gap12.ybs"))


@pytest.fixture(scope="session")
def jump():
    return read_ybs(fixture_path("jump26.ybs"))
