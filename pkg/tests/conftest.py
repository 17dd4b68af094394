from pathlib import Path

import pytest

from zeig.tensor import parse_tensor

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def fixture_path(name):
    return FIXTURES / name


def load_fixture(name):
    return parse_tensor(fixture_path(name).read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def example1():
    return load_fixture("example1.json")


@pytest.fixture(scope="session")
def example2():
    return load_fixture("example2.json")


@pytest.fixture(scope="session")
def diag123_m3():
    return load_fixture("diagonal_123_m3.json")


@pytest.fixture(scope="session")
def zero_m2_n2():
    return load_fixture("zero_m2_n2.json")


@pytest.fixture(scope="session")
def rank_one():
    return load_fixture("rank_one_m4_n2.json")
