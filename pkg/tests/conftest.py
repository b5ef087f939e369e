from __future__ import annotations

from pathlib import Path

import pytest

import upsetlat
from upsetlat import io

DATA = Path(upsetlat.__file__).parent / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def fig1_l():
    return io.load_lattice(DATA / "fig1_l.lattice")


@pytest.fixture(scope="session")
def fig1_l0():
    return io.load_lattice(DATA / "fig1_l0.lattice")


@pytest.fixture(scope="session")
def fig2_x():
    return io.load_poset(DATA / "fig2_x.poset")


@pytest.fixture(scope="session")
def fig2_g():
    return io.load_operator(DATA / "fig2_g.monop")


@pytest.fixture(scope="session")
def fig3_g1():
    return io.load_operator(DATA / "fig3_g1.monop")


def pytest_collection_modifyitems(session, config, items):
    """Run the acceptance suite last so its disagreement count covers everything."""
    items.sort(key=lambda item: item.fspath.basename == "test_acceptance.py")


def pytest_sessionfinish(session, exitstatus):
    from upsetlat.errors import InternalDisagreement

    if InternalDisagreement.raised:
        print(f"\nInternalDisagreement raised {InternalDisagreement.raised} times")
        session.exitstatus = 1
