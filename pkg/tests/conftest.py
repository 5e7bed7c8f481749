import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def base_table():
    from nonpisot.correlation import base_system_solve
    return base_system_solve()


@pytest.fixture(scope="session")
def table10(base_table):
    from nonpisot.correlation import extend_table
    return extend_table(base_table, 10.0)


@pytest.fixture(scope="session")
def patch7():
    from nonpisot.inflation import geometric_patch
    return geometric_patch(7)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import IDS, LINES
    except ImportError:
        return
    if LINES:
        terminalreporter.section("acceptance criteria")
        for cid in IDS:
            if cid in LINES:
                terminalreporter.write_line(LINES[cid])
