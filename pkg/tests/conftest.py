import pytest

from p6tau.grassmann import FrameMatrix, TauTable


@pytest.fixture(scope="session")
def frame():
    return FrameMatrix.vandermonde()


@pytest.fixture(scope="session")
def table2(frame):
    """Radius-2 table on the canonical frame, shared across tests."""
    return TauTable.build(frame, 2)


@pytest.fixture(scope="session")
def table1(frame):
    return TauTable.build(frame, 1)
