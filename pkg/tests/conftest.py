import pytest

from hallfrac.construct import join, mycielski
from hallfrac.graph import complete_graph, cycle_graph, kneser_graph


@pytest.fixture(scope="session")
def c5():
    return cycle_graph(5)


@pytest.fixture(scope="session")
def c7():
    return cycle_graph(7)


@pytest.fixture(scope="session")
def petersen():
    return kneser_graph(5, 2)


@pytest.fixture(scope="session")
def grotzsch():
    return mycielski(cycle_graph(5))


@pytest.fixture(scope="session")
def join_c5_c7(c5, c7):
    return join(c5, c7)


@pytest.fixture(scope="session")
def k4():
    return complete_graph(4)
