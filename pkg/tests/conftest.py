from fractions import Fraction

import pytest

from metaising import EnergyParams, complete_bipartite, complete_graph


@pytest.fixture(scope="session")
def k4():
    return complete_graph(4)


@pytest.fixture(scope="session")
def k33():
    return complete_bipartite(3, 3)


@pytest.fixture(scope="session")
def params_half():
    return EnergyParams(h=Fraction(1, 2))
