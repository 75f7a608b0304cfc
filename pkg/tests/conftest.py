import pathlib
import random

import pytest

from gentlekit import from_ribbon, load_gentle, random_marked_ribbon_graph, to_ribbon

FIXTURES = pathlib.Path(__file__).parent / "fixtures"

# declaration order of arrows in these files is load bearing: it pins the
# half-edge orders and therefore every frozen value downstream
FIXTURE_NAMES = (
    "loop", "tree", "smallrow2", "nonpalin",
    "amiot0", "amiot1", "amiot2", "twosided", "sixvertex",
)


def fixture_text(name):
    return (FIXTURES / ("%s.quiver" % name)).read_text()


def load_fixture(name):
    return load_gentle(fixture_text(name))


@pytest.fixture(scope="session")
def quivers():
    return {name: load_fixture(name) for name in FIXTURE_NAMES}


@pytest.fixture(scope="session")
def ribbons(quivers):
    return {name: to_ribbon(gq) for name, gq in quivers.items()}


@pytest.fixture(scope="session")
def random_pool():
    """500 random marked ribbon graphs plus their quivers, fixed seed."""
    rng = random.Random(20260814)
    pool = []
    kinds = ("any", "tree", "odd1cycle")
    for k in range(500):
        g = random_marked_ribbon_graph(rng, kind=kinds[k % 3])
        pool.append((g, from_ribbon(g)))
    return pool
