"""Project-wide shared test fixtures.

The step budget variable of the environment is put out of the way for every
test, so that predictions use the default budget unless a test sets it.
"""

import pytest

from flippergame import build_graph, generate
from flippergame.utils import STEP_BUDGET_ENV


@pytest.fixture(autouse=True)
def clean_step_budget(monkeypatch):
    """Remove the step budget override from the environment."""
    monkeypatch.delenv(STEP_BUDGET_ENV, raising=False)


@pytest.fixture(scope='session')
def small_graphs():
    """A small corpus of graphs with their names.

    The corpus covers the empty graph, isolated vertices, paths, cycles, a
    grid, a clique, a star and a random tree.
    """

    return {
        'empty': build_graph(0, []),
        'isolated': build_graph(3, []),
        'edge': build_graph(2, [(0, 1)]),
        'path5': generate('path', n=5),
        'cycle6': generate('cycle', n=6),
        'grid3x3': generate('grid', rows=3, cols=3),
        'clique4': generate('clique', n=4),
        'star5': build_graph(6, [(0, i) for i in range(1, 6)]),
        'tree12': generate('random_tree', n=12, seed=7)
    }
