"""Hypothesis strategies for graphs, flips and vertex sets."""

import itertools

from hypothesis import strategies as st

from flippergame import AtomicFlip, build_graph, flip_set


@st.composite
def graphs(draw, min_n=0, max_n=12):
    """Draw a graph on vertices 0 to n - 1 with arbitrary edges."""
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return build_graph(n, [p for p, c in zip(pairs, chosen) if c])


def vertex_sets(n, max_size=None):
    """Draw subsets of the vertices 0 to n - 1."""
    if n == 0:
        return st.just(frozenset())
    return st.frozensets(
        st.integers(min_value=0, max_value=n - 1), max_size=max_size
    )


@st.composite
def flip_sets(draw, n, max_flips=4):
    """Draw a flip set over the vertices 0 to n - 1."""
    flips = draw(st.lists(
        st.tuples(vertex_sets(n), vertex_sets(n)), max_size=max_flips
    ))
    return flip_set(AtomicFlip(a, b) for a, b in flips)


@st.composite
def graphs_with_flips(draw, min_n=0, max_n=12, n_flip_sets=1):
    """Draw a graph together with flip sets over its vertices."""
    graph = draw(graphs(min_n=min_n, max_n=max_n))
    flips = [draw(flip_sets(graph.n)) for _ in range(n_flip_sets)]
    return (graph, *flips)


@st.composite
def graphs_with_subset(draw, min_n=1, max_n=12, max_size=None):
    """Draw a graph with a subset of its vertices."""
    graph = draw(graphs(min_n=min_n, max_n=max_n))
    return graph, draw(vertex_sets(graph.n, max_size=max_size))
