"""Tests of flips, flip sets and S-classes."""

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from flippergame import (
    AtomicFlip, NO_OP_FLIP, flip_set, apply_flip_set, compose_flip_sets,
    s_classes, enumerate_partition_flips, is_partition_flip_of,
    isolating_flips, induced_subgraph, build_graph, generate,
    BudgetExceededError
)
from flippergame.flips import (
    apply_atomic_flip, flip_set_to_json, flip_set_from_json,
    normalize_partition, check_partition, partition_flip_pairs,
    partition_flip_witness
)

from graph_strategies import graphs, graphs_with_flips, vertex_sets


def test_atomic_flips_are_unordered_pairs():
    """Test that the two sides of an atomic flip are interchangeable."""

    assert AtomicFlip([1, 2], [0]) == AtomicFlip([0], [2, 1])
    assert hash(AtomicFlip([1, 2], [0])) == hash(AtomicFlip([0], [1, 2]))
    assert AtomicFlip([3], [0]).a == (0,)
    assert NO_OP_FLIP.is_no_op
    assert AtomicFlip([1], []).is_no_op
    with pytest.raises(ValueError):
        AtomicFlip([-1], [0])


def test_atomic_flip_on_path():
    """Test a single flip between two sets of a path."""

    path = generate('path', n=4)
    flipped = apply_atomic_flip(path, AtomicFlip([0, 1], [1, 2]))
    # 0-1 and 1-2 removed, 0-2 added, 1 keeps no loop.
    assert sorted(flipped.edges()) == [(0, 2), (2, 3)]


def test_flips_ignore_dead_vertices():
    """Test that flips over dead vertices of an arena leave it alone."""

    path = generate('path', n=4)
    arena = induced_subgraph(path, [0, 1])
    assert apply_flip_set(arena, flip_set([([0], [2, 3])])) == arena
    flipped = apply_flip_set(arena, flip_set([([0], [1, 2])]))
    assert flipped.vertices == (0, 1)
    assert not flipped.adjacent(0, 1)


def test_flip_sets_cancel_in_pairs():
    """Test that repeated atomic flips cancel out."""

    flips = flip_set([([0], [1]), ([1], [0]), ([2], [3])])
    assert flips == frozenset([AtomicFlip([2], [3])])
    assert compose_flip_sets(flips, flips) == frozenset()


@settings(deadline=None)
@given(graphs_with_flips(max_n=12))
def test_flip_sets_are_involutions(data):
    """Test that applying a flip set twice gives back the graph."""
    graph, flips = data
    assert apply_flip_set(apply_flip_set(graph, flips), flips) == graph


@settings(deadline=None)
@given(graphs_with_flips(max_n=12), st.randoms(use_true_random=False))
def test_flip_order_does_not_matter(data, rnd):
    """Test that atomic flips applied one by one in any order agree."""

    graph, flips = data
    ordered = sorted(flips)
    rnd.shuffle(ordered)
    res = graph
    for flip in ordered:
        res = apply_atomic_flip(res, flip)
        continue
    assert res == apply_flip_set(graph, flips)


@settings(deadline=None)
@given(graphs_with_flips(max_n=12, n_flip_sets=2))
def test_flip_sets_compose_by_symmetric_difference(data):
    """Test that successive flip sets compose into their difference."""
    graph, first, second = data
    assert apply_flip_set(apply_flip_set(graph, first), second) == (
        apply_flip_set(graph, compose_flip_sets(first, second))
    )


@settings(deadline=None)
@given(graphs_with_flips(max_n=12), st.data())
def test_flips_commute_with_restriction(data, draw):
    """Test that flipping then restricting is restricting then flipping."""
    graph, flips = data
    subset = draw.draw(vertex_sets(graph.n))
    assert induced_subgraph(apply_flip_set(graph, flips), subset) == (
        apply_flip_set(induced_subgraph(graph, subset), flips)
    )


def test_flip_set_json():
    """Test the JSON form of flip sets."""

    flips = flip_set([([2, 1], [0]), ([3], [3])])
    data = flip_set_to_json(flips)
    assert data == [{'A': [0], 'B': [1, 2]}, {'A': [3], 'B': [3]}]
    assert flip_set_from_json(data) == flips
    with pytest.raises(ValueError):
        flip_set_from_json([{'A': [0]}])


#
# Partitions and S-classes
# ------------------------
#


def test_partition_checks(small_graphs):
    """Test the validation of partitions."""

    path = small_graphs['path5']
    parts = normalize_partition([[3, 4], [], [0, 1, 2]])
    assert parts == (frozenset([0, 1, 2]), frozenset([3, 4]))
    check_partition(path, parts)
    with pytest.raises(ValueError):
        check_partition(path, [[0, 1], [1, 2, 3, 4]])
    with pytest.raises(ValueError):
        check_partition(path, [[0, 1], [2, 3]])


def test_s_classes_of_a_star(small_graphs):
    """Test the S-classes of a star with S the centre and a leaf."""

    classes = s_classes(small_graphs['star5'], [0, 1])
    assert classes.parts == (
        frozenset([0]), frozenset([1]), frozenset([2, 3, 4, 5])
    )
    assert classes.part_of[4] == 2


@settings(deadline=None)
@given(graphs(min_n=1, max_n=12), st.data())
def test_s_class_count(graph, data):
    """Test that there are at most |S| + 2^|S| S-classes."""
    s = data.draw(vertex_sets(graph.n, max_size=4))
    assert len(s_classes(graph, s).parts) <= len(s) + 2 ** len(s)


def _random_p_flip(draw, parts):
    pairs = partition_flip_pairs(parts, cap=len(parts))
    chosen = draw.draw(st.lists(
        st.booleans(), min_size=len(pairs), max_size=len(pairs)
    ))
    return frozenset(p for p, c in zip(pairs, chosen) if c)


@settings(deadline=None)
@given(graphs(min_n=1, max_n=10), st.data())
def test_s_flips_keep_classes_together(graph, data):
    """Test that every S-class stays inside an S-class after an S-flip."""

    s = data.draw(vertex_sets(graph.n, max_size=3))
    classes = s_classes(graph, s).parts
    flipped = apply_flip_set(graph, _random_p_flip(data, classes))
    after = s_classes(flipped, s).parts
    assert all(any(part <= i for i in after) for part in classes)


def test_s_flips_can_merge_classes():
    """Test that an S-flip may merge S-classes."""

    graph = build_graph(3, [(0, 1)])
    assert len(s_classes(graph, [0]).parts) == 3
    flipped = apply_flip_set(graph, flip_set([([0], [1])]))
    assert s_classes(flipped, [0]).parts == (frozenset([0]), frozenset([1, 2]))


@settings(deadline=None)
@given(graphs(min_n=1, max_n=10), st.data())
def test_s_flips_are_transitive(graph, data):
    """Test that an S-flip followed by a T-flip is an (S + T)-flip."""

    s = data.draw(vertex_sets(graph.n, max_size=2))
    t = data.draw(vertex_sets(graph.n, max_size=2))
    first = apply_flip_set(
        graph, _random_p_flip(data, s_classes(graph, s).parts)
    )
    second = apply_flip_set(
        first, _random_p_flip(data, s_classes(first, t).parts)
    )
    assert is_partition_flip_of(graph, second, s_classes(graph, s | t).parts)


@settings(deadline=None)
@given(graphs(min_n=1, max_n=10), st.data())
def test_s_flips_are_hereditary(graph, data):
    """Test that restricted S-flips are S-flips of the restriction."""

    s = data.draw(vertex_sets(graph.n, max_size=3))
    x = s | data.draw(vertex_sets(graph.n))
    flipped = apply_flip_set(
        graph, _random_p_flip(data, s_classes(graph, s).parts)
    )
    sub = induced_subgraph(graph, x)
    assert is_partition_flip_of(
        sub, induced_subgraph(flipped, x), s_classes(sub, s).parts
    )


def test_partition_flip_enumeration():
    """Test that all P-flips are enumerated once, the empty one first."""

    parts = [[0, 1], [2], [3]]
    flips = list(enumerate_partition_flips(parts))
    assert len(flips) == 2 ** 6
    assert len(set(flips)) == 2 ** 6
    assert flips[0] == frozenset()
    with pytest.raises(BudgetExceededError):
        list(enumerate_partition_flips([[i] for i in range(6)]))


def test_partition_flip_witness(small_graphs):
    """Test recovering the P-flip between two graphs."""

    cycle = small_graphs['cycle6']
    parts = normalize_partition([[0, 1, 2], [3, 4, 5]])
    for flips in itertools.islice(enumerate_partition_flips(parts), 20):
        flipped = apply_flip_set(cycle, flips)
        witness = partition_flip_witness(cycle, flipped, parts)
        assert apply_flip_set(cycle, witness) == flipped
        continue

    other = apply_flip_set(cycle, flip_set([([0], [3])]))
    assert partition_flip_witness(cycle, other, parts) is None
    assert not is_partition_flip_of(cycle, other, parts)


#
# Isolation
# ---------
#


@settings(deadline=None)
@given(graphs(min_n=1, max_n=12), st.data())
def test_isolating_flips_isolate(graph, data):
    """Test that the isolating flips leave the vertices isolated."""

    vertices = data.draw(vertex_sets(graph.n))
    flipped = apply_flip_set(graph, isolating_flips(graph, vertices))
    assert all(flipped.is_isolated(i) for i in vertices)
