"""Tests of classifiers, raised partitions and the classifier search."""

import itertools

import numpy as np
import pytest

from flippergame import (
    validate_classifier, raised_partition, partition_from_five, canonize,
    search_classifier, build_graph, generate, VertexOrder, BudgetExceededError
)
from flippergame.classify import (
    complete_classifier, reselect_representatives, is_canonical,
    classifier_to_json, classifier_from_json
)
from flippergame.utils import StepCounter
from flippergame.verify import planted_classifier_graph


BLOBS = [frozenset([4 + 2 * i, 5 + 2 * i]) for i in range(6)]


@pytest.fixture(scope='module')
def planted():
    """A graph with a classifier of order two over six blobs.

    Vertex 0 sees no blob and vertex 1 sees the first vertex of every blob.
    Vertex 2 copies vertex 1, while vertex 3 copies vertex 0 except for an
    edge into the first blob.  The blobs are the pairs from 4 on.
    """

    edges = [(0, 1), (2, 3), (3, 4), (4, 5)]
    for blob in BLOBS:
        first = min(blob)
        edges.extend([(1, first), (2, first)])
        continue
    graph = build_graph(16, edges)
    classifier = complete_classifier(graph, BLOBS, [0, 1])
    assert classifier is not None
    return graph, classifier


def test_planted_classifier(planted):
    """Test the completed classifier and its raised partition."""

    graph, classifier = planted
    assert validate_classifier(graph, classifier) is None
    assert classifier.size == 6
    assert classifier.order == 2
    assert classifier.rep[2] == 1
    assert classifier.rep[3] == 0
    assert classifier.exc[3] == 0
    assert classifier.exc[2] is None
    assert classifier.exc[6] == 1

    raised = raised_partition(classifier)
    assert raised.parts == (
        frozenset([0, 3]) | frozenset(range(4, 16)), frozenset([1, 2])
    )
    assert raised.anchors == (0, 1)
    assert raised.part_of(2) == 1
    assert is_canonical(classifier)


def _with_reps(classifier, reps, remap=None):
    """Replace the representatives, remapping the representative map."""
    remap = remap or {}
    rep = {v: remap.get(s, s) for v, s in classifier.rep.items()}
    rep.update({s: s for s in reps})
    return classifier._replace(representatives=frozenset(reps), rep=rep)


def test_classifier_violations(planted):
    """Test that each condition is reported with its witness."""

    graph, classifier = planted

    res = validate_classifier(graph, classifier._replace(
        representatives=frozenset()
    ))
    assert res.condition == 'structure'

    res = validate_classifier(graph, _with_reps(classifier, [0, 1, 4]))
    assert (res.condition, res.witness) == ('a', (4, 0))

    res = validate_classifier(graph, _with_reps(classifier, [0, 3], {1: 3}))
    assert (res.condition, res.witness) == ('b', (3, 1))

    res = validate_classifier(graph, _with_reps(classifier, [0, 1, 2]))
    assert (res.condition, res.witness) == ('c', (1, 2, 0))

    exc = dict(classifier.exc)
    exc[6] = None
    res = validate_classifier(graph, classifier._replace(exc=exc))
    assert (res.condition, res.witness) == ('d', (6, 1))

    exc = dict(classifier.exc)
    exc[3] = None
    res = validate_classifier(graph, classifier._replace(exc=exc))
    assert (res.condition, res.witness) == ('e', (3, 0))


def test_partition_from_five_blobs(planted):
    """Test the recovery of the raised partition from any five blobs."""

    graph, classifier = planted
    raised = raised_partition(classifier)
    rng = np.random.default_rng(3)
    for five in itertools.combinations(classifier.blobs, 5):
        assert partition_from_five(graph, five) == raised

        order = VertexOrder([int(i) for i in rng.permutation(16)])
        shuffled = partition_from_five(graph, five, order=order)
        assert shuffled.parts == raised.parts
        assert [order.min(i) for i in shuffled.parts] == list(
            shuffled.anchors
        )
        continue


def test_partition_from_five_charges_steps(planted):
    """Test that each comparison with an anchor is charged five steps."""

    graph, classifier = planted
    counter = StepCounter()
    partition_from_five(graph, classifier.blobs[:5], counter=counter)
    assert counter.steps > 0
    assert counter.steps % 5 == 0


def test_partition_from_five_errors(planted):
    """Test the rejection of bad blob families."""

    graph, _ = planted
    with pytest.raises(ValueError):
        partition_from_five(graph, BLOBS[:4])
    with pytest.raises(ValueError):
        partition_from_five(graph, BLOBS[:4] + [frozenset([4, 0])])


@pytest.mark.parametrize('seed', range(5))
def test_partition_from_five_on_random_plants(seed):
    """Test the recovery on randomly planted classifiers."""

    rng = np.random.default_rng(seed)
    graph, blobs = planted_classifier_graph(rng, 6, 3, 4, 2)
    classifier = complete_classifier(graph, blobs, [0, 1, 2])
    assert classifier is not None
    assert validate_classifier(graph, classifier) is None
    parts = raised_partition(classifier).parts
    for five in itertools.combinations(blobs, 5):
        assert partition_from_five(graph, five).parts == parts
        continue


#
# Representatives
# ---------------
#


def test_reselection_and_canonization(planted):
    """Test choosing new representatives and canonizing back."""

    graph, classifier = planted
    moved = reselect_representatives(graph, classifier, [2, 3])
    assert moved.representatives == frozenset([2, 3])
    assert moved.size == 5
    assert validate_classifier(graph, moved) is None
    assert not is_canonical(moved)
    assert raised_partition(moved).parts == raised_partition(classifier).parts

    back = canonize(graph, moved)
    assert back.representatives == frozenset([0, 1])
    assert back.size == 5
    assert is_canonical(back)

    with pytest.raises(ValueError):
        reselect_representatives(graph, classifier, [0, 3])
    with pytest.raises(ValueError):
        reselect_representatives(graph, classifier, [0])


def test_complete_classifier_failures(planted):
    """Test completions that cannot give classifiers."""

    graph, _ = planted
    assert complete_classifier(graph, BLOBS, [0, 4]) is None
    assert complete_classifier(graph, BLOBS, [0, 3]) is None
    assert complete_classifier(graph, BLOBS, []) is None
    assert complete_classifier(graph, BLOBS, [1]) is None
    with pytest.raises(ValueError):
        complete_classifier(graph, [[4, 5], [5, 6]], [0])


#
# Search
# ------
#


def test_classifier_search(planted):
    """Test that the search finds the canonical planted classifier."""

    graph, classifier = planted
    found = search_classifier(graph, BLOBS)
    assert found is not None
    assert found.size == 6
    assert found.representatives == frozenset([0, 1])
    assert validate_classifier(graph, found) is None
    assert raised_partition(found) == raised_partition(classifier)

    assert search_classifier(graph, BLOBS[:4]) is None


def test_classifier_search_caps(planted):
    """Test the limits of the exhaustive search."""

    graph, _ = planted
    with pytest.raises(BudgetExceededError):
        search_classifier(generate('path', n=17), [[0], [2]])
    with pytest.raises(BudgetExceededError):
        search_classifier(graph, [[i] for i in range(4, 13)])
    with pytest.raises(BudgetExceededError):
        search_classifier(graph, BLOBS, max_order=4)
    with pytest.raises(BudgetExceededError):
        search_classifier(graph, BLOBS, node_cap=1)
    with pytest.raises(ValueError):
        search_classifier(graph, [[4, 5], [5, 6]])


def test_classifier_json(planted):
    """Test the JSON form of classifiers."""

    _, classifier = planted
    data = classifier_to_json(classifier)
    assert data['S'] == [0, 1]
    assert data['blobs'][0] == [4, 5]
    assert classifier_from_json(data) == classifier
    with pytest.raises(ValueError):
        classifier_from_json({'S': [0]})
