"""Predictable flip-wideness.

For a radius r, :py:func:`fw_oracle` takes a vertex set X of a small graph and
finds a subset Y with a flip set F making Y distance-r independent, with the
flips chosen so carefully that :py:func:`predict` recomputes F from any five
vertices of Y alone.  The oracle replaces the existential classifier of the
general construction by an exhaustive classifier search, so it only runs on
graphs of at most 16 vertices, while the predictor runs on any graph in
quadratic time.
"""

import itertools
import logging
import typing
import warnings

from .classify import (
    RaisedPartition, search_classifier, raised_partition,
    partition_from_five, MAX_SEARCH_VERTICES, MAX_SEARCH_BALLS
)
from .flips import (
    AtomicFlip, FlipSet, EMPTY_FLIPS, apply_flip_set, compose_flip_sets,
    isolating_flips, check_partition
)
from .graph import (
    Graph, VertexSet, VertexOrder, as_order, ball_mask, distance,
    is_distance_independent
)
from .utils import (
    BudgetExceededError, StepCounter, mask_of, set_of_mask,
    step_budget_factor_from_env
)


logger = logging.getLogger(__name__)


#
# Configuration
# -------------
#


class PredictConfig(typing.NamedTuple):
    """Configuration of the predictor.

    The step budget of a prediction on a graph of n live vertices is
    ``step_budget_factor * n ** 2`` adjacency-row operations.  When
    ``max_flips`` is given, larger predictions are dropped as well.
    """

    radius: int
    order: VertexOrder = VertexOrder()
    step_budget_factor: int = 64
    max_flips: typing.Optional[int] = None


def predict_config(
        radius: int, order=None, step_budget_factor=None, max_flips=None
) -> PredictConfig:
    """Form a validated predictor configuration.

    The step budget factor defaults to the value in the environment variable
    ``FLIPPER_STEP_BUDGET``, or 64.
    """

    if radius < 0:
        raise ValueError('Invalid radius', radius, 'expecting non-negative')
    if step_budget_factor is None:
        step_budget_factor = step_budget_factor_from_env()
    if step_budget_factor < 1:
        raise ValueError(
            'Invalid step budget factor', step_budget_factor,
            'expecting a positive integer'
        )
    if max_flips is not None and max_flips < 0:
        raise ValueError(
            'Invalid flip cap', max_flips, 'expecting non-negative'
        )
    return PredictConfig(
        radius=radius, order=as_order(order),
        step_budget_factor=step_budget_factor, max_flips=max_flips
    )


def inner_radius(r: int) -> int:
    """The radius of the balls used at radius r, ceil(r / 2) - 1."""
    return (r + 1) // 2 - 1


#
# Cells and flip constructions
# ----------------------------
#


class QPartition(typing.NamedTuple):
    """Refinement of a raised partition by neighbourhoods in S.

    The cell keyed ``(s, U)`` holds the vertices in the part of ``s`` whose
    neighbourhood inside S is ``U``.  Only non-empty cells are kept.
    """

    cells: typing.Dict[typing.Tuple[int, VertexSet], VertexSet]
    s: VertexSet
    s_prime: VertexSet


def q_partition(
        graph: Graph, partition: RaisedPartition, s, s_prime
) -> QPartition:
    """Refine a raised partition anchored at S by neighbourhoods in S."""

    s = frozenset(s)
    s_prime = frozenset(s_prime)
    if frozenset(partition.anchors) != s:
        raise ValueError(
            'Invalid partition for cell refinement', partition.anchors,
            'expecting anchors equal to', sorted(s)
        )
    if not s_prime <= s:
        raise ValueError(
            'Invalid subset of representatives', sorted(s_prime),
            'expecting a subset of', sorted(s)
        )
    check_partition(graph, partition.parts)

    s_mask = mask_of(s)
    cells = {}
    for part, anchor in zip(partition.parts, partition.anchors):
        for v in part:
            key = (anchor, graph.row(v) & s_mask)
            cells[key] = cells.get(key, 0) | 1 << v
            continue
        continue

    return QPartition(
        cells={
            (anchor, set_of_mask(trace)): set_of_mask(members)
            for (anchor, trace), members in cells.items()
        },
        s=s, s_prime=s_prime
    )


def _cell_pairs(q: QPartition, order: VertexOrder):
    """Pairs of cells with the first minimum not after the second minimum."""
    items = sorted(q.cells.items(), key=lambda x: order.key(order.min(x[1])))
    for i, first in enumerate(items):
        for second in items[i:]:
            yield first, second
            continue
        continue


def flips_odd_case(q: QPartition, order=None) -> FlipSet:
    """Flips between cells of anchors in S' where one sees the other."""

    order = as_order(order)
    s_prime = q.s_prime
    flips = []
    for ((s1, u1), c1), ((s2, u2), c2) in _cell_pairs(q, order):
        if s1 in s_prime and s2 in s_prime and (s1 in u2 or s2 in u1):
            flips.append(AtomicFlip(c1, c2))
        continue
    return frozenset(flips)


def flips_even_case(q: QPartition, order=None) -> FlipSet:
    """Flips between cells where an anchor in S' sees the other cell."""

    order = as_order(order)
    s_prime = q.s_prime
    flips = []
    for ((s1, u1), c1), ((s2, u2), c2) in _cell_pairs(q, order):
        if (s1 in s_prime and s1 in u2) or (s2 in s_prime and s2 in u1):
            flips.append(AtomicFlip(c1, c2))
        continue
    return frozenset(flips)


def _case_flips(r, q, order):
    """Dispatch to the odd or the even construction by the radius."""
    return flips_odd_case(q, order) if r % 2 == 1 else flips_even_case(q, order)


def _adjacent_to_all(graph: Graph, s: VertexSet, masks) -> VertexSet:
    """The vertices of s adjacent to every given blob."""
    return frozenset(
        i for i in s if all(graph.row(i) & m for m in masks)
    )


#
# The predictor
# -------------
#


def predict(
        graph: Graph, config: PredictConfig, z: typing.Iterable[int],
        stats=None
) -> FlipSet:
    """Predict the flip set from five vertices.

    The flip set is built level by level from radius one up to the configured
    radius.  At each level, the prediction of the previous level is applied,
    then

    - when Z is not distance-(r - 1) independent, the prediction is empty;

    - when Z is already distance-r independent, the previous prediction is
      kept;

    - otherwise the raised partition is recovered from the five balls of
      radius ``ceil(r / 2) - 1`` around Z, refined into cells by
      neighbourhoods in its anchors, and the odd or even flip construction
      is added to the previous prediction.

    Radius zero and fewer than five vertices give the empty flip set, and
    only the five smallest vertices are used when more are given.  The empty
    flip set is also returned when the step budget or the flip cap is
    exceeded, or when some vertex of Z is not live.

    Parameters
    ----------

    graph
        The graph, which is never flipped by the caller beforehand.

    config
        The predictor configuration.

    z
        The vertices.

    stats
        For developers, when a mutable mapping is given, the keys ``steps``,
        ``outcome`` and ``levels`` are set in it.

    """

    order = config.order
    order.check(graph)
    z = set(z)

    outcome, flips, counter, empty_levels = _predict(graph, config, z)
    if outcome != 'ok':
        logger.debug(
            'Empty prediction at radius %d for %s: %s',
            config.radius, sorted(z), outcome
        )
    if stats is not None:
        stats['steps'] = counter.steps
        stats['outcome'] = outcome
        stats['levels'] = config.radius
        stats['empty_levels'] = empty_levels
    return flips


def _predict(graph, config, z):
    """Run the prediction.

    The outcome tag, the flips, the step counter and the levels that took the
    empty branch are returned.
    """

    n = max(graph.order, 1)
    counter = StepCounter(config.step_budget_factor * n * n)
    empty_levels = []

    if config.radius == 0:
        return 'radius_zero', EMPTY_FLIPS, counter, empty_levels
    if not all(isinstance(v, int) and 0 <= v < graph.n for v in z):
        return 'dead_vertex', EMPTY_FLIPS, counter, empty_levels
    z = config.order.sorted(z)[:5]
    if not all(v in graph for v in z):
        return 'dead_vertex', EMPTY_FLIPS, counter, empty_levels
    if len(z) < 5:
        return 'too_few', EMPTY_FLIPS, counter, empty_levels

    flips = EMPTY_FLIPS
    bound = 0
    try:
        for level in range(1, config.radius + 1):
            res, n_cells = _predict_level(
                graph, level, z, config.order, counter, flips
            )
            if res is None:
                empty_levels.append(level)
                res = EMPTY_FLIPS
            flips = res
            bound += max(4, n_cells ** 2) if n_cells is not None else 0
            continue
    except BudgetExceededError:
        return 'budget', EMPTY_FLIPS, counter, empty_levels

    assert len(flips) <= bound or not flips
    if config.max_flips is not None and len(flips) > config.max_flips:
        return 'flip_cap', EMPTY_FLIPS, counter, empty_levels
    if empty_levels and empty_levels[-1] == config.radius:
        return 'empty_level', flips, counter, empty_levels
    return 'ok', flips, counter, empty_levels


def _predict_level(graph, r, z, order, counter, prev):
    """One level of the prediction, with the number of cells if refined.

    The flips are None when the vertices are too close at the level, the
    level then gives no flips.
    """

    flipped = apply_flip_set(graph, prev, counter)
    if not is_distance_independent(flipped, z, r - 1, counter):
        return None, None
    if is_distance_independent(flipped, z, r, counter):
        return prev, None

    radius = inner_radius(r)
    masks = [ball_mask(flipped, i, radius, counter) for i in z]
    union = 0
    for mask in masks:
        if union & mask:
            return None, None
        union |= mask
        continue

    partition = partition_from_five(
        flipped, [set_of_mask(i) for i in masks], order, counter
    )
    s = frozenset(partition.anchors)
    s_prime = _adjacent_to_all(flipped, s, masks)
    counter.charge(flipped.order + len(s))
    q = q_partition(flipped, partition, s, s_prime)

    new_flips = _case_flips(r, q, order)
    counter.charge(len(new_flips))
    return compose_flip_sets(prev, new_flips), len(q.cells)


#
# The oracle
# ----------
#


def fw_oracle(
        graph: Graph, config: PredictConfig, x: typing.Iterable[int],
        min_size=5, stats=None
) -> typing.Optional[typing.Tuple[VertexSet, FlipSet]]:
    """Find a distance-r independent subset after flips, predictably.

    Level by level, balls of radius ``ceil(r / 2) - 1`` are taken around the
    current subset in the graph flipped so far, a canonical classifier over
    them is searched for, and the largest subfamily of its blobs whose
    centres are pairwise at distance greater than r, or pairwise at distance
    exactly r, is kept.  Far centres need no new flips, close centres get the
    odd or even flip construction over the cells of the classifier, or plain
    isolation when fewer than five are left.

    The subset at each level keeps at most eight vertices, the smallest ones,
    and must keep at least ``min_size`` of them, otherwise None is returned.
    Only graphs of at most 16 live vertices are accepted.
    """

    if graph.order > MAX_SEARCH_VERTICES:
        raise BudgetExceededError('oracle vertex count', MAX_SEARCH_VERTICES)

    order = config.order
    order.check(graph)
    y = order.sorted(set(x))
    graph.check_vertices(y)

    flips = EMPTY_FLIPS
    cases = []
    for level in range(1, config.radius + 1):
        res = _fw_level(graph, level, y, flips, order, min_size)
        if res is None:
            if stats is not None:
                stats['cases'] = cases
                stats['outcome'] = 'none'
            return None
        y, flips, case = res
        cases.append(case)
        continue

    if stats is not None:
        stats['cases'] = cases
        stats['outcome'] = 'ok'
    return frozenset(y), flips


def _fw_level(graph, r, y_prev, f_prev, order, min_size):
    """One level of the oracle, None when the subset gets too small."""

    flipped = apply_flip_set(graph, f_prev)
    if len(y_prev) > MAX_SEARCH_BALLS:
        warnings.warn(
            'Oracle subset of {} vertices cut to the smallest {}'.format(
                len(y_prev), MAX_SEARCH_BALLS
            )
        )
        y_prev = y_prev[:MAX_SEARCH_BALLS]

    radius = inner_radius(r)
    balls = [
        set_of_mask(ball_mask(flipped, i, radius)) for i in y_prev
    ]
    classifier = search_classifier(
        flipped, balls, order, min_size=min_size
    )
    if classifier is None:
        return None

    centres = [y_prev[balls.index(i)] for i in classifier.blobs]
    picked = _pick_homogeneous(flipped, centres, r, min_size)
    if picked is None:
        return None
    idxs, far = picked
    y = order.sorted(centres[i] for i in idxs)

    if far:
        case = 'far'
        new_flips = EMPTY_FLIPS
    elif len(y) < 5:
        case = 'isolate'
        new_flips = isolating_flips(flipped, y)
    else:
        case = 'odd' if r % 2 == 1 else 'even'
        masks = [mask_of(classifier.blobs[i]) for i in idxs]
        s = classifier.representatives
        q = q_partition(
            flipped, raised_partition(classifier), s,
            _adjacent_to_all(flipped, s, masks)
        )
        new_flips = _case_flips(r, q, order)

    flips = compose_flip_sets(f_prev, new_flips)
    assert is_distance_independent(apply_flip_set(graph, flips), y, r)
    return y, flips, case


def _pick_homogeneous(graph, centres, r, min_size):
    """Find the largest set of centres pairwise far or pairwise at distance r.

    The centres are pairwise at distance at least r already.  The indices of
    the first largest such set are returned with whether it is the far kind.
    """

    n = len(centres)
    dists = {
        (i, j): distance(graph, centres[i], centres[j])
        for i, j in itertools.combinations(range(n), 2)
    }
    for size in range(n, max(min_size, 1) - 1, -1):
        for idxs in itertools.combinations(range(n), size):
            pairs = [dists[i] for i in itertools.combinations(idxs, 2)]
            if all(i > r for i in pairs):
                return idxs, True
            if all(i == r for i in pairs):
                return idxs, False
            continue
        continue
    return None
