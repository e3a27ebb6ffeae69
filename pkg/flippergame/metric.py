"""The flip metric over a partition.

Two vertex sets are r-separated over a partition P when some P-flip of the
graph has no path of length at most r between them.  The flip distance of two
vertices is the largest distance they get over all P-flips, and flip balls
collect the vertices within flip distance r.  Everything is computed by
exhaustive enumeration of the P-flips, so only small partitions are accepted.
"""

import functools
import typing

from .flips import (
    FlipSet, Partition, DEFAULT_PARTITION_CAP, normalize_partition,
    check_partition, s_classes, enumerate_partition_flip_graphs
)
from .graph import (
    Graph, VertexSet, VertexOrder, INF, as_order, ball_mask, distance,
    sets_within
)
from .utils import set_of_mask


class SeparationQuery(typing.NamedTuple):
    """A graph with a partition of its live vertices and a radius."""

    graph: Graph
    parts: Partition
    radius: int
    cap: int = DEFAULT_PARTITION_CAP


def separation_query(
        graph: Graph, parts, radius: int, cap=DEFAULT_PARTITION_CAP
) -> SeparationQuery:
    """Form a validated separation query."""

    if radius < 0:
        raise ValueError('Invalid radius', radius, 'expecting non-negative')
    parts = normalize_partition(parts)
    check_partition(graph, parts)
    return SeparationQuery(graph=graph, parts=parts, radius=radius, cap=cap)


def s_class_query(
        graph: Graph, s, radius: int, cap=DEFAULT_PARTITION_CAP
) -> SeparationQuery:
    """Form a separation query over the S-classes of a vertex set."""

    if radius < 0:
        raise ValueError('Invalid radius', radius, 'expecting non-negative')
    return SeparationQuery(
        graph=graph, parts=s_classes(graph, s).parts, radius=radius, cap=cap
    )


@functools.lru_cache(maxsize=64)
def flip_graphs(
        query: SeparationQuery
) -> typing.Tuple[typing.Tuple[FlipSet, Graph], ...]:
    """All P-flips of the query graph with the flipped graphs.

    The result is in the enumeration order and cached, since the games ask
    for many flip balls over the same partition.
    """
    return tuple(enumerate_partition_flip_graphs(
        query.graph, query.parts, query.cap
    ))


class Separation(typing.NamedTuple):
    """Result of a separation test, with the witnessing P-flip if any."""

    separated: bool
    witness: typing.Optional[FlipSet]


def is_r_separated(
        query: SeparationQuery, a: typing.Iterable[int], b: typing.Iterable[int]
) -> Separation:
    """Test if two vertex sets are r-separated over the partition.

    The witness is the first P-flip in the enumeration order whose graph has
    no path of length at most r from A to B.
    """

    graph = query.graph
    a_mask = graph.check_vertices(a)
    b_mask = graph.check_vertices(b)
    if not a_mask or not b_mask:
        raise ValueError(
            'Invalid vertex sets for separation', (a, b),
            'expecting non-empty sets'
        )
    if a_mask & b_mask:
        return Separation(separated=False, witness=None)

    for flips, flipped in flip_graphs(query):
        if not sets_within(flipped, a_mask, b_mask, query.radius):
            return Separation(separated=True, witness=flips)
        continue
    return Separation(separated=False, witness=None)


def flip_distance(
        query: SeparationQuery, u: int, v: int
) -> typing.Union[int, float]:
    """Get the flip distance of two vertices, the radius is not used."""

    query.graph.check_vertex(u)
    query.graph.check_vertex(v)
    if u == v:
        return 0

    res = 0
    for _, flipped in flip_graphs(query):
        curr = distance(flipped, u, v)
        if curr == INF:
            return INF
        res = max(res, curr)
        continue
    return res


def flip_ball_mask(query: SeparationQuery, v: int) -> int:
    """Get the bit mask of the flip ball of radius r around a vertex.

    A vertex is within flip distance r exactly when it is within distance r
    in every P-flip, so the flip ball is the intersection of the balls.
    """

    mask = query.graph.live_mask
    for _, flipped in flip_graphs(query):
        mask &= ball_mask(flipped, v, query.radius)
        if mask == 1 << v:
            break
        continue
    return mask


def flip_ball(query: SeparationQuery, v: int) -> VertexSet:
    """Get the vertices within flip distance r from the given vertex."""
    query.graph.check_vertex(v)
    return set_of_mask(flip_ball_mask(query, v))


#
# Scattered sets
# --------------
#


def greedy_scattered_set(
        query: SeparationQuery, vertices: typing.Iterable[int], order=None
) -> typing.List[int]:
    """Greedily pick pairwise r-separated vertices.

    The vertices are visited in the given order, each picked vertex discards
    its flip ball from the candidates.  The picked vertices are pairwise at
    flip distance greater than r.
    """

    order: VertexOrder = as_order(order)
    remaining = order.sorted(set(vertices))
    picked = []
    while remaining:
        v = remaining[0]
        picked.append(v)
        near = flip_ball_mask(query, v)
        remaining = [i for i in remaining[1:] if not near >> i & 1]
        continue
    return picked


def flip_wide_witness(
        query: SeparationQuery, vertices: typing.Iterable[int], size: int,
        order=None
) -> typing.Optional[typing.Tuple[VertexSet, FlipSet]]:
    """Find a single P-flip making some of the vertices widely apart.

    For every P-flip in the enumeration order, vertices are greedily picked
    to be pairwise at distance greater than r in the flipped graph.  The first
    flip where the given number of vertices can be picked is returned together
    with the picked vertices, or None when no flip qualifies.
    """

    order: VertexOrder = as_order(order)
    candidates = order.sorted(set(vertices))
    query.graph.check_vertices(candidates)
    if size <= 0:
        return frozenset(), frozenset()

    for flips, flipped in flip_graphs(query):
        picked = []
        covered = 0
        for v in candidates:
            if covered >> v & 1:
                continue
            picked.append(v)
            if len(picked) == size:
                return frozenset(picked), flips
            covered |= ball_mask(flipped, v, query.radius)
            continue
        continue
    return None
