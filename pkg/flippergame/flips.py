"""Flips, flip sets and S-classes.

An atomic flip ``(A, B)`` complements the adjacency between every vertex of
``A`` and every distinct vertex of ``B``.  The sets are taken from the
universe of identifiers and need not be live in the graph they are applied
to, dead vertices are simply ignored.  Atomic flips commute and cancel in
pairs, so a set of them is applied jointly and flip sets compose by symmetric
difference.
"""

import functools
import typing

from .graph import Graph, VertexSet
from .utils import BudgetExceededError, mask_of, iter_bits, set_of_mask


#
# Atomic flips
# ------------
#


def _set_key(elems: typing.Tuple[int, ...]):
    """The key ordering the two sides of an atomic flip."""
    return (elems[0] if elems else -1, len(elems), elems)


@functools.total_ordering
class AtomicFlip(object):
    """Unordered pair of vertex sets.

    Both sides are stored as sorted tuples and the pair is ordered by the
    minimum element, the size and then the elements, so ``AtomicFlip(A, B)``
    equals ``AtomicFlip(B, A)``.
    """

    __slots__ = [
        '_a',
        '_b',
        '_a_mask',
        '_b_mask'
    ]

    def __init__(self, a: typing.Iterable[int], b: typing.Iterable[int]):
        """Initialize the atomic flip."""

        a = tuple(sorted(set(a)))
        b = tuple(sorted(set(b)))
        for i in a + b:
            if not isinstance(i, int) or i < 0:
                raise ValueError(
                    'Invalid vertex in flip', i,
                    'expecting non-negative integer identifiers'
                )
            continue

        if _set_key(b) < _set_key(a):
            a, b = b, a
        self._a = a
        self._b = b
        self._a_mask = mask_of(a)
        self._b_mask = mask_of(b)

    @property
    def a(self) -> typing.Tuple[int, ...]:
        """The smaller side of the flip."""
        return self._a

    @property
    def b(self) -> typing.Tuple[int, ...]:
        """The larger side of the flip."""
        return self._b

    @property
    def a_mask(self) -> int:
        return self._a_mask

    @property
    def b_mask(self) -> int:
        return self._b_mask

    @property
    def sort_key(self):
        """The key for the canonical order of atomic flips."""
        return _set_key(self._a), _set_key(self._b)

    @property
    def is_no_op(self) -> bool:
        """If the flip cannot change any graph."""
        return not self._a or not self._b

    def to_json(self):
        """Encode into the JSON form ``{"A": [...], "B": [...]}``."""
        return {'A': list(self._a), 'B': list(self._b)}

    def __eq__(self, other):
        return (
                isinstance(other, AtomicFlip)
                and self._a == other._a and self._b == other._b
        )

    def __lt__(self, other):
        return self.sort_key < other.sort_key

    def __hash__(self):
        return hash((self._a, self._b))

    def __repr__(self):
        return 'AtomicFlip({!r}, {!r})'.format(set(self._a), set(self._b))


NO_OP_FLIP = AtomicFlip((), ())

FlipSet = typing.FrozenSet[AtomicFlip]

EMPTY_FLIPS: FlipSet = frozenset()


def flip_set(flips) -> FlipSet:
    """Form a flip set from atomic flips or pairs of vertex sets.

    Pairs given an odd number of times survive, those given an even number of
    times cancel out.
    """
    res = set()
    for i in flips:
        if not isinstance(i, AtomicFlip):
            i = AtomicFlip(*i)
        res ^= {i}
        continue
    return frozenset(res)


def flip_set_to_json(flips: FlipSet) -> list:
    """Encode a flip set as a sorted array of atomic flips."""
    return [i.to_json() for i in sorted(flips)]


def flip_set_from_json(data) -> FlipSet:
    """Decode the JSON form of a flip set."""
    try:
        return flip_set(AtomicFlip(i['A'], i['B']) for i in data)
    except (KeyError, TypeError):
        raise ValueError(
            'Invalid flip set encoding', data,
            'expecting an array of {"A": [...], "B": [...]}'
        )


def compose_flip_sets(first: FlipSet, second: FlipSet) -> FlipSet:
    """Compose two flip sets, giving their symmetric difference."""
    return frozenset(first) ^ frozenset(second)


#
# Application
# -----------
#


def _toggle(rows: typing.List[int], live: int, flip: AtomicFlip) -> int:
    """Apply an atomic flip to mutable rows in place.

    The number of rows touched is returned.
    """

    a = flip.a_mask & live
    b = flip.b_mask & live
    if not a or not b:
        return 0

    touched = a | b
    for u in iter_bits(touched):
        toggle = 0
        if a >> u & 1:
            toggle |= b
        if b >> u & 1:
            toggle |= a
        rows[u] ^= toggle & ~(1 << u)
        continue
    return touched.bit_count()


def apply_atomic_flip(graph: Graph, flip: AtomicFlip) -> Graph:
    """Apply an atomic flip to a graph."""
    rows = list(graph.rows)
    _toggle(rows, graph.live_mask, flip)
    return Graph(graph.n, rows, graph.live_mask)


def apply_flip_set(graph: Graph, flips: FlipSet, counter=None) -> Graph:
    """Apply all atomic flips of a flip set.

    The atomic flips commute, so they are applied in the canonical order for
    definiteness only.  When a step counter is given, every touched row is
    charged to it.
    """

    if not flips:
        return graph

    rows = list(graph.rows)
    live = graph.live_mask
    for flip in sorted(flips):
        touched = _toggle(rows, live, flip)
        if counter is not None:
            counter.charge(touched)
        continue
    return Graph(graph.n, rows, live)


#
# Partitions and S-classes
# ------------------------
#


Partition = typing.Tuple[VertexSet, ...]


def normalize_partition(parts: typing.Iterable[typing.Iterable[int]]) -> Partition:
    """Put the parts into the canonical form.

    Empty parts are dropped and the others are sorted by their smallest
    identifiers.
    """
    res = [frozenset(i) for i in parts]
    return tuple(sorted((i for i in res if i), key=min))


def check_partition(graph: Graph, parts: Partition):
    """Make sure that the parts partition the live vertices of the graph."""

    covered = 0
    for part in parts:
        mask = graph.check_vertices(part)
        if covered & mask:
            raise ValueError(
                'Invalid partition', parts, 'expecting disjoint parts'
            )
        covered |= mask
        continue

    if covered != graph.live_mask:
        raise ValueError(
            'Invalid partition', parts,
            'expecting parts covering the live vertices',
            sorted(set_of_mask(graph.live_mask & ~covered))
        )


class SClassPartition(typing.NamedTuple):
    """Partition of the live vertices into S-classes.

    Every vertex of ``s`` is a class on its own, the other vertices are
    grouped by their neighbourhoods inside ``s``.
    """

    s: VertexSet
    parts: Partition
    part_of: typing.Dict[int, int]


def s_classes(graph: Graph, s: typing.Iterable[int]) -> SClassPartition:
    """Compute the S-classes of the live vertices."""

    s_mask = graph.check_vertices(s)
    groups = {}
    for v in graph.vertices:
        if s_mask >> v & 1:
            key = (True, v)
        else:
            key = (False, graph.row(v) & s_mask)
        groups[key] = groups.get(key, 0) | 1 << v
        continue

    parts = normalize_partition(set_of_mask(i) for i in groups.values())
    part_of = {
        v: idx for idx, part in enumerate(parts) for v in part
    }
    return SClassPartition(
        s=set_of_mask(s_mask), parts=parts, part_of=part_of
    )


#
# Partition flips
# ---------------
#


DEFAULT_PARTITION_CAP = 5


def partition_flip_pairs(
        parts, cap=DEFAULT_PARTITION_CAP
) -> typing.List[AtomicFlip]:
    """The atomic flips between pairs of parts, self-pairs included.

    Bit i of the code of a P-flip in the enumeration order selects the i-th
    pair given here.
    """

    parts = normalize_partition(parts)
    if len(parts) > cap:
        raise BudgetExceededError('partition size for flip enumeration', cap)
    return [
        AtomicFlip(parts[i], parts[j])
        for i in range(len(parts)) for j in range(i, len(parts))
    ]


def partition_flip_at(pairs: typing.Sequence[AtomicFlip], code: int) -> FlipSet:
    """Get the P-flip with the given code over the pairs of parts."""
    return frozenset(pairs[i] for i in iter_bits(code))


def enumerate_partition_flips(
        parts: Partition, cap=DEFAULT_PARTITION_CAP
) -> typing.Iterator[FlipSet]:
    """Iterate over all P-flips of a partition.

    For p parts there are p(p + 1)/2 pairs of parts and every subset of them
    is generated exactly once, in increasing order of the binary code over
    the pairs.  The empty flip set always comes first.
    """

    pairs = partition_flip_pairs(parts, cap)
    for code in range(1 << len(pairs)):
        yield partition_flip_at(pairs, code)
        continue


def enumerate_partition_flip_graphs(
        graph: Graph, parts: Partition, cap=DEFAULT_PARTITION_CAP
) -> typing.Iterator[typing.Tuple[FlipSet, Graph]]:
    """Iterate over the P-flips of a partition together with flipped graphs.

    The order is the same as :py:func:`enumerate_partition_flips`.  The
    flipped graphs are updated incrementally, only the pairs whose bits change
    in the binary code are toggled.
    """

    pairs = partition_flip_pairs(parts, cap)
    rows = list(graph.rows)
    live = graph.live_mask
    prev = 0
    for code in range(1 << len(pairs)):
        for i in iter_bits(code ^ prev):
            _toggle(rows, live, pairs[i])
            continue
        prev = code
        yield (
            partition_flip_at(pairs, code),
            Graph(graph.n, rows, live)
        )
        continue


def partition_flip_witness(
        graph: Graph, other: Graph, parts: Partition
) -> typing.Optional[FlipSet]:
    """Find the P-flip turning one graph into the other.

    None is returned when the edge difference of the two graphs is not
    constant on some pair of parts.
    """

    if graph.n != other.n or graph.live_mask != other.live_mask:
        raise ValueError(
            'Invalid graphs for partition flip check', (graph, other),
            'expecting the same vertex set'
        )
    parts = normalize_partition(parts)
    check_partition(graph, parts)

    masks = [mask_of(i) for i in parts]
    flips = []
    for i, i_mask in enumerate(masks):
        for j in range(i, len(masks)):
            flipped = None
            for u in iter_bits(i_mask):
                target = masks[j] & ~(1 << u)
                if not target:
                    continue
                diff = (graph.row(u) ^ other.row(u)) & target
                if diff == 0:
                    curr = False
                elif diff == target:
                    curr = True
                else:
                    return None

                if flipped is None:
                    flipped = curr
                elif flipped != curr:
                    return None
                continue

            if flipped:
                flips.append(AtomicFlip(parts[i], parts[j]))
            continue
        continue

    return frozenset(flips)


def is_partition_flip_of(graph: Graph, other: Graph, parts: Partition) -> bool:
    """Test if the other graph is a P-flip of the graph."""
    return partition_flip_witness(graph, other, parts) is not None


#
# Isolation
# ---------
#


def isolating_flips(graph: Graph, vertices: typing.Iterable[int]) -> FlipSet:
    """Get the flips isolating every given vertex.

    The vertices are isolated one after another, the flip for each vertex
    pairs it with its neighbourhood in the graph flipped so far.  Sets are
    taken in increasing identifier order, other iterables in their own order.
    """

    if isinstance(vertices, (set, frozenset)):
        vertices = sorted(vertices)

    rows = list(graph.rows)
    live = graph.live_mask
    flips = []
    seen = set()
    for v in vertices:
        graph.check_vertex(v)
        if v in seen:
            continue
        seen.add(v)

        flip = AtomicFlip((v,), set_of_mask(rows[v]))
        _toggle(rows, live, flip)
        flips.append(flip)
        continue

    return frozenset(flips)
