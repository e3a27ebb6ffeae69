"""Classifiers over families of disjoint blobs.

A classifier is formed by pairwise disjoint blobs, a set S of representatives
disjoint from the blobs, and two maps on the vertices: ``exc`` giving the
exceptional blob of a vertex (or None) and ``rep`` giving its representative.
Each vertex has the same neighbourhood as its representative in every blob but
its exceptional one.  Vertices grouped by their representatives form the
raised partition, which can be recovered from any five of the blobs alone.
"""

import itertools
import typing

from .graph import Graph, VertexSet, VertexOrder, as_order
from .flips import Partition, normalize_partition
from .utils import BudgetExceededError, mask_of, iter_bits, set_of_mask


#
# Data types
# ----------
#


class Classifier(typing.NamedTuple):
    """Blobs, representatives and the exception and representative maps.

    Blobs are referred to by their indices in ``blobs``.  Vertices absent from
    ``exc`` have no exceptional blob.
    """

    blobs: typing.Tuple[VertexSet, ...]
    representatives: VertexSet
    exc: typing.Mapping[int, typing.Optional[int]]
    rep: typing.Mapping[int, int]

    @property
    def size(self):
        """The number of blobs."""
        return len(self.blobs)

    @property
    def order(self):
        """The number of representatives."""
        return len(self.representatives)


class RaisedPartition(typing.NamedTuple):
    """Partition of the vertices with a distinct anchor for every part."""

    parts: Partition
    anchors: typing.Tuple[int, ...]

    def part_of(self, v: int) -> int:
        """Get the index of the part containing a vertex."""
        for idx, part in enumerate(self.parts):
            if v in part:
                return idx
            continue
        raise ValueError('Invalid vertex', v, 'not in the partition')


def _raised(parts_anchors) -> RaisedPartition:
    """Form a raised partition with parts sorted by smallest identifier."""
    pairs = sorted(
        ((frozenset(part), anchor) for part, anchor in parts_anchors if part),
        key=lambda x: min(x[0])
    )
    return RaisedPartition(
        parts=tuple(i for i, _ in pairs), anchors=tuple(i for _, i in pairs)
    )


class Violation(typing.NamedTuple):
    """First violated classifier condition with a witness.

    The conditions are ``structure`` for malformed data and ``a`` to ``e``
    for the defining conditions.
    """

    condition: str
    witness: tuple
    reason: str


#
# Validation
# ----------
#


def validate_classifier(
        graph: Graph, classifier: Classifier
) -> typing.Optional[Violation]:
    """Check a classifier, giving None or the first violation.

    After the structural checks, the conditions are checked in order:

    (a) no representative lies in a blob;

    (b) every representative is adjacent to all blobs or to none;

    (c) distinct representatives differ in their neighbourhood in every blob;

    (d) the exceptional blob of a vertex inside a blob is that blob;

    (e) every vertex agrees with its representative in every blob but its
        exceptional one.

    """

    live = graph.live_mask
    reps = classifier.representatives
    rows = graph.rows
    blobs = classifier.blobs
    n_blobs = len(blobs)

    if not reps:
        return Violation('structure', (), 'empty representative set')
    for s in sorted(reps):
        if s not in graph:
            return Violation('structure', (s,), 'dead representative')
        if classifier.rep.get(s) != s:
            return Violation('structure', (s,), 'representative not its own')
        continue

    masks = []
    union = 0
    for idx, blob in enumerate(blobs):
        mask = mask_of(blob)
        if mask & ~live:
            return Violation('structure', (idx,), 'blob with dead vertices')
        if mask & union:
            return Violation('structure', (idx,), 'overlapping blobs')
        masks.append(mask)
        union |= mask
        continue

    for v in graph.vertices:
        if classifier.rep.get(v) not in reps:
            return Violation('structure', (v,), 'representative missing')
        exc = classifier.exc.get(v)
        if exc is not None and not 0 <= exc < n_blobs:
            return Violation('structure', (v, exc), 'invalid blob index')
        continue

    for s in sorted(reps):
        if union >> s & 1:
            idx = next(i for i, m in enumerate(masks) if m >> s & 1)
            return Violation('a', (s, idx), 'representative inside a blob')
        continue

    for s in sorted(reps):
        adj = [bool(rows[s] & m) for m in masks]
        if any(adj) and not all(adj):
            return Violation(
                'b', (s, adj.index(False)),
                'representative adjacent to some blobs only'
            )
        continue

    for s1, s2 in itertools.combinations(sorted(reps), 2):
        for idx, mask in enumerate(masks):
            if rows[s1] & mask == rows[s2] & mask:
                return Violation(
                    'c', (s1, s2, idx),
                    'representatives alike in a blob'
                )
            continue
        continue

    for idx, mask in enumerate(masks):
        for v in iter_bits(mask):
            if classifier.exc.get(v) != idx:
                return Violation(
                    'd', (v, idx), 'blob vertex with another exception'
                )
            continue
        continue

    for v in graph.vertices:
        rep_row = rows[classifier.rep[v]]
        exc = classifier.exc.get(v)
        for idx, mask in enumerate(masks):
            if idx != exc and rows[v] & mask != rep_row & mask:
                return Violation(
                    'e', (v, idx),
                    'vertex unlike its representative in a blob'
                )
            continue
        continue

    return None


#
# Raised partitions
# -----------------
#


def raised_partition(classifier: Classifier) -> RaisedPartition:
    """Get the partition of the vertices by their representatives."""

    fibers = {s: 0 for s in classifier.representatives}
    for v, s in classifier.rep.items():
        if s not in fibers:
            raise ValueError(
                'Invalid classifier', classifier,
                'representative map leaving the representatives'
            )
        fibers[s] |= 1 << v
        continue
    return _raised((set_of_mask(m), s) for s, m in fibers.items())


def partition_from_five(
        graph: Graph, blobs, order=None, counter=None
) -> RaisedPartition:
    """Recover the raised partition from five blobs.

    The vertices are visited in the given order.  A vertex joins the part of
    the earliest added anchor having the same neighbourhood as the vertex in
    at least three of the five blobs, otherwise it becomes the anchor of a
    new part.  Each comparison with an anchor is charged five steps on the
    counter when given.

    Whenever some classifier has the five blobs among its blobs, the result
    is its raised partition regardless of the visiting order.
    """

    blobs = list(blobs)
    if len(blobs) != 5:
        raise ValueError(
            'Invalid blobs for partition recovery', len(blobs),
            'expecting exactly five blobs'
        )
    masks = []
    union = 0
    for blob in blobs:
        mask = graph.check_vertices(blob)
        if mask & union:
            raise ValueError(
                'Invalid blobs for partition recovery', blobs,
                'expecting disjoint blobs'
            )
        masks.append(mask)
        union |= mask
        continue

    order: VertexOrder = as_order(order)
    order.check(graph)
    rows = graph.rows

    anchors = []
    members = []
    for v in order.sorted(graph.vertices):
        traces = [rows[v] & m for m in masks]
        for idx, anchor_traces in enumerate(anchors):
            if counter is not None:
                counter.charge(5)
            n_same = sum(
                1 for i, j in zip(traces, anchor_traces[1]) if i == j
            )
            if n_same >= 3:
                members[idx] |= 1 << v
                break
            continue
        else:
            anchors.append((v, traces))
            members.append(1 << v)
        continue

    return _raised(
        (set_of_mask(m), a[0]) for m, a in zip(members, anchors)
    )


#
# Representatives
# ---------------
#


def reselect_representatives(
        graph: Graph, classifier: Classifier, new_reps: typing.Iterable[int]
) -> Classifier:
    """Pick new representatives, one from each part of the raised partition.

    The exceptional blobs of the new representatives are removed, so at most
    ``|S|`` blobs are lost.  Vertices whose exceptional blob is removed get no
    exception, and every representative is mapped through the bijection
    between the old and the new representatives.
    """

    new_reps = frozenset(new_reps)
    graph.check_vertices(new_reps)

    mapping = {}
    for s_new in new_reps:
        s_old = classifier.rep[s_new]
        if s_old in mapping:
            raise ValueError(
                'Invalid new representatives', sorted(new_reps),
                'expecting one vertex from every part, got two for', s_old
            )
        mapping[s_old] = s_new
        continue
    if set(mapping) != set(classifier.representatives):
        raise ValueError(
            'Invalid new representatives', sorted(new_reps),
            'expecting one vertex from every part'
        )

    removed = {classifier.exc.get(i) for i in new_reps} - {None}
    kept = [i for i in range(len(classifier.blobs)) if i not in removed]
    reindex = {old: new for new, old in enumerate(kept)}

    res = Classifier(
        blobs=tuple(classifier.blobs[i] for i in kept),
        representatives=new_reps,
        exc={
            v: (None if e is None else reindex.get(e))
            for v, e in classifier.exc.items()
        },
        rep={v: mapping[s] for v, s in classifier.rep.items()}
    )

    violation = validate_classifier(graph, res)
    if violation is not None:
        raise ValueError(
            'Invalid classifier after reselection', violation,
            'expecting a valid input classifier'
        )
    return res


def canonize(graph: Graph, classifier: Classifier, order=None) -> Classifier:
    """Make each representative the smallest vertex of its part."""
    order = as_order(order)
    parts = raised_partition(classifier).parts
    return reselect_representatives(
        graph, classifier, [order.min(i) for i in parts]
    )


def is_canonical(classifier: Classifier, order=None) -> bool:
    """Test if each representative is the smallest vertex of its part."""
    order = as_order(order)
    raised = raised_partition(classifier)
    return all(
        order.min(part) == anchor
        for part, anchor in zip(raised.parts, raised.anchors)
    )


#
# Exhaustive search
# -----------------
#


MAX_SEARCH_VERTICES = 16

MAX_SEARCH_ORDER = 3

MAX_SEARCH_BALLS = 8

DEFAULT_SEARCH_CAP = 2 * 10 ** 6


def _try_classifier(graph, blob_masks, reps, verts):
    """Try to complete representatives into a classifier over the blobs.

    Every vertex takes the first representative it agrees with in all blobs
    but at most one, preferring no exception at all.
    """

    rows = graph.rows
    for s in reps:
        adj = [bool(rows[s] & m) for m in blob_masks]
        if any(adj) and not all(adj):
            return None
    for s1, s2 in itertools.combinations(reps, 2):
        if any(rows[s1] & m == rows[s2] & m for m in blob_masks):
            return None

    rep_traces = [(s, [rows[s] & m for m in blob_masks]) for s in reps]
    exc = {}
    rep = {}
    for v in verts:
        if v in reps:
            exc[v], rep[v] = None, v
            continue
        own = next(
            (i for i, m in enumerate(blob_masks) if m >> v & 1), None
        )
        traces = [rows[v] & m for m in blob_masks]
        for s, s_traces in rep_traces:
            diff = [
                i for i, (x, y) in enumerate(zip(traces, s_traces)) if x != y
            ]
            if own is not None:
                if all(i == own for i in diff):
                    exc[v], rep[v] = own, s
                    break
            elif len(diff) <= 1:
                exc[v], rep[v] = (diff[0] if diff else None), s
                break
            continue
        else:
            return None
        continue

    return Classifier(
        blobs=tuple(set_of_mask(m) for m in blob_masks),
        representatives=frozenset(reps), exc=exc, rep=rep
    )


def complete_classifier(
        graph: Graph, blobs, representatives
) -> typing.Optional[Classifier]:
    """Complete blobs and representatives into a classifier.

    Every vertex takes the first representative, in increasing identifier
    order, that it agrees with in all blobs but at most one.  None is returned
    when the representatives violate the conditions or some vertex agrees
    with none of them.
    """

    masks = []
    union = 0
    for blob in blobs:
        mask = graph.check_vertices(blob)
        if mask & union:
            raise ValueError(
                'Invalid blobs for a classifier', blobs, 'expecting disjoint blobs'
            )
        masks.append(mask)
        union |= mask
        continue

    reps = tuple(sorted(set(representatives)))
    graph.check_vertices(reps)
    if not reps or any(union >> i & 1 for i in reps):
        return None
    return _try_classifier(graph, masks, reps, graph.vertices)


def search_classifier(
        graph: Graph, balls, order=None, max_order=MAX_SEARCH_ORDER,
        min_size=5, node_cap=DEFAULT_SEARCH_CAP
) -> typing.Optional[Classifier]:
    """Search exhaustively for a canonical classifier over some of the balls.

    Subfamilies of the balls are tried largest first, and for each of them
    the candidate representative sets of at most ``max_order`` vertices
    outside the blobs in lexicographic order.  The first classifier whose
    canonized form still has at least ``min_size`` blobs is returned, None
    when there is none.

    Parameters
    ----------

    graph
        The graph, at most 16 live vertices.

    balls
        Pairwise disjoint vertex sets, at most eight of them.

    order
        The vertex order for the lexicographic search and the canonization.

    max_order
        The largest number of representatives, at most three.

    min_size
        The smallest acceptable number of blobs.

    node_cap
        The number of candidate representative sets that can be tried before
        :py:class:`BudgetExceededError` is raised.

    """

    balls = list(balls)
    if graph.order > MAX_SEARCH_VERTICES:
        raise BudgetExceededError(
            'classifier search vertex count', MAX_SEARCH_VERTICES
        )
    if max_order > MAX_SEARCH_ORDER:
        raise BudgetExceededError(
            'classifier search order', MAX_SEARCH_ORDER
        )
    if len(balls) > MAX_SEARCH_BALLS:
        raise BudgetExceededError(
            'classifier search ball count', MAX_SEARCH_BALLS
        )

    masks = []
    union = 0
    for b in balls:
        mask = graph.check_vertices(b)
        if mask & union:
            raise ValueError(
                'Invalid balls for classifier search', balls,
                'expecting disjoint balls'
            )
        masks.append(mask)
        union |= mask
        continue

    order: VertexOrder = as_order(order)
    order.check(graph)
    verts = order.sorted(graph.vertices)

    n_tried = 0
    for size in range(len(balls), max(min_size, 0) - 1, -1):
        for idxs in itertools.combinations(range(len(balls)), size):
            blob_masks = [masks[i] for i in idxs]
            used = 0
            for m in blob_masks:
                used |= m
            candidates = [v for v in verts if not used >> v & 1]

            for n_reps in range(1, max_order + 1):
                for reps in itertools.combinations(candidates, n_reps):
                    n_tried += 1
                    if n_tried > node_cap:
                        raise BudgetExceededError(
                            'classifier search candidates', node_cap
                        )
                    found = _try_classifier(graph, blob_masks, reps, verts)
                    if found is None:
                        continue
                    found = canonize(graph, found, order)
                    if found.size >= min_size:
                        return found
                    continue
                continue
            continue
        continue

    return None


#
# Encoding
# --------
#


def classifier_to_json(classifier: Classifier) -> dict:
    """Encode a classifier in its JSON form."""
    return {
        'blobs': [sorted(i) for i in classifier.blobs],
        'S': sorted(classifier.representatives),
        'exc': {str(k): v for k, v in sorted(classifier.exc.items())},
        'rep': {str(k): v for k, v in sorted(classifier.rep.items())}
    }


def classifier_from_json(data) -> Classifier:
    """Decode the JSON form of a classifier."""
    try:
        return Classifier(
            blobs=tuple(frozenset(i) for i in data['blobs']),
            representatives=frozenset(data['S']),
            exc={int(k): v for k, v in data['exc'].items()},
            rep={int(k): v for k, v in data['rep'].items()}
        )
    except (KeyError, TypeError, AttributeError):
        raise ValueError(
            'Invalid classifier encoding', data,
            'expecting blobs, S, exc and rep entries'
        )
