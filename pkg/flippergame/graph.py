"""Simple graphs with bit-row adjacency.

Graphs here are immutable values over a fixed universe of vertex identifiers
``0, ..., n - 1``.  Taking induced subgraphs never renumbers the vertices, the
subgraph just records its set of *live* vertices, so that flips given by
vertex sets of the original universe can be applied to any localized arena.
"""

import math
import typing

import networkx as nx
import numpy as np

from .utils import BudgetExceededError, iter_bits, set_of_mask


VertexSet = typing.FrozenSet[int]

INF = math.inf


#
# The graph type
# --------------
#


class Graph(object):
    """Finite simple graph with per-vertex bit rows.

    The row of vertex ``v`` is an integer whose bit ``u`` is set when ``u``
    and ``v`` are adjacent.  Rows of dead vertices are zero and rows of live
    vertices only contain live vertices.  Normally graphs are created by
    :py:func:`build_graph`, :py:func:`generate` or :py:func:`read_graph`
    rather than by calling the constructor directly.
    """

    __slots__ = [
        '_n',
        '_rows',
        '_live'
    ]

    def __init__(self, n: int, rows: typing.Sequence[int], live: int):
        """Initialize the graph from raw bit rows, without validation."""
        self._n = n
        self._rows = tuple(rows)
        self._live = live

    @property
    def n(self) -> int:
        """The size of the universe of vertex identifiers."""
        return self._n

    @property
    def live_mask(self) -> int:
        """The bit mask of the live vertices."""
        return self._live

    @property
    def vertices(self) -> typing.Tuple[int, ...]:
        """The live vertices in increasing identifier order."""
        return tuple(iter_bits(self._live))

    @property
    def vertex_set(self) -> VertexSet:
        """The live vertices as a set."""
        return set_of_mask(self._live)

    @property
    def order(self) -> int:
        """The number of live vertices."""
        return self._live.bit_count()

    def __len__(self):
        """Get the number of live vertices."""
        return self.order

    def __contains__(self, v):
        """Test if a vertex is live in the graph."""
        return isinstance(v, int) and 0 <= v < self._n and bool(
            self._live >> v & 1
        )

    @property
    def rows(self) -> typing.Tuple[int, ...]:
        """The bit rows of all vertices, zero for dead ones."""
        return self._rows

    def row(self, v: int) -> int:
        """Get the bit row of the neighbourhood of a vertex."""
        return self._rows[v]

    def neighbors(self, v: int) -> VertexSet:
        """Get the neighbourhood of a live vertex."""
        self.check_vertex(v)
        return set_of_mask(self._rows[v])

    def degree(self, v: int) -> int:
        """Get the degree of a live vertex."""
        self.check_vertex(v)
        return self._rows[v].bit_count()

    def is_isolated(self, v: int) -> bool:
        """Test if a live vertex has no neighbours."""
        return self.degree(v) == 0

    def adjacent(self, u: int, v: int) -> bool:
        """Test if two live vertices are adjacent."""
        self.check_vertex(u)
        self.check_vertex(v)
        return bool(self._rows[u] >> v & 1)

    def edges(self) -> typing.Iterator[typing.Tuple[int, int]]:
        """Iterate over the edges as pairs ``(u, v)`` with ``u < v``."""
        for u in iter_bits(self._live):
            for v in iter_bits(self._rows[u] >> (u + 1)):
                yield u, u + 1 + v
                continue
            continue

    @property
    def n_edges(self) -> int:
        """The number of edges."""
        return sum(self._rows[v].bit_count() for v in self.vertices) // 2

    def complement(self) -> 'Graph':
        """Get the complement graph over the same live vertices."""
        live = self._live
        rows = [
            (live & ~row & ~(1 << v)) if live >> v & 1 else 0
            for v, row in enumerate(self._rows)
        ]
        return Graph(self._n, rows, live)

    def check_vertex(self, v):
        """Make sure that the given vertex is live in the graph."""
        if v not in self:
            raise ValueError(
                'Invalid vertex', v, 'expecting a live vertex of the graph'
            )

    def check_vertices(self, vertices) -> int:
        """Make sure that all given vertices are live, return their mask."""
        mask = 0
        for v in vertices:
            self.check_vertex(v)
            mask |= 1 << v
            continue
        return mask

    def to_networkx(self) -> nx.Graph:
        """Convert to a networkx graph on the live vertices."""
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(self.edges())
        return graph

    def __eq__(self, other):
        """Compare the graphs structurally."""
        return (
                isinstance(other, Graph) and self._n == other._n
                and self._live == other._live and self._rows == other._rows
        )

    def __hash__(self):
        """Hash the graph structurally."""
        return hash((self._n, self._live, self._rows))

    def __repr__(self):
        """Form a short representation of the graph."""
        return 'Graph(n={}, live={}, edges={})'.format(
            self._n, self.order, self.n_edges
        )


#
# Vertex orders
# -------------
#


class VertexOrder(object):
    """Total order on vertex identifiers.

    The identity order, where vertices are compared by their identifiers, is
    the default.  Any permutation of the identifiers can be given instead,
    earlier entries being smaller.
    """

    __slots__ = [
        '_perm',
        '_rank'
    ]

    def __init__(self, perm: typing.Optional[typing.Sequence[int]] = None):
        """Initialize the order, by default the identity order."""

        if perm is None:
            self._perm = None
            self._rank = None
            return

        perm = tuple(perm)
        if sorted(perm) != list(range(len(perm))):
            raise ValueError(
                'Invalid vertex order', perm,
                'expecting a permutation of 0, ..., n - 1'
            )
        rank = [0] * len(perm)
        for idx, v in enumerate(perm):
            rank[v] = idx
            continue
        self._perm = perm
        self._rank = tuple(rank)

    @property
    def perm(self):
        """The permutation, or None for the identity order."""
        return self._perm

    def key(self, v: int) -> int:
        """The sort key of a vertex."""
        return v if self._rank is None else self._rank[v]

    def min(self, vertices: typing.Iterable[int]) -> int:
        """The smallest of the given vertices."""
        return min(vertices, key=self.key)

    def sorted(self, vertices: typing.Iterable[int]) -> typing.List[int]:
        """Sort the given vertices."""
        return sorted(vertices, key=self.key)

    def check(self, graph: Graph):
        """Make sure that the order covers the universe of the graph."""
        if self._perm is not None and len(self._perm) != graph.n:
            raise ValueError(
                'Invalid vertex order', len(self._perm),
                'expecting a permutation of {} vertices'.format(graph.n)
            )

    def __eq__(self, other):
        return isinstance(other, VertexOrder) and self._perm == other._perm

    def __hash__(self):
        return hash(self._perm)

    def __repr__(self):
        if self._perm is None:
            return 'VertexOrder()'
        return 'VertexOrder({!r})'.format(list(self._perm))


def as_order(order) -> VertexOrder:
    """Normalize an order argument into a vertex order object."""
    if order is None:
        return VertexOrder()
    elif isinstance(order, VertexOrder):
        return order
    else:
        return VertexOrder(order)


#
# Construction
# ------------
#


def build_graph(
        n: int, edges: typing.Iterable[typing.Tuple[int, int]]
) -> Graph:
    """Build a graph on vertices ``0, ..., n - 1`` with the given edges.

    Duplicated edges are merged.  Out-of-range endpoints and self-loops are
    rejected with ``ValueError``.
    """

    if n < 0:
        raise ValueError('Invalid vertex count', n, 'expecting non-negative')

    rows = [0] * n
    for u, v in edges:
        for i in (u, v):
            if not (isinstance(i, int) and 0 <= i < n):
                raise ValueError(
                    'Invalid edge endpoint', i,
                    'expecting vertex in 0..{}'.format(n - 1)
                )
            continue
        if u == v:
            raise ValueError('Invalid edge', (u, v), 'self-loops are absent')
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        continue

    return Graph(n, rows, (1 << n) - 1)


def from_networkx(graph: nx.Graph) -> Graph:
    """Convert a networkx graph.

    Graphs whose nodes are exactly ``0, ..., n - 1`` are taken as they are,
    other graphs are relabelled by the sorted order of their nodes.
    """

    n = graph.number_of_nodes()
    if set(graph.nodes) != set(range(n)):
        graph = nx.convert_node_labels_to_integers(graph, ordering='sorted')
    return build_graph(n, graph.edges)


def induced_subgraph(graph: Graph, vertices: typing.Iterable[int]) -> Graph:
    """Get the subgraph induced by the given live vertices.

    The identifiers are kept, only the live set shrinks.
    """

    vertices = list(vertices)
    mask = graph.check_vertices(vertices)
    rows = [
        (row & mask) if mask >> v & 1 else 0
        for v, row in enumerate(graph.rows)
    ]
    return Graph(graph.n, rows, mask)


#
# Distances
# ---------
#


def bfs_layers(
        graph: Graph, sources: int, limit: typing.Optional[int] = None,
        counter=None
) -> typing.Iterator[typing.Tuple[int, int]]:
    """Iterate over the breadth-first layers from a source mask.

    Pairs of the depth and the bit mask of the vertices first reached at that
    depth are generated, starting from the sources at depth zero.  The search
    stops after the given depth limit.  When a step counter is given, every
    expanded row is charged to it.
    """

    rows = graph.rows
    visited = sources
    frontier = sources
    depth = 0
    yield depth, frontier

    while frontier and (limit is None or depth < limit):
        reached = 0
        for v in iter_bits(frontier):
            reached |= rows[v]
            continue
        if counter is not None:
            counter.charge(frontier.bit_count())
        reached &= ~visited
        if not reached:
            break
        visited |= reached
        frontier = reached
        depth += 1
        yield depth, frontier
        continue


def ball_mask(graph: Graph, v: int, r: int, counter=None) -> int:
    """Get the bit mask of the ball of radius r around a live vertex."""

    graph.check_vertex(v)
    if r < 0:
        raise ValueError('Invalid radius', r, 'expecting non-negative')

    mask = 0
    for _, layer in bfs_layers(graph, 1 << v, r, counter):
        mask |= layer
        continue
    return mask


def ball(graph: Graph, v: int, r: int) -> VertexSet:
    """Get all vertices at distance at most r from v."""
    return set_of_mask(ball_mask(graph, v, r))


def distances_from(graph: Graph, v: int) -> typing.Dict[int, int]:
    """Get the distances from v to all vertices reachable from it."""

    graph.check_vertex(v)
    dists = {}
    for depth, layer in bfs_layers(graph, 1 << v):
        for u in iter_bits(layer):
            dists[u] = depth
            continue
        continue
    return dists


def distance(graph: Graph, u: int, v: int) -> typing.Union[int, float]:
    """Get the length of a shortest path, infinity when disconnected."""

    graph.check_vertex(u)
    graph.check_vertex(v)
    target = 1 << v
    for depth, layer in bfs_layers(graph, 1 << u):
        if layer & target:
            return depth
        continue
    return INF


def sets_within(
        graph: Graph, a_mask: int, b_mask: int, r: int, counter=None
) -> bool:
    """Test if some path of length at most r joins the two vertex masks."""

    for _, layer in bfs_layers(graph, a_mask, r, counter):
        if layer & b_mask:
            return True
        continue
    return False


def is_distance_independent(
        graph: Graph, vertices: typing.Iterable[int], r: int, counter=None
) -> bool:
    """Test if the given vertices are pairwise at distance greater than r."""

    vertices = list(vertices)
    mask = graph.check_vertices(vertices)
    if len(set(vertices)) != len(vertices):
        return False

    for v in vertices:
        others = mask & ~(1 << v)
        if sets_within(graph, 1 << v, others, r, counter):
            return False
        continue
    return True


#
# Graph families
# --------------
#


def _check_param(name, value, lower):
    """Check an integral family parameter against its lower bound."""
    if not isinstance(value, (int, np.integer)) or value < lower:
        raise ValueError(
            'Invalid family parameter', name, value,
            'expecting an integer >= {}'.format(lower)
        )
    return int(value)


def _gen_path(n):
    n = _check_param('n', n, 1)
    return from_networkx(nx.path_graph(n))


def _gen_cycle(n):
    n = _check_param('n', n, 3)
    return from_networkx(nx.cycle_graph(n))


def _gen_grid(rows, cols):
    rows = _check_param('rows', rows, 1)
    cols = _check_param('cols', cols, 1)
    return from_networkx(nx.grid_2d_graph(rows, cols))


def _gen_clique(n):
    n = _check_param('n', n, 1)
    return from_networkx(nx.complete_graph(n))


def _gen_random_tree(n, seed=None):
    """Uniform random labelled tree through a random Prüfer sequence."""
    n = _check_param('n', n, 1)
    if n == 1:
        return build_graph(1, [])
    rng = np.random.default_rng(seed)
    seq = [int(i) for i in rng.integers(0, n, size=n - 2)]
    return from_networkx(nx.from_prufer_sequence(seq))


def _gen_bounded_degree_random(n, d, seed=None):
    """Random graph of maximum degree d by capped random edge insertion."""

    n = _check_param('n', n, 1)
    d = _check_param('d', d, 0)
    rng = np.random.default_rng(seed)

    target = n * d // 2
    degrees = [0] * n
    edges = set()
    for _ in range(8 * target):
        if len(edges) >= target:
            break
        u, v = (int(i) for i in rng.integers(0, n, size=2))
        key = (min(u, v), max(u, v))
        if u == v or key in edges or degrees[u] >= d or degrees[v] >= d:
            continue
        edges.add(key)
        degrees[u] += 1
        degrees[v] += 1
        continue

    return build_graph(n, sorted(edges))


def _gen_half_graph(k):
    """Half-graph of order k, a_i is vertex i - 1 and b_j is k + j - 1."""
    k = _check_param('k', k, 1)
    return build_graph(2 * k, [
        (i, k + j) for i in range(k) for j in range(k) if i < j
    ])


def _gen_subdivided_clique(n, r):
    """Clique on n principal vertices with r new vertices on every edge."""

    n = _check_param('n', n, 1)
    r = _check_param('r', r, 0)

    edges = []
    next_v = n
    for u in range(n):
        for v in range(u + 1, n):
            path = [u] + list(range(next_v, next_v + r)) + [v]
            next_v += r
            edges.extend(zip(path, path[1:]))
            continue
        continue

    return build_graph(next_v, edges)


_FAMILIES = {
    'path': _gen_path,
    'cycle': _gen_cycle,
    'grid': _gen_grid,
    'clique': _gen_clique,
    'random_tree': _gen_random_tree,
    'bounded_degree_random': _gen_bounded_degree_random,
    'half_graph': _gen_half_graph,
    'subdivided_clique': _gen_subdivided_clique
}

FAMILIES = tuple(_FAMILIES)


def generate(family: str, **params) -> Graph:
    """Generate a graph from a named family.

    The families and their parameters are

    ``path(n)``, ``cycle(n)``, ``clique(n)``
        The usual graphs on n vertices.

    ``grid(rows, cols)``
        The grid graph, vertices numbered row by row.

    ``random_tree(n, seed)``
        A uniformly random labelled tree.

    ``bounded_degree_random(n, d, seed)``
        A random graph with maximum degree d.

    ``half_graph(k)``
        The half-graph with vertices a_i, b_j and edges a_i b_j for i < j.

    ``subdivided_clique(n, r)``
        The clique with every edge replaced by a path with r inner vertices.

    The result is deterministic in the family and the parameters, seed
    included.
    """

    try:
        gen = _FAMILIES[family]
    except KeyError:
        raise ValueError(
            'Invalid graph family', family, 'expecting one of', FAMILIES
        )

    try:
        return gen(**params)
    except TypeError as exc:
        raise ValueError(
            'Invalid parameters for family', family, params, str(exc)
        )


def generate_sized(family: str, n: int, seed=None) -> Graph:
    """Generate a family member with about n vertices for benchmarking."""

    if family == 'grid':
        rows = max(1, math.isqrt(n))
        return generate('grid', rows=rows, cols=max(1, n // rows))
    elif family == 'random_tree':
        return generate('random_tree', n=n, seed=seed)
    elif family == 'bounded_degree_random':
        return generate('bounded_degree_random', n=n, d=3, seed=seed)
    elif family == 'half_graph':
        return generate('half_graph', k=max(1, n // 2))
    elif family in ('path', 'cycle', 'clique'):
        return generate(family, n=n)
    else:
        raise ValueError(
            'Invalid graph family for sizing', family,
            'expecting one of', FAMILIES
        )


#
# Ladders
# -------
#


DEFAULT_LADDER_NODE_CAP = 10 ** 6


def ladder_order_at_least(
        graph: Graph, k: int, node_cap=DEFAULT_LADDER_NODE_CAP
) -> bool:
    """Test if the graph contains a ladder of order k semi-induced.

    A ladder of order k is formed by distinct vertices a_1, ..., a_k and
    b_1, ..., b_k with a_i adjacent to b_j exactly when i < j.  Adjacency
    inside the a's and inside the b's is free.  The search is plain
    backtracking, :py:class:`BudgetExceededError` is raised after visiting
    ``node_cap`` search nodes.
    """

    if k < 1:
        raise ValueError('Invalid ladder order', k, 'expecting k >= 1')

    verts = graph.vertices
    rows = graph.rows
    n_nodes = 0

    def extend(t, a_mask, b_mask):
        nonlocal n_nodes
        if t == k:
            return True
        used = a_mask | b_mask
        for a in verts:
            # a_t is never adjacent to the earlier b_i.
            if used >> a & 1 or rows[a] & b_mask:
                continue
            for b in verts:
                if b == a or used >> b & 1:
                    continue
                n_nodes += 1
                if n_nodes > node_cap:
                    raise BudgetExceededError('ladder search nodes', node_cap)
                # b_t is adjacent to every earlier a_i but not to a_t.
                if rows[b] & a_mask != a_mask or rows[a] >> b & 1:
                    continue
                if extend(t + 1, a_mask | 1 << a, b_mask | 1 << b):
                    return True
                continue
            continue
        return False

    return extend(0, 0, 0)


#
# Text format
# -----------
#


def parse_graph(text: str, source='<string>') -> Graph:
    """Parse the graph text format.

    The first line holds ``n m``, followed by m lines ``u v`` of 0-based
    edges.  Everything after ``#`` on a line is a comment, blank lines are
    skipped.  Errors name the source and the line number.
    """

    header = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue

        fields = line.split()
        try:
            nums = [int(i) for i in fields]
        except ValueError:
            raise ValueError(
                'Invalid graph file', source, 'line {}'.format(lineno),
                'expecting integers, got', line
            )
        if len(nums) != 2:
            raise ValueError(
                'Invalid graph file', source, 'line {}'.format(lineno),
                'expecting two integers, got', line
            )

        if header is None:
            header = nums
        else:
            edges.append((lineno, nums[0], nums[1]))
        continue

    if header is None:
        raise ValueError('Invalid graph file', source, 'missing header line')
    n, m = header
    if n < 0 or m < 0:
        raise ValueError(
            'Invalid graph file', source, 'negative counts', header
        )
    if len(edges) != m:
        raise ValueError(
            'Invalid graph file', source,
            'expecting {} edges, found {}'.format(m, len(edges))
        )

    for lineno, u, v in edges:
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise ValueError(
                'Invalid graph file', source, 'line {}'.format(lineno),
                'invalid edge', (u, v)
            )
        continue

    return build_graph(n, [(u, v) for _, u, v in edges])


def read_graph(path) -> Graph:
    """Read a graph file."""
    with open(path, 'r') as fp:
        return parse_graph(fp.read(), source=str(path))


def format_graph(graph: Graph) -> str:
    """Format a graph in the graph text format."""
    edges = list(graph.edges())
    lines = ['{} {}'.format(graph.n, len(edges))]
    lines.extend('{} {}'.format(u, v) for u, v in edges)
    return '\n'.join(lines) + '\n'


def write_graph(graph: Graph, path):
    """Write a graph file."""
    with open(path, 'w') as fp:
        fp.write(format_graph(graph))


def read_order(path, n: typing.Optional[int] = None) -> VertexOrder:
    """Read a permutation file with one vertex identifier per line."""

    perm = []
    with open(path, 'r') as fp:
        for lineno, raw in enumerate(fp, start=1):
            line = raw.split('#', 1)[0].strip()
            if not line:
                continue
            try:
                perm.append(int(line))
            except ValueError:
                raise ValueError(
                    'Invalid order file', str(path),
                    'line {}'.format(lineno), 'expecting an integer'
                )
            continue

    if n is not None and len(perm) != n:
        raise ValueError(
            'Invalid order file', str(path),
            'expecting {} identifiers, found {}'.format(n, len(perm))
        )
    return VertexOrder(perm)
