"""Randomized and exhaustive checks of the laws behind the games.

Every suite draws its instances from a seeded generator, so that a run is
reproduced by its seed, and reports the number of checks made together with
a description of every failed one.  The ``budget`` of a suite caps the number
of instances, or of games for the suites playing games, in each of its
checks.
"""

import itertools
import logging
import typing

import networkx as nx
import numpy as np

from .classify import (
    search_classifier, complete_classifier, canonize, validate_classifier,
    raised_partition, partition_from_five
)
from .flips import (
    AtomicFlip, apply_atomic_flip, apply_flip_set, compose_flip_sets,
    flip_set, s_classes, partition_flip_pairs, is_partition_flip_of,
    NO_OP_FLIP
)
from .game import (
    GameVariant, OutcomeKind, UNBOUNDED, game_config, initial_position, step,
    run_game
)
from .graph import (
    Graph, VertexOrder, build_graph, from_networkx, induced_subgraph, ball,
    distance, is_distance_independent, generate_sized
)
from .metric import separation_query, is_r_separated, flip_distance
from .predict import (
    predict_config, inner_radius, q_partition, flips_odd_case,
    flips_even_case, fw_oracle, predict
)
from .strategies import (
    Phase, ScriptedConnector, ScriptedSeparator, EchoSeparator, flip_star,
    make_connector, multi_to_single, separator_to_pseudo_flipper,
    pseudo_flipper_to_flipper
)
from .utils import BudgetExceededError, mask_of


logger = logging.getLogger(__name__)


class SuiteReport(typing.NamedTuple):
    """Result of a verification suite.

    ``notes`` are informative lines, like the rounds to win by graph size,
    that do not count as checks.
    """

    name: str
    checks: int
    failures: typing.Tuple[str, ...]
    notes: typing.Tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            'name': self.name, 'checks': self.checks,
            'failures': list(self.failures), 'notes': list(self.notes),
            'passed': self.passed
        }


class _Checker(object):
    """Accumulator of checks for a suite."""

    __slots__ = ['name', 'checks', 'failures', 'notes']

    def __init__(self, name):
        self.name = name
        self.checks = 0
        self.failures = []
        self.notes = []

    def check(self, cond, what) -> bool:
        self.checks += 1
        if not cond:
            self.failures.append(what)
            logger.debug('Check failed in suite %s: %s', self.name, what)
        return bool(cond)

    def report(self) -> SuiteReport:
        return SuiteReport(
            name=self.name, checks=self.checks,
            failures=tuple(self.failures), notes=tuple(self.notes)
        )


def _count(default, budget):
    return default if budget is None else max(0, min(default, budget))


#
# Random instances
# ----------------
#


def _seed_of(rng) -> int:
    return int(rng.integers(2 ** 31))


def random_graph(rng, n, p=None) -> Graph:
    """Draw a G(n, p) graph, p itself is drawn when not given."""
    if p is None:
        p = float(rng.uniform(0.05, 0.5))
    return from_networkx(nx.gnp_random_graph(n, p, seed=_seed_of(rng)))


def _random_subset(rng, universe, p=0.5):
    return [i for i in universe if rng.random() < p]


def _random_flip_set(rng, n, max_flips=4):
    flips = []
    for _ in range(int(rng.integers(0, max_flips + 1))):
        flips.append(AtomicFlip(
            _random_subset(rng, range(n)), _random_subset(rng, range(n))
        ))
        continue
    return flip_set(flips)


def _random_partition_flip(rng, parts, p=0.3):
    pairs = partition_flip_pairs(parts, cap=len(parts))
    return frozenset(i for i in pairs if rng.random() < p)


def _random_partition(rng, vertices, max_parts):
    labels = rng.integers(0, max_parts, size=len(vertices))
    groups = {}
    for v, label in zip(vertices, labels):
        groups.setdefault(int(label), []).append(v)
        continue
    return list(groups.values())


#
# Planted instances
# -----------------
#


def star_instance(m: int) -> Graph:
    """The star with centre 0 and leaves 1 to m."""
    return build_graph(m + 1, [(0, i) for i in range(1, m + 1)])


def spider_instance(m: int, r: int, extra=False) -> typing.Tuple[
    Graph, typing.List[int]
]:
    """A graph with m tips pairwise at distance exactly r.

    For even r, m legs of length r / 2 hang from the hub 0 and vertex 1 is a
    pendant of the hub.  For odd r, legs of length (r - 1) / 2 hang from the
    vertices of a clique, all adjacent to vertex 1, and vertex 0 is apart.
    With ``extra``, vertex 1 gets a pendant for even r and is joined to
    vertex 0 for odd r.  The graph is returned with the tips.
    """

    if m < 2 or r < 1:
        raise ValueError('Invalid spider', (m, r), 'expecting m >= 2, r >= 1')

    edges = []
    tips = []
    next_v = 2
    length = r // 2
    cores = []
    for _ in range(m):
        if r % 2 == 0:
            prev = 0
        else:
            prev = next_v
            cores.append(prev)
            edges.append((1, prev))
            next_v += 1
        for _ in range(length):
            edges.append((prev, next_v))
            prev = next_v
            next_v += 1
            continue
        tips.append(prev)
        continue

    if r % 2 == 0:
        edges.append((0, 1))
        if extra:
            edges.append((1, next_v))
            next_v += 1
    else:
        edges.extend(itertools.combinations(cores, 2))
        if extra:
            edges.append((0, 1))
    return build_graph(next_v, edges), tips


def planted_classifier_graph(rng, n_blobs, n_types, n_extra, n_exc):
    """A graph with a classifier planted over blobs of two vertices.

    The first ``n_types`` vertices are the representatives, adjacent to no
    blob vertex, to the first vertex of every blob or to the second vertex of
    every blob.  The extra vertices copy a random representative, and the
    first ``n_exc`` of them deviate from it in a random blob.  Blob vertices
    see no other blob.  Edges among non-blob vertices and inside blobs are
    random.  The graph is returned with the blobs.
    """

    if not 1 <= n_types <= 3:
        raise ValueError('Invalid type count', n_types, 'expecting 1 to 3')

    n_free = n_types + n_extra
    n = n_free + 2 * n_blobs
    blobs = [(n_free + 2 * i, n_free + 2 * i + 1) for i in range(n_blobs)]
    types = list(range(n_types)) + [
        int(i) for i in rng.integers(0, n_types, size=n_extra)
    ]

    edges = set()
    for v, t in enumerate(types):
        if t > 0:
            edges.update((v, blob[t - 1]) for blob in blobs)
        continue
    for k, v in enumerate(range(n_types, n_free)):
        if k >= n_exc:
            break
        blob = blobs[int(rng.integers(n_blobs))]
        u = blob[int(rng.integers(2))]
        edges.symmetric_difference_update([(v, u)])
        continue
    for u, v in itertools.combinations(range(n_free), 2):
        if rng.random() < 0.4:
            edges.add((u, v))
        continue
    for u, v in blobs:
        if rng.random() < 0.5:
            edges.add((u, v))
        continue

    return build_graph(n, sorted(edges)), [frozenset(i) for i in blobs]


#
# Flips
# -----
#


def suite_flips(seed=0, budget=None) -> SuiteReport:
    """Involution, order independence, composition and restriction."""

    rng = np.random.default_rng(seed)
    checker = _Checker('flips')
    for idx in range(_count(500, budget)):
        n = int(rng.integers(1, 51))
        graph = random_graph(rng, n)
        flips = _random_flip_set(rng, n)
        other = _random_flip_set(rng, n)
        tag = 'instance {} (n={})'.format(idx, n)

        once = apply_flip_set(graph, flips)
        checker.check(
            apply_flip_set(once, flips) == graph, tag + ': involution'
        )

        ordered = sorted(flips)
        seq = graph
        for i in rng.permutation(len(ordered)):
            seq = apply_atomic_flip(seq, ordered[i])
            continue
        checker.check(seq == once, tag + ': order independence')

        checker.check(
            apply_flip_set(once, other)
            == apply_flip_set(graph, compose_flip_sets(flips, other)),
            tag + ': composition'
        )

        sub = _random_subset(rng, range(n))
        checker.check(
            induced_subgraph(once, sub)
            == apply_flip_set(induced_subgraph(graph, sub), flips),
            tag + ': restriction'
        )
        continue
    return checker.report()


#
# S-classes
# ---------
#


def _refines(fine, coarse) -> bool:
    """Test if every part of the first partition is inside a part of the other."""
    return all(any(part <= i for i in coarse) for part in fine)


def suite_s_classes(seed=0, budget=None) -> SuiteReport:
    """Class count, refinement under S-flips, transitivity, hereditarity."""

    rng = np.random.default_rng(seed)
    checker = _Checker('s_classes')
    for idx in range(_count(200, budget)):
        n = int(rng.integers(1, 31))
        graph = random_graph(rng, n)
        verts = list(range(n))
        s = [int(i) for i in rng.choice(
            n, size=int(rng.integers(0, min(4, n) + 1)), replace=False
        )]
        t = [int(i) for i in rng.choice(
            n, size=int(rng.integers(0, min(4, n) + 1)), replace=False
        )]
        tag = 'instance {} (n={}, S={}, T={})'.format(idx, n, sorted(s), sorted(t))

        classes = s_classes(graph, s)
        checker.check(
            len(classes.parts) <= len(s) + 2 ** len(s), tag + ': class count'
        )

        flipped = apply_flip_set(
            graph, _random_partition_flip(rng, classes.parts)
        )
        checker.check(
            _refines(classes.parts, s_classes(flipped, s).parts),
            tag + ': classes kept by S-flips'
        )

        twice = apply_flip_set(
            flipped, _random_partition_flip(rng, s_classes(flipped, t).parts)
        )
        checker.check(
            is_partition_flip_of(
                graph, twice, s_classes(graph, set(s) | set(t)).parts
            ),
            tag + ': transitivity'
        )

        x = sorted(set(s) | set(_random_subset(rng, verts)))
        sub = induced_subgraph(graph, x)
        checker.check(
            is_partition_flip_of(
                sub, induced_subgraph(flipped, x), s_classes(sub, s).parts
            ),
            tag + ': hereditarity'
        )
        continue
    return checker.report()


#
# Flip metric
# -----------
#


def suite_metric(seed=0, budget=None) -> SuiteReport:
    """Metric axioms of the flip distance and monotonicity of separation."""

    rng = np.random.default_rng(seed)
    checker = _Checker('metric')

    for idx in range(_count(30, budget)):
        n = int(rng.integers(2, 9))
        graph = random_graph(rng, n)
        for _ in range(3):
            parts = _random_partition(rng, list(range(n)), 3)
            query = separation_query(graph, parts, radius=1)
            tag = 'graph {} (n={}), partition {}'.format(idx, n, parts)
            dist = {
                (u, v): flip_distance(query, u, v)
                for u in range(n) for v in range(n)
            }
            checker.check(
                all(dist[v, v] == 0 for v in range(n)), tag + ': identity'
            )
            checker.check(
                all(dist[u, v] >= 2 for u, v in dist if u != v),
                tag + ': positivity'
            )
            checker.check(
                all(dist[u, v] == dist[v, u] for u, v in dist),
                tag + ': symmetry'
            )
            checker.check(
                all(
                    dist[u, w] <= dist[u, v] + dist[v, w]
                    for u, v, w in itertools.product(range(n), repeat=3)
                ), tag + ': triangle inequality'
            )
            continue
        continue

    for idx in range(_count(100, budget)):
        n = int(rng.integers(3, 6))
        graph = random_graph(rng, n, p=0.5)
        s = [int(i) for i in rng.choice(
            n, size=int(rng.integers(1, 3)), replace=False
        )]
        t = s[:-1]
        r = int(rng.integers(1, 4))
        coarse = separation_query(graph, s_classes(graph, t).parts, r)
        fine = separation_query(graph, s_classes(graph, s).parts, r)
        tag = 'instance {} (n={}, S={}, T={}, r={})'.format(idx, n, s, t, r)

        monotone = True
        for a, b in itertools.combinations(range(n), 2):
            if (is_r_separated(coarse, [a], [b]).separated
                    and not is_r_separated(fine, [a], [b]).separated):
                monotone = False
            continue
        checker.check(monotone, tag + ': separation kept by refinement')

        a_set = _random_subset(rng, range(n))
        b_set = [i for i in range(n) if i not in a_set and rng.random() < 0.5]
        if a_set and b_set and is_r_separated(fine, a_set, b_set).separated:
            checker.check(
                all(
                    is_r_separated(fine, [a], [b]).separated
                    for a in a_set for b in b_set
                ), tag + ': set separation is pointwise'
            )
        continue

    return checker.report()


#
# Classifiers
# -----------
#


def suite_classifier(seed=0, budget=None) -> SuiteReport:
    """Five blobs of a classifier recover its raised partition."""

    rng = np.random.default_rng(seed)
    checker = _Checker('classifier')
    found = 0
    for idx in range(_count(30, budget)):
        n_blobs = 5 + int(rng.integers(0, 2))
        n_types = int(rng.integers(1, 3 if n_blobs == 6 else 4))
        room = 14 - 2 * n_blobs - n_types
        n_extra = int(rng.integers(0, room + 1))
        n_exc = int(rng.integers(0, n_extra + 1))
        graph, blobs = planted_classifier_graph(
            rng, n_blobs, n_types, n_extra, n_exc
        )
        tag = 'instance {} (n={}, blobs={}, types={})'.format(
            idx, graph.order, n_blobs, n_types
        )

        classifier = search_classifier(graph, blobs, min_size=5)
        if not checker.check(classifier is not None, tag + ': classifier found'):
            continue
        found += 1
        checker.check(
            validate_classifier(graph, classifier) is None,
            tag + ': classifier valid'
        )

        raised = raised_partition(classifier)
        for five in itertools.combinations(classifier.blobs, 5):
            recovered = partition_from_five(graph, five)
            checker.check(
                recovered.parts == raised.parts
                and recovered.anchors == raised.anchors,
                tag + ': partition from blobs {}'.format(
                    [sorted(i) for i in five]
                )
            )
            continue
        continue

    checker.notes.append('{} classifiers found'.format(found))
    return checker.report()


#
# Predictor
# ---------
#


def case_instances():
    """Spiders with tips at distance exactly r, for r from two to five."""
    for r in range(2, 6):
        for m in (5, 6, 7):
            for extra in (False, True):
                yield (r, m, extra), spider_instance(m, r, extra)
                continue
            continue
        continue


def check_case_construction(graph, tips, r) -> typing.Optional[str]:
    """Check the flip construction on balls around tips pairwise at distance r.

    A classifier with representatives 0 and 1 is completed over the balls of
    radius ``ceil(r / 2) - 1`` around the tips, and the odd or even
    construction over its cells must make its centres distance-r independent.
    The reason of a failure is returned, None on success.
    """

    balls = [ball(graph, i, inner_radius(r)) for i in tips]
    classifier = complete_classifier(graph, balls, (0, 1))
    if classifier is None:
        return 'no classifier'
    classifier = canonize(graph, classifier)
    if validate_classifier(graph, classifier) is not None:
        return 'invalid classifier'
    if any(
            distance(graph, a, b) != r
            for a, b in itertools.combinations(tips, 2)
    ):
        return 'tips not at distance {}'.format(r)

    masks = [mask_of(i) for i in classifier.blobs]
    s = classifier.representatives
    s_prime = {i for i in s if all(graph.row(i) & m for m in masks)}
    q = q_partition(graph, raised_partition(classifier), s, s_prime)
    flips = flips_odd_case(q) if r % 2 == 1 else flips_even_case(q)
    centres = [i for i in tips if any(i in b for b in classifier.blobs)]
    if len(centres) < 5:
        return 'fewer than five blobs left'
    if not is_distance_independent(apply_flip_set(graph, flips), centres, r):
        return 'centres not separated by the flips'
    return None


def predictable_instances():
    """Stars and a spider for the oracle, with the vertex set handed to it."""
    for m in range(6, 13):
        graph = star_instance(m)
        for r in range(1, 5):
            yield ('star', m, r), graph, list(range(2, min(m, 9) + 1)), r
            continue
        continue
    graph, tips = spider_instance(7, 4)
    yield ('spider', 7, 4), graph, tips, 4


def star_union_instance(m1: int, m2: int) -> Graph:
    """Two disjoint stars, centres 0 and m1 + 1, leaves after each centre."""
    edges = [(0, i) for i in range(1, m1 + 1)]
    edges.extend((m1 + 1, m1 + 1 + i) for i in range(1, m2 + 1))
    return build_graph(m1 + m2 + 2, edges)


def seeded_predictable_instances(rng, count):
    """Flipped stars and spiders, and unions of stars, in random orders.

    The flipped instances are the plain ones after a few random atomic flips,
    the unions take leaves of both stars, and their radius of at least two
    makes both the odd and the even construction run.  Every instance comes
    with a random vertex order.
    """

    for idx in range(count):
        kind = ('flipped_star', 'flipped_spider', 'star_union')[idx % 3]
        if kind == 'flipped_star':
            m = int(rng.integers(6, 11))
            r = int(rng.integers(1, 5))
            graph = star_instance(m)
            x = list(range(1, min(m, 8) + 1))
        elif kind == 'flipped_spider':
            m = int(rng.integers(5, 7))
            r = int(rng.integers(2, 5))
            graph, x = spider_instance(m, r, extra=bool(rng.integers(2)))
        else:
            m1, m2 = (int(i) for i in rng.integers(4, 7, size=2))
            m = m1 + m2
            r = int(rng.integers(2, 5))
            graph = star_union_instance(m1, m2)
            x = list(range(1, 5)) + list(range(m1 + 2, m1 + 6))
        if kind != 'star_union':
            graph = apply_flip_set(
                graph, _random_flip_set(rng, graph.n, max_flips=2)
            )
        order = VertexOrder([int(i) for i in rng.permutation(graph.n)])
        yield (kind, m, r, idx), graph, x, r, order
        continue


def _check_prediction(checker, tag, graph, config, x, strict=True):
    """Check the predictor on every 5-subset kept by the oracle.

    Without ``strict``, instances the oracle fails on are skipped.  The
    number of checks made after the oracle is returned, zero for a skip.
    """

    try:
        res = fw_oracle(graph, config, x)
    except BudgetExceededError:
        res = None
    if res is None:
        if strict:
            checker.check(False, tag + ': oracle succeeded')
        return 0
    if strict:
        checker.check(True, tag + ': oracle succeeded')

    y, flips = res
    checker.check(len(y) >= 5, tag + ': at least five vertices kept')
    checker.check(
        is_distance_independent(apply_flip_set(graph, flips), y, config.radius),
        tag + ': oracle vertices independent'
    )
    n_checks = 2
    for z in itertools.combinations(config.order.sorted(y), 5):
        checker.check(
            predict(graph, config, z) == flips,
            tag + ': prediction from {}'.format(list(z))
        )
        n_checks += 1
        continue
    return n_checks


def suite_predict(seed=0, budget=None) -> SuiteReport:
    """Flip constructions and agreement of the predictor with the oracle."""

    checker = _Checker('predict')
    n_cases = _count(24, budget)
    for key, (graph, tips) in itertools.islice(case_instances(), n_cases):
        reason = check_case_construction(graph, tips, key[0])
        checker.check(
            reason is None,
            'spider r={}, m={}, extra={}: {}'.format(*key, reason)
        )
        continue

    n_inst = _count(29, budget)
    for key, graph, x, r in itertools.islice(predictable_instances(), n_inst):
        tag = '{} m={} r={}'.format(*key)
        _check_prediction(checker, tag, graph, predict_config(r), x)
        continue

    rng = np.random.default_rng(seed)
    hits = 0
    n_seeded = _count(24, budget)
    for key, graph, x, r, order in seeded_predictable_instances(rng, n_seeded):
        tag = '{} m={} r={} #{}'.format(*key)
        if _check_prediction(
                checker, tag, graph, predict_config(r, order=order), x,
                strict=False
        ):
            hits += 1
        continue
    checker.notes.append('oracle hits on seeded instances: {} of {}'.format(
        hits, n_seeded
    ))

    return checker.report()


#
# Era strategy
# ------------
#


STRATEGY_FAMILIES = (
    'path', 'cycle', 'grid', 'random_tree', 'bounded_degree_random'
)

STRATEGY_SIZES = (20, 50, 100, 200)

_CONNECTORS = ('random', 'greedy', 'farthest', 'scripted')


def flip_star_observer(graph: Graph, checker, tag):
    """An observer checking the era strategy after each round.

    After a completed move pair the arena must be an induced subgraph of the
    graph, and after the first move of an isolating pair the tracked vertices
    left in the arena must be isolated.
    """

    def observe(pos):
        state = pos.flipper_state
        if pos.round == 0:
            return
        if state.phase is Phase.PAIR_FIRST:
            checker.check(
                pos.arena_graph == induced_subgraph(graph, pos.arena),
                tag + ': induced arena after round {}'.format(pos.round)
            )
        elif state.is_era_end:
            checker.check(
                all(
                    pos.arena_graph.is_isolated(i)
                    for i in state.x if i in pos.arena
                ), tag + ': isolation in round {}'.format(pos.round)
            )
        return

    return observe


def play_flip_star(graph, r, connector, observer=None, max_rounds=1000):
    """Run the era strategy at the game radius r with unbounded flips."""
    config = game_config(
        GameVariant.FLIPPER, r, max_rounds=max_rounds, budget=UNBOUNDED
    )
    strategy = flip_star(graph, predict_config(2 * r))
    return run_game(graph, config, strategy, connector, observer=observer)


def suite_strategy(seed=0, budget=None) -> SuiteReport:
    """The era strategy wins against every built-in Connector.

    The most rounds to win of each family and radius, over the connectors,
    must not grow between the sizes of ``ROUNDS_CHECK_SIZES``.
    """

    checker = _Checker('strategy')
    games = [
        (n, family, r)
        for n in STRATEGY_SIZES for family in STRATEGY_FAMILIES
        for r in (1, 2)
    ]
    n_games = _count(len(games) * len(_CONNECTORS), budget)

    rounds = {}
    played = 0
    for n, family, r in games:
        graph = generate_sized(family, n, seed=seed)
        recorded = None
        for kind in _CONNECTORS:
            if played >= n_games:
                break
            played += 1
            tag = '{} n={} r={} vs {}'.format(family, n, r, kind)
            if kind == 'scripted':
                connector = ScriptedConnector.from_transcript(recorded)
            else:
                connector = make_connector(kind, seed=seed)
            transcript = play_flip_star(
                graph, r, connector,
                observer=flip_star_observer(graph, checker, tag)
            )
            won = checker.check(
                transcript.outcome.kind is OutcomeKind.FLIPPER_WINS,
                tag + ': won, got {}'.format(transcript.outcome.kind.value)
            )
            if kind == 'random':
                recorded = transcript
            elif kind == 'scripted':
                checker.check(
                    transcript.rounds == recorded.rounds,
                    tag + ': replay of the random game'
                )
            rounds.setdefault((family, r), {}).setdefault(n, []).append(
                transcript.outcome.round if won else None
            )
            continue
        continue

    for (family, r), by_size in sorted(rounds.items()):
        most = {n: most_rounds(values) for n, values in by_size.items()}
        checker.notes.append('{} r={}: most rounds to win {}'.format(
            family, r, ' '.join(
                '{}:{}'.format(n, '-' if most[n] is None else most[n])
                for n in sorted(most)
            )
        ))
        low, high = ROUNDS_CHECK_SIZES
        if low in most and high in most:
            checker.check(
                not rounds_grow(most, low, high),
                '{} r={}: most rounds to win grow from n={} to n={}'.format(
                    family, r, low, high
                )
            )
        continue

    return checker.report()


#
# Growth of the rounds to win
# ---------------------------
#


ROUNDS_CHECK_SIZES = (50, 200)


def most_rounds(values) -> typing.Optional[int]:
    """The most rounds to win among games, None if any of them was lost."""
    values = list(values)
    if not values or any(i is None for i in values):
        return None
    return max(values)


def rounds_grow(by_size, low, high) -> bool:
    """Tell if the rounds to win at a size exceed those at a smaller one.

    ``by_size`` maps sizes to the rounds to win, None for lost games.  A loss
    at the larger size counts as growth, a loss at the smaller one only does
    not.
    """

    small, large = by_size[low], by_size[high]
    if large is None:
        return True
    if small is None:
        return False
    return large > small


#
# Single flip wrapper
# -------------------
#


def check_wrapped_game(graph, r, pad, seed, max_rounds=5000):
    """Play the wrapped era strategy and replay its inner game.

    The rounds are cut into blocks at the consultations of the inner
    strategy.  The inner game is replayed with the first centre and the
    joint flips of each block, and after every complete block the arena of
    the wrapped game must be an induced subgraph of the inner arena.  The
    list of failure descriptions is returned.
    """

    positions = []
    config = game_config(
        GameVariant.FLIPPER, r, max_rounds=max_rounds, budget=1
    )
    wrapped = multi_to_single(flip_star(graph, predict_config(2 * r)), pad)
    transcript = run_game(
        graph, config, wrapped, make_connector('random', seed=seed),
        observer=positions.append
    )
    failures = []
    if transcript.outcome.kind is not OutcomeKind.FLIPPER_WINS:
        failures.append('wrapped game not won: {}'.format(
            transcript.outcome.kind.value
        ))

    # Positions after each round, with the consultation counts.
    after = positions[1:]
    blocks = []
    prev = 0
    for idx, pos in enumerate(after):
        consults = pos.flipper_state.consults
        if consults > prev:
            blocks.append([idx])
        elif blocks:
            blocks[-1].append(idx)
        prev = consults
        continue

    inner_config = config._replace(budget=UNBOUNDED)
    inner = initial_position(graph, inner_config)
    start = 0
    for num, block in enumerate(blocks):
        end = after[block[-1]]
        if end.flipper_state.queue:
            break
        center = transcript.rounds[block[0]].connector
        flips = frozenset(
            i for idx in block for i in transcript.rounds[idx].flips
            if i != NO_OP_FLIP
        )
        try:
            inner = step(inner, center, flips)
        except ValueError as exc:
            failures.append('block {}: inner replay failed, {}'.format(num, exc))
            break
        if not (end.arena <= inner.arena and end.arena_graph == induced_subgraph(
                inner.arena_graph, end.arena
        )):
            failures.append('block {}: arena not inside the inner arena'.format(
                num
            ))
        if block[0] != start:
            failures.append('block {}: starts at round {}, expecting {}'.format(
                num, block[0] + 1, start + 1
            ))
        start += max(len(flips), pad or 1)
        continue
    return failures


def suite_wrapper(seed=0, budget=None) -> SuiteReport:
    """Single flip games stay inside the simulated multi-flip games."""

    checker = _Checker('wrapper')
    for idx in range(_count(10, budget)):
        game_seed = seed + idx
        graph = generate_sized('random_tree', 24, seed=game_seed)
        failures = check_wrapped_game(graph, 1, 24, game_seed)
        checker.check(
            not failures, 'seed {}: {}'.format(game_seed, '; '.join(failures))
        )
        continue
    return checker.report()


#
# Translations
# ------------
#


def suite_translations(seed=0, budget=None) -> SuiteReport:
    """Separator to Pseudo-Flipper to Flipper translations."""

    rng = np.random.default_rng(seed)
    checker = _Checker('translations')

    for idx in range(_count(20, budget)):
        n = int(rng.integers(4, 6))
        graph = random_graph(rng, n, p=0.4)
        picks = [int(i) for i in rng.integers(0, n, size=n)]
        tag = 'separator game {} (n={}, picks={})'.format(idx, n, picks)
        config = game_config(
            GameVariant.PSEUDO_FLIPPER, 1, max_rounds=n, budget=UNBOUNDED
        )

        positions = []
        run_game(
            graph, config, separator_to_pseudo_flipper(ScriptedSeparator(picks)),
            make_connector('random', seed=_seed_of(rng)),
            observer=positions.append
        )
        for prev, pos in zip(positions, positions[1:]):
            separators = pos.flipper_state.separators
            checker.check(
                pos.partition == s_classes(graph, separators).parts,
                tag + ': partition of the separators in round {}'.format(
                    pos.round
                )
            )
            checker.check(
                len(pos.partition) - len(prev.partition)
                <= len(prev.partition) + 1,
                tag + ': splits in round {}'.format(pos.round)
            )
            continue
        continue

    for idx in range(_count(10, budget)):
        n = int(rng.integers(2, 5))
        graph = random_graph(rng, n, p=0.5)
        tag = 'flipper game {} (n={})'.format(idx, n)
        config = game_config(
            GameVariant.FLIPPER, 1, max_rounds=10000, budget=UNBOUNDED
        )
        strategy = pseudo_flipper_to_flipper(
            separator_to_pseudo_flipper(EchoSeparator()), 1
        )

        positions = []
        transcript = run_game(
            graph, config, strategy,
            make_connector('random', seed=_seed_of(rng)),
            observer=positions.append
        )
        checker.check(
            transcript.outcome.kind is OutcomeKind.FLIPPER_WINS,
            tag + ': won, got {}'.format(transcript.outcome.kind.value)
        )
        for pos in positions:
            state = pos.flipper_state
            checker.check(
                pos.arena <= state.arena,
                tag + ': inside the simulated arena in round {}'.format(
                    pos.round
                )
            )
            checker.check(
                pos.arena_graph == induced_subgraph(
                    apply_flip_set(graph, state.applied), pos.arena
                ), tag + ': induced in the flip reached in round {}'.format(
                    pos.round
                )
            )
            continue
        continue

    return checker.report()


#
# Suite registry
# --------------
#


SUITES = {
    'flips': suite_flips,
    's_classes': suite_s_classes,
    'metric': suite_metric,
    'classifier': suite_classifier,
    'predict': suite_predict,
    'strategy': suite_strategy,
    'wrapper': suite_wrapper,
    'translations': suite_translations
}


def run_suites(name='all', seed=0, budget=None) -> typing.List[SuiteReport]:
    """Run a suite by its name, or all of them for ``all``."""

    if name == 'all':
        names = list(SUITES)
    elif name in SUITES:
        names = [name]
    else:
        raise ValueError(
            'Invalid verification suite', name,
            'expecting one of', ['all'] + list(SUITES)
        )
    if budget is not None and budget < 0:
        raise ValueError('Invalid budget', budget, 'expecting non-negative')

    reports = []
    for i in names:
        logger.info('Running verification suite %s', i)
        reports.append(SUITES[i](seed=seed, budget=budget))
        continue
    return reports
