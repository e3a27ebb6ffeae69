"""Strategies for both sides of the games.

Strategies of the flipping side follow the layer of strategies with internal
states: :py:meth:`FlipperStrategy.init` gives the starting state and
:py:meth:`FlipperStrategy.next` maps a localized position and the state to a
move and the new state.  The state is kept in the positions of the game, so
the strategies themselves only hold caches.  Connector strategies just map
positions to moves.
"""

import abc
import enum
import logging
import math
import typing

import numpy as np

from .flips import (
    FlipSet, NO_OP_FLIP, EMPTY_FLIPS, compose_flip_sets, isolating_flips,
    partition_flip_pairs, partition_flip_at, normalize_partition, s_classes
)
from .game import (
    GameConfig, GameVariant, Position, IllegalMoveError, StopGame, UNBOUNDED,
    game_config, validate_flipper_move
)
from .graph import Graph, VertexSet, INF, ball_mask, distances_from
from .metric import separation_query, s_class_query, flip_ball_mask
from .predict import PredictConfig, predict
from .utils import mask_of, set_of_mask


logger = logging.getLogger(__name__)

FLIPPER_VARIANTS = frozenset([
    GameVariant.FLIPPER, GameVariant.INDUCED_SUBGRAPH_FLIPPER
])


class ScriptExhaustedError(StopGame):
    """A scripted strategy ran out of moves."""
    pass


#
# Strategy interfaces
# -------------------
#


class FlipperStrategy(abc.ABC):
    """Strategy of the flipping side.

    The variants a strategy can play are listed in ``variants``.  Moves are
    flip sets in the Flipper variants, partitions in the Pseudo-Flipper game
    and vertex sets in the Separation game.
    """

    variants = FLIPPER_VARIANTS

    def init(self, graph: Graph, config: GameConfig):
        """Get the internal state at the start of a game."""
        return None

    @abc.abstractmethod
    def next(self, view: Position, state) -> typing.Tuple[typing.Any, typing.Any]:
        """Get the move and the new state for a localized position."""
        pass


class PseudoFlipperStrategy(FlipperStrategy):
    """Strategy of Pseudo-Flipper, moves are refined partitions."""

    variants = frozenset([GameVariant.PSEUDO_FLIPPER])


class SeparatorStrategy(FlipperStrategy):
    """Strategy of Separator, moves are sets of new separator vertices."""

    variants = frozenset([GameVariant.SEPARATION])


class ConnectorStrategy(abc.ABC):
    """Strategy of Connector.

    The move is a vertex of the arena, or a vertex set for the
    induced-subgraph variant.  Connector strategies may keep mutable state,
    so each instance serves a single game.
    """

    @abc.abstractmethod
    def next(self, pos: Position):
        """Get the move in a position."""
        pass


#
# The era strategy
# ----------------
#


class Phase(enum.Enum):
    """Where Flipper stands in a move pair.

    ``PAIR_FIRST``
        The next move starts a move pair with a fresh flip set.

    ``PAIR_SECOND``
        The next move applies the pending flip set again.

    """

    PAIR_FIRST = 0
    PAIR_SECOND = 1


class FlipStarState(typing.NamedTuple):
    """Internal state of the era strategy.

    ``x`` holds the tracked vertices in the order they were added and
    ``index`` the current move pair within the era.  The pairs of an era are
    one for each 5-subset of ``x`` and a last one isolating ``x``.
    """

    x: typing.Tuple[int, ...]
    era: int
    phase: Phase
    pending: FlipSet
    index: int

    @property
    def n_subset_pairs(self) -> int:
        """The number of move pairs for 5-subsets in the era."""
        return math.comb(len(self.x), 5)

    @property
    def is_era_end(self) -> bool:
        """If the current move pair is the isolating one."""
        return self.index >= self.n_subset_pairs


def nth_combination(pool, r, index):
    """Get the combination at the index in lexicographic order."""

    pool = tuple(pool)
    n = len(pool)
    c = math.comb(n, r)
    if index < 0 or index >= c:
        raise IndexError(index)

    res = []
    while r:
        c, n, r = c * r // n, n - 1, r - 1
        while index >= c:
            index -= c
            c, n = c * (n - r) // n, n - 1
        res.append(pool[-1 - n])
    return tuple(res)


class FlipStar(FlipperStrategy):
    """The era strategy winning the Flipper game by predictable flips.

    Flipper plays in move pairs, applying a flip set, letting Connector
    localize and applying the same flip set again, so that after every pair
    the arena is an induced subgraph of the original graph.  In each era, a
    pair is played for every 5-subset Z of the tracked vertices X, defined by
    the flips predicted from Z at radius 2r in the original graph, and a last
    pair isolating X.  Connector then has to keep some vertex outside X, the
    smallest of which joins X.

    Predictions are cached by Z for the lifetime of the strategy, which is
    bound to a single graph.
    """

    def __init__(self, graph: Graph, config: PredictConfig):
        """Initialize the strategy for the graph."""

        if config.radius < 2 or config.radius % 2 != 0:
            raise ValueError(
                'Invalid prediction radius', config.radius,
                'expecting 2r for a game radius r >= 1'
            )
        config.order.check(graph)
        self._graph = graph
        self._config = config
        self._predictions = {}

    @property
    def graph(self) -> Graph:
        return self._graph

    @property
    def config(self) -> PredictConfig:
        return self._config

    def predicted(self, z) -> FlipSet:
        """Get the flips predicted from five vertices, cached."""
        key = tuple(sorted(z))
        if key not in self._predictions:
            self._predictions[key] = predict(self._graph, self._config, key)
        return self._predictions[key]

    def init(self, graph, config):
        if graph != self._graph:
            raise ValueError(
                'Invalid graph for the strategy', graph,
                'expecting the graph it was created for'
            )
        if 2 * config.radius != self._config.radius:
            raise ValueError(
                'Invalid game radius', config.radius,
                'expecting half of the prediction radius',
                self._config.radius
            )
        return FlipStarState(
            x=(), era=1, phase=Phase.PAIR_FIRST, pending=EMPTY_FLIPS, index=0
        )

    def next(self, view, state: FlipStarState):
        if state.phase is Phase.PAIR_SECOND:
            return state.pending, self._close_pair(view, state)

        xs = self._config.order.sorted(state.x)
        if state.is_era_end:
            flips = isolating_flips(self._graph, xs)
        else:
            flips = self.predicted(nth_combination(xs, 5, state.index))
        return flips, state._replace(phase=Phase.PAIR_SECOND, pending=flips)

    def _close_pair(self, view, state):
        """The state after the second move of a pair."""

        if not state.is_era_end:
            return state._replace(
                phase=Phase.PAIR_FIRST, pending=EMPTY_FLIPS,
                index=state.index + 1
            )

        fresh = [i for i in view.arena if i not in state.x]
        if not fresh:
            logger.debug('No vertex outside the tracked set in era %d', state.era)
            x = state.x
        else:
            x = state.x + (self._config.order.min(fresh),)
        return FlipStarState(
            x=x, era=state.era + 1, phase=Phase.PAIR_FIRST,
            pending=EMPTY_FLIPS, index=0
        )


def flip_star(graph: Graph, config: PredictConfig) -> FlipStar:
    """Make the era strategy for a graph.

    The configuration is the one of the predictor, at twice the radius of the
    game.
    """
    return FlipStar(graph, config)


#
# Single flips
# ------------
#


class QueueWrapperState(typing.NamedTuple):
    """State of the inner strategy with the atomic flips still to play."""

    inner: typing.Any
    queue: typing.Tuple[typing.Any, ...]
    consults: int


class QueueWrapper(FlipperStrategy):
    """Play the flips of a strategy one atomic flip per round.

    The inner strategy is only consulted when the queue is empty, its flips
    are queued in their canonical order and popped one per round.  With a
    padding k, the queue is filled up with no-op flips to k entries, so that
    every inner move takes exactly k rounds when it has at most k flips.
    """

    def __init__(self, inner: FlipperStrategy, pad: typing.Optional[int] = None):
        """Initialize the wrapper."""
        if pad is not None and pad < 1:
            raise ValueError('Invalid padding', pad, 'expecting positive')
        self._inner = inner
        self._pad = pad
        self.variants = inner.variants & FLIPPER_VARIANTS

    @property
    def inner(self) -> FlipperStrategy:
        return self._inner

    def init(self, graph, config):
        return QueueWrapperState(
            inner=self._inner.init(graph, config._replace(budget=UNBOUNDED)),
            queue=(), consults=0
        )

    def next(self, view, state: QueueWrapperState):
        if state.queue:
            return frozenset(state.queue[:1]), state._replace(
                queue=state.queue[1:]
            )

        flips, inner = self._inner.next(view, state.inner)
        queue = sorted(flips)
        if self._pad is not None and len(queue) < self._pad:
            queue.extend([NO_OP_FLIP] * (self._pad - len(queue)))
        if not queue:
            queue.append(NO_OP_FLIP)
        return frozenset(queue[:1]), QueueWrapperState(
            inner=inner, queue=tuple(queue[1:]),
            consults=state.consults + 1
        )


def multi_to_single(
        inner: FlipperStrategy, pad: typing.Optional[int] = None
) -> QueueWrapper:
    """Wrap a strategy into one playing a single flip per round."""
    return QueueWrapper(inner, pad)


#
# From Separator to Pseudo-Flipper
# --------------------------------
#


class SimulatedSeparatorState(typing.NamedTuple):
    """The separators picked so far with the state of Separator."""

    separators: VertexSet
    inner: typing.Any


class SeparatorToPseudoFlipper(PseudoFlipperStrategy):
    """Pseudo-Flipper simulating Separator.

    After each move of Connector, Separator is asked for its move with the
    current separators, and the partition is refined into the classes of the
    enlarged separator set.  Each class of the old set splits into at most two
    and the new vertex gets its own class, so a round needs at most one more
    split than there are parts.
    """

    def __init__(self, separator: SeparatorStrategy):
        """Initialize the simulation."""
        self._separator = separator

    def init(self, graph, config):
        sep_config = config._replace(variant=GameVariant.SEPARATION)
        return SimulatedSeparatorState(
            separators=frozenset(),
            inner=self._separator.init(graph, sep_config)
        )

    def next(self, view, state: SimulatedSeparatorState):
        sep_view = view._replace(
            config=view.config._replace(variant=GameVariant.SEPARATION),
            partition=None, separators=state.separators
        )
        picks, inner = self._separator.next(sep_view, state.inner)
        if isinstance(picks, int):
            picks = (picks,)
        separators = state.separators | frozenset(picks)
        parts = s_classes(view.graph, separators).parts
        return parts, SimulatedSeparatorState(
            separators=separators, inner=inner
        )


def separator_to_pseudo_flipper(
        separator: SeparatorStrategy
) -> SeparatorToPseudoFlipper:
    """Make a Pseudo-Flipper strategy from a Separator strategy."""
    return SeparatorToPseudoFlipper(separator)


#
# From Pseudo-Flipper to Flipper
# ------------------------------
#


class SimulatedPseudoFlipperState(typing.NamedTuple):
    """Flipper state simulating a Pseudo-Flipper game of twice the radius.

    ``arena`` and ``partition`` are those of the simulated game, ``round`` is
    the number of Flipper rounds played in the current stage and ``applied``
    the partition flip the arena is currently an induced subgraph of.
    """

    arena: VertexSet
    partition: tuple
    centers: typing.Tuple[int, ...]
    inner: typing.Any
    stage: int
    round: int
    applied: FlipSet


class PseudoFlipperToFlipper(FlipperStrategy):
    """Flipper simulating Pseudo-Flipper in the game of twice the radius.

    For the current partition P of the simulated game, Flipper goes through
    all the P-flips of the original graph in their enumeration order, one per
    round, with the last round flipping back to the original graph.  Each
    move is the difference between consecutive P-flips, so the arena stays an
    induced subgraph of the P-flip reached.  The centre of the last round is
    then played in the simulated game, whose arena cannot be left by the
    current arena, and the partition is refined as Pseudo-Flipper says.
    """

    def __init__(self, pseudo_flipper: PseudoFlipperStrategy, radius: int):
        """Initialize the simulation for a Flipper game of the radius."""
        if radius < 0:
            raise ValueError('Invalid radius', radius, 'expecting non-negative')
        self._pf = pseudo_flipper
        self._radius = radius
        self._graph = None
        self._pf_config = None

    @property
    def pf_config(self) -> typing.Optional[GameConfig]:
        """The configuration of the simulated game."""
        return self._pf_config

    def init(self, graph, config):
        if config.radius != self._radius:
            raise ValueError(
                'Invalid game radius', config.radius,
                'expecting', self._radius
            )
        self._graph = graph
        self._pf_config = game_config(
            GameVariant.PSEUDO_FLIPPER, 2 * self._radius,
            max_rounds=config.max_rounds, budget=UNBOUNDED,
            partition_cap=config.partition_cap
        )
        arena = graph.vertex_set
        partition = (arena,) if arena else ()
        return SimulatedPseudoFlipperState(
            arena=arena, partition=partition, centers=(),
            inner=self._pf.init(graph, self._pf_config), stage=0, round=0,
            applied=EMPTY_FLIPS
        )

    def next(self, view, state: SimulatedPseudoFlipperState):
        pairs = partition_flip_pairs(
            state.partition, self._pf_config.partition_cap
        )
        n_flips = 1 << len(pairs)
        j = state.round + 1
        target = partition_flip_at(pairs, j) if j < n_flips else EMPTY_FLIPS
        move = compose_flip_sets(state.applied, target)
        if j < n_flips:
            return move, state._replace(round=j, applied=target)
        return move, self._close_stage(view.center, state)

    def _close_stage(self, center, state):
        """Play the centre in the simulated game and refine the partition."""

        graph = self._graph
        query = separation_query(
            graph, state.partition, self._pf_config.radius,
            self._pf_config.partition_cap
        )
        arena = state.arena & set_of_mask(flip_ball_mask(query, center))
        pf_view = Position(
            graph=graph, config=self._pf_config, round=state.stage,
            arena=arena, arena_graph=None, partition=state.partition,
            separators=frozenset(), centers=state.centers + (center,)
        )

        if len(arena) <= 1:
            partition, inner = None, state.inner
        else:
            partition, inner = self._pf.next(pf_view, state.inner)
            reason = validate_flipper_move(pf_view, partition)
            if reason is not None:
                raise IllegalMoveError(
                    'Illegal Pseudo-Flipper move', partition, reason
                )
        logger.debug(
            'Stage %d closed at centre %d, simulated arena of %d vertices',
            state.stage, center, len(arena)
        )
        return SimulatedPseudoFlipperState(
            arena=arena,
            partition=(
                state.partition if partition is None
                else normalize_partition(partition)
            ),
            centers=pf_view.centers, inner=inner, stage=state.stage + 1,
            round=0, applied=EMPTY_FLIPS
        )


def pseudo_flipper_to_flipper(
        pseudo_flipper: PseudoFlipperStrategy, radius: int
) -> PseudoFlipperToFlipper:
    """Make a Flipper strategy of the radius from a Pseudo-Flipper strategy.

    The Pseudo-Flipper strategy is played in the game of twice the radius.
    """
    return PseudoFlipperToFlipper(pseudo_flipper, radius)


#
# Scripted strategies
# -------------------
#


class ScriptedFlipper(FlipperStrategy):
    """Replay a fixed list of moves of the flipping side.

    The state is the number of moves played.
    """

    def __init__(self, moves, variants=None):
        """Initialize with the moves and the variants they are meant for."""
        self._moves = tuple(moves)
        if variants is not None:
            self.variants = frozenset(variants)
        else:
            self.variants = frozenset(GameVariant)

    def init(self, graph, config):
        return 0

    def next(self, view, state):
        if state >= len(self._moves):
            raise ScriptExhaustedError(
                'Scripted moves exhausted after {}'.format(len(self._moves))
            )
        return self._moves[state], state + 1


class ScriptedSeparator(SeparatorStrategy):
    """Separator picking the given vertices in turn."""

    def __init__(self, picks):
        self._picks = tuple(picks)

    def init(self, graph, config):
        return 0

    def next(self, view, state):
        if state >= len(self._picks):
            raise ScriptExhaustedError(
                'Scripted picks exhausted after {}'.format(len(self._picks))
            )
        pick = self._picks[state]
        if isinstance(pick, int):
            pick = (pick,)
        return frozenset(pick), state + 1


class EchoSeparator(SeparatorStrategy):
    """Separator adding the centre just played by Connector."""

    def next(self, view, state):
        return frozenset([view.center]), state


#
# Connectors
# ----------
#


class ConnectorKind(enum.Enum):
    """The built-in Connector strategies.

    ``RANDOM``
        A uniformly random centre from a seeded generator.

    ``GREEDY_SURVIVOR``
        The centre keeping the most of the arena, ties broken towards the
        smaller vertex.

    ``FARTHEST_FROM_PLAYED``
        The centre farthest from the centres played before, by the smallest
        distance to them, ties broken towards the smaller vertex.  With no
        centres played yet, the greedy choice is made.

    ``SCRIPTED``
        A fixed list of moves.

    """

    RANDOM = 'random'
    GREEDY_SURVIVOR = 'greedy'
    FARTHEST_FROM_PLAYED = 'farthest'
    SCRIPTED = 'scripted'


def survivor_mask(pos: Position, center: int) -> int:
    """The mask of the arena left when the centre is played."""

    config = pos.config
    variant = config.variant
    if variant.is_flipper:
        return ball_mask(pos.arena_graph, center, config.radius)
    elif variant is GameVariant.PSEUDO_FLIPPER:
        query = separation_query(
            pos.graph, pos.partition, config.radius, config.partition_cap
        )
    else:
        query = s_class_query(
            pos.graph, pos.separators, config.radius, config.partition_cap
        )
    return mask_of(pos.arena) & flip_ball_mask(query, center)


def full_ball_move(pos: Position, center: int):
    """The move playing the full ball around the centre."""
    if pos.variant is GameVariant.INDUCED_SUBGRAPH_FLIPPER:
        return set_of_mask(survivor_mask(pos, center))
    return center


class RandomConnector(ConnectorStrategy):
    """Connector playing uniformly random centres."""

    def __init__(self, seed=None):
        self._rng = np.random.default_rng(seed)

    def next(self, pos):
        verts = sorted(pos.arena)
        center = verts[int(self._rng.integers(len(verts)))]
        return full_ball_move(pos, center)


class GreedySurvivorConnector(ConnectorStrategy):
    """Connector keeping as much of the arena as possible."""

    def next(self, pos):
        center = max(
            sorted(pos.arena),
            key=lambda c: (survivor_mask(pos, c).bit_count(), -c)
        )
        return full_ball_move(pos, center)


class FarthestFromPlayedConnector(ConnectorStrategy):
    """Connector moving away from its earlier centres.

    Distances are taken in the arena in the Flipper variants and in the
    original graph otherwise.  Earlier centres no longer in the arena are at
    infinite distance.
    """

    def __init__(self):
        self._greedy = GreedySurvivorConnector()

    def next(self, pos):
        if not pos.centers:
            return self._greedy.next(pos)

        graph = pos.arena_graph if pos.variant.is_flipper else pos.graph
        dists = [
            distances_from(graph, i) for i in sorted(set(pos.centers))
            if i in graph
        ]

        def score(c):
            return min((i.get(c, INF) for i in dists), default=INF)

        center = max(sorted(pos.arena), key=lambda c: (score(c), -c))
        return full_ball_move(pos, center)


class ScriptedConnector(ConnectorStrategy):
    """Connector replaying a fixed list of moves."""

    def __init__(self, moves):
        self._moves = tuple(moves)
        self._idx = 0

    @classmethod
    def from_transcript(cls, transcript):
        """Replay the Connector moves of a transcript."""
        return cls(i.connector for i in transcript.rounds)

    def next(self, pos):
        if self._idx >= len(self._moves):
            raise ScriptExhaustedError(
                'Scripted moves exhausted after {}'.format(len(self._moves))
            )
        move = self._moves[self._idx]
        self._idx += 1
        return move


def make_connector(kind, seed=None, moves=None) -> ConnectorStrategy:
    """Make a built-in Connector strategy.

    The kind is a :py:class:`ConnectorKind` or its value.  The seed is only
    used by the random Connector and the moves only by the scripted one.
    """

    if not isinstance(kind, ConnectorKind):
        try:
            kind = ConnectorKind(kind)
        except ValueError:
            raise ValueError(
                'Invalid Connector kind', kind,
                'expecting one of', [i.value for i in ConnectorKind]
            )

    if kind is ConnectorKind.RANDOM:
        return RandomConnector(seed)
    elif kind is ConnectorKind.GREEDY_SURVIVOR:
        return GreedySurvivorConnector()
    elif kind is ConnectorKind.FARTHEST_FROM_PLAYED:
        return FarthestFromPlayedConnector()
    else:
        if moves is None:
            raise ValueError(
                'Invalid scripted Connector', moves, 'expecting a move list'
            )
        return ScriptedConnector(moves)
