"""Game positions, moves and runs.

Four games are played here between a Connector and a player on the flipping
side, which is Flipper, Pseudo-Flipper or Separator depending on the variant.
In the two Flipper variants the arena is a graph that Connector localizes and
Flipper flips.  In the Pseudo-Flipper and the Separation games the original
graph is kept, and the arena is a vertex set cut down by flip balls measured
over a partition of the original graph.
"""

import enum
import json
import logging
import typing

from .flips import (
    AtomicFlip, Partition, EMPTY_FLIPS, DEFAULT_PARTITION_CAP,
    apply_flip_set, normalize_partition, check_partition, flip_set_to_json,
    flip_set_from_json
)
from .graph import Graph, VertexSet, ball_mask, induced_subgraph
from .metric import (
    separation_query, s_class_query, flip_ball_mask, flip_graphs
)
from .utils import BudgetExceededError, StepCounter, set_of_mask


logger = logging.getLogger(__name__)


#
# Configuration
# -------------
#


class GameVariant(enum.Enum):
    """The variants of the game.

    ``FLIPPER``
        Connector picks a vertex of the arena and the arena becomes the
        subgraph induced by the ball of radius r around it, then Flipper
        applies a set of flips to it.

    ``INDUCED_SUBGRAPH_FLIPPER``
        As above, but Connector may pick any vertex set contained in some ball
        of radius r of the arena.

    ``PSEUDO_FLIPPER``
        The arena is a vertex set of the original graph.  Connector picks a
        centre in it and the arena keeps the vertices within flip distance r
        over the current partition, then Pseudo-Flipper refines the partition
        by splitting parts.

    ``SEPARATION``
        As above, but the partition is always the partition into S-classes
        and Separator adds vertices to S.

    """

    FLIPPER = 'flipper'
    INDUCED_SUBGRAPH_FLIPPER = 'induced_subgraph_flipper'
    PSEUDO_FLIPPER = 'pseudo_flipper'
    SEPARATION = 'separation'

    @property
    def is_flipper(self) -> bool:
        """If the arena is a graph to be flipped."""
        return self in (
            GameVariant.FLIPPER, GameVariant.INDUCED_SUBGRAPH_FLIPPER
        )

    @property
    def player(self) -> str:
        """The name of the player on the flipping side."""
        if self.is_flipper:
            return 'flipper'
        elif self is GameVariant.PSEUDO_FLIPPER:
            return 'pseudo_flipper'
        else:
            return 'separator'


class FlipBudget(typing.NamedTuple):
    """Number of elementary moves allowed in each round.

    In the Flipper variants it bounds the atomic flips, in the Pseudo-Flipper
    game the part splits and in the Separation game the added vertices.  The
    budget of round i is k, or ``max(i, k)`` for growing budgets, and there is
    no bound when k is None.
    """

    k: typing.Optional[int] = 1
    growing: bool = False

    def __call__(self, i: int) -> typing.Optional[int]:
        """Get the budget of the given round."""
        if self.k is None:
            return None
        return max(i, self.k) if self.growing else self.k

    def to_json(self):
        return {'k': self.k, 'growing': self.growing}


UNBOUNDED = FlipBudget(k=None)

DEFAULT_MAX_ROUNDS = 1000


class GameConfig(typing.NamedTuple):
    """Configuration of a game."""

    variant: GameVariant
    radius: int
    max_rounds: int = DEFAULT_MAX_ROUNDS
    budget: FlipBudget = FlipBudget()
    partition_cap: int = DEFAULT_PARTITION_CAP


def game_config(
        variant, radius: int, max_rounds=DEFAULT_MAX_ROUNDS, budget=None,
        partition_cap=DEFAULT_PARTITION_CAP
) -> GameConfig:
    """Form a validated game configuration.

    The variant can be given by its value, like ``'flipper'``, and the budget
    by an integer or None for the unbounded budget.
    """

    if not isinstance(variant, GameVariant):
        try:
            variant = GameVariant(variant)
        except ValueError:
            raise ValueError(
                'Invalid game variant', variant,
                'expecting one of', [i.value for i in GameVariant]
            )
    if radius < 0:
        raise ValueError('Invalid radius', radius, 'expecting non-negative')
    if max_rounds < 1:
        raise ValueError(
            'Invalid round limit', max_rounds, 'expecting a positive integer'
        )

    if budget is None:
        budget = FlipBudget()
    elif not isinstance(budget, FlipBudget):
        budget = FlipBudget(k=budget)
    if budget.k is not None and budget.k < 1:
        raise ValueError(
            'Invalid budget', budget.k, 'expecting a positive integer or None'
        )

    return GameConfig(
        variant=variant, radius=radius, max_rounds=max_rounds, budget=budget,
        partition_cap=partition_cap
    )


#
# Positions
# ---------
#


class Position(typing.NamedTuple):
    """A position of a game.

    The original graph and the configuration are carried along.  In the
    Flipper variants ``arena_graph`` is the current arena and ``arena`` its
    vertex set, in the other games ``arena_graph`` is None.  The partition is
    only used in the Pseudo-Flipper game and the separators in the Separation
    game.  ``centers`` holds the centres played by Connector so far.

    Positions are handed to the strategies both at the start of a round and
    right after the move of Connector, the latter are called *localized*.
    """

    graph: Graph
    config: GameConfig
    round: int
    arena: VertexSet
    arena_graph: typing.Optional[Graph]
    partition: typing.Optional[Partition]
    separators: VertexSet
    centers: typing.Tuple[int, ...]
    flipper_state: typing.Any = None

    @property
    def center(self) -> typing.Optional[int]:
        """The last centre played by Connector."""
        return self.centers[-1] if self.centers else None

    @property
    def variant(self) -> GameVariant:
        return self.config.variant

    @property
    def is_won(self) -> bool:
        """If the flipping side has won in this position."""
        return len(self.arena) <= 1


def initial_position(graph: Graph, config: GameConfig, state=None) -> Position:
    """Get the starting position of a game on a graph."""

    variant = config.variant
    return Position(
        graph=graph, config=config, round=0, arena=graph.vertex_set,
        arena_graph=graph if variant.is_flipper else None,
        partition=(
            normalize_partition([graph.vertex_set])
            if variant is GameVariant.PSEUDO_FLIPPER else None
        ),
        separators=frozenset(), centers=(), flipper_state=state
    )


class IllegalMoveError(ValueError):
    """A move not allowed in the position."""
    pass


class StopGame(Exception):
    """Raised by a strategy to abort the game cleanly."""
    pass


#
# Connector moves
# ---------------
#


def covering_center(graph: Graph, vertices, radius: int) -> typing.Optional[int]:
    """Find the smallest vertex whose ball of the radius covers the vertices.

    None is returned when no ball covers them.
    """

    mask = graph.check_vertices(vertices)
    if not mask:
        return None
    first = (mask & -mask).bit_length() - 1
    candidates = sorted(set_of_mask(ball_mask(graph, first, radius)))
    for c in candidates:
        if ball_mask(graph, c, radius) & mask == mask:
            return c
        continue
    return None


def _check_vertex_move(pos, move):
    if isinstance(move, bool) or not isinstance(move, int):
        return 'expecting a vertex, got {!r}'.format(move)
    if move not in pos.arena:
        return 'vertex {} is not in the arena'.format(move)
    return None


def validate_connector_move(pos: Position, move) -> typing.Optional[str]:
    """Check a move of Connector, giving None or the reason it is illegal.

    The move is a vertex of the arena, except in the induced-subgraph variant
    where it is a non-empty set of arena vertices lying in some ball of radius
    r of the arena.
    """

    if pos.is_won:
        return 'the game is already won'

    if pos.variant is not GameVariant.INDUCED_SUBGRAPH_FLIPPER:
        return _check_vertex_move(pos, move)

    try:
        vertices = frozenset(move)
    except TypeError:
        return 'expecting a vertex set, got {!r}'.format(move)
    if not vertices:
        return 'empty vertex set'
    outside = vertices - pos.arena
    if outside:
        return 'vertices {} are not in the arena'.format(sorted(outside))
    if covering_center(pos.arena_graph, vertices, pos.config.radius) is None:
        return 'no ball of radius {} in the arena covers {}'.format(
            pos.config.radius, sorted(vertices)
        )
    return None


def localize(pos: Position, move, counter=None) -> Position:
    """Apply a move of Connector.

    :py:class:`IllegalMoveError` is raised for illegal moves.  When a step
    counter is given, the rows scanned by the ball searches are charged to it
    in the Flipper variants, and the number of partition flips examined in
    the other games.
    """

    reason = validate_connector_move(pos, move)
    if reason is not None:
        raise IllegalMoveError('Illegal Connector move', move, reason)

    config = pos.config
    r = config.radius
    variant = config.variant

    if variant is GameVariant.FLIPPER:
        center = move
        mask = ball_mask(pos.arena_graph, center, r, counter)
        arena_graph = induced_subgraph(pos.arena_graph, set_of_mask(mask))
        return pos._replace(
            arena=arena_graph.vertex_set, arena_graph=arena_graph,
            centers=pos.centers + (center,)
        )
    elif variant is GameVariant.INDUCED_SUBGRAPH_FLIPPER:
        center = covering_center(pos.arena_graph, move, r)
        arena_graph = induced_subgraph(pos.arena_graph, move)
        return pos._replace(
            arena=arena_graph.vertex_set, arena_graph=arena_graph,
            centers=pos.centers + (center,)
        )

    if variant is GameVariant.PSEUDO_FLIPPER:
        query = separation_query(
            pos.graph, pos.partition, r, config.partition_cap
        )
    else:
        query = s_class_query(
            pos.graph, pos.separators, r, config.partition_cap
        )
    if counter is not None:
        counter.charge(len(flip_graphs(query)))
    arena = pos.arena & set_of_mask(flip_ball_mask(query, move))
    return pos._replace(arena=arena, centers=pos.centers + (move,))


#
# Flipper moves
# -------------
#


def empty_flipper_move(variant: GameVariant):
    """The move of the flipping side that changes nothing."""
    if variant.is_flipper:
        return EMPTY_FLIPS
    elif variant is GameVariant.PSEUDO_FLIPPER:
        return None
    else:
        return frozenset()


def _is_refinement(new: Partition, old: Partition) -> bool:
    """Test if every new part lies inside some old part."""
    return all(any(i <= j for j in old) for i in new)


def validate_flipper_move(local: Position, move) -> typing.Optional[str]:
    """Check a move of the flipping side in a localized position.

    The move is a set of atomic flips in the Flipper variants, a partition of
    the original vertices refining the current one in the Pseudo-Flipper game
    (None keeps the partition), and a set of vertices of the original graph
    in the Separation game.  The number of flips, part splits or new vertices
    is bounded by the budget of the round.
    """

    config = local.config
    variant = config.variant
    budget = config.budget(local.round + 1)

    if variant.is_flipper:
        try:
            flips = list(move)
        except TypeError:
            return 'expecting a set of atomic flips, got {!r}'.format(move)
        if not all(isinstance(i, AtomicFlip) for i in flips):
            return 'expecting atomic flips only'
        used = len(flips)
    elif variant is GameVariant.PSEUDO_FLIPPER:
        if move is None:
            return None
        try:
            parts = normalize_partition(move)
            check_partition(local.graph, parts)
        except (TypeError, ValueError) as exc:
            return 'invalid partition: {}'.format(exc)
        if not _is_refinement(parts, local.partition):
            return 'partition does not refine the current one'
        used = len(parts) - len(local.partition)
    else:
        try:
            added = frozenset(move)
        except TypeError:
            return 'expecting a vertex set, got {!r}'.format(move)
        dead = [i for i in added if i not in local.graph]
        if dead:
            return 'vertices {} are not in the graph'.format(sorted(dead))
        used = len(added)

    if budget is not None and used > budget:
        return 'move of size {} exceeds the budget {} of round {}'.format(
            used, budget, local.round + 1
        )
    return None


def advance(local: Position, move, counter=None) -> Position:
    """Apply a move of the flipping side to a localized position.

    The round counter is increased.  :py:class:`IllegalMoveError` is raised
    for illegal moves.
    """

    reason = validate_flipper_move(local, move)
    if reason is not None:
        raise IllegalMoveError('Illegal move', move, reason)

    variant = local.variant
    res = local._replace(round=local.round + 1)
    if variant.is_flipper:
        return res._replace(
            arena_graph=apply_flip_set(local.arena_graph, move, counter)
        )
    elif variant is GameVariant.PSEUDO_FLIPPER:
        if move is None:
            return res
        return res._replace(partition=normalize_partition(move))
    else:
        return res._replace(separators=local.separators | frozenset(move))


def step(pos: Position, connector_move, flipper_move) -> Position:
    """Play a full round from a position."""
    return advance(localize(pos, connector_move), flipper_move)


#
# Transcripts
# -----------
#


class OutcomeKind(enum.Enum):
    """How a game ended.

    ``FLIPPER_WINS``
        The arena was reduced to a single vertex, won by the flipping side.

    ``ROUND_LIMIT_REACHED``
        The configured number of rounds was played without a win.

    ``FORFEIT``
        A strategy produced an illegal move and lost.

    ``ABORTED``
        A strategy stopped the game, or a configured cap was hit.

    """

    FLIPPER_WINS = 'flipper_wins'
    ROUND_LIMIT_REACHED = 'round_limit_reached'
    FORFEIT = 'forfeit'
    ABORTED = 'aborted'


class Outcome(typing.NamedTuple):
    """The outcome of a game, winner is None for undecided games."""

    kind: OutcomeKind
    winner: typing.Optional[str]
    round: int
    reason: typing.Optional[str] = None


class RoundRecord(typing.NamedTuple):
    """The moves of one round with the arena size after it."""

    connector: typing.Any
    flips: typing.Any
    arena_size: int
    steps: int


class Transcript(typing.NamedTuple):
    """The record of a game run."""

    config: GameConfig
    graph_ref: typing.Optional[str]
    rounds: typing.Tuple[RoundRecord, ...]
    outcome: Outcome


def _encode_connector(variant, move):
    if variant is GameVariant.INDUCED_SUBGRAPH_FLIPPER:
        return sorted(move)
    return move


def _decode_connector(variant, data):
    if variant is GameVariant.INDUCED_SUBGRAPH_FLIPPER:
        return frozenset(data)
    return data


def _encode_flipper(variant, move):
    if variant.is_flipper:
        return flip_set_to_json(move)
    elif variant is GameVariant.PSEUDO_FLIPPER:
        if move is None:
            return None
        return [sorted(i) for i in normalize_partition(move)]
    else:
        return sorted(move)


def _decode_flipper(variant, data):
    if variant.is_flipper:
        return flip_set_from_json(data)
    elif variant is GameVariant.PSEUDO_FLIPPER:
        if data is None:
            return None
        return normalize_partition(data)
    else:
        return frozenset(data)


def transcript_to_json(transcript: Transcript) -> dict:
    """Encode a transcript in its JSON form."""

    config = transcript.config
    variant = config.variant
    outcome = transcript.outcome
    return {
        'variant': variant.value,
        'r': config.radius,
        'max_rounds': config.max_rounds,
        'budget': config.budget.to_json(),
        'partition_cap': config.partition_cap,
        'graph': transcript.graph_ref,
        'rounds': [
            {
                'connector': _encode_connector(variant, i.connector),
                'flips': _encode_flipper(variant, i.flips),
                'arena_size': i.arena_size,
                'steps': i.steps
            }
            for i in transcript.rounds
        ],
        'outcome': {
            'kind': outcome.kind.value,
            'winner': outcome.winner,
            'round': outcome.round,
            'reason': outcome.reason
        }
    }


def transcript_from_json(data) -> Transcript:
    """Decode the JSON form of a transcript."""

    try:
        budget = data.get('budget', {})
        config = game_config(
            data['variant'], data['r'],
            max_rounds=data.get('max_rounds', DEFAULT_MAX_ROUNDS),
            budget=FlipBudget(
                k=budget.get('k', 1), growing=budget.get('growing', False)
            ),
            partition_cap=data.get('partition_cap', DEFAULT_PARTITION_CAP)
        )
        variant = config.variant
        rounds = tuple(
            RoundRecord(
                connector=_decode_connector(variant, i['connector']),
                flips=_decode_flipper(variant, i['flips']),
                arena_size=i['arena_size'], steps=i.get('steps', 0)
            )
            for i in data['rounds']
        )
        outcome = data['outcome']
        return Transcript(
            config=config, graph_ref=data.get('graph'), rounds=rounds,
            outcome=Outcome(
                kind=OutcomeKind(outcome['kind']), winner=outcome['winner'],
                round=outcome['round'], reason=outcome.get('reason')
            )
        )
    except (KeyError, TypeError, AttributeError) as exc:
        raise ValueError(
            'Invalid transcript encoding', str(exc),
            'expecting variant, r, rounds and outcome entries'
        )


def dump_transcript(transcript: Transcript) -> str:
    """Format a transcript as JSON text."""
    return json.dumps(transcript_to_json(transcript), indent=2) + '\n'


def load_transcript(path) -> Transcript:
    """Read a transcript file."""
    with open(path, 'r') as fp:
        try:
            data = json.load(fp)
        except json.JSONDecodeError as exc:
            raise ValueError(
                'Invalid transcript file', str(path),
                'line {}'.format(exc.lineno), exc.msg
            )
    return transcript_from_json(data)


#
# Game runs
# ---------
#


def run_game(
        graph: Graph, config: GameConfig, flipper, connector, observer=None,
        stats=None, graph_ref=None
) -> Transcript:
    """Run a game between two strategies.

    Rounds are played until the arena has a single vertex or the round limit
    is reached.  The flipping side is not consulted in a round where Connector
    already reduced the arena to a single vertex, its move is then recorded
    as the empty one.

    Parameters
    ----------

    graph
        The graph to play on.

    config
        The game configuration.

    flipper
        The strategy of the flipping side, see
        :py:class:`flippergame.strategies.FlipperStrategy`.

    connector
        The strategy of Connector, see
        :py:class:`flippergame.strategies.ConnectorStrategy`.

    observer
        A callable receiving every position reached, starting with the initial
        one.

    stats
        For developers, when a mutable mapping is given, the keys ``rounds``,
        ``steps`` and ``outcome`` are set in it.

    graph_ref
        A reference to the graph, like the path of its file, kept in the
        transcript.

    """

    supported = getattr(flipper, 'variants', None)
    if supported is not None and config.variant not in supported:
        raise ValueError(
            'Invalid strategy for the variant', flipper,
            'expecting one of', [i.value for i in supported]
        )

    pos = initial_position(graph, config, flipper.init(graph, config))
    if observer is not None:
        observer(pos)

    rounds = []
    total = 0
    while True:
        if pos.is_won:
            outcome = Outcome(
                OutcomeKind.FLIPPER_WINS, config.variant.player, pos.round
            )
            break
        if pos.round >= config.max_rounds:
            outcome = Outcome(
                OutcomeKind.ROUND_LIMIT_REACHED, None, pos.round
            )
            break

        counter = StepCounter()
        try:
            outcome, pos = _play_round(
                pos, flipper, connector, counter, rounds
            )
        except StopGame as exc:
            outcome = Outcome(
                OutcomeKind.ABORTED, None, pos.round, str(exc)
            )
        except BudgetExceededError as exc:
            outcome = Outcome(
                OutcomeKind.ABORTED, None, pos.round,
                'cap exceeded: {} {}'.format(exc.what, exc.cap)
            )
        total += counter.steps
        if outcome is not None:
            break
        if observer is not None:
            observer(pos)
        continue

    logger.debug(
        'Game over after %d rounds: %s', len(rounds), outcome.kind.value
    )
    if stats is not None:
        stats['rounds'] = len(rounds)
        stats['steps'] = total
        stats['outcome'] = outcome.kind.value

    return Transcript(
        config=config, graph_ref=graph_ref, rounds=tuple(rounds),
        outcome=outcome
    )


def _play_round(pos, flipper, connector, counter, rounds):
    """Play one round, giving a final outcome or None with the new position."""

    config = pos.config
    variant = config.variant

    move = connector.next(pos)
    reason = validate_connector_move(pos, move)
    if reason is not None:
        return Outcome(
            OutcomeKind.FORFEIT, variant.player, pos.round,
            'Connector: ' + reason
        ), pos
    local = localize(pos, move, counter)

    if local.is_won:
        flipper_move = empty_flipper_move(variant)
        state = pos.flipper_state
    else:
        flipper_move, state = flipper.next(local, pos.flipper_state)
        reason = validate_flipper_move(local, flipper_move)
        if reason is not None:
            return Outcome(
                OutcomeKind.FORFEIT, 'connector', pos.round,
                variant.player + ': ' + reason
            ), pos

    new_pos = advance(local, flipper_move, counter)._replace(
        flipper_state=state
    )
    rounds.append(RoundRecord(
        connector=move, flips=flipper_move, arena_size=len(new_pos.arena),
        steps=counter.steps
    ))
    logger.debug(
        'Round %d: Connector played %r, arena of %d vertices',
        new_pos.round, move, len(new_pos.arena)
    )
    return None, new_pos


def replay_transcript(graph: Graph, transcript: Transcript) -> typing.List[
    Position
]:
    """Replay the recorded moves of a transcript.

    The list of positions reached is returned, starting from the initial one.
    :py:class:`IllegalMoveError` is raised when a recorded move is illegal,
    and ``ValueError`` when the arena sizes differ from the recorded ones.
    """

    pos = initial_position(graph, transcript.config)
    res = [pos]
    for record in transcript.rounds:
        pos = step(pos, record.connector, record.flips)
        if len(pos.arena) != record.arena_size:
            raise ValueError(
                'Invalid transcript for the graph', pos.round,
                'expecting arena size {}, got {}'.format(
                    record.arena_size, len(pos.arena)
                )
            )
        res.append(pos)
        continue
    return res
