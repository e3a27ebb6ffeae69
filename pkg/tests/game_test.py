"""Tests of game positions, moves, runs and transcripts."""

import pytest

from flippergame import (
    GameVariant, FlipBudget, game_config, IllegalMoveError,
    validate_connector_move, validate_flipper_move, step, run_game,
    replay_transcript, flip_set, generate, make_connector
)
from flippergame.flips import EMPTY_FLIPS, normalize_partition
from flippergame.game import (
    UNBOUNDED, OutcomeKind, initial_position, localize, advance,
    covering_center, transcript_to_json, transcript_from_json,
    dump_transcript, load_transcript
)
from flippergame.strategies import (
    ScriptedFlipper, ScriptedConnector, EchoSeparator
)


#
# Configuration
# -------------
#


def test_game_config():
    """Test the validation of game configurations."""

    config = game_config('flipper', 2)
    assert config.variant is GameVariant.FLIPPER
    assert config.budget == FlipBudget(k=1)
    assert game_config('separation', 1, budget=3).budget.k == 3
    assert game_config('flipper', 1, budget=UNBOUNDED).budget(7) is None

    with pytest.raises(ValueError):
        game_config('chess', 1)
    with pytest.raises(ValueError):
        game_config('flipper', -1)
    with pytest.raises(ValueError):
        game_config('flipper', 1, max_rounds=0)
    with pytest.raises(ValueError):
        game_config('flipper', 1, budget=0)


def test_budgets():
    """Test constant and growing budgets."""

    assert FlipBudget(k=2)(5) == 2
    growing = FlipBudget(k=2, growing=True)
    assert [growing(i) for i in range(1, 5)] == [2, 2, 3, 4]


def test_players():
    """Test the names of the flipping side."""
    assert GameVariant.INDUCED_SUBGRAPH_FLIPPER.player == 'flipper'
    assert GameVariant.PSEUDO_FLIPPER.player == 'pseudo_flipper'
    assert GameVariant.SEPARATION.player == 'separator'
    assert not GameVariant.SEPARATION.is_flipper


#
# Connector moves
# ---------------
#


def test_flipper_localization():
    """Test that Connector cuts the arena down to a ball."""

    path = generate('path', n=7)
    pos = initial_position(path, game_config('flipper', 1))
    assert pos.arena == path.vertex_set
    assert pos.center is None

    local = localize(pos, 3)
    assert local.arena == frozenset([2, 3, 4])
    assert local.arena_graph.vertices == (2, 3, 4)
    assert local.center == 3

    for bad in [9, True, '3', [3]]:
        assert validate_connector_move(pos, bad) is not None
        with pytest.raises(IllegalMoveError):
            localize(pos, bad)
        continue


def test_induced_subgraph_localization():
    """Test Connector moves given by vertex sets."""

    path = generate('path', n=7)
    pos = initial_position(path, game_config('induced_subgraph_flipper', 1))
    assert covering_center(path, [2, 4], 1) == 3
    assert covering_center(path, [1, 4], 1) is None

    local = localize(pos, frozenset([2, 4]))
    assert local.arena == frozenset([2, 4])
    assert local.centers == (3,)
    assert not local.arena_graph.adjacent(2, 4)

    for bad in [frozenset(), frozenset([1, 4]), frozenset([6, 7]), 3]:
        with pytest.raises(IllegalMoveError):
            localize(pos, bad)
        continue


@pytest.mark.parametrize('variant', ['pseudo_flipper', 'separation'])
def test_flip_ball_localization(variant):
    """Test localization by flip balls over a single part.

    The complement of a path of five vertices makes the middle vertex far
    from its neighbours at radius one, and keeps everything at radius two.
    """

    path = generate('path', n=5)
    pos = initial_position(path, game_config(variant, 1))
    assert pos.arena_graph is None
    local = localize(pos, 2)
    assert local.arena == frozenset([2])
    assert local.is_won
    assert validate_connector_move(local, 2) is not None

    pos = initial_position(path, game_config(variant, 2))
    assert localize(pos, 2).arena == path.vertex_set


#
# Moves of the flipping side
# --------------------------
#


def test_flipper_moves():
    """Test flip moves against the budget."""

    path = generate('path', n=7)
    pos = initial_position(path, game_config('flipper', 2))
    local = localize(pos, 3)
    one = flip_set([([3], [2, 4])])
    two = flip_set([([3], [2]), ([3], [4])])

    assert validate_flipper_move(local, one) is None
    assert 'budget' in validate_flipper_move(local, two)
    assert validate_flipper_move(local, [1, 2]) is not None
    assert validate_flipper_move(local, 5) is not None
    with pytest.raises(IllegalMoveError):
        advance(local, two)

    res = advance(local, one)
    assert res.round == 1
    assert res.arena == local.arena
    assert res.arena_graph.is_isolated(3)
    assert step(pos, 3, one) == res


def test_pseudo_flipper_moves():
    """Test partition refinements against the budget."""

    path = generate('path', n=5)
    pos = initial_position(path, game_config('pseudo_flipper', 2))
    assert pos.partition == (path.vertex_set,)
    local = localize(pos, 2)

    assert validate_flipper_move(local, None) is None
    assert validate_flipper_move(local, [[0, 1], [2, 3, 4]]) is None
    assert 'budget' in validate_flipper_move(local, [[0, 1], [2], [3, 4]])
    assert validate_flipper_move(local, [[0, 1, 2], [1, 3, 4]]) is not None

    split = local._replace(partition=normalize_partition([[0, 1], [2, 3, 4]]))
    assert 'refine' in validate_flipper_move(split, [[0, 2], [1], [3, 4]])

    res = advance(local, [[2, 3, 4], [0, 1]])
    assert res.partition == (frozenset([0, 1]), frozenset([2, 3, 4]))
    assert advance(local, None).partition == local.partition


def test_separator_moves():
    """Test separator picks against the budget."""

    path = generate('path', n=5)
    pos = initial_position(path, game_config('separation', 2))
    local = localize(pos, 2)
    assert validate_flipper_move(local, [7]) is not None
    assert 'budget' in validate_flipper_move(local, [0, 1])

    res = advance(local, [0])
    assert res.separators == frozenset([0])
    assert res.round == 1


#
# Runs
# ----
#


ISOLATE_MIDDLE = flip_set([([1], [0, 2])])


def _scripted_game(connector_moves, flipper_moves, **kwargs):
    """Play a Flipper game at radius one on a path of three vertices."""
    graph = generate('path', n=3)
    config = game_config('flipper', 1, **kwargs)
    return graph, run_game(
        graph, config, ScriptedFlipper(flipper_moves),
        ScriptedConnector(connector_moves)
    )


def test_flipper_win():
    """Test a game won by isolating the middle of a path."""

    graph = generate('path', n=3)
    config = game_config('flipper', 1)
    seen = []
    stats = {}
    transcript = run_game(
        graph, config, ScriptedFlipper([ISOLATE_MIDDLE]),
        ScriptedConnector([1, 0]), observer=seen.append, stats=stats,
        graph_ref='path3.g'
    )

    outcome = transcript.outcome
    assert outcome.kind is OutcomeKind.FLIPPER_WINS
    assert outcome.winner == 'flipper'
    assert outcome.round == 2
    assert [i.arena_size for i in transcript.rounds] == [3, 1]
    assert transcript.rounds[1].flips == EMPTY_FLIPS
    assert transcript.graph_ref == 'path3.g'
    assert len(seen) == 3
    assert seen[-1].is_won
    assert stats['rounds'] == 2
    assert stats['outcome'] == 'flipper_wins'


@pytest.mark.parametrize('connector, flipper, kind, winner', [
    ([1, 1], [EMPTY_FLIPS, EMPTY_FLIPS], OutcomeKind.ROUND_LIMIT_REACHED, None),
    ([7], [EMPTY_FLIPS], OutcomeKind.FORFEIT, 'flipper'),
    ([1], [flip_set([([1], [0]), ([1], [2])])], OutcomeKind.FORFEIT, 'connector'),
    ([1, 1], [EMPTY_FLIPS], OutcomeKind.ABORTED, None),
    ([1], [EMPTY_FLIPS], OutcomeKind.ABORTED, None)
])
def test_game_endings(connector, flipper, kind, winner):
    """Test the outcomes other than wins."""

    _, transcript = _scripted_game(connector, flipper, max_rounds=2)
    assert transcript.outcome.kind is kind
    assert transcript.outcome.winner == winner
    if kind is not OutcomeKind.ROUND_LIMIT_REACHED:
        assert transcript.outcome.reason


def test_cap_aborts_the_game():
    """Test that hitting the partition cap aborts the game."""

    path = generate('path', n=5)
    config = game_config(
        'pseudo_flipper', 2, budget=UNBOUNDED, partition_cap=2
    )
    transcript = run_game(
        path, config, ScriptedFlipper([[[0, 1], [2], [3, 4]]]),
        ScriptedConnector([2, 2])
    )
    assert transcript.outcome.kind is OutcomeKind.ABORTED
    assert 'cap exceeded' in transcript.outcome.reason
    assert len(transcript.rounds) == 1


def test_unsupported_strategy():
    """Test that strategies are only run in their variants."""
    with pytest.raises(ValueError):
        run_game(
            generate('path', n=3), game_config('flipper', 1),
            EchoSeparator(), make_connector('greedy')
        )


#
# Transcripts
# -----------
#


def test_transcript_json(tmp_path):
    """Test writing, reading and replaying transcripts."""

    graph, transcript = _scripted_game([1, 0], [ISOLATE_MIDDLE])
    data = transcript_to_json(transcript)
    assert data['variant'] == 'flipper'
    assert data['rounds'][0]['flips'] == [{'A': [0, 2], 'B': [1]}]
    assert data['outcome']['kind'] == 'flipper_wins'
    assert transcript_from_json(data) == transcript

    path = tmp_path / 'game.json'
    path.write_text(dump_transcript(transcript))
    assert load_transcript(path) == transcript

    positions = replay_transcript(graph, transcript)
    assert len(positions) == 3
    assert positions[-1].arena == frozenset([0])

    path.write_text('{"variant": ')
    with pytest.raises(ValueError):
        load_transcript(path)
    with pytest.raises(ValueError):
        transcript_from_json({'variant': 'flipper'})


def test_induced_transcript_json():
    """Test that vertex-set moves survive the JSON form."""

    graph = generate('path', n=5)
    config = game_config('induced_subgraph_flipper', 1)
    transcript = run_game(
        graph, config, ScriptedFlipper([EMPTY_FLIPS]),
        ScriptedConnector([frozenset([1, 3]), frozenset([1])])
    )
    assert transcript.outcome.kind is OutcomeKind.FLIPPER_WINS
    data = transcript_to_json(transcript)
    assert data['rounds'][0]['connector'] == [1, 3]
    assert transcript_from_json(data) == transcript


def test_replay_checks():
    """Test that replays catch wrong arena sizes and illegal moves."""

    graph, transcript = _scripted_game([1, 0], [ISOLATE_MIDDLE])
    first = transcript.rounds[0]
    wrong = transcript._replace(
        rounds=(first._replace(arena_size=2),) + transcript.rounds[1:]
    )
    with pytest.raises(ValueError):
        replay_transcript(graph, wrong)

    illegal = transcript._replace(
        rounds=(first._replace(connector=5),) + transcript.rounds[1:]
    )
    with pytest.raises(IllegalMoveError):
        replay_transcript(graph, illegal)
