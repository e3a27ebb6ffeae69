"""Tests of the strategies of both sides."""

import itertools

import pytest

from flippergame import (
    predict_config, game_config, run_game, flip_star, multi_to_single,
    separator_to_pseudo_flipper, pseudo_flipper_to_flipper, make_connector,
    flip_set, apply_flip_set, induced_subgraph, s_classes, generate,
    GameVariant
)
from flippergame.flips import NO_OP_FLIP
from flippergame.game import UNBOUNDED, OutcomeKind, initial_position
from flippergame.strategies import (
    Phase, QueueWrapper, ScriptedFlipper, ScriptedSeparator, EchoSeparator,
    ScriptedConnector, ScriptExhaustedError, RandomConnector, nth_combination,
    survivor_mask
)
from flippergame.verify import play_flip_star, check_wrapped_game


def test_nth_combination():
    """Test indexing the combinations in lexicographic order."""

    pool = [3, 5, 8, 9, 11, 12, 20]
    for idx, expected in enumerate(itertools.combinations(pool, 5)):
        assert nth_combination(pool, 5, idx) == expected
        continue
    with pytest.raises(IndexError):
        nth_combination(pool, 5, 21)
    with pytest.raises(IndexError):
        nth_combination(pool, 5, -1)


#
# The era strategy
# ----------------
#


def test_flip_star_checks():
    """Test the radius and graph checks of the era strategy."""

    path = generate('path', n=6)
    with pytest.raises(ValueError):
        flip_star(path, predict_config(3))
    with pytest.raises(ValueError):
        flip_star(path, predict_config(0))

    strategy = flip_star(path, predict_config(2))
    with pytest.raises(ValueError):
        strategy.init(generate('path', n=7), game_config('flipper', 1))
    with pytest.raises(ValueError):
        strategy.init(path, game_config('flipper', 2))
    state = strategy.init(path, game_config('flipper', 1))
    assert state.x == ()
    assert state.is_era_end


def _era_observer(graph):
    """Check induced arenas after move pairs and isolation of the tracked."""

    def observe(pos):
        state = pos.flipper_state
        if pos.round == 0:
            return
        if state.phase is Phase.PAIR_FIRST:
            assert pos.arena_graph == induced_subgraph(graph, pos.arena)
        elif state.is_era_end:
            assert all(
                pos.arena_graph.is_isolated(i)
                for i in state.x if i in pos.arena
            )
        return

    return observe


@pytest.mark.parametrize('family, r, kind', [
    ('path', 1, 'greedy'),
    ('path', 2, 'farthest'),
    ('cycle', 1, 'farthest'),
    ('cycle', 2, 'random'),
    ('grid', 1, 'greedy'),
    ('random_tree', 2, 'random')
])
def test_flip_star_wins(family, r, kind):
    """Test that the era strategy wins with its invariants kept."""

    graph = generate(family, **(
        {'rows': 4, 'cols': 5} if family == 'grid' else
        {'n': 20, 'seed': 2} if family == 'random_tree' else {'n': 20}
    ))
    transcript = play_flip_star(
        graph, r, make_connector(kind, seed=1), observer=_era_observer(graph)
    )
    assert transcript.outcome.kind is OutcomeKind.FLIPPER_WINS
    assert transcript.outcome.winner == 'flipper'


def test_flip_star_replay_with_scripted_connector():
    """Test that replaying Connector moves replays the whole game."""

    graph = generate('cycle', n=20)
    first = play_flip_star(graph, 1, make_connector('random', seed=4))
    second = play_flip_star(graph, 1, ScriptedConnector.from_transcript(first))
    assert second.rounds == first.rounds
    assert second.outcome == first.outcome


#
# Single flips
# ------------
#


def test_queue_wrapper():
    """Test that the inner flips are played one per round."""

    graph = generate('path', n=4)
    config = game_config('flipper', 1)
    flips = flip_set([([0], [1]), ([2], [3])])
    wrapper = QueueWrapper(ScriptedFlipper([flips, frozenset()]), pad=3)
    state = wrapper.init(graph, config)

    played = []
    for _ in range(6):
        move, state = wrapper.next(None, state)
        assert len(move) == 1
        played.extend(move)
        continue
    assert frozenset(played[:2]) == flips
    assert played[2:] == [NO_OP_FLIP] * 4
    assert state.consults == 2

    bare = QueueWrapper(ScriptedFlipper([frozenset()]))
    move, state = bare.next(None, bare.init(graph, config))
    assert move == frozenset([NO_OP_FLIP])
    assert not state.queue

    with pytest.raises(ValueError):
        multi_to_single(ScriptedFlipper([]), pad=0)


@pytest.mark.parametrize('seed', [0, 1, 2])
def test_wrapped_flip_star(seed):
    """Test that the wrapped game follows the inner multi-flip game."""
    graph = generate('random_tree', n=24, seed=seed)
    assert check_wrapped_game(graph, 1, 24, seed) == []


#
# Translations
# ------------
#


def test_separator_to_pseudo_flipper():
    """Test that the partition follows the classes of the separators."""

    graph = generate('path', n=6)
    config = game_config('pseudo_flipper', 2, max_rounds=4, budget=UNBOUNDED)
    positions = []
    run_game(
        graph, config, separator_to_pseudo_flipper(ScriptedSeparator([2, 4, 0])),
        make_connector('random', seed=5), observer=positions.append
    )
    assert len(positions) >= 2
    for prev, pos in zip(positions, positions[1:]):
        separators = pos.flipper_state.separators
        assert pos.partition == s_classes(graph, separators).parts
        assert len(pos.partition) - len(prev.partition) <= (
            len(prev.partition) + 1
        )
        continue


@pytest.mark.parametrize('family', ['path', 'cycle'])
def test_pseudo_flipper_to_flipper(family):
    """Test the simulation of Pseudo-Flipper by Flipper on small graphs."""

    graph = generate(family, n=4)
    config = game_config('flipper', 1, max_rounds=10000, budget=UNBOUNDED)
    strategy = pseudo_flipper_to_flipper(
        separator_to_pseudo_flipper(EchoSeparator()), 1
    )
    positions = []
    transcript = run_game(
        graph, config, strategy, make_connector('greedy'),
        observer=positions.append
    )
    assert transcript.outcome.kind is OutcomeKind.FLIPPER_WINS
    assert strategy.pf_config.radius == 2
    for pos in positions:
        state = pos.flipper_state
        assert pos.arena <= state.arena
        assert pos.arena_graph == induced_subgraph(
            apply_flip_set(graph, state.applied), pos.arena
        )
        continue


def test_translation_checks():
    """Test the radius checks of the translations."""

    with pytest.raises(ValueError):
        pseudo_flipper_to_flipper(
            separator_to_pseudo_flipper(EchoSeparator()), -1
        )
    strategy = pseudo_flipper_to_flipper(
        separator_to_pseudo_flipper(EchoSeparator()), 1
    )
    with pytest.raises(ValueError):
        run_game(
            generate('path', n=4), game_config('flipper', 2), strategy,
            make_connector('greedy')
        )


def test_scripted_separators():
    """Test the scripted and echoing separators."""

    graph = generate('path', n=5)
    pos = initial_position(graph, game_config('separation', 1))
    scripted = ScriptedSeparator([3, [0, 1]])
    move, state = scripted.next(pos, scripted.init(graph, pos.config))
    assert move == frozenset([3])
    move, state = scripted.next(pos, state)
    assert move == frozenset([0, 1])
    with pytest.raises(ScriptExhaustedError):
        scripted.next(pos, state)

    local = pos._replace(centers=(2,))
    assert EchoSeparator().next(local, None) == (frozenset([2]), None)


#
# Connectors
# ----------
#


def test_built_in_connectors():
    """Test the choices of the built-in Connector strategies."""

    path = generate('path', n=5)
    pos = initial_position(path, game_config('flipper', 1))
    assert make_connector('greedy').next(pos) == 1
    assert make_connector('farthest').next(pos) == 1
    assert make_connector('farthest').next(pos._replace(centers=(1,))) == 4

    induced = initial_position(path, game_config('induced_subgraph_flipper', 1))
    assert make_connector('greedy').next(induced) == frozenset([0, 1, 2])

    first = RandomConnector(seed=3)
    second = RandomConnector(seed=3)
    moves = [first.next(pos) for _ in range(10)]
    assert moves == [second.next(pos) for _ in range(10)]
    assert all(i in pos.arena for i in moves)

    scripted = make_connector('scripted', moves=[4])
    assert scripted.next(pos) == 4
    with pytest.raises(ScriptExhaustedError):
        scripted.next(pos)

    with pytest.raises(ValueError):
        make_connector('lazy')
    with pytest.raises(ValueError):
        make_connector('scripted')


def test_survivors_in_flip_ball_games():
    """Test the survivors of a centre in the games over partitions."""

    path = generate('path', n=5)
    pos = initial_position(path, game_config('pseudo_flipper', 1))
    assert survivor_mask(pos, 2) == 1 << 2
    pos = initial_position(path, game_config(GameVariant.SEPARATION, 2))
    assert survivor_mask(pos, 2) == 0b11111
