"""Command-line interface of flippergame.

Subcommands:

``play``
    Run a game between built-in strategies and write its transcript.

``predict``
    Print the flips predicted from five vertices.

``verify``
    Run the verification suites.

``bench``
    Benchmark the predictor and the era strategy.

``interactive``
    Play Connector against the era strategy from the terminal.

Games won by the flipping side exit with 0, games hitting the round limit
with 2, and errors or undecided games with 1.
"""

import argparse
import json
import logging
import sys
import types
import typing

from .bench import (
    run_bench, write_bench_csv, fit_exponents, rounds_constant, rounds_growing
)
from .flips import flip_set_to_json
from .game import (
    GameVariant, OutcomeKind, Outcome, Transcript, StopGame, UNBOUNDED,
    game_config, run_game, dump_transcript, load_transcript,
    validate_connector_move, DEFAULT_MAX_ROUNDS
)
from .graph import Graph, FAMILIES, ball_mask, read_graph, read_order
from .predict import predict_config, predict
from .strategies import (
    FlipperStrategy, ConnectorStrategy, EchoSeparator, ScriptedConnector,
    ConnectorKind, flip_star, multi_to_single, separator_to_pseudo_flipper,
    pseudo_flipper_to_flipper, make_connector
)
from .utils import BudgetExceededError, JinjaEnv
from .verify import run_suites


logger = logging.getLogger(__name__)


#
# Built-in players of the flipping side
# -------------------------------------
#


def _flip_star(graph, config, order):
    return flip_star(graph, predict_config(2 * config.radius, order))


def _flip_star_single(graph, config, order):
    return multi_to_single(_flip_star(graph, config, order))


def _echo_flipper(graph, config, order):
    return pseudo_flipper_to_flipper(
        separator_to_pseudo_flipper(EchoSeparator()), config.radius
    )


# Factories with the default budgets of the players.
FLIPPERS = {
    'flip_star': (_flip_star, None),
    'flip_star_single': (_flip_star_single, 1),
    'echo_flipper': (_echo_flipper, None),
    'echo_pseudo_flipper': (
        lambda graph, config, order: separator_to_pseudo_flipper(
            EchoSeparator()
        ), None
    ),
    'echo_separator': (lambda graph, config, order: EchoSeparator(), 1)
}


def make_flipper(name, graph, config, order=None) -> FlipperStrategy:
    """Make a built-in player of the flipping side by its name."""
    try:
        factory, _ = FLIPPERS[name]
    except KeyError:
        raise ValueError(
            'Invalid flipper strategy', name, 'expecting one of', list(FLIPPERS)
        )
    return factory(graph, config, order)


def exit_code(outcome: Outcome) -> int:
    """The exit code for the outcome of a game."""
    if outcome.kind is OutcomeKind.FLIPPER_WINS:
        return 0
    elif outcome.kind is OutcomeKind.FORFEIT and outcome.winner != 'connector':
        return 0
    elif outcome.kind is OutcomeKind.ROUND_LIMIT_REACHED:
        return 2
    return 1


#
# Text rendering
# --------------
#


def render(env: JinjaEnv, templ_name: str, ctx: types.SimpleNamespace) -> str:
    """Render the given context for the given template."""
    templ = env.get_template(templ_name)
    return templ.render(ctx.__dict__)


def _outcome_banner(env, outcome):
    return render(env, 'outcome.jinja', types.SimpleNamespace(
        kind=outcome.kind.value.replace('_', ' '), round=outcome.round,
        winner=outcome.winner, reason=outcome.reason
    ))


class PromptConnector(ConnectorStrategy):
    """Connector asking for centres on a text stream.

    Every prompt shows the arena with the sizes of the balls around its first
    vertices.  Illegal entries are reported and asked again, and ``q`` or the
    end of the input stops the game.
    """

    def __init__(self, env: JinjaEnv, stdin, stdout, n_previews=8):
        self._env = env
        self._in = stdin
        self._out = stdout
        self._n_previews = n_previews

    def next(self, pos):
        radius = pos.config.radius
        previews = [
            (i, ball_mask(pos.arena_graph, i, radius).bit_count())
            for i in sorted(pos.arena)[:self._n_previews]
        ]
        self._out.write(render(self._env, 'arena.jinja', types.SimpleNamespace(
            round=pos.round, arena=pos.arena, radius=radius, previews=previews
        )))

        while True:
            self._out.write('centre> ')
            self._out.flush()
            line = self._in.readline()
            if not line:
                raise StopGame('End of input')
            line = line.strip()
            if line in ('q', 'quit'):
                raise StopGame('Connector quit')
            try:
                move = int(line)
            except ValueError:
                self._out.write('Not a vertex: {!r}\n'.format(line))
                continue
            reason = validate_connector_move(pos, move)
            if reason is None:
                return move
            self._out.write('Illegal centre: {}\n'.format(reason))
            continue


class ReportingFlipper(FlipperStrategy):
    """Flipper strategy reporting the flips it plays on a text stream."""

    def __init__(self, inner: FlipperStrategy, env: JinjaEnv, stdout):
        self._inner = inner
        self._env = env
        self._out = stdout
        self.variants = inner.variants

    def init(self, graph, config):
        return self._inner.init(graph, config)

    def next(self, view, state):
        move, state = self._inner.next(view, state)
        self._out.write(render(self._env, 'round.jinja', types.SimpleNamespace(
            flips=move
        )))
        return move, state


#
# Subcommands
# -----------
#


def _write_transcript(transcript: Transcript, out):
    text = dump_transcript(transcript)
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, 'w') as fp:
            fp.write(text)


def _parse_budget(text) -> typing.Optional[int]:
    if text is None or text.lower() == 'none':
        return None
    try:
        return int(text)
    except ValueError:
        raise ValueError('Invalid budget', text, 'expecting an integer or none')


def _connector_from_args(args) -> ConnectorStrategy:
    if args.connector == ConnectorKind.SCRIPTED.value:
        if args.script is None:
            raise ValueError(
                'Invalid scripted connector', None,
                'expecting a transcript given by --script'
            )
        return ScriptedConnector.from_transcript(load_transcript(args.script))
    return make_connector(args.connector, seed=args.seed)


def cmd_play(args) -> int:
    """Run a game between built-in strategies."""

    if args.flipper not in FLIPPERS:
        raise ValueError(
            'Invalid flipper strategy', args.flipper,
            'expecting one of', list(FLIPPERS)
        )
    budget = (
        _parse_budget(args.budget) if args.budget is not None
        else FLIPPERS[args.flipper][1]
    )
    config = game_config(
        args.variant, args.radius, max_rounds=args.max_rounds,
        budget=UNBOUNDED if budget is None else budget
    )
    connector = _connector_from_args(args)
    graph = read_graph(args.graph)
    order = read_order(args.order, graph.n) if args.order else None

    flipper = make_flipper(args.flipper, graph, config, order)
    stats = {}
    transcript = run_game(
        graph, config, flipper, connector, stats=stats, graph_ref=args.graph
    )
    logger.info('Game played with %d steps', stats['steps'])
    _write_transcript(transcript, args.out)
    sys.stderr.write(_outcome_banner(JinjaEnv(), transcript.outcome))
    return exit_code(transcript.outcome)


def cmd_predict(args) -> int:
    """Print the predicted flips as JSON with the steps used."""

    graph = read_graph(args.graph)
    order = read_order(args.order, graph.n) if args.order else None
    config = predict_config(args.radius, order)
    graph.check_vertices(args.z)

    stats = {}
    flips = predict(graph, config, args.z, stats=stats)
    sys.stdout.write(json.dumps(flip_set_to_json(flips)) + '\n')
    sys.stderr.write('steps: {}\n'.format(stats['steps']))
    return 0


def cmd_verify(args) -> int:
    """Run the verification suites."""

    reports = run_suites(args.suite, seed=args.seed, budget=args.budget)
    passed = all(i.passed for i in reports)
    if args.text:
        sys.stdout.write(render(JinjaEnv(), 'verify.jinja', types.SimpleNamespace(
            suites=reports, passed=passed
        )))
    else:
        sys.stdout.write(json.dumps({
            'seed': args.seed, 'budget': args.budget,
            'suites': [i.to_json() for i in reports], 'passed': passed
        }, indent=2) + '\n')
    return 0 if passed else 1


def _split(text):
    return [i.strip() for i in text.split(',') if i.strip()]


def cmd_bench(args) -> int:
    """Benchmark the families at the sizes and write the CSV."""

    families = _split(args.families)
    for i in families:
        if i not in FAMILIES:
            raise ValueError(
                'Invalid graph family', i, 'expecting one of', FAMILIES
            )
    try:
        sizes = [int(i) for i in _split(args.sizes)]
    except ValueError:
        raise ValueError('Invalid sizes', args.sizes, 'expecting integers')
    if any(i < 1 for i in sizes):
        raise ValueError('Invalid sizes', sizes, 'expecting positive sizes')

    rows = run_bench(
        families, sizes, radius=args.radius, repeats=args.repeats,
        seed=args.seed, max_rounds=args.max_rounds
    )
    if args.out is None:
        write_bench_csv(rows, sys.stdout)
    else:
        with open(args.out, 'w', newline='') as fp:
            write_bench_csv(rows, fp)

    constant = rounds_constant(rows)
    for family, slope in sorted(fit_exponents(rows).items()):
        sys.stderr.write('{}: predict time exponent {:.2f}\n'.format(
            family, slope
        ))
        continue
    growing = rounds_growing(rows)
    for (family, r), flag in sorted(constant.items()):
        sys.stderr.write('{} r={}: rounds to win constant: {}\n'.format(
            family, r, str(flag).lower()
        ))
        if growing.get((family, r)):
            sys.stderr.write('{} r={}: rounds to win grow with n\n'.format(
                family, r
            ))
        continue
    return 0


def cmd_interactive(args) -> int:
    """Play Connector against the era strategy on the terminal."""

    graph: Graph = read_graph(args.graph)
    config = game_config(
        GameVariant.FLIPPER, args.radius, max_rounds=args.max_rounds,
        budget=UNBOUNDED
    )
    env = JinjaEnv()
    flipper = ReportingFlipper(
        _flip_star(graph, config, None), env, sys.stdout
    )
    connector = PromptConnector(env, sys.stdin, sys.stdout)

    transcript = run_game(
        graph, config, flipper, connector, graph_ref=args.graph
    )
    sys.stdout.write(_outcome_banner(env, transcript.outcome))
    if args.out is not None:
        _write_transcript(transcript, args.out)
    return exit_code(transcript.outcome)


#
# Entry point
# -----------
#


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with all the subcommands."""

    p = argparse.ArgumentParser(
        prog='flippergame', description='Flipper game engine'
    )
    p.add_argument(
        '-v', '--verbose', action='store_true', help='Log debug messages'
    )
    sub = p.add_subparsers(dest='cmd', required=True)

    play = sub.add_parser('play', help='Run a game between strategies')
    play.add_argument('graph', help='Path to the graph file')
    play.add_argument('--radius', type=int, required=True)
    play.add_argument(
        '--variant', default=GameVariant.FLIPPER.value,
        help='One of {}'.format(', '.join(i.value for i in GameVariant))
    )
    play.add_argument(
        '--flipper', default='flip_star',
        help='One of {}'.format(', '.join(FLIPPERS))
    )
    play.add_argument(
        '--connector', default=ConnectorKind.GREEDY_SURVIVOR.value,
        help='One of {}'.format(', '.join(i.value for i in ConnectorKind))
    )
    play.add_argument(
        '--script', default=None,
        help='Transcript whose Connector moves the scripted Connector plays'
    )
    play.add_argument('--max-rounds', type=int, default=DEFAULT_MAX_ROUNDS)
    play.add_argument('--seed', type=int, default=0)
    play.add_argument(
        '--budget', default=None,
        help='Moves per round, an integer or none, default by strategy'
    )
    play.add_argument('--order', default=None, help='Vertex order file')
    play.add_argument(
        '--out', default=None, help='Transcript file, stdout by default'
    )
    play.set_defaults(func=cmd_play)

    pred = sub.add_parser('predict', help='Predict flips from five vertices')
    pred.add_argument('graph', help='Path to the graph file')
    pred.add_argument('--radius', type=int, required=True)
    pred.add_argument('--z', type=int, nargs='+', required=True)
    pred.add_argument('--order', default=None, help='Vertex order file')
    pred.set_defaults(func=cmd_predict)

    ver = sub.add_parser('verify', help='Run the verification suites')
    ver.add_argument('--suite', default='all')
    ver.add_argument('--seed', type=int, default=0)
    ver.add_argument(
        '--budget', type=int, default=None,
        help='Cap on the instances of each check'
    )
    ver.add_argument(
        '--text', action='store_true', help='Human-readable report'
    )
    ver.set_defaults(func=cmd_verify)

    bench = sub.add_parser('bench', help='Benchmark over graph families')
    bench.add_argument('--families', default='path,random_tree')
    bench.add_argument('--sizes', default='100,200,400')
    bench.add_argument('--radius', type=int, default=1)
    bench.add_argument('--repeats', type=int, default=3)
    bench.add_argument('--seed', type=int, default=0)
    bench.add_argument('--max-rounds', type=int, default=DEFAULT_MAX_ROUNDS)
    bench.add_argument('--out', default=None, help='CSV file, stdout by default')
    bench.set_defaults(func=cmd_bench)

    inter = sub.add_parser(
        'interactive', help='Play Connector against the era strategy'
    )
    inter.add_argument('graph', help='Path to the graph file')
    inter.add_argument('--radius', type=int, default=1)
    inter.add_argument('--max-rounds', type=int, default=DEFAULT_MAX_ROUNDS)
    inter.add_argument(
        '--out', default=None, help='Transcript file written at the end'
    )
    inter.set_defaults(func=cmd_interactive)

    return p


def main(argv: typing.Optional[typing.List[str]] = None) -> int:
    """Run the command line, giving the exit code."""

    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format='%(levelname)s %(name)s: %(message)s'
    )

    try:
        return args.func(args)
    except OSError as exc:
        sys.stderr.write('error: {}\n'.format(exc))
        return 1
    except (ValueError, BudgetExceededError) as exc:
        sys.stderr.write('error: {}\n'.format(
            ' '.join(str(i) for i in exc.args) if exc.args else exc
        ))
        return 1
