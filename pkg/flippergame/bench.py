"""Benchmarks of the predictor and the era strategy over graph families."""

import csv
import logging
import time
import typing
import warnings

import numpy as np

from .game import OutcomeKind
from .graph import Graph, generate_sized, ball_mask
from .predict import predict_config, predict
from .strategies import make_connector
from .verify import play_flip_star, most_rounds, rounds_grow


logger = logging.getLogger(__name__)

BENCH_FIELDS = (
    'family', 'n', 'r', 'rounds_to_win', 'predict_time_ns', 'total_time_ns'
)


class BenchRow(typing.NamedTuple):
    """A line of the benchmark table.

    ``rounds_to_win`` is None when the era strategy did not win against the
    greedy Connector within the round limit.
    """

    family: str
    n: int
    r: int
    rounds_to_win: typing.Optional[int]
    predict_time_ns: int
    total_time_ns: int


def bench_vertices(graph: Graph, r: int) -> typing.List[int]:
    """Five vertices making the predictor work through all the levels.

    Vertices are taken greedily in increasing order, pairwise at distance at
    least r, so that the prediction is not cut short at the last level.
    Fewer are returned on graphs too small for five.
    """

    picked = []
    covered = 0
    for v in graph.vertices:
        if covered >> v & 1:
            continue
        picked.append(v)
        if len(picked) == 5:
            break
        covered |= ball_mask(graph, v, r - 1)
        continue
    return picked


def bench_one(
        family: str, n: int, r: int, repeats=3, seed=0, max_rounds=1000
) -> BenchRow:
    """Time the predictor and an era strategy game on a family member.

    The predictor is timed at radius 2r on :py:func:`bench_vertices` as
    the median of the repeats, and the game at radius r against the greedy
    Connector.
    """

    if repeats < 1:
        raise ValueError('Invalid repeat count', repeats, 'expecting positive')
    graph = generate_sized(family, n, seed=seed)
    if graph.order != n:
        warnings.warn(
            'Size of {} approximated, {} vertices for {}'.format(
                family, graph.order, n
            )
        )

    config = predict_config(2 * r)
    z = bench_vertices(graph, 2 * r)
    times = []
    for _ in range(repeats):
        begin = time.perf_counter_ns()
        predict(graph, config, z)
        times.append(time.perf_counter_ns() - begin)
        continue

    begin = time.perf_counter_ns()
    transcript = play_flip_star(
        graph, r, make_connector('greedy'), max_rounds=max_rounds
    )
    total = time.perf_counter_ns() - begin

    outcome = transcript.outcome
    rounds = outcome.round if outcome.kind is OutcomeKind.FLIPPER_WINS else None
    logger.info(
        'Benchmarked %s with %d vertices at radius %d: %s rounds',
        family, graph.order, r, rounds
    )
    return BenchRow(
        family=family, n=graph.order, r=r, rounds_to_win=rounds,
        predict_time_ns=int(np.median(times)), total_time_ns=total
    )


def run_bench(
        families, sizes, radius=1, repeats=3, seed=0, max_rounds=1000
) -> typing.List[BenchRow]:
    """Benchmark every family at every size."""
    return [
        bench_one(family, n, radius, repeats, seed, max_rounds)
        for family in families for n in sizes
    ]


def write_bench_csv(rows: typing.Iterable[BenchRow], out):
    """Write the benchmark rows as CSV with a header to a text stream."""

    writer = csv.writer(out, lineterminator='\n')
    writer.writerow(BENCH_FIELDS)
    for row in rows:
        writer.writerow([
            '' if i is None else i for i in row
        ])
        continue


def fit_exponents(rows: typing.Iterable[BenchRow]) -> typing.Dict[str, float]:
    """Fit the exponent of the prediction time in n for each family.

    The slope of the least-squares line through the log-log points is taken,
    families with fewer than two distinct sizes are left out.
    """

    points = {}
    for row in rows:
        points.setdefault(row.family, []).append(
            (row.n, max(row.predict_time_ns, 1))
        )
        continue

    res = {}
    for family, pts in points.items():
        if len({n for n, _ in pts}) < 2:
            continue
        x = np.log([n for n, _ in pts])
        y = np.log([t for _, t in pts])
        res[family] = float(np.polyfit(x, y, 1)[0])
        continue
    return res


def _most_rounds_by_size(rows):
    groups = {}
    for row in rows:
        groups.setdefault((row.family, row.r), {}).setdefault(
            row.n, []
        ).append(row.rounds_to_win)
        continue
    return {
        key: {n: most_rounds(values) for n, values in by_size.items()}
        for key, by_size in groups.items()
    }


def rounds_constant(
        rows: typing.Iterable[BenchRow]
) -> typing.Dict[typing.Tuple[str, int], bool]:
    """Tell for each family and radius if the rounds to win are constant.

    The most rounds over the rows of a size are compared across the sizes,
    any lost game makes the flag false.
    """
    return {
        key: len(set(most.values())) == 1 and None not in most.values()
        for key, most in _most_rounds_by_size(rows).items()
    }


def rounds_growing(
        rows: typing.Iterable[BenchRow]
) -> typing.Dict[typing.Tuple[str, int], bool]:
    """Tell for each family and radius if the rounds to win grow.

    The most rounds at the smallest and the largest size are compared as in
    the verification of the era strategy.  Families benchmarked at a single
    size are left out.
    """

    res = {}
    for key, most in _most_rounds_by_size(rows).items():
        if len(most) < 2:
            continue
        res[key] = rounds_grow(most, min(most), max(most))
        continue
    return res
