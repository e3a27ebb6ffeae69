"""Flippergame base module.

Public names are going to be imported here.
"""

from .graph import (
    Graph, VertexOrder, build_graph, from_networkx, induced_subgraph, ball,
    distance, is_distance_independent, generate, ladder_order_at_least,
    read_graph, write_graph, read_order
)
from .flips import (
    AtomicFlip, FlipSet, SClassPartition, NO_OP_FLIP, flip_set,
    apply_atomic_flip, apply_flip_set, compose_flip_sets, s_classes,
    enumerate_partition_flips, is_partition_flip_of, isolating_flips
)
from .metric import (
    SeparationQuery, separation_query, s_class_query, is_r_separated,
    flip_distance, flip_ball
)
from .classify import (
    Classifier, RaisedPartition, validate_classifier, raised_partition,
    partition_from_five, reselect_representatives, canonize, search_classifier
)
from .predict import (
    PredictConfig, QPartition, predict_config, q_partition, flips_odd_case,
    flips_even_case, predict, fw_oracle
)
from .game import (
    GameVariant, FlipBudget, GameConfig, Position, Transcript, game_config,
    IllegalMoveError, validate_connector_move, validate_flipper_move, step,
    run_game, replay_transcript
)
from .strategies import (
    FlipperStrategy, ConnectorStrategy, SeparatorStrategy, ConnectorKind,
    flip_star, multi_to_single, separator_to_pseudo_flipper,
    pseudo_flipper_to_flipper, make_connector
)
from .utils import BudgetExceededError

__version__ = '0.1.0'

__all__ = [
    'Graph',
    'VertexOrder',
    'build_graph',
    'from_networkx',
    'induced_subgraph',
    'ball',
    'distance',
    'is_distance_independent',
    'generate',
    'ladder_order_at_least',
    'read_graph',
    'write_graph',
    'read_order',
    'AtomicFlip',
    'FlipSet',
    'SClassPartition',
    'NO_OP_FLIP',
    'flip_set',
    'apply_atomic_flip',
    'apply_flip_set',
    'compose_flip_sets',
    's_classes',
    'enumerate_partition_flips',
    'is_partition_flip_of',
    'isolating_flips',
    'SeparationQuery',
    'separation_query',
    's_class_query',
    'is_r_separated',
    'flip_distance',
    'flip_ball',
    'Classifier',
    'RaisedPartition',
    'validate_classifier',
    'raised_partition',
    'partition_from_five',
    'reselect_representatives',
    'canonize',
    'search_classifier',
    'PredictConfig',
    'QPartition',
    'predict_config',
    'q_partition',
    'flips_odd_case',
    'flips_even_case',
    'predict',
    'fw_oracle',
    'GameVariant',
    'FlipBudget',
    'GameConfig',
    'Position',
    'Transcript',
    'game_config',
    'IllegalMoveError',
    'validate_connector_move',
    'validate_flipper_move',
    'step',
    'run_game',
    'replay_transcript',
    'FlipperStrategy',
    'ConnectorStrategy',
    'SeparatorStrategy',
    'ConnectorKind',
    'flip_star',
    'multi_to_single',
    'separator_to_pseudo_flipper',
    'pseudo_flipper_to_flipper',
    'make_connector',
    'BudgetExceededError'
]
