"""seqext: exact extremal functions for sparse sequences, forbidden
(r, s)-formations, blocked sequences, and 0-1 matrix patterns, with
constructions that realize the matching lower bounds and brute-force
oracles that certify them on small instances."""

from .sequences import (
    BlockedSequence,
    PatternSequence,
    Sequence,
    flatten,
    normalize,
    parse_pattern,
    parse_sequence,
    render,
)
from .checks import (
    alternation_length,
    avoids_all_formations,
    brute_formation_length,
    contains_pattern,
    formation_length,
    is_ds,
    is_sparse,
    max_alternation,
    max_formation_length,
)
from .matrices import (
    MatrixPattern,
    ZeroOneMatrix,
    all_ones,
    blocked_to_matrix,
    kst_bound,
    matrix_contains,
    matrix_to_blocked,
    pair_block_cooccurrence,
    parse_matrix,
    render_matrix,
)
from .coloring import EdgeColoring, Hypergraph, greedy_edge_coloring, validate_coloring
from .construct import (
    ConstructionTrace,
    Troop,
    build_base,
    build_block_witness,
    build_ds_sparse_witness,
    build_formation_witness,
    choose_params,
    lift,
    pad_to_alphabet,
    trace_report,
)
from .oracles import (
    ExtremalResult,
    oracle_ex_matrix,
    oracle_formation,
    oracle_lambda,
    oracle_lambda_blocks,
    oracle_lambda_prime,
    oracle_pattern,
)
from .errors import CapExceededError, InfeasibleError
from .backends import backend_name

__version__ = "0.1.0"
