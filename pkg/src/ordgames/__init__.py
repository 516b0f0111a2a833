"""Solver and synthesis toolkit for monotonically ordered omega-regular games."""

from .arena import Arena, Lasso, P1, P2, opponent
from .errors import GameError, ResourceLimitError
from .objectives import (
    And, BooleanBuchi, Buchi, CoBuchi, ExplMuller, Formula, GenBuchi, GenReach,
    Lit, Muller, Objective, Or, Parity, Rabin, Reach, Safe, Streett, UIBuchi,
    UIReach, UISafe, complement, payoff, satisfies, to_boolean_buchi,
)
from .preorders import (
    Counting, Lexicographic, Maximise, Preorder, Subset, TablePreorder,
    complement_bits, format_bits, last1, lex_cnf_thresholds, lex_predecessor,
    lex_successor, make_preorder, minimal_thresholds, parse_bits,
)
from .reductions import OrderedGame, ReducedGame
from .solvers import SolveResult, attractor, solve
from .strategies import MooreStrategy, minimize, outcome, verify_threshold_strategy
from .threshold import (
    ThresholdAnswer, ValueResult, compute_lex_value, dual_threshold_winner,
    dualize, solve_threshold,
)

__version__ = "0.1.0"
