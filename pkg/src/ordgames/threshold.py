"""Top-level decision procedures for ordered games.

solve_threshold answers "can Player 1 force a payoff at least mu from v0"
and returns the winner's strategy together with the reduction route it
used. compute_lex_value assembles the lexicographic value of a vertex bit
by bit from n threshold queries and hands back optimal strategies for
both players.
"""

from dataclasses import dataclass

from .arena import Arena, P1, P2
from .errors import GameError, ResourceLimitError
from .objectives import complement
from .preorders import (
    Lexicographic, complement_bits, distribute_to_cnf, lex_cnf_thresholds,
    lex_successor, minimal_thresholds, ones,
)
from .reductions import OrderedGame, swap_owners, threshold_to_single_objective
from .solvers import (
    SolveResult, solve, solve_boolean_buchi, solve_expl_muller, solve_gen_buchi,
    solve_ui_buchi, solve_ui_reach, solve_ui_safe,
)
from .strategies import MooreStrategy, minimize

GENERIC_CNF_CAP = 4096
MINIMIZE_STATES_CAP = 20_000

BUCHI_ROUTES = ("lex-cnf", "generic-cnf", "ui-buchi", "ui-buchi-lar")


@dataclass(eq=False)
class ThresholdAnswer:
    winner: int
    strategy: MooreStrategy
    route: str


@dataclass(eq=False)
class ValueResult:
    value: tuple
    strat1: MooreStrategy
    strat2: MooreStrategy
    trace: list  # (mu, ThresholdAnswer) per bit, most significant first


def _arbitrary(arena: Arena, player: int) -> MooreStrategy:
    moves = {v: arena.succ[v][0] for v in arena.vertices
             if arena.owners[v] == player}
    return MooreStrategy.memoryless(player, moves, arena.n)


def _tidy(strat: MooreStrategy) -> MooreStrategy:
    if len(strat.states) > MINIMIZE_STATES_CAP:
        return strat
    return minimize(strat)


def _buchi_route(game: OrderedGame, mu, route: str | None):
    """Pick and run a Buchi reduction chain, returning (SolveResult, route)."""
    arena = game.arena
    if route is None:
        route = "lex-cnf" if isinstance(game.preorder, Lexicographic) else "generic-cnf"
    if route not in BUCHI_ROUTES:
        raise GameError(f"unknown Buchi route {route!r}, expected one of {BUCHI_ROUTES}")
    if route == "lex-cnf":
        if not isinstance(game.preorder, Lexicographic):
            raise GameError("the lex-cnf route needs the lexicographic preorder")
        clauses = {ones(nu) for nu in lex_cnf_thresholds(mu)}
    elif route == "generic-cnf":
        anti = minimal_thresholds(game.preorder, mu)
        try:
            clauses = distribute_to_cnf([ones(nu) for nu in anti],
                                        cap=GENERIC_CNF_CAP, subsume=True)
        except ResourceLimitError:
            route = "ui-buchi-lar"
            clauses = None
    if route in ("lex-cnf", "generic-cnf"):
        unions = []
        for clause in sorted(clauses, key=sorted):
            u = frozenset()
            for i in clause:
                u |= game.objectives[i].targets
            unions.append(u)
        return solve_gen_buchi(arena, unions), f"buchi/{route}/genbuchi[{len(unions)}]"
    anti = minimal_thresholds(game.preorder, mu)
    rows = tuple(tuple(game.objectives[i].targets for i in sorted(ones(nu)))
                 for nu in sorted(anti, reverse=True))
    if route == "ui-buchi":
        return solve_ui_buchi(arena, rows, via="distribution"), "buchi/ui-buchi/distribution"
    return solve_ui_buchi(arena, rows, via="boolean-buchi"), "buchi/ui-buchi/boolean-buchi-lar"


def solve_threshold(game: OrderedGame, mu, v0: int, route: str | None = None) -> ThresholdAnswer:
    """Decide the threshold problem and synthesize the winner's strategy.

    Routing by objective kind follows the antichain reduction: occurrence
    kinds go through the visited-set product, Buchi through a conjunctive
    rewriting into a generalized Buchi game (polynomial for preorders with
    small clause antichains), co-Buchi through the complement of a
    generalized Buchi game, explicit Muller through the family algebra and
    the remaining kinds through Boolean Buchi, Muller and the latest
    appearance record.
    """
    mu = tuple(mu)
    if len(mu) != game.n:
        raise GameError("threshold length does not match the objective count")
    if not (0 <= v0 < game.arena.n):
        raise GameError(f"initial vertex {v0} is not in the arena")
    arena = game.arena

    if game.preorder.leq(mu, (0,) * game.n):
        # every payoff qualifies, any strategy of Player 1 wins
        return ThresholdAnswer(P1, _arbitrary(arena, P1), "trivial")

    kind = game.kind
    if kind == "buchi":
        result, used = _buchi_route(game, mu, route)
    elif route is not None:
        raise GameError("route overrides only apply to ordered Buchi games")
    elif kind in ("reach", "safe"):
        reduced = threshold_to_single_objective(game, mu)
        if reduced.objective.kind == "uireach":
            result = solve_ui_reach(arena, reduced.objective.rows)
        else:
            result = solve_ui_safe(arena, reduced.objective.rows)
        used = f"{kind}/occurrence-product"
    elif kind == "cobuchi":
        anti = sorted(minimal_thresholds(game.preorder, mu), reverse=True)
        full = frozenset(arena.vertices)
        outsides = []
        for nu in anti:
            inter = full
            for i in sorted(ones(nu)):
                inter &= game.objectives[i].targets
            outsides.append(full - inter)
        result = solve_gen_buchi(arena, outsides, player=P2)
        used = f"cobuchi/genbuchi-complement[{len(outsides)}]"
    elif kind == "explmuller":
        reduced = threshold_to_single_objective(game, mu)
        result = solve_expl_muller(arena, reduced.objective.family)
        used = "explmuller/family-algebra-lar"
    elif kind in ("parity", "rabin", "streett", "muller"):
        reduced = threshold_to_single_objective(game, mu)
        result = solve_boolean_buchi(arena, reduced.objective)
        used = f"{kind}/boolean-buchi-lar"
    else:
        raise GameError(f"no threshold routing for objective kind {kind!r}")

    winner = result.winner(v0)
    return ThresholdAnswer(winner, _tidy(result.strategy(winner)), used)


def compute_lex_value(game: OrderedGame, v0: int) -> ValueResult:
    """Greatest payoff Player 1 can force from v0, with optimal strategies.

    Tests the thresholds bit by bit, most significant first; Player 1's
    optimal strategy is the winning one for the last bit set, Player 2's
    the avoiding one for the last bit cleared.
    """
    if not isinstance(game.preorder, Lexicographic):
        raise GameError("values are defined for lexicographic games only")
    n = game.n
    bits = []
    trace = []
    strat1 = None
    strat2 = None
    for i in range(n):
        probe = tuple(bits) + (1,) + (0,) * (n - 1 - i)
        answer = solve_threshold(game, probe, v0)
        trace.append((probe, answer))
        if answer.winner == P1:
            bits.append(1)
            strat1 = answer.strategy
        else:
            bits.append(0)
            strat2 = answer.strategy
    if strat1 is None:
        strat1 = _arbitrary(game.arena, P1)
    if strat2 is None:
        strat2 = _arbitrary(game.arena, P2)
    return ValueResult(tuple(bits), strat1, strat2, trace)


def dualize(game: OrderedGame, mu):
    """Complement every objective and flip the threshold.

    Player 1 can ensure a payoff at least mu in the original game exactly
    when he can keep the payoff at most the flipped threshold in the dual
    game; dual_threshold_winner exercises that reading end to end.
    """
    dual_objs = tuple(complement(o, game.arena.n) for o in game.objectives)
    dual = OrderedGame(game.arena, dual_objs, game.preorder)
    return dual, complement_bits(tuple(mu))


def dual_threshold_winner(game: OrderedGame, mu, v0: int) -> int:
    """Winner of the threshold problem computed through the dual game.

    Keeping the dual payoff at most mu-bar is avoiding mu-bar + 1; the
    avoider role is asked by swapping the vertex owners and reading the
    answer from the opposite side.
    """
    mu = tuple(mu)
    if game.preorder.leq(mu, (0,) * game.n):
        return P1
    dual, mu_bar = dualize(game, mu)
    swapped = OrderedGame(swap_owners(game.arena), dual.objectives, game.preorder)
    answer = solve_threshold(swapped, lex_successor(mu_bar), v0)
    return P1 if answer.winner == P2 else P2
