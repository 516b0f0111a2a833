import pytest

from ordgames.arena import Arena, P1, P2
from ordgames.errors import GameError, ResourceLimitError
from ordgames.objectives import Buchi
from ordgames.oracle import OracleBudget, oracle_winner, oracle_winner_single
from ordgames.preorders import Lexicographic, all_payoffs
from ordgames.reductions import OrderedGame


def test_fig1_verdicts(fig1_game):
    assert oracle_winner(fig1_game, (0, 1), 0) == P1
    assert oracle_winner(fig1_game, (1, 0), 0) == P2


def test_fig3_verdicts(fig3_game):
    assert oracle_winner(fig3_game, (1, 0, 0), 0) == P2
    assert oracle_winner(fig3_game, (0, 1, 1), 0) == P1


def test_self_loop_buchi_always_p1():
    arena = Arena.from_edges([1], [(0, 0)])
    game = OrderedGame(arena, (Buchi(frozenset({0})), Buchi(frozenset({0}))),
                       Lexicographic())
    for mu in all_payoffs(2):
        assert oracle_winner(game, mu, 0) == P1


def test_budget_vertices(fig3_game):
    tiny = OracleBudget(max_vertices=3)
    with pytest.raises(ResourceLimitError, match="vertices"):
        oracle_winner(fig3_game, (0, 1, 1), 0, tiny)


def test_budget_fields_checked(fig1_game):
    with pytest.raises(GameError):
        oracle_winner(fig1_game, (0, 1), 0, OracleBudget(max_vertices=0))


def test_threshold_length_checked(fig1_game):
    with pytest.raises(GameError, match="length"):
        oracle_winner(fig1_game, (0, 1, 1), 0)
