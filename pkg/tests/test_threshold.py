import random

import pytest

from helpers import CORPUS_BUDGET, corpus, small_arenas
from ordgames.arena import P1, P2
from ordgames.errors import GameError
from ordgames.generate import random_objective
from ordgames.objectives import Buchi, CoBuchi, payoff
from ordgames.preorders import (
    Lexicographic, all_payoffs, format_bits, lex_successor,
)
from ordgames.reductions import OrderedGame
from ordgames.strategies import outcome, verify_threshold_strategy
from ordgames.threshold import (
    compute_lex_value, dual_threshold_winner, dualize, solve_threshold,
)


class TestSolveThreshold:
    def test_fig1_paper_verdicts(self, fig1_game):
        assert solve_threshold(fig1_game, (0, 1), 0).winner == P1
        assert solve_threshold(fig1_game, (1, 0), 0).winner == P2
        assert solve_threshold(fig1_game, (1, 1), 0).winner == P2

    def test_fig3_paper_verdicts(self, fig3_game):
        assert solve_threshold(fig3_game, (1, 0, 0), 0).winner == P2
        assert solve_threshold(fig3_game, (0, 1, 0), 0).winner == P1
        assert solve_threshold(fig3_game, (0, 1, 1), 0).winner == P1

    def test_zero_threshold_short_circuit(self, fig1_game):
        answer = solve_threshold(fig1_game, (0, 0), 0)
        assert answer.winner == P1 and answer.route == "trivial"

    def test_route_recorded(self, fig1_game, fig3_game):
        assert solve_threshold(fig1_game, (0, 1), 0).route.startswith("buchi/")
        assert solve_threshold(fig3_game, (1, 0, 0), 0).route.startswith("reach/")

    def test_route_override_only_for_buchi(self, fig3_game):
        with pytest.raises(GameError, match="route"):
            solve_threshold(fig3_game, (1, 0, 0), 0, route="lex-cnf")

    def test_buchi_routes_all_agree(self):
        count = 0
        for game, mu, v0, _ in corpus("buchi", 60, 3600, with_oracle=False):
            winners = set()
            routes = ["generic-cnf", "ui-buchi", "ui-buchi-lar"]
            if isinstance(game.preorder, Lexicographic):
                routes.append("lex-cnf")
            for r in routes:
                winners.add(solve_threshold(game, mu, v0, route=r).winner)
            assert len(winners) == 1, (mu, v0)
            count += 1
        assert count == 60

    def test_monotone_in_threshold(self):
        rng = random.Random(1900)
        for game, mu, v0, _ in corpus("buchi", 40, 1900, with_oracle=False,
                                      preorders=("lexicographic",)):
            win_at = solve_threshold(game, mu, v0).winner
            if win_at != P1:
                continue
            # every easier threshold must also be won
            for weaker in all_payoffs(game.n):
                if game.preorder.leq(weaker, mu):
                    assert solve_threshold(game, weaker, v0).winner == P1


class TestLexValue:
    def test_fig3_value_and_trace(self, fig3_game):
        res = compute_lex_value(fig3_game, 0)
        assert res.value == (0, 1, 1)
        verdicts = [(format_bits(m), a.winner) for m, a in res.trace]
        assert verdicts == [("100", P2), ("010", P1), ("011", P1)]

    def test_fig3_optimal_strategies_behave(self, fig3_game):
        res = compute_lex_value(fig3_game, 0)
        ok1, _ = verify_threshold_strategy(fig3_game, res.value, 0, res.strat1)
        assert ok1
        ok2, _ = verify_threshold_strategy(
            fig3_game, lex_successor(res.value), 0, res.strat2)
        assert ok2
        play = outcome(fig3_game.arena, 0, res.strat1, res.strat2)
        assert payoff(play, fig3_game.objectives) == res.value

    def test_single_objective_buchi(self, fig1_arena):
        game = OrderedGame(fig1_arena, (Buchi(frozenset({1, 2})),),
                           Lexicographic())
        assert compute_lex_value(game, 0).value == (1,)

    def test_outcome_payoff_equals_value_random(self):
        for game, mu, v0, _ in corpus("cobuchi", 30, 2500, with_oracle=False,
                                      preorders=("lexicographic",)):
            res = compute_lex_value(game, v0)
            play = outcome(game.arena, v0, res.strat1, res.strat2)
            assert payoff(play, game.objectives) == res.value

    def test_value_consistency(self):
        for kind, seed in (("buchi", 2600), ("reach", 2700)):
            for game, mu, v0, _ in corpus(kind, 25, seed, with_oracle=False,
                                          preorders=("lexicographic",)):
                res = compute_lex_value(game, v0)
                assert solve_threshold(game, res.value, v0).winner == P1 \
                    or not any(res.value)
                if not all(res.value):
                    nxt = lex_successor(res.value)
                    assert solve_threshold(game, nxt, v0).winner == P2

    def test_requires_lexicographic(self, fig1_arena):
        from ordgames.preorders import Subset
        game = OrderedGame(fig1_arena, (Buchi(frozenset({1})),), Subset())
        with pytest.raises(GameError, match="lexicographic"):
            compute_lex_value(game, 0)


class TestDualize:
    def test_all_ones_flips_to_zero(self, fig1_game):
        _, mu_bar = dualize(fig1_game, (1, 1))
        assert mu_bar == (0, 0)

    def test_objectives_complemented(self, fig1_game):
        dual, _ = dualize(fig1_game, (0, 1))
        assert all(o.kind == "cobuchi" for o in dual.objectives)

    def test_involution(self, fig1_game):
        dual, mu_bar = dualize(fig1_game, (0, 1))
        back, mu2 = dualize(dual, mu_bar)
        assert mu2 == (0, 1)
        assert back.objectives == fig1_game.objectives

    def test_uncomplementable_kind(self, fig1_arena):
        from ordgames.objectives import Parity
        game = OrderedGame(fig1_arena, (Parity((0, 1, 0)),), Lexicographic())
        with pytest.raises(GameError):
            dualize(game, (1,))

    def test_dual_reading_agrees_on_random_buchi(self):
        agree = 0
        for game, mu, v0, _ in corpus("buchi", 60, 2800, with_oracle=False,
                                      preorders=("lexicographic",)):
            direct = solve_threshold(game, mu, v0).winner
            assert dual_threshold_winner(game, mu, v0) == direct
            agree += 1
        assert agree == 60

    def test_dual_reading_agrees_on_random_cobuchi(self):
        for game, mu, v0, _ in corpus("cobuchi", 40, 2900, with_oracle=False,
                                      preorders=("lexicographic",)):
            direct = solve_threshold(game, mu, v0).winner
            assert dual_threshold_winner(game, mu, v0) == direct


class TestDeterminacy:
    def test_exactly_one_winner_and_opponent_agrees(self):
        # re-solving from the loser's perspective: the winner's strategy
        # survives verification, which solves the adversary's best response
        for kind, seed in (("buchi", 3000), ("reach", 3100), ("parity", 3200)):
            for game, mu, v0, ora in corpus(kind, 20, seed):
                answer = solve_threshold(game, mu, v0)
                assert answer.winner == ora
                ok, _ = verify_threshold_strategy(game, mu, v0, answer.strategy)
                assert ok
