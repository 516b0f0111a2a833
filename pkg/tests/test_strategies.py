import random

import pytest

from helpers import CORPUS_BUDGET, corpus
from ordgames.arena import Arena, Lasso, P1, P2
from ordgames.errors import GameError
from ordgames.objectives import payoff
from ordgames.strategies import (
    MooreStrategy, minimize, outcome, replay_consistent,
    verify_threshold_strategy,
)
from ordgames.threshold import solve_threshold


class TestOutcome:
    def test_fig3_paper_outcome(self, fig3_arena, fig3_game):
        s1 = MooreStrategy.memoryless(
            P1, {1: 3, 2: 3, 3: 5, 4: 4, 5: 5}, fig3_arena.n)
        s2 = MooreStrategy.memoryless(P2, {0: 2}, fig3_arena.n)
        play = outcome(fig3_arena, 0, s1, s2)
        assert play.prefix + play.cycle == (0, 2, 3, 5) or \
            (play.prefix == (0, 2, 3) and play.cycle == (5,))
        assert payoff(play, fig3_game.objectives) == (0, 1, 1)

    def test_two_vertex_cycle(self):
        arena = Arena.from_edges([1, 2], [(0, 1), (1, 0)])
        s1 = MooreStrategy.memoryless(P1, {0: 1}, 2)
        s2 = MooreStrategy.memoryless(P2, {1: 0}, 2)
        play = outcome(arena, 0, s1, s2)
        assert len(play.cycle) <= 2
        play.check(arena)

    def test_different_starts_both_valid(self, fig1_arena):
        s1 = MooreStrategy.memoryless(P1, {1: 1, 2: 2}, 3)
        s2 = MooreStrategy.memoryless(P2, {0: 2}, 3)
        for v0 in fig1_arena.vertices:
            play = outcome(fig1_arena, v0, s1, s2)
            play.check(fig1_arena)
            assert replay_consistent(fig1_arena, play, s1)
            assert replay_consistent(fig1_arena, play, s2)

    def test_length_bound(self, fig1_arena):
        # two-state machines: configuration space of size |V| * 2 * 1
        update = {(m, v): (m + 1) % 2 for m in range(2) for v in range(3)}
        s1 = MooreStrategy(P1, (0, 1), 0, update,
                           {(m, v): v for m in range(2) for v in (1, 2)})
        s2 = MooreStrategy.memoryless(P2, {0: 1}, 3)
        play = outcome(fig1_arena, 0, s1, s2)
        assert len(play.prefix) + len(play.cycle) <= 3 * 2 * 1

    def test_same_owner_rejected(self, fig1_arena):
        s = MooreStrategy.memoryless(P1, {1: 1, 2: 2}, 3)
        with pytest.raises(GameError):
            outcome(fig1_arena, 0, s, s)

    def test_undefined_move_reported(self, fig1_arena):
        s1 = MooreStrategy.memoryless(P1, {1: 1}, 3)  # nothing for v2
        s2 = MooreStrategy.memoryless(P2, {0: 2}, 3)
        with pytest.raises(GameError, match="no move"):
            outcome(fig1_arena, 0, s1, s2)


class TestMinimize:
    def test_duplicated_constant_states_collapse(self):
        update = {(m, v): (m + 1) % 5 for m in range(5) for v in range(2)}
        action = {(m, 0): 1 for m in range(5)}
        s = MooreStrategy(P1, tuple(range(5)), 0, update, action)
        assert minimize(s).size == 1

    def test_minimal_alternator_unchanged(self):
        update = {(m, v): 1 - m for m in range(2) for v in range(2)}
        action = {(0, 0): 0, (1, 0): 1}
        s = MooreStrategy(P1, (0, 1), 0, update, action)
        assert minimize(s).size == 2

    def test_unreachable_states_dropped(self):
        update = {(m, v): 0 for m in range(3) for v in range(2)}
        action = {(0, 0): 1, (1, 0): 0, (2, 0): 0}
        s = MooreStrategy(P1, (0, 1, 2), 0, update, action)
        assert minimize(s).size == 1

    def test_minimized_verifies_iff_original(self):
        checked = 0
        for game, mu, v0, _ in corpus("buchi", 25, 9100, with_oracle=False):
            answer = solve_threshold(game, mu, v0)
            small = minimize(answer.strategy)
            ok_orig, _ = verify_threshold_strategy(game, mu, v0, answer.strategy)
            ok_min, _ = verify_threshold_strategy(game, mu, v0, small)
            assert ok_orig == ok_min
            checked += 1
        assert checked == 25


class TestVerify:
    def test_fig1_paper_loop_strategy(self, fig1_game):
        looping = MooreStrategy.memoryless(P1, {1: 1, 2: 2}, 3)
        ok, _ = verify_threshold_strategy(fig1_game, (0, 1), 0, looping)
        assert ok

    def test_fig1_loop_strategy_fails_harder_threshold(self, fig1_game):
        looping = MooreStrategy.memoryless(P1, {1: 1, 2: 2}, 3)
        ok, cx = verify_threshold_strategy(fig1_game, (1, 0), 0, looping)
        assert not ok
        assert payoff(cx, fig1_game.objectives) == (0, 1)

    def test_fig3_counterexample_through_v4(self, fig3_game):
        bad = MooreStrategy.memoryless(
            P1, {1: 3, 2: 3, 3: 4, 4: 4, 5: 5}, 6)
        ok, cx = verify_threshold_strategy(fig3_game, (0, 1, 1), 0, bad)
        assert not ok
        assert 4 in cx.occ()
        assert payoff(cx, fig3_game.objectives) == (0, 1, 0)

    def test_zero_threshold_always_verified(self, fig3_game):
        arbitrary = MooreStrategy.memoryless(P1, {}, 6)
        ok, _ = verify_threshold_strategy(fig3_game, (0, 0, 0), 0, arbitrary)
        assert ok

    def test_p2_strategies_verify_too(self, fig1_game):
        answer = solve_threshold(fig1_game, (1, 0), 0)
        assert answer.winner == P2
        ok, _ = verify_threshold_strategy(fig1_game, (1, 0), 0, answer.strategy)
        assert ok

    def test_illegal_move_rejected(self, fig1_game):
        cheating = MooreStrategy.memoryless(P1, {1: 0, 2: 2}, 3)  # v1->v0 not an edge
        with pytest.raises(GameError, match="not an edge"):
            verify_threshold_strategy(fig1_game, (0, 1), 0, cheating)
