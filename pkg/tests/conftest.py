import pytest

from ordgames.arena import Arena
from ordgames.objectives import Buchi, Reach
from ordgames.preorders import Lexicographic
from ordgames.reductions import OrderedGame


@pytest.fixture
def fig1_arena():
    return Arena.from_edges(
        [2, 1, 1], [(0, 1), (0, 2), (2, 0), (1, 1), (2, 2)],
        names=["v0", "v1", "v2"])


@pytest.fixture
def fig1_game(fig1_arena):
    return OrderedGame(
        fig1_arena, (Buchi(frozenset({1})), Buchi(frozenset({2}))),
        Lexicographic())


@pytest.fixture
def fig3_arena():
    return Arena.from_edges(
        [2, 1, 1, 1, 1, 1],
        [(0, 1), (0, 2), (1, 3), (2, 3), (3, 4), (3, 5), (4, 4), (5, 5)],
        names=["v0", "v1", "v2", "v3", "v4", "v5"])


@pytest.fixture
def fig3_game(fig3_arena):
    return OrderedGame(
        fig3_arena,
        (Reach(frozenset({1})), Reach(frozenset({2, 4})), Reach(frozenset({5}))),
        Lexicographic())
