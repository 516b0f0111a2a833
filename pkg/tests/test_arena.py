import pytest
from hypothesis import given, strategies as st

from ordgames.arena import Arena, Lasso
from ordgames.errors import GameError


def test_minimal_legal_arena_validates():
    a = Arena.from_edges([1], [(0, 0)])
    assert a.validate() is None


def test_deadlock_reported_with_vertex_name():
    a = Arena.from_edges([1], [], names=["v0"])
    assert a.validate() == "deadlock at v0"


def test_fig1_arena_validates(fig1_arena):
    assert fig1_arena.validate() is None


def test_owner_tags_checked():
    with pytest.raises(GameError, match="owner"):
        Arena.from_edges([3], [(0, 0)])


def test_edge_endpoints_checked():
    with pytest.raises(GameError, match="missing vertex"):
        Arena.from_edges([1], [(0, 1)])


def test_duplicate_names_rejected():
    with pytest.raises(GameError, match="duplicate"):
        Arena.from_edges([1, 1], [(0, 1), (1, 0)], names=["a", "a"])


class TestOccInf:
    def test_prefix_and_cycle(self, fig1_arena):
        l = Lasso((0,), (1,))
        l.check(fig1_arena)
        assert l.occ() == {0, 1}
        assert l.inf() == {1}

    def test_empty_prefix(self, fig1_arena):
        l = Lasso((), (0, 2))
        l.check(fig1_arena)
        assert l.occ() == l.inf() == {0, 2}

    def test_longer_prefix(self, fig1_arena):
        l = Lasso((0, 1), (1,))
        assert l.inf() == {1}
        assert l.occ() == {0, 1}

    def test_empty_cycle_rejected(self):
        with pytest.raises(GameError):
            Lasso((0,), ())

    def test_invalid_step_rejected(self, fig1_arena):
        with pytest.raises(GameError, match="not an edge"):
            Lasso((1,), (0,)).check(fig1_arena)  # v1 -> v0 does not exist

    def test_wraparound_checked(self, fig1_arena):
        with pytest.raises(GameError, match="wrap"):
            Lasso((), (0, 1)).check(fig1_arena)  # needs v1 -> v0 to close

    @given(st.integers(0, 4), st.data())
    def test_rotation_invariance(self, shift, data):
        cycle = data.draw(st.lists(st.integers(0, 3), min_size=1, max_size=5))
        prefix = data.draw(st.lists(st.integers(0, 3), max_size=3))
        k = shift % len(cycle)
        rotated = cycle[k:] + cycle[:k]
        a = Lasso(tuple(prefix + cycle[:k]), tuple(rotated))
        b = Lasso(tuple(prefix), tuple(cycle))
        assert a.inf() == b.inf()
        assert a.occ() == b.occ()


class TestSubarena:
    def test_identity(self, fig1_arena):
        sub, mapping = fig1_arena.subarena(fig1_arena.vertices)
        assert mapping == {0: 0, 1: 1, 2: 2}
        assert sub.succ == fig1_arena.succ
        assert sub.owners == fig1_arena.owners

    def test_single_self_loop(self, fig1_arena):
        sub, mapping = fig1_arena.subarena({1})
        assert sub.n == 1
        assert sub.succ == ((0,),)

    def test_deadlock_inducing_restriction(self, fig1_arena):
        with pytest.raises(GameError, match="deadlock at v0"):
            fig1_arena.subarena({0})

    def test_edge_preservation(self, fig3_arena):
        keep = {0, 2, 3, 5}
        sub, mapping = fig3_arena.subarena(keep)
        back = {new: old for old, new in mapping.items()}
        for u in sub.vertices:
            for w in sub.succ[u]:
                assert back[w] in fig3_arena.succ[back[u]]
        for u in keep:
            for w in fig3_arena.succ[u]:
                if w in keep:
                    assert mapping[w] in sub.succ[mapping[u]]
