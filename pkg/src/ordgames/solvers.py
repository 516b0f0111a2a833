"""Single-objective game solvers with strategy extraction.

Three fixpoint engines do all the work: the attractor (reachability and
safety), a direct generalized-Buchi solver (Buchi and co-Buchi are the
one-target and dual cases) and Zielonka's recursion for parity. Every
other condition is solved by composing the reductions module onto one of
these and folding the product strategy back into a Moore machine over the
original arena.
"""

import sys
from collections import deque
from dataclasses import dataclass

from .arena import Arena, P1, P2, opponent
from .errors import GameError, ResourceLimitError
from .objectives import (
    BooleanBuchi, Buchi, CoBuchi, ExplMuller, GenBuchi, GenReach, Muller,
    Objective, Parity, Rabin, Reach, Safe, Streett, UIBuchi, UIReach, UISafe,
    to_boolean_buchi,
)
from .reductions import (
    ReducedGame, boolean_buchi_to_muller, muller_to_parity_lar,
    ui_occurrence_product,
)
from .strategies import MooreStrategy

UI_DISTRIBUTION_MAX = 200_000


@dataclass(eq=False)
class SolveResult:
    """Winning regions and one winning strategy per player.

    win1 and win2 partition the vertex set; each strategy is defined
    exactly on its owner's vertices inside the owner's region.
    """

    win1: frozenset
    win2: frozenset
    strat1: MooreStrategy
    strat2: MooreStrategy

    def winner(self, v0: int) -> int:
        return P1 if v0 in self.win1 else P2

    def strategy(self, player: int) -> MooreStrategy:
        return self.strat1 if player == P1 else self.strat2


def _memoryless(arena: Arena, owner: int, moves: dict) -> MooreStrategy:
    return MooreStrategy.memoryless(owner, moves, arena.n)


def memoryless_moves(strat: MooreStrategy) -> dict:
    if len(strat.states) != 1:
        raise GameError("strategy is not memoryless")
    return {v: w for (_, v), w in strat.next_action.items()}


def _smallest_in(arena: Arena, v: int, allowed) -> int:
    for w in arena.succ[v]:
        if w in allowed:
            return w
    raise GameError(f"no successor of {arena.names[v]} inside the required region")


# ---------------------------------------------------------------------------
# Attractor.


def attractor(arena: Arena, player: int, target, alive=None, pred=None):
    """Least set from which `player` forces a visit to `target`.

    Returns (attr, strategy, rank): strategy picks, for the player's
    vertices strictly inside the attractor, the smallest-id successor with
    a smaller rank (a forcing edge); rank is the BFS distance.
    """
    if alive is None:
        alive = frozenset(arena.vertices)
    if pred is None:
        pred = arena.predecessors()
    target = set(target) & set(alive)
    rank = {v: 0 for v in target}
    attr = set(target)
    remaining = {}
    for v in alive:
        if arena.owners[v] != player:
            remaining[v] = sum(1 for w in arena.succ[v] if w in alive)
    queue = deque(sorted(target))
    while queue:
        w = queue.popleft()
        for u in pred[w]:
            if u not in alive or u in attr:
                continue
            if arena.owners[u] == player:
                attr.add(u)
                rank[u] = rank[w] + 1
                queue.append(u)
            else:
                remaining[u] -= 1
                if remaining[u] == 0:
                    attr.add(u)
                    rank[u] = rank[w] + 1
                    queue.append(u)
    strategy = {}
    for u in attr:
        if arena.owners[u] != player or rank[u] == 0:
            continue
        for w in arena.succ[u]:
            if w in attr and rank[w] < rank[u]:
                strategy[u] = w
                break
    return frozenset(attr), strategy, rank


# ---------------------------------------------------------------------------
# Reachability and safety.


def solve_reach(arena: Arena, targets) -> SolveResult:
    targets = frozenset(targets)
    attr, forcing, _ = attractor(arena, P1, targets)
    win1 = attr
    win2 = frozenset(arena.vertices) - win1
    moves1 = dict(forcing)
    for v in arena.vertices:
        # once the target is hit the play may wander anywhere, so the
        # reaching player keeps a default move outside the attractor too
        if arena.owners[v] == P1 and v not in moves1:
            moves1[v] = arena.succ[v][0]
    moves2 = {v: _smallest_in(arena, v, win2)
              for v in win2 if arena.owners[v] == P2}
    return SolveResult(win1, win2, _memoryless(arena, P1, moves1),
                       _memoryless(arena, P2, moves2))


def solve_safe(arena: Arena, safe_set) -> SolveResult:
    """Player 1 must keep the play inside `safe_set` forever."""
    safe_set = frozenset(safe_set)
    unsafe = frozenset(arena.vertices) - safe_set
    attr, forcing, _ = attractor(arena, P2, unsafe)
    win2 = attr
    win1 = frozenset(arena.vertices) - win2
    moves1 = {v: _smallest_in(arena, v, win1)
              for v in win1 if arena.owners[v] == P1}
    moves2 = dict(forcing)
    for v in arena.vertices:
        if arena.owners[v] == P2 and v not in moves2:
            moves2[v] = arena.succ[v][0]
    return SolveResult(win1, win2, _memoryless(arena, P1, moves1),
                       _memoryless(arena, P2, moves2))


# ---------------------------------------------------------------------------
# Generalized Buchi (Buchi and co-Buchi fall out as special cases).


def solve_gen_buchi(arena: Arena, targets, player: int = P1) -> SolveResult:
    """`player` tries to visit every target set infinitely often.

    Iteratively removes the opponent's attractor of any region from which
    the pursuing player cannot even reach one target set once; this is the
    direct fixpoint, giving a cycling strategy with one memory state per
    target for the pursuer and a layered memoryless strategy for the
    opponent.
    """
    targets = [frozenset(t) for t in targets]
    m = len(targets)
    opp = opponent(player)
    pred = arena.predecessors()
    alive = frozenset(arena.vertices)
    layers = []
    while True:
        removed = False
        for k, u in enumerate(targets):
            reach_u, _, _ = attractor(arena, player, u & alive, alive, pred)
            trap = alive - reach_u
            if trap:
                region, escape, _ = attractor(arena, opp, trap, alive, pred)
                stay = {v: _smallest_in(arena, v, trap)
                        for v in trap if arena.owners[v] == opp}
                layers.append((dict(escape), stay))
                alive = alive - region
                removed = True
                break
        if not removed:
            break

    win_p = alive
    win_o = frozenset(arena.vertices) - alive

    opp_moves = {}
    for escape, stay in layers:
        opp_moves.update(escape)
        opp_moves.update(stay)
    strat_opp = _memoryless(arena, opp, opp_moves)

    if m == 0:
        moves = {v: arena.succ[v][0] for v in arena.vertices
                 if arena.owners[v] == player}
        strat_p = _memoryless(arena, player, moves)
    else:
        forcing = []
        for u in targets:
            _, strat_k, _ = attractor(arena, player, u & win_p, win_p, pred)
            forcing.append(strat_k)
        update = {}
        next_action = {}
        for k in range(m):
            for v in arena.vertices:
                k2 = (k + 1) % m if v in targets[k] else k
                update[(k, v)] = k2
                if arena.owners[v] == player and v in win_p:
                    move = forcing[k2].get(v)
                    if move is None:
                        move = _smallest_in(arena, v, win_p)
                    next_action[(k, v)] = move
        strat_p = MooreStrategy(player, tuple(range(m)), 0, update, next_action)

    if player == P1:
        return SolveResult(win_p, win_o, strat_p, strat_opp)
    return SolveResult(win_o, win_p, strat_opp, strat_p)


def solve_buchi(arena: Arena, targets) -> SolveResult:
    return solve_gen_buchi(arena, [frozenset(targets)], P1)


def solve_cobuchi(arena: Arena, targets) -> SolveResult:
    """Player 1 must eventually stay inside `targets` forever."""
    outside = frozenset(arena.vertices) - frozenset(targets)
    return solve_gen_buchi(arena, [outside], P2)


# ---------------------------------------------------------------------------
# Parity via Zielonka's recursion.


def solve_parity(arena: Arena, colors) -> SolveResult:
    """Minimum color seen infinitely often must be even for Player 1."""
    colors = tuple(colors)
    if len(colors) != arena.n:
        raise GameError("parity coloring must be total on the vertex set")
    pred = arena.predecessors()
    limit = max(sys.getrecursionlimit(), 4 * arena.n + 1000)
    sys.setrecursionlimit(limit)

    def rec(alive: frozenset):
        if not alive:
            return frozenset(), frozenset(), {}, {}
        c = min(colors[v] for v in alive)
        fav = P1 if c % 2 == 0 else P2
        other = opponent(fav)
        heads = frozenset(v for v in alive if colors[v] == c)
        area, pull, _ = attractor(arena, fav, heads, alive, pred)
        w1a, w2a, s1a, s2a = rec(alive - area)
        wfav_a, woth_a = (w1a, w2a) if fav == P1 else (w2a, w1a)
        sfav_a, soth_a = (s1a, s2a) if fav == P1 else (s2a, s1a)
        if not woth_a:
            sfav = dict(sfav_a)
            sfav.update(pull)
            for v in heads:
                if arena.owners[v] == fav and v not in sfav:
                    sfav[v] = _smallest_in(arena, v, alive)
            if fav == P1:
                return alive, frozenset(), sfav, {}
            return frozenset(), alive, {}, sfav
        block, push, _ = attractor(arena, other, woth_a, alive, pred)
        w1b, w2b, s1b, s2b = rec(alive - block)
        wfav_b, woth_b = (w1b, w2b) if fav == P1 else (w2b, w1b)
        sfav_b, soth_b = (s1b, s2b) if fav == P1 else (s2b, s1b)
        woth = woth_b | block
        soth = dict(soth_a)
        soth.update(push)
        soth.update(soth_b)
        if fav == P1:
            return wfav_b, woth, sfav_b, soth
        return woth, wfav_b, soth, sfav_b

    w1, w2, s1, s2 = rec(frozenset(arena.vertices))
    return SolveResult(w1, w2, _memoryless(arena, P1, s1),
                       _memoryless(arena, P2, s2))


# ---------------------------------------------------------------------------
# Folding product strategies back onto the original arena.


def _fold_product(owner: int, arena: Arena, rg: ReducedGame, inner: MooreStrategy,
                  m0) -> MooreStrategy:
    """Moore machine over the original arena from a memoryless product strategy.

    Memory states are the product monitor memories; the update table is read
    off the product edges, so it is total on every play the machine can see.
    """
    moves = memoryless_moves(inner)
    update = {}
    for p in range(rg.arena.n):
        for q in rg.arena.succ[p]:
            update[(rg.mems[p], rg.proj[q])] = rg.mems[q]
    for v, p0 in rg.init.items():
        update[(m0, v)] = rg.mems[p0]
    state_index = {(rg.proj[p], rg.mems[p]): p for p in range(rg.arena.n)}
    next_action = {}
    for (mem, v), mem2 in update.items():
        p = state_index.get((v, mem2))
        if p is not None and p in moves:
            next_action[(mem, v)] = rg.proj[moves[p]]
    states = tuple(dict.fromkeys([m0] + list(rg.mems)))
    return MooreStrategy(owner, states, m0, update, next_action)


def _fold_result(arena: Arena, rg: ReducedGame, inner: SolveResult,
                 m0) -> SolveResult:
    win1 = frozenset(v for v, p in rg.init.items() if p in inner.win1)
    win2 = frozenset(arena.vertices) - win1
    return SolveResult(
        win1, win2,
        _fold_product(P1, arena, rg, inner.strat1, m0),
        _fold_product(P2, arena, rg, inner.strat2, m0),
    )


# ---------------------------------------------------------------------------
# Composite solvers.


def solve_ui_reach(arena: Arena, rows) -> SolveResult:
    rg = ui_occurrence_product(arena, UIReach(tuple(rows)))
    inner = solve_reach(rg.arena, rg.objective.targets)
    return _fold_result(arena, rg, inner, 0)


def solve_ui_safe(arena: Arena, rows) -> SolveResult:
    rg = ui_occurrence_product(arena, UISafe(tuple(rows)))
    inner = solve_safe(rg.arena, rg.objective.targets)
    return _fold_result(arena, rg, inner, 0)


def solve_gen_reach(arena: Arena, targets) -> SolveResult:
    return solve_ui_reach(arena, (tuple(frozenset(t) for t in targets),))


def solve_muller(arena: Arena, colors, family) -> SolveResult:
    rg = muller_to_parity_lar(arena, colors, family)
    inner = solve_parity(rg.arena, rg.objective.colors)
    palette = sorted(set(colors))
    m0 = (tuple(palette), len(palette))
    return _fold_result(arena, rg, inner, m0)


def solve_expl_muller(arena: Arena, family) -> SolveResult:
    colors = tuple(arena.vertices)
    fam = frozenset(frozenset(f) for f in family)
    return solve_muller(arena, colors, fam)


def solve_boolean_buchi(arena: Arena, obj: BooleanBuchi) -> SolveResult:
    colors, family = boolean_buchi_to_muller(arena, obj)
    return solve_muller(arena, colors, family)


def solve_rabin(arena: Arena, pairs) -> SolveResult:
    return solve_boolean_buchi(arena, to_boolean_buchi(Rabin(tuple(pairs)), arena.n))


def solve_streett(arena: Arena, pairs) -> SolveResult:
    return solve_boolean_buchi(arena, to_boolean_buchi(Streett(tuple(pairs)), arena.n))


def solve_ui_buchi(arena: Arena, rows, via: str = "distribution") -> SolveResult:
    """Union of intersections of Buchi conditions.

    The default route distributes the union over the intersections,
    turning the condition into a generalized Buchi objective over unions
    of target sets (one per choice tuple, no subsumption). The
    "boolean-buchi" route goes through the Muller translation instead.
    """
    rows = tuple(tuple(frozenset(u) for u in row) for row in rows)
    if via == "boolean-buchi":
        return solve_boolean_buchi(arena, to_boolean_buchi(UIBuchi(rows), arena.n))
    if via != "distribution":
        raise GameError(f"unknown UI Buchi route {via!r}")
    if any(not row for row in rows):
        # an empty conjunction is satisfied by every play
        return solve_gen_buchi(arena, [])
    total = 1
    for row in rows:
        total *= len(row)
        if total > UI_DISTRIBUTION_MAX:
            raise ResourceLimitError("UI Buchi distribution (m^l choice tuples)",
                                     total, UI_DISTRIBUTION_MAX)
    from itertools import product as iproduct
    unions = []
    seen = set()
    for choice in iproduct(*rows):
        u = frozenset().union(*choice)
        if u not in seen:
            seen.add(u)
            unions.append(u)
    return solve_gen_buchi(arena, unions)


def solve(arena: Arena, obj: Objective) -> SolveResult:
    """Dispatch a single-objective game to its solver."""
    obj.check(arena)
    if isinstance(obj, Reach):
        return solve_reach(arena, obj.targets)
    if isinstance(obj, Safe):
        return solve_safe(arena, obj.targets)
    if isinstance(obj, Buchi):
        return solve_buchi(arena, obj.targets)
    if isinstance(obj, CoBuchi):
        return solve_cobuchi(arena, obj.targets)
    if isinstance(obj, GenBuchi):
        return solve_gen_buchi(arena, obj.targets)
    if isinstance(obj, GenReach):
        return solve_gen_reach(arena, obj.targets)
    if isinstance(obj, UIReach):
        return solve_ui_reach(arena, obj.rows)
    if isinstance(obj, UISafe):
        return solve_ui_safe(arena, obj.rows)
    if isinstance(obj, UIBuchi):
        return solve_ui_buchi(arena, obj.rows)
    if isinstance(obj, Parity):
        return solve_parity(arena, obj.colors)
    if isinstance(obj, Muller):
        return solve_muller(arena, obj.colors, obj.family)
    if isinstance(obj, ExplMuller):
        return solve_expl_muller(arena, obj.family)
    if isinstance(obj, Rabin):
        return solve_rabin(arena, obj.pairs)
    if isinstance(obj, Streett):
        return solve_streett(arena, obj.pairs)
    if isinstance(obj, BooleanBuchi):
        return solve_boolean_buchi(arena, obj)
    raise GameError(f"no solver for objective kind {obj.kind!r}")
