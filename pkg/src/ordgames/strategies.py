"""Finite-memory strategies as Moore machines.

A strategy for player i is (M, m0, update, next_action): update folds the
observed vertices into the memory state, next_action picks the successor
at the player's own vertices. The memory state used to act at vertex v is
the fold of all vertices strictly before v, matching the usual Moore
machine reading of a history.
"""

from dataclasses import dataclass, field

from .arena import Arena, Lasso, P1, P2
from .errors import GameError


@dataclass(eq=False)
class MooreStrategy:
    owner: int
    states: tuple
    initial: object
    update: dict    # (state, vertex) -> state
    next_action: dict  # (state, vertex) -> vertex, for owned vertices

    @classmethod
    def memoryless(cls, owner, moves, n_vertices):
        """Single-state machine from a vertex -> vertex move table."""
        update = {(0, v): 0 for v in range(n_vertices)}
        next_action = {(0, v): w for v, w in moves.items()}
        return cls(owner, (0,), 0, update, next_action)

    @property
    def size(self) -> int:
        return len(self.states)

    def step(self, state, vertex):
        try:
            return self.update[(state, vertex)]
        except KeyError:
            raise GameError(
                f"strategy update undefined at state {state!r}, vertex {vertex}"
            ) from None

    def act(self, state, vertex):
        try:
            return self.next_action[(state, vertex)]
        except KeyError:
            raise GameError(
                f"strategy has no move at state {state!r}, vertex {vertex}"
            ) from None

    def check(self, arena: Arena) -> None:
        """Moves must follow arena edges and point away from owned vertices."""
        for (state, v), w in self.next_action.items():
            if arena.owners[v] != self.owner:
                raise GameError(
                    f"strategy moves at {arena.names[v]}, owned by the opponent"
                )
            if w not in arena.succ[v]:
                raise GameError(
                    f"strategy move {arena.names[v]} -> {arena.names[w]} is not an edge"
                )

    def minimized(self):
        """Merge observationally equivalent states by partition refinement."""
        return minimize(self)


def minimize(strat: MooreStrategy) -> MooreStrategy:
    vertices = sorted({v for (_, v) in strat.update} | {v for (_, v) in strat.next_action})
    # initial split on the visible move table of each state
    def output(s):
        return tuple(strat.next_action.get((s, v)) for v in vertices)

    blocks = {}
    for s in strat.states:
        blocks.setdefault(output(s), []).append(s)
    block_of = {}
    for i, members in enumerate(blocks.values()):
        for s in members:
            block_of[s] = i

    while True:
        signature = {}
        for s in strat.states:
            sig = (block_of[s],
                   tuple(block_of.get(strat.update.get((s, v))) for v in vertices))
            signature.setdefault(sig, []).append(s)
        if len(signature) == len(set(block_of.values())):
            break
        block_of = {}
        for i, members in enumerate(signature.values()):
            for s in members:
                block_of[s] = i

    reps = {}
    for s in strat.states:
        reps.setdefault(block_of[s], s)
    # relabel blocks densely, keep only blocks reachable from the initial one
    order = sorted(reps)
    relabel = {b: i for i, b in enumerate(order)}
    update = {}
    next_action = {}
    for b, s in reps.items():
        for v in vertices:
            if (s, v) in strat.update:
                update[(relabel[b], v)] = relabel[block_of[strat.update[(s, v)]]]
            if (s, v) in strat.next_action:
                next_action[(relabel[b], v)] = strat.next_action[(s, v)]
    m0 = relabel[block_of[strat.initial]]
    reachable = {m0}
    frontier = [m0]
    while frontier:
        s = frontier.pop()
        for v in vertices:
            t = update.get((s, v))
            if t is not None and t not in reachable:
                reachable.add(t)
                frontier.append(t)
    update = {k: t for k, t in update.items() if k[0] in reachable}
    next_action = {k: w for k, w in next_action.items() if k[0] in reachable}
    return MooreStrategy(strat.owner, tuple(sorted(reachable)), m0, update, next_action)


def outcome(arena: Arena, v0: int, strat1: MooreStrategy, strat2: MooreStrategy) -> Lasso:
    """The unique play from v0 consistent with both strategies, as a lasso.

    Simulates the joint configuration (vertex, memory1, memory2) until it
    repeats; the simulation is at most |V| * |M1| * |M2| steps long.
    """
    if {strat1.owner, strat2.owner} != {P1, P2}:
        raise GameError("outcome needs one strategy per player")
    by_owner = {strat1.owner: strat1, strat2.owner: strat2}
    seen = {}
    trail = []
    v, s1, s2 = v0, strat1.initial, strat2.initial
    while (v, s1, s2) not in seen:
        seen[(v, s1, s2)] = len(trail)
        trail.append(v)
        mover = by_owner[arena.owners[v]]
        w = mover.act(s1 if mover is strat1 else s2, v)
        if w not in arena.succ[v]:
            raise GameError(
                f"strategy chose non-edge {arena.names[v]} -> {arena.names[w]}"
            )
        s1 = strat1.step(s1, v)
        s2 = strat2.step(s2, v)
        v = w
    start = seen[(v, s1, s2)]
    return Lasso(tuple(trail[:start]), tuple(trail[start:]))


def replay_consistent(arena: Arena, lasso: Lasso, strat: MooreStrategy,
                      rounds: int = 2) -> bool:
    """Check that the lasso follows the strategy at every owned vertex."""
    seq = lasso.prefix + lasso.cycle * max(rounds, 1)
    state = strat.initial
    for u, w in zip(seq, seq[1:]):
        if arena.owners[u] == strat.owner and strat.act(state, u) != w:
            return False
        state = strat.step(state, u)
    return True


def verify_threshold_strategy(game, mu, v0, strat: MooreStrategy):
    """Independent check of a threshold strategy.

    Fixes the strategy into the arena (product with its memory, the owner's
    choices removed) and re-solves the one-controller threshold game this
    leaves for the adversary's best response. Returns (True, None) when the
    adversary cannot falsify the threshold, else (False, counterexample)
    with a concrete losing lasso of the original arena.
    """
    from . import reductions, threshold  # local: the solver stack builds on this module

    mu = tuple(mu)
    if len(mu) != game.n:
        raise GameError("threshold length does not match the objective count")
    if game.preorder.leq(mu, (0,) * game.n):
        return True, None
    strat.check(game.arena)

    arena = game.arena
    adversary = 3 - strat.owner

    # product of the arena with the strategy memory; owned vertices keep
    # only the prescribed move, adversary vertices keep every edge
    index = {}
    states = []
    proj = []

    def intern(v, m):
        key = (v, m)
        if key not in index:
            index[key] = len(states)
            states.append(key)
            proj.append(v)
        return index[key]

    start = intern(v0, strat.initial)
    frontier = [start]
    edges = []
    while frontier:
        p = frontier.pop()
        v, m = states[p]
        m2 = strat.step(m, v)
        if arena.owners[v] == strat.owner:
            succs = (strat.act(m, v),)  # undefined here means the strategy is stuck
        else:
            succs = arena.succ[v]
        for w in succs:
            before = len(states)
            q = intern(w, m2)
            if q >= before:
                frontier.append(q)
            edges.append((p, q))

    owners = tuple(adversary for _ in states)
    product = Arena.from_edges(
        owners, edges, names=tuple(f"{arena.names[v]}#{i}" for i, v in enumerate(proj))
    )
    lifted = tuple(reductions.lift_objective(o, tuple(proj), product.n)
                   for o in game.objectives)
    fixed_game = reductions.OrderedGame(product, lifted, game.preorder)
    answer = threshold.solve_threshold(fixed_game, mu, start)

    if answer.winner == strat.owner:
        return True, None
    # the adversary falsifies the threshold: extract a concrete lasso;
    # the adversary owns every product vertex, so the fixed side never acts
    dummy = MooreStrategy.memoryless(strat.owner, {}, product.n)
    play = outcome(product, start,
                   answer.strategy if adversary == P1 else dummy,
                   answer.strategy if adversary == P2 else dummy)
    lasso = Lasso(tuple(proj[p] for p in play.prefix),
                  tuple(proj[p] for p in play.cycle))
    return False, lasso
