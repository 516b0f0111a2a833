"""Brute-force reference winner for small instances.

The oracle shares the data types but none of the fixpoint solving code.
It compiles the threshold condition into a parity criterion on a monitor
product where memoryless strategies are known to suffice: occurrence
kinds get monotone visited-set bits (the priority of a state says whether
the accumulated payoff already clears the threshold), tail kinds get a
latest appearance record over vertex signatures. It then enumerates one
player's memoryless product strategies lazily over their own reachable
region; the opponent's best response is a pure graph question, namely
whether the restricted product has a reachable cycle whose minimum
priority has the opponent's parity.
"""

from dataclasses import dataclass
from itertools import product as iproduct

from .arena import Arena, P1, P2
from .errors import GameError, ResourceLimitError
from .objectives import (
    BooleanBuchi, Buchi, CoBuchi, ExplMuller, GenBuchi, GenReach, Muller,
    Parity, Rabin, Reach, Safe, Streett, UIBuchi, UIReach, UISafe,
)
from .preorders import Lexicographic
from .reductions import OrderedGame


@dataclass(frozen=True)
class OracleBudget:
    max_vertices: int = 8
    max_product_states: int = 6000
    max_search_nodes: int = 200_000

    def check(self):
        if min(self.max_vertices, self.max_product_states,
               self.max_search_nodes) <= 0:
            raise GameError("oracle budget fields must be positive")


DEFAULT_BUDGET = OracleBudget()

_OCCURRENCE = ("reach", "safe", "genreach", "uireach", "uisafe")


# ---------------------------------------------------------------------------
# Per-kind payoff decoding, written directly against the definitions.


def _occurrence_monitor(obj, full):
    """(monitored sets, bit decoder): the decoder turns per-set visited
    flags into the objective's satisfaction bit. Safety kinds monitor the
    unsafe complements, so their flags record violations."""
    if isinstance(obj, Reach):
        return [obj.targets], lambda hit: hit[0]
    if isinstance(obj, Safe):
        return [full - obj.targets], lambda hit: not hit[0]
    if isinstance(obj, GenReach):
        return list(obj.targets), all
    if isinstance(obj, UIReach):
        sets = [u for row in obj.rows for u in row]
        widths = [len(row) for row in obj.rows]

        def decode(hit):
            k = 0
            for w in widths:
                if all(hit[k:k + w]):
                    return True
                k += w
            return False
        return sets, decode
    if isinstance(obj, UISafe):
        sets = [full - u for row in obj.rows for u in row]
        widths = [len(row) for row in obj.rows]

        def decode(hit):
            k = 0
            for w in widths:
                if not any(hit[k:k + w]):
                    return True
                k += w
            return False
        return sets, decode
    raise GameError(f"{obj.kind} is not an occurrence objective")


def _signature(obj, v):
    """Per-vertex observation needed to decode the objective from Inf."""
    if isinstance(obj, Buchi):
        return v in obj.targets
    if isinstance(obj, CoBuchi):
        return v in obj.targets
    if isinstance(obj, (Rabin, Streett)):
        return tuple((v in e, v in f) for e, f in obj.pairs)
    if isinstance(obj, Parity):
        return obj.colors[v]
    if isinstance(obj, Muller):
        return obj.colors[v]
    if isinstance(obj, ExplMuller):
        return v
    if isinstance(obj, BooleanBuchi):
        return tuple(v in u for u in obj.targets)
    if isinstance(obj, GenBuchi):
        return tuple(v in u for u in obj.targets)
    if isinstance(obj, UIBuchi):
        return tuple(tuple(v in u for u in row) for row in obj.rows)
    raise GameError(f"{obj.kind} is not a tail objective")


def _tail_bit(obj, sigs):
    """Satisfaction bit from the set of signatures seen infinitely often."""
    if isinstance(obj, Buchi):
        return any(sigs)
    if isinstance(obj, CoBuchi):
        return all(sigs)
    if isinstance(obj, Rabin):
        k = len(obj.pairs)
        return any(not any(s[i][0] for s in sigs) and any(s[i][1] for s in sigs)
                   for i in range(k))
    if isinstance(obj, Streett):
        k = len(obj.pairs)
        return all(any(s[i][0] for s in sigs) or not any(s[i][1] for s in sigs)
                   for i in range(k))
    if isinstance(obj, Parity):
        return min(sigs) % 2 == 0
    if isinstance(obj, Muller):
        return frozenset(sigs) in obj.family
    if isinstance(obj, ExplMuller):
        return frozenset(sigs) in obj.family
    if isinstance(obj, BooleanBuchi):
        m = len(obj.targets)
        assignment = [any(s[i] for s in sigs) for i in range(m)]
        return obj.formula.evaluate(assignment)
    if isinstance(obj, GenBuchi):
        m = len(obj.targets)
        return all(any(s[i] for s in sigs) for i in range(m))
    if isinstance(obj, UIBuchi):
        return any(all(any(s[i][j] for s in sigs) for j in range(len(row)))
                   for i, row in enumerate(obj.rows))
    raise GameError(f"{obj.kind} is not a tail objective")


# ---------------------------------------------------------------------------
# Product construction: states, edges, owners, priorities.


@dataclass(eq=False)
class _Product:
    owners: list
    succ: list
    prio: list
    init: int


def _occurrence_product(game, mu, v0, budget):
    arena = game.arena
    pre = game.preorder
    full = frozenset(arena.vertices)
    monitors = []
    decoders = []
    for obj in game.objectives:
        sets, dec = _occurrence_monitor(obj, full)
        monitors.append(sets)
        decoders.append(dec)
    vbits = []
    flat = [u for sets in monitors for u in sets]
    for v in arena.vertices:
        bits = 0
        for j, u in enumerate(flat):
            if v in u:
                bits |= 1 << j
        vbits.append(bits)
    offsets = []
    k = 0
    for sets in monitors:
        offsets.append((k, k + len(sets)))
        k += len(sets)

    prio_cache = {}

    def priority(bits):
        if bits not in prio_cache:
            payoff = []
            for (lo, hi), dec in zip(offsets, decoders):
                hit = [bool(bits & (1 << j)) for j in range(lo, hi)]
                payoff.append(1 if dec(hit) else 0)
            prio_cache[bits] = 0 if pre.leq(mu, tuple(payoff)) else 1
        return prio_cache[bits]

    return _explore(game, v0, budget,
                    init_mem=lambda v: vbits[v],
                    step_mem=lambda mem, w: mem | vbits[w],
                    prio=lambda v, mem: priority(mem))


def _tail_product(game, mu, v0, budget):
    arena = game.arena
    pre = game.preorder
    sig = [tuple(_signature(obj, v) for obj in game.objectives)
           for v in arena.vertices]
    palette = sorted(set(sig), key=repr)
    color_of = {s: c for c, s in enumerate(palette)}
    colors = [color_of[s] for s in sig]
    d = len(palette)

    fam_cache = {}

    def good(prefix):
        if prefix not in fam_cache:
            chosen = [palette[c] for c in prefix]
            payoff = tuple(
                1 if _tail_bit(obj, [s[i] for s in chosen]) else 0
                for i, obj in enumerate(game.objectives))
            fam_cache[prefix] = pre.leq(mu, payoff)
        return fam_cache[prefix]

    canon = tuple(range(d))

    def step(mem, w):
        perm, _ = mem
        c = colors[w]
        pos = perm.index(c) + 1
        return ((c,) + perm[:pos - 1] + perm[pos:], pos)

    def prio(v, mem):
        perm, hit = mem
        return 2 * (d - hit) + (0 if good(frozenset(perm[:hit])) else 1)

    return _explore(game, v0, budget,
                    init_mem=lambda v: step((canon, d), v),
                    step_mem=step,
                    prio=prio)


def _explore(game, v0, budget, init_mem, step_mem, prio):
    arena = game.arena
    states = []
    index = {}
    owners = []
    prios = []

    def intern(v, mem):
        key = (v, mem)
        if key not in index:
            if len(states) >= budget.max_product_states:
                raise ResourceLimitError("oracle product states",
                                         len(states) + 1,
                                         budget.max_product_states)
            index[key] = len(states)
            states.append(key)
            owners.append(arena.owners[v])
            prios.append(prio(v, mem))
        return index[key]

    init = intern(v0, init_mem(v0))
    succ = []
    frontier = [init]
    while frontier:
        p = frontier.pop()
        while len(succ) <= p:
            succ.append(None)
        v, mem = states[p]
        row = []
        for w in arena.succ[v]:
            before = len(states)
            q = intern(w, step_mem(mem, w))
            if q >= before:
                frontier.append(q)
            row.append(q)
        succ[p] = tuple(row)
    while len(succ) < len(states):
        succ.append(())
    return _Product(owners, succ, prios, init)


# ---------------------------------------------------------------------------
# Memoryless strategy search with cycle-parity best responses.


def _sccs(nodes, succ):
    """Tarjan, iterative."""
    indices = {}
    low = {}
    on_stack = set()
    stack = []
    out = []
    counter = [0]
    for root in nodes:
        if root in indices:
            continue
        work = [(root, iter(succ(root)))]
        indices[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, it = work[-1]
            advanced = False
            for w in it:
                if w not in indices:
                    indices[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ(w))))
                    advanced = True
                    break
                if w in on_stack:
                    low[node] = min(low[node], indices[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == indices[node]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == node:
                        break
                out.append(comp)
    return out


def _has_winning_cycle(prod, succ_of, reachable, want_even):
    """Is there a reachable cycle whose minimum priority has the wanted
    parity? Checked per candidate minimum via SCCs of the high-priority
    subgraph."""
    want = 0 if want_even else 1
    prios = sorted({prod.prio[p] for p in reachable if prod.prio[p] % 2 == want})
    for c in prios:
        keep = {p for p in reachable if prod.prio[p] >= c}

        def succ(p):
            return [q for q in succ_of(p) if q in keep]

        for comp in _sccs(sorted(keep), succ):
            comp_set = set(comp)
            if not any(prod.prio[p] == c for p in comp):
                continue
            if len(comp) > 1:
                return True
            p = comp[0]
            if p in succ(p):
                return True
    return False


def _reachable_under(prod, assign, player):
    seen = {prod.init}
    frontier = [prod.init]
    while frontier:
        p = frontier.pop()
        if prod.owners[p] == player:
            nxt = (assign[p],) if p in assign else ()
        else:
            nxt = prod.succ[p]
        for q in nxt:
            if q not in seen:
                seen.add(q)
                frontier.append(q)
    return seen


def _exists_winning_memoryless(prod, player, budget):
    """Lazy backtracking over `player`'s choices on their reachable region.

    A branch dies as soon as the opponent already has a winning cycle using
    only the committed choices (adding choices later cannot remove it); a
    full assignment wins when no opponent cycle is reachable at all.
    """
    nodes = [0]

    def opp_beats(assign, complete):
        reach = _reachable_under(prod, assign, player)

        def succ(p):
            if prod.owners[p] == player:
                return (assign[p],) if p in assign else ()
            return prod.succ[p]

        return _has_winning_cycle(prod, succ, reach, want_even=(player == P2))

    def search(assign):
        nodes[0] += 1
        if nodes[0] > budget.max_search_nodes:
            raise ResourceLimitError("oracle strategy search nodes",
                                     nodes[0], budget.max_search_nodes)
        if opp_beats(assign, False):
            return False
        reach = _reachable_under(prod, assign, player)
        pending = [p for p in sorted(reach)
                   if prod.owners[p] == player and p not in assign]
        if not pending:
            return True
        p = pending[0]
        for q in prod.succ[p]:
            assign[p] = q
            if search(assign):
                return True
            del assign[p]
        return False

    return search({})


def oracle_winner(game: OrderedGame, mu, v0: int,
                  budget: OracleBudget | None = None) -> int:
    """Winner of the threshold problem by exhaustive strategy search.

    Also checks its own determinacy: searching from Player 1's side and
    from Player 2's side must give complementary answers.
    """
    budget = budget or DEFAULT_BUDGET
    budget.check()
    mu = tuple(mu)
    if len(mu) != game.n:
        raise GameError("threshold length does not match the objective count")
    if game.arena.n > budget.max_vertices:
        raise ResourceLimitError("oracle arena vertices", game.arena.n,
                                 budget.max_vertices)
    if game.preorder.leq(mu, (0,) * game.n):
        return P1
    if game.kind in _OCCURRENCE:
        prod = _occurrence_product(game, mu, v0, budget)
    else:
        prod = _tail_product(game, mu, v0, budget)
    p1_can = _exists_winning_memoryless(prod, P1, budget)
    p2_can = _exists_winning_memoryless(prod, P2, budget)
    if p1_can == p2_can:
        raise AssertionError(
            "oracle determinacy violated: both or neither player has a "
            "winning memoryless product strategy")
    return P1 if p1_can else P2


def oracle_winner_single(arena: Arena, objective, v0: int,
                         budget: OracleBudget | None = None) -> int:
    """Oracle for a single-objective game, as threshold 1 over one objective."""
    game = OrderedGame(arena, (objective,), Lexicographic())
    return oracle_winner(game, (1,), v0, budget)
