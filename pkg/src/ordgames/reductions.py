"""Game-to-game constructions.

Everything here rewrites a game into another game with the same winner:
the antichain reduction from an ordered threshold query to a single
union-of-intersections objective, the visited-set product for occurrence
conditions, the Boolean-Buchi to Muller translation and the latest
appearance record turning Muller into parity. The embeddings of
generalized reachability/Buchi games into lexicographic ones are kept as
test generators.
"""

from dataclasses import dataclass, field

from .arena import Arena, P1, P2
from .errors import GameError, ResourceLimitError
from .objectives import (
    And, BooleanBuchi, Buchi, CoBuchi, ExplMuller, Formula, GenBuchi, GenReach,
    Lit, Muller, Objective, Or, Parity, Rabin, Reach, Safe, Streett, UIBuchi,
    UIReach, UISafe, VarPool, buchi_formula, expl_muller_union_intersection,
)
from .preorders import Preorder, minimal_thresholds, ones

OCCURRENCE_BITS_MAX = 20
PRODUCT_STATES_MAX = 300_000
LAR_COLORS_MAX = 8
BOOLEAN_BUCHI_VARS_MAX = 20


@dataclass(eq=False)
class OrderedGame:
    """Arena plus a homogeneous objective list ranked by a monotonic preorder."""

    arena: Arena
    objectives: tuple
    preorder: Preorder

    def __post_init__(self):
        self.objectives = tuple(self.objectives)
        if not self.objectives:
            raise GameError("an ordered game needs at least one objective")
        kinds = {o.kind for o in self.objectives}
        if len(kinds) > 1:
            raise GameError(f"objectives must be homogeneous, got {sorted(kinds)}")
        problem = self.arena.validate()
        if problem:
            raise GameError(problem)
        for o in self.objectives:
            o.check(self.arena)

    @property
    def n(self) -> int:
        return len(self.objectives)

    @property
    def kind(self) -> str:
        return self.objectives[0].kind


@dataclass(eq=False)
class ReducedGame:
    """A (possibly product) arena with a single objective and a back-map.

    proj sends product vertices to original vertices, mems carries the
    monitor memory of each product vertex, and init maps each original
    vertex to its canonical product vertex.
    """

    arena: Arena
    objective: Objective
    proj: tuple
    init: dict
    mems: tuple = ()
    note: str = ""

    @classmethod
    def identity(cls, arena: Arena, objective: Objective, note: str = ""):
        proj = tuple(range(arena.n))
        return cls(arena, objective, proj, {v: v for v in arena.vertices},
                   tuple(None for _ in arena.vertices), note)


def swap_owners(arena: Arena) -> Arena:
    return Arena(tuple(3 - o for o in arena.owners), arena.succ, arena.names)


def lift_objective(obj: Objective, proj: tuple, n_product: int) -> Objective:
    """Reinterpret an objective over a product arena via its projection."""

    def pre(s):
        return frozenset(p for p in range(n_product) if proj[p] in s)

    if isinstance(obj, Reach):
        return Reach(pre(obj.targets))
    if isinstance(obj, Safe):
        return Safe(pre(obj.targets))
    if isinstance(obj, Buchi):
        return Buchi(pre(obj.targets))
    if isinstance(obj, CoBuchi):
        return CoBuchi(pre(obj.targets))
    if isinstance(obj, GenReach):
        return GenReach(tuple(pre(u) for u in obj.targets))
    if isinstance(obj, GenBuchi):
        return GenBuchi(tuple(pre(u) for u in obj.targets))
    if isinstance(obj, UIReach):
        return UIReach(tuple(tuple(pre(u) for u in row) for row in obj.rows))
    if isinstance(obj, UISafe):
        return UISafe(tuple(tuple(pre(u) for u in row) for row in obj.rows))
    if isinstance(obj, UIBuchi):
        return UIBuchi(tuple(tuple(pre(u) for u in row) for row in obj.rows))
    if isinstance(obj, Rabin):
        return Rabin(tuple((pre(e), pre(f)) for e, f in obj.pairs))
    if isinstance(obj, Streett):
        return Streett(tuple((pre(e), pre(f)) for e, f in obj.pairs))
    if isinstance(obj, Parity):
        return Parity(tuple(obj.colors[proj[p]] for p in range(n_product)))
    if isinstance(obj, Muller):
        return Muller(tuple(obj.colors[proj[p]] for p in range(n_product)), obj.family)
    if isinstance(obj, ExplMuller):
        # exact vertex sets survive as color sets of the projection coloring
        return Muller(tuple(proj), obj.family)
    if isinstance(obj, BooleanBuchi):
        return BooleanBuchi(obj.formula, tuple(pre(u) for u in obj.targets))
    raise GameError(f"cannot lift objective kind {obj.kind!r}")


# ---------------------------------------------------------------------------
# Threshold query -> single objective (the antichain reduction).


def threshold_to_single_objective(game: OrderedGame, mu) -> ReducedGame:
    """Single-objective game equivalent to "ensure a payoff >= mu".

    The objective is the union over the threshold antichain of the
    conjunctions of the objectives each antichain element demands,
    materialized per kind. The arena is unchanged.
    """
    mu = tuple(mu)
    if len(mu) != game.n:
        raise GameError("threshold length does not match the objective count")
    anti = sorted(minimal_thresholds(game.preorder, mu), reverse=True)
    deltas = [sorted(ones(nu)) for nu in anti]
    if any(not d for d in deltas):
        # the empty conjunction demands nothing: every play qualifies
        full = frozenset(range(game.arena.n))
        return ReducedGame.identity(game.arena, Safe(full), note="trivial")

    kind = game.kind
    objs = game.objectives
    nv = game.arena.n
    note = f"antichain[{len(deltas)}]"
    if kind == "reach":
        rows = tuple(tuple(objs[i].targets for i in d) for d in deltas)
        return ReducedGame.identity(game.arena, UIReach(rows), note=note)
    if kind == "safe":
        rows = tuple(tuple(objs[i].targets for i in d) for d in deltas)
        return ReducedGame.identity(game.arena, UISafe(rows), note=note)
    if kind == "buchi":
        rows = tuple(tuple(objs[i].targets for i in d) for d in deltas)
        return ReducedGame.identity(game.arena, UIBuchi(rows), note=note)
    if kind == "cobuchi":
        # an intersection of co-Buchi objectives is the co-Buchi of the
        # intersection; the union over the antichain is the complement of a
        # generalized Buchi condition over the complements
        pool = VarPool()
        lits = []
        for d in deltas:
            inter = frozenset(range(nv))
            for i in d:
                inter &= objs[i].targets
            lits.append(Lit(pool.var(frozenset(range(nv)) - inter), False))
        phi = lits[0] if len(lits) == 1 else Or(tuple(lits))
        return ReducedGame.identity(
            game.arena, BooleanBuchi(phi, tuple(pool.sets)), note=note)
    if kind == "explmuller":
        rows = [tuple(objs[i] for i in d) for d in deltas]
        return ReducedGame.identity(
            game.arena, expl_muller_union_intersection(rows), note=note)
    if kind in ("parity", "rabin", "streett", "muller"):
        pool = VarPool()
        parts = {i: buchi_formula(objs[i], pool, nv) for d in deltas for i in d}
        disjuncts = []
        for d in deltas:
            sub = [parts[i] for i in d]
            disjuncts.append(sub[0] if len(sub) == 1 else And(tuple(sub)))
        phi = disjuncts[0] if len(disjuncts) == 1 else Or(tuple(disjuncts))
        return ReducedGame.identity(
            game.arena, BooleanBuchi(phi, tuple(pool.sets)), note=note)
    raise GameError(f"no threshold reduction for objective kind {kind!r}")


# ---------------------------------------------------------------------------
# Visited-set product for occurrence objectives.


def ui_occurrence_product(arena: Arena, obj: Objective,
                          max_states: int = PRODUCT_STATES_MAX) -> ReducedGame:
    """Monitor which target sets have been visited and reduce to reach/safety.

    Works for UIReach, UISafe and GenReach. The product attaches one
    monotone bit per distinct monitored set; a bit is set when the play
    visits the set (for safety rows the monitored sets are the unsafe
    complements, so a bit records a violation).
    """
    if isinstance(obj, GenReach):
        rows = (tuple(obj.targets),)
        safety = False
    elif isinstance(obj, UIReach):
        rows = obj.rows
        safety = False
    elif isinstance(obj, UISafe):
        rows = obj.rows
        safety = True
    else:
        raise GameError(f"occurrence product does not apply to {obj.kind!r}")

    full = frozenset(range(arena.n))
    monitored = []
    index = {}
    grid = []
    for row in rows:
        cells = []
        for u in row:
            watch = (full - u) if safety else frozenset(u)
            if watch not in index:
                index[watch] = len(monitored)
                monitored.append(watch)
            cells.append(index[watch])
        grid.append(tuple(cells))
    k = len(monitored)
    if k > OCCURRENCE_BITS_MAX:
        raise ResourceLimitError("2^K occurrence bits", k, OCCURRENCE_BITS_MAX)
    if (1 << k) * arena.n > max_states:
        raise ResourceLimitError(
            "occurrence product states", (1 << k) * arena.n, max_states)

    vbits = [0] * arena.n
    for j, watch in enumerate(monitored):
        for v in watch:
            vbits[v] |= 1 << j

    states = []
    proj = []
    mems = []
    state_index = {}

    def intern(v, bits):
        key = (v, bits)
        if key not in state_index:
            state_index[key] = len(states)
            states.append(key)
            proj.append(v)
            mems.append(bits)
        return state_index[key]

    init = {v: intern(v, vbits[v]) for v in arena.vertices}
    edges = []
    frontier = list(range(len(states)))
    while frontier:
        p = frontier.pop()
        v, bits = states[p]
        for w in arena.succ[v]:
            before = len(states)
            q = intern(w, bits | vbits[w])
            if q >= before:
                frontier.append(q)
            edges.append((p, q))
            if len(states) > max_states:
                raise ResourceLimitError("occurrence product states",
                                         len(states), max_states)

    owners = tuple(arena.owners[v] for v in proj)
    names = tuple(f"{arena.names[v]}|{bits:0{k}b}" if k else arena.names[v]
                  for v, bits in states)
    product = Arena.from_edges(owners, edges, names)

    if safety:
        # good while some row has no violated cell yet
        good = frozenset(
            p for p, (v, bits) in enumerate(states)
            if any(all(not bits & (1 << j) for j in row) for row in grid))
        objective = Safe(good)
    else:
        done = frozenset(
            p for p, (v, bits) in enumerate(states)
            if any(all(bits & (1 << j) for j in row) for row in grid))
        objective = Reach(done)
    return ReducedGame(product, objective, tuple(proj), init, tuple(mems),
                       note=f"occurrence-bits[{k}]")


# ---------------------------------------------------------------------------
# Boolean Buchi -> Muller, and Muller -> parity via latest appearance record.


def boolean_buchi_to_muller(arena: Arena, obj: BooleanBuchi):
    """Color vertices by which target sets they belong to.

    Returns (colors, family): colors is a dense total coloring, family the
    color sets whose induced truth assignment satisfies the formula. Only
    colors realized by some vertex are kept; unrealized ones occur in no
    play and cannot affect the winner.
    """
    m = len(obj.targets)
    if m > BOOLEAN_BUCHI_VARS_MAX:
        raise ResourceLimitError("Boolean Buchi variables", m,
                                 BOOLEAN_BUCHI_VARS_MAX)
    sig = []
    for v in arena.vertices:
        sig.append(frozenset(i for i in range(m) if v in obj.targets[i]))
    realized = sorted(set(sig), key=sorted)
    if (1 << len(realized)) > PRODUCT_STATES_MAX:
        raise ResourceLimitError("Muller family enumeration",
                                 1 << len(realized), PRODUCT_STATES_MAX)
    color_of = {s: c for c, s in enumerate(realized)}
    colors = tuple(color_of[s] for s in sig)

    family = set()
    items = list(enumerate(realized))
    for mask in range(1, 1 << len(realized)):
        chosen = [s for c, s in items if mask & (1 << c)]
        assignment = [any(i in s for s in chosen) for i in range(m)]
        if obj.formula.evaluate(assignment):
            family.add(frozenset(c for c, s in items if mask & (1 << c)))
    return colors, frozenset(family)


def _lar_step(mem, color):
    """Move the color to the front of the record; hit is its old position."""
    perm, _ = mem
    pos = perm.index(color) + 1
    return ((color,) + perm[:pos - 1] + perm[pos:], pos)


def muller_to_parity_lar(arena: Arena, colors, family,
                         max_states: int = PRODUCT_STATES_MAX) -> ReducedGame:
    """Product with a latest appearance record, winner-preserving.

    Record states are permutations of the realized colors plus the hit
    position of the last move-to-front. A state gets an even priority when
    the record prefix up to the hit is a family member, odd otherwise,
    graded so that deeper hits dominate: along any play the deepest hit
    seen infinitely often is exactly the set of colors seen infinitely
    often, making the minimum priority even iff that set is in the family.
    """
    palette = sorted(set(colors))
    d = len(palette)
    if d > LAR_COLORS_MAX:
        raise ResourceLimitError("LAR colors (factorial blowup)", d, LAR_COLORS_MAX)
    family = frozenset(frozenset(f) for f in family)
    canon = (tuple(palette), d)

    states = []
    proj = []
    mems = []
    state_index = {}

    def intern(v, mem):
        key = (v, mem)
        if key not in state_index:
            state_index[key] = len(states)
            states.append(key)
            proj.append(v)
            mems.append(mem)
        return state_index[key]

    init = {v: intern(v, _lar_step(canon, colors[v])) for v in arena.vertices}
    edges = []
    frontier = list(range(len(states)))
    while frontier:
        p = frontier.pop()
        v, mem = states[p]
        for w in arena.succ[v]:
            before = len(states)
            q = intern(w, _lar_step(mem, colors[w]))
            if q >= before:
                frontier.append(q)
            edges.append((p, q))
            if len(states) > max_states:
                raise ResourceLimitError("LAR product states", len(states),
                                         max_states)

    owners = tuple(arena.owners[v] for v in proj)
    names = tuple(f"{arena.names[v]}|{''.join(map(str, mem[0]))}@{mem[1]}"
                  for v, mem in states)
    product = Arena.from_edges(owners, edges, names)
    priorities = []
    for v, (perm, hit) in states:
        good = frozenset(perm[:hit]) in family
        priorities.append(2 * (d - hit) + (0 if good else 1))
    return ReducedGame(product, Parity(tuple(priorities)), tuple(proj), init,
                       tuple(mems), note=f"lar[{d}]")


# ---------------------------------------------------------------------------
# Hardness-proof embeddings, reused as test generators.


@dataclass(eq=False)
class LexEmbedding:
    """A lexicographic game equivalent to a generalized game.

    The source game's Player 1 wins iff the threshold answer names
    `winner_means_p1_wins`; the safety/co-Buchi variants hand the original
    Player 1 the avoider role, which swaps both the vertex owners and the
    reported winner.
    """

    game: OrderedGame
    mu: tuple
    winner_means_p1_wins: int


def embed_gen_reach_as_lex(arena: Arena, targets) -> LexEmbedding:
    from .preorders import Lexicographic
    objs = tuple(Reach(frozenset(u)) for u in targets)
    mu = (1,) * len(objs)
    return LexEmbedding(OrderedGame(arena, objs, Lexicographic()), mu, P1)


def embed_gen_reach_as_lex_safety(arena: Arena, targets) -> LexEmbedding:
    from .preorders import Lexicographic
    full = frozenset(range(arena.n))
    objs = tuple(Safe(full - frozenset(u)) for u in targets)
    mu = (0,) * (len(objs) - 1) + (1,)
    return LexEmbedding(OrderedGame(swap_owners(arena), objs, Lexicographic()),
                        mu, P2)


def embed_gen_buchi_as_lex(arena: Arena, targets) -> LexEmbedding:
    from .preorders import Lexicographic
    objs = tuple(Buchi(frozenset(u)) for u in targets)
    mu = (1,) * len(objs)
    return LexEmbedding(OrderedGame(arena, objs, Lexicographic()), mu, P1)


def embed_gen_buchi_as_lex_cobuchi(arena: Arena, targets) -> LexEmbedding:
    from .preorders import Lexicographic
    full = frozenset(range(arena.n))
    objs = tuple(CoBuchi(full - frozenset(u)) for u in targets)
    mu = (0,) * (len(objs) - 1) + (1,)
    return LexEmbedding(OrderedGame(swap_owners(arena), objs, Lexicographic()),
                        mu, P2)
