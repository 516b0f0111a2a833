"""Omega-regular objectives and payoff evaluation on lassos.

Every supported winning condition only depends on the sets of vertices a
play visits (occurrence kinds) or visits infinitely often (tail kinds), so
evaluating a condition on an ultimately periodic play reduces to set
computations on occ/inf of its lasso.
"""

from dataclasses import dataclass

from .arena import Arena, Lasso
from .errors import GameError

# ---------------------------------------------------------------------------
# Boolean formulas in negation normal form (negations on variables only).


class Formula:
    def size(self) -> int:
        """Number of binary conjunctions/disjunctions in the formula."""
        raise NotImplementedError

    def variables(self) -> frozenset:
        raise NotImplementedError

    def evaluate(self, assignment) -> bool:
        raise NotImplementedError


@dataclass(frozen=True)
class Lit(Formula):
    var: int
    positive: bool = True

    def size(self):
        return 0

    def variables(self):
        return frozenset({self.var})

    def evaluate(self, assignment):
        return assignment[self.var] if self.positive else not assignment[self.var]

    def __str__(self):
        return f"x{self.var}" if self.positive else f"!x{self.var}"


@dataclass(frozen=True)
class And(Formula):
    children: tuple

    def size(self):
        own = max(len(self.children) - 1, 0)
        return own + sum(c.size() for c in self.children)

    def variables(self):
        return frozenset().union(*(c.variables() for c in self.children)) \
            if self.children else frozenset()

    def evaluate(self, assignment):
        return all(c.evaluate(assignment) for c in self.children)

    def __str__(self):
        if not self.children:
            return "true"
        return "(" + " & ".join(str(c) for c in self.children) + ")"


@dataclass(frozen=True)
class Or(Formula):
    children: tuple

    def size(self):
        own = max(len(self.children) - 1, 0)
        return own + sum(c.size() for c in self.children)

    def variables(self):
        return frozenset().union(*(c.variables() for c in self.children)) \
            if self.children else frozenset()

    def evaluate(self, assignment):
        return any(c.evaluate(assignment) for c in self.children)

    def __str__(self):
        if not self.children:
            return "false"
        return "(" + " | ".join(str(c) for c in self.children) + ")"


# ---------------------------------------------------------------------------
# Objective kinds.


class Objective:
    kind = "abstract"
    occurrence_based = False

    def target_sets(self):
        """All vertex sets the objective references (for well-formedness)."""
        return ()

    def check(self, arena: Arena) -> None:
        for u in self.target_sets():
            for v in u:
                if not (0 <= v < arena.n):
                    raise GameError(f"{self.kind} objective references vertex {v}")


@dataclass(frozen=True)
class Reach(Objective):
    targets: frozenset
    kind = "reach"
    occurrence_based = True

    def target_sets(self):
        return (self.targets,)


@dataclass(frozen=True)
class Safe(Objective):
    targets: frozenset  # stay inside this set forever
    kind = "safe"
    occurrence_based = True

    def target_sets(self):
        return (self.targets,)


@dataclass(frozen=True)
class Buchi(Objective):
    targets: frozenset
    kind = "buchi"

    def target_sets(self):
        return (self.targets,)


@dataclass(frozen=True)
class CoBuchi(Objective):
    targets: frozenset  # eventually stay inside this set
    kind = "cobuchi"

    def target_sets(self):
        return (self.targets,)


@dataclass(frozen=True)
class ExplMuller(Objective):
    family: frozenset  # frozenset of frozensets of vertices
    kind = "explmuller"

    def target_sets(self):
        return tuple(self.family)


@dataclass(frozen=True)
class Rabin(Objective):
    pairs: tuple  # ((E, F), ...) as frozensets
    kind = "rabin"

    def target_sets(self):
        return tuple(s for pair in self.pairs for s in pair)


@dataclass(frozen=True)
class Streett(Objective):
    pairs: tuple
    kind = "streett"

    def target_sets(self):
        return tuple(s for pair in self.pairs for s in pair)


@dataclass(frozen=True)
class Parity(Objective):
    colors: tuple  # colors[v] is the color of vertex v; min color seen i.o. must be even
    kind = "parity"

    def check(self, arena):
        if len(self.colors) != arena.n:
            raise GameError("parity coloring must be total on the vertex set")
        if any(c < 0 for c in self.colors):
            raise GameError("parity colors must be nonnegative")


@dataclass(frozen=True)
class Muller(Objective):
    colors: tuple      # total coloring of vertices
    family: frozenset  # frozenset of frozensets of colors
    kind = "muller"

    def check(self, arena):
        if len(self.colors) != arena.n:
            raise GameError("muller coloring must be total on the vertex set")


@dataclass(frozen=True)
class BooleanBuchi(Objective):
    """Boolean combination of Buchi conditions: variable i is true iff the
    play visits targets[i] infinitely often."""

    formula: Formula
    targets: tuple  # tuple of frozensets, one per variable
    kind = "booleanbuchi"

    def target_sets(self):
        return self.targets

    def check(self, arena):
        super().check(arena)
        bad = [v for v in self.formula.variables() if not 0 <= v < len(self.targets)]
        if bad:
            raise GameError(f"formula uses undeclared variables {sorted(bad)}")


@dataclass(frozen=True)
class GenReach(Objective):
    targets: tuple  # every set must be visited at least once
    kind = "genreach"
    occurrence_based = True

    def target_sets(self):
        return self.targets


@dataclass(frozen=True)
class GenBuchi(Objective):
    targets: tuple  # every set must be visited infinitely often
    kind = "genbuchi"

    def target_sets(self):
        return self.targets


@dataclass(frozen=True)
class UIReach(Objective):
    rows: tuple  # tuple of rows; each row a tuple of frozensets (conjunction)
    kind = "uireach"
    occurrence_based = True

    def target_sets(self):
        return tuple(s for row in self.rows for s in row)


@dataclass(frozen=True)
class UISafe(Objective):
    rows: tuple
    kind = "uisafe"
    occurrence_based = True

    def target_sets(self):
        return tuple(s for row in self.rows for s in row)


@dataclass(frozen=True)
class UIBuchi(Objective):
    rows: tuple
    kind = "uibuchi"

    def target_sets(self):
        return tuple(s for row in self.rows for s in row)


# ---------------------------------------------------------------------------
# Evaluation on lassos.


def satisfies(lasso: Lasso, obj: Objective, arena: Arena | None = None) -> int:
    """1 iff the play prefix.cycle^omega belongs to the objective."""
    if arena is not None:
        lasso.check(arena)
        obj.check(arena)
    occ = lasso.occ()
    inf = lasso.inf()
    return 1 if _holds(obj, occ, inf) else 0


def _holds(obj, occ, inf):
    if isinstance(obj, Reach):
        return bool(occ & obj.targets)
    if isinstance(obj, Safe):
        return occ <= obj.targets
    if isinstance(obj, Buchi):
        return bool(inf & obj.targets)
    if isinstance(obj, CoBuchi):
        return inf <= obj.targets
    if isinstance(obj, ExplMuller):
        return inf in obj.family
    if isinstance(obj, Rabin):
        return any(not (inf & e) and (inf & f) for e, f in obj.pairs)
    if isinstance(obj, Streett):
        return all((inf & e) or not (inf & f) for e, f in obj.pairs)
    if isinstance(obj, Parity):
        return min(obj.colors[v] for v in inf) % 2 == 0
    if isinstance(obj, Muller):
        return frozenset(obj.colors[v] for v in inf) in obj.family
    if isinstance(obj, BooleanBuchi):
        assignment = [bool(inf & u) for u in obj.targets]
        return obj.formula.evaluate(assignment)
    if isinstance(obj, GenReach):
        return all(occ & u for u in obj.targets)
    if isinstance(obj, GenBuchi):
        return all(inf & u for u in obj.targets)
    if isinstance(obj, UIReach):
        return any(all(occ & u for u in row) for row in obj.rows)
    if isinstance(obj, UISafe):
        return any(all(occ <= u for u in row) for row in obj.rows)
    if isinstance(obj, UIBuchi):
        return any(all(inf & u for u in row) for row in obj.rows)
    raise GameError(f"cannot evaluate objective kind {obj.kind!r}")


def payoff(lasso: Lasso, objectives, arena: Arena | None = None) -> tuple:
    """Componentwise satisfaction bits for a homogeneous objective list."""
    objectives = list(objectives)
    if not objectives:
        raise GameError("payoff needs at least one objective")
    kinds = {o.kind for o in objectives}
    if len(kinds) > 1:
        raise GameError(f"objectives must be homogeneous, got kinds {sorted(kinds)}")
    return tuple(satisfies(lasso, o, arena) for o in objectives)


# ---------------------------------------------------------------------------
# Objective algebra.


def complement(obj: Objective, n_vertices: int) -> Objective:
    """The objective holding exactly when `obj` does not.

    Supported kinds pair up as reach/safe, buchi/cobuchi and rabin/streett;
    the witness sets flip to their complements where the definitions demand
    it, so that satisfies(l, complement(o)) == 1 - satisfies(l, o) on every
    lasso.
    """
    full = frozenset(range(n_vertices))
    if isinstance(obj, Reach):
        return Safe(full - obj.targets)
    if isinstance(obj, Safe):
        return Reach(full - obj.targets)
    if isinstance(obj, Buchi):
        return CoBuchi(full - obj.targets)
    if isinstance(obj, CoBuchi):
        return Buchi(full - obj.targets)
    if isinstance(obj, Rabin):
        return Streett(obj.pairs)
    if isinstance(obj, Streett):
        return Rabin(obj.pairs)
    raise GameError(f"objective kind {obj.kind!r} has no direct complement")


class VarPool:
    """Canonicalizes target sets: identical sets share one variable."""

    def __init__(self):
        self.index = {}
        self.sets = []

    def var(self, s: frozenset) -> int:
        s = frozenset(s)
        if s not in self.index:
            self.index[s] = len(self.sets)
            self.sets.append(s)
        return self.index[s]


def _parity_formula(colors_present, pool, color_sets):
    """Min color seen i.o. is even: some even color occurs i.o. while no
    smaller color does."""
    disjuncts = []
    for c in sorted(colors_present):
        if c % 2:
            continue
        lits = [Lit(pool.var(color_sets[c]), True)]
        lits += [Lit(pool.var(color_sets[b]), False)
                 for b in sorted(colors_present) if b < c]
        disjuncts.append(lits[0] if len(lits) == 1 else And(tuple(lits)))
    if len(disjuncts) == 1:
        return disjuncts[0]
    return Or(tuple(disjuncts))


def to_boolean_buchi(obj: Objective, n_vertices: int) -> BooleanBuchi:
    """Rewrite a tail objective as a Boolean combination of Buchi conditions.

    Occurrence kinds are rejected: they constrain visited vertices, not
    vertices visited infinitely often.
    """
    pool = VarPool()
    phi = buchi_formula(obj, pool, n_vertices)
    return BooleanBuchi(phi, tuple(pool.sets))


def buchi_formula(obj: Objective, pool: VarPool, n_vertices: int) -> Formula:
    """Formula of the Boolean-Buchi form of `obj` over a shared variable pool."""
    if obj.occurrence_based:
        raise GameError(f"{obj.kind} is occurrence-based, not a tail condition")
    full = frozenset(range(n_vertices))
    if isinstance(obj, Buchi):
        phi = Lit(pool.var(obj.targets), True)
    elif isinstance(obj, CoBuchi):
        phi = Lit(pool.var(full - obj.targets), False)
    elif isinstance(obj, Rabin):
        parts = [And((Lit(pool.var(f), True), Lit(pool.var(e), False)))
                 for e, f in obj.pairs]
        phi = parts[0] if len(parts) == 1 else Or(tuple(parts))
    elif isinstance(obj, Streett):
        parts = [Or((Lit(pool.var(e), True), Lit(pool.var(f), False)))
                 for e, f in obj.pairs]
        phi = parts[0] if len(parts) == 1 else And(tuple(parts))
    elif isinstance(obj, Parity):
        present = sorted(set(obj.colors))
        color_sets = {c: frozenset(v for v in range(n_vertices) if obj.colors[v] == c)
                      for c in present}
        phi = _parity_formula(present, pool, color_sets)
    elif isinstance(obj, Muller):
        present = sorted(set(obj.colors))
        color_sets = {c: frozenset(v for v in range(n_vertices) if obj.colors[v] == c)
                      for c in present}
        disjuncts = []
        for fam in sorted(obj.family, key=sorted):
            # members mentioning a color no vertex carries are unsatisfiable
            if any(c not in color_sets for c in fam):
                continue
            lits = [Lit(pool.var(color_sets[c]), c in fam) for c in present]
            disjuncts.append(lits[0] if len(lits) == 1 else And(tuple(lits)))
        phi = disjuncts[0] if len(disjuncts) == 1 else Or(tuple(disjuncts))
    elif isinstance(obj, GenBuchi):
        lits = [Lit(pool.var(u), True) for u in obj.targets]
        phi = lits[0] if len(lits) == 1 else And(tuple(lits))
    elif isinstance(obj, UIBuchi):
        rows = []
        for row in obj.rows:
            lits = [Lit(pool.var(u), True) for u in row]
            rows.append(lits[0] if len(lits) == 1 else And(tuple(lits)))
        phi = rows[0] if len(rows) == 1 else Or(tuple(rows))
    elif isinstance(obj, BooleanBuchi):
        phi = _remap_formula(obj.formula, {i: pool.var(u) for i, u in enumerate(obj.targets)})
    else:
        raise GameError(f"no Boolean-Buchi form for kind {obj.kind!r}")
    return phi


def _remap_formula(phi: Formula, varmap) -> Formula:
    if isinstance(phi, Lit):
        return Lit(varmap[phi.var], phi.positive)
    if isinstance(phi, And):
        return And(tuple(_remap_formula(c, varmap) for c in phi.children))
    return Or(tuple(_remap_formula(c, varmap) for c in phi.children))


def expl_muller_union_intersection(rows) -> ExplMuller:
    """Union over rows of intersections of explicit Muller objectives."""
    result = set()
    for row in rows:
        if not row:
            raise GameError("empty intersection row in explicit Muller algebra")
        fams = [set(o.family) for o in row]
        inter = set.intersection(*fams)
        result |= inter
    return ExplMuller(frozenset(result))
