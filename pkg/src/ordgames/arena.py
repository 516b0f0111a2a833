"""Game arenas, lassos and induced subarenas.

An arena is a finite directed graph whose vertices are partitioned between
Player 1 and Player 2 and where every vertex has at least one successor.
Plays are only ever materialized as lassos (ultimately periodic plays),
which is enough because pairs of finite-memory strategies always produce
lassos.
"""

from dataclasses import dataclass, field

from .errors import GameError

P1 = 1
P2 = 2


def opponent(player: int) -> int:
    return 3 - player


@dataclass(frozen=True)
class Arena:
    """Finite bipartite-owned directed graph with dense integer vertex ids."""

    owners: tuple[int, ...]
    succ: tuple[tuple[int, ...], ...]
    names: tuple[str, ...]

    @property
    def n(self) -> int:
        return len(self.owners)

    @property
    def vertices(self) -> range:
        return range(len(self.owners))

    def edges(self):
        for u in self.vertices:
            for v in self.succ[u]:
                yield (u, v)

    @classmethod
    def from_edges(cls, owners, edges, names=None):
        """Build an arena from an owner list and an edge list.

        Structural problems (bad owner tags, dangling endpoints, duplicate
        names) raise GameError immediately; deadlocks are left for
        validate() so that broken inputs can still be reported nicely.
        """
        owners = tuple(owners)
        n = len(owners)
        if names is None:
            names = tuple(f"v{i}" for i in range(n))
        else:
            names = tuple(names)
        if len(names) != n:
            raise GameError(f"{len(names)} names for {n} vertices")
        if len(set(names)) != n:
            raise GameError("duplicate vertex names")
        for i, o in enumerate(owners):
            if o not in (P1, P2):
                raise GameError(f"vertex {names[i]}: owner must be 1 or 2, got {o!r}")
        adj = [set() for _ in range(n)]
        for (u, v) in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GameError(f"edge ({u}, {v}) references a missing vertex")
            adj[u].add(v)
        return cls(owners, tuple(tuple(sorted(s)) for s in adj), names)

    def validate(self) -> str | None:
        """Return the first invariant violation as a message, or None."""
        for v in self.vertices:
            if self.owners[v] not in (P1, P2):
                return f"vertex {self.names[v]} has owner {self.owners[v]!r}"
        for v in self.vertices:
            for w in self.succ[v]:
                if not (0 <= w < self.n):
                    return f"edge from {self.names[v]} leaves the vertex set"
        for v in self.vertices:
            if not self.succ[v]:
                return f"deadlock at {self.names[v]}"
        return None

    def subarena(self, keep):
        """Induced subgraph on `keep`, remapped to dense ids.

        Returns (arena, mapping) where mapping[old] = new. Raises GameError
        naming the first kept vertex left without a successor inside `keep`.
        """
        kept = sorted(set(keep))
        for v in kept:
            if not (0 <= v < self.n):
                raise GameError(f"subarena keeps unknown vertex {v}")
        mapping = {old: new for new, old in enumerate(kept)}
        succ = []
        for old in kept:
            inside = tuple(mapping[w] for w in self.succ[old] if w in mapping)
            if not inside:
                raise GameError(
                    f"restriction to {len(kept)} vertices leaves a deadlock "
                    f"at {self.names[old]}"
                )
            succ.append(inside)
        sub = Arena(
            tuple(self.owners[old] for old in kept),
            tuple(succ),
            tuple(self.names[old] for old in kept),
        )
        return sub, mapping

    def predecessors(self):
        """Predecessor lists, recomputed on demand."""
        pred = [[] for _ in self.vertices]
        for u in self.vertices:
            for v in self.succ[u]:
                pred[v].append(u)
        return pred

    def index_of(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise GameError(f"unknown vertex name {name!r}") from None


@dataclass(frozen=True)
class Lasso:
    """Ultimately periodic play prefix . cycle^omega."""

    prefix: tuple[int, ...]
    cycle: tuple[int, ...]

    def __post_init__(self):
        if not self.cycle:
            raise GameError("lasso cycle must be nonempty")

    def occ(self) -> frozenset:
        return frozenset(self.prefix) | frozenset(self.cycle)

    def inf(self) -> frozenset:
        return frozenset(self.cycle)

    def check(self, arena: Arena) -> None:
        """Raise GameError unless every consecutive pair (including the
        prefix-to-cycle seam and the cycle wrap-around) is an arena edge."""
        seq = self.prefix + self.cycle
        for v in seq:
            if not (0 <= v < arena.n):
                raise GameError(f"lasso visits unknown vertex {v}")
        for u, v in zip(seq, seq[1:]):
            if v not in arena.succ[u]:
                raise GameError(
                    f"lasso step {arena.names[u]} -> {arena.names[v]} is not an edge"
                )
        u, v = self.cycle[-1], self.cycle[0]
        if v not in arena.succ[u]:
            raise GameError(
                f"lasso cycle wrap {arena.names[u]} -> {arena.names[v]} is not an edge"
            )

    def render(self, arena: Arena) -> str:
        pre = " ".join(arena.names[v] for v in self.prefix)
        cyc = " ".join(arena.names[v] for v in self.cycle)
        return f"{pre} ({cyc})^w".strip()
