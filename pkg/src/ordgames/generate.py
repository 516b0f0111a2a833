"""Seeded random game generation for benchmarks and the equivalence suite."""

import random

from .arena import Arena, P1, P2
from .errors import GameError
from .objectives import (
    Buchi, CoBuchi, ExplMuller, Muller, Parity, Rabin, Reach, Safe, Streett,
)
from .preorders import (
    Counting, Lexicographic, Maximise, Subset, TablePreorder, all_payoffs,
    make_preorder, subset_leq,
)
from .reductions import OrderedGame

KINDS = ("reach", "safe", "buchi", "cobuchi", "parity", "rabin", "streett",
         "explmuller", "muller")
PREORDER_CHOICES = ("counting", "subset", "maximise", "lexicographic")


def random_arena(rng: random.Random, n_vertices: int,
                 edge_prob: float = 0.25) -> Arena:
    """Uniform random edges; sink vertices get a self-loop."""
    owners = [rng.choice((P1, P2)) for _ in range(n_vertices)]
    edges = set()
    for u in range(n_vertices):
        for w in range(n_vertices):
            if rng.random() < edge_prob:
                edges.add((u, w))
    for u in range(n_vertices):
        if not any(e[0] == u for e in edges):
            edges.add((u, u))
    return Arena.from_edges(owners, sorted(edges))


def _random_set(rng, n_vertices, p=0.45):
    return frozenset(v for v in range(n_vertices) if rng.random() < p)


def random_objective(rng: random.Random, kind: str, arena: Arena,
                     colors_max: int = 3, pairs_max: int = 2):
    nv = arena.n
    if kind == "reach":
        return Reach(_random_set(rng, nv))
    if kind == "safe":
        return Safe(_random_set(rng, nv))
    if kind == "buchi":
        return Buchi(_random_set(rng, nv))
    if kind == "cobuchi":
        return CoBuchi(_random_set(rng, nv))
    if kind == "parity":
        d = rng.randint(2, max(2, colors_max))
        return Parity(tuple(rng.randrange(d) for _ in range(nv)))
    if kind in ("rabin", "streett"):
        pairs = tuple((_random_set(rng, nv), _random_set(rng, nv))
                      for _ in range(rng.randint(1, pairs_max)))
        return Rabin(pairs) if kind == "rabin" else Streett(pairs)
    if kind == "explmuller":
        members = {frozenset(s) for s in
                   (_random_set(rng, nv) for _ in range(rng.randint(1, 3))) if s}
        return ExplMuller(frozenset(members))
    if kind == "muller":
        d = rng.randint(2, max(2, colors_max))
        colors = tuple(rng.randrange(d) for _ in range(nv))
        palette = sorted(set(colors))
        members = set()
        for _ in range(rng.randint(1, 3)):
            m = frozenset(c for c in palette if rng.random() < 0.5)
            if m:
                members.add(m)
        return Muller(colors, frozenset(members))
    raise GameError(f"unknown objective kind {kind!r}")


def random_monotonic_table(rng: random.Random, n: int) -> TablePreorder:
    """Transitive closure of the inclusion order plus random extra pairs."""
    vecs = list(all_payoffs(n))
    rel = {(x, y) for x in vecs for y in vecs if subset_leq(x, y)}
    extra = rng.randint(0, 2 ** n)
    for _ in range(extra):
        rel.add((rng.choice(vecs), rng.choice(vecs)))
    changed = True
    while changed:
        changed = False
        for (a, b) in list(rel):
            for c in vecs:
                if (b, c) in rel and (a, c) not in rel:
                    rel.add((a, c))
                    changed = True
    return TablePreorder(n, rel)


def random_game(kind: str, n: int, n_vertices: int, seed: int,
                preorder: str = "lexicographic", edge_prob: float = 0.25,
                colors_max: int = 3, pairs_max: int = 2):
    """Reproducible random ordered game plus a random threshold and start."""
    if kind not in KINDS:
        raise GameError(f"unknown objective kind {kind!r}")
    rng = random.Random(seed)
    arena = random_arena(rng, n_vertices, edge_prob)
    objectives = tuple(random_objective(rng, kind, arena, colors_max, pairs_max)
                       for _ in range(n))
    if preorder == "table":
        pre = random_monotonic_table(rng, n)
    else:
        pre = make_preorder(preorder)
    game = OrderedGame(arena, objectives, pre)
    mu = tuple(rng.randint(0, 1) for _ in range(n))
    if not any(mu):
        mu = (0,) * (n - 1) + (1,)
    v0 = rng.randrange(n_vertices)
    return game, mu, v0
