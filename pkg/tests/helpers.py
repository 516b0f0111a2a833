"""Shared brute-force helpers kept independent of the solver code paths."""

import random
from itertools import product

from ordgames.arena import Arena, Lasso
from ordgames.errors import ResourceLimitError
from ordgames.generate import random_game
from ordgames.oracle import OracleBudget, oracle_winner


def enumerate_lassos(arena: Arena, max_prefix: int = 1, max_cycle: int = 4):
    """Every valid lasso with bounded prefix and cycle lengths."""
    n = arena.n
    out = []
    for plen in range(max_prefix + 1):
        for prefix in product(range(n), repeat=plen):
            if any(b not in arena.succ[a] for a, b in zip(prefix, prefix[1:])):
                continue
            for clen in range(1, max_cycle + 1):
                for cycle in product(range(n), repeat=clen):
                    seq = prefix + cycle
                    if any(b not in arena.succ[a] for a, b in zip(seq, seq[1:])):
                        continue
                    if cycle[0] not in arena.succ[cycle[-1]]:
                        continue
                    out.append(Lasso(prefix, cycle))
    return out


def small_arenas(seed: int, count: int, n_vertices=(3, 4), edge_prob=0.35):
    rng = random.Random(seed)
    arenas = []
    while len(arenas) < count:
        nv = rng.choice(n_vertices)
        owners = [rng.choice((1, 2)) for _ in range(nv)]
        edges = set()
        for u in range(nv):
            edges.add((u, rng.randrange(nv)))
            for w in range(nv):
                if rng.random() < edge_prob:
                    edges.add((u, w))
        arenas.append(Arena.from_edges(owners, sorted(edges)))
    return arenas


CORPUS_BUDGET = OracleBudget(max_vertices=5, max_product_states=4000,
                             max_search_nodes=40_000)

_PREORDER_CYCLE = ("lexicographic", "subset", "counting", "maximise", "table")


def corpus(kind: str, count: int, seed_base: int, budget: OracleBudget = None,
           with_oracle: bool = True, preorders=_PREORDER_CYCLE):
    """Seeded random instances of one kind, filtered to the oracle budget.

    Yields (game, mu, v0, oracle_winner_or_None). Instances the oracle
    cannot afford are skipped, so every yielded one is budget-clean.
    """
    budget = budget or CORPUS_BUDGET
    heavy = kind in ("explmuller", "muller", "rabin", "streett")
    produced = 0
    attempt = 0
    while produced < count:
        attempt += 1
        rng = random.Random(seed_base + attempt)
        nv = rng.randint(3, 4 if heavy else 5)
        n = rng.randint(1, 2 if heavy else 3)
        pre = preorders[attempt % len(preorders)]
        game, mu, v0 = random_game(kind, n, nv, seed_base + attempt,
                                   preorder=pre, edge_prob=0.3)
        winner = None
        if with_oracle:
            try:
                winner = oracle_winner(game, mu, v0, budget)
            except ResourceLimitError:
                continue
        produced += 1
        yield game, mu, v0, winner
