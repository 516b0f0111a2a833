"""Monotonic preorders on payoff vectors and threshold antichains.

Payoff vectors are tuples of 0/1 bits with index 0 the most significant
position (the paper-style numeral 010 parses to (0, 1, 0)). The key tool
is minimal_thresholds: the antichain of componentwise-minimal payoffs in
the upward closure of a threshold, which turns a threshold query into a
union-of-intersections objective.
"""

from itertools import product

from .errors import GameError

GENERIC_ENUM_MAX_N = 16


# ---------------------------------------------------------------------------
# Bit-vector helpers.


def parse_bits(text: str) -> tuple:
    if not text or any(c not in "01" for c in text):
        raise GameError(f"bad payoff bit-string {text!r}")
    return tuple(int(c) for c in text)


def format_bits(bits) -> str:
    return "".join(str(b) for b in bits)


def complement_bits(bits) -> tuple:
    return tuple(1 - b for b in bits)


def last1(bits) -> int:
    """1-based index of the last set bit."""
    for i in range(len(bits) - 1, -1, -1):
        if bits[i]:
            return i + 1
    raise GameError("last1 is undefined on the all-zero vector")


def lex_successor(bits) -> tuple:
    if all(bits):
        raise GameError("the all-one vector has no successor")
    n = len(bits)
    value = int(format_bits(bits), 2) + 1
    return tuple(int(c) for c in format(value, f"0{n}b"))


def lex_predecessor(bits) -> tuple:
    if not any(bits):
        raise GameError("the all-zero vector has no predecessor")
    n = len(bits)
    value = int(format_bits(bits), 2) - 1
    return tuple(int(c) for c in format(value, f"0{n}b"))


def ones(bits) -> frozenset:
    """0-based index set of the satisfied objectives."""
    return frozenset(i for i, b in enumerate(bits) if b)


def subset_leq(x, y) -> bool:
    return all(xb <= yb for xb, yb in zip(x, y))


def all_payoffs(n: int):
    return (tuple(bits) for bits in product((0, 1), repeat=n))


def is_antichain(vectors) -> bool:
    vecs = list(vectors)
    for i, x in enumerate(vecs):
        for y in vecs[i + 1:]:
            if subset_leq(x, y) or subset_leq(y, x):
                return False
    return True


# ---------------------------------------------------------------------------
# Preorder kinds.


class Preorder:
    name = "abstract"

    def leq(self, x, y) -> bool:
        if len(x) != len(y):
            raise GameError("payoff length mismatch")
        return self._leq(x, y)

    def _leq(self, x, y):
        raise NotImplementedError

    def __str__(self):
        return self.name


class Counting(Preorder):
    name = "counting"

    def _leq(self, x, y):
        return sum(x) <= sum(y)


class Subset(Preorder):
    name = "subset"

    def _leq(self, x, y):
        return subset_leq(x, y)


class Maximise(Preorder):
    name = "maximise"

    def _leq(self, x, y):
        # highest 1-based index of a satisfied objective, 0 when none
        mx = max((i + 1 for i, b in enumerate(x) if b), default=0)
        my = max((i + 1 for i, b in enumerate(y) if b), default=0)
        return mx <= my


class Lexicographic(Preorder):
    name = "lexicographic"

    def _leq(self, x, y):
        return tuple(x) <= tuple(y)


class TablePreorder(Preorder):
    """Explicit relation over {0,1}^n, validated eagerly.

    The relation is the given pair set plus reflexivity; it must already be
    transitive and contain every componentwise-inclusion pair, otherwise
    the threshold reduction downstream would be unsound.
    """

    name = "table"

    def __init__(self, n: int, pairs):
        if n > 10:
            raise GameError(f"table preorders support n <= 10, got {n}")
        self.n = n
        rel = {(tuple(x), tuple(y)) for x, y in pairs}
        for x, y in rel:
            if len(x) != n or len(y) != n:
                raise GameError("table pair length does not match n")
        for bits in all_payoffs(n):
            rel.add((bits, bits))
        self.pairs = frozenset(rel)
        self._validate()

    def _validate(self):
        succ = {}
        for x, y in self.pairs:
            succ.setdefault(x, set()).add(y)
        for x, ys in succ.items():
            for y in list(ys):
                missing = succ.get(y, set()) - ys
                if missing:
                    z = next(iter(missing))
                    raise GameError(
                        f"table preorder is not transitive: "
                        f"{format_bits(x)} <= {format_bits(y)} <= {format_bits(z)} "
                        f"but the first/last pair is missing"
                    )
        for x in all_payoffs(self.n):
            for y in all_payoffs(self.n):
                if subset_leq(x, y) and (x, y) not in self.pairs:
                    raise GameError(
                        f"table preorder is not monotonic: "
                        f"{format_bits(x)} included in {format_bits(y)} "
                        f"but the pair is missing"
                    )

    def _leq(self, x, y):
        return (tuple(x), tuple(y)) in self.pairs


BUILTIN_PREORDERS = {
    "counting": Counting,
    "subset": Subset,
    "maximise": Maximise,
    "lexicographic": Lexicographic,
}


def make_preorder(name: str) -> Preorder:
    try:
        return BUILTIN_PREORDERS[name]()
    except KeyError:
        raise GameError(f"unknown preorder {name!r}") from None


# ---------------------------------------------------------------------------
# Threshold antichains.


def lex_minimal_thresholds(mu) -> frozenset:
    """Closed form for the lexicographic preorder.

    The minimal payoffs above mu are mu itself plus, for every position j
    before the last set bit where mu is 0, the vector that copies mu up to
    j-1, sets bit j and clears the rest.
    """
    mu = tuple(mu)
    n = len(mu)
    if not any(mu):
        return frozenset({mu})
    out = {mu}
    stop = last1(mu)
    for j in range(1, stop):
        if mu[j - 1] == 0:
            out.add(mu[:j - 1] + (1,) + (0,) * (n - j))
    return frozenset(out)


def _minimal_elements(upper):
    """Componentwise-minimal vectors, smallest popcount first."""
    minimal = []
    for v in sorted(upper, key=lambda b: (sum(b), b)):
        if not any(subset_leq(m, v) for m in minimal):
            minimal.append(v)
    return frozenset(minimal)


def minimal_thresholds(pre: Preorder, mu) -> frozenset:
    """Antichain of minimal payoffs (w.r.t. inclusion) weakly above mu."""
    mu = tuple(mu)
    n = len(mu)
    if isinstance(pre, Lexicographic):
        return lex_minimal_thresholds(mu)
    if isinstance(pre, Subset):
        return frozenset({mu})
    if n > GENERIC_ENUM_MAX_N:
        raise GameError(
            f"generic threshold antichain needs enumeration of 2^{n} payoffs, "
            f"bound is n <= {GENERIC_ENUM_MAX_N}"
        )
    upper = [v for v in all_payoffs(n) if pre.leq(mu, v)]
    return _minimal_elements(upper)


def lex_cnf_thresholds(mu) -> frozenset:
    """Clause antichain of the conjunctive form of a lexicographic threshold.

    Ensuring a payoff >= mu is the same as satisfying, for every vector in
    this antichain, at least one objective among its set bits. The all-zero
    threshold yields no clauses (every play qualifies).
    """
    mu = tuple(mu)
    if not any(mu):
        return frozenset()
    # mu has a set bit, so its complement is below 1^n and has a successor;
    # mu = 1^n lands on the single clause over all objectives via M(0^n + 1).
    return lex_minimal_thresholds(lex_successor(complement_bits(mu)))


def distribute_to_cnf(index_rows, cap: int | None = None, subsume: bool = True):
    """Conjunctive form of a union of intersections over index sets.

    Takes the disjuncts as index sets and returns the clauses of the
    equivalent intersection of unions, built by distribution. With
    `subsume` the clauses are reduced to the inclusion-minimal ones, which
    is the unique irredundant conjunctive form of the monotone condition.
    """
    from itertools import product as iproduct

    from .errors import ResourceLimitError

    rows = [sorted(r) for r in index_rows]
    if any(not r for r in rows):
        return frozenset()  # a disjunct over nothing is always true
    total = 1
    for r in rows:
        total *= len(r)
        if cap is not None and total > cap:
            raise ResourceLimitError("CNF distribution choice tuples", total, cap)
    clauses = {frozenset(choice) for choice in iproduct(*rows)}
    if not subsume:
        return frozenset(clauses)
    minimal = []
    for c in sorted(clauses, key=lambda s: (len(s), sorted(s))):
        if not any(m <= c for m in minimal):
            minimal.append(c)
    return frozenset(minimal)
