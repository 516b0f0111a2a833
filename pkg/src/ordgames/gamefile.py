"""Text formats for games and strategies.

A game file is line oriented; see the grammar in README.md. Vertices are
declared before use, objectives are homogeneous, and a `table` preorder
lists its pairs explicitly (componentwise-inclusion pairs included, since
the relation is validated, not completed).
"""

import re

from .arena import Arena, P1, P2
from .errors import GameError
from .objectives import (
    Buchi, CoBuchi, ExplMuller, Muller, Parity, Rabin, Reach, Safe, Streett,
)
from .preorders import TablePreorder, make_preorder, parse_bits
from .reductions import OrderedGame
from .strategies import MooreStrategy


class GameFileError(GameError):
    def __init__(self, line_no, message):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")


_OBJECTIVE_KINDS = ("reach", "safe", "buchi", "cobuchi", "parity", "rabin",
                    "streett", "explmuller", "muller")


def _tokens(line):
    return line.split()


def _crumbs(text):
    """(line_no, tokens) for every meaningful line."""
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield i, line


def parse_game(text: str):
    """Parse a game file into (OrderedGame, threshold or None, v0 or None)."""
    names = []
    owners = []
    edge_names = []
    preorder_name = None
    table_pairs = []
    objective_specs = []
    threshold_text = None
    from_name = None

    for line_no, line in _crumbs(text):
        toks = _tokens(line)
        key = toks[0]
        if key == "vertex":
            if len(toks) != 3 or toks[2] not in ("p1", "p2"):
                raise GameFileError(line_no, "expected: vertex <name> p1|p2")
            if toks[1] in names:
                raise GameFileError(line_no, f"duplicate vertex {toks[1]!r}")
            names.append(toks[1])
            owners.append(P1 if toks[2] == "p1" else P2)
        elif key == "edge":
            if len(toks) != 3:
                raise GameFileError(line_no, "expected: edge <src> <dst>")
            edge_names.append((line_no, toks[1], toks[2]))
        elif key == "preorder":
            if len(toks) != 2:
                raise GameFileError(line_no, "expected: preorder <name>")
            preorder_name = (line_no, toks[1])
        elif key == "pair":
            if len(toks) != 3:
                raise GameFileError(line_no, "expected: pair <bits> <bits>")
            table_pairs.append((line_no, toks[1], toks[2]))
        elif key == "objective":
            if len(toks) < 2:
                raise GameFileError(line_no, "expected: objective <kind> ...")
            objective_specs.append((line_no, toks[1], line.split(None, 2)[2:]))
        elif key == "threshold":
            if len(toks) != 2:
                raise GameFileError(line_no, "expected: threshold <bits>")
            threshold_text = (line_no, toks[1])
        elif key == "from":
            if len(toks) != 2:
                raise GameFileError(line_no, "expected: from <vertex>")
            from_name = (line_no, toks[1])
        else:
            raise GameFileError(line_no, f"unknown directive {key!r}")

    if not names:
        raise GameFileError(0, "no vertices declared")
    index = {nm: i for i, nm in enumerate(names)}

    def vid(line_no, nm):
        if nm not in index:
            raise GameFileError(line_no, f"unknown vertex name {nm!r}")
        return index[nm]

    edges = [(vid(ln, a), vid(ln, b)) for ln, a, b in edge_names]
    arena = Arena.from_edges(owners, edges, names)
    problem = arena.validate()
    if problem:
        raise GameFileError(0, problem)

    if preorder_name is None:
        raise GameFileError(0, "missing preorder directive")
    objectives = [_parse_objective(ln, kind, rest[0] if rest else "", arena, vid)
                  for ln, kind, rest in objective_specs]
    if not objectives:
        raise GameFileError(0, "no objectives declared")
    n = len(objectives)

    ln, pname = preorder_name
    if pname == "table":
        pairs = []
        for pl, a, b in table_pairs:
            try:
                x, y = parse_bits(a), parse_bits(b)
            except GameError as e:
                raise GameFileError(pl, str(e)) from None
            if len(x) != n or len(y) != n:
                raise GameFileError(pl, f"pair bits must have length {n}")
            pairs.append((x, y))
        try:
            preorder = TablePreorder(n, pairs)
        except GameError as e:
            raise GameFileError(ln, str(e)) from None
    else:
        if table_pairs:
            raise GameFileError(table_pairs[0][0],
                                "pair lines only apply to the table preorder")
        try:
            preorder = make_preorder(pname)
        except GameError as e:
            raise GameFileError(ln, str(e)) from None

    try:
        game = OrderedGame(arena, tuple(objectives), preorder)
    except GameError as e:
        raise GameFileError(0, str(e)) from None

    mu = None
    if threshold_text is not None:
        ln, bits = threshold_text
        try:
            mu = parse_bits(bits)
        except GameError as e:
            raise GameFileError(ln, str(e)) from None
        if len(mu) != n:
            raise GameFileError(ln, f"threshold length {len(mu)}, expected {n}")
    v0 = vid(*from_name) if from_name is not None else None
    return game, mu, v0


def _parse_vertex_list(line_no, text, vid):
    text = text.strip()
    if text in ("", "-"):
        return frozenset()
    return frozenset(vid(line_no, nm) for nm in text.replace(",", " ").split())


def _parse_objective(line_no, kind, rest, arena, vid):
    if kind not in _OBJECTIVE_KINDS:
        raise GameFileError(line_no, f"unknown objective kind {kind!r}")
    rest = rest.strip()
    if kind in ("reach", "safe", "buchi", "cobuchi"):
        targets = _parse_vertex_list(line_no, rest, vid)
        return {"reach": Reach, "safe": Safe, "buchi": Buchi,
                "cobuchi": CoBuchi}[kind](targets)
    if kind == "parity":
        colors = [None] * arena.n
        for tok in rest.split():
            m = re.fullmatch(r"(\S+):(\d+)", tok)
            if not m:
                raise GameFileError(line_no, f"expected <vertex>:<color>, got {tok!r}")
            colors[vid(line_no, m.group(1))] = int(m.group(2))
        if None in colors:
            missing = arena.names[colors.index(None)]
            raise GameFileError(line_no, f"parity coloring misses vertex {missing}")
        return Parity(tuple(colors))
    if kind == "explmuller":
        family = set()
        for grp in re.findall(r"\{([^{}]*)\}", rest):
            family.add(_parse_vertex_list(line_no, grp, vid))
        if re.sub(r"\{[^{}]*\}", "", rest).strip():
            raise GameFileError(line_no, "explmuller takes {..} vertex sets only")
        return ExplMuller(frozenset(family))
    if kind == "muller":
        if "/" not in rest:
            raise GameFileError(line_no, "muller needs: <v>:<c> ... / {c,..} ...")
        left, right = rest.split("/", 1)
        colors = [None] * arena.n
        for tok in left.split():
            m = re.fullmatch(r"(\S+):(\d+)", tok)
            if not m:
                raise GameFileError(line_no, f"expected <vertex>:<color>, got {tok!r}")
            colors[vid(line_no, m.group(1))] = int(m.group(2))
        if None in colors:
            missing = arena.names[colors.index(None)]
            raise GameFileError(line_no, f"muller coloring misses vertex {missing}")
        family = set()
        for grp in re.findall(r"\{([^{}]*)\}", right):
            try:
                family.add(frozenset(int(c) for c in grp.replace(",", " ").split()))
            except ValueError:
                raise GameFileError(line_no, f"bad color set {{{grp}}}") from None
        if re.sub(r"\{[^{}]*\}", "", right).strip():
            raise GameFileError(line_no, "muller family takes {..} color sets only")
        return Muller(tuple(colors), frozenset(family))
    # rabin / streett: (E-list : F-list) per pair
    pairs = []
    for grp in re.findall(r"\(([^()]*)\)", rest):
        if ":" not in grp:
            raise GameFileError(line_no, f"pair needs (E : F), got ({grp})")
        e_text, f_text = grp.split(":", 1)
        pairs.append((_parse_vertex_list(line_no, e_text, vid),
                      _parse_vertex_list(line_no, f_text, vid)))
    if re.sub(r"\([^()]*\)", "", rest).strip():
        raise GameFileError(line_no, f"{kind} takes (E : F) pairs only")
    if not pairs:
        raise GameFileError(line_no, f"{kind} needs at least one pair")
    cls = Rabin if kind == "rabin" else Streett
    return cls(tuple(pairs))


# ---------------------------------------------------------------------------
# Emission (canonical form; parse . emit is the identity up to ordering).


def _fmt_vertex_list(arena, targets):
    if not targets:
        return "-"
    return " ".join(arena.names[v] for v in sorted(targets))


def _emit_objective(arena, obj):
    if obj.kind in ("reach", "safe", "buchi", "cobuchi"):
        return f"objective {obj.kind} {_fmt_vertex_list(arena, obj.targets)}"
    if obj.kind == "parity":
        body = " ".join(f"{arena.names[v]}:{c}" for v, c in enumerate(obj.colors))
        return f"objective parity {body}"
    if obj.kind == "explmuller":
        groups = sorted(obj.family, key=sorted)
        body = " ".join("{" + ",".join(arena.names[v] for v in sorted(g)) + "}"
                        for g in groups)
        return f"objective explmuller {body}".rstrip()
    if obj.kind == "muller":
        left = " ".join(f"{arena.names[v]}:{c}" for v, c in enumerate(obj.colors))
        groups = sorted(obj.family, key=sorted)
        right = " ".join("{" + ",".join(str(c) for c in sorted(g)) + "}"
                         for g in groups)
        return f"objective muller {left} / {right}".rstrip()
    if obj.kind in ("rabin", "streett"):
        body = " ".join(
            f"({','.join(arena.names[v] for v in sorted(e))} : "
            f"{','.join(arena.names[v] for v in sorted(f))})"
            for e, f in obj.pairs)
        return f"objective {obj.kind} {body}"
    raise GameError(f"cannot emit objective kind {obj.kind!r}")


def emit_game(game: OrderedGame, mu=None, v0=None) -> str:
    arena = game.arena
    out = []
    for v in arena.vertices:
        out.append(f"vertex {arena.names[v]} p{arena.owners[v]}")
    for u in arena.vertices:
        for w in arena.succ[u]:
            out.append(f"edge {arena.names[u]} {arena.names[w]}")
    out.append(f"preorder {game.preorder.name}")
    if isinstance(game.preorder, TablePreorder):
        for x, y in sorted(game.preorder.pairs):
            if x != y:
                out.append(f"pair {''.join(map(str, x))} {''.join(map(str, y))}")
    for obj in game.objectives:
        out.append(_emit_objective(arena, obj))
    if mu is not None:
        out.append(f"threshold {''.join(str(b) for b in mu)}")
    if v0 is not None:
        out.append(f"from {arena.names[v0]}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# Strategy files.


def emit_strategy(arena: Arena, strat: MooreStrategy) -> str:
    state_names = {}
    for s in strat.states:
        state_names[s] = f"s{len(state_names)}"
    for (s, _v) in list(strat.update) + list(strat.next_action):
        if s not in state_names:
            state_names[s] = f"s{len(state_names)}"
    out = [f"owner p{strat.owner}", f"initial {state_names[strat.initial]}"]
    for (s, v), t in sorted(strat.update.items(),
                            key=lambda kv: (state_names[kv[0][0]], kv[0][1])):
        if t not in state_names:
            state_names[t] = f"s{len(state_names)}"
        out.append(f"update {state_names[s]} {arena.names[v]} {state_names[t]}")
    for (s, v), w in sorted(strat.next_action.items(),
                            key=lambda kv: (state_names[kv[0][0]], kv[0][1])):
        out.append(f"move {state_names[s]} {arena.names[v]} {arena.names[w]}")
    return "\n".join(out) + "\n"


def parse_strategy(text: str, arena: Arena) -> MooreStrategy:
    owner = None
    initial = None
    update = {}
    next_action = {}
    states = set()
    for line_no, line in _crumbs(text):
        toks = _tokens(line)
        key = toks[0]
        if key == "owner":
            if len(toks) != 2 or toks[1] not in ("p1", "p2"):
                raise GameFileError(line_no, "expected: owner p1|p2")
            owner = P1 if toks[1] == "p1" else P2
        elif key == "initial":
            if len(toks) != 2:
                raise GameFileError(line_no, "expected: initial <state>")
            initial = toks[1]
            states.add(initial)
        elif key == "update":
            if len(toks) != 4:
                raise GameFileError(line_no, "expected: update <state> <vertex> <state>")
            v = arena.index_of(toks[2])
            update[(toks[1], v)] = toks[3]
            states.update((toks[1], toks[3]))
        elif key == "move":
            if len(toks) != 4:
                raise GameFileError(line_no, "expected: move <state> <vertex> <vertex>")
            v = arena.index_of(toks[2])
            next_action[(toks[1], v)] = arena.index_of(toks[3])
            states.add(toks[1])
        else:
            raise GameFileError(line_no, f"unknown directive {key!r}")
    if owner is None or initial is None:
        raise GameFileError(0, "strategy file needs owner and initial lines")
    return MooreStrategy(owner, tuple(sorted(states)), initial, update, next_action)


def load_game(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_game(fh.read())


def load_strategy(path, arena):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_strategy(fh.read(), arena)
