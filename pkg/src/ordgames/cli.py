"""Command line interface.

Verdict lines are machine readable and prefixed with RESULT:. Exit codes:
0 when Player 1 wins (or a strategy verifies, or the command succeeds),
2 when Player 2 wins (or a counterexample exists), 1 on any error.
"""

import argparse
import sys
from pathlib import Path

from .arena import P1
from .errors import GameError, ResourceLimitError
from .gamefile import emit_game, emit_strategy, load_game, load_strategy
from .generate import KINDS, PREORDER_CHOICES, random_game
from .oracle import OracleBudget, oracle_winner
from .preorders import format_bits, parse_bits
from .strategies import verify_threshold_strategy
from .threshold import BUCHI_ROUTES, compute_lex_value, solve_threshold


def _player(p: int) -> str:
    return "P1" if p == P1 else "P2"


def _resolve(game, file_mu, file_v0, args, need_mu=True):
    mu = parse_bits(args.mu) if getattr(args, "mu", None) else file_mu
    if need_mu and mu is None:
        raise GameError("no threshold: pass --mu or add a threshold line")
    if getattr(args, "start", None) is not None:
        v0 = game.arena.index_of(args.start)
    elif file_v0 is not None:
        v0 = file_v0
    else:
        raise GameError("no initial vertex: pass --from or add a from line")
    return mu, v0


def _cmd_solve(args):
    game, file_mu, file_v0 = load_game(args.game)
    mu, v0 = _resolve(game, file_mu, file_v0, args)
    answer = solve_threshold(game, mu, v0, route=args.route)
    print(f"route: {answer.route}")
    print(f"strategy-states: {answer.strategy.size}")
    if args.strategy_out:
        Path(args.strategy_out).write_text(
            emit_strategy(game.arena, answer.strategy), encoding="utf-8")
        print(f"strategy written to {args.strategy_out}")
    print(f"RESULT: {_player(answer.winner)}")
    return 0 if answer.winner == P1 else 2


def _cmd_value(args):
    game, _file_mu, file_v0 = load_game(args.game)
    _, v0 = _resolve(game, None, file_v0, args, need_mu=False)
    result = compute_lex_value(game, v0)
    for probe, answer in result.trace:
        print(f"threshold {format_bits(probe)}: {_player(answer.winner)}"
              f"  [{answer.route}]")
    prefix = args.out or Path(args.game).stem
    p1_path = f"{prefix}.p1.strat"
    p2_path = f"{prefix}.p2.strat"
    Path(p1_path).write_text(emit_strategy(game.arena, result.strat1),
                             encoding="utf-8")
    Path(p2_path).write_text(emit_strategy(game.arena, result.strat2),
                             encoding="utf-8")
    print(f"optimal strategies written to {p1_path} and {p2_path}")
    print(f"RESULT: {format_bits(result.value)}")
    return 0


def _cmd_synthesize(args):
    game, file_mu, file_v0 = load_game(args.game)
    mu, v0 = _resolve(game, file_mu, file_v0, args)
    answer = solve_threshold(game, mu, v0, route=args.route)
    out = args.out or f"{Path(args.game).stem}.{_player(answer.winner).lower()}.strat"
    Path(out).write_text(emit_strategy(game.arena, answer.strategy),
                         encoding="utf-8")
    print(f"route: {answer.route}")
    print(f"strategy for {_player(answer.winner)} "
          f"({answer.strategy.size} states) written to {out}")
    print(f"RESULT: {_player(answer.winner)}")
    return 0 if answer.winner == P1 else 2


def _cmd_verify(args):
    game, file_mu, file_v0 = load_game(args.game)
    mu, v0 = _resolve(game, file_mu, file_v0, args)
    strat = load_strategy(args.strategy, game.arena)
    ok, counterexample = verify_threshold_strategy(game, mu, v0, strat)
    if ok:
        print("RESULT: verified")
        return 0
    print(f"counterexample: {counterexample.render(game.arena)}")
    print("RESULT: counterexample")
    return 2


def _cmd_oracle(args):
    game, file_mu, file_v0 = load_game(args.game)
    mu, v0 = _resolve(game, file_mu, file_v0, args)
    budget = OracleBudget(max_vertices=args.max_vertices,
                          max_product_states=args.max_product_states,
                          max_search_nodes=args.max_search_nodes)
    winner = oracle_winner(game, mu, v0, budget)
    print(f"RESULT: {_player(winner)}")
    return 0 if winner == P1 else 2


def _cmd_gen(args):
    game, mu, v0 = random_game(args.kind, args.n, args.vertices, args.seed,
                               preorder=args.preorder, edge_prob=args.edge_prob)
    text = emit_game(game, mu, v0)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"game written to {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_report(args):
    from .bench import run_scaling, write_csv, write_figure
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    sizes = tuple(int(s) for s in args.sizes.split(","))
    report = run_scaling(sizes=sizes, vertices=args.vertices,
                         instances=args.instances, repeats=args.repeats,
                         seed=args.seed, log=print)
    csv_path = out_dir / "scaling.csv"
    fig_path = out_dir / "scaling.png"
    write_csv(report, csv_path)
    write_figure(report, fig_path)
    for route, slope in sorted(report.exponents.items()):
        print(f"fit {route}: log2 slope {slope:.3f}")
    print(f"report written to {csv_path} and {fig_path}")
    ordered = report.route_ordering_holds()
    print(f"RESULT: {'ordered' if ordered else 'inverted'}")
    return 0 if ordered else 2


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="ordgames",
        description="Solve, evaluate and synthesize strategies for two-player "
                    "games with ordered omega-regular objectives. Payoff "
                    "bit-strings read left to right from objective 1, the "
                    "most significant one lexicographically.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, mu=True):
        p.add_argument("game", help="game file")
        if mu:
            p.add_argument("--mu", help="threshold bit-string (overrides the file)")
        p.add_argument("--from", dest="start", metavar="VERTEX",
                       help="initial vertex name (overrides the file)")

    p = sub.add_parser("solve", help="decide the threshold problem")
    add_common(p)
    p.add_argument("--route", choices=BUCHI_ROUTES,
                   help="override the Buchi reduction route")
    p.add_argument("--strategy-out", help="write the winner's strategy here")
    p.set_defaults(fn=_cmd_solve)

    p = sub.add_parser("value", help="lexicographic value of a vertex")
    add_common(p, mu=False)
    p.add_argument("--out", help="prefix for the two strategy files")
    p.set_defaults(fn=_cmd_value)

    p = sub.add_parser("synthesize", help="solve and write the winning strategy")
    add_common(p)
    p.add_argument("--route", choices=BUCHI_ROUTES)
    p.add_argument("--out", help="strategy file path")
    p.set_defaults(fn=_cmd_synthesize)

    p = sub.add_parser("verify", help="check a strategy file against a threshold")
    p.add_argument("game")
    p.add_argument("strategy", help="strategy file")
    p.add_argument("--mu")
    p.add_argument("--from", dest="start", metavar="VERTEX")
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("oracle", help="brute-force winner (small games only)")
    add_common(p)
    p.add_argument("--max-vertices", type=int, default=8)
    p.add_argument("--max-product-states", type=int, default=6000)
    p.add_argument("--max-search-nodes", type=int, default=200_000)
    p.set_defaults(fn=_cmd_oracle)

    p = sub.add_parser("gen", help="emit a seeded random game file")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--n", type=int, required=True, help="number of objectives")
    p.add_argument("--vertices", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--preorder", default="lexicographic",
                   choices=PREORDER_CHOICES + ("table",))
    p.add_argument("--edge-prob", type=float, default=0.25)
    p.add_argument("--out", help="output path (stdout if omitted)")
    p.set_defaults(fn=_cmd_gen)

    p = sub.add_parser("report", help="route-scaling benchmark (CSV + figure)")
    p.add_argument("--out-dir", default="reports")
    p.add_argument("--sizes", default="2,4,6,8")
    p.add_argument("--vertices", type=int, default=50)
    p.add_argument("--instances", type=int, default=3)
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--seed", type=int, default=2024)
    p.set_defaults(fn=_cmd_report)

    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (GameError, ResourceLimitError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
