"""Scaling report for the two Buchi threshold routes.

Fixed arena size, growing objective count: the conjunctive route solves a
generalized Buchi game with at most n target sets, while the fallback
route distributes the union-of-intersections objective into one target
set per choice tuple, which grows exponentially with n. The report writes
the raw timings as CSV and a log-scale figure next to it, and fits the
growth exponent of each route.
"""

import csv
import math
import statistics
import time
from dataclasses import dataclass

from .generate import random_arena, random_objective
from .preorders import Lexicographic
from .reductions import OrderedGame
from .threshold import solve_threshold

import random

ROUTES = ("lex-cnf", "ui-buchi")


def _steep_threshold(n: int) -> tuple:
    """Threshold whose antichain maximizes the distribution blowup."""
    half = n // 2
    mu = [1] * half + [0] * (n - half)
    mu[-1] = 1
    return tuple(mu)


@dataclass(eq=False)
class ScalingReport:
    rows: list          # (n, route, instance, seconds)
    medians: dict       # (n, route) -> seconds
    exponents: dict     # route -> fitted log2 slope of median time vs n

    def route_ordering_holds(self) -> bool:
        return self.exponents["lex-cnf"] < self.exponents["ui-buchi"]


def run_scaling(sizes=(2, 4, 6, 8), vertices: int = 50, instances: int = 3,
                repeats: int = 3, seed: int = 2024, log=None) -> ScalingReport:
    rows = []
    medians = {}
    for n in sizes:
        rng = random.Random(seed * 1000 + n)
        games = []
        for _ in range(instances):
            arena = random_arena(rng, vertices, edge_prob=0.08)
            objs = tuple(random_objective(rng, "buchi", arena) for _ in range(n))
            games.append(OrderedGame(arena, objs, Lexicographic()))
        mu = _steep_threshold(n)
        for route in ROUTES:
            per_instance = []
            for idx, game in enumerate(games):
                samples = []
                for _ in range(repeats):
                    t0 = time.perf_counter()
                    solve_threshold(game, mu, 0, route=route)
                    samples.append(time.perf_counter() - t0)
                best = min(samples)
                per_instance.append(best)
                rows.append((n, route, idx, best))
            medians[(n, route)] = statistics.median(per_instance)
            if log:
                log(f"n={n} route={route}: median {medians[(n, route)]:.4f}s")
    exponents = {}
    for route in ROUTES:
        xs = list(sizes)
        ys = [math.log2(max(medians[(n, route)], 1e-9)) for n in xs]
        exponents[route] = _slope(xs, ys)
    return ScalingReport(rows, medians, exponents)


def _slope(xs, ys):
    k = len(xs)
    mx = sum(xs) / k
    my = sum(ys) / k
    num = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    den = sum((x - mx) ** 2 for x in xs)
    return num / den


def write_csv(report: ScalingReport, path):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n", "route", "instance", "seconds"])
        for n, route, idx, seconds in report.rows:
            writer.writerow([n, route, idx, f"{seconds:.6f}"])
        for route, slope in sorted(report.exponents.items()):
            writer.writerow(["fit", route, "log2-slope", f"{slope:.4f}"])


def write_figure(report: ScalingReport, path):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    sizes = sorted({n for n, _, _, _ in report.rows})
    fig, ax = plt.subplots(figsize=(6, 4))
    styles = {"lex-cnf": "o-", "ui-buchi": "s--"}
    for route in ROUTES:
        ys = [report.medians[(n, route)] for n in sizes]
        label = f"{route} (log2 slope {report.exponents[route]:.2f})"
        ax.semilogy(sizes, ys, styles[route], label=label)
    ax.set_xlabel("number of objectives n")
    ax.set_ylabel("median solve time [s]")
    ax.set_title("Lexicographic Buchi threshold: route scaling")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
