"""Shared test helpers: independent brute-force oracles and random games.

The oracles here deliberately avoid the package's solver kernels; they
recompute everything from Game.payoff / Game.utility alone so that
agreement is a real cross-check.
"""

from __future__ import annotations

import random
from itertools import product

from regretlab.core import Game, pure_space
from regretlab.rational import rat


def random_game(rng: random.Random, max_actions: int = 5, lo: int = -9, hi: int = 9) -> Game:
    shape = (rng.randint(2, max_actions), rng.randint(2, max_actions))
    labels = tuple(
        tuple(f"{'rc'[i]}{j}" for j in range(shape[i])) for i in range(2)
    )
    rows = tuple(
        (rat(rng.randint(lo, hi)), rat(rng.randint(lo, hi)))
        for _ in range(shape[0] * shape[1])
    )
    return Game(labels, rows)


def brute_force_regret_table(game: Game, sets=None):
    """Triple-loop max regrets per player, straight from payoff lookups."""
    if sets is None:
        sets = [list(range(len(a))) for a in game.actions]
    tables = []
    for i in range(game.n):
        own = sets[i]
        others = [sets[j] for j in range(game.n) if j != i]
        worst = {}
        for a in own:
            worst[a] = None
            for opp in product(*others):
                best = None
                for b in own:
                    prof = opp[:i] + (b,) + opp[i:]
                    v = game.payoff(prof)[i]
                    if best is None or v > best:
                        best = v
                r = best - game.payoff(opp[:i] + (a,) + opp[i:])[i]
                if worst[a] is None or r > worst[a]:
                    worst[a] = r
        tables.append(worst)
    return tables


def brute_force_rm_step(game: Game, sets=None):
    tables = brute_force_regret_table(game, sets)
    out = []
    for worst in tables:
        m = min(worst.values())
        out.append(sorted(a for a, r in worst.items() if r == m))
    return out


def brute_force_rm_fixed_point(game: Game):
    sets = [list(range(len(a))) for a in game.actions]
    while True:
        new = brute_force_rm_step(game, sets)
        if new == sets:
            return pure_space(game, sets)
        sets = new
