"""Minimax regret over mixed strategies.

Regret of a mixed strategy is measured against pure opponent vertex
profiles (sufficient for the full space, and definitionally right for
V-polytopes); the best own payoff is taken inside the player's own
current polytope.  The min is an exact LP; the argmin set is carved out
of the polytope by halfspace cuts and vertex pruning.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .core import (
    DeletionTrace,
    DimensionCapError,
    Game,
    MembershipError,
    MixedStrategy,
    Polytope,
    ProfileSpace,
    TraceRound,
    expected_utility,
    mixed_space,
)
from .lp import OPTIMAL, LinearProgram, Constraint
from .polytope import canonical_polytope, cut_halfspace, polytope_contains
from .rational import ONE, ZERO, Rat, rat, rat_json

DEFAULT_CAP = 12
DEFAULT_ROUND_LIMIT = 64


def _require_mixed(space: ProfileSpace):
    if space.mode != "mixed":
        raise MembershipError("mixed-mode profile space required")


def _opponent_vertex_profiles(space: ProfileSpace, player: int):
    others = [p.vertices for j, p in enumerate(space.polytopes) if j != player]
    return list(product(*others))


def _assemble(player: int, own: MixedStrategy, opp) -> list[MixedStrategy]:
    profile = list(opp)
    profile.insert(player, own)
    return profile


def _pure_payoff_coeffs(game: Game, player: int, opp) -> list[Rat]:
    """Expected payoff of each own pure action against an opponent profile."""
    count = len(game.actions[player])
    coeffs = []
    for a in range(count):
        own = MixedStrategy.pure(player, a, count)
        coeffs.append(expected_utility(game, _assemble(player, own, opp))[player])
    return coeffs


def _best_within(coeffs: Sequence[Rat], vertices: Sequence[MixedStrategy]) -> Rat:
    # Linear objective over a V-polytope: the optimum sits at a vertex.
    best = None
    for v in vertices:
        val = sum((c * w for c, w in zip(coeffs, v.weights)), ZERO)
        if best is None or val > best:
            best = val
    return best


def mixed_regret(game: Game, space: ProfileSpace, player: int, sigma: MixedStrategy) -> Rat:
    """Worst-case regret of sigma over the opponents' vertex profiles."""
    _require_mixed(space)
    if not polytope_contains(space.polytopes[player], sigma):
        raise MembershipError(f"strategy is outside player {player}'s polytope")
    own_vertices = space.polytopes[player].vertices
    worst = ZERO
    for opp in _opponent_vertex_profiles(space, player):
        coeffs = _pure_payoff_coeffs(game, player, opp)
        best = _best_within(coeffs, own_vertices)
        mine = sum((c * w for c, w in zip(coeffs, sigma.weights)), ZERO)
        r = best - mine
        if r > worst:
            worst = r
    return worst


def regret_given_profile(
    game: Game, player: int, sigma: MixedStrategy, opp: Sequence[MixedStrategy]
) -> Rat:
    """Regret of sigma against one fixed opponent profile, benchmarked on
    the player's full strategy simplex."""
    coeffs = _pure_payoff_coeffs(game, player, list(opp))
    best = max(coeffs)
    mine = sum((c * w for c, w in zip(coeffs, sigma.weights)), ZERO)
    return best - mine


def min_regret_program(
    game: Game, space: ProfileSpace, player: int
) -> tuple[LinearProgram, tuple[MixedStrategy, ...]]:
    """The LP  min t  s.t. per opponent vertex profile, regret <= t, with
    the strategy expressed barycentrically over the player's vertices."""
    _require_mixed(space)
    vertices = space.polytopes[player].vertices
    m = len(vertices)
    t_var = m
    constraints = [Constraint({j: ONE for j in range(m)}, "==", ONE)]
    for opp in _opponent_vertex_profiles(space, player):
        coeffs = _pure_payoff_coeffs(game, player, opp)
        best = _best_within(coeffs, vertices)
        row = {}
        for j, v in enumerate(vertices):
            row[j] = sum((c * w for c, w in zip(coeffs, v.weights)), ZERO)
        row[t_var] = ONE
        constraints.append(Constraint(row, ">=", best))
    objective = tuple([ZERO] * m + [ONE])
    return (
        LinearProgram(n_vars=m + 1, objective=objective, constraints=tuple(constraints)),
        vertices,
    )


def min_mixed_regret(
    game: Game, space: ProfileSpace, player: int
) -> tuple[Rat, MixedStrategy]:
    """Exact minimax regret over the player's polytope, with one witness."""
    lp, vertices = min_regret_program(game, space, player)
    res = lp.solve()
    if res.status != OPTIMAL:
        raise MembershipError(f"regret LP unexpectedly {res.status}")
    lam = res.x[: len(vertices)]
    dim = len(vertices[0].weights)
    weights = [ZERO] * dim
    for coef, v in zip(lam, vertices):
        if coef != ZERO:
            for d in range(dim):
                weights[d] += coef * v.weights[d]
    witness = MixedStrategy(player, tuple(weights))
    return res.value, witness


def argmin_polytope(
    game: Game, space: ProfileSpace, player: int, cap: int = DEFAULT_CAP
) -> Polytope:
    """The set of regret minimizers, as a vertex-listed polytope.

    Carves the player's polytope with one halfspace per opponent vertex
    profile (regret against it <= the optimum) and prunes to extreme
    points after each cut.  Exponential in the worst case, hence the
    dimension cap; above it, use min_mixed_regret alone.
    """
    _require_mixed(space)
    dim = len(game.actions[player])
    if dim > cap:
        raise DimensionCapError(
            f"player {player} has {dim} actions, above the cap {cap}; "
            "min_mixed_regret still works at any dimension"
        )
    best_value, _ = min_mixed_regret(game, space, player)
    vectors = [v.weights for v in space.polytopes[player].vertices]
    for opp in _opponent_vertex_profiles(space, player):
        coeffs = _pure_payoff_coeffs(game, player, opp)
        best = _best_within(coeffs, space.polytopes[player].vertices)
        # best - sum(c*sigma) <= t*   <=>   sum(-c*sigma) <= t* - best
        cut = cut_halfspace(vectors, [-c for c in coeffs], best_value - best)
        vectors = [v.weights for v in canonical_polytope(player, cut).vertices]
    return canonical_polytope(player, vectors)


@dataclass(frozen=True)
class MixedRegretReport:
    """Per-player summary of one mixed deletion round."""

    player: int
    minregret: Rat
    witness: MixedStrategy
    argmin_vertices: int

    def to_json(self, game: Game):
        return {
            "player": self.player,
            "minregret": rat_json(self.minregret),
            "witness": self.witness.to_json(),
            "argmin_vertices": self.argmin_vertices,
        }


def rm_mixed_iterate(
    game: Game,
    cap: int = DEFAULT_CAP,
    round_limit: int = DEFAULT_ROUND_LIMIT,
    space0: ProfileSpace | None = None,
) -> DeletionTrace:
    """Iterate per-player argmin extraction until the vertex sets stabilize.

    A round-limit overrun is reported as a non-converged trace, never
    silently truncated.
    """
    space = space0 if space0 is not None else mixed_space(game)
    _require_mixed(space)
    rounds = []
    for _ in range(round_limit):
        new_polys = []
        reports = []
        for i in range(game.n):
            poly = argmin_polytope(game, space, i, cap=cap)
            value, witness = min_mixed_regret(game, space, i)
            reports.append(
                MixedRegretReport(
                    player=i,
                    minregret=value,
                    witness=witness,
                    argmin_vertices=len(poly.vertices),
                )
            )
            new_polys.append(poly)
        rounds.append(TraceRound(space=space, reports=tuple(reports)))
        new_space = mixed_space(game, new_polys)
        if new_space == space:
            return DeletionTrace(
                operator="RM-mixed",
                rounds=tuple(rounds),
                fixed_point=space,
                converged=True,
            )
        space = new_space
    return DeletionTrace(
        operator="RM-mixed", rounds=tuple(rounds), fixed_point=space, converged=False
    )


def regret_prime(
    game: Game, player: int, sigma: MixedStrategy, opp: Sequence[MixedStrategy]
) -> Rat:
    """Expected pure-action regret under the product distribution, with
    regrets taken relative to the player's full action set."""
    opp = list(opp)
    if len(opp) != game.n - 1:
        raise MembershipError(f"need {game.n - 1} opponent strategies")
    own_count = len(game.actions[player])
    if len(sigma.weights) != own_count:
        raise MembershipError("weight vector has the wrong length")
    opp_players = [j for j in range(game.n) if j != player]
    for s, j in zip(opp, opp_players):
        if s.owner != j:
            raise MembershipError(f"expected a strategy for player {j}, got {s.owner}")
    supports = [s.support() for s in opp]
    total = ZERO
    for pure_opp in product(*supports):
        prob = ONE
        for s, a in zip(opp, pure_opp):
            prob *= s.weights[a]
        profile = list(pure_opp)
        profile.insert(player, 0)
        column = []
        for a in range(own_count):
            profile[player] = a
            column.append(game.payoff(tuple(profile))[player])
        best = max(column)
        for a in range(own_count):
            w = sigma.weights[a]
            if w != ZERO:
                total += w * prob * (best - column[a])
    return total


def _grid_compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _grid_compositions(total - first, parts - 1):
            yield (first,) + rest


def grid_oracle_min_regret(game: Game, player: int, resolution: int) -> Rat:
    """Brute-force minimax regret over the denominator-`resolution` grid of
    the player's full simplex, against the full opponent space.

    Always an upper bound on the LP optimum; the bound tightens as the
    resolution doubles (coarser grids embed in finer ones).
    """
    dim = len(game.actions[player])
    if dim > 4:
        raise DimensionCapError(f"grid oracle supports at most 4 actions, got {dim}")
    if resolution < 1:
        raise MembershipError("resolution must be positive")
    space = mixed_space(game)
    opp_profiles = _opponent_vertex_profiles(space, player)
    columns = []
    for opp in opp_profiles:
        coeffs = _pure_payoff_coeffs(game, player, opp)
        columns.append((max(coeffs), coeffs))
    best_seen = None
    for raw in _grid_compositions(resolution, dim):
        weights = [rat(k, resolution) for k in raw]
        worst = ZERO
        for best, coeffs in columns:
            mine = ZERO
            for w, c in zip(weights, coeffs):
                if w != ZERO:
                    mine += w * c
            r = best - mine
            if r > worst:
                worst = r
        if best_seen is None or worst < best_seen:
            best_seen = worst
    return best_seen


def default_cap() -> int:
    """The mixed-mode dimension cap, overridable via REGRETLAB_CAP."""
    raw = os.environ.get("REGRETLAB_CAP")
    if raw is None:
        return DEFAULT_CAP
    try:
        value = int(raw)
    except ValueError:
        raise MembershipError(f"REGRETLAB_CAP must be an integer, got {raw!r}") from None
    if value < 1:
        raise MembershipError("REGRETLAB_CAP must be positive")
    return value
