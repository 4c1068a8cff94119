"""Pure-strategy regret and the iterated minimax-regret deletion operator.

Opponent sets are always enumerated as a full cross product; ties keep
every minimizer; iteration terminates on set equality of consecutive
rounds (finite, strictly shrinking sets guarantee termination).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .core import (
    DeletionTrace,
    Game,
    MembershipError,
    ProfileSpace,
    TraceRound,
    pure_space,
)
from .rational import Rat, rat_json


@dataclass(frozen=True)
class RegretReport:
    """Max regret of each surviving strategy of one player, plus the argmin set."""

    player: int
    regrets: tuple[tuple[int, Rat], ...]
    minregret: Rat
    argmin: tuple[int, ...]

    def regret_of(self, action: int) -> Rat:
        for a, r in self.regrets:
            if a == action:
                return r
        raise MembershipError(f"action {action} not in player {self.player}'s set")

    def to_json(self, game: Game):
        labels = game.actions[self.player]
        return {
            "player": self.player,
            "regrets": {labels[a]: rat_json(r) for a, r in self.regrets},
            "minregret": rat_json(self.minregret),
            "argmin": [labels[a] for a in self.argmin],
        }


def _require_pure(space: ProfileSpace):
    if space.mode != "pure":
        raise MembershipError("pure-mode profile space required")


def _opponent_profiles(space: ProfileSpace, player: int):
    others = [s for j, s in enumerate(space.pure_sets) if j != player]
    return product(*others)


def _full_profile(player: int, own: int, opp: tuple[int, ...]) -> tuple[int, ...]:
    return opp[:player] + (own,) + opp[player:]


def conditional_regret(
    game: Game, space: ProfileSpace, player: int, action: int, opp: tuple[int, ...]
) -> Rat:
    """Best payoff available inside the player's own set against opp, minus
    the payoff of `action` against opp.  Always >= 0."""
    _require_pure(space)
    own_set = space.pure_sets[player]
    if action not in own_set:
        raise MembershipError(f"action {action} not in player {player}'s set")
    opp_sets = [s for j, s in enumerate(space.pure_sets) if j != player]
    if len(opp) != len(opp_sets) or any(a not in s for a, s in zip(opp, opp_sets)):
        raise MembershipError(f"{opp} is not an opponent profile of the space")
    best = max(game.payoff(_full_profile(player, b, opp))[player] for b in own_set)
    return best - game.payoff(_full_profile(player, action, opp))[player]


def _regret_row(game: Game, own_set, player: int, opp_profiles) -> dict[int, Rat]:
    """Max regret per own action against a list of opponent profiles."""
    worst: dict[int, Rat] = {}
    if game.n == 2:
        # Direct tensor indexing; this loop dominates the large sweeps.
        rows = game.payoffs
        width = game.shape[1]
        for opp in opp_profiles:
            o = opp[0]
            if player == 0:
                col = [(b, rows[b * width + o][0]) for b in own_set]
            else:
                base = o * width
                col = [(b, rows[base + b][1]) for b in own_set]
            best = max(v for _, v in col)
            for b, v in col:
                r = best - v
                if b not in worst or r > worst[b]:
                    worst[b] = r
        return worst
    for opp in opp_profiles:
        payoffs = {b: game.payoff(_full_profile(player, b, opp))[player] for b in own_set}
        best = max(payoffs.values())
        for b in own_set:
            r = best - payoffs[b]
            if b not in worst or r > worst[b]:
                worst[b] = r
    return worst


def max_regret(game: Game, space: ProfileSpace, player: int, action: int) -> Rat:
    """Worst-case regret of `action` over the full opponent cross product."""
    _require_pure(space)
    if action not in space.pure_sets[player]:
        raise MembershipError(f"action {action} not in player {player}'s set")
    row = _regret_row(
        game, space.pure_sets[player], player, _opponent_profiles(space, player)
    )
    return row[action]


def regret_report(game: Game, space: ProfileSpace, player: int) -> RegretReport:
    _require_pure(space)
    own_set = space.pure_sets[player]
    row = _regret_row(game, own_set, player, _opponent_profiles(space, player))
    minregret = min(row.values())
    argmin = tuple(a for a in own_set if row[a] == minregret)
    return RegretReport(
        player=player,
        regrets=tuple((a, row[a]) for a in own_set),
        minregret=minregret,
        argmin=argmin,
    )


def rm_step(game: Game, space: ProfileSpace) -> tuple[ProfileSpace, tuple[RegretReport, ...]]:
    """One deletion round: restrict every player to their minimax-regret set."""
    _require_pure(space)
    reports = tuple(regret_report(game, space, i) for i in range(game.n))
    new_space = pure_space(game, [rep.argmin for rep in reports])
    return new_space, reports


def rm_iterate(game: Game, space0: ProfileSpace | None = None) -> DeletionTrace:
    """Iterate rm_step to its fixed point, recording every round."""
    space = space0 if space0 is not None else pure_space(game)
    _require_pure(space)
    rounds = []
    while True:
        new_space, reports = rm_step(game, space)
        rounds.append(TraceRound(space=space, reports=reports))
        if new_space == space:
            return DeletionTrace(
                operator="RM", rounds=tuple(rounds), fixed_point=space, converged=True
            )
        space = new_space


def dominant_actions(game: Game, player: int) -> tuple[int, ...]:
    """Actions weakly best against every full opponent profile; may be empty."""
    space = pure_space(game)
    own = space.pure_sets[player]
    candidates = set(own)
    for opp in _opponent_profiles(space, player):
        payoffs = {b: game.payoff(_full_profile(player, b, opp))[player] for b in own}
        best = max(payoffs.values())
        candidates = {b for b in candidates if payoffs[b] == best}
        if not candidates:
            break
    return tuple(sorted(candidates))


def serialize_trace(game: Game, trace: DeletionTrace):
    return trace.to_json(game)
