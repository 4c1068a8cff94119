"""Rival deletion operators and equilibria for side-by-side comparison.

Weak/strong dominance (pure dominators only), justifiability via an LP
over beliefs, pure Nash enumeration, and risk dominance for 2x2
generalized coordination games.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Mapping

from .core import (
    DeletionTrace,
    Game,
    MembershipError,
    ParameterError,
    ProfileSpace,
    TraceRound,
    pure_space,
)
from .lp import OPTIMAL, solve_lp
from .pure import rm_step
from .rational import ONE, ZERO, Rat, rat_json


@dataclass(frozen=True)
class DominationWitness:
    """One removal: `dominator` beats `dominated` for `player` over the space."""

    player: int
    dominated: int
    dominator: int
    kind: str
    strict_at: tuple[int, ...] | None

    def verify(self, game: Game, space: ProfileSpace) -> bool:
        """Replay the inequalities from stored utilities."""
        opp_sets = [s for j, s in enumerate(space.pure_sets) if j != self.player]
        strict_seen = False
        for opp in product(*opp_sets):
            prof_dom = opp[: self.player] + (self.dominator,) + opp[self.player :]
            prof_sub = opp[: self.player] + (self.dominated,) + opp[self.player :]
            u_dom = game.payoff(prof_dom)[self.player]
            u_sub = game.payoff(prof_sub)[self.player]
            if self.kind == "strong":
                if not u_dom > u_sub:
                    return False
            else:
                if u_dom < u_sub:
                    return False
                if u_dom > u_sub:
                    strict_seen = True
        if self.kind == "weak":
            if not strict_seen:
                return False
            if self.strict_at is not None:
                prof_dom = self.strict_at[: self.player] + (self.dominator,) + self.strict_at[self.player :]
                prof_sub = self.strict_at[: self.player] + (self.dominated,) + self.strict_at[self.player :]
                if not game.payoff(prof_dom)[self.player] > game.payoff(prof_sub)[self.player]:
                    return False
        return True

    def to_json(self, game: Game):
        labels = game.actions[self.player]
        opp_labels = None
        if self.strict_at is not None:
            opp_players = [j for j in range(game.n) if j != self.player]
            opp_labels = [game.actions[j][a] for j, a in zip(opp_players, self.strict_at)]
        return {
            "player": self.player,
            "dominated": labels[self.dominated],
            "dominator": labels[self.dominator],
            "kind": self.kind,
            "strict_at": opp_labels,
        }


def _dominates(game: Game, space: ProfileSpace, player: int, dom: int, sub: int, kind: str):
    """(verdict, strict profile) for `dom` dominating `sub` over the space."""
    strict_at = None
    if game.n == 2:
        rows = game.payoffs
        width = game.shape[1]
        other = space.pure_sets[1 - player]
        for o in other:
            if player == 0:
                u_dom = rows[dom * width + o][0]
                u_sub = rows[sub * width + o][0]
            else:
                base = o * width
                u_dom = rows[base + dom][1]
                u_sub = rows[base + sub][1]
            if kind == "strong":
                if not u_dom > u_sub:
                    return False, None
            else:
                if u_dom < u_sub:
                    return False, None
                if strict_at is None and u_dom > u_sub:
                    strict_at = (o,)
        if kind == "weak" and strict_at is None:
            return False, None
        return True, strict_at
    opp_sets = [s for j, s in enumerate(space.pure_sets) if j != player]
    for opp in product(*opp_sets):
        u_dom = game.payoff(opp[:player] + (dom,) + opp[player:])[player]
        u_sub = game.payoff(opp[:player] + (sub,) + opp[player:])[player]
        if kind == "strong":
            if not u_dom > u_sub:
                return False, None
        else:
            if u_dom < u_sub:
                return False, None
            if u_dom > u_sub and strict_at is None:
                strict_at = opp
    if kind == "weak" and strict_at is None:
        return False, None
    return True, strict_at


def dominance_step(
    game: Game, space: ProfileSpace, kind: str
) -> tuple[ProfileSpace, tuple[DominationWitness, ...]]:
    """Remove every strategy dominated by some member of its own set."""
    if kind not in ("weak", "strong"):
        raise ParameterError(f"kind must be weak or strong, got {kind!r}")
    if space.mode != "pure":
        raise MembershipError("pure-mode profile space required")
    witnesses = []
    new_sets = []
    for i in range(game.n):
        own = space.pure_sets[i]
        removed = set()
        for sub in own:
            for dom in own:
                if dom == sub:
                    continue
                ok, strict_at = _dominates(game, space, i, dom, sub, kind)
                if ok:
                    witnesses.append(
                        DominationWitness(
                            player=i,
                            dominated=sub,
                            dominator=dom,
                            kind=kind,
                            strict_at=strict_at,
                        )
                    )
                    removed.add(sub)
                    break
        # Dominance is a strict partial order, so the kept set (its maximal
        # elements) is never empty.
        new_sets.append(tuple(a for a in own if a not in removed))
    return pure_space(game, new_sets), tuple(witnesses)


@dataclass(frozen=True)
class JustifiabilityResult:
    space: ProfileSpace
    certificates: Mapping[tuple[int, int], tuple[tuple[tuple[int, ...], Rat], ...]]
    correlated_beliefs: bool


def justifiable_step(game: Game, space: ProfileSpace) -> JustifiabilityResult:
    """Keep each action iff some belief over opponent profiles makes it a
    weak best response within the player's current set.

    Beliefs are joint distributions over S_{-i}; for two players this is
    the textbook independent-belief notion, and the result is flagged as
    correlated when there are more than two players.
    """
    if space.mode != "pure":
        raise MembershipError("pure-mode profile space required")
    certificates = {}
    new_sets = []
    for i in range(game.n):
        own = space.pure_sets[i]
        opp_sets = [s for j, s in enumerate(space.pure_sets) if j != i]
        profiles = list(product(*opp_sets))
        kept = []
        for a in own:
            constraints = [({k: ONE for k in range(len(profiles))}, "==", ONE)]
            for b in own:
                if b == a:
                    continue
                row = {}
                for k, opp in enumerate(profiles):
                    u_a = game.payoff(opp[:i] + (a,) + opp[i:])[i]
                    u_b = game.payoff(opp[:i] + (b,) + opp[i:])[i]
                    row[k] = u_a - u_b
                constraints.append((row, ">=", ZERO))
            res = solve_lp(len(profiles), [ZERO] * len(profiles), constraints)
            if res.status == OPTIMAL:
                kept.append(a)
                certificates[(i, a)] = tuple(
                    (profiles[k], w) for k, w in enumerate(res.x) if w != ZERO
                )
        # Nonempty: the best response to the uniform belief is always kept.
        new_sets.append(tuple(kept))
    return JustifiabilityResult(
        space=pure_space(game, new_sets),
        certificates=certificates,
        correlated_beliefs=game.n > 2,
    )


OPERATORS = ("RM", "WD", "SD", "JUST")


def iterate_operator(game: Game, space0: ProfileSpace | None, op: str) -> DeletionTrace:
    """Iterate a deletion operator to its fixed point with a full trace."""
    if op not in OPERATORS:
        raise ParameterError(f"unknown operator {op!r}; known: {OPERATORS}")
    space = space0 if space0 is not None else pure_space(game)
    rounds = []
    while True:
        if op == "RM":
            new_space, reports = rm_step(game, space)
            rounds.append(TraceRound(space=space, reports=reports))
        elif op in ("WD", "SD"):
            kind = "weak" if op == "WD" else "strong"
            new_space, witnesses = dominance_step(game, space, kind)
            rounds.append(TraceRound(space=space, witnesses=witnesses))
        else:
            new_space = justifiable_step(game, space).space
            rounds.append(TraceRound(space=space))
        if new_space == space:
            return DeletionTrace(
                operator=op, rounds=tuple(rounds), fixed_point=space, converged=True
            )
        space = new_space


def pure_nash(game: Game) -> tuple[tuple[int, ...], ...]:
    """All profiles with no profitable unilateral deviation (weak inequality)."""
    out = []
    for prof in game.profiles():
        ok = True
        for i in range(game.n):
            mine = game.payoff(prof)[i]
            for b in range(len(game.actions[i])):
                if b == prof[i]:
                    continue
                if game.payoff(prof[:i] + (b,) + prof[i + 1 :])[i] > mine:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(prof)
    return tuple(out)


def risk_dominance(game: Game) -> tuple[tuple[int, int], ...]:
    """The risk-dominant diagonal profile(s) of a 2x2 generalized
    coordination game: the diagonal with the larger product of the
    players' deviation losses.  Ties return both."""
    if game.n != 2 or game.shape != (2, 2):
        raise ParameterError("risk dominance needs a 2x2 game")
    u = game.payoff
    for x in (0, 1):
        y = 1 - x
        if not (u((x, x))[0] > u((y, x))[0] and u((x, x))[1] > u((x, y))[1]):
            raise ParameterError("not a generalized coordination game")
    products = {}
    for x in (0, 1):
        y = 1 - x
        loss1 = u((x, x))[0] - u((y, x))[0]
        loss2 = u((x, x))[1] - u((x, y))[1]
        products[(x, x)] = loss1 * loss2
    best = max(products.values())
    return tuple(sorted(p for p, v in products.items() if v == best))


def compare_table(game: Game) -> dict:
    """Survivor sets of each solution concept, for side-by-side output."""
    from .pure import rm_iterate

    rows = {}
    rm_trace = rm_iterate(game)
    rows["RM"] = rm_trace.fixed_point.to_json(game)
    for op in ("WD", "SD", "JUST"):
        rows[op] = iterate_operator(game, None, op).fixed_point.to_json(game)
    rows["Nash"] = [
        [game.actions[i][a] for i, a in enumerate(prof)] for prof in pure_nash(game)
    ]
    return rows
