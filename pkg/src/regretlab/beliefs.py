"""Lexicographic beliefs, rationality, the per-player belief operator,
and the repeated prisoner's dilemma analyses.

All repeated-play regrets come from exact play-out simulation; the
closed-form case tables are evaluated alongside and any disagreement is
emitted as a discrepancy report, never asserted away.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import (
    Game,
    MembershipError,
    MixedStrategy,
    ParameterError,
    Polytope,
    ProfileSpace,
    mixed_space,
    pure_space,
)
from .generators import pd_move, pd_play, pd_score, pd_strategy_count
from .lp import OPTIMAL, Constraint, LinearProgram
from .mixed import DEFAULT_CAP, argmin_polytope
from .polytope import polytope_contains
from .pure import regret_report
from .rational import ONE, ZERO, Rat, rat, rat_json


@dataclass(frozen=True)
class LexBelief:
    """A plausibility-ordered sequence of profile spaces (primary first)."""

    levels: tuple[ProfileSpace, ...]

    def __post_init__(self):
        if not self.levels:
            raise ParameterError("a lexicographic belief needs at least one level")
        modes = {s.mode for s in self.levels}
        if len(modes) != 1:
            raise ParameterError("belief levels must share one mode")

    @property
    def mode(self) -> str:
        return self.levels[0].mode


@dataclass(frozen=True)
class BeliefProfile:
    """One profile space per player: player i restricts attention to spaces[i]."""

    spaces: tuple[ProfileSpace, ...]


@dataclass(frozen=True)
class RationalityTrace:
    """The nested T-sets built while checking rationality against a belief."""

    t_sets: tuple[ProfileSpace, ...]

    @property
    def final(self) -> ProfileSpace:
        return self.t_sets[-1]


def _pure_argmin_sets(game: Game, own_sets, opp_space: ProfileSpace):
    """Per-player minimax-regret subsets of own_sets against opp_space."""
    out = []
    for i in range(game.n):
        hybrid = opp_space.with_player_set(i, own_sets[i])
        out.append(regret_report(game, hybrid, i).argmin)
    return out


def _mixed_argmin_polys(game: Game, own_polys, opp_space: ProfileSpace, cap: int):
    out = []
    for i in range(game.n):
        hybrid = opp_space.with_player_polytope(i, own_polys[i])
        out.append(argmin_polytope(game, hybrid, i, cap=cap))
    return out


def rationality_trace(
    game: Game, belief: LexBelief, cap: int = DEFAULT_CAP
) -> RationalityTrace:
    """T^0 = minimax-regret survivors of the primary level; each later T^k
    keeps, inside T^{k-1}, the strategies of least regret against level k."""
    if belief.mode == "pure":
        current = _pure_argmin_sets(game, belief.levels[0].pure_sets, belief.levels[0])
        t_sets = [pure_space(game, current)]
        for level in belief.levels[1:]:
            current = _pure_argmin_sets(game, current, level)
            t_sets.append(pure_space(game, current))
        return RationalityTrace(t_sets=tuple(t_sets))
    current = list(belief.levels[0].polytopes)
    current = _mixed_argmin_polys(game, current, belief.levels[0], cap)
    t_sets = [mixed_space(game, current)]
    for level in belief.levels[1:]:
        current = _mixed_argmin_polys(game, current, level, cap)
        t_sets.append(mixed_space(game, current))
    return RationalityTrace(t_sets=tuple(t_sets))


def rational_wrt(
    game: Game,
    player: int,
    sigma,
    belief: LexBelief,
    cap: int = DEFAULT_CAP,
) -> tuple[bool, RationalityTrace]:
    """Is the strategy rational with respect to the belief sequence?

    Pure mode takes an action index or label; mixed mode takes a
    MixedStrategy and membership is an exact hull test.
    """
    trace = rationality_trace(game, belief, cap=cap)
    final = trace.final
    if belief.mode == "pure":
        if isinstance(sigma, MixedStrategy):
            raise MembershipError("pure-mode belief but mixed strategy given")
        action = sigma if isinstance(sigma, int) else game.action_index(player, sigma)
        return action in final.pure_sets[player], trace
    if not isinstance(sigma, MixedStrategy):
        raise MembershipError("mixed-mode belief needs a MixedStrategy")
    return polytope_contains(final.polytopes[player], sigma), trace


def justifiable_belief(
    game: Game, k: int, mode: str = "pure", cap: int = DEFAULT_CAP
) -> LexBelief:
    """The unique justifiable belief of depth k.

    Level 0 is the full space (primary beliefs assume nothing); level j is
    the j-fold minimax-regret refinement.  Depth k >= 1 yields the levels
    (S, RM(S), ..., RM^{k-1}(S)); depth 0 is the bare full space.
    """
    if k < 0:
        raise ParameterError("belief depth must be nonnegative")
    if mode == "pure":
        from .pure import rm_step

        levels = [pure_space(game)]
        for _ in range(max(k, 1) - 1):
            nxt, _reports = rm_step(game, levels[-1])
            levels.append(nxt)
        return LexBelief(levels=tuple(levels))
    if mode != "mixed":
        raise ParameterError(f"mode must be pure or mixed, got {mode!r}")
    levels = [mixed_space(game)]
    for _ in range(max(k, 1) - 1):
        prev = levels[-1]
        polys = [argmin_polytope(game, prev, i, cap=cap) for i in range(game.n)]
        levels.append(mixed_space(game, polys))
    return LexBelief(levels=tuple(levels))


def rm_prime_step(game: Game, beliefs: BeliefProfile, cap: int = DEFAULT_CAP) -> BeliefProfile:
    """Apply the minimax-regret step independently inside each player's
    own belief space (players may hold different prior beliefs)."""
    if len(beliefs.spaces) != game.n:
        raise ParameterError("one belief space per player")
    out = []
    for space in beliefs.spaces:
        if space.mode == "pure":
            sets = _pure_argmin_sets(game, space.pure_sets, space)
            out.append(pure_space(game, sets))
        else:
            polys = _mixed_argmin_polys(game, list(space.polytopes), space, cap)
            out.append(mixed_space(game, polys))
    return BeliefProfile(spaces=tuple(out))


# --- repeated prisoner's dilemma with tit-for-tat-then-defect beliefs ---------


def _check_pd_params(u1, u2, u3):
    u1, u2, u3 = rat(u1), rat(u2), rat(u3)
    if not (ZERO < u1 < u2 < u3) or not (u2 * 2 > u3):
        raise ParameterError("need 0 < u1 < u2 < u3 and u2 > u3/2")
    return u1, u2, u3


def tft_then_defect_moves(n: int, k: int, opp_moves: Sequence[int]) -> int:
    """Move of s_k (tit-for-tat for k rounds, defect afterwards) at round
    len(opp_moves)+1, given the opponent moves seen so far."""
    t = len(opp_moves) + 1
    if t > k:
        return 1
    if t == 1:
        return 0
    return opp_moves[-1]


def play_sk_pair(n: int, k: int, l: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Move sequences when s_k meets s_l over n rounds."""
    h1: list[int] = []
    h2: list[int] = []
    for _ in range(n):
        m1 = tft_then_defect_moves(n, k, tuple(h2))
        m2 = tft_then_defect_moves(n, l, tuple(h1))
        h1.append(m1)
        h2.append(m2)
    return tuple(h1), tuple(h2)


def payoff_vs_sk(n: int, own_moves: Sequence[int], l: int, u1, u2, u3) -> Rat:
    """Player 1's payoff for a fixed move sequence against s_l."""
    h1: list[int] = []
    h2: list[int] = []
    for m in own_moves:
        m2 = tft_then_defect_moves(n, l, tuple(h1))
        h1.append(m)
        h2.append(m2)
    return pd_score(h1, h2, u1, u2, u3)[0]


def best_response_value_vs_sk(n: int, l: int, u1, u2, u3) -> Rat:
    """Best achievable payoff against s_l, over all 2^n move sequences.

    s_l's move at round t is c at t=1, a copy of my move at t-1 while
    t <= l, and d afterwards, so a value-to-go recursion over (round, my
    previous move) is exhaustive.
    """

    def stage(mine: int, theirs: int) -> Rat:
        if mine == 0:
            return u2 if theirs == 0 else ZERO
        return u3 if theirs == 0 else u1

    value_to_go = {0: ZERO, 1: ZERO}
    for t in range(n, 0, -1):
        step = {}
        for prev in (0, 1):
            if t > l:
                theirs = 1
            elif t == 1:
                theirs = 0
            else:
                theirs = prev
            step[prev] = max(stage(m, theirs) + value_to_go[m] for m in (0, 1))
        value_to_go = step
    return value_to_go[0]


def _formula_cell(n: int, k: int, l: int, u1, u2, u3) -> Rat:
    if k < l:
        return (l - k - 1) * (u2 - u1)
    if k == l:
        return u3 + u1 - u2 * 2 if k > 0 else ZERO
    if l > 0:
        return u3 + u1 - u2
    return u1


def _formula_max(n: int, k: int, u1, u2, u3) -> Rat:
    if k >= 2:
        return max((n - k - 1) * (u2 - u1), u3 + u1 - u2)
    if k == 1:
        return max((n - 1) * (u2 - u1), u3 + u1 - u2 * 2, u1)
    return n * (u2 - u1)


@dataclass(frozen=True)
class RepeatedPdReport:
    """Simulated regret table over {s_0..s_n}, its argmin, and the
    formula-vs-simulation discrepancy report."""

    rounds: int
    pairwise: dict
    max_regret: dict
    minregret: Rat
    argmin: tuple[int, ...]
    formula_pairwise: dict
    formula_max: dict
    discrepancies: tuple[dict, ...]
    mixture_value: Rat

    def to_json(self):
        def table(d):
            return {str(key): rat_json(v) for key, v in sorted(d.items())}

        return {
            "rounds": self.rounds,
            "pairwise_simulated": table(self.pairwise),
            "pairwise_formula": table(self.formula_pairwise),
            "max_simulated": table(self.max_regret),
            "max_formula": table(self.formula_max),
            "minregret": rat_json(self.minregret),
            "argmin": [f"s{k}" for k in self.argmin],
            "discrepancies": list(self.discrepancies),
            "mixture_minimax_regret": rat_json(self.mixture_value),
        }


def repeated_pd_analysis(n: int, u1, u2, u3) -> RepeatedPdReport:
    """Regrets of the strategies s_0..s_n (tit-for-tat for k rounds, then
    defect) when the opponent is believed to play one of them.

    Pairwise regrets come from exact play-outs with an exhaustive best
    reply as the benchmark; the closed-form case table is evaluated next
    to them and every mismatch is reported.
    """
    if n < 1:
        raise ParameterError("need at least one round")
    u1, u2, u3 = _check_pd_params(u1, u2, u3)
    payoff = {}
    for k in range(n + 1):
        for l in range(n + 1):
            h1, h2 = play_sk_pair(n, k, l)
            payoff[(k, l)] = pd_score(h1, h2, u1, u2, u3)[0]
    best_vs = {l: best_response_value_vs_sk(n, l, u1, u2, u3) for l in range(n + 1)}
    pairwise = {}
    formula_pairwise = {}
    discrepancies = []
    for k in range(n + 1):
        for l in range(n + 1):
            sim = best_vs[l] - payoff[(k, l)]
            formula = _formula_cell(n, k, l, u1, u2, u3)
            pairwise[(k, l)] = sim
            formula_pairwise[(k, l)] = formula
            if sim != formula:
                discrepancies.append(
                    {
                        "cell": f"regret(s{k}|s{l})",
                        "simulated": rat_json(sim),
                        "formula": rat_json(formula),
                    }
                )
    max_regret = {}
    formula_max = {}
    for k in range(n + 1):
        max_regret[k] = max(pairwise[(k, l)] for l in range(n + 1))
        formula_max[k] = _formula_max(n, k, u1, u2, u3)
        if max_regret[k] != formula_max[k]:
            discrepancies.append(
                {
                    "cell": f"maxregret(s{k})",
                    "simulated": rat_json(max_regret[k]),
                    "formula": rat_json(formula_max[k]),
                }
            )
    minregret = min(max_regret.values())
    argmin = tuple(k for k in range(n + 1) if max_regret[k] == minregret)
    mixture_value = _mixture_min_regret(n, payoff, best_vs)
    return RepeatedPdReport(
        rounds=n,
        pairwise=pairwise,
        max_regret=max_regret,
        minregret=minregret,
        argmin=argmin,
        formula_pairwise=formula_pairwise,
        formula_max=formula_max,
        discrepancies=tuple(discrepancies),
        mixture_value=mixture_value,
    )


def _mixture_min_regret(n: int, payoff: dict, best_vs: dict) -> Rat:
    """Minimax regret over mixtures of s_0..s_n, via the restricted-game LP."""
    m = n + 1
    t_var = m
    constraints = [Constraint({j: ONE for j in range(m)}, "==", ONE)]
    for l in range(m):
        row = {k: payoff[(k, l)] for k in range(m)}
        row[t_var] = ONE
        constraints.append(Constraint(row, ">=", best_vs[l]))
    lp = LinearProgram(
        n_vars=m + 1,
        objective=tuple([ZERO] * m + [ONE]),
        constraints=tuple(constraints),
    )
    res = lp.solve()
    if res.status != OPTIMAL:
        raise MembershipError(f"mixture LP unexpectedly {res.status}")
    return res.value


# --- always-defect in the unrestricted repeated game --------------------------


@dataclass(frozen=True)
class AlwaysDefectReport:
    rounds: int
    regret: Rat
    witness_opponent: int
    statement_value: Rat
    proof_value_defect_seen: Rat
    proof_value_cooperate_seen: Rat
    matches: tuple[str, ...]

    def to_json(self):
        return {
            "rounds": self.rounds,
            "brute_force_regret": rat_json(self.regret),
            "witness_opponent": self.witness_opponent,
            "statement_value": rat_json(self.statement_value),
            "proof_value_defect_seen": rat_json(self.proof_value_defect_seen),
            "proof_value_cooperate_seen": rat_json(self.proof_value_cooperate_seen),
            "matches": list(self.matches),
        }


ALWAYS_DEFECT_MAX_ROUNDS = 4


def _best_reply_value(n: int, opponent: int, u1, u2, u3) -> Rat:
    best = None
    for code in range(2**n):
        h1: list[int] = []
        h2: list[int] = []
        for t in range(n):
            m1 = (code >> t) & 1
            m2 = pd_move(opponent, tuple(h1))
            h1.append(m1)
            h2.append(m2)
        value = pd_score(h1, h2, u1, u2, u3)[0]
        if best is None or value > best:
            best = value
    return best


def always_defect_regret(n: int, u1, u2, u3) -> AlwaysDefectReport:
    """Brute-force max regret of always-defect over every deterministic
    opponent plan, with the maximizing opponent and a comparison against
    the candidate closed forms (ties resolved to the smallest opponent
    code for reproducible witnesses)."""
    if n < 1:
        raise ParameterError("need at least one round")
    if n > ALWAYS_DEFECT_MAX_ROUNDS:
        raise ParameterError(f"rounds capped at {ALWAYS_DEFECT_MAX_ROUNDS}")
    u1, u2, u3 = _check_pd_params(u1, u2, u3)
    s_ad = pd_strategy_count(n) - 1
    worst = None
    witness = None
    for opp in range(pd_strategy_count(n)):
        mine, theirs = pd_play(n, s_ad, opp)
        value = pd_score(mine, theirs, u1, u2, u3)[0]
        regret = _best_reply_value(n, opp, u1, u2, u3) - value
        if worst is None or regret > worst:
            worst = regret
            witness = opp
    statement = (n - 1) * (u3 - u2) + max(-u1, u2 - u3)
    proof_d = (n - 1) * (u3 - u1) - u1
    proof_c = (n - 1) * (u3 - u1) + (u2 - u3)
    matches = []
    if worst == statement:
        matches.append("statement")
    if worst == proof_d:
        matches.append("proof_defect_seen")
    if worst == proof_c:
        matches.append("proof_cooperate_seen")
    if worst == max(proof_d, proof_c):
        matches.append("max_of_proof_values")
    return AlwaysDefectReport(
        rounds=n,
        regret=worst,
        witness_opponent=witness,
        statement_value=statement,
        proof_value_defect_seen=proof_d,
        proof_value_cooperate_seen=proof_c,
        matches=tuple(matches),
    )


def full_game_regret(n: int, strategy: int, u1, u2, u3) -> Rat:
    """Max regret of one encoded strategy over every deterministic opponent."""
    u1, u2, u3 = _check_pd_params(u1, u2, u3)
    worst = None
    for opp in range(pd_strategy_count(n)):
        mine, theirs = pd_play(n, strategy, opp)
        value = pd_score(mine, theirs, u1, u2, u3)[0]
        regret = _best_reply_value(n, opp, u1, u2, u3) - value
        if worst is None or regret > worst:
            worst = regret
    return worst


def cooperates_first(n: int, strategy: int) -> bool:
    """Does the plan ever cooperate before having seen the opponent cooperate?"""
    for k in range(n):
        history = (1,) * k
        if pd_move(strategy, history) == 0:
            return True
    return False
