"""Bayesian games with expected-regret deletion, and the auction analyses.

Regret is taken per type in conditional expectation over the full-support
prior; deletion keeps, for every (player, type) cell, exactly the
expected-regret minimizers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from typing import Mapping, Sequence

from .core import (
    DeletionTrace,
    Game,
    GameFormatError,
    MembershipError,
    ParameterError,
    TraceRound,
)
from .rational import ONE, ZERO, Rat, parse_rat_json, rat, rat_json


@dataclass(frozen=True)
class BayesianGame:
    """Finite type spaces, a full-support prior over type profiles, and
    type-dependent utilities.

    `prior` and `utilities` are flattened row-major, types outermost:
    utilities[t_flat * (number of action profiles) + a_flat].
    """

    types: tuple[tuple[str, ...], ...]
    actions: tuple[tuple[str, ...], ...]
    prior: tuple[Rat, ...]
    utilities: tuple[tuple[Rat, ...], ...]
    _t_shape: tuple[int, ...] = field(init=False, repr=False, compare=False, hash=False)
    _a_shape: tuple[int, ...] = field(init=False, repr=False, compare=False, hash=False)
    _n_a: int = field(init=False, repr=False, compare=False, hash=False)
    _marginals: tuple = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if len(self.types) != len(self.actions) or not self.types:
            raise ParameterError("types and actions must list the same players")
        for i, ts in enumerate(self.types):
            if not ts or len(set(ts)) != len(ts):
                raise ParameterError(f"player {i} needs distinct, nonempty types")
        n_t = 1
        for ts in self.types:
            n_t *= len(ts)
        n_a = 1
        for acts in self.actions:
            n_a *= len(acts)
        object.__setattr__(self, "_t_shape", tuple(len(t) for t in self.types))
        object.__setattr__(self, "_a_shape", tuple(len(a) for a in self.actions))
        object.__setattr__(self, "_n_a", n_a)
        if len(self.prior) != n_t:
            raise ParameterError(f"prior needs {n_t} entries, got {len(self.prior)}")
        if sum(self.prior, ZERO) != ONE:
            raise ParameterError("prior must sum to 1")
        if any(p < 0 for p in self.prior):
            raise ParameterError("prior must be nonnegative")
        if len(self.utilities) != n_t * n_a:
            raise ParameterError(
                f"utilities needs {n_t * n_a} rows, got {len(self.utilities)}"
            )
        for row in self.utilities:
            if len(row) != len(self.types):
                raise ParameterError("one payoff per player in every row")
        marginals = []
        for i in range(len(self.types)):
            per_type = [ZERO] * len(self.types[i])
            for tprof in self.type_profiles():
                per_type[tprof[i]] += self.prior_of(tprof)
            marginals.append(tuple(per_type))
        object.__setattr__(self, "_marginals", tuple(marginals))
        for i in range(len(self.types)):
            for t in range(len(self.types[i])):
                if self._marginals[i][t] <= 0:
                    raise ParameterError(
                        f"type {self.types[i][t]!r} of player {i} has zero prior mass"
                    )

    @property
    def n(self) -> int:
        return len(self.types)

    def type_profiles(self):
        return product(*(range(len(ts)) for ts in self.types))

    def action_profiles(self):
        return product(*(range(len(a)) for a in self.actions))

    @staticmethod
    def _flat(shape, prof) -> int:
        idx = 0
        for size, p in zip(shape, prof):
            idx = idx * size + p
        return idx

    def prior_of(self, tprof: Sequence[int]) -> Rat:
        return self.prior[self._flat(self._t_shape, tprof)]

    def type_marginal(self, player: int, t: int) -> Rat:
        return self._marginals[player][t]

    def payoff(self, aprof: Sequence[int], tprof: Sequence[int]) -> tuple[Rat, ...]:
        t_flat = self._flat(self._t_shape, tprof)
        a_flat = self._flat(self._a_shape, aprof)
        return self.utilities[t_flat * self._n_a + a_flat]


@dataclass(frozen=True)
class TypedStrategy:
    """A plan: one action per own type."""

    owner: int
    choices: tuple[int, ...]


@dataclass(frozen=True)
class TypedSpace:
    """Per player, per type, a nonempty allowed action subset."""

    sets: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self):
        for i, per_type in enumerate(self.sets):
            for t, s in enumerate(per_type):
                if not s:
                    raise ParameterError(f"player {i}, type {t}: empty action set")
                if tuple(sorted(set(s))) != s:
                    raise ParameterError("per-type sets must be sorted and duplicate-free")

    def with_cell(self, player: int, t: int, new_set) -> "TypedSpace":
        sets = [list(per) for per in self.sets]
        sets[player][t] = tuple(sorted(set(new_set)))
        return TypedSpace(tuple(tuple(per) for per in sets))

    def to_json(self, bg: BayesianGame):
        return [
            {
                bg.types[i][t]: [bg.actions[i][a] for a in s]
                for t, s in enumerate(per_type)
            }
            for i, per_type in enumerate(self.sets)
        ]


def full_typed_space(bg: BayesianGame) -> TypedSpace:
    return TypedSpace(
        tuple(
            tuple(tuple(range(len(bg.actions[i]))) for _ in bg.types[i])
            for i in range(bg.n)
        )
    )


def _profile_regret(
    bg: BayesianGame, space: TypedSpace, player: int, action: int, tprof
) -> Rat:
    """Worst regret at one type profile, over opponents' allowed actions."""
    own_allowed = space.sets[player][tprof[player]]
    opp_allowed = [
        space.sets[j][tprof[j]] for j in range(bg.n) if j != player
    ]
    worst = ZERO
    for opp in product(*opp_allowed):
        best = None
        for b in own_allowed:
            prof = opp[:player] + (b,) + opp[player:]
            v = bg.payoff(prof, tprof)[player]
            if best is None or v > best:
                best = v
        mine = bg.payoff(opp[:player] + (action,) + opp[player:], tprof)[player]
        r = best - mine
        if r > worst:
            worst = r
    return worst


def expected_regret(
    bg: BayesianGame, space: TypedSpace, player: int, t: int, action: int
) -> Rat:
    """Conditional expectation, given the player's type, of the per-type-
    profile regret of playing `action`."""
    if action not in space.sets[player][t]:
        raise MembershipError(
            f"action {bg.actions[player][action]!r} not allowed for type "
            f"{bg.types[player][t]!r}"
        )
    marginal = bg.type_marginal(player, t)
    total = ZERO
    for tprof in bg.type_profiles():
        if tprof[player] != t:
            continue
        p = bg.prior_of(tprof)
        if p == ZERO:
            continue
        total += p * _profile_regret(bg, space, player, action, tprof)
    return total / marginal


@dataclass(frozen=True)
class TypedRegretReport:
    player: int
    type_index: int
    regrets: tuple[tuple[int, Rat], ...]
    minregret: Rat
    argmin: tuple[int, ...]

    def to_json(self, bg: BayesianGame):
        labels = bg.actions[self.player]
        return {
            "player": self.player,
            "type": bg.types[self.player][self.type_index],
            "regrets": {labels[a]: rat_json(r) for a, r in self.regrets},
            "minregret": rat_json(self.minregret),
            "argmin": [labels[a] for a in self.argmin],
        }


def rm_bayes_step(
    bg: BayesianGame, space: TypedSpace
) -> tuple[TypedSpace, tuple[TypedRegretReport, ...]]:
    """Keep, in each (player, type) cell, the expected-regret minimizers."""
    reports = []
    new_sets = []
    for i in range(bg.n):
        per_type = []
        for t in range(len(bg.types[i])):
            cell = space.sets[i][t]
            regrets = tuple((a, expected_regret(bg, space, i, t, a)) for a in cell)
            minregret = min(r for _, r in regrets)
            argmin = tuple(a for a, r in regrets if r == minregret)
            reports.append(
                TypedRegretReport(
                    player=i,
                    type_index=t,
                    regrets=regrets,
                    minregret=minregret,
                    argmin=argmin,
                )
            )
            per_type.append(argmin)
        new_sets.append(tuple(per_type))
    return TypedSpace(tuple(new_sets)), tuple(reports)


def rm_bayes_iterate(bg: BayesianGame, space0: TypedSpace | None = None) -> DeletionTrace:
    space = space0 if space0 is not None else full_typed_space(bg)
    rounds = []
    while True:
        new_space, reports = rm_bayes_step(bg, space)
        rounds.append(TraceRound(space=space, reports=reports))
        if new_space == space:
            return DeletionTrace(
                operator="RM-bayes", rounds=tuple(rounds), fixed_point=space, converged=True
            )
        space = new_space


def strategic_projection(bg: BayesianGame) -> Game:
    """The strategic game a single-type-per-player Bayesian game collapses to."""
    if any(len(ts) != 1 for ts in bg.types):
        raise ParameterError("projection needs singleton type sets")
    tprof = tuple(0 for _ in bg.types)
    rows = [bg.payoff(aprof, tprof) for aprof in bg.action_profiles()]
    return Game(bg.actions, tuple(rows))


# --- auctions ------------------------------------------------------------------


def make_auction(
    kind: str,
    valuations: Sequence[Sequence[int]],
    max_bid: int,
    prior: Sequence | None = None,
) -> BayesianGame:
    """Sealed-bid single-item auction as a Bayesian game.

    Types are valuations (even positive integers up to max_bid), actions
    are bids 0..max_bid, ties go to the lower-numbered player, and the
    item is sold only if some bid is positive.  The winner's utility is
    valuation minus payment (own bid for first price, highest other bid
    for second price); losers get 0.
    """
    if kind not in ("first_price", "second_price"):
        raise ParameterError(f"kind must be first_price or second_price, got {kind!r}")
    if max_bid < 1:
        raise ParameterError("max_bid must be positive")
    for i, vs in enumerate(valuations):
        if not vs:
            raise ParameterError(f"player {i} needs at least one valuation")
        for v in vs:
            if v <= 0 or v % 2 != 0 or v > max_bid:
                raise ParameterError(
                    f"valuations must be even positive integers <= max_bid, got {v}"
                )
    types = tuple(tuple(str(v) for v in vs) for vs in valuations)
    actions = tuple(tuple(str(b) for b in range(max_bid + 1)) for _ in valuations)
    n = len(valuations)
    n_t = 1
    for ts in types:
        n_t *= len(ts)
    if prior is None:
        prior_flat = tuple(rat(1, n_t) for _ in range(n_t))
    else:
        prior_flat = tuple(rat(p) for p in prior)

    rows = []
    for tprof in product(*(range(len(ts)) for ts in types)):
        vals = [valuations[i][tprof[i]] for i in range(n)]
        for aprof in product(*(range(max_bid + 1) for _ in range(n))):
            top = max(aprof)
            row = [ZERO] * n
            if top > 0:
                winner = min(i for i in range(n) if aprof[i] == top)
                if kind == "first_price":
                    payment = top
                else:
                    others = [aprof[j] for j in range(n) if j != winner]
                    payment = max(others) if others else 0
                row[winner] = rat(vals[winner] - payment)
            rows.append(tuple(row))
    return BayesianGame(types=types, actions=actions, prior=prior_flat, utilities=tuple(rows))


def truthful_strategy(bg: BayesianGame, player: int) -> TypedStrategy:
    """Bid-your-valuation, assuming auction-style labels."""
    choices = []
    for t_label in bg.types[player]:
        choices.append(bg.actions[player].index(t_label))
    return TypedStrategy(owner=player, choices=tuple(choices))


# --- mechanism bounds, probed at desk scale ------------------------------------


def mechanism_bound_probe(r, v_max: int) -> dict:
    """Single-item, two-buyer probe of the revenue-vs-regret tradeoff.

    For each valuation v: any truthful, IR, efficient rule extracting at
    least r*bid forces regret >= r*v - 1 against a zero opposing bid
    (paying p in [r*v, v] while bidding 1 would have paid at most 1);
    bidding v/(r+1) caps regret at max(alpha*v, v - r*alpha*v); and the
    consistency inequality v/(r+1) >= r*v - 1 holds for every v exactly
    when r is below the positive root of r^2 + r - 1.
    """
    r = rat(r)
    if not (ZERO < r < ONE):
        raise ParameterError("r must be strictly between 0 and 1")
    if v_max < 2:
        raise ParameterError("v_max must be at least 2")
    alpha = ONE / (r + 1)
    rows = []
    first_violation = None
    for v in range(2, v_max + 1, 2):
        forced_lb = r * v - 1
        # Enumerate the integer payments an r-revenue rule may charge the
        # winner against a zero bid; each implies regret payment - 1.
        payments = [p for p in range(v + 1) if rat(p) >= r * v]
        min_forced = min(payments) - 1 if payments else None
        alpha_bound = max(alpha * v, v - r * alpha * v)
        consistent = alpha * v >= forced_lb
        if not consistent and first_violation is None:
            first_violation = v
        rows.append(
            {
                "v": v,
                "forced_regret_lb": rat_json(forced_lb),
                "min_enumerated_forced_regret": min_forced,
                "first_price_regret": rat_json(rat(v, 2) - 1),
                "alpha_bid_regret_bound": rat_json(alpha_bound),
                "consistent": consistent,
            }
        )
    below_threshold = r * r + r - 1 < 0
    return {
        "r": rat_json(r),
        "alpha": rat_json(alpha),
        "below_golden_threshold": below_threshold,
        "first_consistency_violation": first_violation,
        "rows": rows,
    }


def combinatorial_first_price_revenue(
    valuations: Sequence[Mapping], n_items: int
) -> tuple[Rat, Rat, tuple]:
    """Revenue of the half-bid combinatorial first-price auction (revenue-
    maximizing allocation, winners pay their bids) next to the maximal
    social welfare.  Exhaustive over allocations; at most 3 bidders and
    3 items."""
    n = len(valuations)
    if n > 3 or n_items > 3 or n < 1 or n_items < 1:
        raise ParameterError("instance too large: at most 3 bidders and 3 items")
    tables = []
    for i, table in enumerate(valuations):
        norm = {}
        for bundle, value in table.items():
            key = frozenset(bundle)
            if not key or not key <= set(range(n_items)):
                raise ParameterError(f"bidder {i}: bad bundle {bundle!r}")
            norm[key] = rat(value)
        for size in range(1, n_items + 1):
            for bundle in _bundles(n_items, size):
                if bundle not in norm:
                    raise ParameterError(f"bidder {i}: bundle {sorted(bundle)} unpriced")
        tables.append(norm)

    def allocation_value(assign, price_fn):
        bundles = [frozenset(j for j in range(n_items) if assign[j] == i) for i in range(n)]
        total = ZERO
        for i, bundle in enumerate(bundles):
            if bundle:
                total += price_fn(i, bundle)
        return total

    best_revenue = None
    best_assign = None
    msw = None
    for assign in product(range(n + 1), repeat=n_items):
        # item j goes to bidder assign[j], or stays unsold when assign[j] == n
        revenue = allocation_value(assign, lambda i, b: tables[i][b] / 2)
        welfare = allocation_value(assign, lambda i, b: tables[i][b])
        if best_revenue is None or revenue > best_revenue:
            best_revenue = revenue
            best_assign = assign
        if msw is None or welfare > msw:
            msw = welfare
    if best_revenue * 2 < msw:
        raise MembershipError("half-bid revenue fell below half the maximal welfare")
    return best_revenue, msw, best_assign


def _bundles(n_items: int, size: int):
    from itertools import combinations

    for combo in combinations(range(n_items), size):
        yield frozenset(combo)


# --- file round trip ------------------------------------------------------------

_BG_KEYS = {"players", "types", "actions", "prior", "utilities"}


def load_bayesian_game(text: str) -> BayesianGame:
    """Game-file format extended with types and a flattened prior."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise GameFormatError(
            f"parse error at line {e.lineno}, column {e.colno}: {e.msg}"
        ) from None
    if not isinstance(doc, dict):
        raise GameFormatError("top level must be a JSON object")
    unknown = set(doc) - _BG_KEYS
    if unknown:
        raise GameFormatError(f"unknown keys: {sorted(unknown)}")
    missing = _BG_KEYS - set(doc)
    if missing:
        raise GameFormatError(f"missing keys: {sorted(missing)}")
    types = tuple(tuple(t) for t in doc["types"])
    actions = tuple(tuple(a) for a in doc["actions"])
    if doc["players"] != len(types):
        raise GameFormatError("players does not match the type lists")
    try:
        prior = tuple(parse_rat_json(v) for v in doc["prior"])
        utilities = tuple(
            tuple(parse_rat_json(v) for v in row) for row in doc["utilities"]
        )
    except ValueError as e:
        raise GameFormatError(str(e)) from None
    try:
        return BayesianGame(types=types, actions=actions, prior=prior, utilities=utilities)
    except ParameterError as e:
        raise GameFormatError(str(e)) from None


def dump_bayesian_game(bg: BayesianGame) -> str:
    doc = {
        "players": bg.n,
        "types": [list(t) for t in bg.types],
        "actions": [list(a) for a in bg.actions],
        "prior": [rat_json(p) for p in bg.prior],
        "utilities": [[rat_json(v) for v in row] for row in bg.utilities],
    }
    return json.dumps(doc, indent=1) + "\n"
