"""Finite strategic games with exact rational payoffs.

Domain types shared by every solver module: games, mixed strategies,
polytopes of mixed strategies, profile spaces, deletion traces, and the
JSON game-file round trip.  Everything here is immutable after
construction and every operation is a pure function, so concurrent reads
of a shared game are safe by construction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterator, Sequence

from .rational import ONE, ZERO, Rat, parse_rat_json, rat, rat_json


class RegretLabError(Exception):
    """Base class for package errors."""


class GameFormatError(RegretLabError):
    """Malformed game file (bad JSON, bad keys, bad values)."""


class MissingProfileError(GameFormatError):
    """A utility row is absent for some action profile."""


class DuplicateLabelError(GameFormatError):
    """Two actions of one player share a label."""


class ParameterError(RegretLabError):
    """Generator or operation parameters outside their stated range."""


class MembershipError(RegretLabError):
    """A strategy, action, or profile does not belong to the required set."""


class DimensionCapError(RegretLabError):
    """Polytope vertex enumeration requested above the configured cap."""


@dataclass(frozen=True)
class Game:
    """A finite normal-form game.

    `actions[i]` is player i's ordered tuple of action labels.  `payoffs`
    is the flattened utility tensor in row-major profile order (the last
    player's index varies fastest); each entry is one exact rational per
    player.  Labels are presentation; indices are the canonical identity.
    """

    actions: tuple[tuple[str, ...], ...]
    payoffs: tuple[tuple[Rat, ...], ...]
    _label_maps: tuple[dict, ...] = field(init=False, repr=False, compare=False, hash=False)
    _strides: tuple[int, ...] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if len(self.actions) < 1:
            raise ParameterError("a game needs at least one player")
        for i, labels in enumerate(self.actions):
            if not labels:
                raise ParameterError(f"player {i} has an empty action set")
            if len(set(labels)) != len(labels):
                raise DuplicateLabelError(f"player {i} has duplicate action labels")
        total = 1
        for labels in self.actions:
            total *= len(labels)
        if len(self.payoffs) != total:
            raise MissingProfileError(
                f"expected {total} payoff rows, got {len(self.payoffs)}"
            )
        n = len(self.actions)
        for row in self.payoffs:
            if len(row) != n:
                raise GameFormatError(f"payoff vector {row!r} is not length {n}")
        strides = [1] * n
        for i in range(n - 2, -1, -1):
            strides[i] = strides[i + 1] * len(self.actions[i + 1])
        object.__setattr__(self, "_strides", tuple(strides))
        object.__setattr__(
            self,
            "_label_maps",
            tuple({a: j for j, a in enumerate(labels)} for labels in self.actions),
        )

    @property
    def n(self) -> int:
        return len(self.actions)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(labels) for labels in self.actions)

    def action_index(self, player: int, label: str) -> int:
        try:
            return self._label_maps[player][label]
        except KeyError:
            raise MembershipError(f"player {player} has no action {label!r}") from None

    def flat_index(self, profile: Sequence[int]) -> int:
        strides = self._strides
        return sum(profile[i] * strides[i] for i in range(len(strides)))

    def payoff(self, profile: Sequence[int]) -> tuple[Rat, ...]:
        """Payoff vector for a profile given as action indices."""
        return self.payoffs[self.flat_index(profile)]

    def utility(self, profile: Sequence[str]) -> tuple[Rat, ...]:
        """Payoff vector for a profile given as action labels."""
        if len(profile) != self.n:
            raise MembershipError(f"profile needs {self.n} actions, got {len(profile)}")
        idx = tuple(self.action_index(i, a) for i, a in enumerate(profile))
        return self.payoff(idx)

    def profiles(self) -> Iterator[tuple[int, ...]]:
        return product(*(range(len(labels)) for labels in self.actions))


def make_game(
    actions: Sequence[Sequence[str]],
    payoff_fn: Callable[[tuple[int, ...]], Sequence],
) -> Game:
    """Build a Game by evaluating payoff_fn on every index profile."""
    acts = tuple(tuple(labels) for labels in actions)
    rows = []
    for prof in product(*(range(len(labels)) for labels in acts)):
        rows.append(tuple(rat(v) for v in payoff_fn(prof)))
    return Game(acts, tuple(rows))


@dataclass(frozen=True)
class MixedStrategy:
    """A probability distribution over one player's actions.

    A pure strategy is the special case with a single unit weight.
    """

    owner: int
    weights: tuple[Rat, ...]

    def __post_init__(self):
        if self.owner < 0:
            raise ParameterError("owner must be a player index")
        if not self.weights:
            raise ParameterError("a mixed strategy needs at least one weight")
        total = ZERO
        for w in self.weights:
            if w < 0:
                raise ParameterError(f"negative probability {w}")
            total += w
        if total != ONE:
            raise ParameterError(f"probabilities sum to {total}, not 1")

    @classmethod
    def pure(cls, owner: int, index: int, count: int) -> "MixedStrategy":
        return cls(owner, tuple(ONE if j == index else ZERO for j in range(count)))

    def support(self) -> tuple[int, ...]:
        return tuple(j for j, w in enumerate(self.weights) if w > 0)

    def is_pure(self) -> bool:
        return any(w == ONE for w in self.weights)

    def pure_index(self) -> int:
        for j, w in enumerate(self.weights):
            if w == ONE:
                return j
        raise MembershipError("strategy is not pure")

    def sort_key(self):
        return tuple((int(w.numerator), int(w.denominator)) for w in self.weights)

    def to_json(self):
        return [rat_json(w) for w in self.weights]


@dataclass(frozen=True)
class Polytope:
    """A closed convex set of one player's mixed strategies, listed by vertices."""

    owner: int
    vertices: tuple[MixedStrategy, ...]

    def __post_init__(self):
        if not self.vertices:
            raise ParameterError("a polytope needs at least one vertex")
        dim = len(self.vertices[0].weights)
        for v in self.vertices:
            if v.owner != self.owner:
                raise MembershipError(f"vertex owned by {v.owner} in player {self.owner}'s polytope")
            if len(v.weights) != dim:
                raise ParameterError("vertices of mixed dimension")

    @property
    def dimension(self) -> int:
        return len(self.vertices[0].weights)

    def to_json(self):
        return [v.to_json() for v in self.vertices]


def make_polytope(owner: int, vertices: Sequence[MixedStrategy]) -> Polytope:
    """Polytope with exact-duplicate vertices removed and a canonical order."""
    seen = {}
    for v in vertices:
        seen.setdefault(v.sort_key(), v)
    ordered = tuple(seen[k] for k in sorted(seen))
    return Polytope(owner, ordered)


def full_simplex(game: Game, player: int) -> Polytope:
    count = len(game.actions[player])
    return make_polytope(
        player, [MixedStrategy.pure(player, j, count) for j in range(count)]
    )


@dataclass(frozen=True)
class ProfileSpace:
    """A product S = S_1 x ... x S_n of per-player strategy sets.

    Pure mode stores sorted action-index subsets; mixed mode stores one
    polytope per player.  There is never cross-player coupling.
    """

    pure_sets: tuple[tuple[int, ...], ...] | None = None
    polytopes: tuple[Polytope, ...] | None = None

    def __post_init__(self):
        if (self.pure_sets is None) == (self.polytopes is None):
            raise ParameterError("exactly one of pure_sets / polytopes must be given")
        if self.pure_sets is not None:
            for i, s in enumerate(self.pure_sets):
                if not s:
                    raise ParameterError(f"player {i} has an empty strategy set")
                if tuple(sorted(set(s))) != s:
                    raise ParameterError(f"player {i}'s set must be sorted and duplicate-free")

    @property
    def mode(self) -> str:
        return "pure" if self.pure_sets is not None else "mixed"

    @property
    def n(self) -> int:
        return len(self.pure_sets if self.pure_sets is not None else self.polytopes)

    def with_player_set(self, player: int, new_set: Sequence[int]) -> "ProfileSpace":
        sets = list(self.pure_sets)
        sets[player] = tuple(sorted(set(new_set)))
        return ProfileSpace(pure_sets=tuple(sets))

    def with_player_polytope(self, player: int, poly: Polytope) -> "ProfileSpace":
        polys = list(self.polytopes)
        polys[player] = poly
        return ProfileSpace(polytopes=tuple(polys))

    def to_json(self, game: Game):
        if self.pure_sets is not None:
            return [[game.actions[i][a] for a in s] for i, s in enumerate(self.pure_sets)]
        return [p.to_json() for p in self.polytopes]


def pure_space(game: Game, sets: Sequence[Sequence[int]] | None = None) -> ProfileSpace:
    """Pure profile space; defaults to the full action sets."""
    if sets is None:
        sets = [range(len(labels)) for labels in game.actions]
    if len(sets) != game.n:
        raise ParameterError("one strategy set per player")
    out = []
    for i, s in enumerate(sets):
        s = tuple(sorted(set(s)))
        if any(a < 0 or a >= len(game.actions[i]) for a in s):
            raise MembershipError(f"player {i}: action index out of range")
        out.append(s)
    return ProfileSpace(pure_sets=tuple(out))


def pure_space_by_labels(game: Game, sets: Sequence[Sequence[str]]) -> ProfileSpace:
    return pure_space(
        game, [[game.action_index(i, a) for a in s] for i, s in enumerate(sets)]
    )


def mixed_space(game: Game, polytopes: Sequence[Polytope] | None = None) -> ProfileSpace:
    """Mixed profile space; defaults to the full simplices."""
    if polytopes is None:
        polytopes = [full_simplex(game, i) for i in range(game.n)]
    if len(polytopes) != game.n:
        raise ParameterError("one polytope per player")
    for i, p in enumerate(polytopes):
        if p.owner != i:
            raise MembershipError(f"polytope at position {i} is owned by player {p.owner}")
        if p.dimension != len(game.actions[i]):
            raise ParameterError(f"player {i}: polytope dimension mismatch")
    return ProfileSpace(polytopes=tuple(polytopes))


def expected_utility(game: Game, strategies: Sequence[MixedStrategy]) -> tuple[Rat, ...]:
    """Exact expected payoff vector under independent randomization.

    Agrees with Game.payoff on pure profiles; multilinear in each
    player's weight vector.
    """
    if len(strategies) != game.n:
        raise MembershipError(f"need {game.n} strategies, got {len(strategies)}")
    for i, s in enumerate(strategies):
        if s.owner != i:
            raise MembershipError(f"strategy at position {i} is owned by player {s.owner}")
        if len(s.weights) != len(game.actions[i]):
            raise MembershipError(f"player {i}: weight vector has wrong length")
    supports = [s.support() for s in strategies]
    totals = [ZERO] * game.n
    for prof in product(*supports):
        coeff = ONE
        for i, a in enumerate(prof):
            coeff *= strategies[i].weights[a]
        row = game.payoff(prof)
        for i in range(game.n):
            totals[i] += coeff * row[i]
    return tuple(totals)


# --- deletion traces ---------------------------------------------------------


@dataclass(frozen=True)
class TraceRound:
    """One deletion round: the space regrets were computed on, plus metadata.

    `reports` carries per-player regret reports for regret operators;
    `witnesses` carries domination witnesses for dominance operators.
    """

    space: object
    reports: tuple = ()
    witnesses: tuple = ()


@dataclass(frozen=True)
class DeletionTrace:
    """The nested sequence S^0 >= S^1 >= ... produced by iterating an operator."""

    operator: str
    rounds: tuple[TraceRound, ...]
    fixed_point: object
    converged: bool = True

    def shrinking_rounds(self) -> int:
        """Rounds that strictly removed something (the last round confirms)."""
        return len(self.rounds) - 1 if self.converged else len(self.rounds)

    def to_json(self, game: Game):
        rounds = []
        for r in self.rounds:
            entry = {"space": r.space.to_json(game)}
            if r.reports:
                entry["regrets"] = [rep.to_json(game) for rep in r.reports]
            if r.witnesses:
                entry["witnesses"] = [w.to_json(game) for w in r.witnesses]
            rounds.append(entry)
        return {
            "operator": self.operator,
            "rounds": rounds,
            "fixed_point": self.fixed_point.to_json(game),
            "converged": self.converged,
        }


# --- game-file round trip ----------------------------------------------------

_GAME_KEYS = {"players", "actions", "utilities"}


def load_game(text: str) -> Game:
    """Parse the JSON game-file format.

    {"players": n, "actions": [[labels...]...], "utilities": [[u_1..u_n]...]}
    with utilities row-major over action indices (last player fastest) and
    rationals as 'p/q' strings or integers.  Unknown keys are rejected.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise GameFormatError(
            f"parse error at line {e.lineno}, column {e.colno}: {e.msg}"
        ) from None
    if not isinstance(doc, dict):
        raise GameFormatError("top level must be a JSON object")
    unknown = set(doc) - _GAME_KEYS
    if unknown:
        raise GameFormatError(f"unknown keys: {sorted(unknown)}")
    missing = _GAME_KEYS - set(doc)
    if missing:
        raise GameFormatError(f"missing keys: {sorted(missing)}")
    actions = doc["actions"]
    if (
        not isinstance(actions, list)
        or not actions
        or not all(isinstance(s, list) and all(isinstance(a, str) for a in s) for s in actions)
    ):
        raise GameFormatError("actions must be a non-empty list of lists of strings")
    if doc["players"] != len(actions):
        raise GameFormatError(
            f"players = {doc['players']} but {len(actions)} action lists given"
        )
    acts = tuple(tuple(s) for s in actions)
    for i, labels in enumerate(acts):
        if len(set(labels)) != len(labels):
            raise DuplicateLabelError(f"player {i} has duplicate action labels")
    total = 1
    for labels in acts:
        total *= len(labels)
    utilities = doc["utilities"]
    if not isinstance(utilities, list):
        raise GameFormatError("utilities must be a list of payoff rows")
    if len(utilities) != total:
        shapes = [len(labels) for labels in acts]
        idx = min(len(utilities), total - 1)
        prof = []
        for stride_dim in range(len(shapes)):
            block = 1
            for m in range(stride_dim + 1, len(shapes)):
                block *= shapes[m]
            prof.append(acts[stride_dim][(idx // block) % shapes[stride_dim]])
        if len(utilities) < total:
            raise MissingProfileError(
                f"expected {total} payoff rows, got {len(utilities)}; "
                f"first absent profile: ({', '.join(prof)})"
            )
        raise GameFormatError(f"expected {total} payoff rows, got {len(utilities)}")
    rows = []
    for row in utilities:
        if not isinstance(row, list) or len(row) != len(acts):
            raise GameFormatError(f"payoff row {row!r} must list one value per player")
        try:
            rows.append(tuple(parse_rat_json(v) for v in row))
        except ValueError as e:
            raise GameFormatError(str(e)) from None
    return Game(acts, tuple(rows))


def dump_game(game: Game) -> str:
    """Serialize a game; load_game(dump_game(g)) == g, bit-exact."""
    lines = ['{']
    lines.append(f'  "players": {game.n},')
    lines.append(f'  "actions": {json.dumps([list(s) for s in game.actions])},')
    rows = [json.dumps([rat_json(v) for v in row]) for row in game.payoffs]
    lines.append('  "utilities": [')
    for j, row in enumerate(rows):
        comma = "," if j + 1 < len(rows) else ""
        lines.append(f"    {row}{comma}")
    lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"
