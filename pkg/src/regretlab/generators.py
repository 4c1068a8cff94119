"""Generators for the worked example games.

Every generator reproduces its source table verbatim (including the
non-zero-sum matching-pennies payoffs) and validates its parameter range.
"""

from __future__ import annotations

from itertools import product

from .core import Game, ParameterError, make_game
from .rational import ONE, ZERO, Rat, rat


def make_travelers_dilemma(p: int, low: int = 2, high: int = 100) -> Game:
    """Two travelers claim an amount in [low, high]; the lower claim m wins
    m+p, the higher claim gets m-p, equal claims pay face value."""
    if low >= high:
        raise ParameterError(f"low must be below high, got {low} >= {high}")
    if p < 2:
        raise ParameterError(f"penalty/reward must be at least 2, got {p}")
    labels = tuple(str(m) for m in range(low, high + 1))
    claims = list(range(low, high + 1))

    def pay(prof):
        m, n = claims[prof[0]], claims[prof[1]]
        if m == n:
            return (m, m)
        if m < n:
            return (m + p, m - p)
        return (n - p, n + p)

    return make_game((labels, labels), pay)


def make_centipede(k: int, payoffs: str = "exponential", p: int | None = None) -> Game:
    """Reduced normal form of the k-round centipede game.

    Player 1's actions are the odd stopping classes [1],[3],...; player 2's
    the even ones.  The earlier stopper determines the outcome: exponential
    payoffs are (2^t+1, 2^t-1) at odd t and (2^{t-1}, 2^t) at even t;
    linear payoffs with punishment p are (t, t-p) at odd t and (t-p, t).
    """
    if k < 2:
        raise ParameterError(f"need at least 2 rounds, got {k}")
    if payoffs == "linear":
        if p is None or p <= 1:
            raise ParameterError("linear payoffs need punishment p > 1")
    elif payoffs == "exponential":
        if p is not None:
            raise ParameterError("exponential payoffs take no punishment")
    else:
        raise ParameterError(f"unknown payoff mode {payoffs!r}")
    odd = [t for t in range(1, k + 1) if t % 2 == 1]
    even = [t for t in range(1, k + 1) if t % 2 == 0]

    def outcome(t):
        if payoffs == "exponential":
            if t % 2 == 1:
                return (2**t + 1, 2**t - 1)
            return (2 ** (t - 1), 2**t)
        if t % 2 == 1:
            return (t, t - p)
        return (t - p, t)

    def pay(prof):
        stop = min(odd[prof[0]], even[prof[1]])
        return outcome(stop)

    labels = (tuple(f"[{t}]" for t in odd), tuple(f"[{t}]" for t in even))
    return make_game(labels, pay)


def _symmetric(labels, row_payoffs) -> Game:
    def pay(prof):
        i, j = prof
        return (row_payoffs[i][j], row_payoffs[j][i])

    return make_game((tuple(labels), tuple(labels)), pay)


def _table(labels1, labels2, cells) -> Game:
    def pay(prof):
        return cells[prof[0]][prof[1]]

    return make_game((tuple(labels1), tuple(labels2)), pay)


def make_bertrand(max_price: int = 200, units: int = 100) -> Game:
    """Price competition: the lower price sells all units, ties split them."""

    def pay(prof):
        m, n = prof
        if m == n:
            return (rat(units * m, 2), rat(units * n, 2))
        if m < n:
            return (units * m, 0)
        return (0, units * n)

    labels = tuple(str(c) for c in range(max_price + 1))
    return make_game((labels, labels), pay)


def make_bargaining(total: int = 100) -> Game:
    """Demands x and y pay out as claimed when x+y <= total, else nothing."""

    def pay(prof):
        x, y = prof
        if x + y <= total:
            return (x, y)
        return (0, 0)

    labels = tuple(str(x) for x in range(total + 1))
    return make_game((labels, labels), pay)


def make_matching_pennies(asymmetric: bool = False) -> Game:
    top = 320 if asymmetric else 80
    return _table(
        "ab",
        "ab",
        [[(top, 40), (40, 80)], [(40, 80), (80, 40)]],
    )


def make_coordination(k: int) -> Game:
    if k < 1:
        raise ParameterError(f"coordination payoff k must be >= 1, got {k}")
    return _table("ab", "ab", [[(k, k), (0, 0)], [(0, 0), (1, 1)]])


def make_hawk_dove(a: int | Rat, b: int | Rat, c: int | Rat) -> Game:
    a, b, c = rat(a), rat(b), rat(c)
    if not (ZERO < a < b < c):
        raise ParameterError(f"need 0 < a < b < c, got {a}, {b}, {c}")
    return _table("dh", "dh", [[(b, b), (a, c)], [(c, a), (ZERO, ZERO)]])


def make_rps() -> Game:
    beats = {("r", "s"), ("s", "p"), ("p", "r")}
    labels = ("r", "s", "p")

    def cell(x, y):
        if x == y:
            return (1, 1)
        return (2, 0) if (x, y) in beats else (0, 2)

    return _table(labels, labels, [[cell(x, y) for y in labels] for x in labels])


def make_pd(u1: int | Rat, u2: int | Rat, u3: int | Rat) -> Game:
    u1, u2, u3 = rat(u1), rat(u2), rat(u3)
    if not (ZERO < u1 < u2 < u3):
        raise ParameterError("need 0 < u1 < u2 < u3")
    if not (u2 * 2 > u3):
        raise ParameterError("need u2 > u3/2")
    return _table(
        "cd",
        "cd",
        [[(u2, u2), (ZERO, u3)], [(u3, ZERO), (u1, u1)]],
    )


def make_sd_vs_rm() -> Game:
    return _table("ab", "xy", [[(0, 100), (0, 0)], [(1, 0), (1, 1)]])


def make_staircase(n: int) -> Game:
    """Diagonal cell k pays k; one step below the diagonal pays -2; else 0."""
    if n < 2:
        raise ParameterError(f"need at least 2 actions, got {n}")
    rows = [
        [(i + 1 if i == j else (-2 if i == j + 1 else 0)) for j in range(n)]
        for i in range(n)
    ]
    return _symmetric(tuple(f"a{i + 1}" for i in range(n)), rows)


def make_gencoord() -> Game:
    return _table("ab", "ab", [[(1, 1), (0, -10)], [(-10, 0), (10, 10)]])


def make_differ() -> Game:
    rows = [[5, 2, 1], [0, 3, 1], [3, 1, 4]]
    return _symmetric(("a", "b", "c"), rows)


def make_mixed_multiround(n: int, base: int = 3) -> Game:
    """2n-action symmetric game whose mixed deletion runs n rounds.

    u_1(a_ij, a_kl) = -base^max(i,k) off-tier, 0 on matched pairs, and
    -base^{i+1} on same-tier mismatches.
    """
    if n < 1:
        raise ParameterError(f"need at least one tier, got {n}")
    if base < 2:
        raise ParameterError(f"base must be >= 2, got {base}")
    pairs = [(m, k) for m in range(1, n + 1) for k in (1, 2)]
    labels = tuple(f"a{m}{k}" for m, k in pairs)

    def row(iidx, jidx):
        i, j = pairs[iidx]
        k, l = pairs[jidx]
        if i != k:
            return -(base ** max(i, k))
        if j == l:
            return 0
        return -(base ** (i + 1))

    rows = [[row(x, y) for y in range(len(pairs))] for x in range(len(pairs))]
    return _symmetric(labels, rows)


# --- repeated prisoner's dilemma ---------------------------------------------

REPEATED_PD_MAX_ROUNDS = 3


def pd_strategy_count(rounds: int) -> int:
    """Deterministic reactive plans: one move per opponent-history, 2^(2^rounds - 1)."""
    return 2 ** (2**rounds - 1)


def pd_move(strategy: int, opp_history: tuple[int, ...]) -> int:
    """Decode a strategy integer's move (0=c, 1=d) after seeing opp_history.

    Decision points are numbered breadth-first: round t's table occupies
    bits [2^(t-1) - 1, 2^t - 1), indexed by the opponent history bits.
    """
    t = len(opp_history)
    offset = 2**t - 1
    slot = 0
    for m in opp_history:
        slot = slot * 2 + m
    return (strategy >> (offset + slot)) & 1


def pd_play(rounds: int, s1: int, s2: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Move sequences when two encoded strategies play each other."""
    h1: tuple[int, ...] = ()
    h2: tuple[int, ...] = ()
    for _ in range(rounds):
        m1 = pd_move(s1, h2)
        m2 = pd_move(s2, h1)
        h1 = h1 + (m1,)
        h2 = h2 + (m2,)
    return h1, h2


def pd_score(moves1, moves2, u1: Rat, u2: Rat, u3: Rat) -> tuple[Rat, Rat]:
    a = b = ZERO
    for m1, m2 in zip(moves1, moves2):
        if m1 == 0 and m2 == 0:
            a, b = a + u2, b + u2
        elif m1 == 1 and m2 == 1:
            a, b = a + u1, b + u1
        elif m1 == 1:
            a, b = a + u3, b
        else:
            a, b = a, b + u3
    return a, b


def make_repeated_pd(rounds: int, u1, u2, u3) -> Game:
    """Full strategy normal form of the rounds-fold prisoner's dilemma.

    Strategies are deterministic history-contingent plans; the tensor has
    2^(2^rounds - 1) actions per player, so materialization stops at
    rounds <= 3 (the always-defect oracle handles 4 without a tensor).
    """
    if rounds < 1:
        raise ParameterError("need at least one round")
    if rounds > REPEATED_PD_MAX_ROUNDS:
        raise ParameterError(
            f"rounds={rounds} would materialize {pd_strategy_count(rounds)}^2 profiles; "
            f"cap is {REPEATED_PD_MAX_ROUNDS} (use always_defect_regret for n=4)"
        )
    u1, u2, u3 = rat(u1), rat(u2), rat(u3)
    if not (ZERO < u1 < u2 < u3) or not (u2 * 2 > u3):
        raise ParameterError("need 0 < u1 < u2 < u3 and u2 > u3/2")
    count = pd_strategy_count(rounds)
    labels = tuple(f"s{code}" for code in range(count))

    def pay(prof):
        m1, m2 = pd_play(rounds, prof[0], prof[1])
        return pd_score(m1, m2, u1, u2, u3)

    return make_game((labels, labels), pay)


# --- name-based dispatch ------------------------------------------------------

GENERATORS = {
    "travelers_dilemma": (make_travelers_dilemma, ("p", "low", "high")),
    "centipede": (make_centipede, ("k", "payoffs", "p")),
    "bertrand": (make_bertrand, ("max_price", "units")),
    "bargaining": (make_bargaining, ("total",)),
    "matching_pennies": (make_matching_pennies, ()),
    "asym_matching_pennies": (lambda: make_matching_pennies(asymmetric=True), ()),
    "coordination": (make_coordination, ("k",)),
    "hawk_dove": (make_hawk_dove, ("a", "b", "c")),
    "rps": (make_rps, ()),
    "pd": (make_pd, ("u1", "u2", "u3")),
    "sd_vs_rm": (make_sd_vs_rm, ()),
    "staircase": (make_staircase, ("n",)),
    "gencoord": (make_gencoord, ()),
    "differ": (make_differ, ()),
    "mixed_multiround": (make_mixed_multiround, ("n", "base")),
    "repeated_pd": (make_repeated_pd, ("rounds", "u1", "u2", "u3")),
}


def make_example_game(name: str, **params) -> Game:
    """Build a named example game; parameter names follow the generators."""
    key = name.replace("-", "_")
    if key not in GENERATORS:
        raise ParameterError(f"unknown game {name!r}; known: {sorted(GENERATORS)}")
    fn, allowed = GENERATORS[key]
    unknown = set(params) - set(allowed)
    if unknown:
        raise ParameterError(f"{name} takes {allowed}, not {sorted(unknown)}")
    return fn(**params)
