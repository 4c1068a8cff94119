import json
import random

import pytest

from regretlab.core import MembershipError, pure_space, pure_space_by_labels
from regretlab.generators import (
    make_bargaining,
    make_bertrand,
    make_example_game,
    make_hawk_dove,
    make_matching_pennies,
    make_pd,
    make_staircase,
    make_travelers_dilemma,
)
from regretlab.pure import (
    conditional_regret,
    dominant_actions,
    max_regret,
    regret_report,
    rm_iterate,
    rm_step,
    serialize_trace,
)
from regretlab.rational import rat

from conftest import brute_force_rm_step, random_game


def labels(game, player, actions):
    return [game.actions[player][a] for a in actions]


def test_conditional_regret_travelers_dilemma():
    g = make_travelers_dilemma(2)
    sp = pure_space(g)
    a100 = g.action_index(0, "100")
    a2 = g.action_index(0, "2")
    opp100 = (g.action_index(1, "100"),)
    assert conditional_regret(g, sp, 0, a100, opp100) == rat(1)
    assert conditional_regret(g, sp, 0, a2, opp100) == rat(97)


def test_conditional_regret_zero_for_best_response():
    g = make_pd(1, 3, 4)
    sp = pure_space(g)
    d = g.action_index(0, "d")
    assert conditional_regret(g, sp, 0, d, (g.action_index(1, "c"),)) == 0
    with pytest.raises(MembershipError):
        conditional_regret(g, sp, 0, 5, (0,))


def test_max_regret_values():
    td = make_travelers_dilemma(2)
    sp = pure_space(td)
    for m in range(96, 101):
        assert max_regret(td, sp, 0, td.action_index(0, str(m))) == rat(3)
    assert max_regret(td, sp, 0, td.action_index(0, "95")) == rat(4)
    bert = make_bertrand()
    assert max_regret(bert, pure_space(bert), 0, bert.action_index(0, "100")) == rat(9900)
    barg = make_bargaining()
    assert max_regret(barg, pure_space(barg), 0, barg.action_index(0, "50")) == rat(50)


def test_rm_step_travelers_dilemma():
    g = make_travelers_dilemma(2)
    space, reports = rm_step(g, pure_space(g))
    want = [str(m) for m in range(96, 101)]
    assert space.to_json(g) == [want, want]
    space2, _ = rm_step(g, space)
    assert space2.to_json(g) == [["97"], ["97"]]


def test_rm_step_restricted_space_by_labels():
    g = make_travelers_dilemma(2)
    sp = pure_space_by_labels(g, [[str(m) for m in range(96, 101)]] * 2)
    space, _ = rm_step(g, sp)
    assert space.to_json(g) == [["97"], ["97"]]


def test_rm_step_hawk_dove():
    g = make_hawk_dove(2, 3, 4)
    space, reports = rm_step(g, pure_space(g))
    assert space.to_json(g) == [["d"], ["d"]]
    assert reports[0].minregret == rat(1)  # c - b


def test_rm_iterate_examples():
    bert = make_bertrand()
    assert rm_iterate(bert).fixed_point.to_json(bert) == [["100"], ["100"]]
    barg = make_bargaining()
    assert rm_iterate(barg).fixed_point.to_json(barg) == [["50"], ["50"]]
    mp = make_matching_pennies(asymmetric=True)
    tr = rm_iterate(mp)
    assert tr.fixed_point.to_json(mp) == [["a"], ["b"]]
    assert tr.shrinking_rounds() == 2


def test_rm_iterate_staircase_shrinks_one_per_round():
    for n in (3, 5):
        g = make_staircase(n)
        tr = rm_iterate(g)
        assert tr.fixed_point.to_json(g) == [["a1"], ["a1"]]
        assert tr.shrinking_rounds() == n - 1
        sizes = [len(r.space.pure_sets[0]) for r in tr.rounds]
        assert sizes == list(range(n, 0, -1))


def test_dominant_actions():
    pd = make_pd(1, 3, 4)
    assert labels(pd, 0, dominant_actions(pd, 0)) == ["d"]
    assert labels(pd, 1, dominant_actions(pd, 1)) == ["d"]
    td = make_travelers_dilemma(2)
    assert dominant_actions(td, 0) == ()
    one = make_example_game("coordination", k=2)
    restricted = one  # two actions, no dominant one
    assert dominant_actions(restricted, 0) == ()


def test_dominant_action_theorem_on_pd():
    g = make_pd(1, 3, 4)
    for i in (0, 1):
        dom = dominant_actions(g, i)
        assert dom
        rep = regret_report(g, pure_space(g), i)
        assert rep.argmin == dom
    tr = rm_iterate(g)
    assert tr.fixed_point.pure_sets == (dominant_actions(g, 0), dominant_actions(g, 1))


SUITE_GAMES = [
    ("td-p2", lambda: make_travelers_dilemma(2)),
    ("td-p5", lambda: make_travelers_dilemma(5)),
    ("bargaining", make_bargaining),
    ("staircase-5", lambda: make_staircase(5)),
    ("hawk-dove", lambda: make_hawk_dove(2, 3, 4)),
    ("pd", lambda: make_pd(1, 3, 4)),
    ("matching-pennies", make_matching_pennies),
    ("asym-mp", lambda: make_matching_pennies(asymmetric=True)),
    ("sd-vs-rm", lambda: make_example_game("sd_vs_rm")),
]


@pytest.mark.parametrize("name,builder", SUITE_GAMES)
def test_nesting_nonemptiness_and_fixed_point(name, builder):
    g = builder()
    tr = rm_iterate(g)
    previous = None
    for rnd in tr.rounds:
        sets = rnd.space.pure_sets
        assert all(sets[i] for i in range(g.n))
        if previous is not None:
            for i in range(g.n):
                assert set(sets[i]) <= set(previous[i])
        previous = sets
    again, _ = rm_step(g, tr.fixed_point)
    assert again == tr.fixed_point


def test_rm_step_matches_brute_force_on_random_games():
    rng = random.Random(42)
    for _ in range(200):
        g = random_game(rng)
        space, reports = rm_step(g, pure_space(g))
        assert [list(s) for s in space.pure_sets] == brute_force_rm_step(g)


def test_argmin_is_scale_invariant():
    rng = random.Random(99)
    for _ in range(40):
        g = random_game(rng, max_actions=4)
        scale = rat(rng.randint(1, 5), rng.randint(1, 5))
        shift = rat(rng.randint(-5, 5))
        player = rng.randrange(2)
        rows = []
        for row in g.payoffs:
            row = list(row)
            row[player] = scale * row[player] + shift
            rows.append(tuple(row))
        g2 = type(g)(g.actions, tuple(rows))
        s1, _ = rm_step(g, pure_space(g))
        s2, _ = rm_step(g2, pure_space(g2))
        assert s1 == s2


def test_trace_serialization_schema():
    g = make_staircase(3)
    tr = rm_iterate(g)
    doc = serialize_trace(g, tr)
    assert doc["operator"] == "RM"
    assert doc["fixed_point"] == [["a1"], ["a1"]]
    first = doc["rounds"][0]
    assert first["space"] == [["a1", "a2", "a3"], ["a1", "a2", "a3"]]
    assert first["regrets"][0]["argmin"] == ["a1", "a2"]
    json.dumps(doc)  # must be JSON-ready as-is
