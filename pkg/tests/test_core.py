import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from regretlab.core import (
    DuplicateLabelError,
    Game,
    GameFormatError,
    MembershipError,
    MissingProfileError,
    MixedStrategy,
    ParameterError,
    dump_game,
    expected_utility,
    load_game,
    make_game,
)
from regretlab.generators import make_matching_pennies, make_rps, make_travelers_dilemma
from regretlab.rational import ONE, ZERO, rat

from conftest import random_game

PD_DOC = json.dumps(
    {
        "players": 2,
        "actions": [["c", "d"], ["c", "d"]],
        "utilities": [[3, 3], [0, 4], [4, 0], [1, 1]],
    }
)


def test_load_game_round_trips_a_pd_file():
    g = load_game(PD_DOC)
    assert g.n == 2
    assert g.utility(("c", "c")) == (rat(3), rat(3))
    assert g.utility(("d", "c")) == (rat(4), rat(0))
    assert load_game(dump_game(g)) == g


def test_load_game_missing_profile_is_named():
    doc = json.loads(PD_DOC)
    del doc["utilities"][2]
    with pytest.raises(MissingProfileError) as err:
        load_game(json.dumps(doc))
    assert "absent profile" in str(err.value)


def test_load_game_parses_exact_rationals():
    doc = json.loads(PD_DOC)
    doc["utilities"][0] = ["101/2", "101/2"]
    g = load_game(json.dumps(doc))
    assert g.utility(("c", "c")) == (rat(101, 2), rat(101, 2))


def test_load_game_rejects_bad_input():
    with pytest.raises(GameFormatError) as err:
        load_game("{not json")
    assert "line 1" in str(err.value)
    doc = json.loads(PD_DOC)
    doc["extra"] = 1
    with pytest.raises(GameFormatError, match="unknown keys"):
        load_game(json.dumps(doc))
    doc = json.loads(PD_DOC)
    doc["actions"][0] = ["c", "c"]
    with pytest.raises(DuplicateLabelError):
        load_game(json.dumps(doc))
    doc = json.loads(PD_DOC)
    doc["utilities"][0] = [0.5, 0.5]
    with pytest.raises(GameFormatError):
        load_game(json.dumps(doc))


def test_game_rejects_float_payoffs():
    with pytest.raises(TypeError):
        make_game([["a"], ["b"]], lambda prof: (0.5, 1))


def test_utility_checks_labels():
    g = load_game(PD_DOC)
    with pytest.raises(MembershipError):
        g.utility(("c", "x"))
    with pytest.raises(MembershipError):
        g.utility(("c",))


def test_travelers_dilemma_payoffs_from_the_story():
    g = make_travelers_dilemma(2)
    assert g.utility(("97", "97")) == (rat(97), rat(97))
    assert g.utility(("99", "100")) == (rat(101), rat(97))


def test_single_player_game_utility():
    g = make_game([["only"]], lambda prof: (7,))
    assert g.utility(("only",)) == (rat(7),)


def test_mixed_strategy_validation():
    with pytest.raises(ParameterError):
        MixedStrategy(0, (rat(1, 2), rat(1, 3)))
    with pytest.raises(ParameterError):
        MixedStrategy(0, (rat(3, 2), rat(-1, 2)))
    pure = MixedStrategy.pure(0, 1, 3)
    assert pure.is_pure() and pure.pure_index() == 1


def test_expected_utility_uniform_rps_is_one_one():
    g = make_rps()
    third = rat(1, 3)
    uniform = MixedStrategy(0, (third, third, third))
    uniform2 = MixedStrategy(1, (third, third, third))
    assert expected_utility(g, [uniform, uniform2]) == (ONE, ONE)


def test_expected_utility_matches_utility_on_pure_profiles():
    rng = random.Random(7)
    for _ in range(10):
        g = random_game(rng)
        for _ in range(10):
            prof = tuple(rng.randrange(len(a)) for a in g.actions)
            mixed = [
                MixedStrategy.pure(i, prof[i], len(g.actions[i])) for i in range(2)
            ]
            assert expected_utility(g, mixed) == g.payoff(prof)


def test_expected_utility_half_half_matching_pennies():
    g = make_matching_pennies()
    half = MixedStrategy(0, (rat(1, 2), rat(1, 2)))
    pure_a = MixedStrategy.pure(1, 0, 2)
    assert expected_utility(g, [half, pure_a]) == (rat(60), rat(60))


def test_expected_utility_is_multilinear():
    rng = random.Random(11)
    for _ in range(5):
        g = random_game(rng, max_actions=3)
        n0 = len(g.actions[0])
        w1 = [rat(rng.randint(0, 5)) for _ in range(n0)]
        w2 = [rat(rng.randint(0, 5)) for _ in range(n0)]
        if sum(w1, ZERO) == 0 or sum(w2, ZERO) == 0:
            continue
        s1 = MixedStrategy(0, tuple(w / sum(w1, ZERO) for w in w1))
        s2 = MixedStrategy(0, tuple(w / sum(w2, ZERO) for w in w2))
        opp = MixedStrategy.pure(1, rng.randrange(len(g.actions[1])), len(g.actions[1]))
        t = rat(rng.randint(0, 4), 4)
        blend = MixedStrategy(
            0,
            tuple(t * a + (1 - t) * b for a, b in zip(s1.weights, s2.weights)),
        )
        lhs = expected_utility(g, [blend, opp])
        u1 = expected_utility(g, [s1, opp])
        u2 = expected_utility(g, [s2, opp])
        rhs = tuple(t * a + (1 - t) * b for a, b in zip(u1, u2))
        assert lhs == rhs


def test_expected_utility_rejects_wrong_owner():
    g = make_rps()
    third = rat(1, 3)
    with pytest.raises(MembershipError):
        expected_utility(g, [MixedStrategy(1, (third,) * 3), MixedStrategy(1, (third,) * 3)])


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_serialization_round_trip_random_games(data):
    shape = (
        data.draw(st.integers(1, 3), label="rows"),
        data.draw(st.integers(1, 3), label="cols"),
    )
    labels = tuple(tuple(f"p{i}a{j}" for j in range(shape[i])) for i in range(2))
    rows = tuple(
        (
            rat(data.draw(st.integers(-50, 50)), data.draw(st.integers(1, 9))),
            rat(data.draw(st.integers(-50, 50)), data.draw(st.integers(1, 9))),
        )
        for _ in range(shape[0] * shape[1])
    )
    g = Game(labels, rows)
    assert load_game(dump_game(g)) == g
