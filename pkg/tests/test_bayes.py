import json
from itertools import product

import pytest

from regretlab.bayes import (
    BayesianGame,
    combinatorial_first_price_revenue,
    dump_bayesian_game,
    expected_regret,
    full_typed_space,
    load_bayesian_game,
    make_auction,
    mechanism_bound_probe,
    rm_bayes_iterate,
    rm_bayes_step,
    strategic_projection,
    truthful_strategy,
)
from regretlab.core import GameFormatError, MembershipError, ParameterError, pure_space
from regretlab.generators import make_pd
from regretlab.pure import rm_iterate
from regretlab.rational import ONE, ZERO, rat


def small_first_price():
    return make_auction("first_price", [[2, 4], [2, 4]], max_bid=4)


def test_bayesian_game_validation():
    with pytest.raises(ParameterError):
        BayesianGame(
            types=(("t",),),
            actions=(("a",),),
            prior=(rat(1, 2),),
            utilities=((ONE,),),
        )
    with pytest.raises(ParameterError):
        make_auction("first_price", [[3], [2]], max_bid=4)  # odd valuation
    with pytest.raises(ParameterError):
        make_auction("dutch", [[2], [2]], max_bid=4)


def test_auction_mechanics_match_the_rules():
    bg = make_auction("second_price", [[8], [4]], max_bid=8)
    # bids (5, 3): player 1 wins, pays 3, valuation 8 -> utility 5
    t = (0, 0)
    a = (5, 3)
    assert bg.payoff(a, t) == (rat(5), ZERO)
    # tie goes to the lower-numbered player
    assert bg.payoff((3, 3), t) == (rat(5), ZERO)
    # no sale when every bid is zero
    assert bg.payoff((0, 0), t) == (ZERO, ZERO)
    fp = make_auction("first_price", [[8], [4]], max_bid=8)
    assert fp.payoff((5, 3), t) == (rat(3), ZERO)


def test_file_round_trip():
    bg = small_first_price()
    doc = dump_bayesian_game(bg)
    again = load_bayesian_game(doc)
    assert again == bg
    broken = json.loads(doc)
    broken["surprise"] = 1
    with pytest.raises(GameFormatError):
        load_bayesian_game(json.dumps(broken))


def test_second_price_truthful_bidding_has_zero_expected_regret():
    bg = make_auction("second_price", [[2, 4, 6], [2, 4, 6]], max_bid=6)
    space = full_typed_space(bg)
    for i in range(2):
        plan = truthful_strategy(bg, i)
        for t in range(3):
            assert expected_regret(bg, space, i, t, plan.choices[t]) == ZERO
    trace = rm_bayes_iterate(bg)
    for i in range(2):
        plan = truthful_strategy(bg, i)
        for t in range(3):
            assert plan.choices[t] in trace.fixed_point.sets[i][t]


def test_non_truthful_bids_with_different_outcomes_have_positive_regret():
    bg = make_auction("second_price", [[2, 4], [2, 4]], max_bid=4)
    space = full_typed_space(bg)
    # valuation 4, bid 0: misses a sure winning trade against a 0 bid
    v4 = bg.types[0].index("4")
    zero_bid = bg.actions[0].index("0")
    assert expected_regret(bg, space, 0, v4, zero_bid) > ZERO


def test_first_price_regret_formula_brute_force():
    max_bid = 20
    valuations = [v for v in range(2, 21, 2)]
    bg = make_auction("first_price", [valuations, valuations], max_bid=max_bid)
    space = full_typed_space(bg)
    for player in range(2):
        for t, v in enumerate(valuations):
            for bid in range(max_bid + 1):
                want = max(rat(bid - 1), rat(v - bid - 1), ZERO)
                got = expected_regret(bg, space, player, t, bid)
                assert got == want, (player, v, bid)


def test_first_price_unique_minimizer_is_half_the_valuation():
    valuations = [v for v in range(2, 21, 2)]
    bg = make_auction("first_price", [valuations, valuations], max_bid=20)
    trace = rm_bayes_iterate(bg)
    for i in range(2):
        for t, v in enumerate(valuations):
            assert trace.fixed_point.sets[i][t] == (bg.actions[i].index(str(v // 2)),)
    reports = trace.rounds[0].reports
    by_cell = {(r.player, r.type_index): r for r in reports}
    for i in range(2):
        for t, v in enumerate(valuations):
            assert by_cell[(i, t)].minregret == rat(v, 2) - 1


def test_degenerate_prior_reduces_to_the_strategic_game():
    g = make_pd(1, 3, 4)
    rows = []
    for aprof in product(range(2), range(2)):
        rows.append(g.payoff(aprof))
    bg = BayesianGame(
        types=(("only",), ("only",)),
        actions=g.actions,
        prior=(ONE,),
        utilities=tuple(rows),
    )
    assert strategic_projection(bg) == g
    btrace = rm_bayes_iterate(bg)
    strace = rm_iterate(g)
    assert btrace.fixed_point.sets == (
        (strace.fixed_point.pure_sets[0],),
        (strace.fixed_point.pure_sets[1],),
    )


def test_conditional_expectation_consistency():
    bg = small_first_price()
    space = full_typed_space(bg)
    from regretlab.bayes import _profile_regret

    for player in range(2):
        plan = truthful_strategy(bg, player)
        lhs = ZERO
        for t in range(len(bg.types[player])):
            lhs += bg.type_marginal(player, t) * expected_regret(
                bg, space, player, t, plan.choices[t]
            )
        rhs = ZERO
        for tprof in bg.type_profiles():
            rhs += bg.prior_of(tprof) * _profile_regret(
                bg, space, player, plan.choices[tprof[player]], tprof
            )
        assert lhs == rhs


def test_expected_regret_membership_check():
    bg = small_first_price()
    space = full_typed_space(bg)
    step, _ = rm_bayes_step(bg, space)
    with pytest.raises(MembershipError):
        expected_regret(bg, step, 0, 0, 0)  # bid 0 already deleted for type 2


def test_single_type_single_action_fixed_point():
    bg = BayesianGame(
        types=(("t",), ("t",)),
        actions=(("a",), ("a",)),
        prior=(ONE,),
        utilities=((ONE, ONE),),
    )
    trace = rm_bayes_iterate(bg)
    assert trace.fixed_point == full_typed_space(bg)
    assert trace.shrinking_rounds() == 0


def test_mechanism_bound_probe_golden_threshold():
    probe = mechanism_bound_probe(rat(1, 2), 100)
    assert probe["below_golden_threshold"] is True
    assert probe["first_consistency_violation"] is None
    last = probe["rows"][-1]
    assert last["v"] == 100
    assert last["forced_regret_lb"] == 49
    assert last["first_price_regret"] == 49
    row90 = next(r for r in probe["rows"] if r["v"] == 90)
    assert row90["alpha_bid_regret_bound"] == 60
    above = mechanism_bound_probe(rat(63, 100), 100)
    assert above["below_golden_threshold"] is False
    assert above["first_consistency_violation"] == 62
    below = mechanism_bound_probe(rat(3, 5), 100)
    assert below["below_golden_threshold"] is True
    assert below["first_consistency_violation"] is None


def test_forced_regret_enumeration_matches_the_bound():
    probe = mechanism_bound_probe(rat(1, 2), 40)
    for row in probe["rows"]:
        v = row["v"]
        lb = rat(str(row["forced_regret_lb"])) if isinstance(row["forced_regret_lb"], str) else rat(row["forced_regret_lb"])
        assert rat(row["min_enumerated_forced_regret"]) >= lb


def test_combinatorial_half_bid_revenue():
    revenue, msw, _ = combinatorial_first_price_revenue([{(0,): 10}, {(0,): 6}], 1)
    assert (revenue, msw) == (rat(5), rat(10))
    revenue, msw, _ = combinatorial_first_price_revenue([{(0,): 6}, {(0,): 6}], 1)
    assert revenue * 2 == msw
    # additive two-item valuations
    revenue, msw, _ = combinatorial_first_price_revenue(
        [{(0,): 3, (1,): 5, (0, 1): 8}, {(0,): 4, (1,): 2, (0, 1): 6}], 2
    )
    assert msw == rat(9)  # item 0 to bidder 2, item 1 to bidder 1
    assert revenue * 2 >= msw
    with pytest.raises(ParameterError):
        combinatorial_first_price_revenue([{(0,): 1}] * 4, 1)
    with pytest.raises(ParameterError):
        combinatorial_first_price_revenue([{(0,): 1}], 2)  # bundle (1,) unpriced
