"""The reproduction manifest: every headline computation, its expected
value, and a PASS / FAIL / REPORTED verdict.

PASS/FAIL claims carry embedded expected values.  REPORTED claims are
adjudications: the computation is sound but the quoted source value
needed correcting, so both sides are shown without a pass verdict.
DERIVED claims have no embedded expectation; `record` stores the oracle's
first output and `check` compares against the store.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable

from . import (
    bayes,
    beliefs,
    compare,
    core,
    generators,
    mixed,
    pure,
)
from .core import mixed_space, pure_space
from .rational import ONE, ZERO, rat, rat_json

PASS = "PASS"
FAIL = "FAIL"
REPORTED = "REPORTED"
DERIVED = "DERIVED"


@dataclass(frozen=True)
class Claim:
    id: str
    description: str
    kind: str  # "paper" | "reported" | "derived"
    compute: Callable[[], object]
    expected: object = None


def _fixed_point_labels(game, trace):
    return trace.fixed_point.to_json(game)


def _td_pure(p):
    g = generators.make_travelers_dilemma(p)
    return _fixed_point_labels(g, pure.rm_iterate(g))


def _td_round1(p):
    g = generators.make_travelers_dilemma(p)
    _, reports = pure.rm_step(g, pure_space(g))
    return [[g.actions[i][a] for a in rep.argmin] for i, rep in enumerate(reports)]


def _bertrand():
    g = generators.make_bertrand()
    tr = pure.rm_iterate(g)
    first = tr.rounds[0].reports
    return {
        "round1": [[g.actions[i][a] for a in rep.argmin] for i, rep in enumerate(first)],
        "fixed": _fixed_point_labels(g, tr),
        "regret_of_100": rat_json(pure.max_regret(g, pure_space(g), 0, g.action_index(0, "100"))),
    }


def _bargaining():
    g = generators.make_bargaining()
    tr = pure.rm_iterate(g)
    first = tr.rounds[0].reports
    nash = compare.pure_nash(g)
    nash_set = {tuple(g.actions[i][a] for i, a in enumerate(p)) for p in nash}
    diagonal_ok = all((str(x), str(100 - x)) in nash_set for x in range(101))
    return {
        "round1": [[g.actions[i][a] for a in rep.argmin] for i, rep in enumerate(first)],
        "fixed": _fixed_point_labels(g, tr),
        "all_(x,100-x)_nash": diagonal_ok,
    }


def _centipede_exp():
    g = generators.make_centipede(10, "exponential")
    _, reports = pure.rm_step(g, pure_space(g))
    return [[g.actions[i][a] for a in rep.argmin] for i, rep in enumerate(reports)]


def _centipede_linear_even():
    g = generators.make_centipede(10, "linear", p=2)
    return _fixed_point_labels(g, pure.rm_iterate(g))


def _centipede_linear_odd():
    g = generators.make_centipede(9, "linear", p=3)
    tr = pure.rm_iterate(g)
    return {"shrinking_rounds": tr.shrinking_rounds(), "fixed": _fixed_point_labels(g, tr)}


def _hawk_dove():
    g = generators.make_hawk_dove(2, 3, 4)
    tr = pure.rm_iterate(g)
    rep = pure.regret_report(g, pure_space(g), 0)
    return {"fixed": _fixed_point_labels(g, tr), "minregret": rat_json(rep.minregret)}


def _pd():
    g = generators.make_pd(1, 3, 4)
    return {
        "fixed": _fixed_point_labels(g, pure.rm_iterate(g)),
        "dominant": [[g.actions[i][a] for a in pure.dominant_actions(g, i)] for i in range(2)],
    }


def _staircase(n):
    g = generators.make_staircase(n)
    tr = pure.rm_iterate(g)
    return {"shrinking_rounds": tr.shrinking_rounds(), "fixed": _fixed_point_labels(g, tr)}


def _mixed_point(game, player):
    value, witness = mixed.min_mixed_regret(game, mixed_space(game), player)
    return {"value": rat_json(value), "witness": witness.to_json()}


def _mixed_mp():
    return _mixed_point(generators.make_matching_pennies(), 0)


def _mixed_asym_mp():
    g = generators.make_matching_pennies(asymmetric=True)
    return {"p1": _mixed_point(g, 0), "p2": _mixed_point(g, 1)}


def _mixed_coordination(k):
    return _mixed_point(generators.make_coordination(k), 0)


def _mixed_rps():
    g = generators.make_rps()
    out = _mixed_point(g, 0)
    out["argmin_vertices"] = [v.to_json() for v in mixed.argmin_polytope(g, mixed_space(g), 0).vertices]
    return out


def _td_mixed_lemma():
    g = generators.make_travelers_dilemma(2)
    space = mixed_space(g)
    count = len(g.actions[0])
    weights = [ZERO] * count
    for j in range(98):
        weights[g.action_index(0, str(100 - j))] = rat(1, 2 ** (j + 1))
    weights[g.action_index(0, "2")] = rat(1, 2**98)
    sigma = core.MixedStrategy(0, tuple(weights))
    exp_regret = mixed.mixed_regret(g, space, 0, sigma)
    value, witness = mixed.min_mixed_regret(g, space, 0)
    mass_ok = True
    cumulative = ZERO
    for k in range(2, 99):
        cumulative += witness.weights[g.action_index(0, str(k))]
        if cumulative > rat(3, 99 - k):
            mass_ok = False
            break
    return {
        "exponential_strategy_regret_below_3": exp_regret < 3,
        "optimum_in_interval": bool(rat(29, 10) < value < 3),
        "optimum": rat_json(value),
        "cumulative_mass_bounds_hold": mass_ok,
    }


def _mixed_multiround():
    g = generators.make_mixed_multiround(3, base=3)
    tr = mixed.rm_mixed_iterate(g)
    return {
        "shrinking_rounds": tr.shrinking_rounds(),
        "fixed": tr.fixed_point.to_json(g),
        "converged": tr.converged,
    }


def _belief_identity():
    games = {
        "travelers_dilemma_p2": generators.make_travelers_dilemma(2),
        "bertrand": generators.make_bertrand(),
        "bargaining": generators.make_bargaining(),
        "staircase_5": generators.make_staircase(5),
    }
    all_match = True
    for g in games.values():
        space = pure_space(g)
        rm_k = space
        for k in (1, 2, 3):
            rm_k, _ = pure.rm_step(g, rm_k)
            belief = beliefs.justifiable_belief(g, k)
            trace = beliefs.rationality_trace(g, belief)
            if trace.final != rm_k:
                all_match = False
    return {"rational_sets_equal_rm_k": all_match}


def _differ_tables():
    g = generators.make_differ()
    sigma = core.MixedStrategy(1, (rat(1, 6), rat(1, 2), rat(1, 3)))
    opp = [sigma]
    count = len(g.actions[0])
    prime = {}
    plain = {}
    for j, label in enumerate(g.actions[0]):
        own = core.MixedStrategy.pure(0, j, count)
        prime[label] = rat_json(mixed.regret_prime(g, 0, own, opp))
        plain[label] = rat_json(mixed.regret_given_profile(g, 0, own, opp))
    return {"regret_prime": prime, "regret": plain}


def _sd_vs_rm():
    g = generators.make_sd_vs_rm()
    return {
        "SD": compare.iterate_operator(g, None, "SD").fixed_point.to_json(g),
        "RM": compare.iterate_operator(g, None, "RM").fixed_point.to_json(g),
    }


def _td_contrast():
    g = generators.make_travelers_dilemma(2)
    nash = compare.pure_nash(g)
    return {
        "WD": compare.iterate_operator(g, None, "WD").fixed_point.to_json(g),
        "SD_removes_nothing": compare.iterate_operator(g, None, "SD").fixed_point
        == pure_space(g),
        "nash": [[g.actions[i][a] for i, a in enumerate(p)] for p in nash],
    }


def _gencoord():
    g = generators.make_gencoord()
    rd = compare.risk_dominance(g)
    return {
        "risk_dominant": [[g.actions[i][a] for i, a in enumerate(p)] for p in rd],
        "rm_fixed": _fixed_point_labels(g, pure.rm_iterate(g)),
    }


def _appendix_lemma():
    out = {}
    for n in (2, 3):
        rep = beliefs.always_defect_regret(n, 1, 3, 4)
        out[f"n={n}"] = rep.to_json()
    return out


def _repeated_pd_beliefs():
    rep = beliefs.repeated_pd_analysis(20, 1, 3, 4)
    return {
        "argmin": [f"s{k}" for k in rep.argmin],
        "minregret": rat_json(rep.minregret),
        "mixture_minimax_regret": rat_json(rep.mixture_value),
        "discrepancy_count": len(rep.discrepancies),
    }


def _auctions():
    bg = bayes.make_auction("second_price", [[2, 4, 6], [2, 4, 6]], max_bid=6)
    space = bayes.full_typed_space(bg)
    zero = all(
        bayes.expected_regret(bg, space, i, t, bayes.truthful_strategy(bg, i).choices[t]) == 0
        for i in range(2)
        for t in range(3)
    )
    fp_game = bayes.make_auction("first_price", [[v for v in range(2, 21, 2)]] * 2, max_bid=20)
    tr = bayes.rm_bayes_iterate(fp_game)
    per_type = tr.fixed_point.to_json(fp_game)
    return {"second_price_truthful_zero_regret": zero, "first_price_fixed": per_type}


def _mechanism_probes():
    probe = bayes.mechanism_bound_probe(rat(1, 2), 100)
    above = bayes.mechanism_bound_probe(rat(63, 100), 100)
    rev, msw, _ = bayes.combinatorial_first_price_revenue(
        [{(0,): 10, (1,): 4, (0, 1): 12}, {(0,): 6, (1,): 8, (0, 1): 14}], 2
    )
    return {
        "r=1/2_consistent_everywhere": probe["first_consistency_violation"] is None,
        "r=1/2_v100_forced_lb": probe["rows"][-1]["forced_regret_lb"],
        "r=63/100_first_violation": above["first_consistency_violation"],
        "example_revenue": rat_json(rev),
        "example_msw": rat_json(msw),
    }


def _rounds_statistic():
    out = {}
    for name, g in {
        "travelers_dilemma_p2": generators.make_travelers_dilemma(2),
        "staircase_8": generators.make_staircase(8),
        "bertrand": generators.make_bertrand(),
    }.items():
        tr = pure.rm_iterate(g)
        out[name] = {
            "shrinking_rounds": tr.shrinking_rounds(),
            "max_actions": max(len(a) for a in g.actions),
        }
    return out


def _mini_td_uniqueness():
    g = generators.make_travelers_dilemma(2, low=94, high=100)
    poly = mixed.argmin_polytope(g, mixed_space(g), 0)
    return {"actions": 7, "argmin_vertex_count": len(poly.vertices)}


def build_manifest() -> list[Claim]:
    return [
        Claim("td-p2-round1", "claim game p=2: one deletion round keeps 96..100", "paper",
              lambda: _td_round1(2),
              [[str(v) for v in range(96, 101)]] * 2),
        Claim("td-p2-pure", "claim game p=2: iterated deletion singles out 97", "paper",
              lambda: _td_pure(2), [["97"], ["97"]]),
        Claim("td-p50-pure", "claim game p=50: quoted one-round minimizer {2} vs computed", "reported",
              lambda: {"computed_round1": _td_round1(50), "quoted": [["2"], ["2"]]}),
        Claim("td-sweep", "claim game sweep p=2..49: fixed point 100-2p+1", "paper",
              lambda: all(
                  _td_pure(p) == [[str(100 - 2 * p + 1)]] * 2 for p in range(2, 50)
              ),
              True),
        Claim("td-contrast", "weak dominance and equilibrium contrast on the claim game", "paper",
              _td_contrast,
              {"WD": [["2"], ["2"]], "SD_removes_nothing": True, "nash": [["2", "2"]]}),
        Claim("bertrand-pure", "price competition: 100/101 then 100, regret 9900", "paper",
              _bertrand,
              {"round1": [["100", "101"]] * 2, "fixed": [["100"], ["100"]],
               "regret_of_100": 9900}),
        Claim("bargaining-pure", "split-the-pile demands: 50/51 then 50; diagonal equilibria", "paper",
              _bargaining,
              {"round1": [["50", "51"]] * 2, "fixed": [["50"], ["50"]],
               "all_(x,100-x)_nash": True}),
        Claim("centipede-exponential", "exponential stopping game: latest classes minimize regret", "paper",
              _centipede_exp, [["[9]"], ["[10]"]]),
        Claim("centipede-linear-even", "linear stopping game k=10, p=2: quoted vs computed fixed point", "reported",
              lambda: {"computed": _centipede_linear_even(), "quoted": [["[9]"], ["[10]"]]}),
        Claim("centipede-linear-odd", "linear stopping game k=9, p=3: single shrinking round", "paper",
              lambda: _centipede_linear_odd()["shrinking_rounds"], 1),
        Claim("hawk-dove", "dove-dove fixed point at regret c-b (a,b,c = 2,3,4)", "paper",
              _hawk_dove, {"fixed": [["d"], ["d"]], "minregret": 1}),
        Claim("pd-dominant", "defection is dominant and survives alone", "paper",
              _pd, {"fixed": [["d"], ["d"]], "dominant": [["d"], ["d"]]}),
        Claim("staircase", "one action deleted per round, n-1 rounds, a1 survives", "paper",
              lambda: {str(n): _staircase(n) for n in (3, 5, 8)},
              {str(n): {"shrinking_rounds": n - 1, "fixed": [["a1"], ["a1"]]}
               for n in (3, 5, 8)}),
        Claim("mixed-matching-pennies", "even coin split, value 20", "paper",
              _mixed_mp, {"value": 20, "witness": ["1/2", "1/2"]}),
        Claim("mixed-asym-matching-pennies", "7/8 weight for player 1, value 35", "paper",
              _mixed_asym_mp,
              {"p1": {"value": 35, "witness": ["7/8", "1/8"]},
               "p2": {"value": 20, "witness": ["1/2", "1/2"]}}),
        Claim("mixed-coordination", "weight 1/(k+1) on the safe action, value k/(k+1)", "paper",
              lambda: {str(k): _mixed_coordination(k) for k in (2, 3, 5)},
              {"2": {"value": "2/3", "witness": ["2/3", "1/3"]},
               "3": {"value": "3/4", "witness": ["3/4", "1/4"]},
               "5": {"value": "5/6", "witness": ["5/6", "1/6"]}}),
        Claim("mixed-rps", "uniform is the unique mixed minimizer", "paper",
              _mixed_rps,
              {"value": 1, "witness": ["1/3", "1/3", "1/3"],
               "argmin_vertices": [["1/3", "1/3", "1/3"]]}),
        Claim("td-mixed-lemma", "exponential mixture beats regret 3; optimum in (2.9, 3)", "paper",
              _td_mixed_lemma,
              {"exponential_strategy_regret_below_3": True, "optimum_in_interval": True,
               "optimum": "DERIVED", "cumulative_mass_bounds_hold": True},
              ),
        Claim("mixed-multiround", "three deletion rounds to the even two-way mixture", "paper",
              _mixed_multiround,
              {"shrinking_rounds": 3,
               "fixed": [[["1/2", "1/2", 0, 0, 0, 0]], [["1/2", "1/2", 0, 0, 0, 0]]],
               "converged": True}),
        Claim("belief-identity", "k-level justifiable beliefs reproduce k rounds of deletion", "paper",
              _belief_identity, {"rational_sets_equal_rm_k": True}),
        Claim("differ-tables", "three-action game: quoted regret tables vs computed", "reported",
              lambda: {"computed": _differ_tables(),
                       "quoted": {"regret_prime": {"a": "5/3", "b": "7/6", "c": "4/3"},
                                  "regret": {"a": "1/6", "b": "5/6", "c": 0}}}),
        Claim("sd-vs-rm", "strong dominance picks (b,y); regret picks (b,x)", "paper",
              _sd_vs_rm, {"SD": [["b"], ["y"]], "RM": [["b"], ["x"]]}),
        Claim("gencoord-risk-dominance", "risk-dominant corner is the regret minimizer", "paper",
              _gencoord, {"risk_dominant": [["a", "a"]], "rm_fixed": [["a"], ["a"]]}),
        Claim("appendix-lemma-pd", "always-defect regret: statement vs proof formulas", "reported",
              _appendix_lemma),
        Claim("repeated-pd-beliefs", "restricted-belief argmin and mixture optimum at n=20", "reported",
              _repeated_pd_beliefs),
        Claim("auctions", "truthful second-price regret 0; first-price bids half value", "paper",
              _auctions,
              {"second_price_truthful_zero_regret": True,
               "first_price_fixed": [
                   {str(v): [str(v // 2)] for v in range(2, 21, 2)}] * 2}),
        Claim("mechanism-probes", "revenue-share bounds and the half-bid revenue floor", "paper",
              _mechanism_probes,
              {"r=1/2_consistent_everywhere": True, "r=1/2_v100_forced_lb": 49,
               "r=63/100_first_violation": 62, "example_revenue": 9, "example_msw": 18}),
        Claim("convergence-rounds", "observed shrinking rounds vs the max action count", "reported",
              _rounds_statistic),
        Claim("mini-td-mixed-uniqueness", "argmin vertex count on a 7-action claim game", "reported",
              _mini_td_uniqueness),
        Claim("rm-oracle", "deletion step agrees with the brute-force oracle on random games", "derived",
              _oracle_sample),
    ]


def _oracle_sample():
    import random

    rng = random.Random(20240817)
    mismatches = 0
    for _ in range(25):
        g = _random_game(rng)
        step, _ = pure.rm_step(g, pure_space(g))
        if step != _brute_force_rm(g):
            mismatches += 1
    return {"games": 25, "mismatches": mismatches}


def _random_game(rng):
    shape = (rng.randint(2, 4), rng.randint(2, 4))
    labels = tuple(tuple(f"{'xy'[i]}{j}" for j in range(shape[i])) for i in range(2))
    rows = []
    for _ in range(shape[0] * shape[1]):
        rows.append((rat(rng.randint(-9, 9)), rat(rng.randint(-9, 9))))
    return core.Game(labels, tuple(rows))


def _brute_force_rm(g):
    sets = []
    for i in range(2):
        own = range(len(g.actions[i]))
        other = range(len(g.actions[1 - i]))
        worst = {}
        for a in own:
            worst[a] = max(
                max(
                    g.payoff((b, o) if i == 0 else (o, b))[i] for b in own
                )
                - g.payoff((a, o) if i == 0 else (o, a))[i]
                for o in other
            )
        m = min(worst.values())
        sets.append([a for a in own if worst[a] == m])
    return pure_space(g, sets)


@dataclass(frozen=True)
class ManifestRow:
    claim_id: str
    description: str
    computed: object
    expected: object
    verdict: str

    def to_json(self):
        return {
            "claim": self.claim_id,
            "description": self.description,
            "computed": self.computed,
            "expected": self.expected,
            "verdict": self.verdict,
        }


def run_manifest(
    claims: list[Claim] | None = None,
    derived_store: dict | None = None,
    record: bool = False,
) -> list[ManifestRow]:
    """Evaluate every claim.  With record=True, derived expectations are
    written into derived_store instead of checked."""
    rows = []
    for claim in claims if claims is not None else build_manifest():
        computed = claim.compute()
        computed = json.loads(json.dumps(computed, default=str))
        if claim.kind == "reported":
            rows.append(ManifestRow(claim.id, claim.description, computed, None, REPORTED))
            continue
        if claim.kind == "derived":
            if record:
                if derived_store is not None:
                    derived_store[claim.id] = computed
                rows.append(ManifestRow(claim.id, claim.description, computed, None, "RECORDED"))
                continue
            if derived_store is None or claim.id not in derived_store:
                rows.append(ManifestRow(claim.id, claim.description, computed, None, "UNRECORDED"))
                continue
            expected = derived_store[claim.id]
            verdict = PASS if computed == expected else FAIL
            rows.append(ManifestRow(claim.id, claim.description, computed, expected, verdict))
            continue
        expected = json.loads(json.dumps(claim.expected, default=str))
        if claim.id == "td-mixed-lemma":
            # The optimum itself is oracle-derived; the interval checks are the claim.
            expected = dict(expected)
            expected["optimum"] = computed.get("optimum")
        verdict = PASS if computed == expected else FAIL
        rows.append(ManifestRow(claim.id, claim.description, computed, expected, verdict))
    return rows
