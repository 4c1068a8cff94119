import random

import numpy as np
import pytest
from scipy.optimize import linprog

from regretlab.lp import (
    INFEASIBLE,
    OPTIMAL,
    UNBOUNDED,
    Constraint,
    LinearProgram,
    feasible_point,
    solve_lp,
)
from regretlab.rational import ONE, ZERO, rat


def test_textbook_maximization():
    # max 3x + 5y  s.t. x <= 4, 2y <= 12, 3x + 2y <= 18
    res = solve_lp(
        2,
        [rat(3), rat(5)],
        [
            ({0: ONE}, "<=", rat(4)),
            ({1: rat(2)}, "<=", rat(12)),
            ({0: rat(3), 1: rat(2)}, "<=", rat(18)),
        ],
        maximize=True,
    )
    assert res.status == OPTIMAL
    assert res.value == rat(36)
    assert res.x == (rat(2), rat(6))


def test_equality_and_geq_constraints():
    # min x + y  s.t. x + y == 1, x >= 1/4
    res = solve_lp(
        2,
        [ONE, ONE],
        [({0: ONE, 1: ONE}, "==", ONE), ({0: ONE}, ">=", rat(1, 4))],
    )
    assert res.status == OPTIMAL
    assert res.value == ONE


def test_infeasible_detected():
    res = solve_lp(1, [ONE], [({0: ONE}, "<=", rat(1)), ({0: ONE}, ">=", rat(2))])
    assert res.status == INFEASIBLE
    assert feasible_point(1, [({0: ONE}, "<=", rat(-1))]) is None


def test_unbounded_detected():
    res = solve_lp(1, [-ONE], [({0: ONE}, ">=", rat(1))])
    assert res.status == UNBOUNDED


def test_degenerate_zero_rhs_rows():
    # x - y >= 0, x + y == 1: minimize y -> y = 0
    res = solve_lp(
        2,
        [ZERO, ONE],
        [({0: ONE, 1: -ONE}, ">=", ZERO), ({0: ONE, 1: ONE}, "==", ONE)],
    )
    assert res.status == OPTIMAL
    assert res.value == ZERO
    assert res.x == (ONE, ZERO)


def test_exact_rational_optimum():
    # min t  s.t. 3x + t >= 1, x + t >= 1/2 is degenerate unless x splits exactly
    res = solve_lp(
        2,
        [ZERO, ONE],
        [
            ({0: rat(3), 1: ONE}, ">=", ONE),
            ({0: -ONE, 1: ONE}, ">=", ZERO),
            ({0: ONE}, "<=", ONE),
        ],
    )
    assert res.status == OPTIMAL
    assert res.value == rat(1, 4)
    assert res.x == (rat(1, 4), rat(1, 4))


def test_dump_is_rational_text():
    lp = LinearProgram(
        n_vars=2,
        objective=(ZERO, ONE),
        constraints=(Constraint({0: rat(1, 3), 1: ONE}, ">=", rat(2, 5)),),
    )
    text = lp.dump()
    assert "1/3 1 >= 2/5" in text
    assert text.startswith("min 0 1")
    assert "x >= 0" in text


def test_random_lps_agree_with_scipy():
    rng = random.Random(2718)
    checked = 0
    for _ in range(60):
        n = rng.randint(1, 4)
        m = rng.randint(1, 4)
        objective = [rat(rng.randint(-4, 4)) for _ in range(n)]
        constraints = []
        for _ in range(m):
            coeffs = {j: rat(rng.randint(-4, 4)) for j in range(n)}
            rel = rng.choice(["<=", ">=", "=="])
            constraints.append((coeffs, rel, rat(rng.randint(-4, 4))))
        # Keep things bounded so scipy and we agree on status.
        for j in range(n):
            constraints.append(({j: ONE}, "<=", rat(7)))
        res = solve_lp(n, objective, constraints)

        a_ub, b_ub, a_eq, b_eq = [], [], [], []
        for coeffs, rel, rhs in constraints:
            dense = [float(coeffs.get(j, 0)) for j in range(n)]
            if rel == "<=":
                a_ub.append(dense)
                b_ub.append(float(rhs))
            elif rel == ">=":
                a_ub.append([-v for v in dense])
                b_ub.append(-float(rhs))
            else:
                a_eq.append(dense)
                b_eq.append(float(rhs))
        ref = linprog(
            c=[float(v) for v in objective],
            A_ub=np.array(a_ub) if a_ub else None,
            b_ub=np.array(b_ub) if b_ub else None,
            A_eq=np.array(a_eq) if a_eq else None,
            b_eq=np.array(b_eq) if b_eq else None,
            bounds=[(0, None)] * n,
            method="highs",
        )
        if ref.status == 0:
            assert res.status == OPTIMAL
            assert abs(float(res.value) - ref.fun) < 1e-7
            checked += 1
        elif ref.status == 2:
            assert res.status == INFEASIBLE
    assert checked >= 20
