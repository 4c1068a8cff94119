"""Exact linear programming over rationals.

A dense two-phase simplex with Bland's anti-cycling rule.  Everything is
exact: argmin sets downstream depend on exact ties, so an inexact solver
would be wrong, not merely imprecise.  All variables are nonnegative,
which covers every use in this package (simplex weights, belief weights,
and regret bounds, which are nonnegative by construction).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .core import RegretLabError
from .rational import ONE, ZERO, Rat, rat_str

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


class LPError(RegretLabError):
    pass


@dataclass(frozen=True)
class Constraint:
    coeffs: Mapping[int, Rat]
    rel: str
    rhs: Rat

    def __post_init__(self):
        if self.rel not in ("<=", ">=", "=="):
            raise LPError(f"unknown relation {self.rel!r}")


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Rat | None = None
    x: tuple[Rat, ...] | None = None


@dataclass(frozen=True)
class LinearProgram:
    """minimize (or maximize) objective . x  s.t.  constraints, x >= 0."""

    n_vars: int
    objective: tuple[Rat, ...]
    constraints: tuple[Constraint, ...]
    maximize: bool = False

    def solve(self) -> LPResult:
        return _solve(self)

    def dump(self) -> str:
        """Constraint matrix in rational text form, for external verification."""
        lines = []
        sense = "max" if self.maximize else "min"
        lines.append(f"{sense} " + " ".join(rat_str(c) for c in self.objective))
        for con in self.constraints:
            dense = [ZERO] * self.n_vars
            for j, v in con.coeffs.items():
                dense[j] = v
            lines.append(
                " ".join(rat_str(v) for v in dense) + f" {con.rel} {rat_str(con.rhs)}"
            )
        lines.append("x >= 0")
        return "\n".join(lines) + "\n"


def solve_lp(
    n_vars: int,
    objective: Sequence[Rat],
    constraints: Sequence[tuple[Mapping[int, Rat], str, Rat]],
    maximize: bool = False,
) -> LPResult:
    lp = LinearProgram(
        n_vars=n_vars,
        objective=tuple(objective),
        constraints=tuple(Constraint(dict(c), rel, rhs) for c, rel, rhs in constraints),
        maximize=maximize,
    )
    return lp.solve()


def feasible_point(
    n_vars: int,
    constraints: Sequence[tuple[Mapping[int, Rat], str, Rat]],
) -> tuple[Rat, ...] | None:
    """A feasible x >= 0 for the constraints, or None."""
    res = solve_lp(n_vars, [ZERO] * n_vars, constraints)
    return res.x if res.status == OPTIMAL else None


def _solve(lp: LinearProgram) -> LPResult:
    if len(lp.objective) != lp.n_vars:
        raise LPError("objective length must equal n_vars")
    m = len(lp.constraints)
    n = lp.n_vars

    # Normalized rows with nonnegative right-hand sides.
    rows = []
    rels = []
    for con in lp.constraints:
        dense = [ZERO] * n
        for j, v in con.coeffs.items():
            if not (0 <= j < n):
                raise LPError(f"variable index {j} out of range")
            dense[j] = dense[j] + v
        rhs = con.rhs
        rel = con.rel
        if rhs < 0 or (rhs == ZERO and rel == ">="):
            # Keep right-hand sides nonnegative, and write >=-with-zero rows
            # as <= so their slack can start the basis without an artificial.
            dense = [-v for v in dense]
            rhs = -rhs
            rel = {"<=": ">=", ">=": "<=", "==": "=="}[rel]
        rows.append((dense, rhs))
        rels.append(rel)

    n_slack = sum(1 for r in rels if r != "==")
    n_art = sum(1 for r in rels if r != "<=")
    cols = n + n_slack + n_art
    tableau = []
    basis = []
    slack_at = n
    art_at = n + n_slack
    art_cols = []
    for (dense, rhs), rel in zip(rows, rels):
        row = dense + [ZERO] * (n_slack + n_art) + [rhs]
        if rel == "<=":
            row[slack_at] = ONE
            basis.append(slack_at)
            slack_at += 1
        elif rel == ">=":
            row[slack_at] = -ONE
            slack_at += 1
            row[art_at] = ONE
            basis.append(art_at)
            art_cols.append(art_at)
            art_at += 1
        else:
            row[art_at] = ONE
            basis.append(art_at)
            art_cols.append(art_at)
            art_at += 1
        tableau.append(row)

    def pivot(r: int, c: int):
        piv = tableau[r][c]
        if piv != ONE:
            inv = ONE / piv
            tableau[r] = [v * inv for v in tableau[r]]
        prow = tableau[r]
        for k in range(len(tableau)):
            if k == r:
                continue
            f = tableau[k][c]
            if f != ZERO:
                krow = tableau[k]
                tableau[k] = [kv - f * pv for kv, pv in zip(krow, prow)]
        basis[r] = c

    def run_simplex(z: list, allowed: int) -> str:
        """Largest-coefficient pivoting, switching to Bland's rule after a
        pivot budget so cycling cannot occur; z is the reduced-cost row
        (last entry = -objective)."""
        bland_after = 8 * (m + allowed) + 64
        pivots = 0
        while True:
            enter = -1
            if pivots < bland_after:
                most = ZERO
                for j in range(allowed):
                    zj = z[j]
                    if zj < most:
                        most = zj
                        enter = j
            else:
                for j in range(allowed):
                    if z[j] < 0:
                        enter = j
                        break
            if enter < 0:
                return OPTIMAL
            leave = -1
            best = None
            for r in range(m):
                a = tableau[r][enter]
                if a > 0:
                    ratio = tableau[r][-1] / a
                    if best is None or ratio < best or (ratio == best and basis[r] < basis[leave]):
                        best = ratio
                        leave = r
            if leave < 0:
                return UNBOUNDED
            pivot(leave, enter)
            pivots += 1
            f = z[enter]
            if f != ZERO:
                prow = tableau[leave]
                for j in range(len(z)):
                    z[j] = z[j] - f * prow[j]

    # Phase 1: minimize the sum of artificials.
    if art_cols:
        z = [ZERO] * (cols + 1)
        for c in art_cols:
            z[c] = ONE
        for r, b in enumerate(basis):
            if b in art_cols:
                z = [zv - rv for zv, rv in zip(z, tableau[r])]
        status = run_simplex(z, cols)
        if status != OPTIMAL or -z[-1] > 0:
            return LPResult(status=INFEASIBLE)
        # Drive any degenerate artificial out of the basis.
        art_set = set(art_cols)
        for r in range(m):
            if basis[r] in art_set:
                for j in range(n + n_slack):
                    if tableau[r][j] != ZERO:
                        pivot(r, j)
                        break

    # Phase 2 over the real objective (artificial columns frozen out).
    sign = -ONE if lp.maximize else ONE
    z = [ZERO] * (cols + 1)
    for j in range(n):
        z[j] = sign * lp.objective[j]
    for r, b in enumerate(basis):
        if z[b] != ZERO:
            f = z[b]
            z = [zv - f * rv for zv, rv in zip(z, tableau[r])]
    art_set = set(art_cols)
    for r in range(m):
        if basis[r] in art_set and tableau[r][-1] != ZERO:
            return LPResult(status=INFEASIBLE)
    status = run_simplex(z, n + n_slack)
    if status == UNBOUNDED:
        return LPResult(status=UNBOUNDED)
    x = [ZERO] * n
    for r, b in enumerate(basis):
        if b < n:
            x[b] = tableau[r][-1]
    value = sum((c * v for c, v in zip(lp.objective, x)), ZERO)
    return LPResult(status=OPTIMAL, value=value, x=tuple(x))
