"""Vertex-representation polytope calculus for mixed-strategy sets.

Only what argmin extraction needs: exact membership tests, halfspace
cuts of a V-polytope, and extreme-point pruning.  Cutting keeps every
inside vertex plus the segment crossing point of every (inside, outside)
vertex pair; pruning then discards the non-extreme candidates, so the
result is exactly the vertex set of the intersection.
"""

from __future__ import annotations

from typing import Sequence

from .core import MixedStrategy, Polytope, make_polytope
from .lp import OPTIMAL, solve_lp
from .rational import ONE, ZERO, Rat


def _as_vectors(poly: Polytope) -> list[tuple[Rat, ...]]:
    return [v.weights for v in poly.vertices]


def point_in_hull(point: Sequence[Rat], vertices: Sequence[Sequence[Rat]]) -> bool:
    """Is point a convex combination of vertices?  Decided by LP feasibility."""
    if not vertices:
        return False
    dim = len(point)
    constraints = []
    for d in range(dim):
        constraints.append(({j: vertices[j][d] for j in range(len(vertices))}, "==", point[d]))
    constraints.append(({j: ONE for j in range(len(vertices))}, "==", ONE))
    res = solve_lp(len(vertices), [ZERO] * len(vertices), constraints)
    return res.status == OPTIMAL


def hull_coefficients(
    point: Sequence[Rat], vertices: Sequence[Sequence[Rat]]
) -> tuple[Rat, ...] | None:
    """Barycentric weights expressing point over vertices, or None."""
    dim = len(point)
    constraints = []
    for d in range(dim):
        constraints.append(({j: vertices[j][d] for j in range(len(vertices))}, "==", point[d]))
    constraints.append(({j: ONE for j in range(len(vertices))}, "==", ONE))
    res = solve_lp(len(vertices), [ZERO] * len(vertices), constraints)
    return res.x if res.status == OPTIMAL else None


def polytope_contains(poly: Polytope, sigma: MixedStrategy) -> bool:
    if sigma.owner != poly.owner or len(sigma.weights) != poly.dimension:
        return False
    return point_in_hull(sigma.weights, _as_vectors(poly))


def extreme_points(vectors: Sequence[Sequence[Rat]]) -> list[tuple[Rat, ...]]:
    """The extreme points among vectors (exact; duplicates collapse first)."""
    unique = []
    seen = set()
    for v in vectors:
        t = tuple(v)
        if t not in seen:
            seen.add(t)
            unique.append(t)
    kept = []
    for i, v in enumerate(unique):
        others = unique[:i] + unique[i + 1 :]
        if not others or not point_in_hull(v, others):
            kept.append(v)
    return kept


def cut_halfspace(
    vectors: Sequence[Sequence[Rat]], coeffs: Sequence[Rat], rhs: Rat
) -> list[tuple[Rat, ...]]:
    """Vertex candidates of conv(vectors) intersected with coeffs.x <= rhs.

    Every vertex of the cut polytope is an old inside vertex or lies on a
    segment between an inside and an outside vertex, so the candidate set
    is complete; callers prune to extreme points afterwards.
    """
    slack = []
    for v in vectors:
        s = rhs - sum((c * x for c, x in zip(coeffs, v)), ZERO)
        slack.append(s)
    inside = [v for v, s in zip(vectors, slack) if s >= 0]
    if len(inside) == len(vectors):
        return [tuple(v) for v in vectors]
    out = [tuple(v) for v in inside]
    for u, su in zip(vectors, slack):
        if su <= 0:
            continue
        for w, sw in zip(vectors, slack):
            if sw >= 0:
                continue
            t = su / (su - sw)
            out.append(tuple(a + t * (b - a) for a, b in zip(u, w)))
    return out


def canonical_polytope(owner: int, vectors: Sequence[Sequence[Rat]]) -> Polytope:
    """Polytope on the extreme points of vectors, canonically ordered."""
    points = extreme_points(vectors)
    return make_polytope(owner, [MixedStrategy(owner, tuple(p)) for p in points])
