"""Exact geometric checks, independent of the poset combinatorics.

Everything here sees only point coordinates and inequalities. Arithmetic
is exact: fraction-free integer simplex tableaus, ``Fraction`` elimination
for ranks, integer numpy arrays for lattice-point counting. No floats.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd, lcm
from typing import Sequence

import numpy as np

from .errors import NotValidError, SizeError

MAX_VERTICES = 512
POINT_BUDGET = 4_000_000


@dataclass
class FeasibilityProblem:
    """Find ``x >= 0`` with ``rows[k] . x (sense) rhs[k]``.

    ``senses`` entries are ``"<="``, ``"="`` or ``">="``.
    """

    variables: int
    rows: list[list[Fraction]] = field(default_factory=list)
    senses: list[str] = field(default_factory=list)
    rhs: list[Fraction] = field(default_factory=list)

    def add(self, coeffs: Sequence, sense: str, bound) -> None:
        if len(coeffs) != self.variables:
            raise ValueError(f"expected {self.variables} coefficients, got {len(coeffs)}")
        if sense not in ("<=", "=", ">="):
            raise ValueError(f"unknown constraint sense {sense!r}")
        self.rows.append([Fraction(c) for c in coeffs])
        self.senses.append(sense)
        self.rhs.append(Fraction(bound))

    def solve(self) -> list[Fraction] | None:
        """A feasible point, or ``None``. Phase-one simplex with Bland's rule."""
        n = self.variables
        slacks = sum(s != "=" for s in self.senses)
        rows = []
        k = 0
        for coeffs, sense, b in zip(self.rows, self.senses, self.rhs):
            row = list(coeffs) + [Fraction(0)] * slacks
            if sense != "=":
                row[n + k] = Fraction(1 if sense == "<=" else -1)
                k += 1
            if b < 0:
                row = [-c for c in row]
                b = -b
            rows.append(row + [b])
        x = _phase_one(rows, n + slacks)
        return None if x is None else x[:n]


def _phase_one(rows: list[list[Fraction]], n: int) -> list[Fraction] | None:
    """Rows are ``[a_1 .. a_n, b]`` with ``b >= 0`` encoding ``a . x = b``.

    Adds one artificial per row and minimizes their sum. The tableau is
    kept fraction-free: an equality row may be rescaled by any positive
    integer, so rows are cleared of denominators once and divided by
    their gcd after every pivot.
    """
    m = len(rows)
    if m == 0:
        return [Fraction(0)] * n
    width = n + m
    tab = []
    for r, row in enumerate(rows):
        scale = lcm(*(v.denominator for v in row))
        ints = [int(v * scale) for v in row]
        art = [0] * m
        art[r] = scale
        tab.append(ints[:n] + art + [ints[n]])
    basis = list(range(n, n + m))
    # Phase-one objective weights artificial r by its row scale, which keeps
    # reduced costs integral. Last entry tracks minus the objective.
    cost = [0] * (width + 1)
    for row in tab:
        for c in range(n):
            cost[c] -= row[c]
        cost[width] -= row[width]

    while True:
        enter = next((c for c in range(width) if cost[c] < 0), None)
        if enter is None:
            break
        best = None
        for r in range(m):
            a = tab[r][enter]
            if a > 0:
                b = tab[r][width]
                if best is None:
                    best = (b, a, r)
                    continue
                # compare b/a against best ratio by cross-multiplication
                lhs, rhs = b * best[1], best[0] * a
                if lhs < rhs or (lhs == rhs and basis[r] < basis[best[2]]):
                    best = (b, a, r)
        if best is None:
            raise ArithmeticError("phase-one objective unbounded")
        _pivot(tab, cost, best[2], enter)
        basis[best[2]] = enter

    if cost[width] != 0:
        return None
    x = [Fraction(0)] * n
    for r, var in enumerate(basis):
        if var < n:
            x[var] = Fraction(tab[r][width], tab[r][var])
    return x


def _reduce(row):
    g = gcd(*row)
    if g > 1:
        row[:] = [v // g for v in row]


def _pivot(tab, cost, r, c):
    prow = tab[r]
    piv = prow[c]
    nz = [k for k, v in enumerate(prow) if v]
    for other in tab:
        if other is not prow:
            f = other[c]
            if f:
                # piv > 0, so scaling by it preserves the row's sense
                other[:] = [v * piv for v in other]
                for k in nz:
                    other[k] -= f * prow[k]
                _reduce(other)
    f = cost[c]
    if f:
        cost[:] = [v * piv for v in cost]
        for k in nz:
            cost[k] -= f * prow[k]
        _reduce(cost)


def in_convex_hull(point: Sequence, points: Sequence[Sequence]) -> bool:
    """Exact test of ``point in conv(points)``."""
    if not points:
        return False
    d = len(point)
    prob = FeasibilityProblem(len(points))
    for i in range(d):
        prob.add([q[i] for q in points], "=", point[i])
    prob.add([1] * len(points), "=", 1)
    return prob.solve() is not None


def is_geometric_edge(vertices: Sequence[Sequence[int]], u: int, v: int, max_vertices: int = MAX_VERTICES) -> bool:
    """Whether [vertices[u], vertices[v]] is an edge of conv(vertices).

    Assumes every listed point is a vertex. The segment is an edge iff its
    midpoint is not a convex combination of the remaining points.
    """
    if len(vertices) > max_vertices:
        raise SizeError(f"{len(vertices)} vertices exceeds the oracle guard of {max_vertices}")
    if u == v:
        raise ValueError("an edge needs two distinct vertices")
    # doubled coordinates keep the midpoint integral
    mid = [a + b for a, b in zip(vertices[u], vertices[v])]
    others = [[2 * x for x in q] for k, q in enumerate(vertices) if k != u and k != v]
    return not in_convex_hull(mid, others)


def rank(rows: Sequence[Sequence]) -> int:
    """Rank of a rational matrix by exact Gaussian elimination."""
    m = [[Fraction(x) for x in row] for row in rows]
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((k for k in range(r, len(m)) if m[k][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for k in range(r + 1, len(m)):
            f = m[k][c] / m[r][c]
            if f:
                m[k] = [x - f * y for x, y in zip(m[k], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def affine_rank(points: Sequence[Sequence]) -> int:
    """Largest number of affinely independent points among ``points``."""
    if not points:
        return 0
    base = points[0]
    return 1 + rank([[x - y for x, y in zip(q, base)] for q in points[1:]])


def count_facets(vertices: Sequence[Sequence[int]], candidates, d: int) -> int:
    """Number of candidate inequalities that define facets of the
    full-dimensional polytope conv(vertices).

    A candidate is a facet when its tight vertices have affine rank ``d``;
    candidates with the same tight set count once.
    """
    tight_sets = set()
    for ineq in candidates:
        tight = []
        for k, q in enumerate(vertices):
            lhs = ineq.lhs(q)
            if lhs > ineq.bound:
                raise NotValidError(f"vertex {tuple(q)} violates {ineq}")
            if lhs == ineq.bound:
                tight.append(k)
        key = frozenset(tight)
        if key in tight_sets or len(tight) < d:
            continue
        if affine_rank([vertices[k] for k in tight]) == d:
            tight_sets.add(key)
    return len(tight_sets)


def _integer_system(ineqs, d):
    """Scale each inequality to integer coefficients; returns (C, b)."""
    rows, bounds = [], []
    for ineq in ineqs:
        if len(ineq.coeffs) != d:
            raise ValueError("inequality dimension mismatch")
        den = lcm(*(Fraction(c).denominator for c in ineq.coeffs), Fraction(ineq.bound).denominator)
        rows.append([int(c * den) for c in ineq.coeffs])
        bounds.append(int(ineq.bound * den))
    return np.array(rows, dtype=np.int64).reshape(len(rows), d), np.array(bounds, dtype=np.int64)


def lattice_points_in_dilation(ineqs, d: int, t: int, budget: int = POINT_BUDGET) -> int:
    """Integer points of {0..t}^d satisfying every ``c . a <= t * b``."""
    if t < 0:
        raise ValueError("dilation factor must be nonnegative")
    total = (t + 1) ** d
    if total > budget:
        raise SizeError(f"(t+1)^d = {total} lattice points exceeds the budget of {budget}")
    C, b = _integer_system(ineqs, d)
    limit = b * t
    radix = np.array([(t + 1) ** k for k in range(d)], dtype=np.int64)
    count = 0
    chunk = 1 << 16
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        pts = (idx[:, None] // radix[None, :]) % (t + 1)
        ok = (pts @ C.T <= limit[None, :]).all(axis=1)
        count += int(ok.sum())
    return count


def normalized_volume(ineqs, d: int, budget: int = POINT_BUDGET) -> int:
    """d! times the volume: the d-th forward difference of the dilation
    counts at t = 0..d."""
    counts = [lattice_points_in_dilation(ineqs, d, t, budget) for t in range(d + 1)]
    return sum((-1) ** (d - k) * comb(d, k) * counts[k] for k in range(d + 1))
