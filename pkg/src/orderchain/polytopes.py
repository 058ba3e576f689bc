"""Vertices, edges and inequality descriptions of the order polytope O(P)
and the chain polytope C(P), plus the explicit bijection between their
edge sets.

Vertices of O(P) are indicator vectors of ideals, vertices of C(P) those
of antichains. Edges come from the connectivity criteria: ideals I < J
span an edge iff J - I is connected, antichains A != B iff their
symmetric difference is connected.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, NamedTuple

from .errors import NotAntichainError, NotIdealError, NotInOmegaError, NotInPsiError
from .poset import (
    Poset,
    XWitness,
    bit,
    bits,
    cover_pairs,
    down_closure,
    enumerate_antichains,
    enumerate_ideals,
    find_X_subposet,
    is_connected_subset,
    max_of,
    maximal_chains,
    min_of,
    popcount,
)

Kind = Literal["order", "chain"]
KINDS = ("order", "chain")


def rho(w: int, d: int) -> tuple[int, ...]:
    """0/1 indicator vector of the element set ``w``."""
    return tuple(w >> i & 1 for i in range(d))


def _require_ideal(p, mask):
    if not p.is_ideal(mask):
        raise NotIdealError(f"mask {mask:#x} is not an ideal")


def _require_antichain(p, mask):
    if not p.is_antichain(mask):
        raise NotAntichainError(f"mask {mask:#x} is not an antichain")


def order_edge(p: Poset, i: int, j: int) -> bool:
    """Whether rho(i), rho(j) span an edge of O(P). Orientation-insensitive."""
    _require_ideal(p, i)
    _require_ideal(p, j)
    if i == j:
        raise ValueError("an edge needs two distinct ideals")
    if i & ~j == 0:
        small, large = i, j
    elif j & ~i == 0:
        small, large = j, i
    else:
        return False
    return is_connected_subset(p, large & ~small)


def chain_edge(p: Poset, a: int, b: int) -> bool:
    """Whether rho(a), rho(b) span an edge of C(P)."""
    _require_antichain(p, a)
    _require_antichain(p, b)
    if a == b:
        raise ValueError("an edge needs two distinct antichains")
    return is_connected_subset(p, a ^ b)


@dataclass(frozen=True)
class SkeletonGraph:
    """The 1-skeleton of O(P) or C(P).

    ``vertices`` holds ideal or antichain masks in ascending order;
    ``edges`` holds index pairs ``(u, v)`` with ``u < v``, sorted.
    """

    kind: str
    d: int
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        n = len(self.vertices)
        if len(set(self.edges)) != len(self.edges):
            raise ValueError("duplicate edges")
        for u, v in self.edges:
            if not 0 <= u < v < n:
                raise ValueError(f"bad edge ({u}, {v})")

    def degrees(self) -> list[int]:
        deg = [0] * len(self.vertices)
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def degree_of(self, mask: int) -> int:
        return self.degrees()[self.vertices.index(mask)]

    def points(self) -> list[tuple[int, ...]]:
        return [rho(w, self.d) for w in self.vertices]


def vertex_sets(p: Poset, kind: Kind) -> list[int]:
    if kind == "order":
        return enumerate_ideals(p)
    if kind == "chain":
        return enumerate_antichains(p)
    raise ValueError(f"unknown polytope kind {kind!r}")


def skeleton(p: Poset, kind: Kind, edge_test=None) -> SkeletonGraph:
    """All-pairs edge test over the vertex list.

    ``edge_test(p, m1, m2)`` overrides the default predicate; the harness
    uses it for mutation testing.
    """
    verts = vertex_sets(p, kind)
    if edge_test is None:
        edge_test = _fast_order_edge if kind == "order" else _fast_chain_edge
    edges = []
    for u in range(len(verts)):
        for v in range(u + 1, len(verts)):
            if edge_test(p, verts[u], verts[v]):
                edges.append((u, v))
    return SkeletonGraph(kind, p.d, tuple(verts), tuple(edges))


# Unvalidated variants for the inner loop; vertices are known to be valid.
def _fast_order_edge(p, i, j):
    if i & ~j == 0:
        return is_connected_subset(p, j & ~i)
    if j & ~i == 0:
        return is_connected_subset(p, i & ~j)
    return False


def _fast_chain_edge(p, a, b):
    return is_connected_subset(p, a ^ b)


def degree_sequence(g: SkeletonGraph) -> list[int]:
    return sorted(g.degrees())


class IdealPair(NamedTuple):
    """Ideals I < J with J - I connected: an oriented edge of O(P)."""

    I: int
    J: int


class AntichainPair(NamedTuple):
    """Antichains (A, B) spanning an edge of C(P), oriented so that B is
    inside A or every comparable cross pair has its B-element below."""

    A: int
    B: int


def is_in_omega(p: Poset, pair: IdealPair) -> bool:
    i, j = pair
    return (
        p.is_ideal(i)
        and p.is_ideal(j)
        and i != j
        and i & ~j == 0
        and is_connected_subset(p, j & ~i)
    )


def _oriented(p, a, b):
    """(i) b inside a, or (ii) some element of b - a lies below an element of
    a - b and none lies above one."""
    if b & ~a == 0:
        return True
    if a & ~b == 0:
        return False
    only_a, only_b = a & ~b, b & ~a
    below = any(p.down[x] & only_b for x in bits(only_a))
    above = any(p.up[x] & only_b for x in bits(only_a))
    if below and not above:
        return True
    if above and not below:
        return False
    return None


def is_in_psi(p: Poset, pair: AntichainPair) -> bool:
    a, b = pair
    return (
        p.is_antichain(a)
        and p.is_antichain(b)
        and a != b
        and is_connected_subset(p, a ^ b)
        and _oriented(p, a, b) is True
    )


def normalize_antichain_pair(p: Poset, a: int, b: int) -> AntichainPair:
    """Orient an unordered edge {a, b} of C(P) as an element of Psi.

    A subset relation puts the larger antichain first. Otherwise the side
    whose private elements sit above the other's goes first. If no cross
    pair is comparable at all, the smaller mask goes first; a connected
    symmetric difference rules that case out, so it only matters for
    callers that skip validation.
    """
    _require_antichain(p, a)
    _require_antichain(p, b)
    if a == b or not is_connected_subset(p, a ^ b):
        raise NotInPsiError(f"({a:#x}, {b:#x}) does not span an edge of C(P)")
    oriented = _oriented(p, a, b)
    if oriented is None:
        oriented = a < b
    return AntichainPair(a, b) if oriented else AntichainPair(b, a)


def omega_to_psi(p: Poset, pair: IdealPair) -> AntichainPair:
    """(I, J) -> (max J, min(J - I) + (max I & max J)), with min(J - I)
    taken empty when J - I is a single element."""
    if not is_in_omega(p, pair):
        raise NotInOmegaError(f"{pair} is not an edge of O(P)")
    i, j = pair
    diff = j & ~i
    max_j = max_of(p, j)
    bottom = 0 if popcount(diff) == 1 else min_of(p, diff)
    return AntichainPair(max_j, bottom | (max_of(p, i) & max_j))


def psi_to_omega(p: Poset, pair: AntichainPair) -> IdealPair:
    """Inverse of omega_to_psi: J is generated by A, and I drops from J
    everything above some element of B - A (or just the lone element of
    A - B when B is inside A)."""
    if not is_in_psi(p, pair):
        raise NotInPsiError(f"{pair} is not a normalized edge of C(P)")
    a, b = pair
    j = down_closure(p, a)
    new = b & ~a
    if new == 0:
        return IdealPair(j & ~(a & ~b), j)
    above_new = 0
    for y in bits(new):
        above_new |= p.up[y]
    return IdealPair(j & ~above_new, j)


def enumerate_omega(p: Poset) -> list[IdealPair]:
    ideals = enumerate_ideals(p)
    return [
        IdealPair(i, j)
        for i in ideals
        for j in ideals
        if i != j and i & ~j == 0 and is_connected_subset(p, j & ~i)
    ]


def enumerate_psi(p: Poset) -> list[AntichainPair]:
    """Every ordered antichain pair satisfying the Psi conditions."""
    ants = enumerate_antichains(p)
    return [
        AntichainPair(a, b)
        for a in ants
        for b in ants
        if a != b and is_connected_subset(p, a ^ b) and _oriented(p, a, b) is True
    ]


@dataclass(frozen=True)
class Inequality:
    """``coeffs . x <= bound`` with exact rational data."""

    coeffs: tuple[Fraction, ...]
    bound: Fraction

    def __post_init__(self):
        if not any(self.coeffs) and self.bound == 0:
            raise ValueError("0 <= 0 is not a meaningful inequality")

    @classmethod
    def of(cls, coeffs, bound) -> "Inequality":
        return cls(tuple(Fraction(c) for c in coeffs), Fraction(bound))

    def lhs(self, point) -> Fraction:
        return sum((c * x for c, x in zip(self.coeffs, point) if c), Fraction(0))

    def satisfied(self, point) -> bool:
        return self.lhs(point) <= self.bound

    def tight(self, point) -> bool:
        return self.lhs(point) == self.bound

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 1:
                terms.append(f"+a{i}")
            elif c == -1:
                terms.append(f"-a{i}")
            elif c:
                terms.append(f"{'+' if c > 0 else '-'}{abs(c)}*a{i}")
        lhs = " ".join(terms).lstrip("+") or "0"
        return f"{lhs} <= {self.bound}"


def _unit(d, i, scale=1):
    return [scale if k == i else 0 for k in range(d)]


def h_description(p: Poset, kind: Kind, all_relations: bool = False) -> list[Inequality]:
    """Defining inequalities, redundancies included.

    order: 0 <= a_i <= 1 and a_i >= a_j for i < j (covers only unless
    ``all_relations``). chain: a_i >= 0 and one sum <= 1 per maximal chain.
    """
    d = p.d
    out = []
    if kind == "order":
        for i in range(d):
            out.append(Inequality.of(_unit(d, i, -1), 0))
            out.append(Inequality.of(_unit(d, i), 1))
        if all_relations:
            rel = [(i, j) for i in range(d) for j in bits(p.up[i] & ~bit(i))]
        else:
            rel = cover_pairs(p)
        for i, j in rel:
            c = [0] * d
            c[j], c[i] = 1, -1
            out.append(Inequality.of(c, 0))
    elif kind == "chain":
        for i in range(d):
            out.append(Inequality.of(_unit(d, i, -1), 0))
        for ch in maximal_chains(p):
            out.append(Inequality.of(rho(ch, d), 1))
    else:
        raise ValueError(f"unknown polytope kind {kind!r}")
    return out


@dataclass(frozen=True)
class EquivalenceReport:
    """Side-by-side invariants of O(P) and C(P).

    Facet counts are ``None`` when the oracle was skipped.
    """

    d: int
    x_free: bool
    witness: XWitness | None
    vertex_count: int
    edge_count_order: int
    edge_count_chain: int
    degseq_order: tuple[int, ...]
    degseq_chain: tuple[int, ...]
    facet_count_order: int | None
    facet_count_chain: int | None

    def violations(self) -> list[str]:
        """Invariants that fail to hold; empty when consistent."""
        out = []
        if self.edge_count_order != self.edge_count_chain:
            out.append("edge counts differ")
        if self.x_free != (self.degseq_order == self.degseq_chain):
            out.append("degree sequences disagree with X-freeness")
        if self.facet_count_order is not None and self.x_free != (
            self.facet_count_order == self.facet_count_chain
        ):
            out.append("facet counts disagree with X-freeness")
        return out

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "x_free": self.x_free,
            "witness": list(self.witness) if self.witness else None,
            "vertex_count": self.vertex_count,
            "edge_count_order": self.edge_count_order,
            "edge_count_chain": self.edge_count_chain,
            "degseq_order": list(self.degseq_order),
            "degseq_chain": list(self.degseq_chain),
            "facet_count_order": self.facet_count_order,
            "facet_count_chain": self.facet_count_chain,
        }


def check_equivalence(p: Poset, facets: bool = True, oracle_max_d: int = 6) -> EquivalenceReport:
    """Compare O(P) and C(P). Facets are counted by the geometric oracle when
    ``facets`` is set and ``p.d <= oracle_max_d``."""
    from .oracle import count_facets  # oracle imports this module

    witness = find_X_subposet(p)
    g_order = skeleton(p, "order")
    g_chain = skeleton(p, "chain")
    f_order = f_chain = None
    if facets and p.d <= oracle_max_d:
        f_order = count_facets(g_order.points(), h_description(p, "order"), p.d)
        f_chain = count_facets(g_chain.points(), h_description(p, "chain"), p.d)
    return EquivalenceReport(
        d=p.d,
        x_free=witness is None,
        witness=witness,
        vertex_count=len(g_order.vertices),
        edge_count_order=len(g_order.edges),
        edge_count_chain=len(g_chain.edges),
        degseq_order=tuple(degree_sequence(g_order)),
        degseq_chain=tuple(degree_sequence(g_chain)),
        facet_count_order=f_order,
        facet_count_chain=f_chain,
    )
