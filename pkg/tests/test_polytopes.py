from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import antichain, chain
from orderchain.errors import NotAntichainError, NotIdealError, NotInOmegaError, NotInPsiError
from orderchain.harness import random_poset
from orderchain.poset import bits, find_X_subposet, max_of, min_of, poset_from_covers
from orderchain.polytopes import (
    AntichainPair,
    IdealPair,
    Inequality,
    SkeletonGraph,
    chain_edge,
    check_equivalence,
    degree_sequence,
    enumerate_omega,
    enumerate_psi,
    h_description,
    is_in_psi,
    normalize_antichain_pair,
    omega_to_psi,
    order_edge,
    psi_to_omega,
    rho,
    skeleton,
)

A, B, C, G, H = (1 << i for i in range(5))

posets = st.builds(
    random_poset,
    st.integers(1, 7),
    st.fractions(0, 1, max_denominator=20),
    st.integers(0, 2**32),
)


def test_rho():
    assert rho(0, 3) == (0, 0, 0)
    assert rho(0b101, 3) == (1, 0, 1)
    assert rho(0b11, 2) == (1, 1)


# -- edge predicates --------------------------------------------------------


def test_order_edge(X):
    assert order_edge(X, 0, A | B | C)
    assert not order_edge(X, 0, A | B)
    assert order_edge(X, A, 0)
    assert not order_edge(X, A, B)  # neither contains the other
    with pytest.raises(NotIdealError):
        order_edge(X, 0, C)
    with pytest.raises(ValueError):
        order_edge(X, A, A)


def test_chain_edge(X):
    assert chain_edge(X, C, A | B)
    assert not chain_edge(antichain(2), 0b01, 0b10)
    assert chain_edge(X, 0, G)
    with pytest.raises(NotAntichainError):
        chain_edge(X, A | C, 0)


# -- skeletons --------------------------------------------------------------


def test_X_degree_sequences(X):
    g_order = skeleton(X, "order")
    g_chain = skeleton(X, "chain")
    assert len(g_order.vertices) == len(g_chain.vertices) == 8
    assert len(g_order.edges) == len(g_chain.edges) == 24
    assert degree_sequence(g_order) == [6] * 8
    assert degree_sequence(g_chain) == [5, 6, 6, 6, 6, 6, 6, 7]


@pytest.mark.parametrize("kind", ["order", "chain"])
def test_square(kind):
    g = skeleton(antichain(2), kind)
    assert g.vertices == (0, 1, 2, 3)
    assert g.edges == ((0, 1), (0, 2), (1, 3), (2, 3))
    assert degree_sequence(g) == [2, 2, 2, 2]


def test_chain_poset_is_simplex():
    # O and C of a chain are both simplices: complete graphs
    for kind in ("order", "chain"):
        g = skeleton(chain(4), kind)
        assert len(g.vertices) == 5 and len(g.edges) == 10


def test_skeleton_graph_validation():
    with pytest.raises(ValueError):
        SkeletonGraph("order", 1, (0, 1), ((0, 1), (0, 1)))
    with pytest.raises(ValueError):
        SkeletonGraph("order", 1, (0, 1), ((1, 0),))
    with pytest.raises(ValueError):
        skeleton(chain(2), "cube")


# -- bijection --------------------------------------------------------------


def test_omega_to_psi_examples(X):
    assert omega_to_psi(X, IdealPair(0, A | B | C)) == (C, A | B)
    assert omega_to_psi(X, IdealPair(A, A | B)) == (A | B, A)
    assert omega_to_psi(X, IdealPair(0, A)) == (A, 0)
    with pytest.raises(NotInOmegaError):
        omega_to_psi(X, IdealPair(0, A | B))
    with pytest.raises(NotInOmegaError):
        omega_to_psi(X, IdealPair(A | B | C, 0))


def test_psi_to_omega_examples(X):
    assert psi_to_omega(X, AntichainPair(C, A | B)) == (0, A | B | C)
    assert psi_to_omega(X, AntichainPair(A | B, A)) == (A, A | B)
    assert psi_to_omega(X, AntichainPair(A, 0)) == (0, A)
    with pytest.raises(NotInPsiError):
        psi_to_omega(X, AntichainPair(A | B, C))  # wrong orientation
    with pytest.raises(NotInPsiError):
        psi_to_omega(X, AntichainPair(A, B))  # not an edge


def test_normalize(X):
    assert normalize_antichain_pair(X, A | B, C) == (C, A | B)
    assert normalize_antichain_pair(X, A, A | B) == (A | B, A)
    assert normalize_antichain_pair(X, 0, G) == (G, 0)
    with pytest.raises(NotInPsiError):
        normalize_antichain_pair(X, A, B)


def test_X_bijection_table(X):
    omega = enumerate_omega(X)
    psi = enumerate_psi(X)
    assert len(omega) == len(psi) == 24
    assert sorted(omega_to_psi(X, q) for q in omega) == sorted(psi)


def test_normalize_puts_upper_side_first(X):
    assert normalize_antichain_pair(X, C, G) == (G, C)
    assert normalize_antichain_pair(X, A, C) == (C, A)


@given(posets)
@settings(max_examples=120, deadline=None)
def test_bijection_properties(p):
    omega = enumerate_omega(p)
    psi = enumerate_psi(p)
    g_order, g_chain = skeleton(p, "order"), skeleton(p, "chain")
    assert len(omega) == len(psi) == len(g_order.edges) == len(g_chain.edges)
    image = [omega_to_psi(p, q) for q in omega]
    assert len(set(image)) == len(image)
    assert set(image) == set(psi)
    for q, (a, b) in zip(omega, image):
        assert psi_to_omega(p, AntichainPair(a, b)) == q
        i, j = q
        diff = j & ~i
        assert min_of(p, diff) & max_of(p, i) & max_of(p, j) == 0
        if bin(diff).count("1") > 1:
            assert a & ~b == max_of(p, diff)
            assert b & ~a == min_of(p, diff)


@given(posets)
@settings(max_examples=120, deadline=None)
def test_psi_has_no_mixed_orientations(p):
    for a, b in enumerate_psi(p):
        up = any(p.less(x, y) for x in bits(a) for y in bits(b))
        down = any(p.less(y, x) for x in bits(a) for y in bits(b))
        assert not (up and down)


@given(posets)
@settings(max_examples=120, deadline=None)
def test_normalization_matches_skeleton(p):
    g = skeleton(p, "chain")
    normalized = {normalize_antichain_pair(p, g.vertices[u], g.vertices[v]) for u, v in g.edges}
    assert normalized == set(enumerate_psi(p))
    assert all(is_in_psi(p, q) for q in normalized)


@given(posets)
@settings(max_examples=120, deadline=None)
def test_degree_facts(p):
    g_order, g_chain = skeleton(p, "order"), skeleton(p, "chain")
    x_free = find_X_subposet(p) is None
    assert g_chain.degree_of(0) == p.d
    assert min(g_order.degrees()) >= (p.d if x_free else p.d + 1)
    assert (degree_sequence(g_order) == degree_sequence(g_chain)) == x_free
    assert len(g_order.vertices) == len(g_chain.vertices)


# -- inequalities -----------------------------------------------------------


def test_h_description_chain_X(X):
    ineqs = h_description(X, "chain")
    assert len(ineqs) == 9
    assert sum(all(c <= 0 for c in q.coeffs) for q in ineqs) == 5
    chains = [q for q in ineqs if q.bound == 1]
    assert {rho_mask(q) for q in chains} == {A | C | G, A | C | H, B | C | G, B | C | H}


def rho_mask(q):
    return sum(1 << i for i, c in enumerate(q.coeffs) if c == 1)


def test_h_description_singleton():
    ineqs = h_description(chain(1), "order")
    assert ineqs == [Inequality.of([-1], 0), Inequality.of([1], 1)]


def test_h_description_order_chain3():
    ineqs = h_description(chain(3), "order")
    assert len(ineqs) == 8
    # a_0 >= a_1 and a_1 >= a_2 written as a_1 - a_0 <= 0, a_2 - a_1 <= 0
    assert ineqs[6:] == [Inequality.of([-1, 1, 0], 0), Inequality.of([0, -1, 1], 0)]
    full = h_description(chain(3), "order", all_relations=True)
    assert len(full) == 9


def test_h_descriptions_hold_at_vertices(small_posets):
    for p in small_posets:
        for kind in ("order", "chain"):
            pts = skeleton(p, kind).points()
            for q in h_description(p, kind, all_relations=True) if kind == "order" else h_description(p, kind):
                assert all(q.satisfied(x) for x in pts)


def test_inequality_basics():
    q = Inequality.of([1, Fraction(1, 2)], 1)
    assert q.satisfied((1, 0)) and q.tight((1, 0))
    assert not q.satisfied((1, 1))
    assert str(q) == "a0 +1/2*a1 <= 1"
    with pytest.raises(ValueError):
        Inequality.of([0, 0], 0)


# -- equivalence report -----------------------------------------------------


def test_check_equivalence_X(X):
    r = check_equivalence(X)
    assert not r.x_free
    assert r.witness == (0, 1, 2, 3, 4)
    assert r.edge_count_order == r.edge_count_chain == 24
    assert r.degseq_order == (6,) * 8
    assert r.degseq_chain == (5, 6, 6, 6, 6, 6, 6, 7)
    assert (r.facet_count_order, r.facet_count_chain) == (8, 9)
    assert r.vertex_count == 8
    assert r.violations() == []


def test_check_equivalence_chain():
    r = check_equivalence(chain(3))
    assert r.x_free and r.witness is None
    assert r.degseq_order == r.degseq_chain
    assert r.facet_count_order == r.facet_count_chain == 4
    assert r.violations() == []


def test_check_equivalence_antichain():
    r = check_equivalence(antichain(3))
    assert r.x_free
    assert r.degseq_order == r.degseq_chain == (3,) * 8
    assert r.facet_count_order == r.facet_count_chain == 6


def test_check_equivalence_skips_facets_above_guard():
    r = check_equivalence(chain(8), oracle_max_d=6)
    assert r.facet_count_order is None and r.facet_count_chain is None
    assert r.violations() == []
    assert check_equivalence(chain(3), facets=False).facet_count_order is None


def test_report_flags_inconsistency(X):
    from dataclasses import replace

    r = replace(check_equivalence(X), edge_count_chain=23, facet_count_chain=8)
    assert r.violations() == ["edge counts differ", "facet counts disagree with X-freeness"]
