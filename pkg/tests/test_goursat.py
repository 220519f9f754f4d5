from __future__ import annotations

from hypothesis import given
from hypothesis import strategies as st

from deformcat.goursat import (
    ProductSubgroup,
    adequate_subgroups,
    cocycle_order,
    conjugate,
    delta,
    factor_through_thorax,
    from_quintuple,
    goursat,
    graph,
    is_adequate,
    morphisms,
    opposite,
    order_identity_check,
    star,
    strongly_compatible,
    thorax_class,
    thorax_order,
)
from deformcat.groups import direct_product, homomorphisms, is_isomorphic, make_group, quotient, sections

NAMES = ["C1", "C2", "C3", "C4", "C2xC2", "S3"]
groups = st.sampled_from(NAMES).map(make_group)


def _star_by_definition(U: ProductSubgroup, V: ProductSubgroup) -> set:
    return {(r, t) for r, s in U.pairs() for s2, t in V.pairs() if s == s2}


def _goursat_count(F, G) -> int:
    """|S(F x G)| as a sum over pairs of sections of the number of isomorphisms."""
    total = 0
    for a in sections(F):
        A = quotient(a.top, a.bottom)
        for b in sections(G):
            if A.order != b.top.order // b.bottom.order:
                continue
            B = quotient(b.top, b.bottom)
            if is_isomorphic(A, B) is not None:
                total += len(homomorphisms(A, B, "iso"))
    return total


def test_subgroup_counts_of_products():
    C2, C4, S3 = make_group("C2"), make_group("C4"), make_group("S3")
    assert len(morphisms(C2, C2)) == 5
    assert len(morphisms(C4, C4)) == 15
    assert len(morphisms(S3, S3)) == 60
    assert len(morphisms(C2, make_group("C3"))) == 4


def test_goursat_count_matches_enumeration():
    for F, G in [("C2", "C4"), ("C4", "C4"), ("S3", "C2"), ("C2xC2", "C2"), ("S3", "S3")]:
        F, G = make_group(F), make_group(G)
        assert _goursat_count(F, G) == len(morphisms(F, G))


def test_thoraces_in_C4xC4():
    C4 = make_group("C4")
    order8 = [U for U in morphisms(C4, C4) if U.order == 8]
    assert sorted(thorax_order(U) for U in order8) == [1, 1, 2]


def test_delta_and_graph():
    S3 = make_group("S3")
    D = delta(S3)
    assert D.order == 6 and thorax_class(D).order == 6
    for U in morphisms(S3, S3):
        assert star(D, U) == U == star(U, D)
    f = homomorphisms(S3, S3, "iso")[1]
    Gf = graph(f)
    assert Gf.order == 6 and len(Gf.pairs()) == 6


@given(groups, groups, st.data())
def test_goursat_round_trip(F, G, data):
    U = data.draw(st.sampled_from(morphisms(F, G)))
    g = goursat(U)
    assert from_quintuple(g) == U
    assert U.order == g.p1_top.order * g.p2_bot.order
    assert U.p1_top.order // U.p1_bot.order == U.p2_top.order // U.p2_bot.order


@given(groups, groups, groups, st.data())
def test_star_matches_definition_and_order_identity(F, G, H, data):
    U = data.draw(st.sampled_from(morphisms(F, G)))
    V = data.draw(st.sampled_from(morphisms(G, H)))
    W = star(U, V)
    assert set(W.pairs()) == _star_by_definition(U, V)
    assert order_identity_check(U, V)
    assert opposite(W) == star(opposite(V), opposite(U))


@given(groups, groups, groups, groups, st.data())
def test_star_associative_and_cocycle_law(F, G, H, K, data):
    U = data.draw(st.sampled_from(morphisms(F, G)))
    V = data.draw(st.sampled_from(morphisms(G, H)))
    W = data.draw(st.sampled_from(morphisms(H, K)))
    assert star(star(U, V), W) == star(U, star(V, W))
    assert cocycle_order(U, V) * cocycle_order(star(U, V), W) == cocycle_order(U, star(V, W)) * cocycle_order(V, W)


@given(groups, groups, st.data())
def test_factorization_through_thorax(F, G, data):
    U = data.draw(st.sampled_from(morphisms(F, G)))
    X, Y, Q = factor_through_thorax(U)
    assert star(X, Y) == U
    assert Q.order == thorax_order(U)


@given(groups, groups, st.data())
def test_conjugation_preserves_thorax_and_order(F, G, data):
    U = data.draw(st.sampled_from(morphisms(F, G)))
    f = data.draw(st.integers(0, F.order - 1))
    g = data.draw(st.integers(0, G.order - 1))
    V = conjugate(U, f, g)
    assert V.order == U.order and thorax_order(V) == thorax_order(U)
    P = direct_product(F, G)
    assert P.is_subgroup_bits(V.bits)


@given(groups, groups, groups, st.data())
def test_adequate_subgroups(F, G, H, data):
    I = data.draw(st.sampled_from(morphisms(F, G)))
    J = data.draw(st.sampled_from(morphisms(G, H)))
    W = star(I, J)
    ad = adequate_subgroups(W)
    assert W in ad
    for K in W.subgroups():
        assert (K in ad) == is_adequate(K, W)
    assert strongly_compatible(I, J) == (I.p2_top == J.p1_top)
