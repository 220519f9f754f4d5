from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from deformcat.groups import (
    GroupSpecError,
    automorphisms,
    bits_to_list,
    canonical_group,
    conjugacy_classes_of_subgroups,
    direct_product,
    homomorphisms,
    is_factor_group,
    is_isomorphic,
    make_group,
    parse_table_document,
    quotient,
    sections,
    table_document,
)

CATALOG = ["C1", "C2", "C3", "C4", "C5", "C6", "C8", "C2xC2", "S3", "D8", "Q8", "C2xC4", "D12", "C2xC2xC2", "S4"]

# Counts from the standard tables of small groups.
SUBGROUP_COUNTS = {
    "C1": 1, "C2": 2, "C3": 2, "C4": 3, "C5": 2, "C6": 4, "C8": 4, "C2xC2": 5, "S3": 6,
    "D8": 10, "Q8": 6, "C2xC4": 8, "D12": 16, "C2xC2xC2": 16, "S4": 30,
}
CLASS_COUNTS = {"S3": 4, "D8": 8, "Q8": 6, "D12": 10, "S4": 11, "C2xC2": 5}
AUT_ORDERS = {
    "C1": 1, "C2": 1, "C3": 2, "C4": 2, "C5": 4, "C6": 2, "C8": 4, "C2xC2": 6, "S3": 6,
    "D8": 8, "Q8": 24, "C2xC4": 8, "D12": 12, "C2xC2xC2": 168, "S4": 24,
}

groups = st.sampled_from(CATALOG).map(make_group)
small_groups = st.sampled_from(["C1", "C2", "C3", "C4", "C6", "C2xC2", "S3"]).map(make_group)


@pytest.mark.parametrize("spec", CATALOG)
def test_subgroup_counts(spec):
    assert len(make_group(spec).subgroup_bits()) == SUBGROUP_COUNTS[spec]


@pytest.mark.parametrize("spec", sorted(CLASS_COUNTS))
def test_conjugacy_class_counts(spec):
    assert len(conjugacy_classes_of_subgroups(make_group(spec))) == CLASS_COUNTS[spec]


@pytest.mark.parametrize("spec", CATALOG)
def test_automorphism_group_orders(spec):
    A, maps = automorphisms(make_group(spec))
    assert A.order == AUT_ORDERS[spec] == len(maps)


def test_constructors():
    C4 = make_group("C4")
    assert C4.order == 4 and C4.is_abelian
    assert make_group("D8").order == 8  # order-based naming
    assert not make_group("D8").is_abelian
    assert sorted(make_group("S3").element_orders) == [1, 2, 2, 2, 3, 3]
    assert sorted(make_group("Q8").element_orders) == [1, 2, 4, 4, 4, 4, 4, 4]
    assert make_group("C2xC3").order == 6
    with pytest.raises(GroupSpecError):
        make_group("Z9")
    with pytest.raises(ValueError):
        make_group("C128")


def test_isomorphism_and_catalog():
    assert is_isomorphic(make_group("C6"), make_group("C2xC3")) is not None
    assert is_isomorphic(make_group("S3"), make_group("C6")) is None
    assert is_isomorphic(make_group("V4"), make_group("C2xC2")) is not None
    S3 = make_group("S3")
    C3 = next(H for H in S3.subgroups() if H.order == 3)
    Q = canonical_group(quotient(S3.whole(), C3))
    assert Q.order == 2 and canonical_group(Q) is Q
    assert is_factor_group(make_group("C2"), make_group("C4"))
    assert not is_factor_group(make_group("C2xC2"), make_group("C4"))
    assert is_factor_group(make_group("C2xC2"), make_group("D8"))


def test_hom_counts():
    # homomorphisms(E, L) lists maps L -> E
    assert len(homomorphisms(make_group("C2"), make_group("C4"), "epi")) == 1
    assert len(homomorphisms(make_group("C3"), make_group("C3"), "epi")) == 2
    assert len(homomorphisms(make_group("C2"), make_group("S3"))) == 2
    assert len(homomorphisms(make_group("S3"), make_group("C2"))) == 4
    assert len(homomorphisms(make_group("C2"), make_group("C2xC2"), "epi")) == 3


def test_sections_of_S3_and_C4():
    assert len(sections(make_group("S3"))) == 12
    assert len(sections(make_group("C4"))) == 6


def test_table_document_round_trip():
    for spec in ["S3", "Q8", "C2xC4"]:
        G = make_group(spec)
        H = parse_table_document(table_document(G))
        assert H.table == G.table


@given(groups)
def test_subgroups_obey_lagrange_and_closure(G):
    for b in G.subgroup_bits():
        els = bits_to_list(b)
        assert G.order % len(els) == 0
        assert G.closure(els) == b
        assert G.identity in els


@given(groups, st.data())
def test_intersection_and_join_are_subgroups(G, data):
    subs = G.subgroups()
    A = data.draw(st.sampled_from(subs))
    B = data.draw(st.sampled_from(subs))
    assert G.is_subgroup_bits((A & B).bits)
    J = A.join(B)
    assert A <= J and B <= J


@given(small_groups, small_groups)
def test_homomorphisms_are_multiplicative(E, L):
    for f in homomorphisms(E, L):
        for a in range(L.order):
            for b in range(L.order):
                assert f.images[L.mul(a, b)] == E.mul(f.images[a], f.images[b])
        K = f.kernel()
        assert L.is_normal_bits(K.bits, L.full_bits)
        assert K.order * f.image().order == L.order


@given(small_groups, small_groups)
def test_direct_product_projections(F, G):
    P = direct_product(F, G)
    assert P.order == F.order * G.order
    for x in range(P.order):
        for y in range(P.order):
            f1, g1 = divmod(x, G.order)
            f2, g2 = divmod(y, G.order)
            assert P.mul(x, y) == P.index(F.mul(f1, f2), G.mul(g1, g2))


@given(groups)
def test_class_representative_is_least_conjugate(G):
    for cls in conjugacy_classes_of_subgroups(G):
        bits = [H.bits for H in cls]
        assert cls[0].bits == min(bits)
        for b in bits:
            assert all(G.conjugate_bits(b, g) in bits for g in range(G.order))
