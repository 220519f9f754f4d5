from __future__ import annotations

import pytest

from deformcat.algebra import LambdaAlgebra
from deformcat.groups import make_group
from deformcat.scalars import Scalar
from deformcat.ssc import (
    CERTIFIED_NOT_SEMISIMPLE,
    CERTIFIED_SEMISIMPLE,
    _cyclic_keys,
    _trace_of_left_mult,
    center,
    certify_semisimple_via_T,
    determinant_audit,
    dimension_identity,
    gram_matrix,
    gram_radical,
    relevant_pairs,
    seed_class_count,
    t_matrix,
    verify_example_blocks,
)

l2, l3 = Scalar.variable(2), Scalar.variable(3)
G = make_group

# Diagonal values of T_E^L for pairs whose matrix is scalar.
T_SCALAR = [
    ("C2", "C4", l2),
    ("C2", "C8", l2 * l2),
    ("C4", "C4", Scalar(1)),
    ("C1", "C4", l2 * l2 - l2),
    ("C1", "C2", l2 - Scalar(1)),
    ("C2", "S3", l3 - Scalar(3)),
    ("S3", "S3", Scalar(1)),
    ("C2", "C6", l3 - Scalar(1)),
    ("C2", "C2xC2", l2 - Scalar(2)),
]


@pytest.mark.parametrize("E,L,value", T_SCALAR)
def test_t_matrix_values(E, L, value):
    T = t_matrix(G(E), G(L))
    assert T.is_scalar_identity() == value
    assert t_matrix(G(E), G(L), route="bruteforce").entries == T.entries


def test_t_matrix_sizes():
    assert t_matrix(G("C2"), G("C2xC2")).size == 3
    assert t_matrix(G("S3"), G("S3")).size == 6
    assert t_matrix(G("C3"), G("C3")).size == 2


def test_determinant_audit_resolves_degree_question():
    a = determinant_audit(t_matrix(G("C2"), G("C2xC2")))
    assert a["determinant"] == str((l2 - Scalar(2)) * (l2 - Scalar(2)) * (l2 - Scalar(2)))
    assert a["degree"] == 3 and a["monic"]
    assert a["matches"] == ["d*|epi|"]
    assert a["diagonal_degree_is_d"] and a["offdiagonal_below_d"]
    b = determinant_audit(t_matrix(G("C2"), G("C8")))
    assert b["degree"] == 2 and b["d"] == 2 and b["diagonal_monic"]


def test_relevant_pairs_of_C4():
    pairs = [(E.order, L.order) for E, L in relevant_pairs([G("C4")])]
    assert pairs == [(1, 1), (1, 2), (2, 2), (1, 4), (2, 4), (4, 4)]


def test_trace_of_left_multiplication_matches_matrix_trace():
    alg = LambdaAlgebra(["C2", "C3"], "assign:2=3,3=5")
    basis = alg.basis()
    traces = _trace_of_left_mult(alg)
    for W in basis:
        sW = alg.s(W)
        tr = sum((sW * alg.s(X)).coefficient(X) for X in basis)
        assert tr == traces.get(W, 0)


@pytest.mark.parametrize("groups", [["C1"], ["C2"], ["C3"], ["C4"], ["C2", "C3"], ["C6"], ["S3"]])
def test_generic_families_are_certified_semisimple(groups):
    rep = certify_semisimple_via_T(LambdaAlgebra(groups))
    assert rep.verdict == CERTIFIED_SEMISIMPLE and rep.certificate == "T-matrices"


def test_trivial_twist_is_not_semisimple():
    for groups, spec in [(["C2"], "assign:2=1"), (["C2"], "unit"), (["C3"], "unit")]:
        rep = certify_semisimple_via_T(LambdaAlgebra(groups, spec))
        assert rep.verdict == CERTIFIED_NOT_SEMISIMPLE


def test_radical_at_lambda_one():
    alg = LambdaAlgebra(["C2"], "assign:2=1")
    g = gram_radical(alg)
    assert g["rank"] == 2 and len(g["radical"]) == 3
    k = _cyclic_keys(alg.groups[0])
    r = alg.s(k["s0"]) - alg.s(k["s01"]) - alg.s(k["s10"]) + alg.s(k["s11"])
    # r lies in the radical and squares to zero
    assert (r * r).is_zero()
    rad = g["radical"]
    # the radical is an ideal: products with basis elements stay in its span
    from deformcat.linalg import rank

    basis = alg.basis()
    vecs = [e.vector(basis) for e in rad]
    assert rank(vecs + [r.vector(basis)]) == 3
    for x in rad:
        for U in basis:
            assert rank(vecs + [(alg.s(U) * x).vector(basis)]) == 3
            assert rank(vecs + [(x * alg.s(U)).vector(basis)]) == 3
    # nilpotent: every product of three radical elements vanishes
    for x in rad:
        for y in rad:
            for z in rad:
                assert (x * y * z).is_zero()


def test_gram_symbolic_matches_specialization():
    alg = LambdaAlgebra(["C2"])
    M = gram_matrix(alg)
    g = gram_radical(alg, seed=1)
    assert g["full_rank"] and g["mode"] == "symbolic-by-evaluation"
    assert len(M) == 5


@pytest.mark.parametrize("q,dims", [(2, [4, 1]), (3, [4, 1, 1]), (5, [4, 1, 3])])
def test_example_blocks(q, dims):
    rep = verify_example_blocks(q)
    assert rep["ok"]
    assert sorted(rep["checks"][f"{n}_dim"] for n in rep["expected_dims"]) == sorted(dims)


def test_example_blocks_at_a_specialization():
    assert verify_example_blocks(2, "assign:2=3")["ok"]
    with pytest.raises(ValueError):
        verify_example_blocks(2, "assign:2=1")
    with pytest.raises(ValueError):
        verify_example_blocks(4)


@pytest.mark.parametrize("spec,expected", [("C3", 3), ("C5", 5), ("C2", 2)])
def test_center_dimension_equals_seed_class_count(spec, expected):
    alg = LambdaAlgebra([spec])
    assert seed_class_count(alg.groups) == expected
    assert len(center(alg)) == expected


@pytest.mark.parametrize("groups,dim", [(["C2"], 5), (["C3"], 6), (["C4"], 15), (["S3"], 60), (["C2", "C3"], 19)])
def test_dimension_identity(groups, dim):
    rep = dimension_identity([G(x) for x in groups])
    assert rep["ok"] and rep["lattice_dim"] == dim
