from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from deformcat.algebra import LambdaAlgebra
from deformcat.gamma import (
    GammaAlgebra,
    bar_s,
    biset_product,
    burnside_check,
    conjugation_check,
    nu_rank,
    principal_idempotent,
    sigma_G,
)
from deformcat.goursat import ProductSubgroup, delta
from deformcat.scalars import Scalar

l2, l3 = Scalar.variable(2), Scalar.variable(3)

GAM23 = GammaAlgebra(["C2", "C3"])
GAM_S3 = GammaAlgebra(["S3"], "assign:2=5,3=7")


def gamma_elements(gam):
    basis = gam.basis()
    return st.lists(st.tuples(st.sampled_from(basis), st.integers(-2, 2)), max_size=3).map(
        lambda items: sum((gam.d(U, c) for U, c in items if c), gam.zero())
    )


def test_dimensions_are_class_counts():
    assert GammaAlgebra(["C2"]).dim == 5
    assert GammaAlgebra(["S3"]).dim == 22  # rank of the double Burnside ring of S3
    assert GAM23.dim == 19


def test_nu_is_injective():
    assert nu_rank(GAM23) == GAM23.dim
    assert nu_rank(GammaAlgebra(["S3"])) == 22


def test_cyclic_product_single_double_coset():
    gam = GammaAlgebra(["C3"])
    C3 = gam.groups[0]
    left = ProductSubgroup(C3, C3, sum(1 << (C3.identity * 3 + g) for g in range(3)))  # 1 x C3
    right = ProductSubgroup(C3, C3, sum(1 << (g * 3 + C3.identity) for g in range(3)))  # C3 x 1
    prod = gam.structure_constants(left, right)
    one = ProductSubgroup(C3, C3, 1 << (C3.identity * 3 + C3.identity))
    assert prod == {gam.key(one): l3 / 3}
    # the other order has three double cosets, each contributing 1 to C3 x C3
    back = gam.structure_constants(right, left)
    assert back == {gam.key(ProductSubgroup(C3, C3, (1 << 9) - 1)): Scalar(3)}


@given(gamma_elements(GAM23), gamma_elements(GAM23))
def test_nu_is_multiplicative(a, b):
    assert GAM23.nu(a * b) == GAM23.nu(a) * GAM23.nu(b)


@given(gamma_elements(GAM_S3), gamma_elements(GAM_S3), gamma_elements(GAM_S3))
def test_associativity(a, b, c):
    assert (a * b) * c == a * (b * c)


def test_identity():
    for gam in (GAM23, GAM_S3):
        one = gam.identity()
        for U in gam.basis():
            assert one * gam.d(U) == gam.d(U) == gam.d(U) * one
        lam = gam.lam
        avg = sum((principal_idempotent(lam, H) for H in gam.groups), lam.zero())
        assert gam.nu(one) == avg


def test_representative_independence():
    rng = random.Random(7)
    B = GAM_S3.basis()
    for U in B:
        for V in B:
            assert GAM_S3.structure_constants(U, V, rng) == GAM_S3.structure_constants(U, V)


def test_averaging():
    lam = LambdaAlgebra(["S3"])
    S3 = lam.groups[0]
    e = principal_idempotent(lam, S3)
    assert e * e == e
    for g in range(S3.order):
        for h in range(S3.order):
            assert sigma_G(lam, S3, g) * sigma_G(lam, S3, h) == sigma_G(lam, S3, S3.mul(g, h))
    for U in lam.basis():
        b = bar_s(lam, U)
        assert e * lam.s(U) * e == b
    C2 = LambdaAlgebra(["C2"])
    D = delta(C2.groups[0])
    assert bar_s(C2, D) == C2.s(D)


def test_conjugation_equivariance():
    assert conjugation_check(LambdaAlgebra(["S3"]))
    assert conjugation_check(LambdaAlgebra(["C2", "C3"], "power:1"))


@pytest.mark.parametrize("groups", [["C2"], ["S3"], ["C2", "C3"], ["C4"]])
def test_burnside_specialization(groups):
    rep = burnside_check(groups)
    assert rep["ok"], rep


def test_biset_product_known_case():
    # (C2 x C2)/1 composed with itself over C2: |C2| copies of the regular biset
    gam = GammaAlgebra(["C2"], "power:1")
    C2 = gam.groups[0]
    one = ProductSubgroup(C2, C2, 1)
    assert biset_product(one, one) == {1: 2}
    assert gam.structure_constants(one, one) == {gam.key(one): 2}
