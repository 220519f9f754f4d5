from __future__ import annotations

import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from deformcat.groups import Subgroup, make_group
from deformcat.poset import (
    LatticeCache,
    MoebiusCache,
    moebius,
    moebius_by_inversion,
    moebius_cache,
    poset_moebius,
    sum_to_totient,
    totient_to_sum,
)

# möb(1, G) for the subgroup lattice, from the classical tables.
MU_TRIVIAL_TOP = {"C2": -1, "C4": 0, "C6": 1, "C30": -1, "C2xC2": 2, "C2xC2xC2": -8, "S3": 3, "D8": 0, "Q8": 0, "S4": -12}

groups = st.sampled_from(["C1", "C2", "C4", "C6", "C2xC2", "S3", "D8", "Q8", "C2xC4"]).map(make_group)


@pytest.mark.parametrize("spec", sorted(MU_TRIVIAL_TOP))
def test_moebius_bottom_to_top(spec):
    G = make_group(spec)
    assert moebius(G.trivial(), G.whole()) == MU_TRIVIAL_TOP[spec]


def test_number_theoretic_moebius_on_cyclic_groups():
    def mu(n):
        out, p = 1, 2
        while p * p <= n:
            if n % p == 0:
                n //= p
                if n % p == 0:
                    return 0
                out = -out
            p += 1
        return -out if n > 1 else out

    for n in range(1, 31):
        G = make_group(f"C{n}")
        for H in G.subgroups():
            assert moebius(H, G.whole()) == mu(n // H.order)


def test_poset_moebius_on_a_chain_and_divisors():
    chain = poset_moebius([0, 1, 2, 3], lambda a, b: a <= b)
    assert chain[(0, 1)] == -1 and (0, 2) not in chain
    divs = [1, 2, 3, 6]
    m = poset_moebius(divs, lambda a, b: b % a == 0)
    assert m[(1, 6)] == 1 and m[(1, 2)] == -1


@given(groups)
def test_descending_recursion_matches_matrix_inversion(G):
    oracle = moebius_by_inversion(G)
    mc = moebius_cache(G)
    for top in G.subgroup_bits():
        for low in G.subgroup_bits():
            assert mc.value(low, top) == oracle.get((low, top), 0)


@given(groups, st.data())
def test_sum_totient_duality(G, data):
    subs = G.subgroup_bits()
    f = {b: data.draw(st.integers(-5, 5)) for b in subs}
    I = Subgroup(G, data.draw(st.sampled_from(subs)))
    g = sum_to_totient(f, I)
    back = totient_to_sum(g, I)
    assert all(back[u] == f[u] for u in back)


def test_lattice_cache_round_trip(tmp_path):
    G = make_group("S3")
    cache = LatticeCache(tmp_path)
    path = cache.store(G)
    data = json.loads(path.read_text())
    assert len(data["subgroups"]) == 6
    fresh = MoebiusCache(G)
    assert cache.load_into(fresh)
    assert fresh.value(G.trivial().bits, G.full_bits) == 3


def test_lattice_cache_ignores_corrupt_files(tmp_path):
    G = make_group("C4")
    cache = LatticeCache(tmp_path)
    cache.store(G).write_text("{not json")
    assert not cache.load_into(MoebiusCache(G))
