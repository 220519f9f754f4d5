"""The deformed biset category on a finite family of groups.

Morphisms ``F <- G`` have a basis ``d_U`` indexed by ``F x G``-conjugacy
classes of subgroups ``U <= F x G``.  The product is the double-coset sum

    d_U d_V = sum_{g in p2_top(U) \\ G / p1_top(V)}  ell(m)/m  d_{U * (g x 1)V}

with ``m = |p2_bot(U) & g p1_bot(V) g^-1|``.  The map
``nu(d_U) = |G|/|U| * avg_{f,g} s_{(f x g)U}`` sends it into the twisted
subgroup-category algebra.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .algebra import AlgebraElement, LambdaAlgebra, _acc
from .goursat import ProductSubgroup, _views, conjugate, star
from .groups import (
    DEFAULT_ORDER_CAP,
    Group,
    bits_to_list,
    class_representative,
    conjugacy_classes_of_subgroups,
    direct_product,
    popcount,
)
from .linalg import rank
from .scalars import EllSpec, Scalar

__all__ = [
    "GammaAlgebra",
    "GammaElement",
    "sigma_G",
    "bar_s",
    "biset_product",
    "burnside_check",
    "conjugation_check",
    "nu_rank",
    "principal_idempotent",
]


class GammaAlgebra:
    """Context for the deformed biset category; shares groups and ell with a
    :class:`LambdaAlgebra` used as the target of ``nu``."""

    def __init__(
        self,
        groups: Sequence[Union[Group, str]],
        ell_spec: Union[EllSpec, str] = "generic",
        *,
        order_cap: int = DEFAULT_ORDER_CAP,
        lam: Optional[LambdaAlgebra] = None,
    ):
        self.lam = lam if lam is not None else LambdaAlgebra(groups, ell_spec, order_cap=order_cap)
        self.groups = self.lam.groups
        self.ell = self.lam.ell
        self._cache: Dict[Tuple, Dict[ProductSubgroup, object]] = {}

    def scalar(self, x):
        return self.lam.scalar(x)

    def key(self, U: ProductSubgroup) -> ProductSubgroup:
        """Canonical (least bitset) representative of the class of ``U``."""
        P = direct_product(U.codomain, U.domain)
        return ProductSubgroup(U.codomain, U.domain, class_representative(P, U.bits))

    def hom(self, F: Group, G: Group) -> List[ProductSubgroup]:
        P = direct_product(F, G)
        return [ProductSubgroup(F, G, cls[0].bits) for cls in conjugacy_classes_of_subgroups(P)]

    def basis(self) -> List[ProductSubgroup]:
        return [U for F in self.groups for G in self.groups for U in self.hom(F, G)]

    @property
    def dim(self) -> int:
        return len(self.basis())

    def d(self, U: ProductSubgroup, c=1) -> "GammaElement":
        c = self.scalar(c)
        return GammaElement(self, {self.key(U): c} if c else {})

    def zero(self) -> "GammaElement":
        return GammaElement(self, {})

    def identity(self, G: Optional[Group] = None) -> "GammaElement":
        from .goursat import delta

        gs = self.groups if G is None else (G,)
        return GammaElement(self, {self.key(delta(H)): self.scalar(1) for H in gs})

    # ---- structure constants
    def structure_constants(
        self, U: ProductSubgroup, V: ProductSubgroup, rng: Optional[random.Random] = None
    ) -> Dict[ProductSubgroup, object]:
        """``d_U d_V`` as ``{class rep: coefficient}``.

        With ``rng`` the inputs are replaced by random conjugates and each
        double coset by a random representative; the result must not change.
        """
        if U.domain is not V.codomain:
            return {}
        if rng is None:
            key = (U, V)
            hit = self._cache.get(key)
            if hit is not None:
                return hit
        F, G, H = U.codomain, U.domain, V.domain
        if rng is not None:
            U = conjugate(U, rng.randrange(F.order), rng.randrange(G.order))
            V = conjugate(V, rng.randrange(G.order), rng.randrange(H.order))
        a_bits = _views(U)[3]  # p2_top(U)
        b_bits = _views(V)[0]  # p1_top(V)
        u_bot = _views(U)[2]
        v_bot = _views(V)[1]
        A, B = bits_to_list(a_bits), bits_to_list(b_bits)
        seen = 0
        out: Dict[ProductSubgroup, object] = {}
        for g in range(G.order):
            if (seen >> g) & 1:
                continue
            dc = 0
            for a in A:
                ag = G.mul(a, g)
                for b in B:
                    dc |= 1 << G.mul(ag, b)
            seen |= dc
            rep = rng.choice(bits_to_list(dc)) if rng is not None else g
            m = popcount(u_bot & G.conjugate_bits(v_bot, rep))
            Vg = conjugate(V, rep, H.identity)
            W = self.key(star(U, Vg))
            c = self.lam.coef(m) / m
            _acc(out, W, c)
        if rng is None:
            self._cache[(U, V)] = out
        return out

    def multiply(self, a: "GammaElement", b: "GammaElement") -> "GammaElement":
        if a.gam is not self or b.gam is not self:
            raise ValueError("elements from a different context")
        out: Dict[ProductSubgroup, object] = {}
        for U, cu in a.entries.items():
            for V, cv in b.entries.items():
                if U.domain is not V.codomain:
                    continue
                for W, c in self.structure_constants(U, V).items():
                    _acc(out, W, cu * cv * c)
        return GammaElement(self, out)

    # ---- the embedding into the subgroup-category algebra
    def nu(self, a: "GammaElement") -> AlgebraElement:
        out = self.lam.zero()
        for U, c in a.entries.items():
            G = U.domain
            out = out + bar_s(self.lam, U).scale(self.scalar(Fraction(G.order, U.order)) * c)
        return out

    def table(self) -> List[Dict[str, object]]:
        """Structure constants of all composable basis pairs, serialized."""
        rows = []
        names = {id(G): n for G, n in zip(self.groups, self.lam.names)}
        for U in self.basis():
            for V in self.basis():
                if U.domain is not V.codomain:
                    continue
                prod = self.structure_constants(U, V)
                rows.append({
                    "left": [names[id(U.codomain)], names[id(U.domain)], hex(U.bits)],
                    "right": [names[id(V.codomain)], names[id(V.domain)], hex(V.bits)],
                    "product": [[hex(W.bits), str(Scalar.coerce(c))] for W, c in sorted(prod.items(), key=lambda kv: kv[0].bits)],
                })
        return rows


@dataclass
class GammaElement:
    gam: GammaAlgebra
    entries: Dict[ProductSubgroup, object] = field(default_factory=dict)

    def __add__(self, other: "GammaElement") -> "GammaElement":
        out = dict(self.entries)
        for k, v in other.entries.items():
            _acc(out, k, v)
        return GammaElement(self.gam, out)

    def __neg__(self) -> "GammaElement":
        return GammaElement(self.gam, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other: "GammaElement") -> "GammaElement":
        return self + (-other)

    def scale(self, c) -> "GammaElement":
        c = self.gam.scalar(c)
        return GammaElement(self.gam, {k: v * c for k, v in self.entries.items() if v * c})

    def __mul__(self, other):
        if isinstance(other, GammaElement):
            return self.gam.multiply(self, other)
        return self.scale(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GammaElement):
            return NotImplemented
        return not (self - other).entries

    __hash__ = None  # type: ignore[assignment]

    def is_zero(self) -> bool:
        return not self.entries


# ---------------------------------------------------------------- averaging


def sigma_G(lam: LambdaAlgebra, G: Group, g: int) -> AlgebraElement:
    """``s`` of ``{g b g^-1 x b}``: the image of ``g`` in End(G)."""
    m = G.order
    return lam.s(ProductSubgroup(G, G, sum(1 << (G.conj(g, b) * m + b) for b in range(m))))


def principal_idempotent(lam: LambdaAlgebra, G: Group) -> AlgebraElement:
    """Image of ``e_G = (1/|G|) sum_g g``."""
    out = lam.zero()
    for g in range(G.order):
        out = out + sigma_G(lam, G, g)
    return out.scale(Fraction(1, G.order))


def bar_s(lam: LambdaAlgebra, U: ProductSubgroup) -> AlgebraElement:
    """``(1/(|F||G|)) sum_{f, g} s_{(f x g)U}``."""
    F, G = U.codomain, U.domain
    out: Dict[ProductSubgroup, object] = {}
    w = lam.scalar(Fraction(1, F.order * G.order))
    for f in range(F.order):
        for g in range(G.order):
            _acc(out, conjugate(U, f, g), w)
    return lam.element(out)


# ---------------------------------------------------------------- biset oracle


def _cosets(P: Group, bits: int) -> Tuple[List[int], List[int]]:
    """Left cosets ``zU`` of the subgroup ``bits``: (coset index per element, representatives)."""
    idx = [-1] * P.order
    reps = []
    els = bits_to_list(bits)
    for z in range(P.order):
        if idx[z] >= 0:
            continue
        k = len(reps)
        reps.append(z)
        for u in els:
            idx[P.mul(z, u)] = k
    return idx, reps


def biset_product(U: ProductSubgroup, V: ProductSubgroup) -> Dict[int, int]:
    """Decompose ``(F x G)/U  x_G  (G x H)/V`` into transitive bisets.

    Returns ``{least bitset of the stabilizer class in F x H: multiplicity}``.
    Works directly with the bisets, without any double-coset formula.
    """
    F, G, H = U.codomain, U.domain, V.domain
    P1, P2, P3 = direct_product(F, G), direct_product(G, H), direct_product(F, H)
    ix, rx = _cosets(P1, U.bits)
    iy, ry = _cosets(P2, V.bits)

    def act1(f: int, g: int, x: int) -> int:
        return ix[P1.mul(P1.index(f, g), rx[x])]

    def act2(g: int, h: int, y: int) -> int:
        return iy[P2.mul(P2.index(g, h), ry[y])]

    nx, ny = len(rx), len(ry)
    # G-orbits on X x Y under (x, y) -> ((1,g)x, (g,1)y)
    orbit_of = [-1] * (nx * ny)
    norb = 0
    for x in range(nx):
        for y in range(ny):
            if orbit_of[x * ny + y] >= 0:
                continue
            for g in range(G.order):
                x2 = act1(F.identity, g, x)
                y2 = act2(g, H.identity, y)
                orbit_of[x2 * ny + y2] = norb
            norb += 1
    reps_xy = {}
    for x in range(nx):
        for y in range(ny):
            reps_xy.setdefault(orbit_of[x * ny + y], (x, y))

    def act3(f: int, h: int, o: int) -> int:
        x, y = reps_xy[o]
        return orbit_of[act1(f, G.identity, x) * ny + act2(G.identity, h, y)]

    done = [False] * norb
    out: Dict[int, int] = {}
    for o in range(norb):
        if done[o]:
            continue
        stab = 0
        for f in range(F.order):
            for h in range(H.order):
                o2 = act3(f, h, o)
                done[o2] = True
                if o2 == o:
                    stab |= 1 << P3.index(f, h)
        rep = class_representative(P3, stab)
        out[rep] = out.get(rep, 0) + 1
    return out


def burnside_check(groups: Sequence[Union[Group, str]], *, order_cap: int = DEFAULT_ORDER_CAP) -> Dict[str, object]:
    """At ``ell(n) = n`` compare every structure constant with the biset oracle."""
    gam = GammaAlgebra(groups, "power:1", order_cap=order_cap)
    pairs = 0
    mismatches = []
    nonintegral = []
    for U in gam.basis():
        for V in gam.basis():
            if U.domain is not V.codomain:
                continue
            pairs += 1
            got = gam.structure_constants(U, V)
            for c in got.values():
                if Fraction(c).denominator != 1 or c < 0:
                    nonintegral.append([hex(U.bits), hex(V.bits), str(c)])
            want = biset_product(U, V)
            got_int = {W.bits: int(c) for W, c in got.items()}
            if got_int != want:
                mismatches.append([hex(U.bits), hex(V.bits)])
    return {
        "groups": list(gam.lam.names),
        "dim": gam.dim,
        "pairs": pairs,
        "nonintegral": nonintegral,
        "mismatches": mismatches,
        "ok": not mismatches and not nonintegral,
    }


def conjugation_check(lam: LambdaAlgebra) -> bool:
    """``s_{(f x g)U} == sigma_F(f) s_U sigma_G(g^-1)`` for every basis element and ``f, g``."""
    for U in lam.basis():
        F, G = U.codomain, U.domain
        for f in range(F.order):
            left = sigma_G(lam, F, f) * lam.s(U)
            for g in range(G.order):
                if left * sigma_G(lam, G, G.inv(g)) != lam.s(conjugate(U, f, g)):
                    return False
    return True


def nu_rank(gam: GammaAlgebra) -> int:
    """Rank of the images ``nu(d_U)``; equals ``gam.dim`` when ``nu`` is injective."""
    basis = gam.lam.basis()
    return rank([gam.nu(gam.d(U)).vector(basis) for U in gam.basis()])
