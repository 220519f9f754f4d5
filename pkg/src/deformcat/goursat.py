"""Subgroups of direct products: Goursat data, the star product and related predicates.

A subgroup ``U`` of ``R x S`` is a morphism ``R <- S``.  Pairs ``r x s`` are
encoded as ``r*|S| + s``, matching :class:`deformcat.groups.ProductGroup`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple, Union

from .groups import (
    Group,
    GroupMap,
    Quotient,
    Subgroup,
    bits_to_list,
    canonical_group,
    direct_product,
    popcount,
    quotient,
)
from .scalars import EllSpec, ell

__all__ = [
    "ProductSubgroup",
    "GoursatData",
    "morphisms",
    "goursat",
    "from_quintuple",
    "graph",
    "delta_iso",
    "delta",
    "star",
    "opposite",
    "conjugate",
    "thorax_class",
    "cocycle_sigma",
    "strongly_compatible",
    "adequate_subgroups",
    "order_identity_check",
    "factor_through_thorax",
]


@dataclass(frozen=True)
class ProductSubgroup:
    """A subgroup of ``codomain x domain``, tagged with both groups."""

    codomain: Group
    domain: Group
    bits: int

    @property
    def order(self) -> int:
        return popcount(self.bits)

    def __len__(self) -> int:
        return self.order

    def pairs(self) -> List[Tuple[int, int]]:
        m = self.domain.order
        return [divmod(x, m) for x in bits_to_list(self.bits)]

    def __contains__(self, pair: Tuple[int, int]) -> bool:
        r, s = pair
        return bool((self.bits >> (r * self.domain.order + s)) & 1)

    def __le__(self, other: "ProductSubgroup") -> bool:
        _same_tags(self, other)
        return self.bits & other.bits == self.bits

    def __lt__(self, other: "ProductSubgroup") -> bool:
        return self <= other and self.bits != other.bits

    def subgroups(self) -> List["ProductSubgroup"]:
        return [ProductSubgroup(self.codomain, self.domain, b) for b in _below(self.codomain, self.domain, self.bits)]

    @property
    def product_group(self) -> Group:
        return direct_product(self.codomain, self.domain)

    def as_subgroup(self) -> Subgroup:
        return Subgroup(self.product_group, self.bits)

    # the four projection / kernel subgroups
    @property
    def p1_top(self) -> Subgroup:
        return Subgroup(self.codomain, _views(self)[0])

    @property
    def p1_bot(self) -> Subgroup:
        return Subgroup(self.codomain, _views(self)[1])

    @property
    def p2_bot(self) -> Subgroup:
        return Subgroup(self.domain, _views(self)[2])

    @property
    def p2_top(self) -> Subgroup:
        return Subgroup(self.domain, _views(self)[3])

    def __repr__(self) -> str:
        return f"ProductSubgroup({self.codomain.name}<-{self.domain.name}, {hex(self.bits)})"


def _same_tags(U: ProductSubgroup, V: ProductSubgroup) -> None:
    if U.codomain is not V.codomain or U.domain is not V.domain:
        raise ValueError("morphisms with different (codomain, domain) tags")


def _views(U: ProductSubgroup) -> Tuple[int, int, int, int]:
    """Bitsets of (p1_top, p1_bot, p2_bot, p2_top)."""
    P = direct_product(U.codomain, U.domain)
    key = ("views", U.bits)
    v = P._cache.get(key)  # type: ignore[arg-type]
    if v is None:
        m = U.domain.order
        eR, eS = U.codomain.identity, U.domain.identity
        a = x = y = b = 0
        for z in bits_to_list(U.bits):
            r, s = divmod(z, m)
            a |= 1 << r
            b |= 1 << s
            if s == eS:
                x |= 1 << r
            if r == eR:
                y |= 1 << s
        v = P._cache[key] = (a, x, y, b)  # type: ignore[index]
    return v  # type: ignore[return-value]


def _below(R: Group, S: Group, bits: int) -> List[int]:
    P = direct_product(R, S)
    return [b for b in P.subgroup_bits() if b & bits == b]


def morphisms(R: Group, S: Group) -> List[ProductSubgroup]:
    """All subgroups of ``R x S`` in the deterministic (size, bitset) order."""
    return [ProductSubgroup(R, S, b) for b in direct_product(R, S).subgroup_bits()]


@dataclass(frozen=True)
class GoursatData:
    """``(p1_top, p1_bot, iso, p2_bot, p2_top)``; ``iso`` maps
    ``p2_top/p2_bot`` onto ``p1_top/p1_bot``."""

    p1_top: Subgroup
    p1_bot: Subgroup
    iso: GroupMap
    p2_bot: Subgroup
    p2_top: Subgroup

    def __post_init__(self):
        if not self.p1_bot.is_normal_in(self.p1_top) or not self.p2_bot.is_normal_in(self.p2_top):
            raise ValueError("Goursat data needs normal bottoms")
        iso = self.iso
        if not isinstance(iso.domain, Quotient) or not isinstance(iso.codomain, Quotient):
            raise ValueError("Goursat iso must act between section quotients")
        if (iso.domain.top, iso.domain.bottom) != (self.p2_top, self.p2_bot):
            raise ValueError("Goursat iso has the wrong domain")
        if (iso.codomain.top, iso.codomain.bottom) != (self.p1_top, self.p1_bot):
            raise ValueError("Goursat iso has the wrong codomain")
        if not (iso.is_injective and iso.is_surjective and iso.check()):
            raise ValueError("Goursat iso is not an isomorphism")


def goursat(U: ProductSubgroup) -> GoursatData:
    A, X, Y, B = U.p1_top, U.p1_bot, U.p2_bot, U.p2_top
    QA, QB = quotient(A, X), quotient(B, Y)
    images = [0] * QB.order
    for r, s in U.pairs():
        images[QB.project(s)] = QA.project(r)
    return GoursatData(A, X, GroupMap(QB, QA, tuple(images)), Y, B)


def from_quintuple(q: GoursatData) -> ProductSubgroup:
    """``{a x b : a*p1_bot = iso(b*p2_bot)}``."""
    R, S = q.p1_top.group, q.p2_top.group
    QA: Quotient = q.iso.codomain  # type: ignore[assignment]
    QB: Quotient = q.iso.domain  # type: ignore[assignment]
    by_coset: Dict[int, int] = {}
    for a in q.p1_top.elements():
        by_coset[QA.project(a)] = by_coset.get(QA.project(a), 0) | (1 << a)
    m = S.order
    bits = 0
    for b in q.p2_top.elements():
        for a in bits_to_list(by_coset[q.iso(QB.project(b))]):
            bits |= 1 << (a * m + b)
    return ProductSubgroup(R, S, bits)


def graph(f: GroupMap) -> ProductSubgroup:
    """``{f(x) x x}`` as a morphism ``f.codomain <- f.domain``.

    Groups built with ``Subgroup.as_group`` carry an ``embedding``; such a
    domain or codomain is replaced by its ambient group.
    """
    dom, cod = f.domain, f.codomain
    emb_d = getattr(dom, "embedding", None)
    emb_c = getattr(cod, "embedding", None)
    S_amb = emb_d.codomain if emb_d is not None else dom
    R_amb = emb_c.codomain if emb_c is not None else cod
    m = S_amb.order
    bits = 0
    for x in range(dom.order):
        y = f(x)
        xs = emb_d(x) if emb_d is not None else x
        yr = emb_c(y) if emb_c is not None else y
        bits |= 1 << (yr * m + xs)
    return ProductSubgroup(R_amb, S_amb, bits)


def delta_iso(theta: GroupMap) -> ProductSubgroup:
    """``{theta(b) x b}`` for an isomorphism ``theta``."""
    if not (theta.is_injective and theta.is_surjective):
        raise ValueError("delta_iso needs an isomorphism")
    return graph(theta)


def delta(C: Union[Group, Subgroup]) -> ProductSubgroup:
    """The diagonal ``{c x c}``; for a subgroup ``C <= G`` it lives in ``G x G``."""
    if isinstance(C, Group):
        G, els = C, range(C.order)
    else:
        G, els = C.group, C.elements()
    m = G.order
    return ProductSubgroup(G, G, sum(1 << (c * m + c) for c in els))


def _rows(U: ProductSubgroup, left: bool) -> List[int]:
    """For each element ``s`` of the domain (left=True) resp. codomain, the
    bitset of partners in ``U``."""
    P = direct_product(U.codomain, U.domain)
    key = ("rows", left, U.bits)
    rows = P._cache.get(key)  # type: ignore[arg-type]
    if rows is None:
        m = U.domain.order
        rows = [0] * (m if left else U.codomain.order)
        for z in bits_to_list(U.bits):
            r, s = divmod(z, m)
            if left:
                rows[s] |= 1 << r
            else:
                rows[r] |= 1 << s
        P._cache[key] = rows  # type: ignore[index]
    return rows  # type: ignore[return-value]


_STAR_CACHE: Dict[Tuple[int, int, int, int, int], int] = {}


def star(U: ProductSubgroup, V: ProductSubgroup) -> ProductSubgroup:
    """``U * V = {r x t : r x s in U and s x t in V for some s}``."""
    if U.domain is not V.codomain:
        raise ValueError("star product of non-composable morphisms")
    R, S, T = U.codomain, U.domain, V.domain
    key = (id(R), id(S), id(T), U.bits, V.bits)
    bits = _STAR_CACHE.get(key)
    if bits is None:
        A = _rows(U, left=True)
        B = _rows(V, left=False)
        n = T.order
        acc: Dict[int, int] = {}
        for s in range(S.order):
            if A[s] and B[s]:
                acc[A[s]] = acc.get(A[s], 0) | B[s]
        bits = 0
        for rs, ts in acc.items():
            for r in bits_to_list(rs):
                bits |= ts << (r * n)
        _STAR_CACHE[key] = bits
    return ProductSubgroup(R, T, bits)


def opposite(U: ProductSubgroup) -> ProductSubgroup:
    n = U.codomain.order
    bits = 0
    for r, s in U.pairs():
        bits |= 1 << (s * n + r)
    return ProductSubgroup(U.domain, U.codomain, bits)


def conjugate(U: ProductSubgroup, f: int, g: int) -> ProductSubgroup:
    """``(f x g) U (f x g)^-1``."""
    R, S = U.codomain, U.domain
    m = S.order
    bits = 0
    for r, s in U.pairs():
        bits |= 1 << (R.conj(f, r) * m + S.conj(g, s))
    return ProductSubgroup(R, S, bits)


def thorax_class(U: ProductSubgroup) -> Group:
    """Catalog representative of the isomorphism class of ``p1_top/p1_bot``."""
    return canonical_group(quotient(U.p1_top, U.p1_bot))


def thorax_order(U: ProductSubgroup) -> int:
    a, x, _, _ = _views(U)
    return popcount(a) // popcount(x)


def cocycle_order(U: ProductSubgroup, V: ProductSubgroup) -> int:
    """``|p2_bot(U) & p1_bot(V)|``."""
    if U.domain is not V.codomain:
        raise ValueError("cocycle of non-composable morphisms")
    return popcount(_views(U)[2] & _views(V)[1])


def cocycle_sigma(U: ProductSubgroup, V: ProductSubgroup, spec: "EllSpec | str" = "generic"):
    return ell(cocycle_order(U, V), spec)


def strongly_compatible(I: ProductSubgroup, J: ProductSubgroup) -> bool:
    if I.domain is not J.codomain:
        raise ValueError("compatibility of non-composable morphisms")
    return _views(I)[3] == _views(J)[0]


def adequate_subgroups(W: ProductSubgroup) -> List[ProductSubgroup]:
    a, _, _, b = _views(W)
    out = []
    for K in W.subgroups():
        ka, _, _, kb = _views(K)
        if ka == a and kb == b:
            out.append(K)
    return out


def is_adequate(K: ProductSubgroup, W: ProductSubgroup) -> bool:
    if not K <= W:
        return False
    vk, vw = _views(K), _views(W)
    return vk[0] == vw[0] and vk[3] == vw[3]


def order_identity_check(U: ProductSubgroup, V: ProductSubgroup) -> bool:
    """``|U| |V| = |p2_top(U) p1_top(V)| |p2_bot(U) & p1_bot(V)| |U * V|``."""
    b, a = _views(U)[3], _views(V)[0]
    # size of the product set of two subgroups
    prod_set = popcount(b) * popcount(a) // popcount(a & b)
    return U.order * V.order == prod_set * cocycle_order(U, V) * star(U, V).order


def factor_through_thorax(U: ProductSubgroup) -> Tuple[ProductSubgroup, ProductSubgroup, Quotient]:
    """``(X, Y, Q)`` with ``U = X * Y`` and ``Q = p1_top/p1_bot`` a copy of the thorax.

    ``X = {a x aX}`` maps through the quotient on the left, ``Y`` carries the
    Goursat isomorphism on the right.
    """
    g = goursat(U)
    Q: Quotient = g.iso.codomain  # type: ignore[assignment]
    QB: Quotient = g.iso.domain  # type: ignore[assignment]
    R, S = U.codomain, U.domain
    qn = Q.order
    xbits = 0
    for a in g.p1_top.elements():
        xbits |= 1 << (a * qn + Q.project(a))
    m = S.order
    ybits = 0
    for b in g.p2_top.elements():
        ybits |= 1 << (g.iso(QB.project(b)) * m + b)
    return ProductSubgroup(R, Q, xbits), ProductSubgroup(Q, S, ybits), Q
