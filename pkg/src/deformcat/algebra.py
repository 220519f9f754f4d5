"""The twisted subgroup-category algebra on a finite family of groups.

For groups ``F, G`` in the family, the morphisms ``F <- G`` are the subgroups
of ``F x G``.  The square basis element ``s_U`` multiplies by
``s_U s_V = sigma(U, V) s_{U*V}`` with ``sigma(U, V) = ell(|p2_bot(U) & p1_bot(V)|)``.
The round basis ``t_I = sum_{U <= I} möb(U, I) s_U`` is its Möbius transform.

Coefficients are ``Fraction`` when ell is specialized and :class:`Scalar`
when it is generic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .goursat import (
    ProductSubgroup,
    _views,
    cocycle_order,
    delta,
    graph,
    is_adequate,
    morphisms,
    star,
    strongly_compatible,
)
from .groups import (
    DEFAULT_ORDER_CAP,
    Group,
    GroupMap,
    Subgroup,
    automorphisms,
    bits_to_list,
    direct_product,
    is_factor_group,
    is_isomorphic,
    make_group,
    popcount,
    quotient,
)
from .linalg import rank
from .poset import moebius_cache
from .scalars import EllSpec, Scalar, ell

__all__ = [
    "LambdaAlgebra",
    "AlgebraElement",
    "TauTriple",
    "tau_bruteforce",
    "tau_reduced",
    "round_structure_constants",
    "varphi",
    "varphi_route_a",
    "varphi_route_b",
    "hall_generating_tuples",
    "CornerEmbedding",
    "trivial_module_certificate",
    "thorax_leq",
]

Coef = Union[Fraction, Scalar]


class LambdaAlgebra:
    """Context holding the family of groups and the choice of ell."""

    def __init__(
        self,
        groups: Sequence[Union[Group, str]],
        ell_spec: Union[EllSpec, str] = "generic",
        *,
        order_cap: int = DEFAULT_ORDER_CAP,
    ):
        gs = []
        built: Dict[str, Group] = {}
        for g in groups:
            if isinstance(g, str):
                if g not in built:
                    built[g] = make_group(g, order_cap=order_cap)
                G = built[g]
            else:
                G = g
            if G.order > order_cap:
                raise ValueError(f"{G.name} exceeds the order cap {order_cap}")
            if any(G is H for H in gs):
                continue
            gs.append(G)
        if not gs:
            raise ValueError("the family of groups is empty")
        self.groups: Tuple[Group, ...] = tuple(gs)
        self.ell = EllSpec.parse(ell_spec)
        self._index = {id(G): i for i, G in enumerate(self.groups)}
        self._coef_cache: Dict[int, Coef] = {}
        self._round_cache: Dict[Tuple[ProductSubgroup, ProductSubgroup, str], Dict[ProductSubgroup, Coef]] = {}
        self._basis: Optional[List[ProductSubgroup]] = None
        self.names = _unique_names(self.groups)

    # ---- scalars
    @property
    def is_generic(self) -> bool:
        return self.ell.mode == "generic"

    def coef(self, n: int) -> Coef:
        """``ell(n)`` as a Fraction (specialized ell) or a Scalar (generic ell)."""
        v = self._coef_cache.get(n)
        if v is None:
            s = ell(n, self.ell)
            v = s if self.is_generic else s.constant_value()
            self._coef_cache[n] = v
        return v

    def scalar(self, x) -> Coef:
        if self.is_generic:
            return Scalar.coerce(x)
        if isinstance(x, Scalar):
            return x.constant_value()
        return Fraction(x)

    def sigma(self, U: ProductSubgroup, V: ProductSubgroup) -> Coef:
        return self.coef(cocycle_order(U, V))

    # ---- basis
    def group(self, name_or_group) -> Group:
        if isinstance(name_or_group, Group):
            self._check_group(name_or_group)
            return name_or_group
        for G, n in zip(self.groups, self.names):
            if n == name_or_group:
                return G
        raise KeyError(f"no group named {name_or_group!r} in the family")

    def _check_group(self, G: Group) -> None:
        if id(G) not in self._index:
            raise ValueError(f"{G.name} is not in the family")

    def contains(self, U: ProductSubgroup) -> bool:
        return id(U.codomain) in self._index and id(U.domain) in self._index

    def hom(self, F: Group, G: Group) -> List[ProductSubgroup]:
        self._check_group(F)
        self._check_group(G)
        return morphisms(F, G)

    def basis(self) -> List[ProductSubgroup]:
        if self._basis is None:
            self._basis = [U for F in self.groups for G in self.groups for U in morphisms(F, G)]
        return self._basis

    @property
    def dim(self) -> int:
        return sum(len(self.hom(F, G)) for F in self.groups for G in self.groups)

    def basis_position(self) -> Dict[ProductSubgroup, int]:
        return {U: i for i, U in enumerate(self.basis())}

    # ---- elements
    def zero(self, kind: str = "s") -> "AlgebraElement":
        return AlgebraElement(self, kind, {})

    def s(self, U: ProductSubgroup, c=1) -> "AlgebraElement":
        return self._basis_element(U, "s", c)

    def t(self, U: ProductSubgroup, c=1) -> "AlgebraElement":
        return self._basis_element(U, "t", c)

    def _basis_element(self, U: ProductSubgroup, kind: str, c) -> "AlgebraElement":
        if not self.contains(U):
            raise ValueError("morphism between groups outside the family")
        c = self.scalar(c)
        return AlgebraElement(self, kind, {U: c} if c else {})

    def identity(self, G: Optional[Group] = None) -> "AlgebraElement":
        """``id_G = s_{diag(G)}``, or the unity ``sum_G id_G`` when ``G`` is None."""
        gs = self.groups if G is None else (self.group(G),)
        return AlgebraElement(self, "s", {delta(H): self.scalar(1) for H in gs})

    def element(self, entries: Mapping[ProductSubgroup, object], kind: str = "s") -> "AlgebraElement":
        out = {}
        for U, c in entries.items():
            if not self.contains(U):
                raise ValueError("morphism between groups outside the family")
            c = self.scalar(c)
            if c:
                out[U] = c
        return AlgebraElement(self, kind, out)

    # ---- products
    def square_product(self, U: ProductSubgroup, V: ProductSubgroup) -> Optional[Tuple[Coef, ProductSubgroup]]:
        if U.domain is not V.codomain:
            return None
        return self.sigma(U, V), star(U, V)

    def round_product(self, I: ProductSubgroup, J: ProductSubgroup, method: str = "sum") -> Dict[ProductSubgroup, Coef]:
        """``{K: tau_K^{I,J}}`` with nonzero values; empty unless composable."""
        if I.domain is not J.codomain:
            return {}
        key = (I, J, method)
        out = self._round_cache.get(key)
        if out is None:
            if method == "sum":
                out = round_structure_constants(I, J, self)
            elif method == "reduced":
                out = {}
                if strongly_compatible(I, J):
                    for K in _adequate_of(star(I, J)):
                        v = tau_reduced(K, I, J, self)
                        if v:
                            out[K] = v
            elif method == "bruteforce":
                out = {}
                for K in star(I, J).subgroups():
                    v = tau_bruteforce(K, I, J, self)
                    if v:
                        out[K] = v
            else:
                raise ValueError(f"unknown tau method {method!r}")
            self._round_cache[key] = out
        return out

    def multiply(self, a: "AlgebraElement", b: "AlgebraElement", method: str = "sum") -> "AlgebraElement":
        if a.alg is not self or b.alg is not self:
            raise ValueError("elements from a different algebra context")
        if b.kind != a.kind:
            b = b.to_kind(a.kind)
        out: Dict[ProductSubgroup, Coef] = {}
        if a.kind == "s":
            by_cod: Dict[int, List[Tuple[ProductSubgroup, Coef]]] = {}
            for V, cv in b.entries.items():
                by_cod.setdefault(id(V.codomain), []).append((V, cv))
            for U, cu in a.entries.items():
                for V, cv in by_cod.get(id(U.domain), ()):
                    W = star(U, V)
                    _acc(out, W, cu * cv * self.sigma(U, V))
        else:
            by_cod = {}
            for J, cj in b.entries.items():
                by_cod.setdefault(id(J.codomain), []).append((J, cj))
            for I, ci in a.entries.items():
                for J, cj in by_cod.get(id(I.domain), ()):
                    for K, tau in self.round_product(I, J, method).items():
                        _acc(out, K, ci * cj * tau)
        return AlgebraElement(self, a.kind, out)

    # ---- changes of basis
    def to_round(self, a: "AlgebraElement") -> "AlgebraElement":
        if a.kind == "t":
            return a
        out: Dict[ProductSubgroup, Coef] = {}
        for U, c in a.entries.items():
            # s_U = sum_{I <= U} t_I
            for I in U.subgroups():
                _acc(out, I, c)
        return AlgebraElement(self, "t", out)

    def to_square(self, a: "AlgebraElement") -> "AlgebraElement":
        if a.kind == "s":
            return a
        out: Dict[ProductSubgroup, Coef] = {}
        for I, c in a.entries.items():
            P = direct_product(I.codomain, I.domain)
            for u, m in moebius_cache(P).column(I.bits).items():
                _acc(out, ProductSubgroup(I.codomain, I.domain, u), c * m)
        return AlgebraElement(self, "s", out)

    # ---- structural maps
    def mu_embed(self, G: Group, w: Mapping[int, object]) -> "AlgebraElement":
        """Image of ``sum_i w[i] * theta_i`` (group algebra of Aut(G)) under
        ``theta -> s_{graph(theta)}``; indices refer to :func:`automorphisms`."""
        G = self.group(G)
        _, maps = automorphisms(G)
        out: Dict[ProductSubgroup, Coef] = {}
        for i, c in w.items():
            _acc(out, graph(maps[i]), self.scalar(c))
        return AlgebraElement(self, "s", out)

    def end_less_ideal(self, G: Group) -> List[ProductSubgroup]:
        """Square-basis keys of End(G) whose thorax is strictly below ``G``."""
        G = self.group(G)
        out = []
        for U in morphisms(G, G):
            Q = quotient(U.p1_top, U.p1_bot)
            if thorax_leq(Q, G) and is_isomorphic(Q, G) is None:
                out.append(U)
        return out

    def opposite(self, a: "AlgebraElement") -> "AlgebraElement":
        from .goursat import opposite

        return AlgebraElement(self, a.kind, {opposite(U): c for U, c in a.entries.items()})

    # ---- serialization
    def serialize(self, a: "AlgebraElement") -> List[List[str]]:
        rows = []
        pos = {id(G): n for G, n in zip(self.groups, self.names)}
        for U, c in sorted(a.entries.items(), key=lambda kv: self._sort_key(kv[0])):
            rows.append([pos[id(U.codomain)], pos[id(U.domain)], hex(U.bits), a.kind, str(Scalar.coerce(c))])
        return rows

    def deserialize(self, rows: Iterable[Sequence[str]]) -> "AlgebraElement":
        entries: Dict[ProductSubgroup, Coef] = {}
        kind = None
        for cod, dom, hexbits, k, text in rows:
            if kind is None:
                kind = k
            elif k != kind:
                raise ValueError("mixed basis kinds in one element")
            U = ProductSubgroup(self.group(cod), self.group(dom), int(hexbits, 16))
            if not direct_product(U.codomain, U.domain).is_subgroup_bits(U.bits):
                raise ValueError(f"{hexbits} is not a subgroup of {cod}x{dom}")
            _acc(entries, U, self.scalar(Scalar.parse(text)))
        return AlgebraElement(self, kind or "s", entries)

    def _sort_key(self, U: ProductSubgroup):
        return (self._index[id(U.codomain)], self._index[id(U.domain)], popcount(U.bits), U.bits)

    def __repr__(self) -> str:
        return f"<LambdaAlgebra {{{', '.join(self.names)}}} ell={self.ell}>"


def _unique_names(groups: Sequence[Group]) -> Tuple[str, ...]:
    seen: Dict[str, int] = {}
    out = []
    for G in groups:
        k = seen.get(G.name, 0)
        seen[G.name] = k + 1
        out.append(G.name if k == 0 else f"{G.name}#{k}")
    return tuple(out)


def _acc(d: Dict, key, value) -> None:
    if not value:
        return
    v = d.get(key)
    v = value if v is None else v + value
    if v:
        d[key] = v
    else:
        d.pop(key, None)


@dataclass
class AlgebraElement:
    alg: LambdaAlgebra
    kind: str
    entries: Dict[ProductSubgroup, Coef] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in ("s", "t"):
            raise ValueError(f"unknown basis kind {self.kind!r}")

    def to_kind(self, kind: str) -> "AlgebraElement":
        if kind == self.kind:
            return self
        return self.alg.to_round(self) if kind == "t" else self.alg.to_square(self)

    def to_round(self) -> "AlgebraElement":
        return self.to_kind("t")

    def to_square(self) -> "AlgebraElement":
        return self.to_kind("s")

    def _coerce(self, other: "AlgebraElement") -> "AlgebraElement":
        if other.alg is not self.alg:
            raise ValueError("elements from different algebra contexts")
        return other.to_kind(self.kind)

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        other = self._coerce(other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            _acc(out, k, v)
        return AlgebraElement(self.alg, self.kind, out)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.alg, self.kind, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def scale(self, c) -> "AlgebraElement":
        c = self.alg.scalar(c)
        if not c:
            return AlgebraElement(self.alg, self.kind, {})
        out = {}
        for k, v in self.entries.items():
            w = v * c
            if w:
                out[k] = w
        return AlgebraElement(self.alg, self.kind, out)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return self.alg.multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __matmul__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self.alg.multiply(self, other)

    def is_zero(self) -> bool:
        return not self.entries

    def __bool__(self) -> bool:
        return bool(self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None  # type: ignore[assignment]

    def coefficient(self, U: ProductSubgroup) -> Coef:
        return self.entries.get(U, self.alg.scalar(0))

    def vector(self, basis: Optional[Sequence[ProductSubgroup]] = None) -> List[Coef]:
        basis = basis if basis is not None else self.alg.basis()
        z = self.alg.scalar(0)
        return [self.entries.get(U, z) for U in basis]

    def __repr__(self) -> str:
        if not self.entries:
            return "0"
        parts = []
        for U, c in sorted(self.entries.items(), key=lambda kv: self.alg._sort_key(kv[0])):
            parts.append(f"({Scalar.coerce(c)})*{self.kind}[{U.codomain.name}<-{U.domain.name}:{hex(U.bits)}]")
        return " + ".join(parts)


# ---------------------------------------------------------------- tau coefficients


@dataclass(frozen=True)
class TauTriple:
    I: ProductSubgroup
    J: ProductSubgroup
    K_sub: ProductSubgroup
    value: object


def _coef_fn(ctx):
    if isinstance(ctx, LambdaAlgebra):
        return ctx.coef, ctx.scalar(0)
    spec = EllSpec.parse(ctx if ctx is not None else "generic")
    return (lambda n: ell(n, spec)), Scalar(0)


def tau_bruteforce(K: ProductSubgroup, I: ProductSubgroup, J: ProductSubgroup, ctx="generic"):
    """``sum möb(U, I) möb(V, J) sigma(U, V)`` over ``U <= I``, ``V <= J`` with ``K <= U*V``."""
    if I.domain is not J.codomain:
        raise ValueError("tau of non-composable morphisms")
    if K.codomain is not I.codomain or K.domain is not J.domain:
        raise ValueError("K has the wrong tags")
    coef, acc = _coef_fn(ctx)
    mI = moebius_cache(direct_product(I.codomain, I.domain)).column(I.bits)
    mJ = moebius_cache(direct_product(J.codomain, J.domain)).column(J.bits)
    for u, a in mI.items():
        U = ProductSubgroup(I.codomain, I.domain, u)
        for v, b in mJ.items():
            V = ProductSubgroup(J.codomain, J.domain, v)
            W = star(U, V)
            if K.bits & W.bits == K.bits:
                acc = acc + coef(cocycle_order(U, V)) * (a * b)
    return acc


def round_structure_constants(I: ProductSubgroup, J: ProductSubgroup, ctx="generic") -> Dict[ProductSubgroup, object]:
    """All nonzero ``tau_K^{I,J}`` at once.

    Accumulates ``c_W = sum_{U*V = W} möb(U,I) möb(V,J) sigma(U,V)`` and then
    ``tau_K = sum_{W >= K} c_W``; every ``K`` with a nonzero value lies below ``I*J``.
    """
    if I.domain is not J.codomain:
        return {}
    coef, zero = _coef_fn(ctx)
    mI = moebius_cache(direct_product(I.codomain, I.domain)).column(I.bits)
    mJ = moebius_cache(direct_product(J.codomain, J.domain)).column(J.bits)
    c: Dict[Tuple[int, int], object] = {}
    for u, a in mI.items():
        U = ProductSubgroup(I.codomain, I.domain, u)
        for v, b in mJ.items():
            V = ProductSubgroup(J.codomain, J.domain, v)
            w = star(U, V).bits
            k = cocycle_order(U, V)
            c[(w, k)] = c.get((w, k), 0) + a * b
    cw: Dict[int, object] = {}
    for (w, k), m in c.items():
        if m:
            cw[w] = cw.get(w, zero) + coef(k) * m
    cw = {w: x for w, x in cw.items() if x}
    out = {}
    top = star(I, J)
    for K in top.subgroups():
        acc = zero
        for w, x in cw.items():
            if K.bits & w == K.bits:
                acc = acc + x
        if acc:
            out[K] = acc
    return out


def _adequate_of(W: ProductSubgroup) -> List[ProductSubgroup]:
    from .goursat import adequate_subgroups

    return adequate_subgroups(W)


def tau_reduced(K: ProductSubgroup, I: ProductSubgroup, J: ProductSubgroup, ctx="generic"):
    """The sum restricted to pairs with ``p2_top(U) = p1_top(V)``, weighted by
    the Möbius function of that restricted poset.

    Requires ``(I, J)`` strongly compatible and ``K`` adequate in ``I*J``.
    """
    if not strongly_compatible(I, J):
        raise ValueError("tau_reduced needs a strongly compatible pair")
    if not is_adequate(K, star(I, J)):
        raise ValueError("tau_reduced needs K adequate in I*J")
    coef, acc = _coef_fn(ctx)
    Us = I.subgroups()
    Vs = J.subgroups()
    vb = {V: _views(V)[0] for V in Vs}
    pairs = []
    for U in Us:
        ub = _views(U)[3]
        for V in Vs:
            if vb[V] == ub and K.bits & star(U, V).bits == K.bits:
                pairs.append((U, V))
    # Möbius of the subposet at its top (I, J), descending by size
    pairs.sort(key=lambda p: -(p[0].order * p[1].order))
    mob: Dict[Tuple[ProductSubgroup, ProductSubgroup], int] = {}
    for x in pairs:
        if x == (I, J):
            mob[x] = 1
            continue
        s = 0
        ux, vx = x[0].bits, x[1].bits
        for y, m in mob.items():
            if m and ux & y[0].bits == ux and vx & y[1].bits == vx:
                s += m
        mob[x] = -s
    for (U, V), m in mob.items():
        if m:
            acc = acc + coef(cocycle_order(U, V)) * m
    return acc


# ---------------------------------------------------------------- totient


def _lattice(B: Union[Group, Subgroup]) -> Tuple[Group, int]:
    if isinstance(B, Group):
        return B, B.full_bits
    return B.group, B.bits


def varphi_route_a(B: Union[Group, Subgroup], spec="generic"):
    """``sum_{U <= B} möb(U, B) ell(|U|)``."""
    G, top = _lattice(B)
    coef, acc = _coef_fn(spec)
    for u, m in moebius_cache(G).column(top).items():
        acc = acc + coef(popcount(u)) * m
    return acc


def varphi_route_b(B: Union[Group, Subgroup], spec="generic"):
    """``sum_{M, N <= B} möb(M, B) möb(N, B) ell(|M & N|)``."""
    G, top = _lattice(B)
    coef, acc = _coef_fn(spec)
    col = moebius_cache(G).column(top)
    counts: Dict[int, int] = {}
    for m1, a in col.items():
        for m2, b in col.items():
            n = popcount(m1 & m2)
            counts[n] = counts.get(n, 0) + a * b
    for n, k in sorted(counts.items()):
        if k:
            acc = acc + coef(n) * k
    return acc


def varphi(B: Union[Group, Subgroup], spec="generic", route: str = "a"):
    if route == "a":
        return varphi_route_a(B, spec)
    if route == "b":
        return varphi_route_b(B, spec)
    raise ValueError(f"unknown route {route!r}")


def hall_generating_tuples(G: Union[Group, Subgroup], d: int) -> int:
    """Number of ``d``-tuples of elements that generate ``G`` (brute force)."""
    if d < 1:
        raise ValueError("d must be positive")
    H, top = _lattice(G)
    els = bits_to_list(top)
    count = 0
    for tup in itertools.product(els, repeat=d):
        if H.closure(tup) == top:
            count += 1
    return count


# ---------------------------------------------------------------- thorax order


def thorax_leq(E: Group, G: Group) -> bool:
    """Whether ``E`` is isomorphic to a subquotient of ``G``."""
    return is_factor_group(E, G)


# ---------------------------------------------------------------- corner embeddings


class CornerEmbedding:
    """``s_U -> s_{(kappa_F x kappa_G)(U)}`` from a small family into a large one.

    ``kappa`` maps each group of ``small`` to an injective GroupMap into a
    group of ``large``.
    """

    def __init__(self, small: LambdaAlgebra, large: LambdaAlgebra, kappa: Mapping[Group, GroupMap]):
        if small.ell != large.ell:
            raise ValueError("both algebras need the same ell")
        self.small, self.large = small, large
        self.kappa: Dict[int, GroupMap] = {}
        for G in small.groups:
            k = kappa.get(G)
            if k is None:
                raise ValueError(f"no embedding given for {G.name}")
            if k.domain is not G:
                raise ValueError("kappa has the wrong domain")
            large._check_group(k.codomain)
            if not k.is_injective or not k.check():
                raise ValueError("kappa must be an injective homomorphism")
            self.kappa[id(G)] = k

    def image_key(self, U: ProductSubgroup) -> ProductSubgroup:
        kf, kg = self.kappa[id(U.codomain)], self.kappa[id(U.domain)]
        m = kg.codomain.order
        bits = 0
        for r, s in U.pairs():
            bits |= 1 << (kf(r) * m + kg(s))
        return ProductSubgroup(kf.codomain, kg.codomain, bits)

    def __call__(self, a: AlgebraElement) -> AlgebraElement:
        a = a.to_square()
        return AlgebraElement(self.large, "s", {self.image_key(U): c for U, c in a.entries.items()})

    def image_basis(self) -> List[ProductSubgroup]:
        return [self.image_key(U) for U in self.small.basis()]

    def check_injective(self) -> bool:
        return len(set(self.image_basis())) == self.small.dim

    def check_multiplicative(self) -> bool:
        sm = self.small
        for U in sm.basis():
            for V in sm.basis():
                if self(sm.s(U) * sm.s(V)) != self(sm.s(U)) * self(sm.s(V)):
                    return False
        return True

    def check_corner(self) -> bool:
        """``B x B`` lands in ``B`` for every large-basis ``x``, where ``B`` is the image."""
        img = set(self.image_basis())
        lg = self.large
        for U in img:
            for X in lg.basis():
                ux = lg.s(U) * lg.s(X)
                if not ux:
                    continue
                for V in img:
                    y = ux * lg.s(V)
                    if any(W not in img for W in y.entries):
                        return False
        return True

    def corner_rank(self, F: Group, G: Group) -> int:
        """Dimension of ``s_{diag(A)} . Lambda(F', G') . s_{diag(B)}`` where ``A``, ``B``
        are the images of ``F``, ``G``."""
        return rank(self._corner_vectors(F, G))

    def _corner_vectors(self, F: Group, G: Group) -> List[List[Coef]]:
        kf, kg = self.kappa[id(F)], self.kappa[id(G)]
        lg = self.large
        eA = lg.s(delta(Subgroup(kf.codomain, kf.image_bits)))
        eB = lg.s(delta(Subgroup(kg.codomain, kg.image_bits)))
        return [(eA * lg.s(X) * eB).vector() for X in lg.hom(kf.codomain, kg.codomain)]

    def check_corner_basis(self) -> bool:
        """The images of ``Lambda(F, G)`` span exactly the corner cut out by the
        diagonal idempotents of the image subgroups."""
        lg = self.large
        for F in self.small.groups:
            for G in self.small.groups:
                corner = self._corner_vectors(F, G)
                imgs = [lg.s(self.image_key(U)).vector() for U in morphisms(F, G)]
                r = rank(corner)
                if r != len(imgs) or rank(corner + imgs) != r:
                    return False
        return True


# ---------------------------------------------------------------- trivial module


def trivial_module_certificate(alg: LambdaAlgebra) -> Dict[str, object]:
    """Check the pairing ``t_{1xB} t_{B'x1} = [B = B'] varphi(B) t_{1x1}`` and
    the spanning of ``Lambda(G,G) i_G`` by the ``t_{Bx1}``; the certificate is
    issued when every ``varphi(B)`` is nonzero."""
    per_group = []
    all_ok = True
    all_nonzero = True
    for G, name in zip(alg.groups, alg.names):
        m = G.order
        e = G.identity
        subs = G.subgroup_bits()

        def left(b: int) -> ProductSubgroup:  # 1 x B
            return ProductSubgroup(G, G, sum(1 << (e * m + x) for x in bits_to_list(b)))

        def right(b: int) -> ProductSubgroup:  # B x 1
            return ProductSubgroup(G, G, sum(1 << (x * m + e) for x in bits_to_list(b)))

        one = ProductSubgroup(G, G, 1 << (e * m + e))
        phis = {}
        pairing_ok = True
        for b in subs:
            phis[b] = varphi_route_a(Subgroup(G, b), alg)
            for b2 in subs:
                prod = alg.t(left(b)) * alg.t(right(b2))
                want = alg.t(one, phis[b]) if b == b2 else alg.zero("t")
                if prod != want:
                    pairing_ok = False
        # Lambda(G,G) i_G: images s_U i_G in the round basis
        iG = alg.s(one)
        span = set()
        for U in morphisms(G, G):
            y = (alg.s(U) * iG).to_round()
            span.update(y.entries)
        expected = {right(b) for b in subs}
        spanning_ok = span <= expected and rank([(alg.s(U) * iG).to_round().vector(sorted(expected, key=lambda X: X.bits))
                                                 for U in morphisms(G, G)]) == len(expected)
        nonzero = all(bool(v) for v in phis.values())
        ok = pairing_ok and spanning_ok
        all_ok &= ok
        all_nonzero &= nonzero
        per_group.append({
            "group": name,
            "varphi": {hex(b): str(Scalar.coerce(v)) for b, v in phis.items()},
            "pairing_ok": pairing_ok,
            "spanning_ok": spanning_ok,
            "all_varphi_nonzero": nonzero,
            "zero_varphi_subgroups": [hex(b) for b, v in phis.items() if not v],
        })
    return {
        "ell": str(alg.ell),
        "groups": per_group,
        "checks_pass": all_ok,
        "hypothesis_holds": all_nonzero,
        "certificate": bool(all_ok and all_nonzero),
    }
