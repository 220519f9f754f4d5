"""Small finite groups given by Cayley tables.

Elements are the integers ``0..order-1``.  Subgroups are stored as Python int
bitsets over those indices, which keeps containment, intersection and hashing
cheap.  All enumerations return results in a deterministic order.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

__all__ = [
    "Group",
    "Subgroup",
    "Section",
    "GroupMap",
    "Quotient",
    "ProductGroup",
    "GroupSpecError",
    "DEFAULT_ORDER_CAP",
    "make_group",
    "parse_table_document",
    "table_document",
    "cyclic",
    "dihedral",
    "symmetric",
    "quaternion",
    "subgroups",
    "sections",
    "quotient",
    "direct_product",
    "homomorphisms",
    "automorphisms",
    "is_isomorphic",
    "conjugacy_classes_of_subgroups",
    "canonical_group",
    "is_factor_group",
    "bits_to_list",
]

DEFAULT_ORDER_CAP = 64


class GroupSpecError(ValueError):
    pass


def bits_to_list(bits: int) -> List[int]:
    out = []
    i = 0
    while bits:
        if bits & 1:
            out.append(i)
        bits >>= 1
        i += 1
    return out


def popcount(bits: int) -> int:
    return bin(bits).count("1")


class Group:
    """A finite group given by its multiplication table."""

    def __init__(
        self,
        table: Sequence[Sequence[int]],
        identity: int = 0,
        labels: Optional[Sequence[str]] = None,
        name: Optional[str] = None,
        *,
        check: bool = True,
    ):
        self.table: Tuple[Tuple[int, ...], ...] = tuple(tuple(int(x) for x in row) for row in table)
        self.order = len(self.table)
        self.identity = int(identity)
        self.labels = tuple(labels) if labels is not None else None
        self.name = name or f"G{self.order}"
        self._cache: Dict[str, object] = {}
        if check:
            self._validate()
        self.inverses = tuple(self.table[a].index(self.identity) for a in range(self.order))

    def _validate(self) -> None:
        n, t, e = self.order, self.table, self.identity
        if n == 0:
            raise GroupSpecError("a group needs at least one element")
        full = set(range(n))
        for row in t:
            if len(row) != n or set(row) != full:
                raise GroupSpecError("table is not a Latin square")
        for j in range(n):
            if {t[i][j] for i in range(n)} != full:
                raise GroupSpecError("table is not a Latin square")
        if not 0 <= e < n or t[e] != tuple(range(n)) or any(t[i][e] != i for i in range(n)):
            raise GroupSpecError("missing identity")
        if n <= DEFAULT_ORDER_CAP:
            triples: Iterable = itertools.product(range(n), repeat=3)
        else:
            import random

            rng = random.Random(n)
            triples = [(rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(20000)]
        for a, b, c in triples:
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise GroupSpecError("table is not associative")

    def __repr__(self) -> str:
        return f"<Group {self.name} of order {self.order}>"

    def __len__(self) -> int:
        return self.order

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def conj(self, g: int, x: int) -> int:
        """``g x g^-1``."""
        t = self.table
        return t[t[g][x]][self.inverses[g]]

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels else str(a)

    @property
    def full_bits(self) -> int:
        return (1 << self.order) - 1

    @property
    def trivial_bits(self) -> int:
        return 1 << self.identity

    @property
    def element_orders(self) -> Tuple[int, ...]:
        cached = self._cache.get("orders")
        if cached is None:
            out = []
            for a in range(self.order):
                k, x = 1, a
                while x != self.identity:
                    x = self.table[x][a]
                    k += 1
                out.append(k)
            cached = self._cache["orders"] = tuple(out)
        return cached  # type: ignore[return-value]

    @property
    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    def exponent(self) -> int:
        from math import lcm

        return lcm(*self.element_orders)

    def closure(self, gens: Iterable[int]) -> int:
        """Bitset of the subgroup generated by ``gens``."""
        gens = list(dict.fromkeys(gens))
        e = self.identity
        bits = 1 << e
        elems = [e]
        t = self.table
        i = 0
        while i < len(elems):
            row = t[elems[i]]
            i += 1
            for g in gens:
                y = row[g]
                if not (bits >> y) & 1:
                    bits |= 1 << y
                    elems.append(y)
        return bits

    def generators(self, bits: Optional[int] = None) -> List[int]:
        """A small generating set of the subgroup ``bits`` (greedy, deterministic)."""
        target = self.full_bits if bits is None else bits
        gens: List[int] = []
        have = self.trivial_bits
        cands = bits_to_list(target)
        while have != target:
            best, best_bits = None, have
            for g in cands:
                if (have >> g) & 1:
                    continue
                b = self.closure(gens + [g])
                if popcount(b) > popcount(best_bits):
                    best, best_bits = g, b
            gens.append(best)  # type: ignore[arg-type]
            have = best_bits
        return gens

    def subgroup_bits(self) -> Tuple[int, ...]:
        """All subgroups as bitsets, sorted by (size, bitset)."""
        cached = self._cache.get("subgroups")
        if cached is None:
            cached = self._cache["subgroups"] = _enumerate_subgroups(self)
        return cached  # type: ignore[return-value]

    def subgroups(self) -> List["Subgroup"]:
        return [Subgroup(self, b) for b in self.subgroup_bits()]

    def whole(self) -> "Subgroup":
        return Subgroup(self, self.full_bits)

    def trivial(self) -> "Subgroup":
        return Subgroup(self, self.trivial_bits)

    def is_subgroup_bits(self, bits: int) -> bool:
        if not (bits >> self.identity) & 1:
            return False
        els = bits_to_list(bits)
        t = self.table
        return all((bits >> t[a][b]) & 1 for a in els for b in els)

    def conjugate_bits(self, bits: int, g: int) -> int:
        out = 0
        for x in bits_to_list(bits):
            out |= 1 << self.conj(g, x)
        return out

    def is_normal_bits(self, small: int, big: int) -> bool:
        if small & big != small:
            return False
        return all(self.conjugate_bits(small, g) == small for g in self.generators(big))


def _enumerate_subgroups(G: Group) -> Tuple[int, ...]:
    # breadth-first closure: every subgroup is reached by adding one generator at a time
    triv = G.trivial_bits
    found: Dict[int, List[int]] = {triv: []}
    queue = [triv]
    n = G.order
    t = G.table
    while queue:
        H = queue.pop(0)
        gens = found[H]
        covered = H
        for g in range(n):
            if (covered >> g) & 1:
                continue
            # <H, g> = <H, g h> for h in H, so one element per coset suffices
            for h in bits_to_list(H):
                covered |= 1 << t[g][h]
            K = G.closure(gens + [g])
            if K not in found:
                found[K] = gens + [g]
                queue.append(K)
    return tuple(sorted(found, key=lambda b: (popcount(b), b)))


@dataclass(frozen=True)
class Subgroup:
    group: Group
    bits: int

    @property
    def order(self) -> int:
        return popcount(self.bits)

    def __len__(self) -> int:
        return self.order

    def elements(self) -> List[int]:
        return bits_to_list(self.bits)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements())

    def __contains__(self, x: int) -> bool:
        return bool((self.bits >> x) & 1)

    def _check(self, other: "Subgroup") -> None:
        if other.group is not self.group:
            raise ValueError("subgroups of different groups")

    def __le__(self, other: "Subgroup") -> bool:
        self._check(other)
        return self.bits & other.bits == self.bits

    def __lt__(self, other: "Subgroup") -> bool:
        return self <= other and self.bits != other.bits

    def __ge__(self, other: "Subgroup") -> bool:
        return other <= self

    def __gt__(self, other: "Subgroup") -> bool:
        return other < self

    def __and__(self, other: "Subgroup") -> "Subgroup":
        self._check(other)
        return Subgroup(self.group, self.bits & other.bits)

    def join(self, other: "Subgroup") -> "Subgroup":
        self._check(other)
        return Subgroup(self.group, self.group.closure(bits_to_list(self.bits | other.bits)))

    def is_normal_in(self, other: "Subgroup") -> bool:
        self._check(other)
        return self.group.is_normal_bits(self.bits, other.bits)

    def conjugate(self, g: int) -> "Subgroup":
        return Subgroup(self.group, self.group.conjugate_bits(self.bits, g))

    def subgroups(self) -> List["Subgroup"]:
        return [Subgroup(self.group, b) for b in self.group.subgroup_bits() if b & self.bits == b]

    def as_group(self) -> "Group":
        """This subgroup as a standalone group; ``.embedding`` maps it back."""
        key = ("as_group", self.bits)
        cached = self.group._cache.get(key)  # type: ignore[arg-type]
        if cached is None:
            cached = _subgroup_as_group(self)
            self.group._cache[key] = cached  # type: ignore[index]
        return cached  # type: ignore[return-value]

    def __repr__(self) -> str:
        return f"Subgroup({self.group.name}, {self.elements()})"


def _subgroup_as_group(H: Subgroup) -> Group:
    G = H.group
    els = H.elements()
    pos = {x: i for i, x in enumerate(els)}
    table = [[pos[G.table[a][b]] for b in els] for a in els]
    labels = [G.label(x) for x in els]
    name = G.name if H.bits == G.full_bits else f"{G.name}[{hex(H.bits)}]"
    S = Group(table, pos[G.identity], labels, name, check=False)
    S.embedding = GroupMap(S, G, tuple(els))  # type: ignore[attr-defined]
    return S


@dataclass(frozen=True)
class Section:
    top: Subgroup
    bottom: Subgroup

    def __post_init__(self):
        if not self.bottom.is_normal_in(self.top):
            raise ValueError("bottom must be a normal subgroup of top")

    @property
    def index(self) -> int:
        return self.top.order // self.bottom.order


@dataclass(frozen=True)
class GroupMap:
    """A homomorphism ``domain -> codomain`` given by the image of every element."""

    domain: Group
    codomain: Group
    images: Tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.images[x]

    def check(self) -> bool:
        t, u, im = self.domain.table, self.codomain.table, self.images
        n = self.domain.order
        return len(im) == n and all(im[t[a][b]] == u[im[a]][im[b]] for a in range(n) for b in range(n))

    @property
    def image_bits(self) -> int:
        out = 0
        for y in self.images:
            out |= 1 << y
        return out

    def image(self) -> Subgroup:
        return Subgroup(self.codomain, self.image_bits)

    def kernel(self) -> Subgroup:
        e = self.codomain.identity
        return Subgroup(self.domain, sum(1 << x for x, y in enumerate(self.images) if y == e))

    @property
    def is_injective(self) -> bool:
        return len(set(self.images)) == self.domain.order

    @property
    def is_surjective(self) -> bool:
        return len(set(self.images)) == self.codomain.order

    def compose(self, other: "GroupMap") -> "GroupMap":
        """``self o other`` (apply ``other`` first)."""
        if other.codomain is not self.domain:
            raise ValueError("maps are not composable")
        return GroupMap(other.domain, self.codomain, tuple(self.images[y] for y in other.images))

    def inverse(self) -> "GroupMap":
        if not (self.is_injective and self.is_surjective):
            raise ValueError("not an isomorphism")
        inv = [0] * self.codomain.order
        for x, y in enumerate(self.images):
            inv[y] = x
        return GroupMap(self.codomain, self.domain, tuple(inv))

    def image_of_bits(self, bits: int) -> int:
        out = 0
        for x in bits_to_list(bits):
            out |= 1 << self.images[x]
        return out

    @classmethod
    def identity_map(cls, G: Group) -> "GroupMap":
        return cls(G, G, tuple(range(G.order)))


class Quotient(Group):
    """The group ``top/bottom`` of cosets, with the projection from ``top``."""

    def __init__(self, top: Subgroup, bottom: Subgroup):
        if not bottom.is_normal_in(top):
            raise ValueError("quotient by a subgroup that is not normal")
        G = top.group
        self.top, self.bottom = top, bottom
        coset_of: Dict[int, int] = {}
        reps: List[int] = []
        ordered = [G.identity] + [x for x in top.elements() if x != G.identity]
        for x in ordered:
            if x in coset_of:
                continue
            k = len(reps)
            reps.append(x)
            for y in bottom.elements():
                coset_of[G.table[x][y]] = k
        table = [[coset_of[G.table[a][b]] for b in reps] for a in reps]
        labels = [G.label(x) for x in reps]
        super().__init__(table, 0, labels, f"{G.name}:{hex(top.bits)}/{hex(bottom.bits)}", check=False)
        self.coset_of = coset_of
        self.reps = tuple(reps)
        T = top.as_group()
        emb = T.embedding  # type: ignore[attr-defined]
        self.projection = GroupMap(T, self, tuple(coset_of[emb(i)] for i in range(T.order)))

    def project(self, x: int) -> int:
        return self.coset_of[x]


def quotient(top: Subgroup, bottom: Subgroup) -> Quotient:
    G = top.group
    key = ("quotient", top.bits, bottom.bits)
    cached = G._cache.get(key)  # type: ignore[arg-type]
    if cached is None:
        cached = G._cache[key] = Quotient(top, bottom)  # type: ignore[index]
    return cached  # type: ignore[return-value]


class ProductGroup(Group):
    """``F x G`` with element ``f*|G| + g`` standing for ``f x g``."""

    def __init__(self, F: Group, G: Group):
        m = G.order
        tf, tg = F.table, G.table
        table = [
            [tf[a // m][b // m] * m + tg[a % m][b % m] for b in range(F.order * m)]
            for a in range(F.order * m)
        ]
        labels = None
        if F.labels or G.labels:
            labels = [f"{F.label(a)}x{G.label(b)}" for a in range(F.order) for b in range(m)]
        super().__init__(table, F.identity * m + G.identity, labels, f"{F.name}x{G.name}", check=False)
        self.factors = (F, G)

    def pair(self, x: int) -> Tuple[int, int]:
        return divmod(x, self.factors[1].order)

    def index(self, a: int, b: int) -> int:
        return a * self.factors[1].order + b

    @property
    def injections(self) -> Tuple[GroupMap, GroupMap]:
        F, G = self.factors
        return (
            GroupMap(F, self, tuple(self.index(a, G.identity) for a in range(F.order))),
            GroupMap(G, self, tuple(self.index(F.identity, b) for b in range(G.order))),
        )


@lru_cache(maxsize=None)
def direct_product(F: Group, G: Group) -> ProductGroup:
    return ProductGroup(F, G)


# ---------------------------------------------------------------- constructors


def cyclic(n: int) -> Group:
    return Group([[(a + b) % n for b in range(n)] for a in range(n)], 0, None, f"C{n}", check=False)


def dihedral(n: int) -> Group:
    """Dihedral group of order ``n`` (not degree); element ``i + (n/2) j`` is ``r^i s^j``."""
    if n < 2 or n % 2:
        raise GroupSpecError("dihedral order must be even")
    m = n // 2

    def mul(x: int, y: int) -> int:
        a, b = x % m, x // m
        c, d = y % m, y // m
        return (a + (c if b == 0 else -c)) % m + m * ((b + d) % 2)

    return Group([[mul(x, y) for y in range(n)] for x in range(n)], 0, None, f"D{n}", check=False)


def symmetric(k: int) -> Group:
    perms = sorted(itertools.permutations(range(k)))
    pos = {p: i for i, p in enumerate(perms)}
    table = [[pos[tuple(p[q[i]] for i in range(k))] for q in perms] for p in perms]
    labels = ["".join(str(i + 1) for i in p) for p in perms]
    return Group(table, 0, labels, f"S{k}", check=False)


def quaternion() -> Group:
    # basis units 1, i, j, k with signs; element index = 4*sign + unit
    mult = {
        (0, 0): (0, 0), (0, 1): (0, 1), (0, 2): (0, 2), (0, 3): (0, 3),
        (1, 0): (0, 1), (1, 1): (1, 0), (1, 2): (0, 3), (1, 3): (1, 2),
        (2, 0): (0, 2), (2, 1): (1, 3), (2, 2): (1, 0), (2, 3): (0, 1),
        (3, 0): (0, 3), (3, 1): (0, 2), (3, 2): (1, 1), (3, 3): (1, 0),
    }

    def mul(x: int, y: int) -> int:
        s1, u1 = divmod(x, 4)
        s2, u2 = divmod(y, 4)
        s, u = mult[(u1, u2)]
        return 4 * ((s1 + s2 + s) % 2) + u

    labels = ["1", "i", "j", "k", "-1", "-i", "-j", "-k"]
    return Group([[mul(x, y) for y in range(8)] for x in range(8)], 0, labels, "Q8", check=False)


_FACTOR = re.compile(r"^(?:C(\d+)|D(\d+)|S(\d+)|(Q8)|(V4))$")


def _factor_group(tok: str) -> Group:
    m = _FACTOR.match(tok)
    if not m:
        raise GroupSpecError(f"unknown group spec {tok!r}")
    c, d, s, q, v = m.groups()
    if c:
        if int(c) < 1:
            raise GroupSpecError("C<n> needs n >= 1")
        return cyclic(int(c))
    if d:
        return dihedral(int(d))
    if s:
        if int(s) < 1:
            raise GroupSpecError("S<n> needs n >= 1")
        return symmetric(int(s))
    if q:
        return quaternion()
    G = direct_product(cyclic(2), cyclic(2))
    return Group(G.table, G.identity, None, "V4", check=False)


def _spec_order(tok: str) -> int:
    from math import factorial

    m = _FACTOR.match(tok)
    if not m:
        raise GroupSpecError(f"unknown group spec {tok!r}")
    c, d, s, q, v = m.groups()
    if c:
        return int(c)
    if d:
        return int(d)
    if s:
        return factorial(int(s))
    return 8 if q else 4


def make_group(spec: str, *, order_cap: int = DEFAULT_ORDER_CAP) -> Group:
    """Build a group from the mini-language (``C4``, ``D8``, ``S3``, ``Q8``,
    ``V4``, ``C2xC2xC3``), from a Cayley-table document, or from ``@path``
    naming a file holding such a document."""
    spec = spec.strip()
    if spec.startswith("@"):
        text = Path(spec[1:]).read_text()
        G = parse_table_document(text, name=Path(spec[1:]).stem)
    elif "\n" in spec or spec.startswith("order"):
        G = parse_table_document(spec)
    else:
        toks = spec.split("x")
        total = 1
        for tok in toks:
            total *= _spec_order(tok)
        if total > order_cap:
            raise GroupSpecError(f"{spec} has order {total}, above the cap {order_cap}")
        G = _factor_group(toks[0])
        for tok in toks[1:]:
            G = direct_product(G, _factor_group(tok))
        G = Group(G.table, G.identity, G.labels, spec, check=False)
    if G.order > order_cap:
        raise GroupSpecError(f"{G.name} has order {G.order}, above the cap {order_cap}")
    return G


def parse_table_document(text: str, name: Optional[str] = None) -> Group:
    """Parse::

        order 4
        identity 0
        labels e a b c        (optional)
        0 1 2 3
        ...
    """
    order = identity = None
    labels = None
    rows: List[List[int]] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        if head == "order":
            order = int(rest)
        elif head == "identity":
            identity = int(rest)
        elif head == "labels":
            labels = rest.split()
        elif head == "name":
            name = rest.strip()
        else:
            try:
                rows.append([int(x) for x in line.split()])
            except ValueError:
                raise GroupSpecError(f"bad table row {line!r}") from None
    if order is None:
        raise GroupSpecError("table document lacks an 'order' line")
    if identity is None:
        raise GroupSpecError("missing identity")
    if len(rows) != order:
        raise GroupSpecError(f"expected {order} rows, got {len(rows)}")
    return Group(rows, identity, labels, name)


def table_document(G: Group) -> str:
    lines = [f"name {G.name}", f"order {G.order}", f"identity {G.identity}"]
    if G.labels:
        lines.append("labels " + " ".join(G.labels))
    lines += [" ".join(str(x) for x in row) for row in G.table]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- structure


def subgroups(G: Group) -> List[Subgroup]:
    return G.subgroups()


def sections(G: Group) -> List[Section]:
    out = []
    subs = G.subgroup_bits()
    for B in subs:
        for Y in subs:
            if Y & B == Y and G.is_normal_bits(Y, B):
                out.append(Section(Subgroup(G, B), Subgroup(G, Y)))
    return out


def _hom_search(src: Group, dst: Group, injective: bool, surjective: bool) -> Iterator[GroupMap]:
    gens = src.generators()
    # spanning tree of the Cayley graph: x = parent[x] * gens[via[x]]
    parent: Dict[int, Tuple[int, int]] = {}
    order = [src.identity]
    seen = {src.identity}
    i = 0
    while i < len(order):
        x = order[i]
        i += 1
        for k, g in enumerate(gens):
            y = src.table[x][g]
            if y not in seen:
                seen.add(y)
                parent[y] = (x, k)
                order.append(y)
    so, do = src.element_orders, dst.element_orders
    cands = []
    for g in gens:
        if injective:
            cands.append([y for y in range(dst.order) if do[y] == so[g]])
        else:
            cands.append([y for y in range(dst.order) if so[g] % do[y] == 0])
    t, u = src.table, dst.table
    for choice in itertools.product(*cands):
        img = [0] * src.order
        img[src.identity] = dst.identity
        for y in order[1:]:
            x, k = parent[y]
            img[y] = u[img[x]][choice[k]]
        ok = all(img[t[x][g]] == u[img[x]][choice[k]] for x in range(src.order) for k, g in enumerate(gens))
        if not ok:
            continue
        f = GroupMap(src, dst, tuple(img))
        if injective and not f.is_injective:
            continue
        if surjective and not f.is_surjective:
            continue
        yield f


def homomorphisms(E: Group, L: Group, kind: str = "all") -> List[GroupMap]:
    """Homomorphisms from ``L`` to ``E`` (arrow ``E <- L``).

    ``kind='epi'`` keeps the surjective ones, ``'iso'`` the bijective ones.
    Sorted by image tuple.
    """
    if kind not in ("all", "epi", "iso"):
        raise ValueError(f"unknown filter {kind!r}")
    if kind == "iso" and E.order != L.order:
        return []
    if kind == "epi" and L.order % E.order:
        return []
    maps = _hom_search(L, E, injective=(kind == "iso"), surjective=(kind in ("epi", "iso")))
    return sorted(maps, key=lambda f: f.images)


def automorphisms(E: Group) -> Tuple[Group, List[GroupMap]]:
    """``Aut(E)`` as a group on indices of ``maps``; ``maps[i]`` evaluates element i.

    The product ``i*j`` is the composite ``maps[i] o maps[j]``; index 0 is the identity.
    """
    cached = E._cache.get("aut")
    if cached is None:
        maps = homomorphisms(E, E, "iso")
        pos = {f.images: i for i, f in enumerate(maps)}
        table = [[pos[a.compose(b).images] for b in maps] for a in maps]
        A = Group(table, 0, None, f"Aut({E.name})", check=False)
        cached = E._cache["aut"] = (A, maps)
    return cached  # type: ignore[return-value]


def _fingerprint(G: Group) -> Tuple:
    cached = G._cache.get("fingerprint")
    if cached is None:
        census: Dict[int, int] = {}
        for o in G.element_orders:
            census[o] = census.get(o, 0) + 1
        cached = G._cache["fingerprint"] = (G.order, G.is_abelian, tuple(sorted(census.items())))
    return cached  # type: ignore[return-value]


def is_isomorphic(G: Group, H: Group) -> Optional[GroupMap]:
    """An isomorphism ``G -> H`` if one exists (first in enumeration order)."""
    if _fingerprint(G) != _fingerprint(H):
        return None
    for f in _hom_search(G, H, injective=True, surjective=True):
        return f
    return None


def conjugacy_classes_of_subgroups(G: Group) -> List[List[Subgroup]]:
    """Conjugacy classes, each sorted by bitset; representative (first) is the least bitset."""
    cached = G._cache.get("subgroup_classes")
    if cached is None:
        gens = G.generators()
        seen: Dict[int, int] = {}
        classes: List[List[int]] = []
        for b in sorted(G.subgroup_bits()):
            if b in seen:
                continue
            orbit = {b}
            frontier = [b]
            while frontier:
                x = frontier.pop()
                for g in gens:
                    y = G.conjugate_bits(x, g)
                    if y not in orbit:
                        orbit.add(y)
                        frontier.append(y)
            for y in orbit:
                seen[y] = len(classes)
            classes.append(sorted(orbit))
        cached = G._cache["subgroup_classes"] = classes
    return [[Subgroup(G, b) for b in cls] for cls in cached]  # type: ignore[union-attr]


def class_representative(G: Group, bits: int) -> int:
    reps = G._cache.get("class_rep")
    if reps is None:
        reps = {}
        for cls in conjugacy_classes_of_subgroups(G):
            for H in cls:
                reps[H.bits] = cls[0].bits
        G._cache["class_rep"] = reps
    return reps[bits]  # type: ignore[index]


# ---------------------------------------------------------------- isomorphism classes


def _catalog_specs(n: int) -> List[str]:
    from .scalars import factorize

    specs = [f"C{n}"]
    # abelian groups as products of cyclic prime powers, split by prime
    fac = factorize(n)

    def partitions(k: int, maxpart: Optional[int] = None) -> Iterator[List[int]]:
        maxpart = maxpart or k
        if k == 0:
            yield []
            return
        for p in range(min(k, maxpart), 0, -1):
            for rest in partitions(k - p, p):
                yield [p] + rest

    per_prime = [[[q ** a for a in part] for part in partitions(e)] for q, e in fac]
    for combo in itertools.product(*per_prime):
        parts = sorted((x for part in combo for x in part), reverse=True)
        if len(parts) > 1:
            specs.append("x".join(f"C{x}" for x in parts))
    if n >= 6 and n % 2 == 0:
        specs.append(f"D{n}")
    if n == 8:
        specs.append("Q8")
    if n == 24:
        specs.append("S4")
    return specs


_CATALOG: Dict[Tuple, List[Group]] = {}


def canonical_group(G: Group) -> Group:
    """The first group of a fixed catalog isomorphic to ``G``.

    The catalog holds cyclic, abelian, dihedral, Q8 and S4 groups of the
    relevant order; a group matching none of these is appended to the catalog
    and becomes its own representative.
    """
    fp = _fingerprint(G)
    bucket = _CATALOG.get(fp)
    if bucket is None:
        bucket = []
        for spec in _catalog_specs(G.order):
            C = make_group(spec, order_cap=max(G.order, DEFAULT_ORDER_CAP))
            key = _fingerprint(C)
            _CATALOG.setdefault(key, [])
            if not any(is_isomorphic(C, D) for D in _CATALOG[key]):
                _CATALOG[key].append(C)
        bucket = _CATALOG.setdefault(fp, [])
    for C in bucket:
        if C is G or is_isomorphic(G, C) is not None:
            return C
    bucket.append(G)
    return G


def is_factor_group(E: Group, G: Group) -> bool:
    """Whether ``E`` is isomorphic to a subquotient of ``G``."""
    if G.order % E.order:
        return False
    for sec in sections(G):
        if sec.index == E.order and is_isomorphic(quotient(sec.top, sec.bottom), E) is not None:
            return True
    return False
