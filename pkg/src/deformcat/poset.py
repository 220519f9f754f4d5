"""Subgroup lattices as posets: memoized Möbius function and inversion transforms."""

from __future__ import annotations

import json
import os
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Union

from .groups import Group, Subgroup, table_document

__all__ = [
    "MoebiusCache",
    "moebius",
    "moebius_by_inversion",
    "poset_moebius",
    "sum_to_totient",
    "totient_to_sum",
    "product_moebius",
    "LatticeCache",
]

CACHE_VERSION = 1
CACHE_ENV = "DEFORMCAT_CACHE"


class MoebiusCache:
    """Möbius values of one group's subgroup lattice.

    Columns ``möb(., I)`` are filled on demand by the defining recursion
    ``sum_{U <= V <= I} möb(V, I) = 0`` for ``U < I`` and never change afterwards.
    """

    def __init__(self, group: Group):
        self.group = group
        self.subs = group.subgroup_bits()
        self._cols: Dict[int, Dict[int, int]] = {}

    def column(self, top: int) -> Dict[int, int]:
        """Nonzero values ``{U: möb(U, top)}``."""
        col = self._cols.get(top)
        if col is not None:
            return col
        below = [b for b in self.subs if b & top == b]
        # walk downward from top: subs are sorted by size, so reversed order is safe
        vals: Dict[int, int] = {}
        for u in reversed(below):
            if u == top:
                vals[u] = 1
                continue
            s = 0
            for v, m in vals.items():
                if u & v == u:
                    s += m
            vals[u] = -s
        col = {u: m for u, m in vals.items() if m}
        self._cols[top] = col
        return col

    def value(self, low: int, top: int) -> int:
        if low & top != low:
            return 0
        return self.column(top).get(low, 0)

    def preload(self, table: Mapping[int, Mapping[int, int]]) -> None:
        for top, col in table.items():
            self._cols.setdefault(top, dict(col))

    def export(self) -> Dict[int, Dict[int, int]]:
        return {top: dict(self.column(top)) for top in self.subs}


def moebius_cache(G: Group) -> MoebiusCache:
    mc = G._cache.get("moebius")
    if mc is None:
        mc = G._cache["moebius"] = MoebiusCache(G)
        disk = LatticeCache.default()
        if disk is not None:
            disk.load_into(mc)
    return mc  # type: ignore[return-value]


def moebius(U: Subgroup, I: Subgroup) -> int:
    if U.group is not I.group:
        raise ValueError("subgroups of different groups")
    return moebius_cache(U.group).value(U.bits, I.bits)


def poset_moebius(elements: Sequence, leq: Callable[[object, object], bool]) -> Dict:
    """Möbius function of a small finite poset by inverting its zeta matrix.

    Returns ``{(x, y): möb(x, y)}`` for all comparable pairs with nonzero value.
    """
    n = len(elements)
    zeta = [[1 if leq(elements[i], elements[j]) else 0 for j in range(n)] for i in range(n)]
    # order elements by number of elements below; zeta becomes upper unitriangular
    rank = sorted(range(n), key=lambda i: sum(zeta[k][i] for k in range(n)))
    Z = [[zeta[rank[i]][rank[j]] for j in range(n)] for i in range(n)]
    inv = _invert_unitriangular(Z)
    out = {}
    for i in range(n):
        for j in range(n):
            if inv[i][j]:
                out[(elements[rank[i]], elements[rank[j]])] = inv[i][j]
    return out


def _invert_unitriangular(Z: List[List[int]]) -> List[List[int]]:
    n = len(Z)
    X = [[0] * n for _ in range(n)]
    for j in range(n):
        X[j][j] = 1
        for i in range(j - 1, -1, -1):
            X[i][j] = -sum(Z[i][k] * X[k][j] for k in range(i + 1, j + 1) if Z[i][k])
    return X


def moebius_by_inversion(G: Group) -> Dict[tuple, int]:
    """Independent Möbius table for ``G`` via zeta-matrix inversion."""
    subs = list(G.subgroup_bits())
    return poset_moebius(subs, lambda a, b: a & b == a)


Scalarish = Union[int, Fraction, object]


def sum_to_totient(f: Mapping[int, Scalarish], I: Subgroup) -> Dict[int, Scalarish]:
    """``totient(U) = sum_{V <= U} möb(V, U) f(V)`` for every subgroup ``U <= I``.

    ``f`` is keyed by subgroup bitsets.
    """
    mc = moebius_cache(I.group)
    out = {}
    for u in mc.subs:
        if u & I.bits != u:
            continue
        acc = 0
        for v, m in mc.column(u).items():
            acc = acc + m * f[v]
        out[u] = acc
    return out


def totient_to_sum(g: Mapping[int, Scalarish], I: Subgroup) -> Dict[int, Scalarish]:
    """Inverse of :func:`sum_to_totient`: ``f(U) = sum_{V <= U} g(V)``."""
    subs = [u for u in I.group.subgroup_bits() if u & I.bits == u]
    out = {}
    for u in subs:
        acc = 0
        for v in subs:
            if v & u == v:
                acc = acc + g[v]
        out[u] = acc
    return out


def product_moebius(p1: tuple, p2: tuple) -> int:
    """Möbius value of ``[a1, b1] x [a2, b2]`` in a product of two subgroup lattices."""
    (a1, b1), (a2, b2) = p1, p2
    return moebius(a1, b1) * moebius(a2, b2)


class LatticeCache:
    """Optional on-disk store of subgroup lattices and Möbius tables.

    One JSON file per group, keyed by a hash of its table document.  Files
    carry a version number; stale or corrupt files are ignored.
    """

    def __init__(self, directory: Union[str, Path]):
        self.dir = Path(directory)

    @classmethod
    def default(cls) -> Optional["LatticeCache"]:
        d = os.environ.get(CACHE_ENV)
        return cls(d) if d else None

    def _path(self, G: Group) -> Path:
        import hashlib

        digest = hashlib.sha256(table_document(G).split("\n", 1)[1].encode()).hexdigest()[:24]
        return self.dir / f"lattice-{digest}.json"

    def load_into(self, mc: MoebiusCache) -> bool:
        p = self._path(mc.group)
        try:
            data = json.loads(p.read_text())
        except (OSError, ValueError):
            return False
        if data.get("version") != CACHE_VERSION:
            return False
        subs = tuple(int(x, 16) for x in data["subgroups"])
        if subs != mc.subs:
            return False
        mc.preload({int(t, 16): {int(u, 16): m for u, m in col.items()} for t, col in data["moebius"].items()})
        return True

    def store(self, G: Group) -> Path:
        mc = moebius_cache(G)
        data = {
            "version": CACHE_VERSION,
            "name": G.name,
            "subgroups": [hex(b) for b in mc.subs],
            "moebius": {hex(t): {hex(u): m for u, m in sorted(col.items())} for t, col in sorted(mc.export().items())},
        }
        self.dir.mkdir(parents=True, exist_ok=True)
        p = self._path(G)
        tmp = p.with_suffix(".tmp")
        tmp.write_text(json.dumps(data, sort_keys=True))
        tmp.replace(p)
        return p
