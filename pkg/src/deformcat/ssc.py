"""Semisimplicity analysis: T-matrices over epimorphisms, the trace form of the
regular representation, the center, and the explicit blocks for a cyclic group
of prime order."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .algebra import AlgebraElement, LambdaAlgebra, tau_bruteforce
from .goursat import ProductSubgroup, delta, graph, opposite, star
from .groups import (
    Group,
    GroupMap,
    Subgroup,
    automorphisms,
    bits_to_list,
    canonical_group,
    conjugacy_classes_of_subgroups,
    direct_product,
    homomorphisms,
    make_group,
    popcount,
    quotient,
)
from .linalg import determinant, nullspace, rank, specialize_matrix
from .poset import moebius_cache
from .scalars import EllSpec, Scalar, ell, factorize, length

__all__ = [
    "triangle_left",
    "triangle_right",
    "TMatrix",
    "t_matrix",
    "determinant_audit",
    "relevant_pairs",
    "certify_semisimple_via_T",
    "gram_matrix",
    "gram_radical",
    "center",
    "seed_class_count",
    "subquotient_counts",
    "dimension_identity",
    "verify_example_blocks",
    "SemisimplicityReport",
    "CERTIFIED_SEMISIMPLE",
    "CERTIFIED_NOT_SEMISIMPLE",
    "INCONCLUSIVE",
]

CERTIFIED_SEMISIMPLE = "certified-semisimple"
CERTIFIED_NOT_SEMISIMPLE = "certified-not-semisimple"
INCONCLUSIVE = "inconclusive"

DEFAULT_SYMBOLIC_LIMIT = 40


# ---------------------------------------------------------------- triangles


def _require_epi(phi: GroupMap) -> None:
    if not phi.is_surjective:
        raise ValueError("expected a surjective homomorphism")


def triangle_left(phi: GroupMap) -> ProductSubgroup:
    """``{phi(l) x l}`` in ``E x L`` for ``phi: L ->> E``."""
    _require_epi(phi)
    return graph(phi)


def triangle_right(phi: GroupMap) -> ProductSubgroup:
    """``{l x phi(l)}`` in ``L x E``."""
    return opposite(triangle_left(phi))


# ---------------------------------------------------------------- T-matrices


@dataclass
class TMatrix:
    E: Group
    L: Group
    epis: List[GroupMap]
    entries: List[List[object]]
    route: str
    ell: EllSpec

    @property
    def size(self) -> int:
        return len(self.epis)

    def is_scalar_identity(self) -> Optional[object]:
        """The common diagonal value if the matrix is a multiple of the identity."""
        n = self.size
        for i in range(n):
            for j in range(n):
                if i != j and self.entries[i][j]:
                    return None
        d = self.entries[0][0]
        if all(self.entries[i][i] == d for i in range(n)):
            return d
        return None

    def to_dict(self) -> Dict[str, object]:
        return {
            "E": self.E.name,
            "L": self.L.name,
            "route": self.route,
            "ell": str(self.ell),
            "epimorphisms": [list(f.images) for f in self.epis],
            "matrix": [[str(Scalar.coerce(x)) for x in row] for row in self.entries],
        }


def _single_sum_entry(phi: GroupMap, psi: GroupMap, spec: EllSpec):
    """``sum_S möb(S, L) ell(ker phi & S & ker psi)`` over ``S <= L`` whose image
    under ``phi x psi`` contains the diagonal of ``E``."""
    L, E = phi.domain, phi.codomain
    kphi, kpsi = phi.kernel().bits, psi.kernel().bits
    n = E.order
    diag = sum(1 << (e * n + e) for e in range(n))
    acc = Scalar(0) if spec.is_generic else Fraction(0)
    for s, m in moebius_cache(L).column(L.full_bits).items():
        img = 0
        for x in bits_to_list(s):
            img |= 1 << (phi(x) * n + psi(x))
        if img & diag == diag:
            v = ell(popcount(kphi & s & kpsi), spec)
            acc = acc + (v if spec.is_generic else v.constant_value()) * m
    return acc


def t_matrix(E: Group, L: Group, ell_spec: Union[EllSpec, str] = "generic", route: str = "single-sum") -> TMatrix:
    """Entries ``tau_{diag(E)}`` of ``t_{left(phi)} t_{right(psi)}`` over ``phi, psi`` in epi(E, L)."""
    spec = EllSpec.parse(ell_spec)
    epis = homomorphisms(E, L, "epi")
    if not epis:
        raise ValueError(f"no epimorphisms {L.name} ->> {E.name}")
    rows = []
    if route == "bruteforce":
        K = delta(E)
        for phi in epis:
            I = triangle_left(phi)
            row = []
            for psi in epis:
                v = tau_bruteforce(K, I, triangle_right(psi), spec)
                row.append(v if spec.is_generic else Scalar.coerce(v).constant_value())
            rows.append(row)
    elif route == "single-sum":
        for phi in epis:
            rows.append([_single_sum_entry(phi, psi, spec) for psi in epis])
    else:
        raise ValueError(f"unknown route {route!r}")
    return TMatrix(E, L, epis, rows, route, spec)


def _poly_degree(x) -> Optional[int]:
    s = Scalar.coerce(x)
    if not s:
        return None
    if not s.is_polynomial():
        raise ValueError(f"{s} is not a polynomial")
    return s.num.degree()


def _poly_monic(x) -> bool:
    s = Scalar.coerce(x)
    return bool(s) and s.is_polynomial() and s.num.is_monic()


def determinant_audit(T: TMatrix) -> Dict[str, object]:
    """Exact determinant with degree and monicity, compared against the two
    predictions ``d * |epi|`` and ``d ** |epi|`` where ``d = Omega(|L|/|E|)``."""
    if not T.ell.is_generic:
        raise ValueError("the degree audit needs generic ell")
    det = determinant(T.entries)
    d = length(T.L.order // T.E.order)
    n = T.size
    deg = _poly_degree(det)
    diag_deg = [_poly_degree(T.entries[i][i]) for i in range(n)]
    diag_monic = all(_poly_monic(T.entries[i][i]) for i in range(n))
    off = [_poly_degree(T.entries[i][j]) for i in range(n) for j in range(n) if i != j]
    off_max = max((x for x in off if x is not None), default=None)
    linear, power = d * n, d ** n
    matches = [name for name, val in (("d*|epi|", linear), ("d^|epi|", power)) if val == deg]
    return {
        "E": T.E.name,
        "L": T.L.name,
        "epi_count": n,
        "d": d,
        "determinant": str(Scalar.coerce(det)),
        "degree": deg,
        "monic": _poly_monic(det),
        "diagonal_degrees": diag_deg,
        "diagonal_monic": diag_monic,
        "diagonal_degree_is_d": all(x == d for x in diag_deg),
        "offdiagonal_max_degree": off_max,
        "offdiagonal_below_d": off_max is None or off_max < d,
        "prediction_linear": linear,
        "prediction_power": power,
        "matches": matches,
    }


def relevant_pairs(groups: Sequence[Group]) -> List[Tuple[Group, Group]]:
    """``(E, L)`` with ``L`` a subgroup of a member and ``E`` a quotient of ``L``,
    one pair per isomorphism type, ordered by (|L|, |E|)."""
    Ls: List[Group] = []
    for G in groups:
        for cls in conjugacy_classes_of_subgroups(G):
            L = canonical_group(cls[0].as_group())
            if not any(L is M for M in Ls):
                Ls.append(L)
    pairs: List[Tuple[Group, Group]] = []
    for L in Ls:
        seen: List[Group] = []
        for N in L.subgroup_bits():
            if not L.is_normal_bits(N, L.full_bits):
                continue
            E = canonical_group(quotient(L.whole(), Subgroup(L, N)))
            if not any(E is F for F in seen):
                seen.append(E)
                pairs.append((E, L))
    pairs.sort(key=lambda p: (p[1].order, p[1].name, p[0].order, p[0].name))
    return pairs


# ---------------------------------------------------------------- trace form


def _trace_of_left_mult(alg: LambdaAlgebra) -> Dict[ProductSubgroup, object]:
    """``tr(x -> s_W x)`` for every basis key ``W`` with a nonzero trace."""
    out = {}
    basis = alg.basis()
    for W in basis:
        if W.codomain is not W.domain:
            continue
        acc = alg.scalar(0)
        for X in basis:
            if X.codomain is not W.domain:
                continue
            if star(W, X) == X:
                acc = acc + alg.sigma(W, X)
        if acc:
            out[W] = acc
    return out


def gram_matrix(alg: LambdaAlgebra) -> List[List[object]]:
    """``G[a][b] = tr(L_{s_a s_b})`` over the square basis."""
    tr = _trace_of_left_mult(alg)
    basis = alg.basis()
    z = alg.scalar(0)
    M = []
    for U in basis:
        row = []
        for V in basis:
            if U.domain is not V.codomain:
                row.append(z)
                continue
            t = tr.get(star(U, V))
            row.append(alg.sigma(U, V) * t if t is not None else z)
        M.append(row)
    return M


def _primes_of(alg: LambdaAlgebra) -> List[int]:
    ps = set()
    for G in alg.groups:
        ps.update(p for p, _ in factorize(G.order))
    return sorted(ps)


def _random_points(primes: Sequence[int], count: int, seed: int) -> List[Dict[int, Fraction]]:
    """Points with distinct large prime coordinates, drawn from the seed."""
    rng = random.Random(seed)
    pool = [p for p in range(10007, 20011) if all(p % k for k in range(2, int(p ** 0.5) + 1))]
    chosen = rng.sample(pool, count * max(1, len(primes)))
    pts = []
    for i in range(count):
        pts.append({q: Fraction(chosen[i * len(primes) + j]) for j, q in enumerate(primes)})
    return pts


def gram_radical(
    alg: LambdaAlgebra,
    mode: str = "symbolic",
    points: Optional[Sequence[Mapping[int, object]]] = None,
    seed: int = 0,
    symbolic_limit: int = DEFAULT_SYMBOLIC_LIMIT,
) -> Dict[str, object]:
    """Rank of the trace form and, when degenerate, a basis of its radical.

    For specialized ell the form is rational and everything is exact.  For
    generic ell, ``symbolic`` first evaluates at sample points (full rank at a
    point proves full rank over the function field) and otherwise falls back
    to fraction-free elimination; ``specialized`` only reports the ranks at
    the given (or seeded random) points.
    """
    M = gram_matrix(alg)
    n = len(M)
    basis = alg.basis()
    out: Dict[str, object] = {"dim": n, "ell": str(alg.ell)}
    if not alg.is_generic:
        r = rank(M)
        out.update(mode="exact-rational", rank=r, full_rank=(r == n))
        if r < n:
            out["radical"] = [_vector_element(alg, v, basis) for v in nullspace(M)]
        return out
    primes = _primes_of(alg)
    if points is None:
        points = _random_points(primes, 3, seed)
    pts = [{int(k): Fraction(v) for k, v in p.items()} for p in points]
    ranks = [rank(specialize_matrix(M, p)) for p in pts]
    out["points"] = [{f"l{q}": str(v) for q, v in sorted(p.items())} for p in pts]
    out["ranks_at_points"] = ranks
    if mode == "specialized":
        out.update(mode="specialized", rank=max(ranks) if ranks else None, full_rank=any(r == n for r in ranks))
        return out
    if mode != "symbolic":
        raise ValueError(f"unknown gram mode {mode!r}")
    if any(r == n for r in ranks):
        out.update(mode="symbolic-by-evaluation", rank=n, full_rank=True)
        return out
    if n > symbolic_limit:
        out.update(mode="symbolic-skipped", rank=None, full_rank=None,
                   note=f"dimension {n} exceeds the symbolic limit {symbolic_limit}")
        return out
    r = rank(M)
    out.update(mode="symbolic-bareiss", rank=r, full_rank=(r == n))
    if r < n:
        out["radical"] = [_vector_element(alg, v, basis) for v in nullspace(M)]
    return out


def _vector_element(alg: LambdaAlgebra, v: Sequence[object], basis: Sequence[ProductSubgroup]) -> AlgebraElement:
    return alg.element({U: c for U, c in zip(basis, v) if c})


# ---------------------------------------------------------------- center


def center(alg: LambdaAlgebra) -> List[AlgebraElement]:
    """Basis of ``{z : z s = s z for every square-basis s}``."""
    basis = alg.basis()
    pos = {U: i for i, U in enumerate(basis)}
    rows: Dict[Tuple[int, int], Dict[int, object]] = {}
    for a, A in enumerate(basis):
        for B in basis:
            for sign, (X, Y) in ((1, (A, B)), (-1, (B, A))):
                if X.domain is not Y.codomain:
                    continue
                W = star(X, Y)
                key = (pos[B], pos[W])
                row = rows.setdefault(key, {})
                row[a] = row.get(a, alg.scalar(0)) + alg.sigma(X, Y) * sign
    z = alg.scalar(0)
    M = []
    seen = set()
    for key in sorted(rows):
        row = rows[key]
        if not any(bool(v) for v in row.values()):
            continue
        dense = [row.get(a, z) for a in range(len(basis))]
        sig = tuple(str(Scalar.coerce(x)) for x in dense)
        if sig in seen:
            continue
        seen.add(sig)
        M.append(dense)
    vecs = nullspace(M, ncols=len(basis))
    return [_vector_element(alg, v, basis) for v in vecs]


def subquotient_counts(groups: Sequence[Group]) -> List[Tuple[Group, int]]:
    """``[(E, n_E)]`` where ``n_E`` counts triples ``(G, B, Y)`` with ``G`` a
    member, ``Y`` normal in ``B <= G`` and ``B/Y`` isomorphic to ``E``."""
    counts: List[List] = []
    for G in groups:
        for B in G.subgroup_bits():
            for Y in G.subgroup_bits():
                if Y & B == Y and G.is_normal_bits(Y, B):
                    E = canonical_group(quotient(Subgroup(G, B), Subgroup(G, Y)))
                    for entry in counts:
                        if entry[0] is E:
                            entry[1] += 1
                            break
                    else:
                        counts.append([E, 1])
    return [(E, n) for E, n in counts]


def dimension_identity(groups: Sequence[Group]) -> Dict[str, object]:
    """Compare ``sum_{F,G} |S(F x G)|`` with ``sum_E n_E^2 |Aut(E)|``."""
    lattice = 0
    for F in groups:
        for G in groups:
            lattice += len(direct_product(F, G).subgroup_bits())
    terms = []
    seeds = 0
    for E, n in subquotient_counts(groups):
        a = automorphisms(E)[0].order
        seeds += n * n * a
        terms.append({"group": E.name, "n": n, "aut": a})
    return {"lattice_dim": lattice, "seed_dim": seeds, "terms": terms, "ok": lattice == seeds}


def seed_class_count(groups: Sequence[Group]) -> int:
    """Sum over isomorphism types ``E`` of subquotients of members of the
    number of conjugacy classes of ``Aut(E)``."""
    return sum(_class_count(automorphisms(E)[0]) for E, _ in subquotient_counts(groups))


def _class_count(A: Group) -> int:
    seen = set()
    k = 0
    for x in range(A.order):
        if x in seen:
            continue
        k += 1
        for g in range(A.order):
            seen.add(A.conj(g, x))
    return k


# ---------------------------------------------------------------- certification


@dataclass
class SemisimplicityReport:
    context: str
    ell: str
    verdict: str
    certificate: str
    t_matrices: List[Dict[str, object]] = field(default_factory=list)
    gram: Optional[Dict[str, object]] = None
    witnesses: List[object] = field(default_factory=list)

    def to_dict(self) -> Dict[str, object]:
        return {
            "context": self.context,
            "ell": self.ell,
            "verdict": self.verdict,
            "certificate": self.certificate,
            "t_matrices": self.t_matrices,
            "gram": _gram_to_dict(self.gram),
            "witnesses": self.witnesses,
        }


def _gram_to_dict(g: Optional[Dict[str, object]]) -> Optional[Dict[str, object]]:
    if g is None:
        return None
    out = {k: v for k, v in g.items() if k != "radical"}
    if "radical" in g:
        out["radical"] = [e.alg.serialize(e) for e in g["radical"]]  # type: ignore[union-attr]
    return out


def certify_semisimple_via_T(
    alg: LambdaAlgebra,
    *,
    use_gram: bool = True,
    seed: int = 0,
    symbolic_limit: int = DEFAULT_SYMBOLIC_LIMIT,
) -> SemisimplicityReport:
    """Invertible T-matrices for every relevant ``(E, L)`` certify
    semisimplicity; otherwise the trace form decides when it can."""
    tm = []
    all_invertible = True
    for E, L in relevant_pairs(alg.groups):
        T = t_matrix(E, L, alg.ell)
        det = determinant(T.entries)
        inv = bool(det)
        all_invertible &= inv
        entry = T.to_dict()
        entry["determinant"] = str(Scalar.coerce(det))
        entry["invertible"] = inv
        tm.append(entry)
    ctx = "{" + ", ".join(alg.names) + "}"
    gram = None
    if use_gram:
        gram = gram_radical(alg, "symbolic", seed=seed, symbolic_limit=symbolic_limit)
    if all_invertible:
        if gram is not None and gram.get("full_rank") is False:
            raise AssertionError("T-matrices invertible but the trace form is degenerate")
        return SemisimplicityReport(ctx, str(alg.ell), CERTIFIED_SEMISIMPLE, "T-matrices", tm, gram)
    if gram is not None and gram.get("full_rank") is True:
        return SemisimplicityReport(ctx, str(alg.ell), CERTIFIED_SEMISIMPLE, "trace-form", tm, gram)
    if gram is not None and gram.get("full_rank") is False and gram.get("radical"):
        wit = [e.alg.serialize(e) for e in gram["radical"]]  # type: ignore[union-attr]
        return SemisimplicityReport(ctx, str(alg.ell), CERTIFIED_NOT_SEMISIMPLE, "trace-form-radical", tm, gram, wit)
    return SemisimplicityReport(ctx, str(alg.ell), INCONCLUSIVE, "none", tm, gram)


# ---------------------------------------------------------------- cyclic blocks


def _cyclic_keys(G: Group) -> Dict[str, ProductSubgroup]:
    m = G.order
    e = G.identity
    keys = {
        "s0": ProductSubgroup(G, G, 1 << (e * m + e)),
        "s01": ProductSubgroup(G, G, sum(1 << (e * m + g) for g in range(m))),
        "s10": ProductSubgroup(G, G, sum(1 << (g * m + e) for g in range(m))),
        "s11": ProductSubgroup(G, G, (1 << (m * m)) - 1),
    }
    return keys


def _power_map(G: Group, g: int, d: int) -> int:
    x = G.identity
    for _ in range(d):
        x = G.mul(x, g)
    return x


def verify_example_blocks(q: int, ell_spec: Union[EllSpec, str] = "generic") -> Dict[str, object]:
    """Build the explicit central idempotents for ``K = {C_q}`` and check them.

    With ``lam = ell(q)`` and ``r = lam s0 - s01 - s10 + s11`` the candidates
    are ``b11 = r/(lam-1)``, ``b_zeta = -r/(lam-1) + (1/(q-1)) sum_d s_d`` and,
    for ``q = 3``, ``b_chi = (1/2)(s_1 - s_2)``.  For ``q >= 5`` the remaining
    blocks are checked together as ``1 - b11 - b_zeta``.
    """
    if factorize(q) != ((q, 1),):
        raise ValueError(f"{q} is not prime")
    G = make_group(f"C{q}")
    alg = LambdaAlgebra([G], ell_spec)
    lam = alg.coef(q)
    if lam == 1:
        raise ValueError("the block formulas need ell(q) != 1")
    k = _cyclic_keys(G)
    s = {name: alg.s(U) for name, U in k.items()}
    units = [d for d in range(1, q)]
    sd = {d: alg.s(ProductSubgroup(G, G, sum(1 << (_power_map(G, g, d) * q + g) for g in range(q)))) for d in units}
    r = s["s0"].scale(lam) - s["s01"] - s["s10"] + s["s11"]
    inv = 1 / (lam - 1)
    b11 = r.scale(inv)
    avg = alg.zero()
    for d in units:
        avg = avg + sd[d]
    bzeta = r.scale(-inv) + avg.scale(Fraction(1, q - 1))
    blocks: Dict[str, AlgebraElement] = {"b_1_1": b11, "b_G_zeta": bzeta}
    if q == 3:
        blocks["b_G_chi"] = (sd[1] - sd[2]).scale(Fraction(1, 2))
    elif q >= 5:
        blocks["b_G_rest"] = alg.identity() - b11 - bzeta
    one = alg.identity()
    basis = alg.basis()
    checks: Dict[str, object] = {}
    names = list(blocks)
    total = alg.zero()
    for n in names:
        b = blocks[n]
        total = total + b
        checks[f"{n}_idempotent"] = (b * b == b)
        checks[f"{n}_central"] = all(alg.s(U) * b == b * alg.s(U) for U in basis)
        checks[f"{n}_dim"] = rank([(alg.s(U) * b).vector() for U in basis])
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            checks[f"{a}_{b}_orthogonal"] = (blocks[a] * blocks[b]).is_zero() and (blocks[b] * blocks[a]).is_zero()
    checks["sum_is_one"] = (total == one)
    checks["r_squared"] = (r * r == r.scale(lam - 1))
    expected_dims = {"b_1_1": 4, "b_G_zeta": 1, "b_G_chi": 1, "b_G_rest": q - 2}
    dims_ok = all(checks[f"{n}_dim"] == expected_dims[n] for n in names)
    ok = dims_ok and all(v for key, v in checks.items() if not key.endswith("_dim"))
    return {
        "q": q,
        "ell": str(alg.ell),
        "lambda": str(Scalar.coerce(lam)),
        "dim": alg.dim,
        "blocks": {n: alg.serialize(b) for n, b in blocks.items()},
        "checks": checks,
        "expected_dims": {n: expected_dims[n] for n in names},
        "ok": ok,
    }
