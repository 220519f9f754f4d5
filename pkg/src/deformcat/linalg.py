"""Exact dense linear algebra over ``Fraction`` or :class:`Scalar` entries.

Rational matrices use ordinary Gauss-Jordan elimination.  Matrices with
symbolic entries are first made polynomial (row denominators cleared), then
reduced by fraction-free Bareiss elimination so every intermediate entry
stays a polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Mapping, Optional, Sequence, Tuple

from .scalars import Polynomial, Scalar

__all__ = [
    "is_rational_matrix",
    "rref_rational",
    "echelon_bareiss",
    "rank",
    "rank_at",
    "determinant",
    "nullspace",
    "left_nullspace",
    "specialize_matrix",
]

Matrix = List[List[object]]


def _is_rational(x) -> bool:
    if isinstance(x, (int, Fraction)):
        return True
    return isinstance(x, Scalar) and x.is_constant()


def is_rational_matrix(M: Sequence[Sequence[object]]) -> bool:
    return all(_is_rational(x) for row in M for x in row)


def _to_fraction(x) -> Fraction:
    if isinstance(x, Scalar):
        return x.constant_value()
    return Fraction(x)


def rref_rational(M: Sequence[Sequence[object]]) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form over the rationals; returns (nonzero rows, pivot columns)."""
    A = [[_to_fraction(x) for x in row] for row in M]
    if not A:
        return [], []
    nrows, ncols = len(A), len(A[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        pr = A[r]
        inv = 1 / pr[c]
        if inv != 1:
            for k in range(c, ncols):
                if pr[k]:
                    pr[k] *= inv
        nz = [k for k in range(c, ncols) if pr[k]]
        for i in range(nrows):
            if i != r:
                f = A[i][c]
                if f:
                    row = A[i]
                    for k in nz:
                        row[k] -= f * pr[k]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return A[:r], pivots


def _polynomial_rows(M: Sequence[Sequence[object]]) -> List[List[Scalar]]:
    """Scale each row by its denominators so that all entries are polynomials."""
    out = []
    for row in M:
        srow = [Scalar.coerce(x) for x in row]
        dens: List[Polynomial] = []
        for x in srow:
            if not x.is_polynomial() and all(x.den != d for d in dens):
                dens.append(x.den)
        if dens:
            f = Scalar(1)
            for d in dens:
                f = f * Scalar(d)
            srow = [x * f for x in srow]
        out.append(srow)
    return out


def echelon_bareiss(M: Sequence[Sequence[object]]) -> Tuple[List[List[Scalar]], List[int], int]:
    """Fraction-free row echelon form.

    Returns ``(rows, pivot_columns, sign)`` where ``sign`` records the parity
    of row swaps.  Entries are polynomials throughout; divisions by the
    previous pivot are exact, and go through ``Scalar`` division regardless.
    """
    A = _polynomial_rows(M)
    if not A:
        return [], [], 1
    nrows, ncols = len(A), len(A[0])
    pivots: List[int] = []
    prev = Scalar(1)
    sign = 1
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if A[i][c]), None)
        if p is None:
            continue
        if p != r:
            A[r], A[p] = A[p], A[r]
            sign = -sign
        piv = A[r][c]
        for i in range(r + 1, nrows):
            a = A[i][c]
            row = A[i]
            for k in range(c + 1, ncols):
                row[k] = (piv * row[k] - a * A[r][k]) / prev
            row[c] = Scalar(0)
        prev = piv
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return A[:r], pivots, sign


def rank(M: Sequence[Sequence[object]]) -> int:
    if not M or not M[0]:
        return 0
    if is_rational_matrix(M):
        return len(rref_rational(M)[1])
    return len(echelon_bareiss(M)[1])


def specialize_matrix(M: Sequence[Sequence[object]], point: Mapping[int, object]) -> List[List[Fraction]]:
    out = []
    for row in M:
        out.append([x.specialize(point) if isinstance(x, Scalar) else Fraction(x) for x in row])
    return out


def rank_at(M: Sequence[Sequence[object]], point: Mapping[int, object]) -> int:
    return rank(specialize_matrix(M, point))


def determinant(M: Sequence[Sequence[object]]):
    """Exact determinant; a ``Fraction`` for rational input, else a :class:`Scalar`."""
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    if is_rational_matrix(M):
        A = [[_to_fraction(x) for x in row] for row in M]
        det = Fraction(1)
        for c in range(n):
            p = next((i for i in range(c, n) if A[i][c]), None)
            if p is None:
                return Fraction(0)
            if p != c:
                A[c], A[p] = A[p], A[c]
                det = -det
            det *= A[c][c]
            inv = 1 / A[c][c]
            for i in range(c + 1, n):
                f = A[i][c] * inv
                if f:
                    for k in range(c, n):
                        A[i][k] -= f * A[c][k]
        return det
    # clear denominators row by row and remember the scaling
    scale = Scalar(1)
    rows = []
    for row in M:
        srow = [Scalar.coerce(x) for x in row]
        f = Scalar(1)
        for x in srow:
            if not x.is_polynomial():
                f = f * Scalar(x.den)
        rows.append([x * f for x in srow])
        scale = scale * f
    E, pivots, sign = _bareiss_square(rows)
    if E is None:
        return Scalar(0)
    return E * sign / scale


def _bareiss_square(A: List[List[Scalar]]):
    n = len(A)
    A = [row[:] for row in A]
    prev = Scalar(1)
    sign = 1
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c]), None)
        if p is None:
            return None, None, 0
        if p != c:
            A[c], A[p] = A[p], A[c]
            sign = -sign
        piv = A[c][c]
        for i in range(c + 1, n):
            a = A[i][c]
            for k in range(c + 1, n):
                A[i][k] = (piv * A[i][k] - a * A[c][k]) / prev
            A[i][c] = Scalar(0)
        prev = piv
    return A[n - 1][n - 1], None, sign


def nullspace(M: Sequence[Sequence[object]], ncols: Optional[int] = None) -> List[List[object]]:
    """A basis of ``{x : M x = 0}``."""
    if ncols is None:
        ncols = len(M[0]) if M else 0
    if not M:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    if is_rational_matrix(M):
        R, piv = rref_rational(M)
        free = [c for c in range(ncols) if c not in set(piv)]
        basis = []
        for f in free:
            v = [Fraction(0)] * ncols
            v[f] = Fraction(1)
            for row, p in zip(R, piv):
                v[p] = -row[f]
            basis.append(v)
        return basis
    E, piv, _ = echelon_bareiss(M)
    pivset = set(piv)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for f in free:
        v: List[object] = [Scalar(0)] * ncols
        v[f] = Scalar(1)
        for row, p in reversed(list(zip(E, piv))):
            acc = Scalar(0)
            for k in range(p + 1, ncols):
                if row[k] and v[k]:
                    acc = acc + row[k] * v[k]
            v[p] = -acc / row[p]
        basis.append(v)
    return basis


def left_nullspace(M: Sequence[Sequence[object]]) -> List[List[object]]:
    """A basis of ``{y : y M = 0}``."""
    if not M:
        return []
    T = [list(col) for col in zip(*M)]
    return nullspace(T, ncols=len(M))
