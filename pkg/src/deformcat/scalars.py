"""Exact scalars: rational functions in indeterminates ``l<q>`` indexed by primes.

A :class:`Polynomial` is a sparse map from monomials to :class:`fractions.Fraction`
coefficients.  A monomial is a tuple of ``(prime, exponent)`` pairs sorted by
prime, so polynomials built over different sets of groups combine without any
re-indexing.  A :class:`Scalar` is a quotient of two polynomials.  Fractions are
not kept in lowest terms; equality is decided by cross-multiplication.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Mapping, Optional, Tuple, Union

Monomial = Tuple[Tuple[int, int], ...]
Number = Union[int, Fraction]

__all__ = [
    "Polynomial",
    "Scalar",
    "EllSpec",
    "ell",
    "specialize",
    "degree",
    "is_monic",
    "length",
    "factorize",
    "SpecializationError",
    "MissingVariableError",
    "VanishingDenominatorError",
    "EllError",
]


class SpecializationError(ValueError):
    pass


class MissingVariableError(SpecializationError):
    pass


class VanishingDenominatorError(SpecializationError, ZeroDivisionError):
    pass


class EllError(ValueError):
    pass


@lru_cache(maxsize=None)
def factorize(n: int) -> Tuple[Tuple[int, int], ...]:
    """Prime factorization of ``n >= 1`` as sorted ``(prime, exponent)`` pairs."""
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def length(n: int) -> int:
    """Number of prime factors of ``n`` counted with multiplicity."""
    return sum(e for _, e in factorize(n))


@lru_cache(maxsize=65536)
def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for p, e in b:
        d[p] = d.get(p, 0) + e
    return tuple(sorted(d.items()))


def _mono_div(a: Monomial, b: Monomial) -> Optional[Monomial]:
    d = dict(a)
    for p, e in b:
        r = d.get(p, 0) - e
        if r < 0:
            return None
        if r:
            d[p] = r
        else:
            del d[p]
    return tuple(sorted(d.items()))


def _mono_deg(m: Monomial) -> int:
    return sum(e for _, e in m)


def _mono_key(m: Monomial):
    # graded order; ties broken by the exponent pattern read from the largest prime down
    return (_mono_deg(m), tuple(sorted(m, reverse=True)))


def _mono_str(m: Monomial) -> str:
    return "*".join(f"l{p}" if e == 1 else f"l{p}^{e}" for p, e in m)


class Polynomial:
    """Sparse polynomial over the rationals in the variables ``l<q>``."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[Monomial, Number]] = None):
        t: Dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                if c:
                    t[tuple(m)] = Fraction(c)
        self._terms = t

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Fraction]) -> "Polynomial":
        p = cls.__new__(cls)
        p._terms = terms
        return p

    @classmethod
    def constant(cls, c: Number) -> "Polynomial":
        return cls._raw({(): Fraction(c)} if c else {})

    @classmethod
    def variable(cls, prime: int) -> "Polynomial":
        return cls._raw({((prime, 1),): Fraction(1)})

    @staticmethod
    def coerce(x) -> "Polynomial":
        if isinstance(x, Polynomial):
            return x
        if isinstance(x, (int, Fraction)):
            return Polynomial.constant(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to Polynomial")

    @property
    def terms(self) -> Dict[Monomial, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and () in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get((), Fraction(0))

    def variables(self) -> Tuple[int, ...]:
        return tuple(sorted({p for m in self._terms for p, _ in m}))

    def __add__(self, other) -> "Polynomial":
        try:
            other = Polynomial.coerce(other)
        except TypeError:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        t = dict(self._terms)
        for m, c in other._terms.items():
            v = t.get(m, 0) + c
            if v:
                t[m] = v
            else:
                t.pop(m, None)
        return Polynomial._raw(t)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        try:
            other = Polynomial.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return Polynomial.coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            if not other:
                return Polynomial._raw({})
            return Polynomial._raw({m: c * other for m, c in self._terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return Polynomial._raw({})
        if len(a) == 1 and () in a:
            return other * a[()]
        if len(b) == 1 and () in b:
            return self * b[()]
        t: Dict[Monomial, Fraction] = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = _mono_mul(m1, m2)
                v = t.get(m, 0) + c1 * c2
                if v:
                    t[m] = v
                else:
                    t.pop(m, None)
        return Polynomial._raw(t)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative exponent")
        out = Polynomial.constant(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        try:
            other = Polynomial.coerce(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def degree(self) -> int:
        if not self._terms:
            raise ValueError("the zero polynomial has no degree")
        return max(_mono_deg(m) for m in self._terms)

    def top_terms(self) -> Dict[Monomial, Fraction]:
        d = self.degree()
        return {m: c for m, c in self._terms.items() if _mono_deg(m) == d}

    def is_monic(self) -> bool:
        top = self.top_terms()
        return len(top) == 1 and next(iter(top.values())) == 1

    def leading(self) -> Tuple[Monomial, Fraction]:
        m = max(self._terms, key=_mono_key)
        return m, self._terms[m]

    def evaluate(self, point: Mapping[int, Number]) -> Fraction:
        total = Fraction(0)
        for m, c in self._terms.items():
            v = c
            for p, e in m:
                try:
                    v *= Fraction(point[p]) ** e
                except KeyError:
                    raise MissingVariableError(f"no value given for l{p}") from None
            total += v
        return total

    def divexact(self, other: "Polynomial") -> "Polynomial":
        """Quotient ``self / other``; raises ArithmeticError unless it is exact."""
        if not other._terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if other.is_constant():
            return self * (1 / other._terms[()])
        lm, lc = other.leading()
        rem = dict(self._terms)
        quot: Dict[Monomial, Fraction] = {}
        while rem:
            m = max(rem, key=_mono_key)
            qm = _mono_div(m, lm)
            if qm is None:
                raise ArithmeticError("not an exact division")
            qc = rem[m] / lc
            quot[qm] = qc
            for m2, c2 in other._terms.items():
                mm = _mono_mul(qm, m2)
                v = rem.get(mm, 0) - qc * c2
                if v:
                    rem[mm] = v
                else:
                    rem.pop(mm, None)
        return Polynomial._raw(quot)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m in sorted(self._terms, key=_mono_key, reverse=True):
            c = self._terms[m]
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not m:
                body = str(a)
            elif a == 1:
                body = _mono_str(m)
            else:
                body = f"{a}*{_mono_str(m)}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"


_ONE = Polynomial.constant(1)


class Scalar:
    """Element of the rational function field ``Q(l2, l3, l5, ...)``.

    Denominators that are constants are folded into the numerator, and a
    numerator exactly divisible by its denominator is reduced, so every scalar
    that is a polynomial is stored with denominator 1.  No gcds are taken.
    """

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=None):
        num = Polynomial.coerce(num)
        den = _ONE if den is None else Polynomial.coerce(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            den = _ONE
        elif den.is_constant():
            c = den.constant_value()
            if c != 1:
                num = num * (1 / c)
            den = _ONE
        else:
            try:
                num, den = num.divexact(den), _ONE
            except ArithmeticError:
                _, lc = den.leading()
                if lc != 1:
                    num, den = num * (1 / lc), den * (1 / lc)
        self.num = num
        self.den = den

    @staticmethod
    def coerce(x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        return Scalar(x)

    @classmethod
    def variable(cls, prime: int) -> "Scalar":
        return cls(Polynomial.variable(prime))

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def is_constant(self) -> bool:
        return self.den.is_constant() and self.num.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num.constant_value()

    def __add__(self, other) -> "Scalar":
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        if self.den is o.den or self.den == o.den:
            return Scalar(self.num + o.num, self.den)
        return Scalar(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        s = Scalar.__new__(Scalar)
        s.num, s.den = -self.num, self.den
        return s

    def __sub__(self, other) -> "Scalar":
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "Scalar":
        return Scalar.coerce(other) - self

    def __mul__(self, other) -> "Scalar":
        if isinstance(other, (int, Fraction)):
            if not other:
                return Scalar()
            s = Scalar.__new__(Scalar)
            s.num, s.den = self.num * other, self.den
            return s
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        if self.den is _ONE and o.den is _ONE:
            s = Scalar.__new__(Scalar)
            s.num, s.den = self.num * o.num, _ONE
            return s
        return Scalar(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        return Scalar(self.den, self.num)

    def __truediv__(self, other) -> "Scalar":
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other) -> "Scalar":
        return Scalar.coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "Scalar":
        if k < 0:
            return self.inverse() ** (-k)
        return Scalar(self.num ** k, self.den ** k)

    def __eq__(self, other) -> bool:
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        if self.den is _ONE and o.den is _ONE:
            return self.num == o.num
        return self.num * o.den == o.num * self.den

    __hash__ = None  # unreduced fractions have no canonical hash

    def specialize(self, point: Mapping[int, Number]) -> Fraction:
        d = self.den.evaluate(point)
        n = self.num.evaluate(point)
        if d == 0:
            raise VanishingDenominatorError(f"denominator {self.den} vanishes at {dict(point)}")
        return n / d

    def variables(self) -> Tuple[int, ...]:
        return tuple(sorted(set(self.num.variables()) | set(self.den.variables())))

    def __str__(self) -> str:
        if self.den.is_constant():
            return str(self.num)
        n = str(self.num)
        if len(self.num._terms) > 1:
            n = f"({n})"
        return f"{n}/({self.den})"

    def __repr__(self) -> str:
        return f"Scalar({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        return _Parser(text).parse()


class _Parser:
    _token = re.compile(r"\s*(?:(l\d+)|(\d+)|(.))")

    def __init__(self, text: str):
        self.tokens = []
        for m in self._token.finditer(text):
            var, num, op = m.groups()
            if var:
                self.tokens.append(("var", int(var[1:])))
            elif num:
                self.tokens.append(("num", int(num)))
            elif op and not op.isspace():
                self.tokens.append(("op", op))
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self, op=None):
        tok = self.peek()
        if op is not None and tok != ("op", op):
            raise ValueError(f"expected {op!r} at token {self.i}")
        self.i += 1
        return tok

    def parse(self) -> Scalar:
        v = self.expr()
        if self.i != len(self.tokens):
            raise ValueError("trailing input in scalar text")
        return v

    def expr(self) -> Scalar:
        v = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            rhs = self.term()
            v = v + rhs if op == "+" else v - rhs
        return v

    def term(self) -> Scalar:
        v = self.factor()
        while self.peek() in (("op", "*"), ("op", "/")):
            _, op = self.take()
            rhs = self.factor()
            v = v * rhs if op == "*" else v / rhs
        return v

    def factor(self) -> Scalar:
        if self.peek() == ("op", "-"):
            self.take()
            return -self.factor()
        v = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, k = self.take()
            if kind != "num":
                raise ValueError("exponent must be an integer")
            v = v ** k
        return v

    def atom(self) -> Scalar:
        kind, val = self.take()
        if kind == "num":
            return Scalar(val)
        if kind == "var":
            return Scalar.variable(val)
        if (kind, val) == ("op", "("):
            v = self.expr()
            self.take(")")
            return v
        raise ValueError(f"unexpected token {val!r}")


@dataclass(frozen=True)
class EllSpec:
    """A multiplicative map from positive integers to invertible scalars.

    ``generic`` sends a prime ``q`` to the indeterminate ``l<q>``; ``power``
    sends ``n`` to ``n**d``; ``unit`` sends everything to 1; ``assign`` gives
    explicit nonzero rational values at primes.
    """

    mode: str = "generic"
    power: int = 1
    values: Tuple[Tuple[int, Fraction], ...] = ()

    def __post_init__(self):
        if self.mode not in ("generic", "power", "unit", "assign"):
            raise EllError(f"unknown ell mode {self.mode!r}")
        if self.mode == "power" and self.power < 1:
            raise EllError("power mode needs d >= 1")
        for p, v in self.values:
            if v == 0:
                raise EllError(f"ell({p}) must be invertible")

    @classmethod
    def generic(cls) -> "EllSpec":
        return cls("generic")

    @classmethod
    def unit(cls) -> "EllSpec":
        return cls("unit")

    @classmethod
    def power_of(cls, d: int) -> "EllSpec":
        return cls("power", power=d)

    @classmethod
    def assign(cls, values: Mapping[int, Number]) -> "EllSpec":
        for p in values:
            if factorize(p) != ((p, 1),):
                raise EllError(f"{p} is not a prime")
        return cls("assign", values=tuple(sorted((p, Fraction(v)) for p, v in values.items())))

    @classmethod
    def parse(cls, text: "str | EllSpec") -> "EllSpec":
        if isinstance(text, EllSpec):
            return text
        t = text.strip()
        if t in ("generic", "unit"):
            return cls(t)
        m = re.fullmatch(r"power(?::|\()\s*(\d+)\s*\)?", t)
        if m:
            return cls.power_of(int(m.group(1)))
        if t.startswith("assign:"):
            vals = {}
            body = t[len("assign:"):].strip()
            for item in filter(None, (s.strip() for s in body.split(","))):
                try:
                    p, v = item.split("=")
                    vals[int(p)] = Fraction(v.strip())
                except ValueError:
                    raise EllError(f"bad assignment {item!r}") from None
            return cls.assign(vals)
        raise EllError(f"cannot parse ell spec {text!r}")

    def __str__(self) -> str:
        if self.mode == "power":
            return f"power:{self.power}"
        if self.mode == "assign":
            return "assign:" + ",".join(f"{p}={v}" for p, v in self.values)
        return self.mode

    @property
    def is_generic(self) -> bool:
        return self.mode == "generic"

    def at_prime(self, p: int) -> Scalar:
        if self.mode == "generic":
            return Scalar.variable(p)
        if self.mode == "power":
            return Scalar(p ** self.power)
        if self.mode == "unit":
            return Scalar(1)
        for q, v in self.values:
            if q == p:
                return Scalar(v)
        raise EllError(f"assign-mode ell has no value for the prime {p}")

    def __call__(self, n: int) -> Scalar:
        return ell(n, self)


@lru_cache(maxsize=4096)
def _ell_cached(n: int, spec: EllSpec) -> Scalar:
    if spec.mode == "generic":
        return Scalar(Polynomial._raw({factorize(n): Fraction(1)}))
    if spec.mode == "power":
        return Scalar(n ** spec.power)
    out = Scalar(1)
    for p, e in factorize(n):
        out = out * spec.at_prime(p) ** e
    return out


def ell(n: int, spec: "EllSpec | str" = "generic") -> Scalar:
    """Value of the multiplicative map at ``n``."""
    if n < 1:
        raise ValueError("ell is defined on positive integers")
    return _ell_cached(n, EllSpec.parse(spec))


def specialize(s, assignment: Mapping[int, Number]) -> Fraction:
    """Evaluate a scalar exactly at ``l<q> = assignment[q]``."""
    s = Scalar.coerce(s)
    missing = [p for p in s.variables() if p not in assignment]
    if missing:
        raise MissingVariableError(f"no value for {', '.join(f'l{p}' for p in missing)}")
    return s.specialize(assignment)


def degree(p) -> int:
    p = p.num if isinstance(p, Scalar) and p.is_polynomial() else p
    return Polynomial.coerce(p).degree()


def is_monic(p) -> bool:
    p = p.num if isinstance(p, Scalar) and p.is_polynomial() else p
    return Polynomial.coerce(p).is_monic()


def as_fraction(x) -> Fraction:
    return Scalar.coerce(x).constant_value()


def polynomial_product(items: Iterable[Polynomial]) -> Polynomial:
    out = _ONE
    for p in items:
        out = out * p
    return out
