"""Exact coefficient rings: rationals, Laurent polynomials, truncated hbar series.

Rationals are :class:`fractions.Fraction`; plain ``int`` is accepted wherever a
rational is and embeds into the other two rings.  Nothing here ever touches a
float.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Mapping, Union

MAX_LAURENT_VARS = 3

Monomial = tuple  # tuple[tuple[str, int], ...], sorted by variable name, no zero exponents


class RingMismatch(TypeError):
    """Raised when values from two different scalar rings are combined."""


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    raise RingMismatch(f"expected a rational, got {type(x).__name__}")


def _is_rational(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        s = exps.get(v, 0) + e
        if s:
            exps[v] = s
        else:
            exps.pop(v, None)
    return tuple(sorted(exps.items()))


class LaurentPoly:
    """Laurent polynomial with rational coefficients in at most three symbols."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for mono, c in terms.items():
                c = _as_fraction(c)
                if c:
                    key = tuple(sorted((v, int(e)) for v, e in mono if e))
                    clean[key] = clean.get(key, Fraction(0)) + c
                    if not clean[key]:
                        del clean[key]
        self.terms = clean
        self._hash = None
        if len(self.variables) > MAX_LAURENT_VARS:
            raise ValueError(f"at most {MAX_LAURENT_VARS} variables allowed, got {self.variables}")

    @classmethod
    def _raw(cls, terms: dict) -> "LaurentPoly":
        p = object.__new__(cls)
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        return cls({(): c})

    @classmethod
    def var(cls, name: str) -> "LaurentPoly":
        return cls({((name, 1),): 1})

    @classmethod
    def monomial(cls, exponents: Mapping[str, int], coeff=1) -> "LaurentPoly":
        return cls({tuple(exponents.items()): coeff})

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(sorted({v for mono in self.terms for v, _ in mono}))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if _is_rational(other):
            return LaurentPoly.const(other)
        raise RingMismatch(f"cannot combine LaurentPoly with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if _is_rational(other):
            if not other:
                return LaurentPoly._raw({})
            return LaurentPoly._raw({m: c * other for m, c in self.terms.items()})
        other = self._coerce(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        res = LaurentPoly._raw(out)
        if len(res.variables) > MAX_LAURENT_VARS:
            raise ValueError("product exceeds the variable budget")
        return res

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            if not self.is_monomial():
                raise ZeroDivisionError("only monomials are invertible in a Laurent ring")
            ((mono, c),) = self.terms.items()
            inv = LaurentPoly._raw({tuple((v, -x) for v, x in mono): 1 / c})
            return inv ** (-e)
        out = LaurentPoly.const(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.terms == other.terms
        if _is_rational(other):
            return self.terms == LaurentPoly.const(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def coefficient(self, exponents: Mapping[str, int]) -> Fraction:
        key = tuple(sorted((v, e) for v, e in exponents.items() if e))
        return self.terms.get(key, Fraction(0))

    def substitute_monomial(self, mapping: Mapping[str, Mapping[str, int]]) -> "LaurentPoly":
        """Replace each variable by a monomial, e.g. ``{"q": {"q": 1, "t": 1}}`` for q -> qt."""
        out = LaurentPoly._raw({})
        for mono, c in self.terms.items():
            m: Monomial = ()
            for v, e in mono:
                target = mapping.get(v, {v: 1})
                m = _mono_mul(m, tuple(sorted((w, e * k) for w, k in target.items() if e * k)))
            out = out + LaurentPoly._raw({m: c})
        return out

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=lambda m: tuple((v, e) for v, e in m)):
            c = self.terms[mono]
            body = "*".join(v if e == 1 else f"{v}^{e}" for v, e in mono)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")


def laurent_eval(p: LaurentPoly, assignment: Mapping[str, object]) -> Fraction:
    """Evaluate ``p`` at exact rational values of its variables."""
    total = Fraction(0)
    for mono, c in p.terms.items():
        term = c
        for v, e in mono:
            if v not in assignment:
                raise KeyError(f"variable {v!r} not assigned")
            x = _as_fraction(assignment[v])
            if x == 0 and e < 0:
                raise ZeroDivisionError(f"{v}=0 with negative exponent {e}")
            term *= x**e
        total += term
    return total


class HbarSeries:
    """Power series in hbar truncated at a fixed order ``order``."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Iterable, order: int):
        if order < 0:
            raise ValueError("order must be non-negative")
        cs = list(coeffs)[: order + 1]
        cs += [Fraction(0)] * (order + 1 - len(cs))
        self.order = order
        self.coeffs = tuple(Fraction(c) if _is_rational(c) else c for c in cs)
        kinds = {type(c) for c in self.coeffs if not _is_rational(c)}
        if kinds - {LaurentPoly}:
            raise RingMismatch("hbar coefficients must be rationals or Laurent polynomials")

    @classmethod
    def const(cls, c, order: int) -> "HbarSeries":
        return cls([c], order)

    def _coerce(self, other) -> "HbarSeries":
        if isinstance(other, HbarSeries):
            if other.order != self.order:
                raise RingMismatch(f"truncation orders differ: {self.order} vs {other.order}")
            return other
        if _is_rational(other) or isinstance(other, LaurentPoly):
            return HbarSeries.const(other, self.order)
        raise RingMismatch(f"cannot combine HbarSeries with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        return HbarSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    __radd__ = __add__

    def __neg__(self):
        return HbarSeries([-a for a in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if _is_rational(other):
            return HbarSeries([a * other for a in self.coeffs], self.order)
        other = self._coerce(other)
        K = self.order
        out = [Fraction(0)] * (K + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j in range(K + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] = out[i + j] + a * b
        return HbarSeries(out, K)

    __rmul__ = __mul__

    def inverse(self) -> "HbarSeries":
        """Multiplicative inverse; needs a nonzero rational constant term."""
        a0 = self.coeffs[0]
        if not _is_rational(a0) or a0 == 0:
            raise ZeroDivisionError("series is not invertible")
        inv = [Fraction(1) / a0]
        for k in range(1, self.order + 1):
            s = sum((self.coeffs[j] * inv[k - j] for j in range(1, k + 1)), Fraction(0))
            inv.append(-s / a0)
        return HbarSeries(inv, self.order)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = HbarSeries.const(1, self.order)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __bool__(self):
        return any(bool(c) for c in self.coeffs)

    def __eq__(self, other):
        if isinstance(other, HbarSeries):
            return self.order == other.order and self.coeffs == other.coeffs
        if _is_rational(other) or isinstance(other, LaurentPoly):
            return self.coeffs == HbarSeries.const(other, self.order).coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __getitem__(self, k: int):
        return self.coeffs[k]

    def __repr__(self):
        return f"HbarSeries({list(map(str, self.coeffs))}, order={self.order})"

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if c:
                parts.append(f"({c})" + ("" if k == 0 else f"*h^{k}"))
        return " + ".join(parts) if parts else "0"


Scalar = Union[int, Fraction, LaurentPoly, HbarSeries]


def ring_of(x) -> str:
    if _is_rational(x):
        return "rational"
    if isinstance(x, LaurentPoly):
        return "laurent"
    if isinstance(x, HbarSeries):
        return "hbar"
    raise RingMismatch(f"not a scalar: {type(x).__name__}")


def scalar_arith(a, b, op: str):
    """Ring operation on two scalars of the same ring; ``op`` in add/sub/mul."""
    ra, rb = ring_of(a), ring_of(b)
    if ra != rb:
        raise RingMismatch(f"ring mismatch: {ra} vs {rb}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op in ("div", "truediv"):
        raise TypeError("division is not provided in these rings")
    raise ValueError(f"unknown op {op!r}")


def exp_series(c, order: int) -> HbarSeries:
    """Truncation of exp(c*hbar) at hbar^order."""
    c = _as_fraction(c)
    return HbarSeries([c**m / factorial(m) for m in range(order + 1)], order)


def scalar_pow(x, e: int):
    """x**e for an invertible scalar; negative powers need a unit."""
    if _is_rational(x):
        x = Fraction(x)
        if x == 0 and e < 0:
            raise ZeroDivisionError("zero is not invertible")
        return x**e
    return x**e


@lru_cache(maxsize=None)
def bernoulli_number(n: int) -> Fraction:
    """B_n with B_1 = -1/2, from sum_{k<=n} C(n+1, k) B_k = 0."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return Fraction(1)
    s = sum((comb(n + 1, k) * bernoulli_number(k) for k in range(n)), Fraction(0))
    return -s / (n + 1)


def bernoulli_polynomial(n: int, x) -> Fraction:
    x = _as_fraction(x)
    return sum((comb(n, k) * bernoulli_number(k) * x ** (n - k) for k in range(n + 1)), Fraction(0))


def hurwitz_zeta_negative(m: int, a) -> Fraction:
    """zeta(-m, a) = -B_{m+1}(a) / (m + 1) for m >= 1."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    return -bernoulli_polynomial(m + 1, a) / (m + 1)
