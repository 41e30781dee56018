"""Exact integer Laurent polynomials in one variable ``t``.

Values are immutable and kept in a normalized form: the coefficient tuple
``c_0 .. c_d`` has nonzero first and last entries and ``offset`` records the
power of ``t`` multiplying ``c_0``.  Sign is never normalized here.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable, Optional

import numpy as np

__all__ = [
    "LaurentPoly",
    "CyclotomicSplit",
    "PolyParseError",
    "parse",
    "multiply",
    "reciprocal",
    "exact_divide",
    "cyclotomic",
    "cyclotomic_indices",
    "cyclotomic_split",
    "totient",
]


class PolyParseError(ValueError):
    """Raised for malformed polynomial text; ``pos`` is the 0-based column."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class LaurentPoly:
    """``t**offset * sum(c_i * t**i)`` with integer coefficients."""

    __slots__ = ("_coeffs", "_offset")

    def __init__(self, coeffs: Iterable[int] = (), offset: int = 0):
        cs = [int(c) for c in coeffs]
        lo = 0
        while lo < len(cs) and cs[lo] == 0:
            lo += 1
        hi = len(cs)
        while hi > lo and cs[hi - 1] == 0:
            hi -= 1
        if lo == hi:
            self._coeffs: tuple[int, ...] = ()
            self._offset = 0
        else:
            self._coeffs = tuple(cs[lo:hi])
            self._offset = int(offset) + lo

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "LaurentPoly":
        return cls((c,), k)

    @classmethod
    def constant(cls, c: int) -> "LaurentPoly":
        return cls((c,), 0)

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._coeffs

    @property
    def offset(self) -> int:
        return self._offset

    @property
    def degree(self) -> int:
        """Span of exponents, ``len(coeffs) - 1``; -1 for zero."""
        return len(self._coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def leading(self) -> int:
        return self._coeffs[-1] if self._coeffs else 0

    @property
    def lowest(self) -> int:
        return self._coeffs[0] if self._coeffs else 0

    def content(self) -> int:
        g = 0
        for c in self._coeffs:
            g = gcd(g, c)
        return g

    def is_palindromic(self) -> bool:
        return self._coeffs == self._coeffs[::-1]

    def is_antipalindromic(self) -> bool:
        return self._coeffs == tuple(-c for c in self._coeffs[::-1])

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._coeffs == other._coeffs and self._offset == other._offset

    def __hash__(self):
        return hash((self._coeffs, self._offset))

    def __bool__(self):
        return bool(self._coeffs)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly([-c for c in self._coeffs], self._offset)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        base = min(self._offset, other._offset)
        top = max(self._offset + self.degree, other._offset + other.degree)
        out = [0] * (top - base + 1)
        for p in (self, other):
            for i, c in enumerate(p._coeffs):
                out[p._offset - base + i] += c
        return LaurentPoly(out, base)

    __radd__ = __add__

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        return multiply(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        out = LaurentPoly.constant(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __call__(self, z):
        """Evaluate at ``z`` by Horner's rule (any numeric type)."""
        acc = 0
        for c in reversed(self._coeffs):
            acc = acc * z + c
        if self._offset:
            acc = acc * z ** self._offset
        return acc

    def subs_neg(self) -> "LaurentPoly":
        """``f(-t)``."""
        return LaurentPoly(
            [c if (self._offset + i) % 2 == 0 else -c for i, c in enumerate(self._coeffs)],
            self._offset,
        )

    def numpy_coeffs(self) -> np.ndarray:
        """Coefficients in descending order as float64, ready for ``np.polyval``."""
        return np.array(self._coeffs[::-1], dtype=float)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"LaurentPoly({list(self._coeffs)!r}, offset={self._offset})"


@dataclass(frozen=True)
class CyclotomicSplit:
    """``f = unit_sign * t**monomial_exp * content * prod(Phi_d**m) * remainder``."""

    unit_sign: int
    monomial_exp: int
    content: int
    cyclo_factors: tuple[tuple[int, int], ...]
    remainder: LaurentPoly

    def reassemble(self) -> LaurentPoly:
        out = LaurentPoly.monomial(self.monomial_exp, self.unit_sign * self.content)
        for d, m in self.cyclo_factors:
            out = out * cyclotomic(d) ** m
        return out * self.remainder

    @property
    def is_trivial(self) -> bool:
        """True when the measure is log(content) alone."""
        return self.remainder.degree == 0


# ---------------------------------------------------------------- printing


def _format_terms(coeffs: tuple[int, ...], offset: int) -> str:
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        k = i + offset
        if k == 0:
            body = str(abs(c))
        else:
            mono = "t" if k == 1 else f"t^{k}"
            body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


def format_poly(f: LaurentPoly) -> str:
    """Canonical text: descending powers, explicit signs, ``t^-k*(...)`` wrapper
    when negative exponents occur."""
    if f.is_zero:
        return "0"
    if f.offset >= 0:
        return _format_terms(f.coeffs, f.offset)
    return f"t^{f.offset}*({_format_terms(f.coeffs, 0)})"


# ----------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|(t)|(\^)|(\*)|([+-])|(\()|(\)))")


def _tokenize(text: str):
    pos = 0
    out = []
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolyParseError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        kind = ("int", "t", "^", "*", "sign", "(", ")")[m.lastindex - 1]
        out.append((kind, m.group(m.lastindex), start))
        pos = m.end()
    out.append(("end", "", n))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise PolyParseError(f"expected {kind}, found {what}", tok[2])
        self.i += 1
        return tok

    def signed_int(self) -> int:
        sign = 1
        if self.peek()[0] == "sign":
            sign = -1 if self.take()[1] == "-" else 1
        return sign * int(self.take("int")[1])

    def term(self, first: bool):
        """Returns (coefficient, exponent, had_explicit_coefficient)."""
        sign = 1
        if self.peek()[0] == "sign":
            sign = -1 if self.take()[1] == "-" else 1
        elif not first:
            tok = self.peek()
            raise PolyParseError("expected '+' or '-'", tok[2])
        coeff = None
        if self.peek()[0] == "int":
            coeff = int(self.take()[1])
            if self.peek()[0] == "*":
                self.take()
                if self.peek()[0] != "t":
                    raise PolyParseError("expected 't' after '*'", self.peek()[2])
        if self.peek()[0] == "t":
            self.take()
            k = 1
            if self.peek()[0] == "^":
                self.take()
                k = self.signed_int()
        elif coeff is None:
            tok = self.peek()
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise PolyParseError(f"expected a term, found {what}", tok[2])
        else:
            k = 0
        return sign * (1 if coeff is None else coeff), k, coeff is not None

    def sum(self, stop: str) -> dict[int, int]:
        terms: dict[int, int] = {}
        first = True
        while True:
            c, k, _ = self.term(first)
            terms[k] = terms.get(k, 0) + c
            first = False
            if self.peek()[0] in (stop, ")"):
                return terms

    def parse(self) -> LaurentPoly:
        if self.peek()[0] == "end":
            raise PolyParseError("empty input", 0)
        # t^k*( ... ) wrapper produced by the canonical printer
        if self.peek()[0] == "t":
            save = self.i
            self.take()
            k = 1
            if self.peek()[0] == "^":
                self.take()
                k = self.signed_int()
            if self.peek()[0] == "*" and self.peek(1)[0] == "(":
                self.take()
                self.take()
                inner = self.sum(")")
                self.take(")")
                self.take("end")
                return _from_terms(inner) * LaurentPoly.monomial(k)
            self.i = save
        terms = self.sum("end")
        tok = self.peek()
        if tok[0] != "end":
            raise PolyParseError(f"unexpected {tok[1]!r}", tok[2])
        return _from_terms(terms)


def _from_terms(terms: dict[int, int]) -> LaurentPoly:
    lo = min(terms)
    hi = max(terms)
    cs = [0] * (hi - lo + 1)
    for k, c in terms.items():
        cs[k - lo] += c
    return LaurentPoly(cs, lo)


def parse(text: str) -> LaurentPoly:
    """Parse ``"t^10 + t^9 - t^7 ..."``-style text in the variable ``t``."""
    if not text.strip():
        raise PolyParseError("empty input", 0)
    return _Parser(text).parse()


# -------------------------------------------------------------- arithmetic


def multiply(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    if a.is_zero or b.is_zero:
        return LaurentPoly()
    ac, bc = a.coeffs, b.coeffs
    out = [0] * (len(ac) + len(bc) - 1)
    for i, x in enumerate(ac):
        for j, y in enumerate(bc):
            out[i + j] += x * y
    return LaurentPoly(out, a.offset + b.offset)


def reciprocal(f: LaurentPoly) -> LaurentPoly:
    """``f(1/t)``, normalized."""
    if f.is_zero:
        raise ValueError("reciprocal of the zero polynomial")
    return LaurentPoly(f.coeffs[::-1], -(f.offset + f.degree))


def _divide_coeffs(num: tuple[int, ...], den: tuple[int, ...]) -> Optional[list[int]]:
    # both have nonzero constant term, so Laurent divisibility is polynomial divisibility
    n, m = len(num) - 1, len(den) - 1
    if n < m:
        return None
    rem = list(num)
    lead = den[-1]
    q = [0] * (n - m + 1)
    for k in range(n - m, -1, -1):
        r = rem[k + m]
        if r == 0:
            continue
        c, bad = divmod(r, lead)
        if bad:
            return None
        q[k] = c
        for j in range(m + 1):
            rem[k + j] -= c * den[j]
    if any(rem[:m]):
        return None
    return q


def exact_divide(f: LaurentPoly, g: LaurentPoly) -> Optional[LaurentPoly]:
    """Return ``q`` with ``f == g * q`` over the integers, or None."""
    if g.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    if f.is_zero:
        return LaurentPoly()
    q = _divide_coeffs(f.coeffs, g.coeffs)
    if q is None:
        return None
    return LaurentPoly(q, f.offset - g.offset)


# -------------------------------------------------------------- cyclotomic


def totient(n: int) -> int:
    out = n
    p = 2
    m = n
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            out -= out // p
        p += 1
    if m > 1:
        out -= out // m
    return out


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> LaurentPoly:
    """The d-th cyclotomic polynomial."""
    if d < 1:
        raise ValueError("cyclotomic index must be >= 1")
    num = LaurentPoly([-1] + [0] * (d - 1) + [1])
    for e in range(1, d):
        if d % e == 0:
            num = exact_divide(num, cyclotomic(e))
    return num


@lru_cache(maxsize=None)
def cyclotomic_indices(max_degree: int) -> tuple[int, ...]:
    """All d with phi(d) <= max_degree, ascending.  phi(d) >= sqrt(d/2) bounds the scan."""
    if max_degree < 1:
        return ()
    limit = 2 * max_degree * max_degree + 2
    return tuple(d for d in range(1, limit + 1) if totient(d) <= max_degree)


@lru_cache(maxsize=None)
def _unit_roots(d: int) -> np.ndarray:
    k = np.array([j for j in range(1, d + 1) if gcd(j, d) == 1])
    return np.exp(2j * np.pi * k / d)


def _may_vanish_on(coeffs: tuple[int, ...], d: int) -> bool:
    """Cheap float screen: False only when f(zeta_d) is provably nonzero."""
    scale = float(sum(abs(c) for c in coeffs))
    if scale > 2.0**40:
        return True
    z = _unit_roots(d)[0]
    val = abs(np.polyval(np.array(coeffs[::-1], dtype=float), z))
    # rounding error of Horner here is far below 1e-9 * scale
    return val <= 1e-9 * scale


def cyclotomic_split(f: LaurentPoly) -> CyclotomicSplit:
    """Strip sign, monomial, content and every cyclotomic factor from ``f``."""
    if f.is_zero:
        raise ValueError("cyclotomic_split of the zero polynomial")
    sign = 1 if f.leading > 0 else -1
    content = f.content()
    rem = tuple(sign * c // content for c in f.coeffs)
    factors = []
    for d in cyclotomic_indices(len(rem) - 1):
        phi = cyclotomic(d)
        if phi.degree > len(rem) - 1:
            continue
        mult = 0
        while phi.degree <= len(rem) - 1 and _may_vanish_on(rem, d):
            q = _divide_coeffs(rem, phi.coeffs)
            if q is None:
                break
            rem = tuple(q)
            mult += 1
        if mult:
            factors.append((d, mult))
    return CyclotomicSplit(
        unit_sign=sign,
        monomial_exp=f.offset,
        content=content,
        cyclo_factors=tuple(factors),
        remainder=LaurentPoly(rem),
    )
