"""Entropy enclosures ``[lo, hi]`` over the extended nonnegative reals.

Endpoints are Python floats, ``math.inf`` standing for an infinite entropy.
Every operation rounds outward exactly (the exact rational result is compared
against the float result), so an enclosure is widened by at most one ulp per
endpoint per operation and not at all when the float result is exact.

Convention: ``0 * inf == 0`` (the time-0 flow is the identity, entropy 0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import mpmath

__all__ = [
    "EntropyInterval",
    "ext_add",
    "ext_mul",
    "mpf_down",
    "mpf_up",
    "format_ext",
    "parse_ext",
]

INF = math.inf
Real = Union[int, float, Fraction]


def _down(exact: Fraction, approx: float) -> float:
    return approx if Fraction(approx) <= exact else math.nextafter(approx, -INF)


def _up(exact: Fraction, approx: float) -> float:
    return approx if Fraction(approx) >= exact else math.nextafter(approx, INF)


def ext_add(a: float, b: float, up: bool) -> float:
    if a == INF or b == INF:
        return INF
    s = a + b
    exact = Fraction(a) + Fraction(b)
    return _up(exact, s) if up else _down(exact, s)


def ext_mul(a: float, b: float, up: bool) -> float:
    if a == 0 or b == 0:
        return 0.0
    if a == INF or b == INF:
        return INF
    p = a * b
    if math.isinf(p):
        return INF if up else math.nextafter(INF, 0)
    exact = Fraction(a) * Fraction(b)
    return _up(exact, p) if up else _down(exact, p)


def _exact(x, upper: bool):
    # interval endpoints must not be re-rounded to the ambient mp.prec
    if hasattr(x, "_mpi_"):
        return mpmath.make_mpf(x._mpi_[1 if upper else 0])
    if isinstance(x, mpmath.mpf):
        return x
    return mpmath.mpf(x)


def mpf_down(x) -> float:
    """Largest float <= the mpmath number ``x``."""
    x = _exact(x, upper=False)
    if mpmath.isinf(x):
        return float(x)
    f = float(x)
    if mpmath.mpf(f) > x:
        f = math.nextafter(f, -INF)
    return f


def mpf_up(x) -> float:
    x = _exact(x, upper=True)
    if mpmath.isinf(x):
        return float(x)
    f = float(x)
    if mpmath.mpf(f) < x:
        f = math.nextafter(f, INF)
    return f


def format_ext(x: float) -> str:
    """Decimal string that round-trips to the same float; ``inf`` for infinity."""
    return "inf" if x == INF else repr(float(x))


def parse_ext(text) -> float:
    if isinstance(text, (int, float)):
        return float(text)
    s = str(text).strip().lower()
    if s in ("inf", "+inf", "infinity", "∞"):
        return INF
    return float(s)


@dataclass(frozen=True)
class EntropyInterval:
    lo: float
    hi: float

    def __post_init__(self):
        lo, hi = float(self.lo), float(self.hi)
        if math.isnan(lo) or math.isnan(hi):
            raise ValueError("NaN endpoint")
        if lo < 0 or lo > hi:
            raise ValueError(f"invalid entropy interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, x: float) -> "EntropyInterval":
        return cls(x, x)

    @classmethod
    def zero(cls) -> "EntropyInterval":
        return cls(0.0, 0.0)

    @classmethod
    def infinite(cls) -> "EntropyInterval":
        return cls(INF, INF)

    @classmethod
    def around(cls, value: float, radius: float) -> "EntropyInterval":
        """``[value - radius, value + radius]`` rounded outward, clipped at 0."""
        lo = max(0.0, _down(Fraction(value) - Fraction(radius), value - radius))
        hi = _up(Fraction(value) + Fraction(radius), value + radius)
        return cls(lo, max(lo, hi))

    @classmethod
    def from_mpf(cls, lo, hi) -> "EntropyInterval":
        return cls(max(0.0, mpf_down(lo)), max(0.0, mpf_up(hi)))

    @property
    def width(self) -> float:
        if self.hi == INF:
            return 0.0 if self.lo == INF else INF
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        if self.hi == INF:
            return INF
        return 0.5 * (self.lo + self.hi)

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    @property
    def is_finite(self) -> bool:
        return self.hi < INF

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def encloses(self, other: "EntropyInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def overlaps(self, other: "EntropyInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def __add__(self, other: "EntropyInterval") -> "EntropyInterval":
        if not isinstance(other, EntropyInterval):
            return NotImplemented
        return EntropyInterval(
            ext_add(self.lo, other.lo, up=False), ext_add(self.hi, other.hi, up=True)
        )

    def scale(self, c: Real) -> "EntropyInterval":
        """Multiply by a nonnegative scalar ``c`` (``c`` may be ``inf``)."""
        c = float(c) if not isinstance(c, Fraction) else c
        if isinstance(c, Fraction):
            lo = _scale_fraction(self.lo, c, up=False)
            hi = _scale_fraction(self.hi, c, up=True)
            return EntropyInterval(lo, hi)
        if c < 0 or math.isnan(c):
            raise ValueError("scale factor must be nonnegative")
        return EntropyInterval(ext_mul(self.lo, c, up=False), ext_mul(self.hi, c, up=True))

    __rmul__ = scale

    def hull(self, other: "EntropyInterval") -> "EntropyInterval":
        return EntropyInterval(min(self.lo, other.lo), max(self.hi, other.hi))

    def max(self, other: "EntropyInterval") -> "EntropyInterval":
        """Enclosure of ``max(x, y)`` for ``x`` in self, ``y`` in other."""
        return EntropyInterval(max(self.lo, other.lo), max(self.hi, other.hi))

    def to_json(self) -> dict:
        return {"lo": format_ext(self.lo), "hi": format_ext(self.hi)}

    @classmethod
    def from_json(cls, obj) -> "EntropyInterval":
        return cls(parse_ext(obj["lo"]), parse_ext(obj["hi"]))

    def __str__(self):
        if self.is_point:
            return f"[{format_ext(self.lo)}]"
        return f"[{format_ext(self.lo)}, {format_ext(self.hi)}]"


def _scale_fraction(x: float, c: Fraction, up: bool) -> float:
    if x == 0 or c == 0:
        return 0.0
    if x == INF:
        return INF
    exact = Fraction(x) * c
    approx = float(exact)
    return _up(exact, approx) if up else _down(exact, approx)
