"""Logarithmic Mahler measure with rigorous enclosures.

``mahler_from_roots`` is the certified evaluator: it strips units, content and
cyclotomic factors exactly, then sums ``log max(1, |root|)`` over certified
root discs of what is left, doubling the working precision until the
enclosure is narrow enough.  ``mahler_jensen`` integrates ``log|f|`` over the
unit circle on a uniform grid and is only a cross-check.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Optional

import mpmath
import numpy as np
from mpmath import iv

from .interval import EntropyInterval, format_ext
from .poly import CyclotomicSplit, LaurentPoly, cyclotomic_split
from .roots import ComplexBall, PrecisionExhausted, _iv_hypot, _ivprec, approximate_roots, certify

__all__ = [
    "MahlerResult",
    "JensenResult",
    "MahlerInconsistency",
    "mahler_from_roots",
    "mahler_jensen",
    "mahler",
    "precision_ceiling",
    "START_PRECISION",
]

START_PRECISION = 64
DEFAULT_CEILING = 4096
CEILING_ENV = "MAHLERENT_PRECISION_CEILING"


class MahlerInconsistency(RuntimeError):
    """The certified enclosure and the Jensen estimate disagree."""


def precision_ceiling() -> int:
    raw = os.environ.get(CEILING_ENV)
    return int(raw) if raw else DEFAULT_CEILING


@dataclass(frozen=True)
class JensenResult:
    value: EntropyInterval
    estimate: float
    grid: int
    converged: bool
    certified: bool = False


@dataclass(frozen=True)
class MahlerResult:
    value: EntropyInterval
    split: CyclotomicSplit
    root_contributions: tuple[tuple[ComplexBall, EntropyInterval], ...]
    method_tags: tuple[str, ...]
    tolerance_met: bool = True
    precision: int = 0
    jensen: Optional[JensenResult] = field(default=None, compare=False)

    @property
    def certified(self) -> bool:
        return "roots" in self.method_tags

    def to_json(self, digits: int = 30) -> dict:
        roots = []
        for ball, contrib in self.root_contributions:
            roots.append({
                "re": mpmath.nstr(ball.center.real, digits),
                "im": mpmath.nstr(ball.center.imag, digits),
                "radius": mpmath.nstr(ball.radius, 6),
                "cluster": ball.cluster,
                "contribution_lo": format_ext(contrib.lo),
                "contribution_hi": format_ext(contrib.hi),
            })
        out = {
            "value_lo": format_ext(self.value.lo),
            "value_hi": format_ext(self.value.hi),
            "nats": True,
            "certified": self.certified,
            "tolerance_met": self.tolerance_met,
            "precision_bits": self.precision,
            "cyclotomic_factors": [[d, m] for d, m in self.split.cyclo_factors],
            "content": self.split.content,
            "remainder": str(self.split.remainder),
            "roots": roots,
            "methods": list(self.method_tags),
        }
        if self.jensen is not None:
            out["jensen"] = {
                "estimate": format_ext(self.jensen.estimate),
                "lo": format_ext(self.jensen.value.lo),
                "hi": format_ext(self.jensen.value.hi),
                "grid": self.jensen.grid,
                "converged": self.jensen.converged,
            }
        return out


def _cluster_contributions(balls: list[ComplexBall], precision: int):
    """Per-ball interval of ``log max(1, |root|)``.

    A cluster of k discs holds k roots somewhere in its union, so each member
    gets the bound over the whole union.
    """
    with _ivprec(precision + 32):
        span: dict[int, tuple] = {}
        for b in balls:
            re, im = iv.mpf(b.center.real), iv.mpf(b.center.imag)
            mod = _iv_hypot(re, im)
            lo = (mod - b.radius).a
            hi = (mod + b.radius).b
            if b.cluster in span:
                plo, phi = span[b.cluster]
                lo, hi = min(lo, plo), max(hi, phi)
            span[b.cluster] = (lo, hi)
        out = {}
        one = iv.mpf(1)
        for cid, (lo, hi) in span.items():
            clo = iv.log(lo).a if lo > one else iv.mpf(0)
            chi = iv.log(hi).b if hi > one else iv.mpf(0)
            out[cid] = iv.mpf([clo, chi])
        return [out[b.cluster] for b in balls]


def _enough(value: EntropyInterval, eps: float) -> bool:
    # endpoints are doubles: a few ulps is the finest achievable width
    floor = 8 * math.ulp(max(value.hi, 1.0))
    return value.width <= max(eps, floor)


def mahler_from_roots(f: LaurentPoly, eps: float = 1e-10, ceiling: Optional[int] = None) -> MahlerResult:
    """Certified enclosure of m(f) = log|a_m| + sum over |root| > 1 of log|root|."""
    if not eps > 0:
        raise ValueError("eps must be positive")
    if f.is_zero:
        raise ValueError("Mahler measure of the zero polynomial is undefined")
    ceiling = precision_ceiling() if ceiling is None else ceiling
    split = cyclotomic_split(f)
    rem = split.remainder

    if rem.degree == 0:
        prec = START_PRECISION
        if split.content == 1:
            value = EntropyInterval.zero()
        else:
            with _ivprec(prec + 32):
                c = iv.log(split.content)
            value = EntropyInterval.from_mpf(c.a, c.b)
        return MahlerResult(value, split, (), ("symbolic",), True, prec)

    prec = START_PRECISION
    start = None
    last = None
    while True:
        try:
            approx = approximate_roots(rem, prec, start)
            balls = certify(rem, approx, prec)
        except PrecisionExhausted:
            balls = None
            approx = None
        if balls is not None:
            contribs = _cluster_contributions(balls, prec)
            with _ivprec(prec + 32):
                total = iv.log(split.content) + iv.log(abs(rem.leading))
                for c in contribs:
                    total = total + c
            value = EntropyInterval.from_mpf(total.a, total.b)
            pairs = tuple(
                (b, EntropyInterval.from_mpf(c.a, c.b)) for b, c in zip(balls, contribs)
            )
            last = MahlerResult(value, split, pairs, ("roots",), True, prec)
            if _enough(value, eps):
                return last
            start = approx
        if prec >= ceiling:
            if last is None:
                raise PrecisionExhausted(f"no certified roots for {f} up to {ceiling} bits")
            return MahlerResult(last.value, split, last.root_contributions, ("roots",), False, prec)
        prec = min(2 * prec, ceiling)


def _jensen_mean(desc: np.ndarray, n: int) -> float:
    # midpoint grid: never lands on a root of unity of order dividing n
    total = 0.0
    chunk = 1 << 20
    for start in range(0, n, chunk):
        k = np.arange(start, min(n, start + chunk), dtype=float)
        z = np.exp(2j * np.pi * (k + 0.5) / n)
        with np.errstate(divide="ignore"):
            total += float(np.sum(np.log(np.abs(np.polyval(desc, z)))))
    return total / n


def mahler_jensen(f: LaurentPoly, tol: float = 1e-8, start_grid: int = 64,
                  max_grid: int = 1 << 24) -> JensenResult:
    """Non-certified estimate of the circle integral of log|f(e^{2 pi i s})|.

    Doubles the grid until two successive estimates agree to ``tol`` and
    returns ``[est - tol, est + tol]``.  If ``max_grid`` is reached first,
    ``converged`` is False and the band is widened to twice the last change.
    """
    if f.is_zero:
        raise ValueError("Mahler measure of the zero polynomial is undefined")
    if not tol > 0:
        raise ValueError("tol must be positive")
    desc = f.numpy_coeffs()
    n = start_grid
    prev = _jensen_mean(desc, n)
    step = math.inf
    converged = False
    while n < max_grid:
        n *= 2
        est = _jensen_mean(desc, n)
        step = abs(est - prev)
        prev = est
        if step < tol:
            converged = True
            break
    est = max(prev, 0.0) if math.isfinite(prev) else prev
    radius = tol if converged else max(tol, 2 * step)
    if math.isfinite(est) and math.isfinite(radius):
        band = EntropyInterval.around(est, radius)
    else:
        band = EntropyInterval(0.0, math.inf)
    return JensenResult(band, est, n, converged)


def mahler(f: LaurentPoly, eps: float = 1e-10, validate: bool = False,
           jensen_tol: float = 1e-6) -> MahlerResult:
    """Certified m(f); with ``validate`` also cross-check against the Jensen integral."""
    res = mahler_from_roots(f, eps)
    if not validate:
        return res
    jr = mahler_jensen(f, jensen_tol)
    if not res.value.overlaps(jr.value):
        raise MahlerInconsistency(
            f"m({f}): certified {res.value} vs Jensen {jr.value} (grid {jr.grid})"
        )
    return MahlerResult(res.value, res.split, res.root_contributions,
                        res.method_tags + ("jensen",), res.tolerance_met, res.precision, jr)
