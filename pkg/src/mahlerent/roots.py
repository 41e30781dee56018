"""Certified polynomial roots.

Approximations come from numpy's companion-matrix eigenvalues (or a perturbed
circle when the coefficients do not fit a double), refined by Aberth-Ehrlich
iteration and Newton polishing in mpmath.  Radii follow Smith's inclusion
theorem: with Weierstrass corrections

    W_i = f(z_i) / (a_n * prod_{j != i} (z_i - z_j)),

every root lies in the union of the discs D(z_i, n |W_i|), and a connected
component made of k discs holds exactly k roots.  ``|W_i|`` is bounded above
with interval arithmetic, so the radii are rigorous.  Overlapping discs are
reported as one cluster.
"""

from __future__ import annotations

import math
from contextlib import contextmanager
from dataclasses import dataclass

import mpmath
import numpy as np
from mpmath import iv, mp

from .poly import LaurentPoly

__all__ = [
    "ComplexBall",
    "PrecisionExhausted",
    "roots_with_radii",
    "approximate_roots",
    "certify",
    "float_measure_lower_bounds",
]


class PrecisionExhausted(ArithmeticError):
    """Certification failed at the requested precision; retry with more bits."""


@dataclass(frozen=True)
class ComplexBall:
    center: mpmath.mpc
    radius: mpmath.mpf
    cluster: int = 0
    cluster_size: int = 1
    resolved: bool = True

    @property
    def isolated(self) -> bool:
        return self.cluster_size == 1

    def modulus_bounds(self) -> tuple[mpmath.mpf, mpmath.mpf]:
        """Rigorous ``(inf |z|, sup |z|)`` over the disc (inf clipped at 0)."""
        with _ivprec(mp.prec + 16):
            a = _iv_abs(self.center)
            lo = (a - self.radius).a
            hi = (a + self.radius).b
        lo = mpmath.mpf(lo)
        return (lo if lo > 0 else mpmath.mpf(0)), mpmath.mpf(hi)

    def straddles_unit_circle(self) -> bool:
        lo, hi = self.modulus_bounds()
        return lo <= 1 <= hi


@contextmanager
def _ivprec(bits: int):
    saved = iv.prec
    iv.prec = bits
    try:
        yield
    finally:
        iv.prec = saved


def _iv_hypot(x, y):
    # x**2, not x*x: the product of an interval with itself would dip below zero
    return iv.sqrt(x**2 + y**2)


def _iv_abs(z: mpmath.mpc):
    return _iv_hypot(iv.mpf(z.real), iv.mpf(z.imag))


# -------------------------------------------------------------- approximation


def _seed(coeffs: tuple[int, ...]) -> list[complex]:
    n = len(coeffs) - 1
    if max(abs(c) for c in coeffs) < 2.0**500:
        with np.errstate(all="ignore"):
            r = np.roots(np.array(coeffs[::-1], dtype=float))
        if len(r) == n and np.all(np.isfinite(r)):
            return [complex(x) for x in r]
    # perturbed circle of radius ~ geometric mean of root moduli
    rad = (abs(coeffs[0]) / abs(coeffs[-1])) ** (1.0 / n)
    return [rad * complex(math.cos(2 * math.pi * k / n + 0.4), math.sin(2 * math.pi * k / n + 0.4))
            for k in range(n)]


def _horner2(coeffs, z):
    """(f(z), f'(z)) with ``coeffs`` ascending."""
    p = mpmath.mpc(coeffs[-1])
    dp = mpmath.mpc(0)
    for c in reversed(coeffs[:-1]):
        dp = dp * z + p
        p = p * z + c
    return p, dp


def _separate(z: list) -> list:
    # nudge exactly coincident approximations apart; Aberth needs distinct points
    out = []
    seen = set()
    for k, x in enumerate(z):
        key = (x.real, x.imag)
        while key in seen:
            x = x * (1 + mpmath.mpf(2) ** (-20) * mpmath.expjpi(mpmath.mpf(k + 1) / 7))
            key = (x.real, x.imag)
        seen.add(key)
        out.append(x)
    return out


def approximate_roots(f: LaurentPoly, precision: int, start=None) -> list[mpmath.mpc]:
    """Aberth-Ehrlich approximations of the nonzero roots of ``f`` at ``precision`` bits."""
    coeffs = f.coeffs
    n = len(coeffs) - 1
    if n < 1:
        raise ValueError("polynomial has no roots")
    with mp.workprec(precision):
        if start is None:
            start = _seed(coeffs)
        z = _separate([mpmath.mpc(x) for x in start])
        if n == 1:
            return [mpmath.mpc(mpmath.mpf(-coeffs[0]) / coeffs[1])]
        tol = mpmath.mpf(2) ** (-precision + 12)
        best = None
        stall = 0
        for _ in range(3 * precision + 100):
            worst = mpmath.mpf(0)
            for i in range(n):
                zi = z[i]
                p, dp = _horner2(coeffs, zi)
                if p == 0:
                    continue
                s = mpmath.mpc(0)
                for j in range(n):
                    if j != i:
                        s += 1 / (zi - z[j])
                if dp == 0:
                    w = p / (coeffs[-1] * mpmath.fprod(zi - z[j] for j in range(n) if j != i))
                else:
                    ratio = p / dp
                    den = 1 - ratio * s
                    w = ratio if den == 0 else ratio / den
                z[i] = zi - w
                worst = max(worst, abs(w) / max(1, abs(z[i])))
            if worst <= tol:
                break
            # multiple roots converge linearly and then stall at sqrt-precision
            if best is not None and worst >= best / 2:
                stall += 1
                if stall >= 8:
                    break
            else:
                stall = 0
            best = worst if best is None else min(best, worst)
        # Newton polish, keep only steps that reduce |f|
        for i in range(n):
            for _ in range(2):
                p, dp = _horner2(coeffs, z[i])
                if dp == 0 or p == 0:
                    break
                cand = z[i] - p / dp
                if abs(_horner2(coeffs, cand)[0]) < abs(p):
                    z[i] = cand
                else:
                    break
        return [+x for x in z]


# --------------------------------------------------------------- certification


def _iv_eval(coeffs, re, im):
    pr = iv.mpf(coeffs[-1])
    pi = iv.mpf(0)
    for c in reversed(coeffs[:-1]):
        pr, pi = pr * re - pi * im + c, pr * im + pi * re
    return pr, pi


def _smith_radii(coeffs: tuple[int, ...], z: list, precision: int) -> list[mpmath.mpf]:
    n = len(coeffs) - 1
    lead = abs(coeffs[-1])
    radii = []
    with _ivprec(precision + 32):
        parts = [(iv.mpf(x.real), iv.mpf(x.imag)) for x in z]
        for i, (re, im) in enumerate(parts):
            pr, pi = _iv_eval(coeffs, re, im)
            num = _iv_hypot(pr, pi)
            den = iv.mpf(lead)
            for j, (rj, ij) in enumerate(parts):
                if j != i:
                    dx = re - rj
                    dy = im - ij
                    den = den * _iv_hypot(dx, dy)
            if den.a <= 0:
                raise PrecisionExhausted("coincident root approximations")
            r = (num * n / den).b
            radii.append(mpmath.mpf(r))
    return radii


def _components(z: list, radii: list, precision: int) -> list[int]:
    n = len(z)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    with _ivprec(precision + 32):
        parts = [(iv.mpf(x.real), iv.mpf(x.imag)) for x in z]
        for i in range(n):
            for j in range(i + 1, n):
                dx = parts[i][0] - parts[j][0]
                dy = parts[i][1] - parts[j][1]
                dist = _iv_hypot(dx, dy)
                # merge unless the discs are certainly disjoint
                if dist.a <= iv.mpf(radii[i]).b + radii[j]:
                    parent[find(i)] = find(j)
    return [find(i) for i in range(n)]


def _sort_key(b: ComplexBall):
    return (round(float(b.center.real), 12), round(float(b.center.imag), 12))


def certify(f: LaurentPoly, approx: list, precision: int) -> list[ComplexBall]:
    """Attach rigorous radii to root approximations of ``f``."""
    coeffs = f.coeffs
    with mp.workprec(precision):
        z = [mpmath.mpc(x) for x in approx]
        if not all(mpmath.isfinite(x.real) and mpmath.isfinite(x.imag) for x in z):
            raise PrecisionExhausted("non-finite root approximation")
        radii = _smith_radii(coeffs, z, precision)
        comp = _components(z, radii, precision)
        sizes = {c: comp.count(c) for c in set(comp)}
        balls = [
            ComplexBall(
                center=z[i],
                radius=radii[i],
                cluster=comp[i],
                cluster_size=sizes[comp[i]],
                resolved=bool(radii[i] < abs(z[i])),
            )
            for i in range(len(z))
        ]
    balls.sort(key=_sort_key)
    # renumber clusters in output order so the result is reproducible
    ids: dict[int, int] = {}
    out = []
    for b in balls:
        cid = ids.setdefault(b.cluster, len(ids))
        out.append(ComplexBall(b.center, b.radius, cid, b.cluster_size, b.resolved))
    return out


def roots_with_radii(f: LaurentPoly, precision: int = 64, start=None) -> list[ComplexBall]:
    """All ``deg f`` nonzero roots of ``f`` as certified discs, sorted by (re, im)."""
    if f.is_zero or f.degree < 1:
        raise ValueError("roots_with_radii needs a polynomial of degree >= 1")
    approx = approximate_roots(f, precision, start)
    return certify(f, approx, precision)


# ------------------------------------------------------- vectorized float screen

_U = 2.0**-53


def _gamma(k) -> np.ndarray:
    return k * _U / (1 - k * _U)


def float_measure_lower_bounds(rows: np.ndarray) -> np.ndarray:
    """Proof-backed lower bounds on the Mahler measure of many polynomials at once.

    ``rows`` holds ascending integer coefficients (exact in float64) of
    polynomials sharing one degree ``n >= 1`` with nonzero end coefficients.
    Each bound uses Smith discs computed in double precision with a priori
    rounding-error bounds.  Polynomials whose discs overlap fall back to
    ``log|a_n|``, which is always valid.
    """
    rows = np.asarray(rows, dtype=float)
    m, width = rows.shape
    n = width - 1
    lead = np.abs(rows[:, -1])
    base = np.log(lead) * (1 - 1e-12)
    if n < 1:
        return base
    comp = np.zeros((m, n, n))
    comp[:, 1:, :-1] = np.eye(n - 1)
    comp[:, :, -1] = -rows[:, :-1] / rows[:, -1:]
    with np.errstate(all="ignore"):
        z = np.linalg.eigvals(comp)
        desc = rows[:, ::-1]
        p = np.zeros_like(z)
        bound = np.zeros(z.shape)
        az = np.abs(z)
        for k in range(width):
            p = p * z + desc[:, k : k + 1]
            bound = bound * az + np.abs(desc[:, k : k + 1])
        err = 2 * _gamma(8 * n + 8) * bound
        diff = np.abs(z[:, :, None] - z[:, None, :])
        idx = np.arange(n)
        diff[:, idx, idx] = 1.0
        den = lead[:, None] * np.prod(diff, axis=2) * (1 - _gamma(4 * n + 4))
        radii = n * (np.abs(p) + err) * (1 + _gamma(4 * n + 4)) / den * (1 + 1e-9)
        reach = radii[:, :, None] + radii[:, None, :]
        overlap = (diff * (1 - 4 * _U) <= reach)
        overlap[:, idx, idx] = False
        ok = np.isfinite(radii).all(axis=1) & ~overlap.any(axis=(1, 2))
        inner = np.maximum(az * (1 - 4 * _U) - radii, 1.0)
        contrib = np.log(inner).sum(axis=1) * (1 - 1e-12) - 1e-12
    out = np.where(ok, base + np.maximum(contrib, 0.0), base)
    return np.maximum(out, 0.0)
