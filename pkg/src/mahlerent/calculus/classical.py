"""Classical measure-preserving systems and their entropies.

Each node evaluates to a Kolmogorov-Sinai entropy enclosure ``ks`` and an
enclosure of Voiculescu's completely positive approximation entropy
``hcpa``.  An ergodicity flag rides along, with None meaning unknown.
Ergodicity is declared or structural, never tested on a measure space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

import numpy as np
from mpmath import iv
from scipy.sparse.csgraph import connected_components

from ..interval import EntropyInterval
from ..mahler import mahler
from ..poly import LaurentPoly, parse
from ..roots import _ivprec
from .trace import SpecError, Trace

__all__ = [
    "Bernoulli",
    "Markov",
    "IrrationalRotation",
    "AlgebraicDual",
    "Product",
    "Power",
    "FlowTime",
    "WeightedUnion",
    "ClassicalSpec",
    "ClassicalEntropyReport",
    "classical_entropy",
]

_PROB_TOL = 1e-12


def _as_poly(f) -> LaurentPoly:
    return parse(f) if isinstance(f, str) else f


@dataclass(frozen=True)
class Bernoulli:
    p: tuple[float, ...]

    def __post_init__(self):
        p = tuple(float(x) for x in self.p)
        object.__setattr__(self, "p", p)
        if not p or any(x < 0 or math.isnan(x) for x in p):
            raise SpecError("Bernoulli weights must be nonnegative")
        if abs(math.fsum(p) - 1.0) > _PROB_TOL:
            raise SpecError(f"Bernoulli weights sum to {math.fsum(p)!r}, not 1")


@dataclass(frozen=True)
class Markov:
    P: tuple[tuple[float, ...], ...]
    pi: tuple[float, ...]

    def __post_init__(self):
        P = tuple(tuple(float(x) for x in row) for row in self.P)
        pi = tuple(float(x) for x in self.pi)
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "pi", pi)
        k = len(pi)
        if k == 0 or len(P) != k or any(len(row) != k for row in P):
            raise SpecError("Markov matrix must be square and match the stationary vector")
        if any(x < 0 or math.isnan(x) for row in P for x in row) or any(x < 0 for x in pi):
            raise SpecError("Markov entries must be nonnegative")
        for i, row in enumerate(P):
            if abs(math.fsum(row) - 1.0) > _PROB_TOL:
                raise SpecError(f"row {i} of the Markov matrix is not stochastic")
        if abs(math.fsum(pi) - 1.0) > _PROB_TOL:
            raise SpecError("stationary vector does not sum to 1")
        piP = np.array(pi) @ np.array(P)
        if np.max(np.abs(piP - np.array(pi))) > 1e-10:
            raise SpecError("pi is not stationary for P")


@dataclass(frozen=True)
class IrrationalRotation:
    pass


@dataclass(frozen=True)
class AlgebraicDual:
    """Dual of multiplication by t on n copies of Z[t, 1/t]/(f); ``n`` may be inf."""

    f: LaurentPoly
    n: Union[int, float] = 1

    def __post_init__(self):
        object.__setattr__(self, "f", _as_poly(self.f))
        if self.f.is_zero:
            raise SpecError("f must be nonzero")
        if not (self.n == math.inf or (isinstance(self.n, int) and self.n >= 1)):
            raise SpecError("n must be a positive integer or inf")


@dataclass(frozen=True)
class Product:
    left: "ClassicalSpec"
    right: "ClassicalSpec"
    ergodic: Optional[bool] = None  # declared override; not inferred


@dataclass(frozen=True)
class Power:
    inner: "ClassicalSpec"
    m: int

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 1:
            raise SpecError("power must be a positive integer")


@dataclass(frozen=True)
class FlowTime:
    """Time-t map of the flow built over ``inner``."""

    inner: "ClassicalSpec"
    t: float

    def __post_init__(self):
        object.__setattr__(self, "t", float(self.t))
        if not math.isfinite(self.t):
            raise SpecError("flow time must be finite")


@dataclass(frozen=True)
class WeightedUnion:
    """Disjoint union carrying ``weight`` of the mass on ``left``."""

    left: "ClassicalSpec"
    right: "ClassicalSpec"
    weight: float

    def __post_init__(self):
        object.__setattr__(self, "weight", float(self.weight))
        if not 0 < self.weight < 1:
            raise SpecError("union weight must lie strictly between 0 and 1")


ClassicalSpec = Union[
    Bernoulli, Markov, IrrationalRotation, AlgebraicDual, Product, Power, FlowTime, WeightedUnion
]
CLASSICAL_TYPES = (Bernoulli, Markov, IrrationalRotation, AlgebraicDual, Product, Power,
                   FlowTime, WeightedUnion)


@dataclass(frozen=True)
class ClassicalEntropyReport:
    ks: EntropyInterval
    hcpa: EntropyInterval
    ergodic: Optional[bool]
    trace: tuple = field(default=(), compare=False)
    warnings: tuple[str, ...] = field(default=(), compare=False)

    def to_json(self) -> dict:
        return {
            "ks": self.ks.to_json(),
            "hcpa": self.hcpa.to_json(),
            "ergodic": self.ergodic,
            "trace": [e.to_json() for e in self.trace],
            "warnings": list(self.warnings),
        }


def _shannon(rows) -> EntropyInterval:
    """Rigorous ``-sum w * p log p`` over (weight, probabilities) rows."""
    with _ivprec(96):
        total = iv.mpf(0)
        for w, probs in rows:
            if w == 0:
                continue
            s = iv.mpf(0)
            for x in probs:
                if x > 0:
                    s = s - iv.mpf(x) * iv.log(iv.mpf(x))
            total = total + iv.mpf(w) * s
    lo = total.a if total.a > 0 else iv.mpf(0)
    return EntropyInterval.from_mpf(lo, total.b)


def _charged_classes(P, pi) -> list[list[int]]:
    """Communicating classes that carry stationary mass (the ergodic pieces)."""
    adj = (np.array(P) > 0).astype(int)
    _, labels = connected_components(adj, directed=True, connection="strong")
    classes: dict[int, list[int]] = {}
    for i, lab in enumerate(labels):
        classes.setdefault(int(lab), []).append(i)
    return [c for _, c in sorted(classes.items()) if math.fsum(pi[i] for i in c) > 0]


def _eval(s, path: str, eps: float, trace: Trace):
    """Returns (ks, hcpa, ergodic) and appends one trace entry per node."""
    if isinstance(s, Bernoulli):
        ks = _shannon([(1.0, s.p)])
        trace.add(path, "bernoulli", "bernoulli-entropy", "h = -sum p_i log p_i", ks=ks, hcpa=ks)
        return ks, ks, True

    if isinstance(s, Markov):
        ks = _shannon(list(zip(s.pi, s.P)))
        pieces = _charged_classes(s.P, s.pi)
        erg = len(pieces) == 1
        if erg:
            hcpa = ks
            notes = ()
        else:
            # hcpa of a disjoint union is the largest hcpa of its pieces
            hcpa = None
            for c in pieces:
                mass = math.fsum(s.pi[i] for i in c)
                h = _shannon([(s.pi[i] / mass, s.P[i]) for i in c])
                hcpa = h if hcpa is None else hcpa.max(h)
            notes = (f"{len(pieces)} ergodic classes",)
        trace.add(path, "markov", "markov-entropy",
                  "h = -sum_i pi_i sum_j P_ij log P_ij", notes, ks=ks, hcpa=hcpa)
        return ks, hcpa, erg

    if isinstance(s, IrrationalRotation):
        z = EntropyInterval.zero()
        trace.add(path, "rotation", "zero-entropy-rotation",
                  "irrational rotations have entropy 0", ks=z, hcpa=z)
        return z, z, True

    if isinstance(s, AlgebraicDual):
        res = mahler(s.f, eps)
        if not res.tolerance_met:
            trace.warn(path, f"Mahler enclosure for {s.f} wider than {eps}")
        ks = res.value.scale(s.n)
        # the dual automorphism is ergodic exactly when no root of f is a root of unity
        erg = True if not res.split.cyclo_factors else None
        trace.add(path, "algebraic_dual", "yuzvinskii",
                  "h = n * m(f) for the dual of multiplication by t on n copies of Z[t,1/t]/(f)",
                  ks=ks, hcpa=ks)
        return ks, ks, erg

    if isinstance(s, Product):
        ka, ha, ea = _eval(s.left, path + ".left", eps, trace)
        kb, hb, eb = _eval(s.right, path + ".right", eps, trace)
        ks = ka + kb
        if s.ergodic and ea and eb:
            hcpa, erg = ks, True
            notes = ("ergodicity of the product declared",)
        else:
            # h <= hcpa always, and hcpa is subadditive
            hi = (ha + hb).hi
            hcpa = EntropyInterval(min(ks.lo, hi), hi)
            erg = None if s.ergodic is None else s.ergodic and bool(ea and eb)
            notes = ("ergodicity unknown: conservative hcpa",)
        trace.add(path, "product", "ks-additivity", "h(T1 x T2) = h(T1) + h(T2)", notes,
                  ks=ks, hcpa=hcpa)
        return ks, hcpa, erg

    if isinstance(s, Power):
        k, h, e = _eval(s.inner, path + ".inner", eps, trace)
        ks, hcpa = k.scale(s.m), h.scale(s.m)
        trace.add(path, "power", "power-scaling", "h(T^m) = m h(T)", ks=ks, hcpa=hcpa)
        return ks, hcpa, e

    if isinstance(s, FlowTime):
        k, h, e = _eval(s.inner, path + ".inner", eps, trace)
        c = abs(s.t)
        ks, hcpa = k.scale(c), h.scale(c)
        if c == 0:
            trace.warn(path, "flow time 0 is the identity map; entropy set to 0")
            e = None
        trace.add(path, "flow", "flow-scaling", "h(F_t) = |t| h(F_1)", ks=ks, hcpa=hcpa)
        return ks, hcpa, e

    if isinstance(s, WeightedUnion):
        ka, ha, _ = _eval(s.left, path + ".left", eps, trace)
        kb, hb, _ = _eval(s.right, path + ".right", eps, trace)
        lam = Fraction(s.weight)
        ks = ka.scale(lam) + kb.scale(1 - lam)
        hcpa = ha.max(hb)
        trace.add(path, "weighted_union", "non-ergodic-union",
                  "h = lam h(T1) + (1 - lam) h(T2), hcpa = max(hcpa(T1), hcpa(T2))",
                  ks=ks, hcpa=hcpa)
        return ks, hcpa, False

    raise SpecError(f"not a classical system: {s!r}")


def classical_entropy(s: ClassicalSpec, eps: float = 1e-10,
                      _trace: Optional[Trace] = None, _path: str = "$") -> ClassicalEntropyReport:
    """Evaluate ``s`` bottom-up into KS and hcpa enclosures with a derivation trace."""
    if not eps > 0:
        raise ValueError("eps must be positive")
    trace = Trace() if _trace is None else _trace
    ks, hcpa, erg = _eval(s, _path, eps, trace)
    return ClassicalEntropyReport(ks, hcpa, erg, tuple(trace.entries), tuple(trace.warnings))
