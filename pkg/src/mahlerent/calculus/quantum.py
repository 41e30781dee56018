"""Automorphisms of the hyperfinite II_1 factor built from classical data.

Every node evaluates to two enclosures: ``cartan``, the entropy of the
restriction to the invariant Cartan subalgebra, and ``total``, whose lower
end bounds the Connes-Stormer entropy H from below and whose upper end
bounds the completely positive approximation entropy hcpa >= H from above.
Measure-theoretic hypotheses such as freeness of the acting group are
declared by choosing a node type and are never checked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Union

from mpmath import iv

from ..interval import EntropyInterval
from ..mahler import MahlerResult, mahler
from ..poly import LaurentPoly, cyclotomic_split, parse
from ..roots import _iv_hypot, _ivprec
from .classical import CLASSICAL_TYPES, ClassicalSpec, _eval as _eval_classical
from .trace import HypothesisError, SpecError, Trace

__all__ = [
    "CrossedProductCommuting",
    "TwistedTorus",
    "BinaryShiftTorus",
    "PadicDoubling",
    "Tensor",
    "Power",
    "FlowTime",
    "InfiniteTensorPower",
    "QuantumSpec",
    "EntropyReport",
    "quantum_entropy",
    "LOG2",
]

LOG2 = math.log(2.0)


def _is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    k = 3
    while k * k <= p:
        if p % k == 0:
            return False
        k += 2
    return True


@dataclass(frozen=True)
class CrossedProductCommuting:
    """Extension of ``system`` to L^inf(X) x| G for a free ergodic amenable G-action
    commuting with it."""

    system: ClassicalSpec

    def __post_init__(self):
        if not isinstance(self.system, CLASSICAL_TYPES):
            raise SpecError("crossed product needs a classical system")


@dataclass(frozen=True)
class TwistedTorus:
    """Non-commutative torus automorphism from Z[t,1/t]/(f~) x n copies of Z[t,1/t]/(f).

    f must be non-constant with leading and lowest coefficients +-1 and must
    have no root of modulus 1.  Cyclotomic factors are rejected here; non-cyclotomic circle
    roots are caught at evaluation.
    """

    f: LaurentPoly
    n: Union[int, float] = 2

    def __post_init__(self):
        f = parse(self.f) if isinstance(self.f, str) else self.f
        object.__setattr__(self, "f", f)
        if not (self.n == math.inf or (isinstance(self.n, int) and self.n >= 2)):
            raise SpecError("n must be an integer >= 2 or inf")
        if f.is_zero:
            raise SpecError("f must be nonzero")
        if f.degree == 0:
            raise HypothesisError(
                f"f = {f} is constant; the torus construction needs f != 1 with "
                "leading and lowest coefficients equal to 1"
            )
        if abs(f.leading) != 1 or abs(f.lowest) != 1:
            raise HypothesisError(
                f"leading and lowest coefficients of f = {f} must be equal to 1 "
                "(up to sign); got %d and %d" % (f.leading, f.lowest)
            )
        split = cyclotomic_split(f)
        if split.cyclo_factors:
            d = split.cyclo_factors[0][0]
            raise HypothesisError(f"f = {f} has the cyclotomic factor Phi_{d}: roots of modulus 1")


@dataclass(frozen=True)
class BinaryShiftTorus:
    """The f = 2, n = 2 torus: Z/2-valued shifts twisted by a character chi.

    With ``special_character`` the character is chosen so that the pairing is
    non-degenerate on every finite window, which pins the entropy down.
    """

    special_character: bool = True


@dataclass(frozen=True)
class PadicDoubling:
    """Multiplication by 2 on the p-adic integers paired with the dyadic rationals."""

    p: int = 3

    def __post_init__(self):
        if not isinstance(self.p, int) or not _is_odd_prime(self.p):
            raise SpecError("p must be an odd prime")


@dataclass(frozen=True)
class Tensor:
    left: "QuantumSpec"
    right: "QuantumSpec"


@dataclass(frozen=True)
class Power:
    inner: "QuantumSpec"
    m: int

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 1:
            raise SpecError("power must be a positive integer")


@dataclass(frozen=True)
class FlowTime:
    """Time-t automorphism of the flow associated with ``inner``."""

    inner: "QuantumSpec"
    t: float

    def __post_init__(self):
        object.__setattr__(self, "t", float(self.t))
        if not math.isfinite(self.t):
            raise SpecError("flow time must be finite")


@dataclass(frozen=True)
class InfiniteTensorPower:
    inner: "QuantumSpec"


QuantumSpec = Union[CrossedProductCommuting, TwistedTorus, BinaryShiftTorus, PadicDoubling,
                    Tensor, Power, FlowTime, InfiniteTensorPower]
QUANTUM_TYPES = (CrossedProductCommuting, TwistedTorus, BinaryShiftTorus, PadicDoubling,
                 Tensor, Power, FlowTime, InfiniteTensorPower)


@dataclass(frozen=True)
class EntropyReport:
    cartan: EntropyInterval
    total: EntropyInterval
    trace: tuple = field(default=(), compare=False)
    warnings: tuple[str, ...] = field(default=(), compare=False)

    def to_json(self) -> dict:
        return {
            "cartan": self.cartan.to_json(),
            "total": self.total.to_json(),
            "trace": [e.to_json() for e in self.trace],
            "warnings": list(self.warnings),
        }


def _certified_circle_root(res: MahlerResult) -> Optional[str]:
    """Describe a root proven to lie on the unit circle, if the certificate allows.

    For a (anti)palindromic real polynomial the roots are closed under
    z -> 1/conj(z).  If an isolated disc straddles the circle and the image
    of the disc under that map cannot meet any other disc, the single root
    inside is its own image, hence has modulus exactly 1.
    """
    rem = res.split.remainder
    if not (rem.is_palindromic() or rem.is_antipalindromic()):
        return None
    balls = [b for b, _ in res.root_contributions]
    with _ivprec(res.precision + 32):
        for b in balls:
            if not b.isolated or not b.straddles_unit_circle():
                continue
            lo, hi = b.modulus_bounds()
            if lo <= 0:
                continue
            lo_i, hi_i = iv.mpf(lo), iv.mpf(hi)
            drift = max((1 / lo_i - lo_i).b, (hi_i - 1 / hi_i).b)
            reach = (iv.mpf(b.radius) + drift).b
            clear = True
            for o in balls:
                if o is b:
                    continue
                dx = iv.mpf(o.center.real) - iv.mpf(b.center.real)
                dy = iv.mpf(o.center.imag) - iv.mpf(b.center.imag)
                dist = _iv_hypot(dx, dy)
                if dist.a <= (iv.mpf(reach) + o.radius).b:
                    clear = False
                    break
            if clear:
                return f"root near {complex(b.center):.6g} lies on the unit circle"
    return None


def _mahler_checked(f: LaurentPoly, eps: float, path: str, trace: Trace) -> EntropyInterval:
    res = mahler(f, eps)
    if not res.tolerance_met:
        trace.warn(path, f"Mahler enclosure for {f} wider than {eps}")
    proof = _certified_circle_root(res)
    if proof is not None:
        raise HypothesisError(f"f = {f} has a root of modulus 1: {proof}")
    if any(b.straddles_unit_circle() for b, _ in res.root_contributions):
        trace.warn(path, f"hypothesis unverifiable: a root disc of {f} straddles the unit circle")
    return res.value


def _eval(q, path: str, eps: float, trace: Trace):
    """Returns (cartan, total) and appends one trace entry per node."""
    if isinstance(q, CrossedProductCommuting):
        ks, hcpa, erg = _eval_classical(q.system, path + ".system", eps, trace)
        total = EntropyInterval(ks.lo, max(ks.hi, hcpa.hi))
        notes = () if erg else ("system not known ergodic: upper end from hcpa",)
        trace.add(path, "crossed_product", "crossed-product-equality",
                  "H(alpha_T) = h(T) and hcpa(alpha_T) = hcpa(T)", notes,
                  cartan=ks, total=total)
        return ks, total

    if isinstance(q, TwistedTorus):
        m = _mahler_checked(q.f, eps, path, trace)
        cartan = m
        total = EntropyInterval(m.scale(q.n).lo, m.scale(q.n + 1).hi)
        trace.add(path, "twisted_torus", "torus-bounds",
                  "H(alpha|A) = m(f) and n m(f) <= H(alpha) <= (n+1) m(f)",
                  cartan=cartan, total=total)
        return cartan, total

    if isinstance(q, BinaryShiftTorus):
        cartan = EntropyInterval.point(LOG2)
        if q.special_character:
            total = EntropyInterval.point(2 * LOG2)
            rule, cite = "shift-torus-special", "H(alpha|A) = log 2 and H(alpha) = 2 log 2"
        else:
            total = EntropyInterval(2 * LOG2, 3 * LOG2)
            rule, cite = "shift-torus-bounds", "H(alpha|A) = log 2 and 2 log 2 <= H(alpha) <= 3 log 2"
        trace.add(path, "binary_shift_torus", rule, cite, cartan=cartan, total=total)
        return cartan, total

    if isinstance(q, PadicDoubling):
        cartan = EntropyInterval.zero()
        total = EntropyInterval.point(LOG2)
        trace.add(path, "padic", "padic-doubling",
                  "H(alpha|A) = 0 and H(alpha) = hcpa(alpha) = log 2",
                  cartan=cartan, total=total)
        return cartan, total

    if isinstance(q, Tensor):
        ca, ta = _eval(q.left, path + ".left", eps, trace)
        cb, tb = _eval(q.right, path + ".right", eps, trace)
        cartan = ca + cb
        total = ta + tb
        trace.add(path, "tensor", "tensor-additivity",
                  "Cartan entropies add; H is superadditive and hcpa subadditive",
                  ("Cartan additivity is applied without an ergodicity hypothesis",),
                  cartan=cartan, total=total)
        return cartan, total

    if isinstance(q, Power):
        c, t = _eval(q.inner, path + ".inner", eps, trace)
        cartan, total = c.scale(q.m), t.scale(q.m)
        trace.add(path, "power", "power-scaling", "H(alpha^m) = m H(alpha)",
                  cartan=cartan, total=total)
        return cartan, total

    if isinstance(q, FlowTime):
        c, t = _eval(q.inner, path + ".inner", eps, trace)
        k = abs(q.t)
        if k == 0:
            trace.warn(path, "flow time 0 is the identity automorphism; entropy set to 0")
        cartan, total = c.scale(k), t.scale(k)
        trace.add(path, "flow", "flow-scaling",
                  "H(alpha_t) = |t| H(alpha_1) and hcpa(alpha_t) = |t| hcpa(alpha_1)",
                  cartan=cartan, total=total)
        return cartan, total

    if isinstance(q, InfiniteTensorPower):
        c, t = _eval(q.inner, path + ".inner", eps, trace)
        cartan, total = _infinite(c), _infinite(t)
        trace.add(path, "infinite_tensor_power", "infinite-tensor-power",
                  "an infinite tensor power has entropy inf if the factor's entropy is positive",
                  cartan=cartan, total=total)
        return cartan, total

    raise SpecError(f"not a quantum system: {q!r}")


def _infinite(x: EntropyInterval) -> EntropyInterval:
    if x.lo > 0:
        return EntropyInterval.infinite()
    if x.hi == 0:
        return EntropyInterval.zero()
    return EntropyInterval(0.0, math.inf)


def quantum_entropy(q: QuantumSpec, eps: float = 1e-10) -> EntropyReport:
    """Evaluate ``q`` bottom-up; the trace lists every node once, in post-order."""
    if not eps > 0:
        raise ValueError("eps must be positive")
    trace = Trace()
    cartan, total = _eval(q, "$", eps, trace)
    return EntropyReport(cartan, total, tuple(trace.entries), tuple(trace.warnings))
