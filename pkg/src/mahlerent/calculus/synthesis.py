"""Build a system with prescribed Cartan entropy ``s`` and total entropy ``t``.

Ingredients: the p-adic doubling system (Cartan entropy 0, total log 2), the
crossed product of a Bernoulli shift with entropy log 2 (both entropies
log 2), flow rescaling by |time|, tensor products, and infinite tensor powers.
"""

from __future__ import annotations

import math

from ..interval import parse_ext
from .classical import Bernoulli, IrrationalRotation
from .quantum import (
    LOG2,
    CrossedProductCommuting,
    FlowTime,
    InfiniteTensorPower,
    PadicDoubling,
    QuantumSpec,
    Tensor,
)

__all__ = ["synthesize_pair"]


def _bernoulli_flow(time: float) -> QuantumSpec:
    return FlowTime(CrossedProductCommuting(Bernoulli((0.5, 0.5))), time)


def synthesize_pair(s, t) -> QuantumSpec:
    """Return a spec whose evaluation gives Cartan entropy ``s`` and total ``t``.

    ``s`` and ``t`` are nats; either may be ``inf`` (or the string ``"inf"``),
    and ``0 <= s <= t`` is required.
    """
    s, t = parse_ext(s), parse_ext(t)
    if math.isnan(s) or math.isnan(t) or s < 0 or t < 0:
        raise ValueError("entropies must be nonnegative")
    if s > t:
        raise ValueError("s <= t required")

    if s == math.inf:
        return InfiniteTensorPower(CrossedProductCommuting(Bernoulli((0.5, 0.5))))
    if t == math.inf:
        gamma = InfiniteTensorPower(PadicDoubling(3))
        return gamma if s == 0 else Tensor(_bernoulli_flow(s / LOG2), gamma)
    if s == t:
        if s == 0:
            return CrossedProductCommuting(IrrationalRotation())
        return _bernoulli_flow(s / LOG2)
    gap = FlowTime(PadicDoubling(3), (t - s) / LOG2)
    return gap if s == 0 else Tensor(gap, _bernoulli_flow(s / LOG2))
