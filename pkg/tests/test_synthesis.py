import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import LOG2
from mahlerent.calculus import quantum_entropy, synthesize_pair
from mahlerent.calculus.quantum import CrossedProductCommuting, FlowTime, InfiniteTensorPower, PadicDoubling
from mahlerent.interval import EntropyInterval

INF = math.inf
TOL = 1e-9


def achieves(iv: EntropyInterval, target: float) -> bool:
    if target == INF:
        return iv == EntropyInterval.infinite()
    return iv.is_finite and iv.lo - TOL <= target <= iv.hi + TOL and iv.width <= TOL


def check(s, t):
    r = quantum_entropy(synthesize_pair(s, t))
    assert achieves(r.cartan, s), (s, t, r.cartan)
    assert achieves(r.total, t), (s, t, r.total)


def test_padic_corner():
    q = synthesize_pair(0, LOG2)
    assert isinstance(q, FlowTime) and q.inner == PadicDoubling(3)
    r = quantum_entropy(q)
    assert r.cartan == EntropyInterval.zero() and achieves(r.total, LOG2)


def test_flow_tensor_pair():
    check(LOG2, 3 * LOG2)


def test_zero_infinity():
    q = synthesize_pair(0, "inf")
    assert q == InfiniteTensorPower(PadicDoubling(3))
    r = quantum_entropy(q)
    assert r.cartan == EntropyInterval.zero() and r.total == EntropyInterval.infinite()


def test_infinity_infinity():
    check(INF, INF)


def test_diagonal():
    r = quantum_entropy(synthesize_pair(1.0, 1.0))
    assert abs(r.cartan.lo - 1) <= 1e-12 and abs(r.total.hi - 1) <= 1e-12


def test_zero_zero():
    q = synthesize_pair(0, 0)
    assert isinstance(q, CrossedProductCommuting)
    check(0, 0)


@pytest.mark.parametrize("s,t,msg", [(1, 0.5, "s <= t"), (-1, 2, "nonnegative"), (INF, 3, "s <= t")])
def test_bad_pairs(s, t, msg):
    with pytest.raises(ValueError, match=msg):
        synthesize_pair(s, t)


values = st.one_of(st.just(0.0), st.just(INF), st.floats(0, 50), st.sampled_from([LOG2, math.pi, math.e]))


@given(values, values)
def test_round_trip(a, b):
    s, t = min(a, b), max(a, b)
    check(s, t)
