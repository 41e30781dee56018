import importlib
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import GOLDEN_LOG, LEHMER_MEASURE, LEHMER_TEXT, LOG2, polys
from mahlerent.interval import EntropyInterval
from mahlerent.mahler import (
    CEILING_ENV,
    MahlerInconsistency,
    mahler,
    mahler_from_roots,
    mahler_jensen,
)
from mahlerent.poly import LaurentPoly, cyclotomic, parse, reciprocal


def _root_sum_oracle(f: LaurentPoly) -> float:
    """m(f) straight from the definition using high-precision mpmath roots."""
    import mpmath

    with mpmath.workprec(200):
        roots = mpmath.polyroots(list(reversed(f.coeffs)), maxsteps=300, extraprec=400)
        return float(mpmath.log(abs(f.leading)) + sum(mpmath.log(max(1, abs(z))) for z in roots))


class TestGolden:
    def test_t_minus_2(self):
        r = mahler_from_roots(parse("t-2"))
        assert r.value.contains(LOG2) and r.value.width <= 1e-12 and r.certified

    def test_constant(self):
        r = mahler(parse("2"))
        assert r.value.contains(LOG2) and r.value.width <= 1e-15

    def test_cyclotomic_times_unit_is_exact_zero(self):
        r = mahler_from_roots(-parse("t^3") * cyclotomic(12))
        assert r.value == EntropyInterval(0.0, 0.0)
        assert r.split.cyclo_factors == ((12, 1),)

    def test_golden_ratio_closed_form(self):
        r = mahler_from_roots(parse("t^2-t-1"))
        assert r.value.contains(GOLDEN_LOG) and r.value.width <= 1e-12

    def test_lehmer(self):
        r = mahler_from_roots(parse(LEHMER_TEXT))
        assert r.value.contains(LEHMER_MEASURE) and r.value.width <= 1e-12

    def test_repeated_root(self):
        r = mahler(parse("t^2-4*t+4"), eps=1e-10)
        assert r.value.contains(2 * LOG2) and r.tolerance_met

    @pytest.mark.parametrize("text", ["t^3-t-1", "3*t^4-2*t+5", "t^4-t^3-t^2-t+1", "7*t^6+t-9"])
    def test_against_root_sum_oracle(self, text):
        f = parse(text)
        assert abs(mahler(f).value.mid - _root_sum_oracle(f)) < 1e-12


class TestJensen:
    def test_t_minus_2(self):
        j = mahler_jensen(parse("t-2"), tol=1e-8)
        assert abs(j.estimate - LOG2) <= 1e-8 and j.converged and not j.certified

    def test_constant(self):
        j = mahler_jensen(parse("3"), tol=1e-10)
        assert abs(j.estimate - math.log(3)) < 1e-14

    def test_lehmer_agrees_with_roots(self):
        j = mahler_jensen(parse(LEHMER_TEXT), tol=1e-6)
        assert abs(j.estimate - LEHMER_MEASURE) < 1e-5

    def test_unconverged_band_widens(self):
        j = mahler_jensen(parse(LEHMER_TEXT), tol=1e-12, max_grid=1024)
        assert not j.converged and j.grid == 1024
        assert j.value.contains(LEHMER_MEASURE) and j.value.width > 2e-12

    def test_validate_flag_tags_both_methods(self):
        r = mahler(parse("t^3-t-1"), validate=True)
        assert r.method_tags == ("roots", "jensen") and r.jensen is not None

    def test_inconsistency_raises(self, monkeypatch):
        M = importlib.import_module("mahlerent.mahler")

        fake = M.JensenResult(EntropyInterval(5.0, 5.1), 5.05, 64, True)
        monkeypatch.setattr(M, "mahler_jensen", lambda f, tol: fake)
        with pytest.raises(MahlerInconsistency):
            mahler(parse("t-2"), validate=True)


class TestProperties:
    @given(polys(max_degree=6, height=5), polys(max_degree=6, height=5))
    @settings(max_examples=60)
    def test_multiplicativity(self, f, g):
        assert mahler(f * g).value.overlaps(mahler(f).value + mahler(g).value)

    @given(polys(max_degree=8, height=6))
    @settings(max_examples=60)
    def test_reciprocal_invariance(self, f):
        assert mahler(reciprocal(f)).value.overlaps(mahler(f).value)

    @given(polys(max_degree=8, height=6, min_degree=1), st.integers(-5, 5), st.sampled_from([1, -1]))
    @settings(max_examples=40)
    def test_monomial_and_sign_strip_is_bit_identical(self, f, k, sign):
        g = f * LaurentPoly.monomial(k, sign)
        assert mahler(g).value == mahler(f).value

    @given(polys(max_degree=8, height=6))
    @settings(max_examples=60)
    def test_nonnegative_and_ball_count(self, f):
        r = mahler(f)
        assert r.value.lo >= 0
        assert len(r.root_contributions) == r.split.remainder.degree

    def test_kronecker_products_are_zero(self):
        rng = random.Random(5)
        for _ in range(100):
            f = LaurentPoly.monomial(rng.randint(-3, 3), rng.choice([1, -1]))
            for _ in range(rng.randint(1, 4)):
                f = f * cyclotomic(rng.randint(1, 40))
            assert mahler(f).value == EntropyInterval.zero()


class TestLadder:
    def test_ceiling_reports_best_enclosure(self, monkeypatch):
        # a fourfold root cannot be resolved to 1e-10 at 64 bits
        f = parse("t - 2") ** 4
        monkeypatch.setenv(CEILING_ENV, "64")
        r = mahler_from_roots(f, eps=1e-10)
        assert not r.tolerance_met and r.precision == 64
        assert r.value.contains(4 * LOG2) and r.value.width < 0.01

    def test_ladder_climbs_for_clustered_roots(self):
        f = (parse("1000*t - 999") ** 3) * parse("t+5")
        r = mahler_from_roots(f, eps=1e-10)
        assert r.tolerance_met and r.value.contains(_root_sum_oracle(f))

    def test_zero_polynomial_rejected(self):
        with pytest.raises(ValueError):
            mahler(LaurentPoly())

    def test_json_report(self):
        d = mahler(parse("2*t^3 - 4*t^2 + 2*t - 4")).to_json()
        assert d["nats"] and d["certified"] and d["content"] == 2
        assert d["cyclotomic_factors"] == [[4, 1]] and d["remainder"] == "t - 2"
