import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import LEHMER_COEFFS, LEHMER_TEXT, polys
from mahlerent.poly import (
    LaurentPoly,
    PolyParseError,
    cyclotomic,
    cyclotomic_indices,
    cyclotomic_split,
    exact_divide,
    format_poly,
    multiply,
    parse,
    reciprocal,
    totient,
)


def P(text):
    return parse(text)


class TestParse:
    def test_linear(self):
        f = P("t - 2")
        assert f.coeffs == (-2, 1) and f.offset == 0

    def test_lehmer(self):
        f = P(LEHMER_TEXT)
        assert f.degree == 10 and f.coeffs == LEHMER_COEFFS

    def test_negative_exponent_normalizes_offset(self):
        f = P("t^-2 + t^2")
        assert f.coeffs == (1, 0, 0, 0, 1) and f.offset == -2

    @pytest.mark.parametrize("text,coeffs,offset", [
        ("3", (3,), 0),
        ("-t", (-1,), 1),
        ("2*t^3 - t", (-1, 0, 2), 1),
        ("t^2 + t^2", (2,), 2),
        ("1 - 1", (), 0),
        ("  t ^ 2  -  1 ", (-1, 0, 1), 0),
        ("t^-2*(t^4 + 1)", (1, 0, 0, 0, 1), -2),
    ])
    def test_various(self, text, coeffs, offset):
        f = P(text)
        assert (f.coeffs, f.offset) == (coeffs, offset)

    @pytest.mark.parametrize("text", ["", "t^", "x + 1", "t^2 +", "t t", "t^1.5", "(t+1"])
    def test_rejects(self, text):
        with pytest.raises(PolyParseError) as info:
            P(text)
        assert info.value.pos >= 0

    @given(polys(max_degree=8, height=20, allow_offset=True))
    def test_print_parse_roundtrip(self, f):
        assert parse(format_poly(f)) == f


class TestArithmetic:
    def test_square(self):
        assert multiply(P("t-2"), P("t-2")) == P("t^2-4*t+4")

    def test_identity(self):
        f = P(LEHMER_TEXT)
        assert multiply(f, P("1")) == f

    def test_offsets_cancel(self):
        assert multiply(P("t^-1"), P("t")) == P("1")

    def test_reciprocal_linear(self):
        r = reciprocal(P("t-2"))
        assert r.coeffs == (1, -2) and r.offset == -1
        # shifted to offset 0 this is 1 - 2t
        assert LaurentPoly(r.coeffs) == P("1 - 2*t")

    def test_reciprocal_of_palindrome_is_monomial_shift(self):
        f = P(LEHMER_TEXT)
        r = reciprocal(f)
        assert r.coeffs == f.coeffs

    def test_divide(self):
        assert exact_divide(P("t^2-4"), P("t-2")) == P("t+2")
        assert exact_divide(P("t^2+1"), P("t-2")) is None
        f = P(LEHMER_TEXT)
        assert exact_divide(f, f) == P("1")
        with pytest.raises(ZeroDivisionError):
            exact_divide(f, LaurentPoly())

    def test_big_integers_do_not_overflow(self):
        f = P("t - 1000000007") ** 12
        assert f.leading == 1 and f.lowest == 1000000007 ** 12
        assert exact_divide(f, P("t - 1000000007") ** 11) == P("t - 1000000007")

    @given(polys(allow_offset=True), polys(allow_offset=True), polys(allow_offset=True))
    def test_ring_laws(self, a, b, c):
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c

    @given(polys(allow_offset=True), polys(allow_offset=True))
    def test_reciprocal_is_multiplicative_involution(self, a, b):
        assert reciprocal(a * b) == reciprocal(a) * reciprocal(b)
        assert reciprocal(reciprocal(a)) == a

    @given(polys(allow_offset=True))
    def test_normalization_idempotent(self, f):
        g = LaurentPoly(f.coeffs, f.offset)
        assert LaurentPoly(g.coeffs, g.offset) == g == f
        assert f.coeffs[0] != 0 and f.coeffs[-1] != 0

    @given(polys(allow_offset=True), polys(max_degree=4, allow_offset=True))
    def test_divide_product(self, a, b):
        assert exact_divide(a * b, b) == a

    @given(polys(allow_offset=True), st.integers(-3, 3).filter(bool))
    def test_evaluation_matches_term_sum(self, f, z):
        z = Fraction(z)
        assert f(z) == sum(c * z ** (f.offset + i) for i, c in enumerate(f.coeffs))


class TestCyclotomic:
    @pytest.mark.parametrize("d,text", [(1, "t-1"), (2, "t+1"), (4, "t^2+1"), (6, "t^2-t+1"),
                                        (12, "t^4-t^2+1")])
    def test_small(self, d, text):
        assert cyclotomic(d) == P(text)

    def test_phi12_by_division_oracle(self):
        num = P("t^12 - 1")
        for d in (1, 2, 3, 4, 6):
            num = exact_divide(num, cyclotomic(d))
        assert num == P("t^4 - t^2 + 1")

    def test_all_up_to_100(self):
        for d in range(1, 101):
            phi = cyclotomic(d)
            assert phi.degree == totient(d)
            assert exact_divide(LaurentPoly([-1] + [0] * (d - 1) + [1]), phi) is not None

    def test_index_list_is_complete(self):
        # brute force: phi(d) >= sqrt(d/2), so d <= 2 D^2 covers everything
        for D in range(1, 13):
            brute = [d for d in range(1, 2 * D * D + 3) if totient(d) <= D]
            assert list(cyclotomic_indices(D)) == brute

    def test_split_t_minus_1(self):
        s = cyclotomic_split(P("t-1"))
        assert s.cyclo_factors == ((1, 1),) and s.remainder == P("1")

    def test_split_constructed(self):
        s = cyclotomic_split(2 * P("t^2+1") * P("t-2"))
        assert s.content == 2 and s.cyclo_factors == ((4, 1),) and s.remainder == P("t-2")

    def test_split_lehmer_untouched(self):
        f = P(LEHMER_TEXT)
        s = cyclotomic_split(f)
        assert s.cyclo_factors == () and s.remainder == f

    def test_split_strips_units(self):
        f = -P("t^3") * cyclotomic(12) ** 2 * cyclotomic(1)
        s = cyclotomic_split(f)
        assert s.unit_sign == -1 and s.monomial_exp == 3
        assert s.cyclo_factors == ((1, 1), (12, 2)) and s.is_trivial

    def test_reassembly_randomized(self):
        rng = random.Random(1234)
        for _ in range(1000):
            f = LaurentPoly([rng.randint(-9, 9) for _ in range(rng.randint(1, 13))] + [rng.choice([-1, 1])])
            if f.is_zero:
                continue
            for _ in range(rng.randint(0, 3)):
                f = f * cyclotomic(rng.choice([1, 2, 3, 4, 5, 6, 8, 10, 12, 30]))
            f = f * LaurentPoly.monomial(rng.randint(-5, 5), rng.choice([-3, -1, 1, 2]))
            s = cyclotomic_split(f)
            assert s.reassemble() == f
            # remainder keeps no cyclotomic factor
            for d in cyclotomic_indices(max(s.remainder.degree, 1)):
                if cyclotomic(d).degree <= s.remainder.degree:
                    assert exact_divide(s.remainder, cyclotomic(d)) is None
