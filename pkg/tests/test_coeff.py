import pytest
from hypothesis import given, strategies as st

from cartan.coeff import (
    INF,
    FpElem,
    Poly,
    RationalFn,
    TruncatedSeries,
    expand,
    laurent_series,
    series_inverse,
    valuation,
)
from cartan.errors import PrecisionError
from cartan.parsing import parse_coeff

from strategies import coeff_lists, primes, rationals, series


def t(p):
    return RationalFn.gen(p)


# --- naive list-based polynomial model, used to referee FLINT ---------------

def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def naive_mul(a, b, p):
    out = [0] * max(len(a) + len(b) - 1, 0)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def naive_divmod(a, b, p):
    a, b = _trim(a), _trim(b)
    inv = pow(b[-1], p - 2, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    while len(_trim(r)) >= len(b):
        r = _trim(r)
        k = len(r) - len(b)
        c = r[-1] * inv % p
        q[k] = c
        for i, y in enumerate(b):
            r[i + k] = (r[i + k] - c * y) % p
    return _trim(q), _trim(r)


class TestFpElem:
    def test_field_arithmetic(self):
        a, b = FpElem(3, 5), FpElem(4, 5)
        assert (a + b).value == 2
        assert (a * b).value == 2
        assert (a / b * b) == a
        assert a.inverse().value == 2

    def test_zero_has_no_inverse(self):
        with pytest.raises(ZeroDivisionError):
            FpElem(0, 7).inverse()

    def test_rejects_composite_modulus(self):
        with pytest.raises(ValueError):
            FpElem(1, 6)

    @given(primes.flatmap(lambda p: st.tuples(st.just(p), st.integers(1, p - 1))))
    def test_every_nonzero_element_is_invertible(self, pv):
        p, v = pv
        x = FpElem(v, p)
        assert (x * x.inverse()).value == 1


class TestPoly:
    @given(primes.flatmap(lambda p: st.tuples(st.just(p), coeff_lists(p, 6), coeff_lists(p, 6))))
    def test_product_matches_naive_model(self, args):
        p, a, b = args
        prod = Poly(a, p) * Poly(b, p)
        assert [int(c) for c in prod.coeffs] == naive_mul(a, b, p)

    @given(primes.flatmap(lambda p: st.tuples(
        st.just(p), coeff_lists(p, 8), coeff_lists(p, 4).filter(lambda c: any(c))))
    )
    def test_divmod_matches_naive_model(self, args):
        p, a, b = args
        q, r = divmod(Poly(a, p), Poly(b, p))
        nq, nr = naive_divmod(a, b, p)
        assert [int(c) for c in q.coeffs] == nq
        assert [int(c) for c in r.coeffs] == nr

    @given(primes.flatmap(lambda p: st.tuples(
        st.just(p), coeff_lists(p, 5).filter(any), coeff_lists(p, 5).filter(any))))
    def test_degree_is_additive(self, args):
        p, a, b = args
        x, y = Poly(a, p), Poly(b, p)
        assert (x * y).degree == x.degree + y.degree

    def test_leading_coefficient_nonzero(self):
        x = Poly([1, 2, 0, 0], 3)
        assert x.degree == 1
        assert x.leading_coefficient() != 0


class TestRationalFn:
    def test_parse_example_negative_power(self):
        x = parse_coeff("t^-2 + 1", 5)
        assert x == (1 + t(5) ** 2) / t(5) ** 2
        assert x.valuation() == -2

    def test_parse_example_monic_denominator(self):
        x = parse_coeff("(1+t)/(1-t)", 3)
        assert x.denominator == Poly([1, 2], 3).monic()
        assert x.denominator.leading_coefficient() == 1
        assert x * (1 - t(3)) == 1 + t(3)
        assert x.valuation() == 0

    def test_parse_example_gcd_reduction(self):
        x = parse_coeff("t/t", 2)
        assert x.numerator == Poly([1], 2) and x.denominator == Poly([1], 2)
        assert x.valuation() == 0

    def test_zero_representation(self):
        z = RationalFn(0, 5, p=3)
        assert z.is_zero() and z.denominator == Poly([1], 3)

    @pytest.mark.parametrize("text,p,v", [
        ("t^3*(1+t)", 5, 3),
        ("0", 5, INF),
        ("(t^2+t^3)/t", 5, 1),
    ])
    def test_valuation_examples(self, text, p, v):
        assert valuation(parse_coeff(text, p)) == v

    def test_membership_in_local_ring(self):
        p = 5
        assert parse_coeff("1/(1+t)", p).is_integral()
        assert not parse_coeff("1/t", p).is_integral()
        assert parse_coeff("(1+t)/(2+t)", p).is_unit()
        assert not parse_coeff("t/(2+t)", p).is_unit()

    @given(primes.flatmap(lambda p: st.tuples(rationals(p), rationals(p))))
    def test_valuation_laws(self, xy):
        x, y = xy
        assert (x * y).valuation() == x.valuation() + y.valuation()
        s = (x + y).valuation()
        assert s >= min(x.valuation(), y.valuation())
        if x.valuation() != y.valuation():
            assert s == min(x.valuation(), y.valuation())

    @given(primes.flatmap(lambda p: st.tuples(rationals(p), rationals(p))))
    def test_local_ring_is_closed(self, xy):
        x, y = xy
        if x.is_integral() and y.is_integral():
            assert (x + y).is_integral() and (x * y).is_integral()

    @given(primes.flatmap(lambda p: rationals(p, nonzero=True)))
    def test_unit_iff_valuation_zero(self, x):
        assert x.is_unit() == (x.valuation() == 0)

    @given(primes.flatmap(lambda p: rationals(p, nonzero=True)))
    def test_canonical_form(self, x):
        assert x.denominator.leading_coefficient() == 1
        assert x.numerator.gcd(x.denominator).degree == 0
        assert x * x.inverse() == 1

    def test_unit_part(self):
        x = parse_coeff("(1+t)*t^3", 5)
        v, u = x.unit_part()
        assert v == 3 and u == 1 + t(5)


class TestExpand:
    def test_geometric_series(self):
        s = expand(parse_coeff("1/(1-t)", 5), 4)
        assert s.coeffs == (1, 1, 1, 1) and s.precision == 4

    def test_negative_valuation(self):
        s = expand(parse_coeff("t^-1", 5), 2)
        assert s.valuation() == -1 and s.precision == 2
        assert [s.coefficient(k) for k in (-1, 0, 1)] == [1, 0, 0]

    def test_cancelling_fraction(self):
        s = expand(parse_coeff("(1+t)/(1+t)", 5), 3)
        assert s.coeffs == (1, 0, 0) and s.precision == 3

    def test_precision_must_exceed_valuation(self):
        with pytest.raises(ValueError):
            expand(parse_coeff("t^3", 5), 3)

    @given(primes.flatmap(lambda p: st.tuples(rationals(p, nonzero=True),
                                              rationals(p, nonzero=True),
                                              st.integers(1, 8))))
    def test_ring_homomorphism_up_to_precision(self, args):
        x, y, k = args
        N = max(x.valuation(), y.valuation()) + k
        ex, ey = expand(x, N), expand(y, N)
        prod = ex * ey
        assert prod.agrees(expand(x * y, prod.precision))
        total = x + y
        if not total.is_zero() and total.valuation() < N:
            assert (ex + ey).agrees(expand(total, N))
        else:
            assert (ex + ey).is_zero()
        inv = ex.inverse()
        assert inv.agrees(expand(x.inverse(), inv.precision))


class TestSeries:
    def test_inverse_example_p2(self):
        x = TruncatedSeries([1, 1], 0, 3, 2)
        inv = series_inverse(x)
        assert inv.coeffs == (1, 1, 1) and inv.precision == 3
        # multiply back: 1 + O(t^3)
        one = x * inv
        assert one.precision == 3 and one.coeffs == (1, 0, 0)

    def test_inverse_example_monomial(self):
        x = TruncatedSeries([1], 1, 4, 5)
        inv = series_inverse(x)
        assert inv.valuation() == -1 and inv.precision == 2
        assert inv.coeffs == (1, 0, 0)

    def test_inverse_example_scalar(self):
        inv = series_inverse(TruncatedSeries([2], 0, 1, 5))
        assert inv.coeffs == (3,) and inv.precision == 1

    def test_zero_at_precision_refuses(self):
        z = TruncatedSeries([0, 0], 0, 2, 3)
        assert z.is_zero() and z.valuation() == INF
        with pytest.raises(PrecisionError):
            z.inverse()
        with pytest.raises(PrecisionError):
            z.unit_part()

    def test_flagged_zero_keeps_multiplication_rule(self):
        z = TruncatedSeries.zero(5, 4)
        x = TruncatedSeries([1], -2, 3, 5)
        assert (z * x).precision == min(4 + 3, -2 + 4)

    @given(primes.flatmap(lambda p: st.tuples(series(p), series(p))))
    def test_precision_rules(self, ab):
        a, b = ab
        assert (a + b).precision == min(a.precision, b.precision)
        assert (a - b).precision == min(a.precision, b.precision)
        assert (a * b).precision == min(a.valuation() + b.precision,
                                        b.valuation() + a.precision)
        assert a.inverse().precision == a.precision - 2 * a.valuation()

    @given(primes.flatmap(lambda p: st.tuples(series(p), series(p))))
    def test_known_digits_are_correct(self, ab):
        # every operation agrees with exact arithmetic on the representatives
        a, b = ab
        ra, rb = a.to_rational(), b.to_rational()
        for s, exact in ((a * b, ra * rb), (a + b, ra + rb), (a.inverse(), ra.inverse())):
            ref = laurent_series(exact) if exact.is_polynomial() or exact.is_zero() else \
                expand(exact, s.precision) if exact.valuation() < s.precision else \
                TruncatedSeries.zero(a.p, s.precision)
            assert s.agrees(ref)

    def test_truncated_needs_precision(self):
        x = TruncatedSeries([1, 2, 3], 0, 3, 5)
        assert x.truncated(2) == 1 + 2 * t(5)
        with pytest.raises(PrecisionError):
            x.truncated(4)

    def test_render(self):
        assert str(expand(parse_coeff("t^-1", 5), 2)) == "t^-1+O(t^2)"
