import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from verlinde.poly import MONOMIAL_ORDERS, Poly, grevlex_key, lex_key, parse_poly


def P(terms, nvars=2):
    return Poly(terms, nvars)


class TestBasics:
    def test_normalization(self):
        p = P({(1, 0): Fraction(2, 1), (0, 1): 0})
        assert p.terms == {(1, 0): 2}
        assert isinstance(p.terms[(1, 0)], int)

    def test_zero_and_constant(self):
        assert Poly.zero(2).is_zero()
        assert Poly.constant(5, 1).terms == {(0,): 5}
        assert not Poly.constant(5, 1).is_zero()

    def test_variable(self):
        assert Poly.variable(1, 2).terms == {(0, 1): 1}

    def test_arith(self):
        x = Poly.variable(0, 2)
        y = Poly.variable(1, 2)
        p = (x + y) * (x - y)
        assert p == x * x - y * y
        assert (x - x).is_zero()
        assert 3 * x == x + x + x
        assert -x == Poly({(1, 0): -1}, 2)

    def test_pow(self):
        x = Poly.variable(0, 1)
        assert (x + 1) ** 0 == Poly.constant(1, 1)
        assert (x + 1) ** 3 == x**3 + 3 * x**2 + 3 * x + 1
        with pytest.raises(ValueError):
            (x + 1) ** -1

    def test_shift_makes_laurent(self):
        x = Poly.variable(0, 1)
        p = (x + 1).shift((-1,))
        assert p.terms == {(0,): 1, (-1,): 1}
        assert p.is_laurent_only()

    def test_evaluate(self):
        p = parse_poly("x^2y - 2", ("x", "y"))
        assert p.evaluate([3, 5]) == 43
        assert p.evaluate([Fraction(1, 2), 4]) == Fraction(-1, 1)
        lau = p.shift((-2, 0))
        assert lau.evaluate([2.0, 1.0]) == pytest.approx(0.5)

    def test_content_primitive_monic(self):
        p = P({(2, 0): 4, (0, 0): -6})
        assert p.content() == 2
        assert p.primitive() == P({(2, 0): 2, (0, 0): -3})
        q = P({(2, 0): Fraction(1, 3), (0, 0): 2})
        assert q.content() == Fraction(1, 3)
        m = q.monic(grevlex_key)
        assert m.leading(grevlex_key)[1] == 1


class TestOrdersAndRender:
    def test_grevlex_vs_lex(self):
        # x^2 y vs x y^3: total degrees 3 vs 4
        assert grevlex_key((2, 1)) < grevlex_key((1, 3))
        # same degree: x^2 y > x y^2 in both orders (first variable heavier)
        assert grevlex_key((2, 1)) > grevlex_key((1, 2))
        assert lex_key((2, 1)) > lex_key((1, 2))
        # the classical discriminating pair: x z vs y^2 with z lowest
        assert grevlex_key((1, 0, 1)) < grevlex_key((0, 2, 0))
        assert set(MONOMIAL_ORDERS) == {"grevlex", "lex"}

    def test_render_descending(self):
        p = parse_poly("x^2y^2 - x^3 - y^3", ("x", "y"))
        assert p.render(("x", "y")) == "x^2y^2 - x^3 - y^3"

    def test_render_ascending(self):
        p = parse_poly("1 - 2s - 2t + 3st + 2s^2t + 2st^2 - 5s^2t^2 + s^3t^3", ("s", "t"))
        assert p.render(("s", "t"), ascending=True) == (
            "1 - 2s - 2t + 3st + 2s^2t + 2st^2 - 5s^2t^2 + s^3t^3"
        )

    def test_render_corner_cases(self):
        assert Poly.zero(1).render(("x",)) == "0"
        assert Poly.constant(-3, 1).render(("x",)) == "-3"
        assert P({(-2, 0): 1}).render(("x", "y")) == "x^-2"


class TestParse:
    def test_round_trip_table_style(self):
        for text in ["x^4y - 3x^2y^2 + y^3 - x^3 + 4xy - 1", "1 - t", "xy - 1"]:
            p = parse_poly(text, ("x", "y") if "x" in text else ("s", "t"))
            names = ("x", "y") if "x" in text else ("s", "t")
            assert parse_poly(p.render(names), names) == p

    def test_fraction_and_negative_exponent(self):
        p = parse_poly("3/2x^-2y - 1/3", ("x", "y"))
        assert p.terms == {(-2, 1): Fraction(3, 2), (0, 0): Fraction(-1, 3)}

    def test_rejects_garbage(self):
        with pytest.raises(ValueError):
            parse_poly("x + q", ("x", "y"))


class TestJson:
    def test_round_trip(self):
        p = P({(1, 0): Fraction(1, 2), (0, 3): -7})
        q = Poly.from_json_obj(json.loads(p.to_json()))
        assert q == p and q.nvars == p.nvars


coeffs = st.integers(min_value=-8, max_value=8)
exps = st.tuples(st.integers(0, 4), st.integers(0, 4))
polys = st.dictionaries(exps, coeffs, max_size=5).map(lambda d: Poly(d, 2))


class TestRingAxioms:
    @given(polys, polys, polys)
    @settings(max_examples=60, deadline=None)
    def test_ring_laws(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c

    @given(polys, polys)
    @settings(max_examples=60, deadline=None)
    def test_degree_of_product(self, a, b):
        if a.is_zero() or b.is_zero():
            assert (a * b).is_zero()
        else:
            assert (a * b).total_degree() == a.total_degree() + b.total_degree()

    @given(polys)
    @settings(max_examples=40, deadline=None)
    def test_leading_term_consistency(self, p):
        if p.is_zero():
            return
        e, c = p.leading(grevlex_key)
        assert p.coeff(e) == c
        assert all(grevlex_key(f) <= grevlex_key(e) for f in p.terms)
