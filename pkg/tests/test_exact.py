from fractions import Fraction as F

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from distdist.exact import (BiPoly, DegenerateInputError, UniPoly, bareiss_determinant, count_real_roots,
                            discriminant, format_rational, parse_rational, poly_gcd, resultant, square_free,
                            sturm_sequence, to_rational)
from oracles import sympy_real_roots

small_q = st.fractions(min_value=-20, max_value=20, max_denominator=12)
coeff_lists = st.lists(st.integers(-9, 9), min_size=1, max_size=7)


def test_rationals_stay_reduced():
    x = F(6, -4)
    assert (x.numerator, x.denominator) == (-3, 2)
    assert format_rational(F(-3, 2)) == "-3/2"
    assert format_rational(F(4)) == "4"
    assert parse_rational(" -3/2 ") == F(-3, 2)
    assert parse_rational("7") == 7


def test_floats_are_rejected():
    with pytest.raises(TypeError):
        to_rational(0.5)


@given(small_q)
def test_format_parse_round_trip(x):
    assert parse_rational(format_rational(x)) == x


def test_bad_rational_text():
    for bad in ("1/0", "abc", "1.5.2", ""):
        with pytest.raises((ValueError, ZeroDivisionError)):
            parse_rational(bad)


class TestUniPoly:
    def test_arithmetic(self):
        x = UniPoly.x()
        p = (x - 1) * (x + 2)
        assert p.coeffs == (-2, 1, 1)
        assert p(F(1)) == 0
        q, r = divmod(p, x - 1)
        assert q == x + 2 and not r
        assert p.derivative() == UniPoly([1, 2])

    def test_zero(self):
        z = UniPoly()
        assert z.degree == -1 and not z

    @given(coeff_lists, coeff_lists)
    def test_division_identity(self, a, b):
        f, g = UniPoly(a), UniPoly(b)
        if not g:
            return
        q, r = divmod(f, g)
        assert q * g + r == f
        assert r.degree < g.degree

    @given(coeff_lists, coeff_lists, small_q)
    def test_evaluation_is_a_ring_map(self, a, b, x):
        f, g = UniPoly(a), UniPoly(b)
        assert (f * g)(x) == f(x) * g(x)
        assert (f + g)(x) == f(x) + g(x)
        assert f.compose(g)(x) == f(g(x))

    def test_gcd_and_square_free(self):
        p = UniPoly.from_roots([1, 1, 2, F(1, 3)])
        assert square_free(p) == UniPoly.from_roots([1, 2, F(1, 3)]).monic()
        assert poly_gcd(UniPoly.from_roots([1, 2]), UniPoly.from_roots([2, 3])) == UniPoly([-2, 1])


class TestSturm:
    def test_known_counts(self):
        assert count_real_roots(UniPoly([-1, 0, 1])) == 2
        assert count_real_roots(UniPoly([1, 0, 1])) == 0
        assert count_real_roots(UniPoly.from_roots([0, 0, 5])) == 2

    def test_interval_counts_half_open(self):
        p = UniPoly.from_roots([-2, 0, 3])
        assert count_real_roots(p, (F(-2), F(3))) == 1
        assert count_real_roots(p, (F(-3), F(3))) == 2
        assert count_real_roots(p, (None, F(0))) == 1
        assert count_real_roots(p, (F(0), None)) == 1

    def test_sequence_starts_with_p_and_its_derivative(self):
        p = UniPoly.from_roots([1, 1, 2])
        seq = sturm_sequence(p)
        assert seq[0] == p and seq[1] == p.derivative()
        assert seq[-1].degree == 1  # gcd(p, p') = x - 1 up to scale

    @given(st.lists(st.integers(-6, 6), min_size=1, max_size=6), st.integers(-3, 3).filter(bool))
    def test_roots_of_products(self, roots, lead):
        p = UniPoly.from_roots(roots, lead) * UniPoly([1, 0, 1])
        assert count_real_roots(p) == len(set(roots))

    @settings(max_examples=60, deadline=None)
    @given(coeff_lists)
    def test_against_sympy(self, coeffs):
        p = UniPoly(coeffs)
        if p.degree < 1:
            return
        assert count_real_roots(p) == sympy_real_roots(p.coeffs)

    def test_discriminant(self):
        assert discriminant(UniPoly([-6, 1, 1])) == 25
        with pytest.raises(ValueError):
            discriminant(UniPoly([1, 2, 3, 4]))


class TestResultant:
    x, y = BiPoly.var(0), BiPoly.var(1)

    def test_lines(self):
        assert resultant(self.x - self.y, self.x + self.y) == UniPoly([0, -2])

    def test_circle_and_axis(self):
        circle = self.x ** 2 + self.y ** 2 - 1
        r = resultant(circle, self.y)
        assert count_real_roots(r) == 2
        assert r.monic() == UniPoly([-1, 0, 1])

    def test_circle_and_diagonal(self):
        r = resultant(self.x ** 2 + self.y ** 2 - 1, self.x - self.y)
        assert r.monic() == UniPoly([F(-1, 2), 0, 1])

    def test_constant_in_eliminated_variable(self):
        with pytest.raises(DegenerateInputError):
            resultant(self.x + 1, self.x + self.y)

    @settings(max_examples=40, deadline=None)
    @given(st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2)), st.integers(-5, 5), min_size=1),
           st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2)), st.integers(-5, 5), min_size=1))
    def test_against_sympy(self, ta, tb):
        f, g = BiPoly(ta), BiPoly(tb)
        if f.degree_in(1) < 1 or g.degree_in(1) < 1:
            return
        X, Y = sp.symbols("X Y")
        to_expr = lambda b: sum(sp.Rational(c.numerator, c.denominator) * X ** i * Y ** j for (i, j), c in b.terms.items())
        expected = sp.Poly(sp.resultant(to_expr(f), to_expr(g), Y), X)
        got = resultant(f, g)
        want = [F(int(c.p), int(c.q)) for c in reversed(expected.all_coeffs())] if expected.degree() >= 0 else []
        assert got == UniPoly(want)

    @given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n),
                                                         min_size=n, max_size=n)))
    def test_bareiss_matches_sympy_on_integer_matrices(self, rows):
        m = [[UniPoly([c]) for c in row] for row in rows]
        assert bareiss_determinant(m) == UniPoly([int(sp.Matrix(rows).det())])

    def test_bareiss_needs_pivoting(self):
        m = [[UniPoly([c]) for c in row] for row in ([0, 1], [1, 0])]
        assert bareiss_determinant(m) == UniPoly([-1])


def test_bipoly_substitution_matches_evaluation():
    x, y = BiPoly.var(0), BiPoly.var(1)
    f = x ** 2 * y - 3 * y ** 2 + x - 7
    t = UniPoly.x()
    g = f.substitute(1, t * t + 1)
    for v in (F(-2), F(1, 3), F(5)):
        assert g(v) == f(v, v * v + 1)
