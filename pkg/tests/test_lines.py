from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from distdist.bounds import dyadic_partition
from distdist.exact import DegenerateInputError
from distdist.generators import ExactPoint, PointSet, lattice, split_by
from distdist.lines import (HyperbolaCurve, MisplacedPointError, build_hyperbola_family, build_quadruple_stats,
                            common_curves_for_triples, count_incidences_line, degrees_of_freedom_check_line,
                            enr_for_split, enr_products, hyperbola_intersections, hyperbola_pairs, line_ledger,
                            max_vertical, multiplicity_vs_vertical_lines, q1_choice_bound_check)
from distdist.quadruples import QUADRUPLE_ENUMERATION_GUARD, SizeGuardError, enumerate_quadruples
from oracles import brute_choice, brute_incidences_line, brute_quadruples, sympy_hyperbola_common_points

xs = st.lists(st.integers(-6, 6), min_size=1, max_size=7, unique=True)
off_axis = st.lists(st.tuples(st.integers(-5, 5), st.integers(-3, 3).filter(bool)), min_size=1, max_size=9,
                    unique=True)


def split(first_xs, second):
    return PointSet(tuple((x, 0) for x in first_xs)), PointSet(tuple(second))


def y2(p):
    return p[1] ** 2


class TestQuadruples:
    def test_two_by_two(self):
        s = build_quadruple_stats(*split([0, 1], [(0, 1), (1, 1)]))
        assert (s.q_total, s.q1, s.q2) == (4, 4, 0)

    def test_isosceles(self):
        s = build_quadruple_stats(*split([0, 2], [(1, 5)]))
        assert s.q_total == 2 and s.q2 == 0

    def test_mixed_heights(self):
        s = build_quadruple_stats(*split([0, 5], [(0, 5), (1, 3)]))
        assert s.q2 == 2

    def test_placement_checked(self):
        with pytest.raises(MisplacedPointError):
            build_quadruple_stats(PointSet(((0, 1),)), PointSet(((0, 2),)))
        with pytest.raises(MisplacedPointError):
            build_quadruple_stats(PointSet(((0, 0),)), PointSet(((3, 0),)))

    @settings(max_examples=80, deadline=None)
    @given(xs, off_axis)
    def test_identities_against_enumeration(self, a, b):
        first, second = split(a, b)
        s = build_quadruple_stats(first, second)
        assert s.violations() == []
        total, degenerate = brute_quadruples([(x, 0) for x in a], b, y2)
        assert (s.q_total, s.q1) == (total, degenerate)
        listed = list(enumerate_quadruples(first, second))
        assert len(listed) == s.q_total and len(set(listed)) == len(listed)

    @settings(max_examples=60, deadline=None)
    @given(xs, off_axis)
    def test_cauchy_schwarz(self, a, b):
        s = build_quadruple_stats(*split(a, b))
        excess = sum(c - 1 for c in s.class_sizes)
        assert s.q_total * s.D >= excess * excess
        assert s.cauchy_schwarz_lower == F(excess * excess, s.D)

    def test_enumeration_guard(self):
        first = PointSet(tuple((x, 0) for x in range(400)))
        second = PointSet(tuple((x, 1) for x in range(300)))
        assert len(first) * len(second) > QUADRUPLE_ENUMERATION_GUARD
        with pytest.raises(SizeGuardError):
            next(enumerate_quadruples(first, second))


class TestChoiceBound:
    @settings(max_examples=60, deadline=None)
    @given(xs, off_axis)
    def test_against_triple_loop(self, a, b):
        first, second = split(a, b)
        rep = q1_choice_bound_check(first, second)
        assert rep.maximum == brute_choice([(x, 0) for x in a], b, y2)
        assert rep.ok

    def test_four_is_reached(self):
        # a = b = 0, p = (1, 1): q in {(-1, 1), (1, -1), (-1, -1)} plus a != b variants
        first, second = split([0, 2], [(1, 1), (-1, 1), (1, -1), (-1, -1), (3, 1), (3, -1)])
        rep = q1_choice_bound_check(first, second)
        assert rep.maximum == brute_choice([(0, 0), (2, 0)], list(map(tuple, second)), y2) == 4


class TestHyperbolas:
    def test_curve_contains_exactly_the_distance_solutions(self):
        c = HyperbolaCurve(ExactPoint(0, 5), ExactPoint(1, 3))
        # |ap|^2 = 25 at a = 0; (b - 1)^2 + 9 = 25 at b = 5 and b = -3
        assert c(0, 5) == 0 and c.poly(0, 5) == 0 and c(0, -3) == 0
        assert c(5, 1) != 0
        assert c.class_key == (0, 1, -16)

    def test_degenerate_pair(self):
        with pytest.raises(DegenerateInputError):
            HyperbolaCurve(ExactPoint(0, 2), ExactPoint(3, -2))

    def test_engineered_multiplicity(self):
        second = PointSet(((1, 1), (1, -1), (2, 3), (2, -3)))
        fam = build_hyperbola_family(second)
        assert fam.multiplicity_of((1, 2, 8)) == 4
        assert fam.t == 4
        rep = multiplicity_vs_vertical_lines(second, fam)
        assert rep.v_max == 2 and rep.ok

    @settings(max_examples=60, deadline=None)
    @given(off_axis)
    def test_family_partition(self, b):
        fam = build_hyperbola_family(PointSet(tuple(b)))
        n = len(b)
        assert fam.gamma_size + fam.skipped == n * (n - 1)
        assert int(fam.multiplicities.sum()) == fam.gamma_size
        for k in range(fam.distinct):
            keys = {c.class_key for c in fam.members(k)}
            assert keys == {fam.class_keys[k]}
        assert len(set(fam.class_keys)) == fam.distinct

    @settings(max_examples=60, deadline=None)
    @given(off_axis)
    def test_multiplicity_law(self, b):
        rep = multiplicity_vs_vertical_lines(PointSet(tuple(b)))
        assert rep.t <= 2 * rep.v_max

    @settings(max_examples=60, deadline=None)
    @given(xs, off_axis)
    def test_incidences_equal_q2(self, a, b):
        first, second = split(a, b)
        fam = build_hyperbola_family(second)
        inc = count_incidences_line(first, fam)
        assert inc == build_quadruple_stats(first, second).q2
        assert inc == brute_incidences_line([(x, 0) for x in a], b)
        # direct evaluation of every curve polynomial
        naive = sum(1 for c in fam.curves() for u in a for v in a if c.poly(u, v) == 0)
        assert inc == naive

    def test_incidences_with_rationals(self):
        first = PointSet(((F(1, 2), 0), (F(-3, 4), 0), (2, 0)))
        second = PointSet(((F(1, 3), F(2, 5)), (F(-1, 2), F(-2, 5)), (1, F(7, 3))))
        fam = build_hyperbola_family(second)
        assert count_incidences_line(first, fam) == build_quadruple_stats(first, second).q2

    def test_pairwise_intersections(self):
        c1 = HyperbolaCurve(ExactPoint(0, 1), ExactPoint(0, 2))
        c2 = HyperbolaCurve(ExactPoint(1, 1), ExactPoint(0, 2))
        assert hyperbola_intersections(c1, c2) <= 2

    @settings(max_examples=40, deadline=None)
    @given(off_axis.filter(lambda b: len(b) >= 3))
    def test_at_most_two_common_points(self, b):
        fam = build_hyperbola_family(PointSet(tuple(b)))
        rep = degrees_of_freedom_check_line(hyperbola_pairs(fam, limit=80, samples=300))
        assert rep.ok and rep.maximum <= 2

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.tuples(st.integers(-4, 4), st.integers(-3, 3).filter(bool)), min_size=4, max_size=4,
                    unique=True))
    def test_intersections_against_sympy(self, pts):
        p, q, p2, q2 = pts
        if p[1] ** 2 == q[1] ** 2 or p2[1] ** 2 == q2[1] ** 2:
            return
        c1 = HyperbolaCurve(ExactPoint(*p), ExactPoint(*q))
        c2 = HyperbolaCurve(ExactPoint(*p2), ExactPoint(*q2))
        if c1.class_key == c2.class_key:
            return
        assert hyperbola_intersections(c1, c2) == sympy_hyperbola_common_points(p, q, p2, q2)

    def test_triples_lie_on_few_curves(self):
        fam = build_hyperbola_family(PointSet(((1, 1), (1, -1), (2, 3), (2, -3), (0, 2))))
        triples = [((F(0), F(1)), (F(1), F(0)), (F(2), F(2))), ((F(-1), F(3)), (F(0), F(0)), (F(4), F(1)))]
        assert common_curves_for_triples(fam, triples) <= 1


class TestEnr:
    def test_example(self):
        # A - A = {-2..2}; A^2 + B^2 = {2, 5, 10, 8, 13}
        rep = enr_products([1, 2, 3], [1, 2])
        assert rep.diff_size == 5 and rep.square_sum_size == 5 and rep.product == 25

    def test_for_split(self):
        first, second = split([0, 1, 2, 3], [(0, 1), (0, 2), (1, 1)])
        assert enr_for_split(first, second) is not None


class TestLedger:
    def test_lattice_8x4(self):
        pts = split_by(lattice(8, 4), lambda p: p.y == 0)
        led = line_ledger(pts.part("P1"), pts.part("P2"))
        j = led.to_json()
        assert j["q2"] == j["incidences"] and j["violations"] == []
        assert j["q_total"] == j["q1"] + j["q2"]
        levels = dyadic_partition(led.family.multiplicities.tolist())
        assert sum(lv.curves for lv in levels) == led.family.gamma_size

    def test_max_vertical(self):
        x, count = max_vertical(PointSet(((1, 1), (1, 2), (1, 3), (2, 1))))
        assert (x, count) == (1, 3)
