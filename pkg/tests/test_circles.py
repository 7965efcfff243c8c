from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from distdist.circles import (AxisPointError, CircleCurve4D, OffCircleError, build_circle_family,
                              build_quadruple_stats_circle, check_intersections_4d, circle_ledger, circle_pairs,
                              count_incidences_circle, curve_membership, engineered_singular_pairs,
                              intersection_count_4d, same_curve_conditions_polynomial, q1_choice_bound_check_circle,
                              same_curve_conditions_check)
from distdist.cli import circle_config
from distdist.exact import DegenerateInputError
from distdist.generators import ExactPoint, PointSet, circle_point, circle_points, make_rng, random_rational
from distdist.lines import InfiniteIntersectionError
from oracles import brute_choice, brute_incidences_circle, brute_quadruples, groebner_4d_count

params = st.fractions(-5, 5, max_denominator=5).filter(lambda t: t not in (0, 1, -1))
circle_sets = st.lists(params, min_size=2, max_size=6, unique=True)
ambient = st.lists(st.tuples(st.integers(-4, 4).filter(bool), st.integers(-4, 4).filter(bool)),
                   min_size=1, max_size=7, unique=True)


def norm2(p):
    return p[0] ** 2 + p[1] ** 2


def tuples(ps):
    return [(p.x, p.y) for p in ps]


def config(ts, pts):
    return circle_points(len(ts), parameters=ts), PointSet(tuple(pts))


class TestQuadruples:
    @settings(max_examples=60, deadline=None)
    @given(circle_sets, ambient)
    def test_identities_and_incidences(self, ts, pts):
        first, second = config(ts, pts)
        s = build_quadruple_stats_circle(first, second)
        assert s.violations() == []
        assert (s.q_total, s.q1) == brute_quadruples(tuples(first), pts, norm2)
        inc = count_incidences_circle(first, build_circle_family(second))
        assert inc == s.q2 == brute_incidences_circle(tuples(first), pts)

    def test_symmetric_config_brute_force(self):
        first, second = circle_config(40, 0.5, "symmetric", seed=2)
        s = build_quadruple_stats_circle(first, second)
        assert s.q2 > 0
        assert (s.q_total, s.q1) == brute_quadruples(tuples(first), tuples(second), norm2)
        assert count_incidences_circle(first, build_circle_family(second)) == s.q2

    def test_small_hand_example(self):
        first = circle_points(0, parameters=[F(1, 2), F(-1, 2), 2, -2])
        second = PointSet(((2, 2), (-2, 2), (2, -2), (3, 1)))
        s = build_quadruple_stats_circle(first, second)
        assert s.q2 == count_incidences_circle(first, build_circle_family(second))

    def test_placement_checked(self):
        with pytest.raises(OffCircleError):
            build_quadruple_stats_circle(PointSet(((1, 1),)), PointSet(((2, 3),)))
        with pytest.raises(AxisPointError):
            build_quadruple_stats_circle(circle_points(0, parameters=[F(1, 2), 3]), PointSet(((0, 3),)))

    @settings(max_examples=40, deadline=None)
    @given(circle_sets, ambient)
    def test_choice_bound(self, ts, pts):
        first, second = config(ts, pts)
        rep = q1_choice_bound_check_circle(first, second)
        assert rep.maximum == brute_choice(tuples(first), pts, norm2)
        assert rep.ok


class TestCurves:
    def test_membership(self):
        p, q = ExactPoint(2, 3), ExactPoint(1, 1)
        c = CircleCurve4D(p, q)
        a = circle_point(F(1, 2))
        # pick b on the circle with |bq| = |ap| if one exists among a few parameters
        hits = [b for b in (circle_point(F(k, 7)) for k in range(-30, 31)) if a.dist2(p) == b.dist2(q)]
        for b in hits:
            assert curve_membership(a, b, c)
        assert not curve_membership(a, circle_point(3), c) or a.dist2(p) == circle_point(3).dist2(q)
        with pytest.raises(OffCircleError):
            curve_membership(ExactPoint(1, 1), a, c)

    @settings(max_examples=60, deadline=None)
    @given(params, params, st.tuples(st.integers(-4, 4), st.integers(-4, 4)),
           st.tuples(st.integers(-4, 4), st.integers(-4, 4)))
    def test_linear_form_matches_distance(self, s, t, p, q):
        if norm2(p) == norm2(q):
            return
        a, b = circle_point(s), circle_point(t)
        c = CircleCurve4D(ExactPoint(*p), ExactPoint(*q))
        assert c.contains(a, b) == (a.dist2(ExactPoint(*p)) == b.dist2(ExactPoint(*q)))

    def test_equal_norms_rejected(self):
        with pytest.raises(DegenerateInputError):
            CircleCurve4D(ExactPoint(3, 4), ExactPoint(5, 0))


def _random_pairs(count, seed):
    rng = make_rng(seed)
    out = []
    while len(out) < count:
        pts = [ExactPoint(random_rational(rng, 3, nonzero=True), random_rational(rng, 3, nonzero=True))
               for _ in range(4)]
        try:
            c1, c2 = CircleCurve4D(pts[0], pts[1]), CircleCurve4D(pts[2], pts[3])
        except DegenerateInputError:
            continue
        out.append((c1, c2))
    return out


class TestIntersections:
    def test_engineered_cases_are_covered(self):
        pairs = engineered_singular_pairs(40, seed=1)
        rep = check_intersections_4d(pairs)
        assert rep.ok and rep.maximum <= 4
        assert rep.by_case.get("qq_invertible", 0) > 0
        assert rep.by_case.get("singular_point", 0) + rep.by_case.get("singular_empty", 0) > 0

    @pytest.mark.parametrize("seed", [0, 1])
    def test_against_groebner_random(self, seed):
        for c1, c2 in _random_pairs(15, seed):
            res = intersection_count_4d(c1, c2)
            assert (res.count, res.complex_count) == groebner_4d_count(c1.p, c1.q, c2.p, c2.q)

    def test_against_groebner_singular(self):
        for c1, c2 in engineered_singular_pairs(24, seed=3):
            res = intersection_count_4d(c1, c2)
            real, cplx = groebner_4d_count(c1.p, c1.q, c2.p, c2.q)
            assert res.count == real
            assert res.complex_count == cplx

    def test_tangent_hand_case(self):
        # a.(1,1) = b.(2,2) + A with p' = 2p: singular M_pp'
        c1 = CircleCurve4D(ExactPoint(1, 1), ExactPoint(3, 1))
        c2 = CircleCurve4D(ExactPoint(2, 2), ExactPoint(1, 3))
        res = intersection_count_4d(c1, c2)
        assert res.case == "qq_invertible"
        assert res.count == groebner_4d_count(c1.p, c1.q, c2.p, c2.q)[0]

    def test_equal_pairs_are_refused(self):
        c = CircleCurve4D(ExactPoint(1, 2), ExactPoint(3, 1))
        with pytest.raises(DegenerateInputError):
            intersection_count_4d(c, c)

    def test_family_pairs(self):
        first, second = circle_config(30, 0.5, "symmetric", seed=2)
        rep = check_intersections_4d(circle_pairs(build_circle_family(second), samples=200))
        assert rep.ok


class TestSameCurve:
    @settings(max_examples=200, deadline=None)
    @given(st.tuples(*[st.fractions(-3, 3, max_denominator=4).filter(bool)] * 4), st.booleans(),
           st.fractions(-3, 3, max_denominator=3).filter(bool))
    def test_conditions_iff_equal_pairs(self, coords, equal, lam):
        p, q = ExactPoint(*coords[:2]), ExactPoint(*coords[2:])
        if p.norm2() == q.norm2():
            return
        p2, q2 = (p, q) if equal else (ExactPoint(lam * p.x, lam * p.y), ExactPoint(lam * q.x, lam * q.y))
        same = same_curve_conditions_check(p, q, p2, q2)
        assert same == ((p, q) == (p2, q2))
        assert same == same_curve_conditions_polynomial(p, q, p2, q2)

    def test_shared_line_would_be_infinite(self):
        p, q = ExactPoint(1, 2), ExactPoint(3, 1)
        c = CircleCurve4D(p, q)
        with pytest.raises((InfiniteIntersectionError, DegenerateInputError)):
            intersection_count_4d(c, CircleCurve4D(p, q))


def test_ledger_json():
    first, second = circle_config(40, 0.6, "symmetric", seed=0)
    j = circle_ledger(first, second, check_pairs=True).to_json()
    assert j["q2"] == j["incidences"] and j["violations"] == []
    assert "q1_concentric" in j and j["pair_check"]["ok"]
