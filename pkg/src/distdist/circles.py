"""Quadruples, curves in four variables and incidences for a rich unit circle.

``P1`` lies on the unit circle ``C`` centred at the origin, ``P2`` avoids it,
and no point lies on a coordinate axis.  For ``p, q`` in ``P2`` with
``|p| != |q|`` the curve ``gamma_pq`` is the set of ``(a, b)`` with

    p . a = q . b + A_pq,   |a|^2 = 1,   |b|^2 = 1,

where ``A_pq = (|p|^2 - |q|^2) / 2``; it passes through ``(a, b)`` exactly when
``|ap| = |bq|``.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np

from .distances import bipartite_distances, integer_coordinates
from .exact import DegenerateInputError, UniPoly, count_real_roots, format_rational, square_free
from .generators import ExactPoint, PointSet, make_rng, random_rational
from .lines import InfiniteIntersectionError, PairCheckReport
from .quadruples import ChoiceReport, QuadrupleStats, choice_bound, quadruple_stats


class OffCircleError(ValueError):
    pass


class AxisPointError(ValueError):
    pass


def on_unit_circle(p: ExactPoint) -> bool:
    return p.x * p.x + p.y * p.y == 1


def _check_axes(points: Iterable[ExactPoint]) -> None:
    bad = [p for p in points if p.x == 0 or p.y == 0]
    if bad:
        raise AxisPointError("points on a coordinate axis: " + ", ".join(map(repr, bad[:5])))


def _check_circle_split(first: PointSet, second: PointSet) -> None:
    off = [p for p in first if not on_unit_circle(p)]
    if off:
        raise OffCircleError("P1 points off the unit circle: " + ", ".join(map(repr, off[:5])))
    on = [p for p in second if on_unit_circle(p)]
    if on:
        raise OffCircleError("P2 points on the unit circle: " + ", ".join(map(repr, on[:5])))
    _check_axes(first)
    _check_axes(second)


def _norm2(p: ExactPoint) -> Fraction:
    return p.x * p.x + p.y * p.y


def build_quadruple_stats_circle(first: PointSet, second: PointSet) -> QuadrupleStats:
    """Quadruple counts for ``P1`` on the unit circle; the degenerate slice has ``|p| = |q|``."""
    _check_circle_split(first, second)
    return quadruple_stats(bipartite_distances(first, second), _norm2)


def q1_choice_bound_check_circle(first: PointSet, second: PointSet) -> ChoiceReport:
    """At most two ``q`` on the origin-centred circle through ``p`` satisfy ``|ap| = |bq|``."""
    _check_circle_split(first, second)
    return choice_bound(first, second, _norm2, bound=2)


# --------------------------------------------------------------------------
# curves
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class CircleCurve4D:
    p: ExactPoint
    q: ExactPoint

    def __post_init__(self):
        if self.A == 0:
            raise DegenerateInputError("|p| == |q| gives A_pq = 0; such pairs belong to the degenerate slice")

    @property
    def A(self) -> Fraction:
        return (_norm2(self.p) - _norm2(self.q)) / 2

    def contains(self, a: ExactPoint, b: ExactPoint) -> bool:
        """Linear equation only; ``a`` and ``b`` are assumed to be on the circle."""
        return self.p.dot(a) == self.q.dot(b) + self.A


def curve_membership(a: ExactPoint, b: ExactPoint, curve: CircleCurve4D) -> bool:
    """True iff ``(a, b)`` lies on ``curve``; ``a`` and ``b`` must be on the unit circle."""
    off = [v for v in (a, b) if not on_unit_circle(v)]
    if off:
        raise OffCircleError("points off the unit circle: " + ", ".join(map(repr, off)))
    return curve.contains(a, b)


@dataclass(frozen=True, eq=False)
class CircleFamily:
    """Ordered pairs ``(p, q)`` of ``P2`` with ``|p| != |q|``; each gives one curve."""

    points: PointSet
    pairs: np.ndarray
    skipped: int

    @property
    def gamma_size(self) -> int:
        return len(self.pairs)

    def curve(self, k: int) -> CircleCurve4D:
        i, j = self.pairs[k]
        return CircleCurve4D(self.points[int(i)], self.points[int(j)])

    def curves(self) -> Iterable[CircleCurve4D]:
        for k in range(len(self.pairs)):
            yield self.curve(k)

    def dump(self) -> List[Dict]:
        out = []
        for c in self.curves():
            out.append({"p": [format_rational(c.p.x), format_rational(c.p.y)],
                        "q": [format_rational(c.q.x), format_rational(c.q.y)],
                        "A": format_rational(c.A)})
        return out


def build_circle_family(second: PointSet) -> CircleFamily:
    norms = [_norm2(p) for p in second]
    pairs, skipped = [], 0
    for i in range(len(second)):
        for j in range(len(second)):
            if i == j:
                continue
            if norms[i] == norms[j]:
                skipped += 1
            else:
                pairs.append((i, j))
    return CircleFamily(second, np.asarray(pairs, dtype=np.int64).reshape(-1, 2), skipped)


def count_incidences_circle(first: PointSet, family: CircleFamily) -> int:
    """Incidences between ``V = P1 x P1`` and the curve multiset.

    With everything scaled to integers the linear equation reads
    ``2 a.p - 2 b.q = |p|^2 - |q|^2``; per curve the number of ``(a, b)``
    solving it is a join of the value tallies of ``2 a.p`` and ``2 b.q``.
    """
    if not family.gamma_size or not len(first):
        return 0
    ((ax, ay), (px, py)), _ = integer_coordinates(first.points, family.points.points)
    m = len(family.points)
    dots = [[2 * (ax[a] * px[j] + ay[a] * py[j]) for a in range(len(ax))] for j in range(m)]
    tallies = [Counter(row) for row in dots]
    norms = [px[j] * px[j] + py[j] * py[j] for j in range(m)]
    total = 0
    for i, j in family.pairs.tolist():
        shift = norms[i] - norms[j]
        tp, tq = tallies[i], tallies[j]
        if len(tq) < len(tp):
            total += sum(c * tp.get(v + shift, 0) for v, c in tq.items())
        else:
            total += sum(c * tq.get(v - shift, 0) for v, c in tp.items())
    return total


# --------------------------------------------------------------------------
# pairwise intersections
# --------------------------------------------------------------------------

Mat = Tuple[Tuple[Fraction, Fraction], Tuple[Fraction, Fraction]]


def _det(m: Mat) -> Fraction:
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def _inv(m: Mat) -> Mat:
    d = _det(m)
    return ((m[1][1] / d, -m[0][1] / d), (-m[1][0] / d, m[0][0] / d))


def _mul(m: Mat, n: Mat) -> Mat:
    return tuple(tuple(sum(m[i][k] * n[k][j] for k in range(2)) for j in range(2)) for i in range(2))


def _apply(m: Mat, v: Tuple[Fraction, Fraction]) -> Tuple[Fraction, Fraction]:
    return (m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1])


def pair_matrices(c1: CircleCurve4D, c2: CircleCurve4D) -> Tuple[Mat, Mat, Tuple[Fraction, Fraction]]:
    """``M_pp'``, ``M_qq'`` and the vector ``(A_pq, A_p'q')``."""
    mp = ((c1.p.x, c1.p.y), (c2.p.x, c2.p.y))
    mq = ((c1.q.x, c1.q.y), (c2.q.x, c2.q.y))
    return mp, mq, (c1.A, c2.A)


def _rank(m: Mat) -> int:
    if _det(m) != 0:
        return 2
    return 1 if any(v != 0 for row in m for v in row) else 0


def _range_vector(m: Mat) -> Tuple[Fraction, Fraction]:
    """A spanning vector for the column space of a rank-1 matrix."""
    for j in range(2):
        col = (m[0][j], m[1][j])
        if col != (0, 0):
            return col
    raise DegenerateInputError("zero matrix has no range vector")


def _cross(u, v) -> Fraction:
    return u[0] * v[1] - u[1] * v[0]


def _line_circle(normal: Tuple[Fraction, Fraction], value: Fraction) -> Tuple[int, int]:
    """(real, complex) counts of points of the unit circle with ``normal . x = value``."""
    nn = normal[0] ** 2 + normal[1] ** 2
    if nn == 0:
        raise InfiniteIntersectionError("degenerate line")
    disc = nn - value * value
    real = 2 if disc > 0 else (1 if disc == 0 else 0)
    return real, (1 if disc == 0 else 2)


def _affine_image_count(lin: Mat, shift: Tuple[Fraction, Fraction]) -> Tuple[int, int]:
    """Count ``u`` on the circle with ``lin u + shift`` also on the circle.

    ``u`` runs over ``((1 - t^2), 2t) / (1 + t^2)``; clearing denominators
    gives a polynomial of degree at most four in ``t``.  The one circle point
    the parametrization misses, ``(-1, 0)``, is tested separately.
    """
    ux, uy = UniPoly([1, 0, -1]), UniPoly([0, 2])
    w = UniPoly([1, 0, 1])
    nx = lin[0][0] * ux + lin[0][1] * uy + shift[0] * w
    ny = lin[1][0] * ux + lin[1][1] * uy + shift[1] * w
    poly = nx * nx + ny * ny - w * w
    if not poly:
        raise InfiniteIntersectionError("affine image of the circle coincides with the circle")
    end = _apply(lin, (Fraction(-1), Fraction(0)))
    end = (end[0] + shift[0], end[1] + shift[1])
    at_end = int(end[0] ** 2 + end[1] ** 2 == 1)
    real = count_real_roots(poly) + at_end
    sf = square_free(poly)
    cplx = sf.degree
    if sf.degree >= 2 and not (sf % w):
        cplx -= 2  # t = +-i are the points at infinity, not solutions
    return real, cplx + at_end


@dataclass(frozen=True)
class IntersectionResult:
    count: int
    case: str
    complex_count: Optional[int] = None


def _check_pair(c1: CircleCurve4D, c2: CircleCurve4D) -> None:
    if (c1.p, c1.q) == (c2.p, c2.q):
        raise DegenerateInputError("the two curves come from the same pair (p, q)")
    _check_axes((c1.p, c1.q, c2.p, c2.q))


def intersection_count_4d(c1: CircleCurve4D, c2: CircleCurve4D) -> IntersectionResult:
    """Distinct real common points of two curves, following the matrix case analysis.

    Cases: ``"pp_invertible"`` (solve for ``a``), ``"qq_invertible"`` (solve
    for ``b``), ``"singular_point"`` (both matrices rank one, ranges meet in
    one point) and ``"singular_empty"``.  The remaining configuration, where
    the two ranges coincide and contain the offset vector, would give a
    one-dimensional intersection and raises :class:`InfiniteIntersectionError`.
    ``complex_count`` is the number of distinct complex solutions.
    """
    _check_pair(c1, c2)
    mp, mq, avec = pair_matrices(c1, c2)
    if _det(mp) != 0:
        inv = _inv(mp)
        real, cplx = _affine_image_count(_mul(inv, mq), _apply(inv, avec))
        return IntersectionResult(real, "pp_invertible", cplx)
    if _det(mq) != 0:
        inv = _inv(mq)
        shift = _apply(inv, avec)
        real, cplx = _affine_image_count(_mul(inv, mp), (-shift[0], -shift[1]))
        return IntersectionResult(real, "qq_invertible", cplx)
    if _rank(mp) == 0 or _rank(mq) == 0:
        raise DegenerateInputError("a zero matrix needs two points at the origin")
    u, w = _range_vector(mp), _range_vector(mq)
    det = -_cross(u, w)  # system s*u - r*w = A
    if det == 0:
        if _cross(u, avec) == 0:
            raise InfiniteIntersectionError("ranges coincide and contain A: the pairs must be equal")
        return IntersectionResult(0, "singular_empty", 0)
    s = (avec[0] * (-w[1]) - (-w[0]) * avec[1]) / det
    r = (u[0] * avec[1] - u[1] * avec[0]) / det
    z = (s * u[0], s * u[1])
    zb = (r * w[0], r * w[1])
    row_a = 0 if mp[0] != (0, 0) else 1
    row_b = 0 if mq[0] != (0, 0) else 1
    ra, ca = _line_circle(mp[row_a], z[row_a])
    rb, cb = _line_circle(mq[row_b], zb[row_b])
    return IntersectionResult(ra * rb, "singular_point", ca * cb)


def same_curve_conditions_check(p: ExactPoint, q: ExactPoint, p2: ExactPoint, q2: ExactPoint) -> bool:
    """All four conditions under which the two systems would share a line of solutions.

    Singular ``M_pp'`` and ``M_qq'``, equal ranges, and ``(A_pq, A_p'q')`` in
    that range.
    """
    _check_axes((p, q, p2, q2))
    c1, c2 = CircleCurve4D(p, q), CircleCurve4D(p2, q2)
    mp, mq, avec = pair_matrices(c1, c2)
    if _det(mp) != 0 or _det(mq) != 0:
        return False
    u, w = _range_vector(mp), _range_vector(mq)
    return _cross(u, w) == 0 and _cross(u, avec) == 0


def same_curve_conditions_polynomial(p: ExactPoint, q: ExactPoint, p2: ExactPoint, q2: ExactPoint) -> bool:
    """The same four conditions written as polynomial identities in the coordinates."""
    return (p.x * p2.y == p.y * p2.x
            and q.x * q2.y == q.y * q2.x
            and p.x * q2.x == q.x * p2.x
            and p.x * (_norm2(p2) - _norm2(q2)) == p2.x * (_norm2(p) - _norm2(q)))


def check_intersections_4d(pairs: Iterable[Tuple[CircleCurve4D, CircleCurve4D]]) -> PairCheckReport:
    """Run the intersection oracle over ``pairs``; anything above four is a violation."""
    best, count, bad = 0, 0, []
    cases: Counter = Counter()
    for c1, c2 in pairs:
        try:
            res = intersection_count_4d(c1, c2)
        except InfiniteIntersectionError:
            bad.append((c1, c2))
            cases["infinite"] += 1
            continue
        count += 1
        cases[res.case] += 1
        best = max(best, res.count)
        if res.count > 4:
            bad.append((c1, c2))
    return PairCheckReport(best, 4, count, tuple(bad), dict(cases))


def circle_pairs(family: CircleFamily, limit: int = 200, samples: int = 500,
                 seed: int = 0) -> List[Tuple[CircleCurve4D, CircleCurve4D]]:
    """All pairs of curves when there are at most ``limit``, else a seeded sample."""
    n = family.gamma_size
    if n <= limit:
        curves = list(family.curves())
        return list(itertools.combinations(curves, 2))
    rng = make_rng(seed)
    out = []
    while len(out) < samples:
        i, j = (int(v) for v in rng.integers(0, n, 2))
        if i != j:
            out.append((family.curve(i), family.curve(j)))
    return out


def _random_offaxis(rng, bits: int) -> ExactPoint:
    while True:
        p = ExactPoint(random_rational(rng, bits, nonzero=True), random_rational(rng, bits, nonzero=True))
        if not on_unit_circle(p):
            return p


def engineered_singular_pairs(count: int, seed: int = 0, bits: int = 4
                              ) -> List[Tuple[CircleCurve4D, CircleCurve4D]]:
    """Curve pairs with a singular ``M_pp'`` (``p' = lambda p``).

    Alternately ``q, q'`` are generic (``M_qq'`` invertible) or also scaled
    copies ``q' = mu q`` with ``mu != lambda`` (both matrices singular).
    """
    rng = make_rng(seed)
    out: List[Tuple[CircleCurve4D, CircleCurve4D]] = []
    while len(out) < count:
        p = _random_offaxis(rng, bits)
        q = _random_offaxis(rng, bits)
        lam = random_rational(rng, 2, nonzero=True)
        if lam == 1:
            continue
        p2 = ExactPoint(lam * p.x, lam * p.y)
        if len(out) % 2 == 0:
            q2 = _random_offaxis(rng, bits)
        else:
            mu = random_rational(rng, 2, nonzero=True)
            if mu == lam:
                continue
            q2 = ExactPoint(mu * q.x, mu * q.y)
        try:
            c1, c2 = CircleCurve4D(p, q), CircleCurve4D(p2, q2)
        except DegenerateInputError:
            continue
        if (p, q) != (p2, q2):
            out.append((c1, c2))
    return out


# --------------------------------------------------------------------------
# ledger
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class CircleLedger:
    n: int
    p1: int
    stats: QuadrupleStats
    incidences: int
    family: CircleFamily = field(repr=False)
    pair_check: Optional[PairCheckReport] = None

    @property
    def alpha(self) -> Optional[float]:
        return math.log(self.p1) / math.log(self.n) if self.n > 1 and self.p1 else None

    def violations(self) -> List[str]:
        out = list(self.stats.violations())
        if self.incidences != self.stats.q2:
            out.append(f"q2 ({self.stats.q2}) != incidences ({self.incidences})")
        if self.pair_check is not None and not self.pair_check.ok:
            out.append("pairwise curve intersection above four")
        return out

    def to_json(self) -> Dict:
        s = self.stats
        out = {"n": self.n, "alpha": self.alpha, "D": s.D, "q_total": s.q_total, "q1_concentric": s.q1,
               "q2": s.q2, "incidences": self.incidences, "gamma_size": self.family.gamma_size,
               "skipped_pairs": self.family.skipped,
               "cauchy_schwarz_lower": format_rational(s.cauchy_schwarz_lower)}
        if self.pair_check is not None:
            out["pair_check"] = self.pair_check.to_json()
        out["violations"] = self.violations()
        return out


def circle_ledger(first: PointSet, second: PointSet, check_pairs: bool = False,
                  seed: int = 0) -> CircleLedger:
    """Run the full circle analysis for a split ``P1`` (unit circle) / ``P2``."""
    stats = build_quadruple_stats_circle(first, second)
    family = build_circle_family(second)
    inc = count_incidences_circle(first, family)
    report = check_intersections_4d(circle_pairs(family, seed=seed)) if check_pairs else None
    return CircleLedger(len(first) + len(second), len(first), stats, inc, family, report)
