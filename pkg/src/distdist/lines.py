"""Quadruples, hyperbolas and incidences for a point set with a rich line.

The rich line is the x-axis: ``P1`` lies on it and ``P2`` avoids it.  For
``p, q`` in ``P2`` the hyperbola

    f_pq(x, y) = (x - p_x)^2 + p_y^2 - (y - q_x)^2 - q_y^2

vanishes at ``(a_x, b_x)`` exactly when ``|ap| = |bq|``, which turns the
non-degenerate quadruples into point-curve incidences.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np

from .distances import bipartite_distances, fits_int64, integer_coordinates
from .exact import BiPoly, DegenerateInputError, UniPoly, count_real_roots, discriminant, format_rational
from .generators import ExactPoint, PointSet
from .quadruples import ChoiceReport, QuadrupleStats, choice_bound, quadruple_stats


class MisplacedPointError(ValueError):
    pass


class InfiniteIntersectionError(ArithmeticError):
    pass


def _check_line_split(first: PointSet, second: PointSet) -> None:
    off = [p for p in first if p.y != 0]
    if off:
        raise MisplacedPointError("P1 points off the x-axis: " + ", ".join(map(repr, off[:5])))
    on = [p for p in second if p.y == 0]
    if on:
        raise MisplacedPointError("P2 points on the x-axis: " + ", ".join(map(repr, on[:5])))


def _y2(p: ExactPoint) -> Fraction:
    return p.y * p.y


def build_quadruple_stats(first: PointSet, second: PointSet) -> QuadrupleStats:
    """Quadruple counts for ``P1`` on the x-axis; the degenerate slice has ``p_y^2 = q_y^2``."""
    _check_line_split(first, second)
    return quadruple_stats(bipartite_distances(first, second), _y2)


def q1_choice_bound_check(first: PointSet, second: PointSet) -> ChoiceReport:
    """At most four ``q`` share ``|p_y|`` with ``p`` and satisfy ``|ap| = |bq|``."""
    _check_line_split(first, second)
    return choice_bound(first, second, _y2, bound=4)


# --------------------------------------------------------------------------
# hyperbolas
# --------------------------------------------------------------------------

ClassKey = Tuple[Fraction, Fraction, Fraction]


@dataclass(frozen=True)
class HyperbolaCurve:
    p: ExactPoint
    q: ExactPoint

    def __post_init__(self):
        if self.p.y * self.p.y == self.q.y * self.q.y:
            raise DegenerateInputError("p_y^2 == q_y^2 does not give a non-degenerate hyperbola")

    @property
    def class_key(self) -> ClassKey:
        return (self.p.x, self.q.x, self.q.y * self.q.y - self.p.y * self.p.y)

    @property
    def poly(self) -> BiPoly:
        x, y = BiPoly.var(0), BiPoly.var(1)
        return (x - self.p.x) ** 2 + self.p.y ** 2 - (y - self.q.x) ** 2 - self.q.y ** 2

    def __call__(self, x, y) -> Fraction:
        x, y = Fraction(x), Fraction(y)
        return (x - self.p.x) ** 2 + self.p.y ** 2 - (y - self.q.x) ** 2 - self.q.y ** 2


@dataclass(frozen=True, eq=False)
class HyperbolaFamily:
    """The multiset of hyperbolas over ordered pairs of ``P2``, grouped by point set.

    Members of class ``k`` are ``pairs[offsets[k]:offsets[k + 1]]`` (index
    pairs into ``points``).
    """

    points: PointSet
    class_keys: Tuple[ClassKey, ...]
    offsets: np.ndarray
    pairs: np.ndarray
    skipped: int

    @property
    def multiplicities(self) -> np.ndarray:
        return np.diff(self.offsets)

    @property
    def t(self) -> int:
        return int(self.multiplicities.max()) if len(self.class_keys) else 0

    @property
    def gamma_size(self) -> int:
        return int(self.offsets[-1])

    @property
    def distinct(self) -> int:
        return len(self.class_keys)

    def members(self, k: int) -> List[HyperbolaCurve]:
        return [HyperbolaCurve(self.points[int(i)], self.points[int(j)])
                for i, j in self.pairs[self.offsets[k]:self.offsets[k + 1]]]

    def representative(self, k: int) -> HyperbolaCurve:
        i, j = self.pairs[self.offsets[k]]
        return HyperbolaCurve(self.points[int(i)], self.points[int(j)])

    def curves(self) -> Iterable[HyperbolaCurve]:
        for i, j in self.pairs:
            yield HyperbolaCurve(self.points[int(i)], self.points[int(j)])

    def multiplicity_of(self, key: ClassKey) -> int:
        try:
            k = self.class_keys.index(tuple(Fraction(v) for v in key))
        except ValueError:
            return 0
        return int(self.multiplicities[k])

    def dump(self) -> List[Dict]:
        """Curve list with class keys, for external audit."""
        out = []
        for k, key in enumerate(self.class_keys):
            for c in self.members(k):
                out.append({"p": [format_rational(c.p.x), format_rational(c.p.y)],
                            "q": [format_rational(c.q.x), format_rational(c.q.y)],
                            "class_key": [format_rational(v) for v in key]})
        return out


def build_hyperbola_family(second: PointSet) -> HyperbolaFamily:
    """All ``gamma_pq`` for ordered ``p != q`` in ``P2`` with ``p_y^2 != q_y^2``."""
    on = [p for p in second if p.y == 0]
    if on:
        raise MisplacedPointError("P2 points on the x-axis: " + ", ".join(map(repr, on[:5])))
    n = len(second)
    [(xs, ys)], scale = integer_coordinates(second.points)
    y2 = [y * y for y in ys]
    if n < 2:
        return HyperbolaFamily(second, (), np.zeros(1, dtype=np.int64), np.zeros((0, 2), dtype=np.int64), 0)
    if fits_int64(xs, ys):
        x = np.asarray(xs, dtype=np.int64)
        yy = np.asarray(y2, dtype=np.int64)
        ii, jj = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
        ii, jj = ii.ravel(), jj.ravel()
        keep = ii != jj
        ii, jj = ii[keep], jj[keep]
        good = yy[ii] != yy[jj]
        skipped = int((~good).sum())
        ii, jj = ii[good], jj[good]
        c = yy[jj] - yy[ii]
        order = np.lexsort((jj, ii, c, x[jj], x[ii]))
        ii, jj, c = ii[order], jj[order], c[order]
        kx, ky, kc = x[ii], x[jj], c
        if len(ii):
            brk = np.flatnonzero((kx[1:] != kx[:-1]) | (ky[1:] != ky[:-1]) | (kc[1:] != kc[:-1])) + 1
            starts = np.concatenate(([0], brk))
        else:
            starts = np.zeros(0, dtype=np.int64)
        offsets = np.concatenate((starts, [len(ii)])).astype(np.int64)
        s2 = scale * scale
        keys = tuple((Fraction(int(kx[s]), scale), Fraction(int(ky[s]), scale), Fraction(int(kc[s]), s2))
                     for s in starts)
        pairs = np.stack([ii, jj], axis=1).astype(np.int64)
    else:
        groups: Dict[tuple, List[Tuple[int, int]]] = defaultdict(list)
        skipped = 0
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                if y2[i] == y2[j]:
                    skipped += 1
                    continue
                groups[(xs[i], xs[j], y2[j] - y2[i])].append((i, j))
        s2 = scale * scale
        ordered = sorted(groups)
        keys = tuple((Fraction(a, scale), Fraction(b, scale), Fraction(c, s2)) for a, b, c in ordered)
        flat = [pr for k in ordered for pr in groups[k]]
        pairs = np.asarray(flat, dtype=np.int64).reshape(-1, 2)
        offsets = np.concatenate(([0], np.cumsum([len(groups[k]) for k in ordered]))).astype(np.int64)
    return HyperbolaFamily(second, keys, offsets, pairs, skipped)


def incidence_points(first: PointSet) -> List[Tuple[Fraction, Fraction]]:
    """The grid ``V = {(a_x, b_x) : a, b in P1}``."""
    xs = [a.x for a in first]
    return [(ax, bx) for ax in xs for bx in xs]


def count_incidences_line(first: PointSet, family: HyperbolaFamily) -> int:
    """Incidences between ``V = P1_x x P1_x`` and the hyperbola multiset.

    Each distinct hyperbola is evaluated through one representative; since
    ``f_pq(x, y) = F(x) - G(y)`` separates, the zeros on the grid are counted
    by matching the value histograms of ``(a_x - p_x)^2`` and
    ``(b_x - q_x)^2 + c`` over ``P1``.
    """
    if family.distinct == 0 or not len(first):
        return 0
    reps = [family.representative(k) for k in range(family.distinct)]
    ((ax_, _), (px_, _), (qx_, _)), scale = integer_coordinates(
        first.points, [r.p for r in reps], [r.q for r in reps])
    s2 = scale * scale
    cs = [int(key[2] * s2) for key in family.class_keys]
    mult = family.multiplicities
    total = 0
    by_xpair: Dict[Tuple[int, int], List[int]] = defaultdict(list)
    for k in range(family.distinct):
        by_xpair[(px_[k], qx_[k])].append(k)
    fast = fits_int64(ax_, px_, qx_) and all(abs(c) < 2 ** 60 for c in cs)
    hist_cache: Dict[int, Tuple[np.ndarray, np.ndarray]] = {}

    def hist(c: int):
        if c not in hist_cache:
            if fast:
                d = np.asarray(ax_, dtype=np.int64) - c
                v, n = np.unique(d * d, return_counts=True)
            else:
                v, n = np.unique(np.array([(a - c) ** 2 for a in ax_], dtype=object), return_counts=True)
            hist_cache[c] = (v, n.astype(np.int64))
        return hist_cache[c]

    for (px, qx), ks in by_xpair.items():
        vp, np_ = hist(px)
        vq, nq = hist(qx)
        if fast:
            targets = vp[None, :] - np.asarray([cs[k] for k in ks], dtype=np.int64)[:, None]
            idx = np.searchsorted(vq, targets)
            idx_c = np.minimum(idx, len(vq) - 1)
            hit = vq[idx_c] == targets
            per = (np_[None, :] * np.where(hit, nq[idx_c], 0)).sum(axis=1)
            total += int((per * mult[ks]).sum())
        else:
            qtab = dict(zip(vq.tolist(), nq.tolist()))
            for k in ks:
                inc = sum(int(cp) * qtab.get(u - cs[k], 0) for u, cp in zip(vp.tolist(), np_.tolist()))
                total += inc * int(mult[k])
    return total


# --------------------------------------------------------------------------
# multiplicity and sumset analysis
# --------------------------------------------------------------------------

def max_vertical(points: PointSet) -> Tuple[Optional[Fraction], int]:
    """The x-coordinate of the richest vertical line and its point count."""
    if not len(points):
        return None, 0
    x, c = max(Counter(p.x for p in points).items(), key=lambda kv: (kv[1], -kv[0]))
    return x, c


@dataclass(frozen=True)
class MultiplicityReport:
    t: int
    v_max: int
    witness: Optional[ClassKey]

    @property
    def ok(self) -> bool:
        return self.t <= 2 * self.v_max

    def to_json(self) -> Dict:
        return {"t": self.t, "v_max": self.v_max, "ok": self.ok,
                "witness": None if self.witness is None else [format_rational(v) for v in self.witness]}


def multiplicity_vs_vertical_lines(second: PointSet, family: Optional[HyperbolaFamily] = None) -> MultiplicityReport:
    """Compare the largest hyperbola multiplicity with twice the richest vertical line."""
    family = family if family is not None else build_hyperbola_family(second)
    _, v = max_vertical(second)
    if family.distinct == 0:
        return MultiplicityReport(0, v, None)
    k = int(np.argmax(family.multiplicities))
    return MultiplicityReport(family.t, v, family.class_keys[k])


@dataclass(frozen=True)
class EnrReport:
    """Sizes in the sumset inequality ``|A - A| * |A^2 + B^2| >~ n^{3/2} (n |B^2|)^{1/2}``."""

    a_size: int
    b_squares: int
    diff_size: int
    square_sum_size: int

    @property
    def product(self) -> int:
        return self.diff_size * self.square_sum_size

    @property
    def maximum(self) -> int:
        return max(self.diff_size, self.square_sum_size)

    @property
    def rhs(self) -> float:
        """``n^{3/2} (|C||D|)^{1/2}`` with ``C = -A`` and ``D = B^2`` (constant 1)."""
        return self.a_size ** 1.5 * math.sqrt(self.a_size * self.b_squares)

    @property
    def ratio(self) -> float:
        return self.product / self.rhs if self.rhs else math.inf

    def to_json(self) -> Dict:
        return {"A": self.a_size, "B_squares": self.b_squares, "diff": self.diff_size,
                "square_sum": self.square_sum_size, "product": self.product,
                "max": self.maximum, "rhs": self.rhs, "ratio": self.ratio}


def enr_products(a_values: Iterable, b_values: Iterable) -> EnrReport:
    """Exact ``|A - A|`` and ``|A^2 + B^2|``."""
    A = {Fraction(v) for v in a_values}
    B = {Fraction(v) for v in b_values}
    if not A or not B:
        raise ValueError("A and B must be nonempty")
    diff = {a - b for a in A for b in A}
    A2 = {a * a for a in A}
    B2 = {b * b for b in B}
    sq = {u + v for u in A2 for v in B2}
    return EnrReport(len(A), len(B2), len(diff), len(sq))


def enr_for_split(first: PointSet, second: PointSet) -> Optional[EnrReport]:
    """Sumset sizes for ``P1`` against the richest vertical line of ``P2``.

    Coordinates are taken relative to where that vertical line meets the
    x-axis, so ``A - A`` are distances within ``P1`` and ``A^2 + B^2`` the
    squared distances from ``P1`` to that line's points.
    """
    vx, _ = max_vertical(second)
    if vx is None or not len(first):
        return None
    return enr_products([a.x - vx for a in first], [p.y for p in second if p.x == vx])


# --------------------------------------------------------------------------
# degrees of freedom
# --------------------------------------------------------------------------

def hyperbola_intersections(c1: HyperbolaCurve, c2: HyperbolaCurve) -> int:
    """Number of distinct real intersection points of two distinct hyperbolas.

    The difference of the two equations is linear; it is solved for one
    variable and substituted back, leaving a univariate polynomial of degree
    at most two whose distinct real roots are the intersections.
    """
    f1 = c1.poly
    g = f1 - c2.poly
    if not g:
        raise DegenerateInputError("curves share a class key; the difference vanishes identically")
    if g.total_degree > 1:
        raise AssertionError("difference of two hyperbolas of this family must be linear")
    gx = g.terms.get((1, 0), Fraction(0))
    gy = g.terms.get((0, 1), Fraction(0))
    g0 = g.terms.get((0, 0), Fraction(0))
    if gx == 0 and gy == 0:
        return 0
    if gy != 0:
        h = f1.substitute(1, UniPoly([-g0 / gy, -gx / gy]))
    else:
        h = f1.partial_eval(0, -g0 / gx)
    if not h:
        raise InfiniteIntersectionError("a line is contained in the hyperbola")
    if h.degree == 2:
        d = discriminant(h)
        return 2 if d > 0 else (1 if d == 0 else 0)
    return count_real_roots(h)


@dataclass(frozen=True)
class PairCheckReport:
    maximum: int
    bound: int
    pairs: int
    violations: Tuple = field(default=(), repr=False)
    by_case: Dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations and self.maximum <= self.bound

    def to_json(self) -> Dict:
        return {"maximum": self.maximum, "bound": self.bound, "pairs": self.pairs, "ok": self.ok,
                "violations": len(self.violations), "cases": dict(sorted(self.by_case.items()))}


def degrees_of_freedom_check_line(pairs: Iterable[Tuple[HyperbolaCurve, HyperbolaCurve]]) -> PairCheckReport:
    """Intersect each pair of distinct hyperbolas and confirm at most two points."""
    best, count, bad = 0, 0, []
    for c1, c2 in pairs:
        if c1.class_key == c2.class_key:
            raise DegenerateInputError("pair of equal curves given to the intersection check")
        try:
            k = hyperbola_intersections(c1, c2)
        except InfiniteIntersectionError:
            bad.append((c1, c2))
            continue
        count += 1
        best = max(best, k)
        if k > 2:
            bad.append((c1, c2))
    return PairCheckReport(best, 2, count, tuple(bad))


def hyperbola_pairs(family: HyperbolaFamily, limit: int = 200, samples: int = 10_000,
                    seed: int = 0) -> List[Tuple[HyperbolaCurve, HyperbolaCurve]]:
    """All pairs of distinct hyperbolas when there are at most ``limit``, else a seeded sample."""
    reps = [family.representative(k) for k in range(family.distinct)]
    if len(reps) <= limit:
        return list(itertools.combinations(reps, 2))
    rng = np.random.Generator(np.random.PCG64(seed))
    out = []
    while len(out) < samples:
        i, j = (int(v) for v in rng.integers(0, len(reps), 2))
        if i != j:
            out.append((reps[i], reps[j]))
    return out


def common_curves_for_triples(family: HyperbolaFamily,
                              triples: Iterable[Tuple[Tuple[Fraction, Fraction], ...]]) -> int:
    """Largest number of distinct hyperbolas through any of the given point triples."""
    reps = [family.representative(k) for k in range(family.distinct)]
    best = 0
    for tri in triples:
        best = max(best, sum(1 for c in reps if all(c(x, y) == 0 for x, y in tri)))
    return best


# --------------------------------------------------------------------------
# ledger
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class LineLedger:
    n: int
    p1: int
    stats: QuadrupleStats
    incidences: int
    family: HyperbolaFamily = field(repr=False)
    multiplicity: MultiplicityReport
    enr: Optional[EnrReport]

    @property
    def alpha(self) -> Optional[float]:
        return math.log(self.p1) / math.log(self.n) if self.n > 1 and self.p1 else None

    def violations(self) -> List[str]:
        out = list(self.stats.violations())
        if self.incidences != self.stats.q2:
            out.append(f"q2 ({self.stats.q2}) != incidences ({self.incidences})")
        if not self.multiplicity.ok:
            out.append("multiplicity exceeds twice the richest vertical line")
        return out

    def to_json(self) -> Dict:
        s = self.stats
        return {"n": self.n, "alpha": self.alpha, "D": s.D, "q_total": s.q_total, "q1": s.q1, "q2": s.q2,
                "incidences": self.incidences, "t": self.family.t, "gamma_size": self.family.gamma_size,
                "gamma_distinct": self.family.distinct, "skipped_pairs": self.family.skipped,
                "v_max": self.multiplicity.v_max,
                "cauchy_schwarz_lower": format_rational(s.cauchy_schwarz_lower),
                "enr": None if self.enr is None else self.enr.to_json(),
                "violations": self.violations()}


def line_ledger(first: PointSet, second: PointSet) -> LineLedger:
    """Run the full line analysis for a split ``P1`` (x-axis) / ``P2``."""
    stats = build_quadruple_stats(first, second)
    family = build_hyperbola_family(second)
    inc = count_incidences_line(first, family)
    mult = multiplicity_vs_vertical_lines(second, family)
    return LineLedger(len(first) + len(second), len(first), stats, inc, family, mult,
                      enr_for_split(first, second))
