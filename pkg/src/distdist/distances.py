"""Distinct distances, bipartite distance classes and heavy lines/circles.

Every comparison is made on squared distances.  Points are first scaled to a
common denominator so that all keys are integers; when the scaled
coordinates are small enough that no intermediate can leave int64, the
counting loops run vectorized in numpy, otherwise they fall back to Python
integers.  Both paths produce identical results.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .exact import format_rational, lcm_all
from .generators import ExactPoint, PointSet

# |coordinate| below this keeps every squared distance, dot product and
# circumcircle numerator used here strictly inside int64.
_INT64_COORD_BOUND = 2 ** 29


class TooFewPointsError(ValueError):
    pass


class OverlapError(ValueError):
    pass


def integer_coordinates(*point_sets: Sequence[ExactPoint]) -> Tuple[List[Tuple[List[int], List[int]]], int]:
    """Scale all points by the lcm ``L`` of their denominators.

    Returns one ``(xs, ys)`` pair of integer lists per input set, and ``L``.
    """
    scale = lcm_all(c.denominator for pts in point_sets for p in pts for c in (p.x, p.y))
    out = []
    for pts in point_sets:
        xs = [p.x.numerator * (scale // p.x.denominator) for p in pts]
        ys = [p.y.numerator * (scale // p.y.denominator) for p in pts]
        out.append((xs, ys))
    return out, scale


def fits_int64(*columns: Sequence[int]) -> bool:
    return all(abs(v) < _INT64_COORD_BOUND for col in columns for v in col)


def as_array(values: Sequence[int], fast: bool) -> np.ndarray:
    return np.asarray(values, dtype=np.int64) if fast else np.array(list(values), dtype=object)


# --------------------------------------------------------------------------
# distinct distances
# --------------------------------------------------------------------------

def squared_distance_set(points: PointSet) -> Tuple[set, int]:
    """All squared distances as scaled integers, and the scale ``L**2``."""
    [(xs, ys)], scale = integer_coordinates(points.points)
    n = len(xs)
    if fits_int64(xs, ys):
        x = np.asarray(xs, dtype=np.int64)
        y = np.asarray(ys, dtype=np.int64)
        chunks = []
        block = max(1, 2_000_000 // max(n, 1))
        for r0 in range(0, n - 1, block):
            r1 = min(n - 1, r0 + block)
            rows = np.arange(r0, r1)
            dx = x[rows, None] - x[None, :]
            dy = y[rows, None] - y[None, :]
            d = dx * dx + dy * dy
            mask = np.arange(n)[None, :] > rows[:, None]
            chunks.append(np.unique(d[mask]))
        values = set(np.unique(np.concatenate(chunks)).tolist()) if chunks else set()
    else:
        values = set()
        for i in range(n):
            xi, yi = xs[i], ys[i]
            for j in range(i + 1, n):
                dx, dy = xs[j] - xi, ys[j] - yi
                values.add(dx * dx + dy * dy)
    return values, scale * scale


def distinct_distances(points: PointSet) -> int:
    """Number of distinct distances among unordered pairs of ``points``."""
    if len(points) < 2:
        raise TooFewPointsError("distinct distances need at least two points")
    return len(squared_distance_set(points)[0])


def distance_values(points: PointSet) -> List[Fraction]:
    """Sorted exact squared distances realized by ``points``."""
    values, scale = squared_distance_set(points)
    return sorted(Fraction(v, scale) for v in values)


# --------------------------------------------------------------------------
# bipartite distance classes
# --------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class DistanceClassPartition:
    """Partition of ``first x second`` by squared distance.

    ``keys[i, j]`` is the squared distance between ``first[i]`` and
    ``second[j]`` multiplied by ``scale``; ``class_ids[i, j]`` numbers the
    classes in increasing order of distance.
    """

    first: PointSet
    second: PointSet
    keys: np.ndarray
    scale: int
    class_keys: np.ndarray
    class_ids: np.ndarray
    sizes: np.ndarray

    @property
    def D(self) -> int:
        return len(self.sizes)

    def distances(self) -> List[Fraction]:
        return [Fraction(int(k), self.scale) for k in self.class_keys]

    def class_sizes(self) -> Dict[Fraction, int]:
        return {Fraction(int(k), self.scale): int(c) for k, c in zip(self.class_keys, self.sizes)}

    @property
    def classes(self) -> Dict[Fraction, List[Tuple[ExactPoint, ExactPoint]]]:
        out: Dict[Fraction, List[Tuple[ExactPoint, ExactPoint]]] = {d: [] for d in self.distances()}
        dists = self.distances()
        for i, a in enumerate(self.first):
            for j, p in enumerate(self.second):
                out[dists[int(self.class_ids[i, j])]].append((a, p))
        return out

    def total_pairs(self) -> int:
        return int(sum(int(s) for s in self.sizes))


def bipartite_distances(first: PointSet, second: PointSet) -> DistanceClassPartition:
    """Distance classes ``E_i`` of all cross pairs ``(a, p)`` in ``first x second``."""
    if not len(first) or not len(second):
        raise TooFewPointsError("both point sets must be nonempty")
    overlap = set(first.points) & set(second.points)
    if overlap:
        raise OverlapError("point sets overlap: " + ", ".join(map(repr, sorted(overlap))))
    ((x1, y1), (x2, y2)), scale = integer_coordinates(first.points, second.points)
    fast = fits_int64(x1, y1, x2, y2)
    ax, ay = as_array(x1, fast)[:, None], as_array(y1, fast)[:, None]
    px, py = as_array(x2, fast)[None, :], as_array(y2, fast)[None, :]
    dx, dy = ax - px, ay - py
    keys = dx * dx + dy * dy
    uniq, inverse, counts = np.unique(keys.ravel(), return_inverse=True, return_counts=True)
    return DistanceClassPartition(first, second, keys, scale * scale, uniq,
                                  inverse.reshape(keys.shape).astype(np.int64), counts.astype(np.int64))


# --------------------------------------------------------------------------
# heavy lines
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Line:
    """``y = slope*x + intercept``, or ``x = intercept`` when ``slope`` is None."""

    slope: Optional[Fraction]
    intercept: Fraction

    @property
    def vertical(self) -> bool:
        return self.slope is None

    def contains(self, p: ExactPoint) -> bool:
        if self.slope is None:
            return p.x == self.intercept
        return p.y == self.slope * p.x + self.intercept

    def to_json(self) -> Dict:
        return {"slope": None if self.slope is None else format_rational(self.slope),
                "intercept": format_rational(self.intercept)}


def _line_through(p: ExactPoint, dx: int, dy: int) -> Line:
    if dx == 0:
        return Line(None, p.x)
    slope = Fraction(dy, dx)
    return Line(slope, p.y - slope * p.x)


def _normalize_directions(dx: np.ndarray, dy: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    g = np.gcd(dx, dy)
    dx, dy = dx // g, dy // g
    flip = (dx < 0) | ((dx == 0) & (dy < 0))
    return np.where(flip, -dx, dx), np.where(flip, -dy, dy)


def max_collinear(points: PointSet) -> Tuple[Line, int]:
    """A line carrying the most points of ``points``, and that count."""
    n = len(points)
    if n < 2:
        raise TooFewPointsError("a line needs two points")
    [(xs, ys)], _ = integer_coordinates(points.points)
    best, best_i, best_dir = 1, 0, (1, 0)
    if fits_int64(xs, ys):
        x = np.asarray(xs, dtype=np.int64)
        y = np.asarray(ys, dtype=np.int64)
        for i in range(n - 1):
            if n - i <= best:
                break
            dx, dy = _normalize_directions(x[i + 1:] - x[i], y[i + 1:] - y[i])
            code = dx * (2 ** 31) + (dy + 2 ** 30)
            vals, counts = np.unique(code, return_counts=True)
            k = int(np.argmax(counts))
            if counts[k] + 1 > best:
                best, best_i = int(counts[k]) + 1, i
                c = int(vals[k])
                best_dir = (c >> 31, (c & (2 ** 31 - 1)) - 2 ** 30)
    else:
        for i in range(n - 1):
            if n - i <= best:
                break
            tally: Counter = Counter()
            for j in range(i + 1, n):
                dx, dy = xs[j] - xs[i], ys[j] - ys[i]
                g = math.gcd(dx, dy)
                dx, dy = dx // g, dy // g
                if dx < 0 or (dx == 0 and dy < 0):
                    dx, dy = -dx, -dy
                tally[(dx, dy)] += 1
            d, c = max(tally.items(), key=lambda kv: kv[1])
            if c + 1 > best:
                best, best_i, best_dir = c + 1, i, d
    return _line_through(points[best_i], *best_dir), best


# --------------------------------------------------------------------------
# heavy circles
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Circle:
    center: ExactPoint
    radius2: Fraction

    def contains(self, p: ExactPoint) -> bool:
        return p.dist2(self.center) == self.radius2

    def to_json(self) -> Dict:
        return {"center": [format_rational(self.center.x), format_rational(self.center.y)],
                "radius2": format_rational(self.radius2)}


def _circle_from_parameter(points: PointSet, i: int, j: int, num: int, den: int) -> Circle:
    # center = P_i + u/2 + (num/den) * perp(u), with u = P_j - P_i
    pi, pj = points[i], points[j]
    ux, uy = pj.x - pi.x, pj.y - pi.y
    s = Fraction(num, den)
    center = ExactPoint(pi.x + ux / 2 - s * uy, pi.y + uy / 2 + s * ux)
    return Circle(center, center.dist2(pi))


def max_concyclic(points: PointSet) -> Optional[Tuple[Circle, int]]:
    """A circle through the most points of ``points``; None if all are collinear.

    For every pair ``i < j`` the circles through ``P_i`` and ``P_j`` are
    keyed by the position of their center on the perpendicular bisector,
    so counting equal keys over ``k > j`` counts points on each circle.
    """
    n = len(points)
    if n < 3:
        raise TooFewPointsError("a circle needs three points")
    [(xs, ys)], _ = integer_coordinates(points.points)
    best = None  # (count, i, j, num, den)
    if fits_int64(xs, ys):
        x = np.asarray(xs, dtype=np.int64)
        y = np.asarray(ys, dtype=np.int64)
        for i in range(n - 2):
            if best is not None and n - i <= best[0]:
                break
            jj, kk = np.triu_indices(n - i - 1, 1)
            jj, kk = jj + i + 1, kk + i + 1
            ux, uy = x[jj] - x[i], y[jj] - y[i]
            wx, wy = x[kk] - x[i], y[kk] - y[i]
            den = 2 * (ux * wy - uy * wx)
            ok = den != 0
            if not ok.any():
                continue
            jj, ux, uy, wx, wy, den = jj[ok], ux[ok], uy[ok], wx[ok], wy[ok], den[ok]
            num = wx * wx + wy * wy - (ux * wx + uy * wy)
            g = np.gcd(num, den)
            num, den = num // g, den // g
            neg = den < 0
            num, den = np.where(neg, -num, num), np.where(neg, -den, den)
            rows = np.ascontiguousarray(np.stack([jj.astype(np.int64), num, den], axis=1))
            view = rows.view(np.dtype((np.void, rows.dtype.itemsize * 3))).ravel()
            _, first, counts = np.unique(view, return_index=True, return_counts=True)
            k = int(np.argmax(counts))
            if best is None or counts[k] + 2 > best[0]:
                r = rows[first[k]]
                best = (int(counts[k]) + 2, i, int(r[0]), int(r[1]), int(r[2]))
    else:
        for i in range(n - 2):
            if best is not None and n - i <= best[0]:
                break
            for j in range(i + 1, n - 1):
                ux, uy = xs[j] - xs[i], ys[j] - ys[i]
                tally: Counter = Counter()
                for k in range(j + 1, n):
                    wx, wy = xs[k] - xs[i], ys[k] - ys[i]
                    den = 2 * (ux * wy - uy * wx)
                    if den == 0:
                        continue
                    num = wx * wx + wy * wy - (ux * wx + uy * wy)
                    g = math.gcd(num, den)
                    num, den = num // g, den // g
                    if den < 0:
                        num, den = -num, -den
                    tally[(num, den)] += 1
                if tally:
                    key, c = max(tally.items(), key=lambda kv: kv[1])
                    if best is None or c + 2 > best[0]:
                        best = (c + 2, i, j, key[0], key[1])
    if best is None:
        return None
    count, i, j, num, den = best
    return _circle_from_parameter(points, i, j, num, den), count


# --------------------------------------------------------------------------
# reports
# --------------------------------------------------------------------------

def richness_exponent(count: int, n: int) -> Optional[float]:
    """``log(count) / log(n)``; None when undefined."""
    if n < 2 or count < 1:
        return None
    return math.log(count) / math.log(n)


@dataclass(frozen=True)
class HeavyCurveReport:
    n: int
    D: int
    best_line: Line
    line_count: int
    best_circle: Optional[Circle]
    circle_count: int

    @property
    def line_exponent(self) -> Optional[float]:
        return richness_exponent(self.line_count, self.n)

    @property
    def circle_exponent(self) -> Optional[float]:
        return richness_exponent(self.circle_count, self.n) if self.best_circle else None

    def to_json(self) -> Dict:
        return {
            "n": self.n,
            "D": self.D,
            "heavy_line": {"count": self.line_count, "exponent": self.line_exponent,
                           "line": self.best_line.to_json()},
            "heavy_circle": {"count": self.circle_count if self.best_circle else None,
                             "exponent": self.circle_exponent,
                             "circle": self.best_circle.to_json() if self.best_circle else None},
        }


def heavy_curve_report(points: PointSet, circles: bool = True) -> HeavyCurveReport:
    line, lc = max_collinear(points)
    circ = max_concyclic(points) if circles and len(points) >= 3 else None
    return HeavyCurveReport(len(points), distinct_distances(points), line, lc,
                            circ[0] if circ else None, circ[1] if circ else 0)
