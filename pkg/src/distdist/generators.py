"""Exact planar point configurations and their file formats.

All randomness goes through :func:`make_rng`, a numpy ``Generator`` over the
PCG64 bit generator seeded with a single 64-bit integer, so a seed fully
determines every configuration.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .exact import RationalLike, format_rational, parse_rational, to_rational


@dataclass(frozen=True, order=True)
class ExactPoint:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", to_rational(self.x))
        object.__setattr__(self, "y", to_rational(self.y))

    def __iter__(self):
        yield self.x
        yield self.y

    def __repr__(self) -> str:
        return f"({format_rational(self.x)}, {format_rational(self.y)})"

    def norm2(self) -> Fraction:
        return self.x * self.x + self.y * self.y

    def dist2(self, other: "ExactPoint") -> Fraction:
        dx = self.x - other.x
        dy = self.y - other.y
        return dx * dx + dy * dy

    def dot(self, other: "ExactPoint") -> Fraction:
        return self.x * other.x + self.y * other.y


PointLike = Union[ExactPoint, Tuple[RationalLike, RationalLike]]


def as_point(p: PointLike) -> ExactPoint:
    return p if isinstance(p, ExactPoint) else ExactPoint(*p)


class DuplicatePointError(ValueError):
    def __init__(self, duplicates: Sequence[ExactPoint]):
        self.duplicates = list(duplicates)
        super().__init__("duplicate points: " + ", ".join(map(repr, self.duplicates)))


@dataclass(frozen=True)
class PointSet:
    """Ordered set of distinct exact points.

    ``parts`` optionally tags every point with the label of the piece it
    came from (see :func:`composite`), so a split can be recovered exactly.
    """

    points: Tuple[ExactPoint, ...]
    label: str = ""
    parts: Optional[Tuple[str, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        pts = tuple(as_point(p) for p in self.points)
        seen = set()
        dups = []
        for p in pts:
            if p in seen:
                dups.append(p)
            seen.add(p)
        if dups:
            raise DuplicatePointError(dups)
        object.__setattr__(self, "points", pts)
        if self.parts is not None:
            parts = tuple(self.parts)
            if len(parts) != len(pts):
                raise ValueError("one provenance label per point is required")
            object.__setattr__(self, "parts", parts)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def __contains__(self, p) -> bool:
        return as_point(p) in set(self.points)

    def part(self, label: str) -> "PointSet":
        """Points whose provenance label is ``label``."""
        if self.parts is None:
            raise ValueError("point set carries no provenance labels")
        return PointSet(tuple(p for p, lab in zip(self.points, self.parts) if lab == label), label)

    def where(self, predicate, label: str = "") -> "PointSet":
        return PointSet(tuple(p for p in self.points if predicate(p)), label or self.label)

    def transformed(self, fn, label: str = "") -> "PointSet":
        return PointSet(tuple(as_point(fn(p)) for p in self.points), label or self.label, self.parts)

    def translated(self, dx: RationalLike, dy: RationalLike) -> "PointSet":
        dx, dy = to_rational(dx), to_rational(dy)
        return self.transformed(lambda p: (p.x + dx, p.y + dy))


def rotate_345(p: ExactPoint) -> ExactPoint:
    """Exact rotation by the angle with cosine 3/5 and sine 4/5."""
    return ExactPoint((3 * p.x - 4 * p.y) / 5, (4 * p.x + 3 * p.y) / 5)


# --------------------------------------------------------------------------
# randomness
# --------------------------------------------------------------------------

def make_rng(seed: int) -> np.random.Generator:
    """PCG64 generator seeded from a single 64-bit integer."""
    if not 0 <= int(seed) < 2 ** 64:
        raise ValueError("seed must be a 64-bit unsigned integer")
    return np.random.Generator(np.random.PCG64(int(seed)))


def random_rational(rng: np.random.Generator, bits: int = 8, nonzero: bool = False) -> Fraction:
    """Rational with ``|numerator| < 2**bits`` and ``1 <= denominator <= 2**bits``."""
    while True:
        num = int(rng.integers(-(2 ** bits) + 1, 2 ** bits))
        den = int(rng.integers(1, 2 ** bits + 1))
        if num or not nonzero:
            return Fraction(num, den)


def random_points(n: int, seed: int, bits: int = 6, integer: bool = False,
                  exclude=None, label: str = "random", max_tries: int = 100000) -> PointSet:
    """``n`` distinct random points, skipping any for which ``exclude(p)`` is true.

    With ``integer=True`` coordinates are integers in ``(-2**bits, 2**bits)``.
    """
    rng = make_rng(seed)
    pts: List[ExactPoint] = []
    seen = set()
    tries = 0
    while len(pts) < n:
        tries += 1
        if tries > max_tries:
            raise ValueError(f"could not draw {n} admissible points with bits={bits}")
        if integer:
            p = ExactPoint(int(rng.integers(-(2 ** bits) + 1, 2 ** bits)),
                           int(rng.integers(-(2 ** bits) + 1, 2 ** bits)))
        else:
            p = ExactPoint(random_rational(rng, bits), random_rational(rng, bits))
        if p in seen or (exclude is not None and exclude(p)):
            continue
        seen.add(p)
        pts.append(p)
    return PointSet(tuple(pts), label)


# --------------------------------------------------------------------------
# structured configurations
# --------------------------------------------------------------------------

def lattice(width: int, height: int) -> PointSet:
    """The integer grid ``{0..width-1} x {0..height-1}``, row by row."""
    if width < 1 or height < 1:
        raise ValueError("lattice dimensions must be positive")
    pts = tuple(ExactPoint(i, j) for j in range(height) for i in range(width))
    return PointSet(pts, f"lattice {width}x{height}")


def uneven_lattice(n: int, alpha: float) -> PointSet:
    """A ``n**alpha x n**(1-alpha)`` integer lattice (dimensions rounded, height >= 1)."""
    if n < 1 or not 0 <= alpha <= 1:
        raise ValueError("need n >= 1 and 0 <= alpha <= 1")
    width = max(1, round(n ** alpha))
    height = max(1, round(n / width))
    return lattice(width, height)


def line_points(n: int, spacing: str = "even", slope: RationalLike = 0, intercept: RationalLike = 0,
                ratio: RationalLike = 2, seed: int = 0, bits: int = 8) -> PointSet:
    """``n`` distinct points on ``y = slope*x + intercept``.

    ``spacing`` is ``"even"`` (x = 0..n-1), ``"geometric"`` (x = ratio**i) or
    ``"random"`` (distinct random rational x drawn from ``seed``).
    """
    if n < 2:
        raise ValueError("need at least two points on a line")
    slope, intercept, ratio = to_rational(slope), to_rational(intercept), to_rational(ratio)
    if spacing == "even":
        xs = [Fraction(i) for i in range(n)]
    elif spacing == "geometric":
        if ratio <= 0 or ratio == 1:
            raise ValueError("geometric spacing needs a positive ratio other than 1")
        xs = [ratio ** i for i in range(n)]
    elif spacing == "random":
        rng = make_rng(seed)
        xs, seen = [], set()
        while len(xs) < n:
            x = random_rational(rng, bits)
            if x not in seen:
                seen.add(x)
                xs.append(x)
    else:
        raise ValueError(f"unknown spacing {spacing!r}")
    return PointSet(tuple(ExactPoint(x, slope * x + intercept) for x in xs), f"line {spacing}")


def circle_point(t: RationalLike) -> ExactPoint:
    t = to_rational(t)
    d = 1 + t * t
    return ExactPoint((1 - t * t) / d, 2 * t / d)


_AXIS_PARAMETERS = {Fraction(0), Fraction(1), Fraction(-1)}


def circle_points(n: int, parameters: Optional[Sequence[RationalLike]] = None, seed: int = 0,
                  bits: int = 6, avoid_axes: bool = True) -> PointSet:
    """Exact rational points on the unit circle via ``t -> ((1-t^2)/(1+t^2), 2t/(1+t^2))``.

    Explicit ``parameters`` must be distinct; otherwise ``n`` parameters are
    drawn from ``seed``.  With ``avoid_axes`` the parameters 0 and +-1 (which
    land on a coordinate axis) are refused for explicit input and redrawn for
    random input.
    """
    if parameters is not None:
        ts = [to_rational(t) for t in parameters]
        if len(set(ts)) != len(ts):
            raise ValueError("circle parameters must be distinct")
        if avoid_axes and _AXIS_PARAMETERS.intersection(ts):
            raise ValueError("parameters 0 and +-1 put a point on a coordinate axis")
        if len(ts) < 2:
            raise ValueError("need at least two circle points")
    else:
        if n < 2:
            raise ValueError("need at least two circle points")
        rng = make_rng(seed)
        ts, seen = [], set()
        while len(ts) < n:
            t = random_rational(rng, bits)
            if t in seen or (avoid_axes and t in _AXIS_PARAMETERS):
                continue
            seen.add(t)
            ts.append(t)
    return PointSet(tuple(circle_point(t) for t in ts), "unit circle")


def composite(curve_part: PointSet, ambient: PointSet, labels: Tuple[str, str] = ("P1", "P2")) -> PointSet:
    """Union of two disjoint point sets, tagging each point with its origin."""
    overlap = set(curve_part.points) & set(ambient.points)
    if overlap:
        raise DuplicatePointError(sorted(overlap))
    pts = curve_part.points + ambient.points
    parts = (labels[0],) * len(curve_part) + (labels[1],) * len(ambient)
    return PointSet(pts, f"{curve_part.label} + {ambient.label}", parts)


def split_by(points: PointSet, predicate, labels: Tuple[str, str] = ("P1", "P2")) -> PointSet:
    """Re-tag ``points`` so that those satisfying ``predicate`` form the first part."""
    parts = tuple(labels[0] if predicate(p) else labels[1] for p in points)
    return PointSet(points.points, points.label, parts)


# --------------------------------------------------------------------------
# file formats
# --------------------------------------------------------------------------

def to_json_dict(points: PointSet) -> Dict:
    out = {"label": points.label,
           "points": [[format_rational(p.x), format_rational(p.y)] for p in points]}
    if points.parts is not None:
        out["parts"] = list(points.parts)
    return out


def from_json_dict(data: Dict) -> PointSet:
    if "points" not in data:
        raise ValueError("point file lacks a 'points' field")
    pts = []
    for entry in data["points"]:
        if len(entry) != 2:
            raise ValueError(f"malformed point entry {entry!r}")
        pts.append(ExactPoint(*(_coord(v) for v in entry)))
    return PointSet(tuple(pts), data.get("label", ""), data.get("parts"))


def _coord(v) -> Fraction:
    if isinstance(v, str):
        return parse_rational(v)
    if isinstance(v, int) and not isinstance(v, bool):
        return Fraction(v)
    raise ValueError(f"coordinates must be integers or 'num/den' strings, got {v!r}")


def dumps_json(points: PointSet) -> str:
    return json.dumps(to_json_dict(points), indent=1) + "\n"


def dumps_csv(points: PointSet) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "y"])
    for p in points:
        w.writerow([format_rational(p.x), format_rational(p.y)])
    return buf.getvalue()


def loads_csv(text: str, label: str = "") -> PointSet:
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    if rows and rows[0][0].strip().lower() == "x":
        rows = rows[1:]
    pts = []
    for r in rows:
        if len(r) != 2:
            raise ValueError(f"CSV rows need exactly two columns, got {r!r}")
        pts.append(ExactPoint(parse_rational(r[0]), parse_rational(r[1])))
    return PointSet(tuple(pts), label)


def save_points(points: PointSet, path: Union[str, Path]) -> None:
    path = Path(path)
    text = dumps_csv(points) if path.suffix.lower() == ".csv" else dumps_json(points)
    path.write_text(text)


def load_points(path: Union[str, Path]) -> PointSet:
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".csv":
        return loads_csv(text, path.stem)
    return from_json_dict(json.loads(text))
