"""Quadruple counting shared by the line and circle settings.

A quadruple ``(a, p, b, q)`` has ``a, b`` in the curve part ``P1``, ``p, q``
in the rest ``P2``, ``|ap| = |bq|`` and ``(a, p) != (b, q)``.  Quadruples are
ordered.  Each setting splits them into a degenerate slice, selected by a
per-point invariant of ``p`` and ``q`` (``p_y^2`` for a line, ``|p|^2`` for a
circle), and the remainder, which is what curve incidences count.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Optional, Tuple

import numpy as np

from .distances import DistanceClassPartition, bipartite_distances, integer_coordinates
from .generators import ExactPoint, PointSet

QUADRUPLE_ENUMERATION_GUARD = 10 ** 5


class SizeGuardError(RuntimeError):
    pass


@dataclass(frozen=True)
class QuadrupleStats:
    q_total: int
    q1: int
    q2: int
    D: int
    cauchy_schwarz_lower: Fraction
    class_sizes: Tuple[int, ...] = field(repr=False)

    def violations(self) -> List[str]:
        """Exact identities that fail (empty when everything is consistent)."""
        out = []
        if self.q_total != self.q1 + self.q2:
            out.append("q_total != q1 + q2")
        if self.q_total != sum(s * (s - 1) for s in self.class_sizes):
            out.append("q_total != 2 * sum C(|E_i|, 2)")
        excess = sum(s - 1 for s in self.class_sizes)
        if self.q_total * self.D < excess * excess:
            out.append("Cauchy-Schwarz lower bound violated")
        return out


def _group_ids(values: List[int]) -> np.ndarray:
    index: Dict[int, int] = {}
    return np.asarray([index.setdefault(v, len(index)) for v in values], dtype=np.int64)


def quadruple_stats(part: DistanceClassPartition, slice_key: Callable[[ExactPoint], Fraction]) -> QuadrupleStats:
    """Count quadruples from distance classes.

    ``|Q| = sum |E_i|(|E_i| - 1)``.  The degenerate slice is counted the same
    way after refining each class by ``slice_key`` of the second point.
    """
    sizes = [int(s) for s in part.sizes]
    q_total = sum(s * (s - 1) for s in sizes)
    gid = _group_ids([slice_key(p) for p in part.second])
    groups = int(gid.max()) + 1
    combined = part.class_ids * groups + gid[None, :]
    _, counts = np.unique(combined.ravel(), return_counts=True)
    q1 = int(sum(int(c) * (int(c) - 1) for c in counts))
    excess = sum(s - 1 for s in sizes)
    lower = Fraction(excess * excess, part.D)
    return QuadrupleStats(q_total, q1, q_total - q1, part.D, lower, tuple(sizes))


def enumerate_quadruples(first: PointSet, second: PointSet, force: bool = False
                         ) -> Iterator[Tuple[ExactPoint, ExactPoint, ExactPoint, ExactPoint]]:
    """Explicitly list every quadruple (only for small inputs unless ``force``)."""
    if len(first) * len(second) > QUADRUPLE_ENUMERATION_GUARD and not force:
        raise SizeGuardError(f"|P1|*|P2| = {len(first) * len(second)} exceeds "
                             f"{QUADRUPLE_ENUMERATION_GUARD}; pass force=True to override")
    part = bipartite_distances(first, second)
    for members in part.classes.values():
        for a, p in members:
            for b, q in members:
                if (a, p) != (b, q):
                    yield a, p, b, q


@dataclass(frozen=True)
class ChoiceReport:
    """Largest number of ``q`` completing a degenerate quadruple for fixed ``(a, b, p)``."""

    maximum: int
    bound: int
    witness: Optional[Tuple[ExactPoint, ExactPoint, ExactPoint]]
    triples: int

    @property
    def ok(self) -> bool:
        return self.maximum <= self.bound

    def to_json(self) -> Dict:
        return {"maximum": self.maximum, "bound": self.bound, "ok": self.ok, "triples": self.triples,
                "witness": None if self.witness is None else [repr(p) for p in self.witness]}


def choice_bound(first: PointSet, second: PointSet, slice_key: Callable[[ExactPoint], Fraction],
                 bound: int) -> ChoiceReport:
    """For every ``(a, b, p)`` count ``q`` with equal slice key and ``|ap| = |bq|``.

    Rather than looping over all triples, each ``b`` gets a tally of
    ``(slice_key(q), |bq|^2)`` and each realized ``(slice_key(p), |ap|^2)``
    is looked up in it; ``q = p`` is discounted only when ``a = b``.
    """
    ((x1, y1), (x2, y2)), scale = integer_coordinates(first.points, second.points)
    s2 = scale * scale
    skey = [slice_key(q) * s2 for q in second]
    skey = [int(k.numerator) if k.denominator == 1 else k for k in skey]

    def d2(i, j):
        dx, dy = x1[i] - x2[j], y1[i] - y2[j]
        return dx * dx + dy * dy

    # realized key -> up to two (a, p) realizers with distinct a
    realized: Dict[tuple, List[Tuple[int, int]]] = defaultdict(list)
    for i in range(len(first)):
        for j in range(len(second)):
            k = (skey[j], d2(i, j))
            r = realized[k]
            if len(r) < 2 and all(ai != i for ai, _ in r):
                r.append((i, j))
    best, witness = 0, None
    for bi in range(len(first)):
        tally = Counter((skey[j], d2(bi, j)) for j in range(len(second)))
        for k, c in tally.items():
            r = realized.get(k)
            if not r:
                continue
            other = next(((ai, pj) for ai, pj in r if ai != bi), None)
            if other is not None:
                val, (ai, pj) = c, other
            else:
                val, (ai, pj) = c - 1, r[0]
            if val > best:
                best, witness = val, (first[ai], first[bi], second[pj])
    return ChoiceReport(best, bound, witness, len(first) ** 2 * len(second))
