"""Incidence-bound envelopes, dyadic multiplicity levels and exponent fits.

Envelope terms are evaluated in 128-bit interval arithmetic (``mpmath.iv``),
so each reported value comes with a certified enclosure; comparisons use
the upper end.  The hidden constants of the asymptotic bounds are set to 1;
callers look at measured/envelope ratios, never at absolute pass/fail.
"""
from __future__ import annotations

import math
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

import mpmath
from mpmath import libmp
import numpy as np

_PREC = 128


@contextmanager
def _precision():
    saved = mpmath.iv.prec
    mpmath.iv.prec = _PREC
    try:
        yield
    finally:
        mpmath.iv.prec = saved


def _iv_power(base: int, exponent: Fraction):
    with _precision():
        b = mpmath.iv.mpf(base)
        e = mpmath.iv.mpf(exponent.numerator) / exponent.denominator
        return mpmath.iv.exp(e * mpmath.iv.log(b))


def _ends(x):
    a, b = x._mpi_
    return mpmath.mp.make_mpf(a), mpmath.mp.make_mpf(b)


def _upper(x) -> float:
    """Upper end of an interval, rounded up to a float."""
    return libmp.to_float(x._mpi_[1], rnd="u")


def _mid(x) -> float:
    a, b = _ends(x)
    with mpmath.workprec(_PREC):
        return float((a + b) / 2)


@dataclass(frozen=True)
class BoundEnvelope:
    """Terms of ``t^(1/(2k-1)) m^(k/(2k-1)) N^((2k-2)/(2k-1)) + t m + c_t N``.

    With ``t = 1`` this is the plain three-term bound; ``c_t`` is
    ``max(1, ceil(log2 t))``.
    """

    m: int
    N: int
    k: int
    t: int
    lead: object = field(repr=False)
    m_term: int
    N_term: int

    @property
    def lead_value(self) -> float:
        return _mid(self.lead)

    @property
    def lead_relative_width(self) -> float:
        a, b = _ends(self.lead)
        with mpmath.workprec(_PREC):
            return float((b - a) / b)

    @property
    def total_upper(self) -> float:
        with _precision():
            return _upper(self.lead + self.m_term + self.N_term)

    @property
    def total(self) -> float:
        return self.lead_value + self.m_term + self.N_term

    def terms(self) -> Tuple[float, int, int]:
        return self.lead_value, self.m_term, self.N_term


def _validate(m: int, N: int, k: int, t: int) -> None:
    if m < 1 or N < 1:
        raise ValueError("m and N must be at least 1")
    if k < 2:
        raise ValueError("degrees of freedom k must be at least 2")
    if t < 1:
        raise ValueError("multiplicity t must be at least 1")


def log_coefficient(t: int) -> int:
    return max(1, math.ceil(math.log2(t))) if t > 1 else 1


def envelope_ps(m: int, N: int, k: int) -> BoundEnvelope:
    """``m^(k/(2k-1)) N^((2k-2)/(2k-1)) + m + N`` for ``m`` points and ``N`` curves."""
    return envelope_mult(m, N, k, 1)


def envelope_mult(m: int, N: int, k: int, t: int) -> BoundEnvelope:
    """The multiset version, for curves of maximum multiplicity ``t``."""
    _validate(m, N, k, t)
    d = 2 * k - 1
    with _precision():
        lead = _iv_power(m, Fraction(k, d)) * _iv_power(N, Fraction(2 * k - 2, d))
        if t > 1:
            lead = lead * _iv_power(t, Fraction(1, d))
    return BoundEnvelope(m, N, k, t, lead, t * m, log_coefficient(t) * N)


def lead_exponent(m_exp, N_exp, k: int, t_exp=0):
    """Exponent of ``n`` in the leading term when ``m = n^m_exp``, ``N = n^N_exp``, ``t = n^t_exp``.

    Works for numbers and for sympy expressions.
    """
    return (t_exp + k * m_exp + (2 * k - 2) * N_exp) / (2 * k - 1)


# --------------------------------------------------------------------------
# dyadic levels
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class DyadicLevel:
    level: int
    multiplicities: Tuple[int, ...]

    @property
    def classes(self) -> int:
        return len(self.multiplicities)

    @property
    def curves(self) -> int:
        return sum(self.multiplicities)


def dyadic_partition(multiplicities: Iterable[int]) -> List[DyadicLevel]:
    """Bucket distinct curves by multiplicity into ``[2^i, 2^(i+1))``."""
    buckets: Dict[int, List[int]] = {}
    for m in multiplicities:
        m = int(m)
        if m < 1:
            raise ValueError("multiplicities must be at least 1")
        buckets.setdefault(m.bit_length() - 1, []).append(m)
    return [DyadicLevel(i, tuple(sorted(buckets[i]))) for i in sorted(buckets)]


def dyadic_violations(levels: Sequence[DyadicLevel], gamma_size: int) -> List[str]:
    out = []
    if sum(lv.curves for lv in levels) != gamma_size:
        out.append("levels do not add up to the multiset size")
    for lv in levels:
        if lv.classes * 2 ** lv.level > gamma_size:
            out.append(f"level {lv.level} holds more than |Gamma| / 2^{lv.level} curves")
    return out


# --------------------------------------------------------------------------
# exponent fits
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ExponentFit:
    samples: Tuple[Tuple[float, float], ...]
    slope: float
    intercept: float
    residual: float

    def to_json(self) -> Dict:
        return {"slope": self.slope, "intercept": self.intercept, "residual": self.residual,
                "samples": [list(s) for s in self.samples]}


def fit_exponent(samples: Iterable[Tuple[float, float]]) -> ExponentFit:
    """Least-squares line through ``(log n, log value)``; the slope estimates the exponent."""
    pts = tuple((float(n), float(v)) for n, v in samples)
    if len(pts) < 3:
        raise ValueError("an exponent fit needs at least three samples")
    if any(n <= 0 or v <= 0 for n, v in pts):
        raise ValueError("samples must be positive")
    x = np.log([n for n, _ in pts])
    y = np.log([v for _, v in pts])
    A = np.stack([x, np.ones_like(x)], axis=1)
    (slope, intercept), *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = float(np.sqrt(np.mean((A @ np.array([slope, intercept]) - y) ** 2)))
    return ExponentFit(pts, float(slope), float(intercept), resid)


# --------------------------------------------------------------------------
# sweep rows
# --------------------------------------------------------------------------

SWEEP_COLUMNS = ("mode", "n", "alpha", "p1", "D", "q_total", "q1", "q2", "incidences", "t",
                 "gamma_size", "k", "env_lead", "env_m_term", "env_N_term", "env_total_upper", "ratio")


def sweep_row(mode: str, ledger: Dict, p1: int) -> Dict:
    """One CSV row: the ledger counts plus the matching envelope and the ratio."""
    if mode == "line":
        k, t, q1 = 3, max(1, ledger["t"]), ledger["q1"]
    else:
        k, t, q1 = 4, 1, ledger["q1_concentric"]
    m = max(1, p1 * p1)
    N = max(1, ledger["gamma_size"])
    env = envelope_mult(m, N, k, t)
    upper = env.total_upper
    return {"mode": mode, "n": ledger["n"], "alpha": ledger["alpha"], "p1": p1, "D": ledger["D"],
            "q_total": ledger["q_total"], "q1": q1, "q2": ledger["q2"], "incidences": ledger["incidences"],
            "t": ledger.get("t", 1), "gamma_size": ledger["gamma_size"], "k": k,
            "env_lead": env.lead_value, "env_m_term": env.m_term, "env_N_term": env.N_term,
            "env_total_upper": upper, "ratio": ledger["incidences"] / upper}


def envelope_constant(rows: Iterable[Dict]) -> float:
    """The single constant ``C`` making ``incidences <= C * envelope`` on every row."""
    return max((r["ratio"] for r in rows), default=0.0)
