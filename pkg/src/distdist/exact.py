"""Exact rational arithmetic, small polynomial algebra and real-root counting.

Rationals are :class:`fractions.Fraction` throughout; they are always kept in
lowest terms with a positive denominator, which is exactly the invariant this
package needs.  On top of that this module provides

* :class:`UniPoly` -- dense univariate polynomials over Q,
* :class:`BiPoly` -- sparse bivariate polynomials over Q,
* :func:`resultant` -- Sylvester resultants via fraction-free elimination,
* :func:`count_real_roots` -- distinct real roots via Sturm sequences.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

Rational = Fraction
RationalLike = Union[int, Fraction, str]


class DegenerateInputError(ValueError):
    """Raised when an algebraic operation receives a degenerate operand."""


def to_rational(value: RationalLike) -> Fraction:
    """Coerce ``value`` to a Fraction.

    Floats are rejected on purpose: every quantity in this package must be
    exact, and silently turning ``0.1`` into ``3602879701896397/36028797018963968``
    is never what the caller meant.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    if hasattr(value, "numerator") and hasattr(value, "denominator") and not isinstance(value, float):
        return Fraction(int(value.numerator), int(value.denominator))
    raise TypeError(f"cannot convert {type(value).__name__} {value!r} to an exact rational")


def format_rational(value: Fraction) -> str:
    """Canonical text encoding: ``"num/den"``, or ``"k"`` for integers."""
    value = to_rational(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not text:
        raise ValueError("empty rational")
    num, sep, den = text.partition("/")
    try:
        n = int(num)
        d = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"malformed rational {text!r}") from None
    if d == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(n, d)


def sign(value) -> int:
    return (value > 0) - (value < 0)


# --------------------------------------------------------------------------
# univariate polynomials
# --------------------------------------------------------------------------

class UniPoly:
    """Dense polynomial over Q; ``coeffs[i]`` multiplies ``x**i``.

    Instances are immutable.  The zero polynomial has an empty coefficient
    tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[RationalLike] = ()):
        cs = [to_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def constant(cls, c: RationalLike) -> "UniPoly":
        return cls([c])

    @classmethod
    def x(cls) -> "UniPoly":
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots: Iterable[RationalLike], lead: RationalLike = 1) -> "UniPoly":
        p = cls([lead])
        for r in roots:
            p = p * cls([-to_rational(r), 1])
        return p

    # -- basic accessors ---------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "UniPoly(0)"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                terms.append(format_rational(c) + ("*" + mono if mono else ""))
        return "UniPoly(" + " + ".join(terms).replace("+ -", "- ") + ")"

    # -- arithmetic --------------------------------------------------------
    @staticmethod
    def _coerce(other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        return UniPoly([to_rational(other)])

    def __add__(self, other) -> "UniPoly":
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other) -> "UniPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "UniPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "UniPoly":
        other = self._coerce(other)
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "UniPoly":
        if k < 0:
            raise ValueError("negative power")
        result = UniPoly([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other) -> Tuple["UniPoly", "UniPoly"]:
        other = self._coerce(other)
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = other.degree
        lead = other.leading
        if len(rem) - 1 < dd:
            return UniPoly(), self
        quot = [Fraction(0)] * (len(rem) - dd)
        for k in range(len(rem) - 1 - dd, -1, -1):
            c = rem[k + dd] / lead
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return UniPoly(quot), UniPoly(rem[:dd])

    def __floordiv__(self, other) -> "UniPoly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "UniPoly":
        return divmod(self, other)[1]

    def exact_div(self, other) -> "UniPoly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("polynomial division is not exact")
        return q

    # -- calculus and evaluation --------------------------------------------
    def __call__(self, x: RationalLike) -> Fraction:
        x = to_rational(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def monic(self) -> "UniPoly":
        if not self.coeffs:
            return self
        lead = self.leading
        return UniPoly(c / lead for c in self.coeffs)

    def compose(self, inner: "UniPoly") -> "UniPoly":
        acc = UniPoly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc


def poly_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    """Monic gcd by the Euclidean algorithm (zero if both are zero)."""
    while g:
        f, g = g, f % g
    return f.monic()


def square_free(p: UniPoly) -> UniPoly:
    """``p / gcd(p, p')``: same distinct roots, each simple."""
    if not p:
        raise DegenerateInputError("square-free part of the zero polynomial")
    if p.degree <= 0:
        return p.monic()
    return (p // poly_gcd(p, p.derivative())).monic()


def sturm_sequence(p: UniPoly) -> List[UniPoly]:
    seq = [p, p.derivative()]
    while seq[-1]:
        r = seq[-2] % seq[-1]
        if not r:
            break
        seq.append(-r)
    if not seq[-1]:
        seq.pop()
    return seq


def _variations(signs: Iterable[int]) -> int:
    count = 0
    last = 0
    for s in signs:
        if s == 0:
            continue
        if last and s != last:
            count += 1
        last = s
    return count


def _signs_at(seq: Sequence[UniPoly], x: Optional[Fraction], side: int) -> List[int]:
    """Signs of the sequence at ``x``, or at -inf/+inf when ``x`` is None."""
    if x is None:
        return [sign(q.leading) * (1 if side > 0 or q.degree % 2 == 0 else -1) for q in seq]
    return [sign(q(x)) for q in seq]


def count_real_roots(p: UniPoly,
                     interval: Optional[Tuple[Optional[RationalLike], Optional[RationalLike]]] = None) -> int:
    """Number of distinct real roots of ``p``.

    ``interval`` is ``None`` for the whole line, or an open interval
    ``(lo, hi)`` where either end may be ``None`` for an infinite end.
    """
    if not p:
        raise DegenerateInputError("the zero polynomial has infinitely many roots")
    if p.degree == 0:
        return 0
    lo, hi = (None, None) if interval is None else interval
    lo = None if lo is None else to_rational(lo)
    hi = None if hi is None else to_rational(hi)
    if lo is not None and hi is not None and lo >= hi:
        return 0
    sf = square_free(p)
    seq = sturm_sequence(sf)
    v_lo = _variations(_signs_at(seq, lo, -1))
    v_hi = _variations(_signs_at(seq, hi, +1))
    # V(lo) - V(hi) counts roots in (lo, hi] for a square-free input
    count = v_lo - v_hi
    if hi is not None and sf(hi) == 0:
        count -= 1
    return count


def discriminant(p: UniPoly) -> Fraction:
    """``b^2 - 4ac`` of a quadratic ``a x^2 + b x + c``."""
    if p.degree != 2:
        raise DegenerateInputError(f"discriminant needs degree 2, got degree {p.degree}")
    c, b, a = p.coeffs
    return b * b - 4 * a * c


# --------------------------------------------------------------------------
# bivariate polynomials
# --------------------------------------------------------------------------

Monomial = Tuple[int, int]


class BiPoly:
    """Sparse polynomial in ``x`` (variable 0) and ``y`` (variable 1)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Monomial, RationalLike]] = None):
        clean: Dict[Monomial, Fraction] = {}
        for (i, j), c in (terms or {}).items():
            if i < 0 or j < 0:
                raise ValueError("negative exponent")
            c = to_rational(c)
            if c:
                clean[(int(i), int(j))] = clean.get((int(i), int(j)), Fraction(0)) + c
        object.__setattr__(self, "terms", {k: v for k, v in clean.items() if v})

    def __setattr__(self, name, value):
        raise AttributeError("BiPoly is immutable")

    @classmethod
    def var(cls, index: int) -> "BiPoly":
        return cls({(1, 0): 1} if index == 0 else {(0, 1): 1})

    @classmethod
    def constant(cls, c: RationalLike) -> "BiPoly":
        return cls({(0, 0): c})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, BiPoly):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        if not self.terms:
            return "BiPoly(0)"
        parts = []
        for (i, j), c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(s for s in (("x" if i == 1 else f"x^{i}") if i else "",
                                        ("y" if j == 1 else f"y^{j}") if j else "") if s)
            parts.append(format_rational(c) + ("*" + mono if mono else ""))
        return "BiPoly(" + " + ".join(parts) + ")"

    @property
    def total_degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    def degree_in(self, var: int) -> int:
        return max((m[var] for m in self.terms), default=-1)

    @staticmethod
    def _coerce(other) -> "BiPoly":
        return other if isinstance(other, BiPoly) else BiPoly.constant(other)

    def __add__(self, other) -> "BiPoly":
        other = self._coerce(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return BiPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "BiPoly":
        return BiPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other) -> "BiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "BiPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "BiPoly":
        other = self._coerce(other)
        out: Dict[Monomial, Fraction] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, Fraction(0)) + c1 * c2
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "BiPoly":
        result = BiPoly.constant(1)
        for _ in range(k):
            result = result * self
        return result

    def __call__(self, x: RationalLike, y: RationalLike) -> Fraction:
        x, y = to_rational(x), to_rational(y)
        return sum((c * x ** i * y ** j for (i, j), c in self.terms.items()), Fraction(0))

    def coefficients_in(self, var: int) -> List[UniPoly]:
        """View as a polynomial in ``var`` with coefficients in the other variable.

        Entry ``k`` of the result is the coefficient of ``var**k``.
        """
        other = 1 - var
        buckets: Dict[int, Dict[int, Fraction]] = {}
        for mono, c in self.terms.items():
            buckets.setdefault(mono[var], {})[mono[other]] = c
        deg = self.degree_in(var)
        out = []
        for k in range(deg + 1):
            b = buckets.get(k, {})
            n = max(b, default=-1) + 1
            out.append(UniPoly(b.get(e, 0) for e in range(n)))
        return out

    def partial_eval(self, var: int, value: RationalLike) -> UniPoly:
        """Fix ``var = value``; the result is a polynomial in the other variable."""
        value = to_rational(value)
        other = 1 - var
        acc: Dict[int, Fraction] = {}
        for mono, c in self.terms.items():
            acc[mono[other]] = acc.get(mono[other], Fraction(0)) + c * value ** mono[var]
        n = max(acc, default=-1) + 1
        return UniPoly(acc.get(e, 0) for e in range(n))

    def substitute(self, var: int, expr: UniPoly) -> UniPoly:
        """Replace ``var`` by a polynomial in the other variable."""
        other = 1 - var
        out = UniPoly()
        powers = [UniPoly([1])]
        for mono, c in self.terms.items():
            while len(powers) <= mono[var]:
                powers.append(powers[-1] * expr)
            out = out + powers[mono[var]] * UniPoly([0] * mono[other] + [c])
        return out


# --------------------------------------------------------------------------
# resultants
# --------------------------------------------------------------------------

def bareiss_determinant(matrix: Sequence[Sequence[UniPoly]]) -> UniPoly:
    """Determinant of a square matrix over Q[t] by fraction-free elimination."""
    m = [[UniPoly._coerce(e) for e in row] for row in matrix]
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix is not square")
    if n == 0:
        return UniPoly([1])
    sgn = 1
    prev = UniPoly([1])
    for k in range(n - 1):
        if not m[k][k]:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return UniPoly()
            m[k], m[swap] = m[swap], m[k]
            sgn = -sgn
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]).exact_div(prev)
            m[i][k] = UniPoly()
        prev = pivot
    det = m[n - 1][n - 1]
    return det if sgn > 0 else -det


def sylvester_matrix(f: Sequence[UniPoly], g: Sequence[UniPoly]) -> List[List[UniPoly]]:
    """Sylvester matrix from coefficient lists (index = power of the eliminated variable)."""
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    zero = UniPoly()
    rows = []
    for r in range(n):
        row = [zero] * size
        for k in range(m + 1):
            row[r + k] = f[m - k]
        rows.append(row)
    for r in range(m):
        row = [zero] * size
        for k in range(n + 1):
            row[r + k] = g[n - k]
        rows.append(row)
    return rows


def resultant(f: BiPoly, g: BiPoly, eliminate: int = 1) -> UniPoly:
    """Sylvester resultant of ``f`` and ``g`` with respect to variable ``eliminate``.

    The result is a polynomial in the remaining variable.
    """
    if eliminate not in (0, 1):
        raise ValueError("eliminate must be 0 (x) or 1 (y)")
    if not f or not g:
        raise DegenerateInputError("resultant of a zero polynomial")
    if f.degree_in(eliminate) < 1 or g.degree_in(eliminate) < 1:
        raise DegenerateInputError("both polynomials must involve the eliminated variable")
    fc = f.coefficients_in(eliminate)
    gc = g.coefficients_in(eliminate)
    return bareiss_determinant(sylvester_matrix(fc, gc))


def lcm_all(values: Iterable[int]) -> int:
    return math.lcm(1, *values)

