"""Exact coefficients: polynomials in the Lefschetz class L and q-graded series.

Two coefficient modes exist.  In exact mode an :class:`LCoeff` is a
polynomial in L with rational coefficients.  In series mode it is an element
of Q[[L]] truncated above L**cutoff; this is how r = infinity is realized.
Values of different modes never combine.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]

INFINITY = math.inf


class NonExactDivision(ArithmeticError):
    """Polynomial division left a nonzero remainder."""


class TruncationMismatch(ValueError):
    """Operands carry incompatible truncations or coefficient modes."""


def _strip(cs: list) -> tuple:
    while cs and not cs[-1]:
        cs.pop()
    return tuple(cs)


class LCoeff:
    """Element of Q[L], or of Q[[L]]/(L**(cutoff+1)) when ``cutoff`` is set.

    Coefficients are stored densely by L-exponent with trailing zeros
    removed, so equal values have equal representations.
    """

    __slots__ = ("coeffs", "cutoff", "_hash")

    def __init__(self, coeffs: Iterable[Scalar] = (), cutoff: int | None = None):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        if cutoff is not None:
            if cutoff < 0:
                raise ValueError("cutoff must be nonnegative")
            del cs[cutoff + 1:]
        self.coeffs: tuple[Fraction, ...] = _strip(cs)
        self.cutoff = cutoff
        self._hash = None

    @classmethod
    def _raw(cls, coeffs: tuple, cutoff: int | None) -> "LCoeff":
        obj = object.__new__(cls)
        obj.coeffs = coeffs
        obj.cutoff = cutoff
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c: Scalar, cutoff: int | None = None) -> "LCoeff":
        return cls((c,), cutoff)

    @classmethod
    def monomial(cls, e: int, c: Scalar = 1, cutoff: int | None = None) -> "LCoeff":
        if e < 0:
            raise ValueError("L-exponent must be nonnegative")
        return cls([0] * e + [c], cutoff)

    @property
    def is_series(self) -> bool:
        return self.cutoff is not None

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @property
    def degree(self) -> int:
        """L-degree; -1 for zero."""
        return len(self.coeffs) - 1

    def __getitem__(self, e: int) -> Fraction:
        if 0 <= e < len(self.coeffs):
            return self.coeffs[e]
        return Fraction(0)

    def items(self):
        return [(e, c) for e, c in enumerate(self.coeffs) if c]

    def _check(self, other: "LCoeff") -> None:
        if self.cutoff != other.cutoff:
            raise TruncationMismatch(
                f"L-cutoff mismatch: {self.cutoff} vs {other.cutoff}")

    def _coerce(self, other) -> "LCoeff":
        if isinstance(other, LCoeff):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return LCoeff((other,), self.cutoff)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return LCoeff._raw(_strip(out), self.cutoff)

    __radd__ = __add__

    def __neg__(self) -> "LCoeff":
        return LCoeff._raw(tuple(-c for c in self.coeffs), self.cutoff)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return LCoeff._raw((), self.cutoff)
            return LCoeff._raw(tuple(c * other for c in self.coeffs), self.cutoff)
        if not isinstance(other, LCoeff):
            return NotImplemented
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return LCoeff._raw((), self.cutoff)
        n = len(a) + len(b) - 1
        if self.cutoff is not None:
            n = min(n, self.cutoff + 1)
        out = [0] * n
        for i, x in enumerate(a):
            if not x or i >= n:
                continue
            for j in range(min(len(b), n - i)):
                y = b[j]
                if y:
                    out[i + j] += x * y
        return LCoeff._raw(_strip([Fraction(c) for c in out]), self.cutoff)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LCoeff":
        if k < 0:
            raise ValueError("negative power")
        result = LCoeff.const(1, self.cutoff)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, LCoeff):
            return self.cutoff == other.cutoff and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _strip([Fraction(other)])
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.coeffs, self.cutoff))
        return self._hash

    def adams(self, k: int) -> "LCoeff":
        """Substitute L -> L**k."""
        if k < 1:
            raise ValueError("Adams index must be positive")
        if k == 1 or len(self.coeffs) <= 1:
            return self
        n = k * (len(self.coeffs) - 1) + 1
        if self.cutoff is not None:
            n = min(n, self.cutoff + 1)
        out = [Fraction(0)] * n
        for e, c in enumerate(self.coeffs):
            if k * e < n:
                out[k * e] = c
        return LCoeff._raw(_strip(out), self.cutoff)

    def divmod(self, b: "LCoeff") -> tuple["LCoeff", "LCoeff"]:
        """Euclidean division in Q[L] (exact mode only)."""
        self._check(b)
        if self.cutoff is not None:
            raise TruncationMismatch("Euclidean division needs exact mode")
        if not b:
            raise ZeroDivisionError("division by zero L-polynomial")
        rem = list(self.coeffs)
        db = len(b.coeffs) - 1
        lead = b.coeffs[-1]
        quo = [Fraction(0)] * max(len(rem) - db, 0)
        for i in range(len(rem) - db - 1, -1, -1):
            c = rem[i + db] / lead
            if c:
                quo[i] = c
                for j, y in enumerate(b.coeffs):
                    rem[i + j] -= c * y
        return LCoeff._raw(_strip(quo), None), LCoeff._raw(_strip(rem), None)

    def exact_div(self, b: "LCoeff") -> "LCoeff":
        """Quotient ``self / b``, raising :class:`NonExactDivision` on remainder.

        In series mode only divisors with nonzero constant term are
        accepted; the quotient is then the truncated power series.
        """
        self._check(b)
        if not b:
            raise ZeroDivisionError("division by zero L-polynomial")
        if self.cutoff is None:
            q, r = self.divmod(b)
            if r:
                raise NonExactDivision(f"({self}) / ({b}) leaves remainder {r}")
            return q
        if not b.coeffs[0]:
            raise NonExactDivision(
                f"divisor {b} is not a unit in the L-truncated series ring")
        n = self.cutoff + 1
        inv0 = 1 / b.coeffs[0]
        num = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        out = [Fraction(0)] * n
        for i in range(n):
            c = num[i] * inv0
            out[i] = c
            if c:
                for j in range(1, min(len(b.coeffs), n - i)):
                    num[i + j] -= c * b.coeffs[j]
        return LCoeff._raw(_strip(out), self.cutoff)

    def to_series(self, cutoff: int) -> "LCoeff":
        """Reduce an exact polynomial modulo L**(cutoff+1)."""
        if self.cutoff is not None and self.cutoff < cutoff:
            raise TruncationMismatch("cannot raise the L-cutoff of a series")
        return LCoeff(self.coeffs, cutoff)

    def evaluate(self, x: Scalar) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self) -> str:
        return f"LCoeff({self})"

    def __str__(self) -> str:
        return format_lpoly(self.coeffs, self.cutoff)


def _fmt_scalar(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_lpoly(coeffs: Sequence[Fraction], cutoff: int | None = None) -> str:
    """Render ``coeffs`` as a polynomial in L, highest power first."""
    parts = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if e == 0:
            body = _fmt_scalar(a)
        else:
            mon = "L" if e == 1 else f"L^{e}"
            body = mon if a == 1 else f"{_fmt_scalar(a)}*{mon}"
        parts.append((sign, body))
    if not parts:
        text = "0"
    else:
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
    if cutoff is not None:
        text += f" + O(L^{cutoff + 1})"
    return text


L = LCoeff.monomial(1)
ONE = LCoeff.const(1)
ZERO = LCoeff()


def projective_class(r, cutoff: int | None = None) -> LCoeff:
    """Class of projective r-space, 1 + L + ... + L**r.

    ``r = -1`` gives the empty space (zero).  ``r = INFINITY`` is only
    available in series mode and gives the geometric series to L**cutoff.
    """
    if r == INFINITY:
        if cutoff is None:
            raise ValueError("projective_class(inf) requires series mode")
        return LCoeff([1] * (cutoff + 1), cutoff)
    if not isinstance(r, int) or r < -1:
        raise ValueError(f"invalid projective dimension {r!r}")
    return LCoeff([1] * (r + 1), cutoff)


class GSeries:
    """Power series in q truncated above ``q**d_max``, with LCoeff coefficients."""

    __slots__ = ("terms", "d_max", "cutoff")

    def __init__(self, terms: Sequence[LCoeff] | dict = (), d_max: int = 0,
                 cutoff: int | None = None):
        if d_max < 0:
            raise ValueError("d_max must be nonnegative")
        if isinstance(terms, dict):
            seq = [_zero(cutoff)] * (d_max + 1)
            for d, c in terms.items():
                if d < 0:
                    raise ValueError("negative q-degree")
                if d <= d_max:
                    seq[d] = c
            terms = seq
        out = []
        for c in list(terms)[:d_max + 1]:
            if not isinstance(c, LCoeff):
                c = LCoeff.const(c, cutoff)
            elif c.cutoff != cutoff:
                raise TruncationMismatch("GSeries coefficients must share one mode")
            out.append(c)
        while out and not out[-1]:
            out.pop()
        self.terms: tuple[LCoeff, ...] = tuple(out)
        self.d_max = d_max
        self.cutoff = cutoff

    @classmethod
    def from_lcoeff(cls, c: LCoeff, d: int = 0, d_max: int = 0) -> "GSeries":
        return cls({d: c}, d_max, c.cutoff)

    def __getitem__(self, d: int) -> LCoeff:
        if 0 <= d < len(self.terms):
            return self.terms[d]
        return _zero(self.cutoff)

    def items(self):
        return [(d, c) for d, c in enumerate(self.terms) if c]

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _check(self, other: "GSeries") -> None:
        if self.d_max != other.d_max or self.cutoff != other.cutoff:
            raise TruncationMismatch(
                f"GSeries truncation mismatch: (q<={self.d_max}, L<={self.cutoff})"
                f" vs (q<={other.d_max}, L<={other.cutoff})")

    def __add__(self, other: "GSeries") -> "GSeries":
        if not isinstance(other, GSeries):
            return NotImplemented
        self._check(other)
        n = max(len(self.terms), len(other.terms))
        return GSeries([self[d] + other[d] for d in range(n)], self.d_max, self.cutoff)

    def __neg__(self) -> "GSeries":
        return GSeries([-c for c in self.terms], self.d_max, self.cutoff)

    def __sub__(self, other: "GSeries") -> "GSeries":
        return self + (-other)

    def __mul__(self, other) -> "GSeries":
        if isinstance(other, (int, Fraction, LCoeff)):
            return GSeries([c * other for c in self.terms], self.d_max, self.cutoff)
        if not isinstance(other, GSeries):
            return NotImplemented
        self._check(other)
        out = [_zero(self.cutoff)] * (self.d_max + 1)
        for i, a in enumerate(self.terms):
            if not a:
                continue
            for j, b in enumerate(other.terms):
                if i + j > self.d_max:
                    break
                if b:
                    out[i + j] = out[i + j] + a * b
        return GSeries(out, self.d_max, self.cutoff)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, GSeries):
            return NotImplemented
        return (self.d_max, self.cutoff, self.terms) == (other.d_max, other.cutoff, other.terms)

    def __hash__(self) -> int:
        return hash((self.d_max, self.cutoff, self.terms))

    def __repr__(self) -> str:
        if not self.terms:
            return "GSeries(0)"
        body = " + ".join(f"q^{d}*({c})" for d, c in self.items())
        return f"GSeries({body})"


def _zero(cutoff: int | None) -> LCoeff:
    return LCoeff._raw((), cutoff)


def adams(k: int, c: GSeries) -> GSeries:
    """Adams operation: q**d * L**e -> q**(k*d) * L**(k*e), truncated."""
    if k < 1:
        raise ValueError("Adams index must be positive")
    if k == 1:
        return c
    out = {}
    for d, coeff in c.items():
        if k * d <= c.d_max:
            out[k * d] = coeff.adams(k)
    return GSeries(out, c.d_max, c.cutoff)


def exact_div(a: GSeries, b: LCoeff) -> GSeries:
    """Divide every q-coefficient of ``a`` by the L-polynomial ``b``."""
    return GSeries([c.exact_div(b) for c in a.terms], a.d_max, a.cutoff)
