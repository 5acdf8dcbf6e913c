"""Truncated symmetric-function series in the power-sum basis.

A :class:`SymSeries` is a finite sum of terms ``c * q**e * p_mu`` where
``p_mu = p_{mu_1} ... p_{mu_l}`` and ``c`` is an :class:`LCoeff`.  Complete
homogeneous functions ``h_n`` and Schur functions are derived objects
expanded into this basis.

Truncation keeps the term ``q**e * p_mu`` iff ``e <= d_max`` and
``|mu| + e <= n_max``.  The discarded span is an ideal stable under the
product, under the Adams operations, and under composition with any
argument of positive filtration (weight plus q-order), so every identity of
the composition algebra holds exactly in the truncated ring.

Notation: the letter mu names partitions here; the Moebius function is
:func:`mobius`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .coeffring import GSeries, LCoeff, Scalar, TruncationMismatch, adams, _zero

Partition = tuple  # weakly decreasing tuple of positive ints


class PrecompositionNotInF1(ValueError):
    """The inner argument of a composition has a constant q**0 p_() term."""


class SingularBasis(ArithmeticError):
    """The Schur transition matrix could not be inverted."""


# ---------------------------------------------------------------------------
# partitions

def partitions_of(n: int, max_part: int | None = None) -> list[Partition]:
    """All partitions of ``n`` in decreasing lexicographic order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if max_part is None:
        max_part = n
    return list(_partitions(n, max_part))


@lru_cache(maxsize=None)
def _partitions(n: int, max_part: int) -> tuple[Partition, ...]:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in _partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def partition_key(mu: Partition) -> tuple:
    """Sort key: by weight, then decreasing lexicographic."""
    return (sum(mu), tuple(-x for x in mu))


def z_factor(mu: Partition) -> int:
    """Order of the centralizer of a permutation of cycle type ``mu``."""
    z = 1
    for k in set(mu):
        m = mu.count(k)
        z *= k ** m * math.factorial(m)
    return z


def _merge(a: Partition, b: Partition) -> Partition:
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b, reverse=True))


# ---------------------------------------------------------------------------
# truncation and series

@dataclass(frozen=True)
class Truncation:
    """Filtration cutoff ``n_max``, q cutoff ``d_max`` and L-mode."""

    n_max: int
    d_max: int
    cutoff: int | None = None

    def __post_init__(self):
        if self.n_max < 0 or self.d_max < 0:
            raise ValueError("truncation bounds must be nonnegative")

    @classmethod
    def for_cell(cls, n: int, d: int, cutoff: int | None = None) -> "Truncation":
        """Smallest truncation in which the coefficient of ``q**d p_mu``, ``|mu| = n``, is exact."""
        return cls(n + d, d, cutoff)

    def keeps(self, weight: int, e: int) -> bool:
        return e <= self.d_max and weight + e <= self.n_max

    def with_cutoff(self, cutoff: int | None) -> "Truncation":
        return Truncation(self.n_max, self.d_max, cutoff)


class SymSeries:
    """Immutable truncated element of K(M)[q][p_1, p_2, ...]."""

    __slots__ = ("terms", "trunc", "_hash")

    def __init__(self, terms: Mapping[tuple[Partition, int], LCoeff | Scalar], trunc: Truncation):
        clean = {}
        for (mu, e), c in terms.items():
            mu = tuple(mu)
            if any(mu[i] < mu[i + 1] for i in range(len(mu) - 1)) or (mu and mu[-1] < 1):
                raise ValueError(f"not a partition: {mu}")
            if not trunc.keeps(sum(mu), e):
                continue
            if not isinstance(c, LCoeff):
                c = LCoeff.const(c, trunc.cutoff)
            elif c.cutoff != trunc.cutoff:
                raise TruncationMismatch("coefficient L-mode differs from truncation")
            if c:
                clean[(mu, e)] = clean[(mu, e)] + c if (mu, e) in clean else c
        self.terms = {k: v for k, v in clean.items() if v}
        self.trunc = trunc
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, trunc: Truncation) -> "SymSeries":
        obj = object.__new__(cls)
        obj.terms = {k: v for k, v in terms.items() if v}
        obj.trunc = trunc
        obj._hash = None
        return obj

    # constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, trunc: Truncation) -> "SymSeries":
        return cls._raw({}, trunc)

    @classmethod
    def scalar(cls, c: LCoeff | Scalar, trunc: Truncation, e: int = 0) -> "SymSeries":
        return cls({((), e): c}, trunc)

    @classmethod
    def one(cls, trunc: Truncation) -> "SymSeries":
        return cls.scalar(1, trunc)

    @classmethod
    def p(cls, *parts: int, trunc: Truncation, coeff: LCoeff | Scalar = 1, e: int = 0) -> "SymSeries":
        """The monomial ``coeff * q**e * p_{parts}``."""
        return cls({(tuple(sorted(parts, reverse=True)), e): coeff}, trunc)

    @classmethod
    def from_gseries(cls, mu: Partition, c: GSeries, trunc: Truncation) -> "SymSeries":
        return cls({(tuple(mu), d): x for d, x in c.items()}, trunc)

    # access ---------------------------------------------------------------

    def __getitem__(self, key: tuple[Partition, int]) -> LCoeff:
        return self.terms.get(key, _zero(self.trunc.cutoff))

    def coefficient(self, mu: Partition) -> GSeries:
        mu = tuple(mu)
        return GSeries({e: c for (nu, e), c in self.terms.items() if nu == mu},
                       self.trunc.d_max, self.trunc.cutoff)

    def weight_part(self, n: int) -> "SymSeries":
        return SymSeries._raw({k: c for k, c in self.terms.items() if sum(k[0]) == n}, self.trunc)

    def degree_part(self, e: int) -> "SymSeries":
        return SymSeries._raw({k: c for k, c in self.terms.items() if k[1] == e}, self.trunc)

    def in_f1(self) -> bool:
        return ((), 0) not in self.terms

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def retruncate(self, trunc: Truncation) -> "SymSeries":
        """Drop terms outside a smaller truncation, or convert to series mode."""
        if trunc.cutoff != self.trunc.cutoff:
            if self.trunc.cutoff is not None:
                raise TruncationMismatch("cannot leave series mode")
            return SymSeries({k: c.to_series(trunc.cutoff) for k, c in self.terms.items()}, trunc)
        return SymSeries(self.terms, trunc)

    # arithmetic -----------------------------------------------------------

    def _check(self, other: "SymSeries") -> None:
        if self.trunc != other.trunc:
            raise TruncationMismatch(f"{self.trunc} vs {other.trunc}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, LCoeff)):
            other = SymSeries.scalar(other, self.trunc)
        if not isinstance(other, SymSeries):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return SymSeries._raw(out, self.trunc)

    __radd__ = __add__

    def __neg__(self) -> "SymSeries":
        return SymSeries._raw({k: -c for k, c in self.terms.items()}, self.trunc)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, LCoeff)):
            other = SymSeries.scalar(other, self.trunc)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, LCoeff)):
            return SymSeries._raw({k: c * other for k, c in self.terms.items()}, self.trunc)
        if not isinstance(other, SymSeries):
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, k: int | Fraction) -> "SymSeries":
        return self * (1 / Fraction(k))

    def __pow__(self, k: int) -> "SymSeries":
        if k < 0:
            raise ValueError("negative power")
        result = SymSeries.one(self.trunc)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def exact_div(self, b: LCoeff) -> "SymSeries":
        """Divide every coefficient by the L-polynomial ``b``; raises on remainder."""
        return SymSeries._raw({k: c.exact_div(b) for k, c in self.terms.items()}, self.trunc)

    def shift_q(self, e: int) -> "SymSeries":
        """Multiply by ``q**e``."""
        return SymSeries({(mu, d + e): c for (mu, d), c in self.terms.items()}, self.trunc)

    def adams(self, k: int) -> "SymSeries":
        """``p_k`` composed with self: p_n -> p_{kn}, L -> L**k, q -> q**k."""
        if k == 1:
            return self
        t = self.trunc
        out = {}
        for (mu, e), c in self.terms.items():
            w, ke = k * sum(mu), k * e
            if t.keeps(w, ke):
                out[(tuple(k * x for x in mu), ke)] = c.adams(k)
        return SymSeries._raw(out, t)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymSeries):
            return NotImplemented
        return self.trunc == other.trunc and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.trunc, frozenset(self.terms.items())))
        return self._hash

    def sorted_terms(self) -> list[tuple[tuple[Partition, int], LCoeff]]:
        return sorted(self.terms.items(), key=lambda kv: (kv[0][1], partition_key(kv[0][0])))

    def dump(self) -> str:
        """Deterministic text form, one ``q^d * p_[..] * (poly)`` line per term."""
        lines = []
        for (mu, e), c in self.sorted_terms():
            lines.append(f"q^{e} * p_[{','.join(map(str, mu))}] * ({c})")
        return "\n".join(lines)

    def __repr__(self) -> str:
        if not self.terms:
            return "SymSeries(0)"
        return "SymSeries(" + " + ".join(
            f"q^{e}*p{list(mu)}*({c})" for (mu, e), c in self.sorted_terms()) + ")"


def mul(f: SymSeries, g: SymSeries) -> SymSeries:
    """Product; p-monomials multiply by concatenating their partitions."""
    f._check(g)
    t = f.trunc
    n_max, d_max = t.n_max, t.d_max
    out: dict = {}
    gt = [(mu, sum(mu), e, c) for (mu, e), c in g.terms.items()]
    for (mu, e), c in f.terms.items():
        w = sum(mu)
        for nu, w2, e2, c2 in gt:
            ee = e + e2
            if ee > d_max or w + w2 + ee > n_max:
                continue
            key = (_merge(mu, nu), ee)
            prod = c * c2
            if key in out:
                out[key] = out[key] + prod
            else:
                out[key] = prod
    return SymSeries._raw(out, t)


def plethysm(f: SymSeries, g: SymSeries) -> SymSeries:
    """Composition ``f o g``.

    Each ``p_k`` of ``f`` is replaced by the Adams transform of ``g``; the
    coefficients of ``f`` are scalars for the composition and pass through.
    """
    f._check(g)
    if not g.in_f1():
        raise PrecompositionNotInF1("inner argument has a constant term")
    t = f.trunc
    psi: dict[int, SymSeries] = {}
    prods: dict[Partition, SymSeries] = {(): SymSeries.one(t)}

    def prod_of(mu: Partition) -> SymSeries:
        if mu not in prods:
            k = mu[-1]
            if k not in psi:
                psi[k] = g.adams(k)
            prods[mu] = mul(prod_of(mu[:-1]), psi[k])
        return prods[mu]

    out: dict = {}
    for (mu, e), c in f.terms.items():
        if sum(mu) + e > t.n_max:
            continue
        for (nu, e2), c2 in prod_of(mu).terms.items():
            ee = e + e2
            if not t.keeps(sum(nu), ee):
                continue
            key = (nu, ee)
            val = c * c2
            out[key] = out[key] + val if key in out else val
    return SymSeries._raw(out, t)


def derive(f: SymSeries) -> SymSeries:
    """Partial derivative with respect to ``p_1``."""
    out: dict = {}
    for (mu, e), c in f.terms.items():
        m1 = mu.count(1)
        if m1:
            key = (mu[:-1], e)
            val = c * m1
            out[key] = out[key] + val if key in out else val
    return SymSeries._raw(out, f.trunc)


# ---------------------------------------------------------------------------
# pure symmetric functions over Q (dict partition -> Fraction), lifted on demand

def _pure_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for mu, x in a.items():
        for nu, y in b.items():
            k = _merge(mu, nu)
            out[k] = out.get(k, 0) + x * y
    return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=None)
def _pure_h(n: int) -> tuple:
    # n h_n = sum_{i=1}^n p_i h_{n-i}
    if n == 0:
        return (((), Fraction(1)),)
    acc: dict = {}
    for i in range(1, n + 1):
        for mu, c in _pure_h(n - i):
            k = _merge((i,), mu)
            acc[k] = acc.get(k, 0) + c
    return tuple(sorted(((k, Fraction(v) / n) for k, v in acc.items() if v),
                        key=lambda kv: partition_key(kv[0])))


@lru_cache(maxsize=None)
def _pure_schur(mu: Partition) -> tuple:
    ell = len(mu)
    if ell == 0:
        return (((), Fraction(1)),)

    def h(k: int) -> dict:
        return dict(_pure_h(k)) if k >= 0 else {}

    memo: dict = {}

    def minor(row: int, cols: tuple) -> dict:
        # determinant of rows row..ell-1 against the remaining column set
        if row == ell:
            return {(): Fraction(1)}
        key = (row, cols)
        if key in memo:
            return memo[key]
        acc: dict = {}
        for idx, j in enumerate(cols):
            entry = h(mu[row] - row + j)
            if not entry:
                continue
            sub = minor(row + 1, cols[:idx] + cols[idx + 1:])
            sign = -1 if idx % 2 else 1
            for k, v in _pure_mul(entry, sub).items():
                acc[k] = acc.get(k, 0) + sign * v
        memo[key] = {k: v for k, v in acc.items() if v}
        return memo[key]

    det = minor(0, tuple(range(ell)))
    return tuple(sorted(det.items(), key=lambda kv: partition_key(kv[0])))


def _lift(pure: Iterable, trunc: Truncation) -> SymSeries:
    return SymSeries({(mu, 0): LCoeff.const(c, trunc.cutoff) for mu, c in pure}, trunc)


def complete_h(n: int, trunc: Truncation) -> SymSeries:
    """Complete homogeneous function ``h_n`` from the Newton recursion."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _lift(_pure_h(n), trunc)


def schur(mu: Partition, trunc: Truncation) -> SymSeries:
    """Schur function ``s_mu`` from the Jacobi-Trudi determinant of ``h``'s."""
    mu = tuple(mu)
    if any(mu[i] < mu[i + 1] for i in range(len(mu) - 1)):
        raise ValueError(f"not a partition: {mu}")
    return _lift(_pure_schur(mu), trunc)


# ---------------------------------------------------------------------------
# Exp / Log

def mobius(k: int) -> int:
    if k < 1:
        raise ValueError("mobius is defined for positive integers")
    result, m, p = 1, k, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


def series_exp(x: SymSeries) -> SymSeries:
    """Ordinary ``exp(x) - 1`` for ``x`` of positive filtration."""
    if not x.in_f1():
        raise PrecompositionNotInF1("exp needs an argument of positive filtration")
    total, term = x, x
    for m in range(2, x.trunc.n_max + 1):
        term = mul(term, x) / m
        if not term:
            break
        total = total + term
    return total


def series_log1p(y: SymSeries) -> SymSeries:
    """Ordinary ``log(1 + y)`` for ``y`` of positive filtration."""
    if not y.in_f1():
        raise PrecompositionNotInF1("log needs an argument of positive filtration")
    total, power, m = SymSeries.zero(y.trunc), y, 1
    while power:
        total = total + power * Fraction((-1) ** (m + 1), m)
        power = mul(power, y)
        m += 1
    return total


def exp_pleth(a: SymSeries) -> SymSeries:
    """Plethystic exponential ``sum_{n>=1} h_n o a`` via exp(sum_k psi_k(a)/k) - 1."""
    if not a.in_f1():
        raise PrecompositionNotInF1("Exp needs an argument of positive filtration")
    x = SymSeries.zero(a.trunc)
    for k in range(1, a.trunc.n_max + 1):
        x = x + a.adams(k) / k
    return series_exp(x)


def log_pleth(a: SymSeries) -> SymSeries:
    """Plethystic logarithm ``sum_k mobius(k)/k * log(1 + psi_k(a))``."""
    if not a.in_f1():
        raise PrecompositionNotInF1("Log needs an argument of positive filtration")
    total = SymSeries.zero(a.trunc)
    for k in range(1, a.trunc.n_max + 1):
        mk = mobius(k)
        if mk:
            total = total + series_log1p(a.adams(k)) * Fraction(mk, k)
    return total


@lru_cache(maxsize=None)
def _pure_ell(n: int) -> tuple:
    t = Truncation(n, 0)
    part = log_pleth(SymSeries.p(1, trunc=t)).weight_part(n)
    return tuple((mu, c[0]) for (mu, _), c in part.sorted_terms())


def ell(n: int, trunc: Truncation | None = None) -> SymSeries:
    """Universal coefficient ``l_n`` of the plethystic logarithm."""
    if n < 1:
        raise ValueError("ell(n) needs n >= 1")
    return _lift(_pure_ell(n), trunc or Truncation(n, 0))


# ---------------------------------------------------------------------------
# specializations

class UniSeries:
    """Series in one variable ``x`` with q-graded L-coefficients.

    Shares the truncation rule of :class:`SymSeries` with ``x`` in place of
    weight.
    """

    __slots__ = ("terms", "trunc")

    def __init__(self, terms: Mapping[tuple[int, int], LCoeff | Scalar], trunc: Truncation):
        out = {}
        for (m, e), c in terms.items():
            if not trunc.keeps(m, e):
                continue
            if not isinstance(c, LCoeff):
                c = LCoeff.const(c, trunc.cutoff)
            if c:
                out[(m, e)] = out[(m, e)] + c if (m, e) in out else c
        self.terms = {k: v for k, v in out.items() if v}
        self.trunc = trunc

    @classmethod
    def x(cls, trunc: Truncation) -> "UniSeries":
        return cls({(1, 0): 1}, trunc)

    def coefficient(self, m: int) -> GSeries:
        return GSeries({e: c for (k, e), c in self.terms.items() if k == m},
                       self.trunc.d_max, self.trunc.cutoff)

    def __getitem__(self, key: tuple[int, int]) -> LCoeff:
        return self.terms.get(key, _zero(self.trunc.cutoff))

    def __add__(self, other: "UniSeries") -> "UniSeries":
        if self.trunc != other.trunc:
            raise TruncationMismatch(f"{self.trunc} vs {other.trunc}")
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return UniSeries(out, self.trunc)

    def __neg__(self) -> "UniSeries":
        return UniSeries({k: -c for k, c in self.terms.items()}, self.trunc)

    def __sub__(self, other: "UniSeries") -> "UniSeries":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, LCoeff)):
            return UniSeries({k: c * other for k, c in self.terms.items()}, self.trunc)
        if self.trunc != other.trunc:
            raise TruncationMismatch(f"{self.trunc} vs {other.trunc}")
        out: dict = {}
        for (m, e), c in self.terms.items():
            for (m2, e2), c2 in other.terms.items():
                if self.trunc.keeps(m + m2, e + e2):
                    k = (m + m2, e + e2)
                    out[k] = out[k] + c * c2 if k in out else c * c2
        return UniSeries(out, self.trunc)

    __rmul__ = __mul__

    def derive(self) -> "UniSeries":
        """d/dx."""
        return UniSeries({(m - 1, e): c * m for (m, e), c in self.terms.items() if m}, self.trunc)

    def compose(self, inner: "UniSeries") -> "UniSeries":
        """Ordinary substitution ``self(inner)``; ``inner`` has no q**0 x**0 term."""
        if ((0, 0)) in inner.terms:
            raise PrecompositionNotInF1("inner series has a constant term")
        t = self.trunc
        result = UniSeries({}, t)
        power = UniSeries({(0, 0): 1}, t)
        top = max((m for m, _ in self.terms), default=0)
        for m in range(top + 1):
            coeff = {(0, e): c for (k, e), c in self.terms.items() if k == m}
            if coeff:
                result = result + UniSeries(coeff, t) * power
            power = power * inner
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, UniSeries):
            return NotImplemented
        return self.trunc == other.trunc and self.terms == other.terms

    def __repr__(self) -> str:
        body = " + ".join(f"q^{e}*x^{m}*({c})" for (m, e), c in sorted(self.terms.items(),
                                                                      key=lambda kv: (kv[0][1], kv[0][0])))
        return f"UniSeries({body or '0'})"


def rk(f: SymSeries) -> UniSeries:
    """Exponential specialization ``p_1 -> x``, ``p_k -> 0`` for k >= 2."""
    return UniSeries({(len(mu), e): c for (mu, e), c in f.terms.items()
                      if all(x == 1 for x in mu)}, f.trunc)


def inv(f: SymSeries) -> UniSeries:
    """Ordinary specialization ``p_k -> x**k``."""
    out: dict = {}
    for (mu, e), c in f.terms.items():
        k = (sum(mu), e)
        out[k] = out[k] + c if k in out else c
    return UniSeries(out, f.trunc)


def multiset_eval(f: SymSeries, cs: Iterable[GSeries]) -> GSeries:
    """Substitute ``p_k -> sum_j adams(k, c_j)``; returns a q-series."""
    cs = list(cs)
    t = f.trunc
    for c in cs:
        if c.d_max != t.d_max or c.cutoff != t.cutoff:
            raise TruncationMismatch("multiset entries must match the series truncation")
    psum: dict[int, GSeries] = {}

    def value(k: int) -> GSeries:
        if k not in psum:
            acc = GSeries((), t.d_max, t.cutoff)
            for c in cs:
                acc = acc + adams(k, c)
            psum[k] = acc
        return psum[k]

    total = GSeries((), t.d_max, t.cutoff)
    for (mu, e), c in f.terms.items():
        term = GSeries.from_lcoeff(c, e, t.d_max)
        for k in mu:
            term = term * value(k)
        total = total + term
    return total


def to_schur_basis(f: SymSeries, n: int) -> dict[Partition, GSeries]:
    """Schur expansion of the weight-``n`` part of ``f`` by exact linear solve."""
    if n > f.trunc.n_max:
        raise ValueError("weight exceeds truncation")
    basis = partitions_of(n)
    index = {mu: i for i, mu in enumerate(basis)}
    size = len(basis)
    # rows: Schur functions, columns: power-sum monomials
    mat = [[Fraction(0)] * size for _ in range(size)]
    for i, lam in enumerate(basis):
        for mu, c in _pure_schur(lam):
            mat[i][index[mu]] = c
    inverse = _invert(mat)
    t = f.trunc
    result = {}
    for i, lam in enumerate(basis):
        acc = GSeries((), t.d_max, t.cutoff)
        for j, mu in enumerate(basis):
            w = inverse[j][i]
            if w:
                acc = acc + f.coefficient(mu) * w
        if acc:
            result[lam] = acc
    return result


def _invert(mat: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(mat)
    aug = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(mat)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot is None:
            raise SingularBasis("Schur transition matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def from_schur_basis(coeffs: Mapping[Partition, GSeries], trunc: Truncation) -> SymSeries:
    """Reassemble ``sum_lambda c_lambda s_lambda`` in the power-sum basis."""
    out = SymSeries.zero(trunc)
    for lam, c in coeffs.items():
        s = schur(lam, trunc)
        for d, x in c.items():
            out = out + (s * x).shift_q(d)
    return out
