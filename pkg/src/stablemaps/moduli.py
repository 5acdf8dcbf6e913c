"""Classes of genus-0 stable-map spaces and their Betti numbers.

Every class is a :class:`SymSeries` whose coefficient of ``q**d p_mu``
records the S_n-equivariant Serre characteristic of the relevant space of
maps of degree ``d`` with ``n = |mu|`` marked points:

* ``m_open``   -- smooth-domain maps, 𝓜(r)
* ``m_star``   -- fibres of the evaluation map at a further point, 𝓜*(r)
* ``mbar_star`` -- the compactified fibre class, fixed point of
  ``a -> m_star o (p_1 + a)``
* ``mbar``     -- the compactified class M̄(r)

Throughout, ``mbar`` names the closed class; ``mu`` names partitions and
:func:`~stablemaps.symfunc.mobius` the Moebius function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .coeffring import INFINITY, L, GSeries, LCoeff, projective_class
from .symfunc import (SymSeries, Truncation, UniSeries, complete_h, derive, exp_pleth,
                      log_pleth, mobius, partitions_of, plethysm, rk, series_exp,
                      series_log1p)


class InvariantViolation(ArithmeticError):
    """A structural property of the computed classes failed."""


class NoConvergence(InvariantViolation):
    """The fixed-point iteration did not become stationary."""


class NonIntegralBetti(InvariantViolation):
    pass


class NegativeBetti(InvariantViolation):
    pass


class DualityViolated(InvariantViolation):
    """A Betti vector of a finite-r space is not palindromic of the expected length."""


class IdentityViolated(InvariantViolation):
    """A Legendre-transform identity failed; ``order`` is the first bad x-degree."""

    def __init__(self, which: str, order: int):
        super().__init__(f"{which} fails at order x^{order}")
        self.which = which
        self.order = order


KINDS = ("open", "star", "closed", "closed_star")


@dataclass(frozen=True)
class ModuliClass:
    kind: str
    r: float | int
    series: SymSeries

    @property
    def trunc(self) -> Truncation:
        return self.series.trunc

    def coefficient(self, mu, d: int) -> LCoeff:
        return self.series[(tuple(mu), d)]


def _check_r(r, trunc: Truncation) -> None:
    if r == INFINITY:
        if trunc.cutoff is None:
            raise ValueError("r = inf requires an L-cutoff")
    elif not isinstance(r, int) or r < 0:
        raise ValueError(f"invalid target dimension r={r!r}")


# ---------------------------------------------------------------------------
# building blocks

def map_class(r, d_max: int, cutoff: int | None = None) -> GSeries:
    """``sum_d q**d [Map_d(P^1, P^r)]`` up to ``q**d_max``.

    Degree 0 maps are constant: ``[P^r]``.  For ``d > 0`` the class is
    ``L**((d-1)(r+1)+1) (L**r - 1) [P^r]``, equivalently the expansion of
    ``(1 - qL) / (1 - q L**(r+1)) * [P^r]``.
    """
    pr = projective_class(r, cutoff)
    terms = {0: pr}
    for d in range(1, d_max + 1):
        if r == INFINITY:
            # L**(r+1) -> 0 in the L-adic limit
            terms[d] = -(L.to_series(cutoff) * pr) if d == 1 else LCoeff((), cutoff)
        else:
            lr = LCoeff.monomial(r, cutoff=cutoff) - 1
            terms[d] = LCoeff.monomial((d - 1) * (r + 1) + 1, cutoff=cutoff) * lr * pr
    return GSeries(terms, d_max, cutoff)


def conf_class(x_class: GSeries | LCoeff, trunc: Truncation) -> SymSeries:
    """Equivariant classes of ordered configuration spaces, ``1 + Exp(X Log(p_1))``."""
    if isinstance(x_class, GSeries):
        x = SymSeries.from_gseries((), x_class, trunc)
    else:
        x = SymSeries.scalar(x_class, trunc)
    log_s1 = log_pleth(SymSeries.p(1, trunc=trunc))
    return SymSeries.one(trunc) + exp_pleth(x * log_s1)


def _unstable_terms(trunc: Truncation) -> SymSeries:
    # configurations of 0, 1 and 2 points on P^1 in degree 0
    one = LCoeff.const(1, trunc.cutoff)
    lc = L.to_series(trunc.cutoff) if trunc.cutoff is not None else L
    p1 = SymSeries.p(1, trunc=trunc)
    return (SymSeries.one(trunc) + p1 * (lc + one)
            + complete_h(2, trunc) * (lc * lc - lc) + p1 * p1 * lc)


def configuration_product(trunc: Truncation) -> SymSeries:
    """Configurations on P^1 via ``(1+p_1) prod_n (1+p_n)**(sum_{k|n} mobius(n/k) L**k / n)``."""
    total = SymSeries.zero(trunc)
    cutoff = trunc.cutoff
    for n in range(1, trunc.n_max + 1):
        expo = LCoeff((), cutoff)
        for k in range(1, n + 1):
            if n % k == 0:
                expo = expo + LCoeff.monomial(k, cutoff=cutoff) * mobius(n // k)
        expo = expo * Fraction(1, n)
        if n == 1:
            expo = expo + 1
        total = total + series_log1p(SymSeries.p(n, trunc=trunc)) * expo
    return SymSeries.one(trunc) + series_exp(total)


# ---------------------------------------------------------------------------
# the four classes

@lru_cache(maxsize=None)
def _m_open(r, trunc: Truncation) -> SymSeries:
    _check_r(r, trunc)
    aut = L * L * L - L
    if trunc.cutoff is not None:
        exact = trunc.with_cutoff(None)
        if r != INFINITY:
            return _m_open(r, exact).retruncate(trunc)
        conf = conf_class(1 + L, exact)
        reduced = (conf - _unstable_terms(exact)).exact_div(aut)
        conf, reduced = conf.retruncate(trunc), reduced.retruncate(trunc)
        pinf = projective_class(INFINITY, trunc.cutoff)
        one_plus_l = (1 + L).to_series(trunc.cutoff)
        grass = (pinf * pinf).exact_div(one_plus_l)
        result = conf.shift_q(1) * grass + reduced * pinf
        if any(e > 1 for (_, e) in result.terms):
            raise InvariantViolation("open limit class has terms of q-degree > 1")
        return result
    conf = conf_class(1 + L, trunc)
    maps = map_class(r, trunc.d_max)
    moving = SymSeries.zero(trunc)
    for d, c in maps.items():
        if d > 0:
            moving = moving + conf.shift_q(d) * c
    pr = projective_class(r)
    return (moving + (conf - _unstable_terms(trunc)) * pr).exact_div(aut)


def m_open(r, trunc: Truncation) -> ModuliClass:
    """Class of maps with smooth domain, 𝓜(r)."""
    return ModuliClass("open", r, _m_open(r, trunc))


def _raise_weight(trunc: Truncation) -> Truncation:
    return Truncation(trunc.n_max + 1, trunc.d_max, trunc.cutoff)


@lru_cache(maxsize=None)
def _m_star(r, trunc: Truncation) -> SymSeries:
    # D lowers weight, so differentiate one filtration level higher
    full = derive(_m_open(r, _raise_weight(trunc))).retruncate(trunc)
    return full.exact_div(projective_class(r, trunc.cutoff))


def m_star(r, trunc: Truncation) -> ModuliClass:
    """Evaluation-fibre class 𝓜*(r), defined by ``D 𝓜(r) = [P^r] 𝓜*(r)``."""
    return ModuliClass("star", r, _m_star(r, trunc))


@lru_cache(maxsize=None)
def _mbar_star(r, trunc: Truncation) -> SymSeries:
    ms = _m_star(r, trunc)
    p1 = SymSeries.p(1, trunc=trunc)
    a = SymSeries.zero(trunc)
    bound = trunc.n_max + 1
    for _ in range(bound + 1):
        nxt = plethysm(ms, p1 + a)
        if nxt == a:
            break
        a = nxt
    else:
        raise NoConvergence(f"fixed point not stationary after {bound} steps")
    if plethysm(ms, p1 + a) - a:
        raise NoConvergence("fixed-point residual is nonzero")
    return a


def mbar_star(r, trunc: Truncation) -> ModuliClass:
    """Compactified evaluation-fibre class, the fixed point of ``a -> m_star o (p_1 + a)``."""
    return ModuliClass("closed_star", r, _mbar_star(r, trunc))


@lru_cache(maxsize=None)
def _mbar(r, trunc: Truncation) -> SymSeries:
    a = _mbar_star(r, trunc)
    mo = _m_open(r, trunc)
    p1 = SymSeries.p(1, trunc=trunc)
    pr = projective_class(r, trunc.cutoff)
    return plethysm(mo, p1 + a) + (plethysm(complete_h(2, trunc), a) - a * a) * pr


def mbar(r, trunc: Truncation) -> ModuliClass:
    """Class of the compactified space: open class composed along boundary branches."""
    return ModuliClass("closed", r, _mbar(r, trunc))


def clear_caches() -> None:
    for f in (_m_open, _m_star, _mbar_star, _mbar):
        f.cache_clear()


# ---------------------------------------------------------------------------
# Betti numbers

@dataclass(frozen=True)
class BettiVector:
    r: float | int
    d: int
    n: int
    flavor: str
    betti: tuple[int, ...]
    dimension: int | None

    @property
    def is_empty(self) -> bool:
        return not self.betti

    def poincare(self, cutoff: int | None = None) -> LCoeff:
        return LCoeff(self.betti, cutoff)

    def as_dict(self) -> dict:
        r = "inf" if self.r == INFINITY else self.r
        return {"r": r, "d": self.d, "n": self.n, "flavor": self.flavor,
                "betti": list(self.betti), "dimension": self.dimension}


FLAVORS = ("labeled", "quotient")


def expected_dimension(r, d: int, n: int) -> int | None:
    if r == INFINITY:
        return None
    return r * d + r + d + n - 3


def serre_polynomial(cls: SymSeries, d: int, n: int, flavor: str = "labeled") -> LCoeff:
    """Non-equivariant (labeled) or S_n-quotient class at ``(n, d)``."""
    if flavor == "labeled":
        return cls[((1,) * n, d)] * math.factorial(n)
    if flavor == "quotient":
        total = LCoeff((), cls.trunc.cutoff)
        for mu in partitions_of(n):
            total = total + cls[(mu, d)]
        return total
    raise ValueError(f"unknown flavor {flavor!r}")


def _to_betti(poly: LCoeff, length: int | None = None) -> tuple[int, ...]:
    out = []
    top = poly.degree if length is None else length - 1
    for i in range(top + 1):
        c = poly[i]
        if c.denominator != 1:
            raise NonIntegralBetti(f"coefficient {c} of L^{i} is not an integer")
        if c < 0:
            raise NegativeBetti(f"coefficient {c} of L^{i} is negative")
        out.append(int(c))
    return tuple(out)


def betti_vector(r, d: int, n: int, flavor: str = "labeled", K: int | None = None,
                 trunc: Truncation | None = None) -> BettiVector:
    """Even Betti numbers ``(b_0, b_2, ...)`` of M̄_{0,n}(P^r, d).

    For ``r = inf`` the L-cutoff ``K`` is required and the first ``K + 1``
    stable Betti numbers are returned.  An empty space gives an empty vector.
    ``trunc`` may be passed to share one computation across a grid of cells.
    """
    if d < 0 or n < 0:
        raise ValueError("d and n must be nonnegative")
    if r == INFINITY and K is None:
        raise ValueError("r = inf requires the cutoff K")
    cutoff = K if r == INFINITY else None
    if trunc is None:
        trunc = Truncation.for_cell(n, d, cutoff)
    elif not trunc.keeps(n, d) or trunc.cutoff != cutoff:
        raise ValueError(f"truncation {trunc} does not cover (n={n}, d={d})")
    poly = serre_polynomial(_mbar(r, trunc), d, n, flavor)
    dim = expected_dimension(r, d, n)
    if not poly:
        return BettiVector(r, d, n, flavor, (), None)
    if r == INFINITY:
        return BettiVector(r, d, n, flavor, _to_betti(poly, K + 1), None)
    betti = _to_betti(poly)
    # quotients by S_n are rational homology manifolds, so both flavors are palindromic
    if len(betti) != dim + 1 or betti != betti[::-1]:
        raise DualityViolated(
            f"(r={r}, d={d}, n={n}) Betti vector {betti} is not a palindrome of length {dim + 1}")
    return BettiVector(r, d, n, flavor, betti, dim)


def mbar_infinity(K: int, d: int, n: int, flavor: str = "labeled") -> BettiVector:
    """Stable Betti numbers ``b_0..b_{2K}`` as r tends to infinity."""
    return betti_vector(INFINITY, d, n, flavor, K=K)


# ---------------------------------------------------------------------------
# r = 0: the univariate Legendre transform

@dataclass(frozen=True)
class LegendreReport:
    order: int
    nu: UniSeries
    nubar: UniSeries
    orders_checked: int

    def coefficient(self, which: str, m: int) -> LCoeff:
        series = self.nu if which == "nu" else self.nubar
        return series[(m, 0)]


def _first_difference(a: UniSeries, b: UniSeries, order: int) -> int | None:
    for m in range(order + 1):
        if a[(m, 0)] != b[(m, 0)]:
            return m
    return None


def legendre_r0(N: int) -> LegendreReport:
    """Check both Legendre identities for r = 0 up to ``x**N``.

    ``nu`` and ``nubar`` are the exponential generating functions of the open
    and compactified moduli of stable N-pointed rational curves.  The series
    are computed one order higher so that ``D nubar`` is exact through ``x**N``.
    """
    if N < 0:
        raise ValueError("order must be nonnegative")
    t = Truncation(N + 1, 0)
    nu = rk(_m_open(0, t))
    nubar = rk(_mbar(0, t))
    x = UniSeries.x(t)
    dnubar = nubar.derive()
    shifted = x + dnubar
    rhs = nu.compose(shifted) - dnubar * dnubar * Fraction(1, 2)
    bad = _first_difference(nubar, rhs, N)
    if bad is not None:
        raise IdentityViolated("nubar = nu o (x + D nubar) - (D nubar)^2 / 2", bad)
    inverse = (x - nu.derive()).compose(shifted)
    bad = _first_difference(inverse, x, N)
    if bad is not None:
        raise IdentityViolated("(x - D nu) o (x + D nubar) = x", bad)
    return LegendreReport(N, nu, nubar, N + 1)
