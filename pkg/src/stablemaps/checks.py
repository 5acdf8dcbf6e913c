"""Self-verification checks shared by the ``verify`` command."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .coeffring import LCoeff
from .moduli import betti_vector, legendre_r0
from .symfunc import (SymSeries, Truncation, derive, exp_pleth, log_pleth, mul, partitions_of,
                      plethysm)
from .trees import oracle_poincare

GOLDEN = {
    1: (1, 1, 2, 1, 1),
    2: (1, 2, 5, 7, 9, 7, 5, 2, 1),
    3: (1, 2, 6, 10, 17, 20, 24, 20, 17, 10, 6, 2, 1),
}
GOLDEN_INFINITY = (1, 2, 6, 11, 21, 32, 51, 71, 101, 133, 177, 223, 284)


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}" + (f": {self.detail}" if self.detail else "")


def random_lcoeff(rng: random.Random, max_deg: int = 2, cutoff: int | None = None) -> LCoeff:
    return LCoeff([Fraction(rng.randint(-3, 3), rng.choice((1, 1, 2))) for _ in range(rng.randint(0, max_deg + 1))],
                  cutoff)


def random_series(rng: random.Random, trunc: Truncation, f1: bool = True, terms: int = 4,
                  max_weight: int = 4) -> SymSeries:
    """A small random element; with ``f1`` it has no constant term."""
    out = {}
    for _ in range(terms):
        e = rng.randint(0, trunc.d_max)
        w = rng.randint(0, min(max_weight, trunc.n_max - e))
        if f1 and w == 0 and e == 0:
            continue
        mu = rng.choice(partitions_of(w))
        out[(mu, e)] = random_lcoeff(rng, cutoff=trunc.cutoff)
    return SymSeries(out, trunc)


def _exp_log(rng, t) -> bool:
    a = random_series(rng, t)
    return log_pleth(exp_pleth(a)) == a and exp_pleth(log_pleth(a)) == a


def _cartan(rng, t) -> bool:
    a, b = random_series(rng, t), random_series(rng, t)
    ea, eb = exp_pleth(a), exp_pleth(b)
    return exp_pleth(a + b) == mul(ea, eb) + ea + eb


def _chain(rng, t) -> bool:
    return _chain_rule_exact(random_series(rng, t, f1=False), random_series(rng, t))


def _algebra_checks(seed: int, cases: int) -> list[CheckResult]:
    rng = random.Random(seed)
    t = Truncation(5, 1)
    results = []
    props: dict[str, Callable[[random.Random, Truncation], bool]] = {
        "exp/log inversion": _exp_log, "Cartan formula": _cartan, "chain rule": _chain}
    for name, prop in props.items():
        bad = next((i for i in range(cases) if not prop(rng, t)), None)
        results.append(CheckResult(name, bad is None, "" if bad is None else f"case {bad}"))
    return results


def _chain_rule_exact(a: SymSeries, b: SymSeries) -> bool:
    # compare below the top filtration, where differentiation loses no terms
    t = a.trunc
    low = Truncation(t.n_max - 1, t.d_max)
    lhs = derive(plethysm(a, b)).retruncate(low)
    rhs = mul(plethysm(derive(a), b), derive(b)).retruncate(low)
    return lhs == rhs


def run_checks(max_n: int, max_d: int, max_r: int, legendre_order: int = 8,
               seed: int = 0, cases: int = 20) -> list[CheckResult]:
    results: list[CheckResult] = []
    if max_d >= 3 and max_n >= 0:
        for r in range(1, min(max_r, 3) + 1):
            got = betti_vector(r, 3, 0).betti
            results.append(CheckResult(f"golden row r={r}", got == GOLDEN[r], f"got {got}"))
    mismatch = None
    for r in range(max_r + 1):
        for n in range(max_n + 1):
            for d in range(max_d + 1):
                if mismatch is not None:
                    break
                try:
                    betti_vector(r, d, n, "quotient")
                    lab = betti_vector(r, d, n)
                except ArithmeticError as exc:
                    mismatch = f"(r={r},d={d},n={n}): {exc}"
                    break
                if oracle_poincare(n, d, r) != lab.poincare():
                    mismatch = f"(r={r},d={d},n={n}) oracle differs from recursion"
    results.append(CheckResult("recursion equals tree oracle; Betti invariants", mismatch is None,
                               mismatch or ""))
    results.extend(_algebra_checks(seed, cases))
    try:
        legendre_r0(legendre_order)
        results.append(CheckResult(f"Legendre identities to x^{legendre_order}", True))
    except ArithmeticError as exc:
        results.append(CheckResult(f"Legendre identities to x^{legendre_order}", False, str(exc)))
    return results
