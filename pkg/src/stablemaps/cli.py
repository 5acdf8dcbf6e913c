"""Command-line interface.

Subcommands ``betti``, ``table``, ``strata`` and ``verify``.  Exit status is
0 on success, 1 when ``verify`` finds a failing check, 2 for invalid
arguments and 3 when an internal invariant is violated.  The number of
worker threads used for table cells is read from ``STABLEMAPS_THREADS``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from .coeffring import INFINITY, NonExactDivision, TruncationMismatch
from .moduli import FLAVORS, BettiVector, InvariantViolation, betti_vector, _mbar
from .symfunc import Truncation, to_schur_basis
from .trees import enumerate_trees, oracle_poincare, stratum_poincare, to_dot

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3
THREADS_ENV = "STABLEMAPS_THREADS"
ORACLE_MAX_N, ORACLE_MAX_D = 4, 4


class UsageError(Exception):
    pass


def _parse_r(text: str):
    if text.lower() in ("inf", "infinity"):
        return INFINITY
    try:
        r = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"r must be a natural number or 'inf', got {text!r}")
    if r < 0:
        raise argparse.ArgumentTypeError("r must be nonnegative")
    return r


def _natural(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a natural number, got {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError("expected a nonnegative integer")
    return v


def _threads() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise UsageError(f"{THREADS_ENV} must be an integer, got {raw!r}")


def _r_text(r) -> str:
    return "inf" if r == INFINITY else str(r)


def _check_k(args) -> None:
    if args.r == INFINITY and args.K is None:
        raise UsageError("--r inf requires --K")
    if args.r != INFINITY and args.K is not None:
        raise UsageError("--K is only meaningful with --r inf")


# ---------------------------------------------------------------------------
# output helpers

def _emit_json(obj) -> str:
    return json.dumps(obj, indent=None, separators=(", ", ": "))


def _betti_rows_csv(rows: list[BettiVector]) -> str:
    width = max((len(b.betti) for b in rows), default=0)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["r", "d", "n", "flavor", "dimension"] + [f"b{2 * i}" for i in range(width)])
    for b in rows:
        dim = "" if b.dimension is None else b.dimension
        w.writerow([_r_text(b.r), b.d, b.n, b.flavor, dim] + list(b.betti)
                   + [""] * (width - len(b.betti)))
    return buf.getvalue().rstrip("\n")


def _betti_text(b: BettiVector) -> str:
    body = "(" + ",".join(map(str, b.betti)) + ("" if b.r != INFINITY else ",...") + ")"
    if b.is_empty:
        body = "(empty)"
    return f"r={_r_text(b.r)} d={b.d} n={b.n} {b.flavor}: {body}"


# ---------------------------------------------------------------------------
# commands

def cmd_betti(args) -> str:
    _check_k(args)
    b = betti_vector(args.r, args.d, args.n, args.flavor, K=args.K)
    if args.format == "json":
        return _emit_json(b.as_dict())
    if args.format == "csv":
        return _betti_rows_csv([b])
    return _betti_text(b)


def _schur_cell(r, trunc: Truncation, n: int, d: int) -> dict[str, str]:
    parts = to_schur_basis(_mbar(r, trunc).weight_part(n), n)
    out = {}
    for lam, c in parts.items():
        if c[d]:
            out["s[" + ",".join(map(str, lam)) + "]"] = str(c[d])
    return out


def cmd_table(args) -> str:
    _check_k(args)
    cutoff = args.K if args.r == INFINITY else None
    trunc = Truncation(args.max_n + args.max_d, args.max_d, cutoff)
    cells = [(n, d) for n in range(args.max_n + 1) for d in range(args.max_d + 1)]

    def work(cell):
        n, d = cell
        b = betti_vector(args.r, d, n, args.flavor, K=args.K, trunc=trunc)
        schur = _schur_cell(args.r, trunc, n, d) if args.schur else None
        return b, schur

    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        results = list(pool.map(work, cells))

    if args.format == "json":
        rows = []
        for b, schur in results:
            row = b.as_dict()
            if schur is not None:
                row["schur"] = schur
            rows.append(row)
        return _emit_json(rows)
    if args.format == "csv":
        text = _betti_rows_csv([b for b, _ in results])
        if args.schur:
            lines = text.split("\n")
            lines[0] += ",schur"
            for i, (_, schur) in enumerate(results):
                lines[i + 1] += "," + _csv_quote(" + ".join(f"({v})*{k}" for k, v in schur.items()))
            text = "\n".join(lines)
        return text
    lines = [f"r = {_r_text(args.r)}, flavor = {args.flavor}", "| n | d | Betti numbers (b0,b2,b4,...) |"]
    for b, schur in results:
        body = "(empty)" if b.is_empty else "(" + ",".join(map(str, b.betti)) + (
            ",...)" if b.r == INFINITY else ")")
        lines.append(f"| {b.n} | {b.d} | {body} |")
        if schur:
            for k, v in schur.items():
                lines.append(f"|   |   |   {k}: {v}")
    return "\n".join(lines)


def _csv_quote(text: str) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="").writerow([text])
    return buf.getvalue()


def cmd_strata(args) -> str:
    if args.r == INFINITY:
        raise UsageError("strata needs a finite --r")
    if args.n > ORACLE_MAX_N or args.d > ORACLE_MAX_D:
        raise UsageError(f"strata supports n <= {ORACLE_MAX_N} and d <= {ORACLE_MAX_D}")
    trees = enumerate_trees(args.n, args.d)
    strata = []
    for i, ct in enumerate(trees):
        entry = {"code": ct.code, "aut": ct.aut, "dimension": ct.tree.dimension(args.r),
                 "serre": str(stratum_poincare(ct, args.r))}
        if args.dot:
            entry["dot"] = to_dot(ct, f"T{i}")
        strata.append(entry)
    total = str(oracle_poincare(args.n, args.d, args.r)) if trees else "0"
    if args.format == "json":
        return _emit_json({"r": args.r, "d": args.d, "n": args.n, "strata": strata, "total": total})
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["code", "aut", "dimension", "serre"])
        for s in strata:
            w.writerow([s["code"], s["aut"], s["dimension"], s["serre"]])
        return buf.getvalue().rstrip("\n")
    lines = [f"{len(strata)} strata of the (n={args.n}, d={args.d}) tree set, r={args.r}"]
    for s in strata:
        lines.append(f"{s['code']}  |Aut|={s['aut']}  dim={s['dimension']}  serre={s['serre']}")
    lines.append(f"total: {total}")
    if args.dot:
        lines.extend(s["dot"] for s in strata)
    return "\n".join(lines)


def cmd_verify(args) -> tuple[str, int]:
    from .checks import run_checks
    results = run_checks(args.max_n, args.max_d, args.max_r, args.legendre_order)
    ok = all(r.ok for r in results)
    return "\n".join(r.line() for r in results), EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="stablemaps",
                                description="Betti numbers of genus-0 stable-map spaces to P^r.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, grid: bool):
        sp.add_argument("--r", type=_parse_r, required=True, help="target dimension or 'inf'")
        if grid:
            sp.add_argument("--max-n", dest="max_n", type=_natural, default=0)
            sp.add_argument("--max-d", dest="max_d", type=_natural, default=0)
        else:
            sp.add_argument("--d", type=_natural, required=True)
            sp.add_argument("--n", type=_natural, default=0)
        sp.add_argument("--format", choices=("json", "csv", "text"), default="json")

    b = sub.add_parser("betti", help="Betti vector of one space")
    common(b, grid=False)
    b.add_argument("--K", type=_natural, help="L-cutoff, required for --r inf")
    b.add_argument("--flavor", choices=FLAVORS, default="labeled")

    t = sub.add_parser("table", help="Betti vectors over a grid of (n, d)")
    common(t, grid=True)
    t.add_argument("--K", type=_natural)
    t.add_argument("--flavor", choices=FLAVORS, default="labeled")
    t.add_argument("--schur", action="store_true", help="also print Schur decompositions")

    s = sub.add_parser("strata", help="list boundary strata with their classes")
    common(s, grid=False)
    s.add_argument("--dot", action="store_true", help="append Graphviz renderings")

    v = sub.add_parser("verify", help="run the consistency checks")
    v.add_argument("--max-n", dest="max_n", type=_natural, default=2)
    v.add_argument("--max-d", dest="max_d", type=_natural, default=3)
    v.add_argument("--max-r", dest="max_r", type=_natural, default=2)
    v.add_argument("--legendre-order", dest="legendre_order", type=_natural, default=8)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    code = EXIT_OK
    try:
        if args.command == "betti":
            out = cmd_betti(args)
        elif args.command == "table":
            out = cmd_table(args)
        elif args.command == "strata":
            out = cmd_strata(args)
        else:
            out, code = cmd_verify(args)
    except UsageError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InvariantViolation, NonExactDivision, TruncationMismatch) as exc:
        print(f"{parser.prog}: internal invariant violated: {type(exc).__name__}: {exc}",
              file=sys.stderr)
        return EXIT_INTERNAL
    print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
