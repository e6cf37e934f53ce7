"""Command line entry point.

Exit codes: 0 verified, 1 a mathematical check failed, 2 bad input.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import groups, ideal, modp, sl2, verify
from .errors import (BadSpec, BadTable, CoefficientMismatch, IdentityFailure, NoSolution,
                     NotPrime, OrderCap, ViolatedPrediction)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
SCAN_LIMIT = 10 ** 6
LEMMAS = ("1", "2", "3", "4", "5", "6", "7")


class UsageError(Exception):
    pass


def _prime(value: str) -> modp.Prime:
    try:
        return modp.Prime(int(value))
    except (ValueError, NotPrime) as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def cmd_verify_identity(args, out: list[str]) -> int:
    p = args.p
    if not p.is_17_mod_60:
        raise UsageError(f"p = {p} is not 17 mod 60")
    if args.certificate and args.mode == "symbolic":
        raise UsageError("certificates are only produced in direct mode")
    ok = True
    reports = []
    if args.mode in ("direct", "both"):
        report, cert = verify.verify_direct(p.value, max_order=args.max_order)
        reports.append(report)
        if args.certificate:
            G = verify.sl2_group(p.value, args.max_order)
            Path(args.certificate).write_text(cert.render(G))
            out.append(f"certificate: {len(cert.terms)} terms written to {args.certificate}")
    if args.mode in ("symbolic", "both"):
        reports.append(verify.verify_symbolic(p.value))
    for r in reports:
        out.append(r.render())
        out.append("")
        ok &= r.passed and r.quarter_passed
    if len(reports) == 2:
        agree = reports[0].same_result(reports[1])
        out.append(f"direct and symbolic agree: {'yes' if agree else 'NO'}")
        ok &= agree
    return EXIT_OK if ok else EXIT_FAIL


def cmd_invariant(args, out: list[str], err: list[str]) -> int:
    G = groups.builtin(args.group, max_order=args.max_order)
    result = ideal.compute_invariant(G, max_order=args.max_order)
    out.append(f"group: {args.group} (order {G.order})")
    out.append(result.report(timing=False))
    err.append(f"wall time: {result.seconds:.3f} s")
    return EXIT_OK


def _lemma_diagonal(p: int) -> sl2.Mat2:
    if p % 60 == 17:
        return sl2.build_specials(p).Delta
    return sl2.Mat2.diag(2, p)


def _lemma_precondition(lemma: str, p: int) -> str | None:
    if lemma in ("5",) and p % 4 != 1:
        return "needs p = 1 mod 4"
    if lemma in ("6", "7") and p % 60 != 17:
        return "needs p = 17 mod 60"
    if lemma == "4" and sl2.Mat2.diag(2, p).trace in (2, p - 2) and p % 60 != 17:
        return "no diagonal matrix with trace != +-2 at hand"
    return None


def cmd_lemmas(args, out: list[str]) -> int:
    p = args.p.value
    if p == 2:
        raise UsageError("p must be odd")
    wanted = LEMMAS if args.lemma == "all" else (args.lemma,)
    needs_group = {"1", "2", "3", "4", "5", "7"}
    if needs_group & set(wanted):
        order = (p - 1) * p * (p + 1)
        if order > args.max_order:
            raise OrderCap(f"|SL2(Z/{p})| = {order} exceeds the order cap {args.max_order}")
    ok = True
    for lemma in wanted:
        reason = _lemma_precondition(lemma, p)
        if reason:
            if args.lemma != "all":
                raise UsageError(f"lemma {lemma} {reason}")
            out.append(f"lemma {lemma} (p={p}): skipped ({reason})")
            continue
        if lemma == "1":
            res = verify.check_lemma1(p, args.max_order)
        elif lemma == "2":
            res = verify.check_lemma2(p, args.max_order)
        elif lemma == "3":
            res = verify.check_lemma3(verify.sl2_group(p, args.max_order), max_order=args.max_order)
            res.p = p
        elif lemma == "4":
            res = verify.check_lemma4(p, _lemma_diagonal(p), args.max_order)
        elif lemma == "5":
            res = verify.check_lemma5(p, args.max_order)
        elif lemma == "6":
            res = verify.check_lemma6(p)
        else:
            res = verify.check_lemma7(p, args.max_order)
        out.append(res.line())
        ok &= res.passed
    return EXIT_OK if ok else EXIT_FAIL


def scan(limit: int) -> tuple[list[str], bool]:
    lines, ok = [], True
    primes = modp.primes_17_mod_60(limit)
    for p in primes:
        try:
            sol = modp.solve_u(p)
            chain = modp.verify_reciprocity_chain(p)
            rep = verify.verify_symbolic(p)
            good = rep.passed and rep.quarter_passed
            lines.append(f"p={p} u={sol.u.residue} u^-1={sol.u_inv.residue} half={sol.half.residue} "
                         f"legendre(-1,3,5)={chain.factors} symbolic={'PASS' if good else 'FAIL'}")
        except (NoSolution, ViolatedPrediction, CoefficientMismatch) as e:
            good = False
            lines.append(f"p={p} FAIL: {e}")
        ok &= good
    lines.append(f"scanned {len(primes)} primes = 17 mod 60 up to {limit}: "
                 f"{'all pass' if ok else 'FAILURES'}")
    return lines, ok


def cmd_scan(args, out: list[str]) -> int:
    if not 0 <= args.max <= SCAN_LIMIT:
        raise UsageError(f"--max must lie in [0, {SCAN_LIMIT}]")
    lines, ok = scan(args.max)
    out.extend(lines)
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="scharlau", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify-identity", help="check the SL2 identity at a prime p = 17 mod 60")
    v.add_argument("--p", type=_prime, required=True)
    v.add_argument("--mode", choices=("direct", "symbolic", "both"), default="both")
    v.add_argument("--certificate", metavar="PATH")
    v.add_argument("--max-order", type=int, default=sl2.DEFAULT_MAX_ORDER)

    i = sub.add_parser("invariant", help="Scharlau invariant of a group by lattice reduction")
    i.add_argument("--group", required=True,
                   help="cyclic:N | quaternion8 | gpq:P:Q | sl2:P | table:PATH")
    i.add_argument("--max-order", type=int, default=ideal.DEFAULT_MAX_ORDER)

    le = sub.add_parser("lemmas", help="check the supporting lemmas at p")
    le.add_argument("--p", type=_prime, required=True)
    le.add_argument("--lemma", choices=LEMMAS + ("all",), default="all")
    le.add_argument("--max-order", type=int, default=sl2.DEFAULT_MAX_ORDER)

    s = sub.add_parser("scan", help="symbolic check for every prime p = 17 mod 60 up to --max")
    s.add_argument("--max", type=int, required=True)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    out: list[str] = []
    err: list[str] = []
    try:
        if args.command == "verify-identity":
            code = cmd_verify_identity(args, out)
        elif args.command == "invariant":
            code = cmd_invariant(args, out, err)
        elif args.command == "lemmas":
            code = cmd_lemmas(args, out)
        else:
            code = cmd_scan(args, out)
    except (IdentityFailure, CoefficientMismatch, ViolatedPrediction) as e:
        out.append(f"FAILED: {e}")
        code = EXIT_FAIL
    except (UsageError, OrderCap, BadSpec, BadTable, NoSolution, ValueError) as e:
        err.append(f"error: {e}")
        code = EXIT_USAGE
    if out:
        print("\n".join(out))
    if err:
        print("\n".join(err), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
