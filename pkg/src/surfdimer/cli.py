"""Command-line front end: ``surfdimer <command> <file.smg> [options]``."""
from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction

from . import gf2
from .errors import DimerError
from .grassmann import (
    charged_check,
    integral_neutral,
    pf_squared_check,
    random_skew,
    random_square,
)
from .exact import pfaffian
from .kasteleyn import is_kasteleyn
from .matchings import correlation_bruteforce, partition_total
from .pfaffian import Setup, class_terms, correlation_pfaffian
from .smg import parse
from .spinform import build_form
from .verify import fmt, verify_suite


def _out(line: str = "") -> None:
    sys.stdout.write(line + "\n")


def cmd_validate(args) -> int:
    m, _ = parse(args.file)
    _out(f"OK\tV={m.n_vertices}\tE={m.n_edges}")
    return 0


def cmd_info(args) -> int:
    m, _ = parse(args.file)
    V, E, F, g = m.info()
    _out(f"V={V} E={E} F={F} g={g}")
    return 0


def cmd_partition(args) -> int:
    m, w = parse(args.file)
    setup = Setup.of(m)
    terms = class_terms(m, w, workers=args.workers, setup=setup)
    if setup.D0 is None:
        z_pf = Fraction(0)
    else:
        z_pf = sum((t.summand for t in terms), Fraction(0)) / (1 << m.genus)
    if args.per_class:
        _out("class\tArf\teps\tPf\tsummand")
        for t in terms:
            mask = gf2.to_string(t.mask, 2 * m.genus) or "-"
            _out(f"{mask}\t{t.arf:+d}\t{t.eps:+d}\t{fmt(t.pf)}\t{fmt(Fraction(t.summand))}")
    if args.oracle:
        z_bf = partition_total(m, w, args.workers)
        _out(f"pfaffian\t{fmt(z_pf)}")
        _out(f"bruteforce\t{fmt(z_bf)}")
        _out("MATCH" if z_pf == z_bf else "MISMATCH")
        return 0 if z_pf == z_bf else 1
    _out(f"Z\t{fmt(z_pf)}")
    return 0


def cmd_orientations(args) -> int:
    m, _ = parse(args.file)
    setup = Setup.of(m)
    if args.emit:
        for rep in setup.classes:
            _out(rep.orientation.to_string())
        return 0
    _out("class\tkasteleyn\torientation\tform")
    for rep in setup.classes:
        ok = bool(is_kasteleyn(m, rep.orientation))
        mask = gf2.to_string(rep.mask, 2 * m.genus) or "-"
        form = build_form(m, setup.basis, rep.orientation, setup.D0).describe() if setup.D0 is not None else "-"
        _out(f"{mask}\t{'yes' if ok else 'no'}\t{rep.orientation.to_string()}\t{form}")
    return 0


def cmd_correlate(args) -> int:
    m, w = parse(args.file)
    edges = [int(x) for x in args.edges.split(",") if x.strip()]
    value = correlation_pfaffian(m, None, w, edges, allow_shared=True, workers=args.workers)
    _out(f"pfaffian\t{fmt(value)}")
    if args.oracle:
        ref = correlation_bruteforce(m, w, edges)
        _out(f"bruteforce\t{fmt(ref)}")
        _out("MATCH" if ref == value else "MISMATCH")
        return 0 if ref == value else 1
    return 0


def cmd_verify(args) -> int:
    m, w = parse(args.file)
    report = verify_suite(m, w, workers=args.workers)
    sys.stdout.write(report.tsv())
    if args.timing:
        sys.stderr.write(report.timings())
    return 0 if report.ok else 1


def cmd_grassmann(args) -> int:
    n = args.size
    rng = random.Random(args.seed)
    A = random_skew(rng, n)
    pf = pfaffian(A)
    gi = integral_neutral(A)
    _out(f"integral_neutral=pfaffian\t{'PASS' if gi == pf else 'FAIL'}\t{fmt(gi)}\t{fmt(pf)}")
    sq = pf_squared_check(A)
    _out(f"pf_squared=det\t{'PASS' if sq else 'FAIL'}\t{fmt(gi * gi)}")
    k = max(1, n // 2)
    res = charged_check(random_square(rng, k))
    _out(
        f"charged=signed_det=block_pf\t{'PASS' if res['ok'] else 'FAIL'}\t"
        f"{fmt(res['integral'])}\t{fmt(res['signed_det'])}\t{fmt(res['block_pf'])}"
    )
    return 0 if gi == pf and sq and res["ok"] else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="surfdimer", description="Exact dimer models on surface graphs.")
    p.add_argument("--workers", type=int, default=1, help="worker threads (output is identical)")
    sub = p.add_subparsers(dest="command", required=True)

    def with_file(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("file")
        sp.add_argument("--workers", type=int, default=argparse.SUPPRESS)
        sp.set_defaults(func=fn)
        return sp

    with_file("validate", cmd_validate, "parse and validate an smg file")
    with_file("info", cmd_info, "print V, E, F and genus")
    sp = with_file("partition", cmd_partition, "partition function via Pfaffians")
    sp.add_argument("--oracle", action="store_true", help="compare with brute-force enumeration")
    sp.add_argument("--per-class", action="store_true", help="print the per-class breakdown")
    sp = with_file("orientations", cmd_orientations, "one Kasteleyn orientation per class")
    sp.add_argument("--emit", action="store_true", help="print bare E-bit strings")
    sp = with_file("correlate", cmd_correlate, "local dimer correlation")
    sp.add_argument("--edges", required=True, help="comma-separated edge ids")
    sp.add_argument("--oracle", action="store_true")
    sp = with_file("verify", cmd_verify, "run every identity check")
    sp.add_argument("--timing", action="store_true", help="per-check runtimes on stderr")
    sp = sub.add_parser("grassmann", help="Grassmann identity checks on a random matrix")
    sp.add_argument("--size", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_grassmann)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DimerError, OSError) as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
