"""Command-line interface: ``homsec <command> ...``.

Every command emits ``key: value`` lines, or ``key=value`` records with
``--format records``. Exit status: 0 on success, 1 on a failed
verification (or a non-ideal result under ``--expect-ideal``), 2 on usage
or input errors.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .bounds import SearchCaps, search_bound
from .classifier import IDEAL, NOT_IDEAL, UNRESOLVED, certify_ideal, classify, verify_classification
from .enumeration import EnumerationFilter, check_theorem, enumerate_structures
from .errors import CapExceeded, FormatError, HomsecError, StructureError
from .formats import (
    format_certificate,
    format_partition,
    format_scheme,
    format_set,
    format_share_table,
    format_structure,
    format_values,
    parse_scheme,
    parse_set,
    parse_share_table,
    parse_structure,
)
from .gf import next_prime_above
from .linear_scheme import (
    deal,
    information_rate,
    reconstruct,
    verify_correctness,
    verify_privacy,
)
from .reduction import reduce
from .structure import check_hypotheses, is_threshold, members

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class Output:
    """Collects (key, value) facts and renders them in the chosen format."""

    def __init__(self, mode: str):
        self.mode = mode
        self.lines: list[str] = []

    def add(self, key: str, value) -> None:
        if self.mode == "records":
            self.lines.append(f"{key.replace(' ', '_')}={value}")
        else:
            self.lines.append(f"{key}: {value}")

    def block(self, text: str) -> None:
        """Add ``key: value`` lines from a text block (certificates)."""
        for line in text.splitlines():
            key, _, value = line.partition(":")
            self.add(key.strip(), value.strip())

    def raw(self, text: str) -> None:
        self.lines.extend(text.rstrip("\n").splitlines())

    def render(self) -> str:
        return "\n".join(self.lines) + ("\n" if self.lines else "")


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load(path: str):
    return parse_structure(_read(path))


def _hypothesis_text(structure, report) -> str:
    if report.satisfied:
        return "met"
    k = structure.k
    reasons = []
    if not report.excludes_one:
        reasons.append(f"1 in omega({k + 1})")
    if not report.excludes_k:
        reasons.append(f"{k} in omega({k + 1})")
    if not report.contains_k_plus_one:
        reasons.append(f"{k + 1} not in omega({k + 1})")
    return "NOT MET (" + "; ".join(reasons) + ")"


def _caps(args) -> SearchCaps:
    caps = SearchCaps(args.max_m, args.max_a, getattr(args, "budget", None))
    try:
        caps.validate()
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return caps


def cmd_analyze(args, out: Output) -> int:
    s = _load(args.file)
    out.add("participants", s.n)
    out.add("k", s.k)
    out.add("basis size", len(s.basis))
    out.add("threshold", _yes(is_threshold(s)))
    if s.n >= s.k + 1:
        rep = check_hypotheses(s)
        out.add(f"omega({s.k + 1})", format_values(rep.omega))
        out.add("hypotheses", _hypothesis_text(s, rep))
    else:
        out.add("hypotheses", "undefined (n < k+1)")
    return EXIT_OK


def cmd_reduce(args, out: Output) -> int:
    s = _load(args.file)
    red = reduce(s)
    out.add("classes", format_partition(red.classes))
    out.add("representatives", " ".join(map(str, red.representatives)))
    out.add("quotient participants", red.quotient.n)
    out.add("quotient threshold", _yes(is_threshold(red.quotient)))
    if red.second_pass_merges:
        out.add("note", "quotient still has equivalent participants")
    text = format_structure(red.quotient, "reduced structure")
    if args.quotient_out:
        with open(args.quotient_out, "w", encoding="utf-8") as fh:
            fh.write(text)
        out.add("quotient file", args.quotient_out)
    else:
        for b in red.quotient.basis:
            out.add("quotient minset", " ".join(map(str, members(b))))
    return EXIT_OK


def cmd_bound(args, out: Output) -> int:
    s = _load(args.file)
    result = search_bound(s, _caps(args))
    caps = result.caps
    out.add("caps", f"max-m={caps.max_m} max-a={caps.max_a}")
    out.add("exhaustive", _yes(result.exhaustive))
    if result.best is None:
        out.add("bound", "none")
        return EXIT_OK
    out.block(format_certificate(result.best.certificate))
    return EXIT_OK


def _scheme_facts(out: Output, scheme) -> bool:
    out.add("field", scheme.p)
    out.add("dealer vector", " ".join(map(str, scheme.assignment.dealer)))
    for i, v in enumerate(scheme.assignment.participants, start=1):
        out.add(f"vector {i}", " ".join(map(str, v)))
    ok = True
    for rep in (verify_correctness(scheme), verify_privacy(scheme)):
        out.add(rep.kind, ("pass" if rep.passed else "FAIL") + f" ({rep.checked} checks)")
        if rep.counterexample:
            out.add(f"{rep.kind} counterexample", rep.counterexample)
        ok = ok and rep.passed
    rate = information_rate(scheme)
    out.add("information rate", str(rate))
    return ok and rate == 1


def cmd_classify(args, out: Output) -> int:
    s = _load(args.file)
    res = classify(s, _caps(args), args.field)
    out.add("status", res.status)
    out.add(f"omega({s.k + 1})", format_values(res.hypothesis_report.omega))
    out.add("hypotheses", _hypothesis_text(s, res.hypothesis_report))
    for note in res.notes:
        out.add("note", note)
    if res.reduction is not None:
        out.add("classes", format_partition(res.reduction.classes))
        out.add("quotient threshold", _yes(is_threshold(res.reduction.quotient)))
    ok = True
    if res.status == IDEAL:
        ok = _scheme_facts(out, res.scheme)
    elif res.status == NOT_IDEAL:
        out.add("certificate source", res.certificate_source)
        out.block(format_certificate(res.certificate))
        ok = not verify_classification(s, res)
    elif res.status == UNRESOLVED:
        out.add("caps", f"max-m={res.caps.max_m} max-a={res.caps.max_a}")
        ok = False
    if not ok:
        return EXIT_FAIL
    if args.expect_ideal and res.status != IDEAL:
        return EXIT_FAIL
    return EXIT_OK


def _scheme_for(structure, p):
    return certify_ideal(structure, p)


def cmd_deal(args, out: Output) -> int:
    s = _load(args.file)
    scheme = _scheme_for(s, args.field)
    table = deal(scheme, args.secret, args.seed)
    if args.scheme_out:
        with open(args.scheme_out, "w", encoding="utf-8") as fh:
            fh.write(format_scheme(scheme))
    text = format_share_table(table, include_secret=not args.withhold_secret)
    if out.mode == "records":
        for line in text.splitlines():
            if line.startswith("#"):
                continue
            parts = line.split()
            if parts[0] == "participant":
                out.add(f"share.{parts[1]}", parts[3])
            else:
                out.add(parts[0], parts[1])
    else:
        out.raw(text)
    return EXIT_OK


def cmd_reconstruct(args, out: Output) -> int:
    s = _load(args.file)
    table = parse_share_table(_read(args.shares))
    if len(table.shares) != s.n:
        raise FormatError(f"share table lists {len(table.shares)} participants, structure has {s.n}")
    scheme = _scheme_for(s, table.p)
    q = parse_set(args.set)
    secret = reconstruct(scheme, q, table.restrict(q))
    out.add("set", format_set(q))
    out.add("secret", secret)
    return EXIT_OK


def cmd_verify_scheme(args, out: Output) -> int:
    s = _load(args.file)
    if args.scheme:
        scheme = parse_scheme(_read(args.scheme), s)
        if args.field is not None and args.field != scheme.p:
            raise FormatError(f"--field {args.field} disagrees with the scheme file field {scheme.p}")
    else:
        if args.field is None:
            out.add("field chosen", next_prime_above(len(reduce(s).classes)))
        scheme = _scheme_for(s, args.field)
    return EXIT_OK if _scheme_facts(out, scheme) else EXIT_FAIL


def cmd_enumerate(args, out: Output) -> int:
    if args.check_theorem:
        report = check_theorem(args.n, args.k, _caps(args), dedup=args.dedup,
                               max_n=args.max_n)
        out.add("n", report.n)
        out.add("k", report.k)
        out.add("dedup", _yes(args.dedup))
        out.add("hypothesis-satisfying structures", report.total)
        for status in (IDEAL, NOT_IDEAL, UNRESOLVED):
            out.add(f"count {status}", report.counts.get(status, 0))
        for source, count in sorted(report.sources.items()):
            out.add(f"certificates from {source}", count)
        out.add("violations", len(report.violations))
        for v in report.violations:
            out.add("violation", v)
        print(f"wall time: {report.wall_time:.2f}s", file=sys.stderr)
        return EXIT_OK if report.consistent else EXIT_FAIL
    flt = EnumerationFilter(args.n, args.k, require_hypotheses=args.hypotheses_only,
                            dedup_iso=args.dedup)
    count = 0
    for structure in enumerate_structures(flt):
        count += 1
        if out.mode == "records":
            basis = " ".join(format_set(b) for b in structure.basis)
            out.add(f"structure.{count}", basis)
        else:
            out.raw(format_structure(structure, f"structure {count}"))
        if args.classify:
            res = classify(structure, _caps(args))
            out.add(f"status.{count}" if out.mode == "records" else "# status", res.status)
        if out.mode != "records":
            out.raw("")
    out.add("count", count)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="homsec", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"homsec {__version__}")
    parser.add_argument("--format", choices=("human", "records"), default="human")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_caps(p):
        p.add_argument("--max-m", type=int, default=None, help="longest chain (default k+1)")
        p.add_argument("--max-a", type=int, default=None, help="largest A (default k)")
        p.add_argument("--budget", type=float, default=None, help="search time budget in seconds")

    p = sub.add_parser("analyze", help="basic statistics and theorem hypotheses")
    p.add_argument("file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("reduce", help="equivalence classes and reduced structure")
    p.add_argument("file")
    p.add_argument("--quotient-out", default=None)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("bound", help="best independent-sequence bound")
    p.add_argument("file")
    with_caps(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("classify", help="ideal / not ideal decision with evidence")
    p.add_argument("file")
    p.add_argument("--field", type=int, default=None)
    p.add_argument("--expect-ideal", action="store_true")
    with_caps(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("deal", help="deal a secret with the ideal linear scheme")
    p.add_argument("file")
    p.add_argument("--secret", type=int, required=True)
    p.add_argument("--field", type=int, default=None)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--withhold-secret", action="store_true")
    p.add_argument("--scheme-out", default=None)
    p.set_defaults(func=cmd_deal)

    p = sub.add_parser("reconstruct", help="recover the secret from a share table")
    p.add_argument("file")
    p.add_argument("--shares", required=True)
    p.add_argument("--set", required=True, help="participants, e.g. 1,2 or {1,2}")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("verify-scheme", help="exhaustive correctness and privacy check")
    p.add_argument("file")
    p.add_argument("--field", type=int, default=None)
    p.add_argument("--scheme", default=None, help="explicit scheme file to verify")
    p.set_defaults(func=cmd_verify_scheme)

    p = sub.add_parser("enumerate", help="enumerate small structures")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--dedup", action="store_true")
    p.add_argument("--hypotheses-only", action="store_true")
    p.add_argument("--check-theorem", action="store_true")
    p.add_argument("--classify", action="store_true")
    p.add_argument("--max-n", type=int, default=6, help="cap for --check-theorem")
    p.add_argument("--max-m", type=int, default=None)
    p.add_argument("--max-a", type=int, default=None)
    p.set_defaults(func=cmd_enumerate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Output(args.format)
    try:
        code = args.func(args, out)
    except (UsageError, CapExceeded, FormatError, StructureError, OSError) as exc:
        sys.stdout.write(out.render())
        print(f"homsec: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (HomsecError, ValueError) as exc:
        sys.stdout.write(out.render())
        print(f"homsec: {exc}", file=sys.stderr)
        return EXIT_FAIL
    sys.stdout.write(out.render())
    return code


if __name__ == "__main__":
    sys.exit(main())
