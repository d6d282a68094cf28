"""Command-line front end: ``htacert analyze | certify | reproduce-paper | search``.

Exit codes: 0 Applicable (or success), 2 parse/config error, 3 Inapplicable,
4 Indeterminate. ``reproduce-paper`` exits 0 iff every row passes, else 1.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from .certifier import (
    VerdictKind,
    certify,
    corrupted_table,
    render_report,
    render_reproduction,
    reproduce_paper,
    search,
)
from .intmat import IntMatrix, char_poly, companion, is_unimodular
from .numfield import DEFAULT_MAX_BITS, FieldData, load_bundled_field_data, parse_field_data
from .periodic import DEFAULT_PRIME_CAP, NonHyperbolicError, per_count_table
from .polyalg import IntPoly, has_unimodular_root, is_irreducible, signature
from .centralizer import DEFAULT_S_MAX

EXIT_OK = 0
EXIT_ROWS_FAILED = 1
EXIT_CONFIG = 2
EXIT_INAPPLICABLE = 3
EXIT_INDETERMINATE = 4
PRECISION_ENV = "CERT_PRECISION_CAP_BITS"

VERDICT_EXIT = {
    VerdictKind.APPLICABLE: EXIT_OK,
    VerdictKind.INAPPLICABLE: EXIT_INAPPLICABLE,
    VerdictKind.INDETERMINATE: EXIT_INDETERMINATE,
}


class ConfigError(Exception):
    pass


def _read_input(args) -> IntMatrix:
    sources = [s for s in (args.matrix, args.poly, args.file) if s is not None]
    if len(sources) != 1:
        raise ConfigError("give exactly one of --matrix, --poly, --file")
    try:
        if args.matrix is not None:
            return IntMatrix.parse(args.matrix)
        if args.poly is not None:
            p = IntPoly.parse(args.poly)
            if p.degree < 1 or p.lc != 1:
                raise ConfigError(f"{p} is not a monic polynomial of positive degree")
            return companion(p)
        return IntMatrix.parse(Path(args.file).read_text())
    except OSError as exc:
        raise ConfigError(str(exc)) from exc
    except ValueError as exc:
        raise ConfigError(f"cannot parse input: {exc}") from exc


def _max_bits() -> int:
    raw = os.environ.get(PRECISION_ENV)
    if raw is None:
        return DEFAULT_MAX_BITS
    try:
        bits = int(raw)
    except ValueError as exc:
        raise ConfigError(f"{PRECISION_ENV} must be an integer, got {raw!r}") from exc
    if bits < 64:
        raise ConfigError(f"{PRECISION_ENV} must be at least 64")
    return bits


def _field_table(args) -> dict[IntPoly, FieldData]:
    table: dict[IntPoly, FieldData] = {}
    if not getattr(args, "no_bundled_data", False):
        table.update(load_bundled_field_data())
    for path in args.field_data or []:
        try:
            table.update(parse_field_data(Path(path).read_text()))
        except OSError as exc:
            raise ConfigError(str(exc)) from exc
        except ValueError as exc:
            raise ConfigError(f"bad field data in {path}: {exc}") from exc
    return table


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _parse_ks(raw: str) -> list[int]:
    try:
        ks = [int(t) for t in raw.replace(" ", "").split(",") if t]
    except ValueError as exc:
        raise ConfigError(f"--per expects a comma-separated list of integers, got {raw!r}") from exc
    if not ks or min(ks) < 1:
        raise ConfigError("--per periods must be positive")
    return ks


# --- commands ---------------------------------------------------------------------

def cmd_analyze(args) -> int:
    A = _read_input(args)
    ks = _parse_ks(args.per)
    p = char_poly(A)
    doc = {
        "input_matrix": A.tolist(),
        "char_poly": str(p),
        "unimodular": is_unimodular(A),
        "irreducible": is_irreducible(p) if 1 <= p.degree <= 4 else None,
        "hyperbolic": not has_unimodular_root(p),
    }
    sig = signature(p)
    doc["signature"] = [sig.r1, sig.r2]
    per: dict[str, object] = {}
    if doc["hyperbolic"]:
        try:
            table = per_count_table(A, ks)
            per = {str(k): {"count": e.count, "invariants": list(e.invariants)} for k, e in table.items()}
        except NonHyperbolicError:
            per = {}
    doc["per_counts"] = per
    if args.format == "structured":
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    else:
        lines = [
            f"matrix: {A}",
            f"characteristic polynomial: {p}",
            f"unimodular: {'yes' if doc['unimodular'] else 'no'}",
            f"irreducible: {'yes' if doc['irreducible'] else 'no'}",
            f"hyperbolic: {'yes' if doc['hyperbolic'] else 'no'}",
            f"signature: ({sig.r1}, {sig.r2}), unit rank {sig.r1 + sig.r2 - 1}",
        ]
        if per:
            lines.append("periodic points:")
            for k, e in per.items():
                inv = " x ".join(f"Z/{d}" for d in e["invariants"]) or "trivial"
                lines.append(f"  |Per^{k}| = {e['count']}   BF_{k} = {inv}")
        elif not doc["hyperbolic"]:
            lines.append("periodic point counts: not finite (eigenvalue of modulus one)")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_certify(args) -> int:
    A = _read_input(args)
    if not 2 <= A.n <= 4:
        raise ConfigError(f"certify supports 2 <= n <= 4, got n = {A.n}")
    cert = certify(
        A,
        prime_cap=args.prime_cap,
        table=_field_table(args),
        s_max=args.s_max,
        max_bits=_max_bits(),
    )
    _emit(render_report(cert, args.format), args.out)
    return VERDICT_EXIT[cert.verdict.kind]


def cmd_reproduce(args) -> int:
    table = corrupted_table() if args.corrupt_field_data else load_bundled_field_data()
    rows = reproduce_paper(table, prime_cap=args.prime_cap)
    _emit(render_reproduction(rows, args.format), args.out)
    return EXIT_OK if all(r.passed for r in rows) else EXIT_ROWS_FAILED


def cmd_search(args) -> int:
    if not 2 <= args.n <= 4:
        raise ConfigError("--n must be 2, 3 or 4")
    if args.bound < 0:
        raise ConfigError("--bound must be non-negative")
    certs = list(
        search(
            args.n,
            args.bound,
            args.prime_cap,
            _field_table(args),
            s_max=args.s_max,
            max_bits=_max_bits(),
            workers=args.workers,
        )
    )
    tally = {k.value: 0 for k in VerdictKind}
    for c in certs:
        tally[c.verdict.kind.value] += 1
    if args.format == "structured":
        doc = {
            "n": args.n,
            "bound": args.bound,
            "results": [{"char_poly": str(c.char_poly), "verdict": str(c.verdict)} for c in certs],
            "summary": tally,
        }
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    else:
        lines = [f"{str(c.char_poly):<28} {c.verdict}" for c in certs]
        lines.append(", ".join(f"{k}: {v}" for k, v in tally.items()))
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_OK


# --- parser -----------------------------------------------------------------------

def _add_input(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--matrix", help='inline matrix, rows separated by ";", e.g. "0 1; 1 5"')
    sp.add_argument("--poly", help='monic polynomial, e.g. "x^3-x^2-1"; its companion matrix is used')
    sp.add_argument("--file", help="matrix file: first line n, then n rows")


def _add_common(sp: argparse.ArgumentParser, field_data: bool = True) -> None:
    sp.add_argument("--format", choices=("human", "structured"), default="human")
    sp.add_argument("--out", help="write the report to this file instead of stdout")
    sp.add_argument("--prime-cap", type=int, default=DEFAULT_PRIME_CAP)
    if field_data:
        sp.add_argument("--field-data", action="append", metavar="PATH", help="extra field-data file (repeatable)")
        sp.add_argument("--no-bundled-data", action="store_true", help="ignore the bundled field-data table")
        sp.add_argument("--s-max", type=int, default=DEFAULT_S_MAX)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="htacert",
        description="Certify trivial-centralizer hypotheses for hyperbolic toral automorphisms.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("analyze", help="char poly, irreducibility, hyperbolicity, signature, periodic counts")
    _add_input(sp)
    sp.add_argument("--per", default="1,2,3", help="comma-separated periods (default 1,2,3)")
    sp.add_argument("--format", choices=("human", "structured"), default="human")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("certify", help="run the full pipeline on one matrix")
    _add_input(sp)
    _add_common(sp)
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("reproduce-paper", help="recompute the nine worked examples")
    _add_common(sp, field_data=False)
    sp.add_argument(
        "--corrupt-field-data",
        action="store_true",
        help="test mode: use a deliberately corrupted field-data table",
    )
    sp.set_defaults(func=cmd_reproduce)

    sp = sub.add_parser("search", help="certify companion matrices of bounded polynomials")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--bound", type=int, required=True)
    sp.add_argument("--workers", type=int, default=1)
    _add_common(sp)
    sp.set_defaults(func=cmd_search)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_CONFIG
    if getattr(args, "prime_cap", 3) < 3:
        print("error: --prime-cap must be at least 3", file=sys.stderr)
        return EXIT_CONFIG
    if getattr(args, "s_max", 1) < 1:
        print("error: --s-max must be positive", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
