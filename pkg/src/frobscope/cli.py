"""Command-line front end.

Exit codes: 0 success, 1 a checked identity or density tolerance failed,
2 usage error (bad arguments, unparsable polynomial, cap exceeded).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass

from . import classify, cyclotomic, factor, recurrence, tau
from .arith import is_prime, primes_in_range
from .classify import CycleType
from .errors import CapExceeded, FrobscopeError, InternalInconsistency, PolyParseError
from .parse import parse_poly
from .polyring import IntPoly, discriminant

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
SEED_ENV = "FROBSCOPE_SEED"

PRESETS: dict[str, tuple[int, dict[str, int]]] = {
    "s3": (6, {"1^3": 1, "1^1 2^1": 3, "3^1": 2}),
    "psl27": (168, {"1^7": 1, "7^1": 48, "1^3 2^2": 21, "1^1 2^1 4^1": 42, "1^1 3^2": 56}),
}


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class Config:
    pmax: int = 10**4
    seed: int = 0
    fmt: str = "text"
    jobs: int = 1
    step_cap: int = recurrence.TERM_EXACT_CAP
    series_cap: int = tau.TAU_CAP


def resolve_seed(arg: int | None, deterministic: bool) -> int:
    if arg is not None:
        return arg
    env = os.environ.get(SEED_ENV)
    if env:
        try:
            return int(env, 0)
        except ValueError:
            raise UsageError(f"{SEED_ENV}={env!r} is not an integer") from None
    if deterministic:
        raise UsageError("--deterministic requires --seed or FROBSCOPE_SEED")
    return 0


def _config(args) -> Config:
    return Config(
        pmax=getattr(args, "pmax", None) or Config.pmax,
        seed=resolve_seed(args.seed, args.deterministic),
        fmt=args.format,
        jobs=max(1, args.jobs),
        step_cap=args.step_cap,
        series_cap=args.series_cap,
    )


def parse_or_usage(text: str) -> IntPoly:
    try:
        return parse_poly(text)
    except PolyParseError as exc:
        raise UsageError(f"cannot parse polynomial {text!r}: {exc}") from None


def _poly(text: str) -> IntPoly:
    C = parse_or_usage(text)
    if C.degree < 2 or not C.is_monic():
        raise UsageError(f"{C} must be monic of degree >= 2")
    return C


def _range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise UsageError(f"range must look like LO..HI, got {text!r}")
    try:
        return int(lo), int(hi)
    except ValueError:
        raise UsageError(f"bad range {text!r}") from None


# -- output ---------------------------------------------------------------


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, float):
        return f"{v:.6f}"
    return str(v)


def render(rows: list[dict], fmt: str, fields: list[str] | None = None) -> str:
    fields = fields or (list(rows[0]) if rows else [])
    if fmt == "json":
        return "".join(json.dumps(row) + "\n" for row in rows)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n", extrasaction="ignore")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _cell(row.get(k)) for k in fields})
        return buf.getvalue()
    table = [fields] + [[_cell(row.get(k)) for k in fields] for row in rows]
    widths = [max(len(r[i]) for r in table) for i in range(len(fields))]
    return "".join("  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() + "\n" for r in table)


# -- subcommands ----------------------------------------------------------


def cmd_classify(args, cfg: Config, out) -> int:
    C = _poly(args.poly)
    if (args.p is None) == (args.range is None):
        raise UsageError("give exactly one of --p or --range")
    if args.p is not None:
        primes = [args.p]
        if not is_prime(args.p):
            raise UsageError(f"{args.p} is not prime")
    else:
        lo, hi = _range(args.range)
        primes = primes_in_range(lo, hi + 1)
    disc = discriminant(C)
    rows = []
    for p in primes:
        v = classify.classify_prime(C, p, disc)
        if args.only == "split" and not v.split:
            continue
        if args.only == "ramified" and not v.ramified:
            continue
        rows.append(v.to_json())
    out.write(render(rows, cfg.fmt, ["p", "cycle_type", "split", "label", "ramified"]))
    return EXIT_OK


def _class_sizes(args) -> tuple[int | None, dict[CycleType, int] | None]:
    if args.expected:
        order, sizes = PRESETS[args.expected]
        return order, {CycleType.parse(k): v for k, v in sizes.items()}
    if args.class_sizes:
        sizes = {}
        for item in args.class_sizes.split(","):
            text, _, n = item.rpartition(":")
            if not text:
                raise UsageError(f"class size entry {item!r} must be TYPE:COUNT")
            sizes[CycleType.parse(text.replace(".", " "))] = int(n)
        order = args.group_order or sum(sizes.values())
        return order, sizes
    return None, None


def cmd_scan(args, cfg: Config, out) -> int:
    C = _poly(args.poly)
    order, sizes = _class_sizes(args)
    report = classify.chebotarev_scan(C, cfg.pmax, order, sizes, jobs=cfg.jobs)
    if cfg.fmt == "json":
        text = json.dumps(report.to_json()) + "\n"
    elif cfg.fmt == "csv":
        text = report.to_csv()
    else:
        text = render(report.rows(), "text")
        text += f"unramified primes: {report.total}  ramified: {' '.join(map(str, report.ramified)) or '-'}\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        out.write(text)
    if sizes and report.max_deviation() > args.tolerance:
        print(f"density deviation {report.max_deviation():.4f} exceeds {args.tolerance}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_factor(args, cfg: Config, out) -> int:
    C = parse_or_usage(args.poly)
    if not is_prime(args.p):
        raise UsageError(f"{args.p} is not prime")
    result = factor.factor_full(C.mod(args.p), seed=cfg.seed)
    if cfg.fmt == "json":
        out.write(json.dumps(result.to_json()) + "\n")
        return EXIT_OK
    rows = [{"factor": str(g), "multiplicity": e, "degree": g.degree} for g, e in result.factors]
    if cfg.fmt == "csv":
        out.write(render(rows, "csv"))
        return EXIT_OK
    if len(result.factors) == 1 and result.factors[0][1] == 1:
        out.write(f"irreducible mod {args.p}: {result.factors[0][0]}\n")
        return EXIT_OK
    unit = "" if result.unit % args.p == 1 else f"{result.unit % args.p} * "
    body = " * ".join(f"({g})" + (f"^{e}" if e > 1 else "") for g, e in result.factors)
    out.write(f"{unit}{body}\n")
    return EXIT_OK


def _sequence_form(R: IntPoly) -> str:
    """x^3 - x -> 'U_3 - U_1'."""
    text = ""
    for k in range(R.degree, -1, -1):
        c = R[k]
        if not c:
            continue
        term = f"U_{k}" if abs(c) == 1 else f"{abs(c)}*U_{k}"
        if not text:
            text = term if c > 0 else f"-{term}"
        else:
            text += f" {'+' if c > 0 else '-'} {term}"
    return text or "0"


def cmd_cyclo(args, cfg: Config, out) -> int:
    M = args.m
    if M < 3:
        raise UsageError("--m must be at least 3 (Phi_1, Phi_2 are linear)")
    Phi = cyclotomic.cyclotomic_poly(M)
    residue_rows = []
    for r, R in cyclotomic.residue_rule_table(M).items():
        residue_rows.append({"r": r, "remainder": str(R), "rule": f"U_p = {_sequence_form(R)}"})
    count = args.count or M
    lucas_rows = [{"n": n, "L_n": cyclotomic.cyclo_lucas(M, n)} for n in range(count)]
    if cfg.fmt == "json":
        out.write(json.dumps({"M": M, "phi": cyclotomic.euler_phi(M), "poly": Phi.to_json()}) + "\n")
        out.write(render([{"table": "residue_rule", **r} for r in residue_rows], "json"))
        out.write(render([{"table": "lucas", **r} for r in lucas_rows], "json"))
        return EXIT_OK
    if cfg.fmt == "text":
        out.write(f"Phi_{M}(x) = {Phi}\n")
    out.write(render(residue_rows, cfg.fmt))
    out.write("\n")
    out.write(render(lucas_rows, cfg.fmt))
    return EXIT_OK


def cmd_tau(args, cfg: Config, out) -> int:
    if args.lmax > cfg.series_cap:
        raise CapExceeded(f"--lmax {args.lmax} exceeds series cap {cfg.series_cap}")
    rows = tau.delta_table(args.lmax, args.pmax)
    out.write(render(rows, cfg.fmt))
    if any(row.get("congruence_failed") for row in rows):
        return EXIT_FAIL
    return EXIT_OK


def cmd_perrin(args, cfg: Config, out) -> int:
    found = classify.perrin_pseudoprime_scan(args.limit, jobs=cfg.jobs)
    rows = [{"n": n, "factored": tau.format_factorization(n)} for n in found]
    out.write(render(rows, cfg.fmt, ["n", "factored"]))
    return EXIT_OK


def cmd_lucas(args, cfg: Config, out) -> int:
    C = _poly(args.poly)
    if args.count > cfg.step_cap:
        raise CapExceeded(f"--count {args.count} exceeds step cap {cfg.step_cap}")
    rec = recurrence.LinRec.lucas(C)
    rows = [{"n": n, "L_n": v} for n, v in enumerate(rec.terms(args.count))]
    out.write(render(rows, cfg.fmt))
    return EXIT_OK


# -- wiring ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")
    common.add_argument("--seed", type=lambda s: int(s, 0), default=None, help=f"RNG seed (fallback: ${SEED_ENV}, then 0)")
    common.add_argument("--deterministic", action="store_true", help="fail when no seed is given")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for range scans")
    common.add_argument("--step-cap", type=int, default=recurrence.TERM_EXACT_CAP)
    common.add_argument("--series-cap", type=int, default=tau.TAU_CAP)

    parser = argparse.ArgumentParser(prog="frobscope", description="Frobenius classes of primes from linear recurrences.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="per-prime cycle type and labels")
    p.add_argument("--poly", required=True)
    p.add_argument("--p", type=int)
    p.add_argument("--range", help="LO..HI, inclusive")
    p.add_argument("--only", choices=("split", "ramified"))
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("scan", parents=[common], help="cycle-type densities up to pmax")
    p.add_argument("--poly", required=True)
    p.add_argument("--pmax", type=int, default=Config.pmax)
    p.add_argument("--expected", choices=sorted(PRESETS))
    p.add_argument("--class-sizes", help="TYPE:COUNT,... with TYPE like 1^3.2^2")
    p.add_argument("--group-order", type=int)
    p.add_argument("--tolerance", type=float, default=0.02)
    p.add_argument("--output", help="write the report here instead of stdout")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("factor", parents=[common], help="factor a polynomial over F_p")
    p.add_argument("--poly", required=True)
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("cyclo", parents=[common], help="cyclotomic residue-rule and Lucas tables")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--count", type=int, help="number of Lucas terms (default M)")
    p.set_defaults(func=cmd_cyclo)

    p = sub.add_parser("tau", parents=[common], help="Delta(l) table for Ramanujan tau")
    p.add_argument("--lmax", type=int, default=7)
    p.add_argument("--pmax", type=int, default=0, help="also check tau(l^p) mod p for odd p <= pmax")
    p.set_defaults(func=cmd_tau)

    p = sub.add_parser("perrin", parents=[common], help="Perrin pseudoprimes up to a limit")
    p.add_argument("--limit", type=int, required=True)
    p.set_defaults(func=cmd_perrin)

    p = sub.add_parser("lucas", parents=[common], help="power sums L_n of the roots")
    p.add_argument("--poly", required=True)
    p.add_argument("--count", type=int, default=8)
    p.set_defaults(func=cmd_lucas)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = _config(args)
        return args.func(args, cfg, out)
    except (UsageError, CapExceeded, PolyParseError) as exc:
        print(f"frobscope: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InternalInconsistency as exc:
        print(f"frobscope: check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (FrobscopeError, ValueError) as exc:
        print(f"frobscope: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
