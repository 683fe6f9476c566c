"""Command-line front end.

    abvar census sqrt-q --p 13 --a 1 --format json
    abvar census even --p 7 --a 2
    abvar census sqrt-minus-p --p 11
    abvar census chain --p 5 --d0 -4 --D 3 --n 2 --a-list 0
    abvar class-number --disc -23 [--conductor 3]
    abvar zeta --disc 5
    abvar unit --p 13
    abvar genus --disc -23,-4
    abvar sweep sqrt-q --p-max 100 --a 3 --format csv
    abvar cache info|clear

Exit status: 0 on success, 2 on a domain error, 1 on an internal
arithmetic inconsistency.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import census
from .cache import CLASS_NUMBERS, resolve_cache_path
from .exact_arith import DomainError, fmt_rational, primes_up_to
from .genus import CMAlgebraSpec, genus_partition_oracle, principal_genus_count, ramified_prime_count
from .quadratic_forms import ImaginaryOrderSpec, class_number, class_number_imaginary, class_number_order
from .real_units import fundamental_unit, unit_index, unit_symbols
from .zeta_siegel import zeta_minus_one

log = logging.getLogger("abvar_census")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table", "csv"), default=argparse.SUPPRESS)
    common.add_argument("--cache", metavar="PATH", default=argparse.SUPPRESS,
                        help="class number cache file (overrides $ABVAR_CACHE)")

    parser = argparse.ArgumentParser(prog="abvar", description=__doc__.split("\n\n")[0],
                                     parents=[common])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p_census = sub.add_parser("census", help="size of one isogeny class")
    csub = p_census.add_subparsers(dest="variant", required=True)
    c = csub.add_parser("sqrt-q", parents=[common], help="pi = sqrt(p^a), a odd")
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--a", type=int, required=True)
    c = csub.add_parser("even", parents=[common], help="pi = sqrt(p^a), a even")
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--a", type=int, required=True)
    c = csub.add_parser("sqrt-minus-p", parents=[common], help="pi = sqrt(-p)")
    c.add_argument("--p", type=int, required=True)
    c = csub.add_parser("chain", parents=[common], help="divisor-chain sum over orders R_f")
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--d0", type=int, required=True, help="fundamental discriminant of Q(pi)")
    c.add_argument("--D", type=int, required=True, help="prime-to-p part of the conductor of Z[pi]")
    c.add_argument("--n", type=int, required=True, help="dimension")
    c.add_argument("--a-list", type=_int_list, required=True, help="exponents a_i, comma separated")

    c = sub.add_parser("class-number", parents=[common], help="class number of a quadratic order")
    c.add_argument("--disc", type=int, required=True)
    c.add_argument("--conductor", type=int, default=None)

    c = sub.add_parser("zeta", parents=[common], help="zeta_F(-1) for a real quadratic field")
    c.add_argument("--disc", type=int, required=True)

    c = sub.add_parser("unit", parents=[common], help="fundamental unit of Q(sqrt p)")
    c.add_argument("--p", type=int, required=True)

    c = sub.add_parser("genus", parents=[common], help="principal genus count for a CM algebra")
    c.add_argument("--disc", type=_int_list, required=True, help="D1[,D2,...]")
    c.add_argument("--oracle", action="store_true", help="also run the genus-character oracle")

    p_sweep = sub.add_parser("sweep", help="one census record per prime")
    ssub = p_sweep.add_subparsers(dest="variant", required=True)
    c = ssub.add_parser("sqrt-q", parents=[common])
    c.add_argument("--p-max", type=int, required=True)
    c.add_argument("--a", type=int, required=True)
    c.add_argument("--jobs", type=int, default=1)

    c = sub.add_parser("cache", parents=[common], help="inspect or clear the class number cache")
    c.add_argument("action", choices=("info", "clear"))
    return parser


# -- record construction ----------------------------------------------------


def _record(query, count=None, case="", breakdown=(), **extra):
    rec = {
        "query": query,
        "count": count,
        "sp_count": None,
        "mass": None,
        "breakdown": [{"label": k, "value": fmt_rational(v)} for k, v in breakdown],
        "case": case,
    }
    rec.update(extra)
    return rec


def run_census(args) -> list[dict]:
    if args.variant == "sqrt-q":
        res = census.census_sqrt_q(args.p, args.a)
    elif args.variant == "even":
        res = census.census_even(args.p, args.a)
    elif args.variant == "sqrt-minus-p":
        res = census.census_sqrt_minus_p(args.p)
    else:
        res = census.census_divisor_chain(args.p, args.d0, args.D, args.n, args.a_list)
    return [res.to_record()]


def run_class_number(args) -> list[dict]:
    query = {"disc": args.disc}
    if args.conductor is not None:
        query["conductor"] = args.conductor
        spec = ImaginaryOrderSpec(args.disc, args.conductor)
        h = class_number_order(spec)
        enum = class_number_imaginary(spec.discriminant)
        if h != enum:
            raise ArithmeticError(f"conductor formula {h} != enumeration {enum}")
        return [_record(query, h, "conductor formula")]
    case = "reduced definite forms" if args.disc < 0 else "cycles of reduced indefinite forms"
    return [_record(query, class_number(args.disc), case)]


def run_zeta(args) -> list[dict]:
    z = zeta_minus_one(args.disc)
    return [_record({"disc": args.disc}, None, "Siegel sum", value=fmt_rational(z))]


def run_unit(args) -> list[dict]:
    u = fundamental_unit(args.p)
    extra = {"value": str(u), "norm": u.norm, "unit_index": unit_index(args.p)}
    if args.p % 4 == 1:
        s = unit_symbols(args.p)
        extra.update(varpi_p=s.varpi_p, delta_1_varpi=s.delta_1_varpi, beta_p=s.beta_p)
    return [_record({"p": args.p}, None, "continued fraction", **extra)]


def run_genus(args) -> list[dict]:
    spec = CMAlgebraSpec(tuple(args.disc))
    count = principal_genus_count(spec)
    factors = [
        {"disc": d, "h": class_number_imaginary(d), "t": ramified_prime_count(d)} for d in spec.factors
    ]
    extra = {"factors": factors}
    if args.oracle:
        sizes = 1
        for d in spec.factors:
            sizes *= len(genus_partition_oracle(d).principal_genus)
        if sizes != count:
            raise ArithmeticError(f"genus oracle {sizes} != formula {count}")
        extra["oracle_principal_genus"] = sizes
    return [_record({"disc": list(spec.factors)}, count, "h_K/h_K+ / (Q 2^(t-r))", **extra)]


def run_sweep(args) -> list[dict]:
    primes = primes_up_to(args.p_max)
    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        results = list(pool.map(lambda p: census.census_sqrt_q(p, args.a), primes))
    results.sort(key=lambda r: r.query.p)
    return [r.to_record() for r in results]


def run_cache(args, path) -> list[dict]:
    if args.action == "clear":
        CLASS_NUMBERS.clear()
        if path:
            Path(path).unlink(missing_ok=True)
    return [_record({"path": path}, len(CLASS_NUMBERS), f"cache {args.action}")]


# -- output -------------------------------------------------------------------

_SCALARS = ("count", "sp_count", "mass", "value", "case")


def _flat_row(rec: dict) -> dict:
    row = {}
    for k, v in rec["query"].items():
        row[k] = ",".join(map(str, v)) if isinstance(v, list) else v
    for k in _SCALARS:
        if k in rec and rec[k] is not None and rec[k] != "":
            row[k] = rec[k]
    for k, v in rec.items():
        if k not in row and k not in ("query", "breakdown", "factors") and not isinstance(v, (list, dict)):
            if v is not None:
                row[k] = v
    if rec.get("breakdown"):
        row["breakdown"] = "; ".join(f"{t['label']} = {t['value']}" for t in rec["breakdown"])
    return row


def _columns(rows):
    cols = []
    for row in rows:
        for k in row:
            if k not in cols:
                cols.append(k)
    return cols


def render(records: list[dict], fmt: str, single: bool) -> str:
    if fmt == "json":
        payload = records[0] if single else records
        return json.dumps(payload, indent=2)
    rows = [_flat_row(r) for r in records]
    cols = _columns(rows)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for row in rows:
            w.writerow(row)
        return buf.getvalue().rstrip("\n")
    # table: breakdown goes below a single record rather than into a column
    if single:
        cols = [c for c in cols if c != "breakdown"]
    cells = [[str(c) for c in cols]] + [[str(r.get(c, "")) for c in cols] for r in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(cols))]
    lines = ["  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in cells]
    if single and records[0].get("breakdown"):
        lines.append("")
        for t in records[0]["breakdown"]:
            lines.append(f"  {t['label']} = {t['value']}")
    return "\n".join(lines)


def _glue_negative_lists(argv: list[str]) -> list[str]:
    # argparse takes "-23,-4" for an option string; pass it as --flag=value
    out = []
    it = iter(argv)
    for tok in it:
        if tok in ("--disc", "--a-list"):
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-") and "," in nxt:
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
            continue
        out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_glue_negative_lists(argv))
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    fmt = getattr(args, "format", "table")
    cache_path = resolve_cache_path(getattr(args, "cache", None))
    try:
        if cache_path:
            n = CLASS_NUMBERS.load(cache_path)
            log.debug("loaded %d cached class numbers from %s", n, cache_path)
        if args.command == "census":
            records = run_census(args)
        elif args.command == "class-number":
            records = run_class_number(args)
        elif args.command == "zeta":
            records = run_zeta(args)
        elif args.command == "unit":
            records = run_unit(args)
        elif args.command == "genus":
            records = run_genus(args)
        elif args.command == "sweep":
            records = run_sweep(args)
        else:
            records = run_cache(args, cache_path)
    except DomainError as exc:
        print(f"abvar: domain error: {exc}", file=sys.stderr)
        return 2
    except (ArithmeticError, ValueError) as exc:
        print(f"abvar: internal error: {exc}", file=sys.stderr)
        return 1
    print(render(records, fmt, single=args.command != "sweep"))
    if cache_path and CLASS_NUMBERS.dirty and not (args.command == "cache" and args.action == "clear"):
        CLASS_NUMBERS.dump(cache_path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
