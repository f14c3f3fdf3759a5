"""Command-line front end: expand the universal series, run the stratum
degree pipeline, print the symbolic degree table, and drive the
verification sweeps.

Exit codes: 0 on success, 1 on a verification or computation failure,
2 on flag misuse.  Rationals are always serialized as strings.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import universal, verify
from .permoracle import OracleCache, oracle_for_stratum
from .series import monomial_key
from .unfolding import (FamilySpec, InterpolationError, MultisingularityType,
                        p_polynomial, stratum_report)

CACHE_ENV = "LLSTRATA_CACHE"


def _series_rows(s):
    """(t-monomial key, coefficient series) pairs in canonical order."""
    return [(monomial_key(prof), s.coeff_of_t(prof)) for prof in s.t_profiles()]


def _monomial_latex(prof_key):
    if prof_key == "1":
        return "1"
    out = []
    for factor in prof_key.split("*"):
        name, _, exp = factor.partition("^")
        idx = name[1:]
        out.append(f"t_{{{idx}}}" + (f"^{{{exp}}}" if exp else ""))
    return "".join(out)


def _render_series_map(named, fmt, stream):
    """Render a list of (name, series) pairs in the requested format."""
    if fmt == "json":
        payload = {name: {key: str(c) for key, c in _series_rows(s)}
                   for name, s in named}
        if len(named) == 1:
            payload = payload[named[0][0]]
        json.dump(payload, stream, indent=2)
        stream.write("\n")
        return
    for name, s in named:
        if len(named) > 1:
            stream.write(f"[{name}]\n")
        for key, coeff in _series_rows(s):
            if fmt == "latex":
                stream.write(f"{_monomial_latex(key)}: {coeff.latex()}\n")
            else:
                stream.write(f"{key}: {coeff}\n")
        if len(named) > 1:
            stream.write("\n")


def run_universal(args, stream=None):
    stream = stream or sys.stdout
    tabs = universal.build_tables(args.codim)
    if args.contribution == "A":
        named = [("NA", tabs.na), ("RA", tabs.ra)]
    elif args.contribution == "I":
        named = [("NI'", tabs.ni_prime), ("NI''", tabs.ni_dblprime),
                 ("RI", tabs.ri)]
    elif args.contribution == "0":
        named = [("R0", tabs.r0)]
    else:
        named = [("NA", tabs.na), ("NI'", tabs.ni_prime),
                 ("NI''", tabs.ni_dblprime), ("RA", tabs.ra),
                 ("R0", tabs.r0), ("RI", tabs.ri), ("R", tabs.r_full)]
    _render_series_map(named, args.format, stream)
    return 0


def _parse_family(parser, args):
    if args.family == "polynomial":
        if args.n is None or args.k is not None or args.l is not None:
            parser.error("polynomial family takes -n only")
        return FamilySpec.polynomial(args.n)
    if args.k is None or args.l is None or args.n is not None:
        parser.error("laurent family takes -k and -l")
    return FamilySpec.laurent(args.k, args.l)


def _parse_mu(parser, text):
    if not text:
        return MultisingularityType(())
    try:
        parts = tuple(int(p) for p in text.split(","))
        return MultisingularityType.of(*parts)
    except ValueError as err:
        parser.error(f"invalid --mu {text!r}: {err}")


def run_stratum(args, parser, stream=None):
    stream = stream or sys.stdout
    family = _parse_family(parser, args)
    mu = _parse_mu(parser, args.mu)
    try:
        report = stratum_report(family, mu)
    except ValueError as err:
        parser.error(str(err))
    if args.oracle:
        cache = OracleCache(args.cache) if args.cache else None
        try:
            _, count = oracle_for_stratum(family, mu, cache=cache)
        except ValueError:
            count = 0
        report.oracle_match = (report.hurwitz == count)
    if args.format == "json":
        json.dump(report.to_json_dict(), stream, indent=2)
        stream.write("\n")
        return 0
    pairs = [("family", family.label()), ("mu", mu.label()),
             ("codim", mu.codim), ("class_Y", report.class_Y),
             ("class_B", report.class_B), ("deg_space", report.deg_space),
             ("deg_stratum", report.deg_stratum),
             ("deg_image", report.deg_image), ("deg_LL", report.deg_LL),
             ("hurwitz", report.hurwitz)]
    if report.closed_form is not None:
        pairs.append(("closed_form", report.closed_form))
    if report.closed_form_printed is not None:
        pairs.append(("closed_form_printed", report.closed_form_printed))
    if report.p_value is not None:
        pairs.append(("p_value", report.p_value))
    pairs += [("empty", report.empty),
              ("closed_form_match", report.closed_form_match),
              ("oracle_match", report.oracle_match)]
    width = max(len(k) for k, _ in pairs)
    for key, value in pairs:
        if args.format == "latex" and hasattr(value, "latex"):
            value = value.latex()
        stream.write(f"{key:<{width}}  {value}\n")
    if report.oracle_match is False:
        return 1
    return 0


def _table_types(max_weight):
    out = []

    def gen(n, maxp):
        if n == 0:
            yield ()
            return
        for p in range(min(n, maxp), 0, -1):
            for rest in gen(n - p, p):
                yield (p,) + rest
    for w in range(2, max_weight + 1):
        out.extend(MultisingularityType(parts) for parts in gen(w, w))
    return out


def _sym_latex(poly):
    parts = []
    for (a, b), c in poly.coeffs:
        mono = ""
        if a:
            mono += r"(k+\ell)" + (f"^{{{a}}}" if a > 1 else "")
        if b:
            mono += r"(k\ell)" + (f"^{{{b}}}" if b > 1 else "")
        mag = abs(c)
        if mag.denominator == 1:
            cstr = str(mag.numerator)
        else:
            cstr = rf"\frac{{{mag.numerator}}}{{{mag.denominator}}}"
        body = mono if mono and mag == 1 else cstr + mono
        parts.append(("-" if c < 0 else "+", body))
    sign, body = parts[0]
    text = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        text += sign + body
    return text


def run_table(args, stream=None):
    stream = stream or sys.stdout
    rows = []
    for mu in _table_types(args.max_codim):
        try:
            rows.append((mu, p_polynomial(mu)))
        except InterpolationError as err:
            stream.write(f"interpolation failed for mu={mu.label()}: {err}\n")
            return 1
    if args.format == "json":
        json.dump({mu.label(): str(poly) for mu, poly in rows}, stream, indent=2)
        stream.write("\n")
        return 0
    for mu, poly in rows:
        if args.format == "latex":
            stream.write(f"P_{{{','.join(map(str, mu.parts))}}} = {_sym_latex(poly)}\n")
        else:
            stream.write(f"P_{mu.label()} = {poly}\n")
    return 0


def run_verify(args, stream=None):
    stream = stream or sys.stdout
    cache = OracleCache(args.cache) if args.cache else None
    results = verify.run_all(max_sheets=args.max_sheets,
                             max_codim=args.max_codim, cache=cache)
    failed = False
    for r in results:
        stream.write(f"{r.status:4} {r.name}: {r.details}\n")
        failed = failed or r.passed is False
    n_pass = sum(1 for r in results if r.passed)
    n_fail = sum(1 for r in results if r.passed is False)
    stream.write(f"{n_pass} passed, {n_fail} failed\n")
    return 1 if failed else 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="llstrata",
        description="Universal singularity classes and Lyashko-Looijenga "
                    "degrees for polynomial and Laurent families.")
    default_cache = os.environ.get(CACHE_ENV)
    sub = parser.add_subparsers(dest="command", required=True)

    p_uni = sub.add_parser("universal", help="expand the universal series")
    p_uni.add_argument("--codim", type=int, required=True)
    p_uni.add_argument("--contribution", choices=["all", "A", "I", "0"],
                       default="all")
    p_uni.add_argument("--format", choices=["text", "json", "latex"],
                       default="text")

    p_str = sub.add_parser("stratum", help="degree pipeline for one stratum")
    p_str.add_argument("--family", choices=["polynomial", "laurent"],
                       required=True)
    p_str.add_argument("-n", type=int)
    p_str.add_argument("-k", type=int)
    p_str.add_argument("-l", type=int)
    p_str.add_argument("--mu", default="",
                       help="comma-separated singularity orders, e.g. 2,1")
    p_str.add_argument("--format", choices=["text", "json", "latex"],
                       default="text")
    p_str.add_argument("--oracle", action="store_true",
                       help="cross-check against the factorization count")
    p_str.add_argument("--cache", default=default_cache)

    p_tab = sub.add_parser("table", help="symbolic degree table")
    p_tab.add_argument("--max-codim", type=int, default=3,
                       help="largest total singularity weight |m|")
    p_tab.add_argument("--format", choices=["text", "json", "latex"],
                       default="text")

    p_ver = sub.add_parser("verify", help="run every invariant suite")
    p_ver.add_argument("--max-sheets", type=int, default=6)
    p_ver.add_argument("--max-codim", type=int, default=6)
    p_ver.add_argument("--cache", default=default_cache)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "universal":
            return run_universal(args)
        if args.command == "stratum":
            return run_stratum(args, parser)
        if args.command == "table":
            return run_table(args)
        return run_verify(args)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
