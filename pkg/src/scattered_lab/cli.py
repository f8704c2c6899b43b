"""Command-line experiment runner emitting ``scattered-lab/v1`` JSON reports.

Exit codes: 0 pass, 2 claim failed, 3 configuration error, 4 budget exhausted.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from pathlib import Path

from . import report
from .equiv import gammaL_scan, gl_stabilizer
from .errors import ParameterError, ScatteredLabError
from .families import (TAGS, FamilySpec, default_lp_delta, find_cmpz_delta, trinomial_parameters)
from .gf import Field, make_field, prime_power
from .linset import is_scattered, linear_set, max_linearity
from .mrd import code_from, code_report
from .report import EXIT_BUDGET, EXIT_CLAIM_FAIL, EXIT_CONFIG, EXIT_OK


class ConfigError(ParameterError):
    """Malformed command line."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ConfigError(message)


# ---------------------------------------------------------------------------
# parsing helpers
# ---------------------------------------------------------------------------

def parse_field(args) -> Field:
    if args.q is not None:
        p, e = prime_power(args.q)
        if (args.p is not None and args.p != p) or (args.e is not None and args.e != e):
            raise ConfigError(f"--q {args.q} contradicts --p/--e")
    elif args.p is not None:
        p, e = args.p, args.e or 1
    else:
        raise ConfigError("give --q or --p [--e]")
    mu = None
    if args.modulus:
        try:
            mu = [int(c) for c in args.modulus.split(",")]
        except ValueError:
            raise ConfigError(f"--modulus expects comma-separated integers, got {args.modulus!r}") from None
    return make_field(p, e, args.n, mu)


def parse_element(F: Field, text: str) -> int:
    """An integer encoding, or ``g^k`` for a power of the primitive element."""
    text = text.strip()
    try:
        if text.startswith("g^"):
            return F.g_pow(int(text[2:]))
        v = int(text)
    except ValueError:
        raise ConfigError(f"cannot read field element {text!r}") from None
    if not 0 <= v < F.order:
        raise ConfigError(f"element {v} outside 0..{F.order - 1}")
    return v


def resolve_family(F: Field, tag: str, s=None, b=None, delta=None) -> FamilySpec:
    """Family spec with ``auto`` parameters replaced by their deterministic choices."""
    tag = tag.upper()
    if tag not in TAGS:
        raise ConfigError(f"unknown family {tag!r}; choose from {', '.join(t.lower() for t in TAGS)}")
    if tag == "TRI":
        if b in (None, "auto"):
            roots = trinomial_parameters(F)
            if not roots:
                raise ParameterError(f"b^2 + b = 1 has no root in F_{F.q}")
            bv = roots[0]
        else:
            bv = parse_element(F, b)
        spec = FamilySpec("TRI", F, b=bv)
    else:
        sv = 1 if s is None else int(s)
        dv = None
        if tag in ("LP", "CMPZ"):
            if delta in (None, "auto"):
                dv = default_lp_delta(F) if tag == "LP" else find_cmpz_delta(F, sv)
            else:
                dv = parse_element(F, delta)
        spec = FamilySpec(tag, F, s=sv, delta=dv)
    spec.poly()  # validates parameters
    return spec


def parse_family_string(F: Field, text: str) -> FamilySpec:
    """``tri:b=2`` or ``lp:s=1,delta=auto``."""
    tag, _, rest = text.partition(":")
    kw = {}
    for item in filter(None, rest.split(",")):
        k, eq, v = item.partition("=")
        if not eq or k not in ("s", "b", "delta"):
            raise ConfigError(f"bad family parameter {item!r} in {text!r}")
        kw[k] = v
    return resolve_family(F, tag, **kw)


def _family_from_args(F: Field, args) -> FamilySpec:
    if not args.family:
        raise ConfigError("--family is required")
    if ":" in args.family:
        return parse_family_string(F, args.family)
    return resolve_family(F, args.family, args.s, args.b, args.delta)


def _write_csv(path: str, header: list[str], rows) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


# ---------------------------------------------------------------------------
# commands: each returns (field, params, result, exit_code, coverage)
# ---------------------------------------------------------------------------

def cmd_verify_scattered(args):
    F = parse_field(args)
    fam = _family_from_args(F, args)
    f = fam.poly()
    res = is_scattered(f, threads=args.threads)
    L = linear_set(f)
    hist = L.histogram()
    result = {
        "family": fam.to_json(),
        "scattered": res.scattered,
        "witness": None if res.witness is None else F.coords(res.witness),
        "bad_slopes": len(res.bad_slopes),
        "points": len(L),
        "weights": {str(w): c for w, c in sorted(hist.items())},
        "max_linearity": max_linearity(f),
    }
    if args.csv:
        _write_csv(args.csv, ["weight", "points"], sorted(hist.items()))
    return F, {"family": fam.to_json()}, result, EXIT_OK if res.scattered else EXIT_CLAIM_FAIL, None


def cmd_stabilizer(args):
    F = parse_field(args)
    fam = _family_from_args(F, args)
    st = gl_stabilizer(fam.poly(), threads=args.threads)
    result = {"family": fam.to_json(), **st.to_json(with_elements=st.order <= args.max_elements)}
    code = EXIT_OK if args.expect is None or args.expect == st.order else EXIT_CLAIM_FAIL
    cov = report.coverage_json(True, F.order**2, F.order**2, None)
    return F, {"family": fam.to_json(), "expect": args.expect}, result, code, cov


def cmd_equiv(args):
    F = parse_field(args)
    if not (args.left and args.right):
        raise ConfigError("--left and --right are required")
    left, right = parse_family_string(F, args.left), parse_family_string(F, args.right)
    rep = gammaL_scan(left.poly(), right.poly(), args.mode, args.budget, args.resume, args.threads)
    w = rep.witness
    equivalent = True if w is not None else (False if rep.complete else None)
    result = {"left": left.to_json(), "right": right.to_json(), "mode": args.mode,
              "equivalent": equivalent, "witness": None if w is None else w.to_json()}
    if equivalent is None:
        code = EXIT_BUDGET
    elif args.expect is not None and args.expect != ("equivalent" if equivalent else "inequivalent"):
        code = EXIT_CLAIM_FAIL
    else:
        code = EXIT_OK
    cov = report.coverage_json(rep.complete, rep.scanned, rep.total, rep.resume_token)
    params = {"left": left.to_json(), "right": right.to_json(), "mode": args.mode, "expect": args.expect}
    return F, params, result, code, cov


def cmd_mrd(args):
    F = parse_field(args)
    fam = _family_from_args(F, args)
    rep = code_report(code_from(fam.poly()), args.threads)
    if args.csv:
        _write_csv(args.csv, ["rank", "classes"], sorted((int(k), v) for k, v in rep["rank_spectrum"].items()))
    result = {"family": fam.to_json(), **rep}
    return F, {"family": fam.to_json()}, result, EXIT_OK if rep["mrd"] else EXIT_CLAIM_FAIL, None


def cmd_paper_suite(args):
    from .suite import run_all

    only = [int(x) for x in args.only.split(",")] if args.only else None
    results = run_all(args.seed, args.threads, only)
    for r in results:
        print(r.line(), file=sys.stderr)
    verdicts = {r.key: r.verdict_json() for r in results}
    args._timings = {r.key: r.timing_json() for r in results}
    ok = all(r.ok for r in results)
    if args.csv:
        _write_csv(args.csv, ["number", "claim", "passed", "elapsed_s"],
                   [(r.number, r.key, r.passed, r.elapsed_s) for r in results])
    result = {"claims": verdicts, "passed": sum(r.passed for r in results), "total": len(results)}
    return None, {"only": only}, result, EXIT_OK if ok else EXIT_CLAIM_FAIL, None


COMMANDS = {
    "verify-scattered": cmd_verify_scattered,
    "stabilizer": cmd_stabilizer,
    "equiv": cmd_equiv,
    "mrd": cmd_mrd,
    "paper-suite": cmd_paper_suite,
}


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="scattered-lab", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    common = _Parser(add_help=False)
    g = common.add_argument_group("field")
    g.add_argument("--q", type=int, help="field size q (prime power)")
    g.add_argument("--p", type=int, help="characteristic (with --e)")
    g.add_argument("--e", type=int, help="q = p^e")
    g.add_argument("--n", type=int, default=6, help="extension degree (default 6)")
    g.add_argument("--modulus", help="coefficients c0,...,c_d of a monic irreducible over F_p")
    h = common.add_argument_group("family")
    h.add_argument("--family", help="pr, lp, cmpz, tri, or a string such as tri:b=2")
    h.add_argument("--s", type=int)
    h.add_argument("--b", help="field element (integer encoding, g^k) or auto")
    h.add_argument("--delta", help="field element (integer encoding, g^k) or auto")
    r = common.add_argument_group("run")
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--threads", type=int, default=1)
    r.add_argument("--budget", type=int, help="maximum (A, B) candidates for this call")
    r.add_argument("--resume", help="token from a budget-capped run")
    r.add_argument("--out", help="write the JSON report here instead of stdout")
    r.add_argument("--csv", help="also write the histogram or spectrum as CSV")

    sub.add_parser("verify-scattered", parents=[common], help="scatteredness and weight distribution")
    sp = sub.add_parser("stabilizer", parents=[common], help="GL(2, q^n) stabilizer of U_f")
    sp.add_argument("--expect", type=int, help="expected order; mismatch exits 2")
    sp.add_argument("--max-elements", type=int, default=256, help="list elements up to this order")
    ep = sub.add_parser("equiv", parents=[common], help="(semi)linear equivalence of two subspaces")
    ep.add_argument("--left")
    ep.add_argument("--right")
    ep.add_argument("--mode", choices=["linear", "semilinear"], default="semilinear")
    ep.add_argument("--expect", choices=["equivalent", "inequivalent"])
    sub.add_parser("mrd", parents=[common], help="rank-metric code C_f")
    pp = sub.add_parser("paper-suite", parents=[common], help="run the twelve reproducible claims")
    pp.add_argument("--only", help="comma-separated claim numbers")
    return ap


def _params(args, extra: dict) -> dict:
    base = {"seed": args.seed, "threads": args.threads, "budget": args.budget, "resume": args.resume}
    base.update(extra)
    return base


def main(argv: list[str] | None = None) -> int:
    t0 = time.perf_counter()
    args = None
    command = "paper-suite"
    try:
        args = build_parser().parse_args(argv)
        command = args.command
        if args.threads < 1:
            raise ConfigError("--threads must be positive")
        if args.budget is not None and args.budget < 0:
            raise ConfigError("--budget must be non-negative")
        F, extra, result, code, cov = COMMANDS[command](args)
        params = _params(args, extra)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except ScatteredLabError as exc:
        if isinstance(exc, ParameterError) or args is None:
            F, result, code, cov = None, {"error": type(exc).__name__, "message": str(exc)}, EXIT_CONFIG, None
            params = {"seed": 0, "threads": 1} if args is None else _params(args, {})
            print(f"scattered-lab: {type(exc).__name__}: {exc}", file=sys.stderr)
        else:
            raise
    rep = report.build(command, F, params, result, code, cov, time.perf_counter() - t0)
    if args is not None and getattr(args, "_timings", None):
        rep["run"]["claims"] = args._timings
    text = report.dumps(rep)
    report.validate(json.loads(text))
    if args is not None and args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
