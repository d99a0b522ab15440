"""mu-forge: command-line front end.

Every subcommand prints one JSON document (or an indented text rendering
with --format text).  p-adic numbers are always written as
{"value": v, "p": p, "cert": c}, meaning v mod p^c.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .arith import PadicInt, PadicSeries
from .congruence import NA, scan_pairs, sigma_incomplete, verify_theorems
from .curves import CurveData, corpus_curve, is_prime, load_corpus, parse_curve, prime_factors
from .dirichlet import DirichletCharacter
from .errors import MuForgeError
from .lfun import interpolation_check, lp_for_curve
from .lfun.theta import DEFAULT_MAX_LEVEL
from .msym import build_space, configure_cache, curve_symbol, eval_symbol, genus_x0, number_of_cusps
from .msym.cache import cache_dir

EXIT_OK, EXIT_ERROR, EXIT_NA = 0, 1, 2


class UsageError(Exception):
    pass


# parsing ------------------------------------------------------------------

def resolve_curve(text: str, corpus=None) -> CurveData:
    """A curve spec ``a1,a2,a3,a4,a6:N`` or a corpus label such as ``11a1``."""
    if ":" in text:
        return parse_curve(text)
    E = corpus_curve(text, corpus)
    if E is None:
        raise UsageError(f"unknown curve {text!r}: give a1,a2,a3,a4,a6:N or a corpus label")
    return E


def parse_character(text: str) -> DirichletCharacter:
    """``trivial``, ``quadratic:D`` or ``m:e1,e2,...`` (exponents as fractions of a turn)."""
    text = text.strip()
    if text in ("", "trivial", "1"):
        return DirichletCharacter.trivial()
    head, _, rest = text.partition(":")
    if head == "quadratic":
        return DirichletCharacter.kronecker(int(rest))
    try:
        m = int(head)
        exps = [Fraction(x) for x in rest.split(",")] if rest else []
    except ValueError as exc:
        raise UsageError(f"bad character spec {text!r}") from exc
    return DirichletCharacter.from_generators(m, exps)


def _int_list(text: str) -> list:
    if not text:
        return []
    return [int(x) for x in text.split(",")]


# rendering ----------------------------------------------------------------

def padic(x: PadicInt) -> dict:
    return {"value": x.residue, "p": x.p, "cert": x.N}


def series(F: PadicSeries) -> list:
    return [padic(c) for c in F.coeffs]


def _lp_payload(L) -> dict:
    inv = L.invariants()
    return {
        "curve": L.curve.spec_string(),
        "label": L.curve.label,
        "p": L.p,
        "character": L.character.describe(),
        "precision": L.series.N,
        "tdeg": L.series.M,
        "theta_level": L.stabilization_level,
        "agreement_with_previous_level": list(L.agreement),
        "coefficients": series(L.series),
        "mu": inv.mu,
        "lambda": inv.lam,
        "mu_lower_bound": inv.mu_lower,
    }


def _text(obj, indent=0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        if set(obj) == {"value", "p", "cert"}:
            return f"{pad}{obj['value']} mod {obj['p']}^{obj['cert']}"
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
        return "\n".join(lines)
    if isinstance(obj, list):
        if all(not isinstance(v, (dict, list)) for v in obj):
            return f"{pad}{obj}"
        return "\n".join(_text(v, indent) for v in obj)
    return f"{pad}{obj}"


# commands -----------------------------------------------------------------

def cmd_ap(args, corpus):
    E = resolve_curve(args.curve, corpus)
    primes = _int_list(args.primes) or [q for q in range(2, args.bound + 1) if is_prime(q)]
    for q in primes:
        if not is_prime(q):
            raise UsageError(f"{q} is not prime")
    return {"curve": E.spec_string(), "label": E.label,
            "ap": {str(q): E.ap(q) for q in primes},
            "bad_primes": [q for q in primes if E.conductor % q == 0]}, EXIT_OK


def cmd_space(args, corpus):
    if args.level is None and args.curve is None:
        raise UsageError("space needs --level or --curve")
    N = args.level if args.level is not None else resolve_curve(args.curve, corpus).conductor
    B = build_space(N)
    return {"level": N, "dimension": B.dimension, "cuspidal_dimension": B.cuspidal_dimension,
            "genus": genus_x0(N), "cusps": number_of_cusps(N)}, EXIT_OK


def _require_p(args, E):
    if args.p is None:
        raise UsageError("--p is required")
    if args.p < 3 or not is_prime(args.p):
        raise UsageError("p must be an odd prime")


def cmd_symbol(args, corpus):
    E = resolve_curve(args.curve, corpus)
    _require_p(args, E)
    out = {}
    for sign in ((1, -1) if args.sign == 0 else (args.sign,)):
        sym = curve_symbol(E, sign, args.p)
        out["plus" if sign > 0 else "minus"] = {
            r: str(eval_symbol(sym, Fraction(r))) for r in args.at.split(",")}
    return {"curve": E.spec_string(), "label": E.label, "p": args.p, "values": out}, EXIT_OK


def _lp(args, E, chi):
    _require_p(args, E)
    return lp_for_curve(E, args.p, chi, args.tdeg, args.prec, args.max_level)


def cmd_lp(args, corpus):
    E = resolve_curve(args.curve, corpus)
    return _lp_payload(_lp(args, E, parse_character(args.chi))), EXIT_OK


def cmd_sigma_lp(args, corpus):
    E = resolve_curve(args.curve, corpus)
    chi = parse_character(args.chi)
    L = _lp(args, E, chi)
    sigma = _int_list(args.sigma) if args.sigma is not None else prime_factors(E.conductor)
    if args.p in sigma:
        raise UsageError("sigma may not contain p")
    S = sigma_incomplete(L, sigma, chi)
    payload = _lp_payload(S)
    payload["sigma"] = sorted(set(sigma))
    payload["complete"] = _lp_payload(L)
    return payload, EXIT_OK


def cmd_interp(args, corpus):
    E = resolve_curve(args.curve, corpus)
    L = _lp(args, E, parse_character(args.chi))
    reports = [interpolation_check(L, k).as_dict() for k in _int_list(args.k)]
    ok = all(r["pass"] for r in reports)
    return {"curve": E.spec_string(), "label": E.label, "p": args.p,
            "character": L.character.describe(), "checks": reports, "all_pass": ok}, EXIT_OK if ok else EXIT_ERROR


def cmd_scan(args, corpus):
    if args.p is None:
        raise UsageError("--p is required")
    curves = load_corpus(corpus)
    pairs = scan_pairs(args.bound, args.p, curves, args.margin, args.jobs)
    return {"p": args.p, "conductor_bound": args.bound,
            "pairs": [{"curves": [a.label, b.label], "specs": [a.spec_string(), b.spec_string()],
                       "evidence_bound": ev.bound} for a, b, ev in pairs]}, EXIT_OK


def cmd_verify(args, corpus):
    if not args.pair:
        raise UsageError("verify needs --pair E1 E2")
    E1, E2 = (resolve_curve(t, corpus) for t in args.pair)
    _require_p(args, E1)
    sigma = _int_list(args.sigma) if args.sigma is not None else None
    R = verify_theorems(E1, E2, args.p, parse_character(args.chi), M=args.tdeg, N=args.prec,
                        extra_margin=args.margin, sigma=sigma, n_max=args.max_level)
    payload = R.as_dict()
    payload["series"] = {"sigma_incomplete": [series(S.series) for S in R.series[2:]]}
    code = EXIT_NA if any(v == NA for v in R.verdicts.values()) else EXIT_OK
    return payload, code


COMMANDS = {"ap": cmd_ap, "space": cmd_space, "symbol": cmd_symbol, "lp": cmd_lp, "sigma-lp": cmd_sigma_lp,
            "interp": cmd_interp, "scan": cmd_scan, "verify": cmd_verify}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--curve", help="a1,a2,a3,a4,a6:N or a corpus label")
    common.add_argument("--p", type=int, help="odd prime of good ordinary reduction")
    common.add_argument("--prec", type=int, default=3, help="p-adic precision N (default 3)")
    common.add_argument("--tdeg", type=int, default=5, help="number of T-coefficients M (default 5)")
    common.add_argument("--max-level", type=int, default=DEFAULT_MAX_LEVEL, help="largest theta level")
    common.add_argument("--chi", default="trivial", help="trivial, quadratic:D or m:e1,e2,...")
    common.add_argument("--sigma", help="comma-separated primes for the Sigma-incomplete series")
    common.add_argument("--corpus", help="alternative curve table")
    common.add_argument("--jobs", type=int, default=1, help="worker cap")
    common.add_argument("--cache", help="cache directory (default: $MUFORGE_CACHE)")
    common.add_argument("--format", choices=("json", "text"), default="json")

    parser = argparse.ArgumentParser(prog="mu-forge", description="Exact p-adic L-functions of elliptic curves.")
    parser.add_argument("--version", action="version", version=f"mu-forge {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("ap", parents=[common], help="a_l table")
    p.add_argument("--primes", default="", help="comma-separated primes")
    p.add_argument("--bound", type=int, default=50, help="all primes up to this bound when --primes is absent")
    p = sub.add_parser("space", parents=[common], help="modular symbol dimensions")
    p.add_argument("--level", type=int)
    p = sub.add_parser("symbol", parents=[common], help="normalized modular symbol values")
    p.add_argument("--sign", type=int, choices=(-1, 0, 1), default=0, help="0 prints both signs")
    p.add_argument("--at", default="0", help="comma-separated rationals")
    sub.add_parser("lp", parents=[common], help="p-adic L-series with mu and lambda")
    sub.add_parser("sigma-lp", parents=[common], help="Sigma-incomplete p-adic L-series")
    p = sub.add_parser("interp", parents=[common], help="interpolation check at T = zeta - 1")
    p.add_argument("--k", default="0,1", help="zeta orders p^k to test")
    p = sub.add_parser("scan", parents=[common], help="scan the corpus for congruent pairs")
    p.add_argument("--bound", type=int, default=100, help="conductor bound")
    p.add_argument("--margin", type=float, default=1.0, help="Sturm bound multiplier")
    p = sub.add_parser("verify", parents=[common], help="mu comparison report for a pair")
    p.add_argument("--pair", nargs=2, metavar="CURVE")
    p.add_argument("--margin", type=float, default=1.0, help="Sturm bound multiplier")
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.prec < 1 or args.tdeg < 1 or args.max_level < 2:
        print("error: precision parameters must be positive", file=stderr)
        return EXIT_ERROR
    configure_cache(cache_dir(args.cache))
    try:
        payload, code = COMMANDS[args.command](args, args.corpus)
    except (UsageError, MuForgeError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_ERROR
    finally:
        configure_cache(None)
    payload = {"command": args.command, "version": __version__, "result": payload}
    if args.format == "json":
        stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        stdout.write(_text(payload) + "\n")
    return code


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
