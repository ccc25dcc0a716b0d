"""Command line entry point: ``unicomp {construct,spectrum,poly,search,verify}``.

Exit codes: 0 success / all verdicts hold, 1 a verdict failed,
2 usage error, 3 internal error (convergence or bound).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction

from . import families
from .eigen import DEFAULT_GAP_TOL, DEFAULT_TOL, ConvergenceError, full_spectrum
from .enumerate import DESK_MAX_N, OBJECTIVES, BoundError, minimize
from .graph import complement, decode_graph6, encode_graph6
from .poly import char_poly, exact_decimal, least_real_root, paper_f, paper_g, paper_g_bar
from . import verify

log = logging.getLogger("unicomp")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

# claim -> (default inclusive n range, least n the claim covers)
CLAIMS = {
    "lemma2.1": ((13, 40), 13),
    "lemma2.2": ((20, 40), 20),
    "lemma3.1": ((5, 10), 2),
    "lemma3.2": ((5, 10), 3),
    "lemma3.3": ((5, 9), 5),
    "theorem3.4": ((20, 40), 5),
    "remark-un": ((6, 10), 6),
}


class UsageError(Exception):
    pass


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def _read_graph(arg: str | None):
    text = arg if arg is not None else sys.stdin.readline()
    try:
        return decode_graph6(text)
    except ValueError as exc:
        raise UsageError(f"bad graph6 input: {exc}") from exc


def _n_range(text: str | None, claim: str) -> list[int]:
    default, _ = CLAIMS[claim]
    if text is None:
        lo, hi = default
    else:
        try:
            lo_s, hi_s = text.split(":") if ":" in text else (text, text)
            lo, hi = int(lo_s), int(hi_s)
        except ValueError as exc:
            raise UsageError(f"--n-range must look like A:B, got {text!r}") from exc
    if lo > hi:
        raise UsageError(f"empty n range {lo}:{hi}")
    return list(range(lo, hi + 1))


def cmd_construct(args) -> int:
    fam = args.family
    try:
        if fam in ("star", "cycle", "complete", "s3"):
            if args.n is None:
                raise UsageError(f"--n is required for family {fam}")
            built = getattr(families, fam)(args.n)
            g = built.graph if fam == "s3" else built
        elif fam == "u":
            if args.p is None or args.q is None:
                raise UsageError("--p and --q are required for family u")
            g = families.u_pq(args.p, args.q).graph
        else:
            if args.p is None:
                raise UsageError("--p is required for family uprime")
            g = families.u_prime(args.p).graph
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.complement:
        g = complement(g)
    sys.stdout.write(encode_graph6(g) + "\n")
    return EXIT_OK


def cmd_spectrum(args) -> int:
    g = _read_graph(args.graph6)
    _emit({"graph6": encode_graph6(g), **full_spectrum(g, args.tol, args.gap_tol).to_dict()})
    return EXIT_OK


def cmd_poly(args) -> int:
    try:
        if args.which == "f":
            if args.p is None or args.q is None:
                raise UsageError("poly f needs --p and --q")
            poly = paper_f(args.p, args.q)
        elif args.which in ("g", "gbar"):
            if args.p is None:
                raise UsageError(f"poly {args.which} needs --p")
            poly = paper_g(args.p) if args.which == "g" else paper_g_bar(args.p)
        else:
            poly = char_poly(_read_graph(args.graph6))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    out = {"which": args.which, "coeffs": poly.to_json()}
    if args.eval is not None:
        try:
            point = Fraction(args.eval)
        except ValueError as exc:
            raise UsageError(f"--eval must be a rational, got {args.eval!r}") from exc
        out["eval"] = {"at": str(point), "value": exact_decimal(Fraction(poly(point)))}
    if args.least_root:
        out["least_root"] = least_real_root(poly, args.root_tol).to_json()
    _emit(out)
    return EXIT_OK


def cmd_search(args) -> int:
    if args.n > args.max_n:
        raise BoundError(f"n={args.n} exceeds the desk bound {args.max_n} (raise with --max-n)")
    if args.max_n > DESK_MAX_N:
        log.warning("--max-n %d is above the default desk bound %d; this may be slow", args.max_n, DESK_MAX_N)
    if args.n < 3:
        raise UsageError("search needs n >= 3")
    rep = minimize(args.n, args.objective, args.tol, args.gap_tol, args.threads, max_n=args.max_n)
    if args.format == "csv":
        sys.stdout.write(rep.to_csv())
    elif args.format == "text":
        sys.stdout.write(
            f"n={rep.n} objective={rep.objective} class_size={rep.class_size} "
            f"min={rep.min_value:.15g} unique={rep.unique}\n"
        )
        for m in rep.minimizers:
            sys.stdout.write(f"  {m['graph6']}  canonical={m['canonical']}\n")
    else:
        sys.stdout.write(rep.to_json(include_time=not args.no_time) + "\n")
    return EXIT_OK


def _run_claim(claim: str, n: int, args) -> verify.Verdict:
    if claim == "lemma2.1":
        return verify.check_lemma_2_1(n, force=args.force)
    if claim == "lemma2.2":
        return verify.check_lemma_2_2(n, force=args.force)
    if claim == "lemma3.1":
        return verify.check_lemma_3_1(n, args.trials, args.seed)
    if claim == "lemma3.2":
        return verify.check_lemma_3_2(n, args.trials, args.seed)
    if claim == "lemma3.3":
        return verify.check_lemma_3_3(n, args.tol, args.gap_tol, threads=args.threads, force=args.force)
    if claim == "theorem3.4":
        return verify.check_theorem_3_4(n, threads=args.threads, tol=args.tol, gap_tol=args.gap_tol,
                                        max_n=args.max_n)
    return verify.check_remark_minimizer_un(n, args.threads, args.tol, args.gap_tol, force=args.force,
                                            max_n=args.max_n)


def cmd_verify(args) -> int:
    if args.claim != "all" and args.claim not in CLAIMS:
        raise UsageError(f"unknown claim {args.claim!r}; choose from {', '.join(CLAIMS)} or all")
    claims = list(CLAIMS) if args.claim == "all" else [args.claim]
    all_hold = True
    for claim in claims:
        ns = _n_range(args.n_range, claim)
        if args.claim == "all" and args.n_range is not None:
            ns = [n for n in ns if n >= CLAIMS[claim][1]]
        for n in ns:
            try:
                v = _run_claim(claim, n, args)
            except BoundError:
                raise
            except ValueError as exc:
                raise UsageError(str(exc)) from exc
            all_hold &= v.holds
            d = v.to_dict()
            if args.no_time:
                d["parameters"].get("report", {}).pop("wall_time", None)
            _emit(d)
    return EXIT_OK if all_hold else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="eigen residual tolerance")
    common.add_argument("--gap-tol", type=float, default=DEFAULT_GAP_TOL,
                        help="eigenvalues closer than this count as tied")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-n", type=int, default=DESK_MAX_N)
    common.add_argument("--no-time", action="store_true", help="omit wall_time from reports")

    ap = argparse.ArgumentParser(prog="unicomp", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", parents=[common], help="emit graph6 of a named family member")
    c.add_argument("--family", required=True, choices=("star", "cycle", "complete", "s3", "u", "uprime"))
    c.add_argument("--n", type=int)
    c.add_argument("--p", type=int)
    c.add_argument("--q", type=int)
    c.add_argument("--complement", action="store_true")
    c.set_defaults(func=cmd_construct)

    s = sub.add_parser("spectrum", parents=[common], help="spectrum of a graph6 graph (arg or stdin)")
    s.add_argument("graph6", nargs="?")
    s.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("poly", parents=[common], help="exact polynomials f, g, gbar or a charpoly")
    p.add_argument("which", choices=("f", "g", "gbar", "charpoly"))
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--graph6", help="graph for charpoly (default: stdin)")
    p.add_argument("--eval", help="exact evaluation point, e.g. -2 or 7/3")
    p.add_argument("--least-root", action="store_true")
    p.add_argument("--root-tol", type=float, default=1e-12)
    p.set_defaults(func=cmd_poly)

    r = sub.add_parser("search", parents=[common], help="exhaustive minimiser search over unicyclic graphs")
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--objective", choices=OBJECTIVES, default="lamin-complement")
    r.set_defaults(func=cmd_search)

    v = sub.add_parser("verify", parents=[common], help="check a claim over a range of n")
    v.add_argument("claim", help=f"one of {', '.join(CLAIMS)}, all")
    v.add_argument("--n-range", help="inclusive range A:B")
    v.add_argument("--trials", type=int, default=10_000)
    v.add_argument("--force", action="store_true", help="run outside the claim's hypothesis")
    v.set_defaults(func=cmd_verify)
    return ap


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, stream=sys.stderr, format="%(levelname)s: %(message)s")
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.tol <= 0 or args.gap_tol < args.tol:
        sys.stderr.write("error: need tol > 0 and gap-tol >= tol\n")
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (BoundError, ConvergenceError, ArithmeticError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
