"""Command-line front end.

Weights are entered in fundamental-weight coordinates without a rho shift:
``--lambda 1,1`` in type A2 is rho, and ``M(lambda)`` has highest weight
``lambda - rho``.  Reports print both.

Exit codes: 0 success, 1 failed checks, 2 parse/validation errors,
3 computation guards (depth too small, degenerate input).
"""

from __future__ import annotations

import argparse
import contextlib
import os
import sys
import time

from . import report as R
from .checks import SUITES, run_suites
from .dvr import DVRError
from .filtration import FiltrationError, bruhat_pairs, make_block, strictness_check, verma_jantzen
from .klpoly import DEFAULT_PARABOLIC, PARABOLIC_CONVENTIONS, KLCache, KLError, kl_table, parabolic_kl
from .pbw import SIGN_CONVENTIONS, ChevalleyError
from .rootdata import CartanType, RootDataError, build_root_system, parse_weight
from .verma import VermaError
from .weyl import WeylError, coset_decomposition, weyl_group
from .whittaker import WhittakerError, make_eta, whittaker_jantzen

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3
USAGE_ERRORS = (RootDataError, WeylError, KLError, WhittakerError, VermaError)
GUARD_ERRORS = (FiltrationError, DVRError, ChevalleyError)


class UsageError(ValueError):
    pass


# -- option parsing ----------------------------------------------------------------------------

def _common(p: argparse.ArgumentParser, *, weights: bool = True):
    p.add_argument("--type", required=True, help="Cartan type, e.g. A2, B3, G2")
    if weights:
        p.add_argument("--lambda", dest="lam", help="weight in fundamental coordinates (default rho)")
        p.add_argument("--gamma", help="deformation direction (default rho)")
        p.add_argument("--depth", type=int, help="truncation depth (height of lambda - mu)")
        p.add_argument("--sign", choices=SIGN_CONVENTIONS, default="min+", help="Chevalley sign convention")


def _output(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=sorted(R.RENDERERS), default="json")
    p.add_argument("--cache-dir", help="KL cache directory (overrides JANTZEN_CACHE)")
    p.add_argument("--threads", type=int, default=None, help="accepted for compatibility; work is sequential")
    p.add_argument("--timing", action="store_true", help="include wall-clock time in the report")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="jantzen", description=__doc__.split("\n\n")[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {R.VERSION}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("roots", help="positive roots, Cartan matrix, weight classification")
    _common(p, weights=False)
    p.add_argument("--lambda", dest="lam", help="optional weight to classify")
    _output(p)

    p = sub.add_parser("weyl", help="Weyl group elements and coset representatives")
    _common(p, weights=False)
    p.add_argument("--eta", help="eta values per simple root; lists longest coset representatives")
    _output(p)

    p = sub.add_parser("kl", help="Kazhdan-Lusztig polynomials (ordinary or parabolic)")
    _common(p, weights=False)
    p.add_argument("--x", help="element x (default: all x <= w)")
    p.add_argument("--w", default="w0", help="element w (default w0)")
    p.add_argument("--eta", help="eta values; selects the parabolic flavour")
    p.add_argument("--parabolic", choices=PARABOLIC_CONVENTIONS, default=DEFAULT_PARABOLIC)
    _output(p)

    p = sub.add_parser("verma-jantzen", help="Jantzen filtration of a Verma module")
    _common(p)
    _output(p)

    p = sub.add_parser("whittaker-jantzen", help="Jantzen filtration of a standard Whittaker module")
    _common(p)
    p.add_argument("--eta", required=True, help="eta values per simple root (rationals)")
    p.add_argument("--w", help="block element (default: the one with w lam_- = lambda)")
    p.add_argument("--parabolic", choices=PARABOLIC_CONVENTIONS, default=DEFAULT_PARABOLIC)
    p.add_argument("--strictness", action="store_true", help="also check strictness against each row")
    _output(p)

    p = sub.add_parser("strictness", help="strictness of Verma embeddings M(v lam_-) -> M(w lam_-)")
    _common(p)
    p.add_argument("--v", help="smaller element (default: all Bruhat pairs)")
    p.add_argument("--w", help="larger element")
    p.add_argument("--shift", type=int, help="force a shift instead of searching for one")
    _output(p)

    p = sub.add_parser("check", help="run the bundled acceptance suites")
    p.add_argument("--suite", choices=sorted(SUITES) + ["all"], default="all")
    _output(p)

    p = sub.add_parser("cache", help="KL cache administration")
    p.add_argument("action", choices=["info", "clear", "warm"])
    p.add_argument("--type", help="Cartan type (required for warm)")
    _output(p)
    return ap


def _rs(args):
    return build_root_system(CartanType.parse(args.type))


def _weight(rs, text, default=None):
    if text is None:
        return default
    return parse_weight(text, rs.rank)


def _cache(args) -> KLCache:
    return KLCache(args.cache_dir) if args.cache_dir else KLCache()


def _request(args, rs=None, **extra) -> dict:
    req = {"command": args.command}
    if rs is not None:
        req["type"] = str(rs.cartan_type)
    for k, v in extra.items():
        req[k] = v
    return req


# -- commands -------------------------------------------------------------------------------------

def cmd_roots(args):
    rs = _rs(args)
    result = {
        "type": str(rs.cartan_type),
        "rank": rs.rank,
        "cartan_matrix": [list(r) for r in rs.cartan],
        "positive_roots": [{"root": list(b), "height": rs.height(b), "coroot": R.vec(rs.coroot(b)),
                            "as_weight": list(rs.root_to_weight(b))} for b in rs.positive_roots],
        "rho": list(rs.rho),
    }
    req = _request(args, rs)
    lam = _weight(rs, args.lam)
    if lam is not None:
        cls = rs.classify_weight(lam)
        req["lambda"] = R.vec(lam)
        result["weight"] = {"lambda": R.vec(lam), "lambda_minus_rho": R.vec(l - 1 for l in lam),
                            "pairings": R.vec(rs.pair(lam, b) for b in rs.positive_roots),
                            "integral": cls.integral, "regular": cls.regular, "antidominant": cls.antidominant}
    return req, R.conventions(), result, [], []


def cmd_weyl(args):
    rs = _rs(args)
    W = weyl_group(rs)
    result = {
        "order": len(W),
        "poincare": W.poincare_counts(),
        "longest": W.longest.word_str(),
        "elements": [{"word": e.word_str(), "length": e.length} for e in W],
    }
    req = _request(args, rs)
    if args.eta:
        eta = make_eta(rs, parse_weight(args.eta, rs.rank))
        req["eta"] = R.vec(eta.values)
        ct = coset_decomposition(W, eta.pi_eta)
        result["pi_eta"] = [i + 1 for i in eta.pi_eta]
        result["longest_coset_representatives"] = [W.elements[x].word_str() for x in ct.representatives()]
    return req, R.conventions(), result, [], []


def cmd_kl(args):
    rs = _rs(args)
    W = weyl_group(rs)
    cache = _cache(args)
    notes = []
    w = W.parse(args.w)
    req = _request(args, rs, w=w.word_str())
    if args.eta:
        eta = make_eta(rs, parse_weight(args.eta, rs.rank))
        req["eta"] = R.vec(eta.values)
        ct = coset_decomposition(W, eta.pi_eta)
        xs = [W.parse(args.x).index] if args.x else [x for x in ct.representatives() if W.bruhat_leq(x, w.index)]
        polys = {x: parabolic_kl(W, eta.pi_eta, x, w.index, args.parabolic) for x in xs}
        conv = R.conventions(parabolic=args.parabolic)
        flavor = f"parabolic:{args.parabolic}"
    else:
        table = cache.load(W)
        if table is None:
            table = kl_table(rs.cartan_type)
            source = "computed"
        else:
            source = "cache"
        notes.append(f"ordinary KL table source: {source}")
        xs = [W.parse(args.x).index] if args.x else [x for x in range(len(W)) if W.bruhat_leq(x, w.index)]
        polys = {x: table(x, w.index) for x in xs}
        conv = R.conventions()
        flavor = "ordinary"
    result = {
        "flavor": flavor,
        "w": w.word_str(),
        "polynomials": [{"x": W.elements[x].word_str(), "coeffs": list(p.coeffs), "poly": str(p)}
                        for x, p in sorted(polys.items(), key=lambda kv: (W.length(kv[0]), kv[0]))],
    }
    return req, conv, result, [], notes


def _verma_request(args, rs, lam, gamma):
    return _request(args, rs, **{"lambda": R.vec(lam), "lambda_minus_rho": R.vec(l - 1 for l in lam),
                                 "gamma": R.vec(gamma), "depth": args.depth, "sign": args.sign})


def cmd_verma(args):
    rs = _rs(args)
    lam = _weight(rs, args.lam, rs.rho)
    gamma = _weight(rs, args.gamma, rs.rho)
    if args.depth is None:
        cls = rs.classify_weight(lam)
        args.depth = make_block(rs, lam).required_depth() if cls.integral and cls.regular else 6
    table = verma_jantzen(rs, lam, gamma, args.depth, args.sign)
    checks = []
    if table.multiplicities is not None:
        checks.append({"name": "multiplicities match KL prediction", "passed": table.predicted == table.multiplicities})
    return _verma_request(args, rs, lam, gamma), R.conventions(args.sign), R.verma_payload(table), checks, table.notes


def cmd_whittaker(args):
    rs = _rs(args)
    lam = _weight(rs, args.lam, rs.rho)
    gamma = _weight(rs, args.gamma, rs.rho)
    eta = make_eta(rs, parse_weight(args.eta, rs.rank))
    wt = whittaker_jantzen(rs, lam, eta, w=args.w, gamma=gamma, depth=args.depth, sign=args.sign,
                           strictness=args.strictness)
    args.depth = wt.depth
    req = _verma_request(args, rs, lam, gamma)
    req["eta"] = R.vec(eta.values)
    req["w"] = args.w if args.w is not None else "default"
    sums = wt.column_sums()
    checks = [{"name": "column sums match transported multiplicities", "passed": sums == wt.expected_sums()},
              {"name": f"column sums match parabolic KL ({args.parabolic}) at q=1",
               "passed": sums == wt.parabolic_sums(args.parabolic)}]
    if wt.strictness:
        checks.append({"name": "strictness", "passed": all(s.holds for s in wt.strictness)})
    return req, R.conventions(args.sign, args.parabolic), R.whittaker_payload(wt, args.parabolic), checks, wt.notes


def cmd_strictness(args):
    rs = _rs(args)
    W = weyl_group(rs)
    lam = _weight(rs, args.lam, rs.rho)
    gamma = _weight(rs, args.gamma, rs.rho)
    if args.depth is None:
        args.depth = make_block(rs, lam).required_depth() + 2
    if (args.v is None) != (args.w is None):
        raise UsageError("give both --v and --w, or neither")
    if args.v is None:
        pairs = bruhat_pairs(W)
    else:
        pairs = [(W.parse(args.v).index, W.parse(args.w).index)]
    reps = [strictness_check(rs, lam, v, w, gamma, args.depth, args.sign, shift=args.shift) for v, w in pairs]
    req = _verma_request(args, rs, lam, gamma)
    req["pairs"] = [[W.elements[v].word_str(), W.elements[w].word_str()] for v, w in pairs]
    result = {"lambda": R.vec(lam), "lambda_minus_rho": R.vec(l - 1 for l in lam),
              "pairs": [R.strictness_payload(r) for r in reps]}
    checks = [{"name": "all embeddings strict", "passed": all(r.holds for r in reps)}]
    return req, R.conventions(args.sign), result, checks, []


def cmd_check(args):
    names = sorted(SUITES, key=list(SUITES).index) if args.suite == "all" else [args.suite]
    results = run_suites(names)
    checks = [r.as_dict() for r in results]
    result = {"suites": names, "passed": all(r.passed for r in results),
              "criteria": sorted({r.criterion for r in results})}
    return _request(args, suite=args.suite), R.conventions(), result, checks, []


def cmd_cache(args):
    cache = _cache(args)
    req = _request(args, action=args.action, cache_dir=str(cache.dir))
    result: dict = {}
    if args.action == "warm":
        if not args.type:
            raise UsageError("cache warm needs --type")
        ct = CartanType.parse(args.type)
        path = cache.warm(str(ct))
        req["type"] = str(ct)
        result["written"] = path.name
    elif args.action == "clear":
        result["removed"] = cache.clear()
    info = cache.info()
    result["info"] = {"files": info.files, "ignored": info.ignored,
                      "entries": sum(f["entries"] for f in info.files)}
    notes = [f"ignored {f['file']}: {f['reason']}" for f in info.ignored]
    return req, {"cache_format": "klcache/1"}, result, [], notes


COMMANDS = {
    "roots": cmd_roots,
    "weyl": cmd_weyl,
    "kl": cmd_kl,
    "verma-jantzen": cmd_verma,
    "whittaker-jantzen": cmd_whittaker,
    "strictness": cmd_strictness,
    "check": cmd_check,
    "cache": cmd_cache,
}


def run_command(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stderr(err), contextlib.redirect_stdout(out):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.cache_dir:
        os.environ["JANTZEN_CACHE"] = args.cache_dir
    start = time.perf_counter()
    try:
        req, conv, result, checks, notes = COMMANDS[args.command](args)
    except (UsageError, *USAGE_ERRORS) as exc:
        print(f"jantzen: error: {exc}", file=err)
        return EXIT_USAGE
    except GUARD_ERRORS as exc:
        print(f"jantzen: computation guard: {exc}", file=err)
        return EXIT_GUARD
    if args.threads not in (None, 1):
        notes = list(notes) + ["--threads ignored: computation is sequential"]
    timing = time.perf_counter() - start if args.timing else None
    rep = R.envelope(args.command, req, conv, result, checks, notes, timing)
    out.write(R.render(rep, args.format))
    return EXIT_FAILED if any(not c["passed"] for c in checks) else EXIT_OK


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
