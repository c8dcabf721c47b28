"""Brute-force calibration of the layer grading against KL polynomials.

For each type, compute the Jantzen layer multiplicities of M(rho) and test
several candidate formulas for the layer polynomial of L(x lam_-).  Only the
candidate used by ``predicted_multiplicities`` should match everywhere.

    python3 scripts/calibrate_grading.py            # A2, B2
    python3 scripts/calibrate_grading.py A2 B2 A3   # A3 takes ~15 s
"""

from __future__ import annotations

import argparse
import time

from jantzen.filtration import make_block, verma_jantzen
from jantzen.klpoly import IntPolynomial, kl_table
from jantzen.rootdata import build_root_system


def _reverse_graded(p: IntPolynomial, d: int) -> IntPolynomial:
    """``q^d p(q^-2)``."""
    out = [0] * (d + 1)
    for k, c in enumerate(p.coeffs):
        if d - 2 * k < 0:
            return IntPolynomial([-999])  # impossible shape, never matches
        out[d - 2 * k] += c
    return IntPolynomial(out)


def candidates(W, kl, w: int, x: int) -> dict[str, IntPolynomial]:
    w0 = len(W) - 1
    d = W.length(w) - W.length(x)
    a = kl(W.mul(w0, w), W.mul(w0, x))
    b = kl(x, w)
    return {
        "q^(l(w)-l(x)) P_{w0w,w0x}(q^-2)": _reverse_graded(a, d),
        "q^(l(w)-l(x)) P_{x,w}(q^-2)": _reverse_graded(b, d),
        "P_{w0w,w0x}(q)": a,
        "P_{x,w}(q)": b,
    }


def calibrate(ct: str) -> dict[str, bool]:
    rs = build_root_system(ct)
    block = make_block(rs, rs.rho)
    t0 = time.perf_counter()
    table = verma_jantzen(rs, rs.rho, depth=block.required_depth(), multiplicities="require")
    elapsed = time.perf_counter() - t0
    W = block.W
    kl = kl_table(ct)
    verdict: dict[str, bool] = {}
    for x in range(len(W)):
        if not W.bruhat_leq(x, block.w):
            continue
        measured = table.multiplicities.get(x, IntPolynomial())
        for name, cand in candidates(W, kl, block.w, x).items():
            verdict[name] = verdict.get(name, True) and cand == measured
    print(f"{ct}: depth {table.depth}, {elapsed:.1f}s")
    for x, p in sorted(table.multiplicities.items(), key=lambda kv: (W.length(kv[0]), kv[0])):
        print(f"  L({W.elements[x].word_str():>14} lam_-): layers {list(p.coeffs)}")
    for name, ok in verdict.items():
        print(f"  {'MATCH' if ok else '     '}  {name}")
    return verdict


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("types", nargs="*", default=["A2", "B2"])
    args = ap.parse_args()
    results = [calibrate(ct) for ct in args.types]
    common = [name for name in results[0] if all(r[name] for r in results)]
    print("consistent across all types:", common or "none")


if __name__ == "__main__":
    main()
