"""Compare transported Whittaker multiplicities with both parabolic KL conventions.

For every proper nonempty set of simple roots J and every pair of longest
coset representatives x <= w, the composition multiplicity
[M(w lam_-, eta) : L(x lam_-, eta)] obtained by transport from category O is
``P_{w0 w, w0 x}(1)``.  The script counts how often each parabolic convention
evaluated at q = 1 agrees with it.

    python3 scripts/parabolic_conventions.py A2 B2 A3 B3
"""

from __future__ import annotations

import argparse
from itertools import combinations

from jantzen.klpoly import PARABOLIC_CONVENTIONS, kl_table, parabolic_kl
from jantzen.weyl import coset_decomposition, weyl_group


def compare(ct: str):
    W = weyl_group(ct)
    kl = kl_table(ct)
    w0 = len(W) - 1
    n = W.rs.rank
    rows = []
    for k in range(1, n):
        for J in combinations(range(n), k):
            reps = coset_decomposition(W, J).representatives()
            total = 0
            hits = dict.fromkeys(PARABOLIC_CONVENTIONS, 0)
            for w in reps:
                for x in reps:
                    if not W.bruhat_leq(x, w):
                        continue
                    total += 1
                    want = kl(W.mul(w0, w), W.mul(w0, x))(1)
                    for conv in PARABOLIC_CONVENTIONS:
                        hits[conv] += parabolic_kl(W, J, x, w, conv)(1) == want
            rows.append((J, total, hits))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("types", nargs="*", default=["A2", "B2", "A3", "B3"])
    args = ap.parse_args()
    for ct in args.types:
        for J, total, hits in compare(ct):
            js = "{" + ",".join(f"a{j + 1}" for j in J) + "}"
            counts = "  ".join(f'u={c}: {hits[c]}/{total}' for c in PARABOLIC_CONVENTIONS)
            print(f"{ct} J={js:<10} {counts}")


if __name__ == "__main__":
    main()
