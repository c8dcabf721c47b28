"""Dimension of truncated Whittaker-functional spaces as the depth grows.

The truncated check is exact only up to the depth used; this script shows
where the dimension settles for a few weights.

    python3 scripts/uniqueness_depth.py
"""

from __future__ import annotations

from jantzen.whittaker import make_eta, pairing_uniqueness_check

CASES = [
    ("A1", [1], (2,), [(2,), (-2,), (3,)]),
    ("A2", [1, 0], (1, 1), [(1, 1), (-1, 2), (2, -1), (-1, -1)]),
    ("A2", [1, 1], (1, 1), [(1, 1), (-1, -1), (2, -1)]),
    ("B2", [0, 1], (1, 1), [(1, 1), (2, -1), (3, -1), (-1, 1)]),
]


def main():
    for ct, vals, lam, mus in CASES:
        eta = make_eta(ct, vals)
        for mu in mus:
            dims = [pairing_uniqueness_check(eta, lam, mu, depth=d).dimension for d in range(1, 6)]
            exp = pairing_uniqueness_check(eta, lam, mu, depth=1).expected
            print(f"{ct} eta={vals} lambda={list(lam)} mu={list(mu)}: dims at depth 1..5 = {dims} (orbit test {exp})")


if __name__ == "__main__":
    main()
