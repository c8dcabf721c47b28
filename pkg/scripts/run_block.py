"""Print the Jantzen layer table of a Verma or standard Whittaker module.

    python3 scripts/run_block.py A2 --lambda 1,1
    python3 scripts/run_block.py B2 --lambda 1,1 --eta 0,1 --w w0 --strictness
    python3 scripts/run_block.py A3 --lambda 1,1,1 --json out.json
"""

from __future__ import annotations

import argparse
import json

from jantzen.filtration import make_block, verma_jantzen
from jantzen.report import conventions, envelope, render_json, verma_payload, whittaker_payload
from jantzen.rootdata import build_root_system, parse_weight
from jantzen.whittaker import whittaker_jantzen


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("type")
    ap.add_argument("--lambda", dest="lam")
    ap.add_argument("--eta")
    ap.add_argument("--w")
    ap.add_argument("--depth", type=int)
    ap.add_argument("--strictness", action="store_true")
    ap.add_argument("--json", help="also write the full report here")
    args = ap.parse_args()
    rs = build_root_system(args.type)
    lam = parse_weight(args.lam, rs.rank) if args.lam else rs.rho
    if args.eta:
        wt = whittaker_jantzen(rs, lam, parse_weight(args.eta, rs.rank), w=args.w, depth=args.depth,
                               strictness=args.strictness)
        W = wt.verma.block.W
        print(f"{rs.cartan_type} lambda={list(map(str, lam))} eta={[str(v) for v in wt.eta.values]} "
              f"w={W.elements[wt.w].word_str()} depth={wt.depth}")
        for x, p in sorted(wt.rows.items(), key=lambda kv: (W.length(kv[0]), kv[0])):
            print(f"  {W.elements[x].word_str():>16}: {list(p.coeffs)}")
        print("  column sums match transport:", wt.column_sums() == wt.expected_sums())
        for s in wt.strictness:
            print(f"  strict {s.v} -> {s.w}: shift {s.shift} (expected {s.expected_shift}) holds={s.holds}")
        payload, notes = whittaker_payload(wt), wt.notes
    else:
        depth = args.depth if args.depth is not None else make_block(rs, lam).required_depth()
        t = verma_jantzen(rs, lam, depth=depth)
        print(f"{rs.cartan_type} lambda={list(map(str, lam))} depth={depth}")
        for r in t.rows:
            if r.profile:
                print(f"  depth {r.depth}: dim {r.dim} nu={r.profile}")
        if t.multiplicities is not None:
            W = t.block.W
            for x, p in sorted(t.multiplicities.items(), key=lambda kv: (W.length(kv[0]), kv[0])):
                print(f"  L({W.elements[x].word_str()}): {list(p.coeffs)}")
            print("  matches KL prediction:", t.multiplicities == t.predicted)
        payload, notes = verma_payload(t), t.notes
    for n in notes:
        print("  note:", n)
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(render_json(envelope("run_block", {"argv": vars(args)}, conventions(), payload, [], notes)))


if __name__ == "__main__":
    main()
