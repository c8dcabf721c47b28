"""Report assembly and rendering (JSON, CSV, LaTeX).

Reports are plain nested dicts/lists of JSON-native values built in a fixed
key order, so rendering is deterministic and ``json.loads(render_json(r)) == r``.
Rationals are written as strings (``"1/2"``) unless integral.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Any

SCHEMA = "jantzen-report/1"
VERSION = "0.1.0"


def num(x) -> Any:
    """JSON-native exact number: int when integral, else ``"p/q"``."""
    if isinstance(x, bool):
        return x
    if isinstance(x, int):
        return x
    f = Fraction(x)
    return f.numerator if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def vec(xs) -> list:
    return [num(x) for x in xs]


def envelope(command: str, request: dict, conventions: dict, result: dict, checks: list | None = None,
             notes: list | None = None, timing: float | None = None) -> dict:
    rep = {
        "schema": SCHEMA,
        "version": VERSION,
        "command": command,
        "request": request,
        "conventions": conventions,
        "result": result,
        "checks": checks or [],
        "notes": notes or [],
    }
    if timing is not None:
        rep["timing_seconds"] = round(timing, 3)
    return rep


def conventions(sign: str = "min+", parabolic: str | None = None) -> dict:
    out = {
        "weights": "fundamental-weight coordinates; M(lambda) has highest weight lambda - rho",
        "roots": "simple-root coordinates; positive roots ordered by height then reverse lexicographically",
        "chevalley_sign": sign,
        "layers": "q^i records layer -i (ascending-negative indexing); classical index i",
        "grading": "m_x(q) = q^(l(w)-l(x)) P_{w0 w, w0 x}(q^-2) for M(w lam_-) with lam_- antidominant",
        "block_index": "x in W labels x lam_-, lam_- antidominant in the orbit",
    }
    if parabolic is not None:
        out["parabolic_convention"] = parabolic
    return out


# -- table payloads -------------------------------------------------------------------------

def verma_payload(table) -> dict:
    rows = []
    for r in table.rows:
        rows.append({
            "depth": list(r.depth),
            "weight": vec(r.weight),
            "dim": r.dim,
            "valuations": ["inf" if v is None else v for v in r.valuations],
            "nu": list(r.profile),
        })
    out = {
        "lambda": vec(table.lam),
        "lambda_minus_rho": vec(l - 1 for l in table.lam),
        "gamma": vec(table.gamma),
        "depth": table.depth,
        "valuation_table": rows,
    }
    if table.degenerate_gamma:
        out["degenerate_gamma_roots"] = [list(b) for b in table.degenerate_gamma]
    if table.multiplicities is not None and table.block is not None:
        W = table.block.W
        out["block"] = {
            "antidominant": vec(table.block.base),
            "w": W.elements[table.block.w].word_str(),
        }
        out["multiplicities"] = [
            {"x": W.elements[x].word_str(), "weight": vec(table.block.weight(x)), "m": list(p.coeffs),
             "predicted": list(table.predicted.get(x).coeffs) if table.predicted and x in table.predicted else []}
            for x, p in sorted(table.multiplicities.items(), key=lambda kv: (W.length(kv[0]), kv[0]))
        ]
        out["matches_prediction"] = table.predicted == table.multiplicities
    return out


def whittaker_payload(wt, parabolic: str = "-1") -> dict:
    W = wt.verma.block.W
    exp = wt.expected_sums()
    sums = wt.column_sums()
    rows = []
    for x, p in sorted(wt.rows.items(), key=lambda kv: (W.length(kv[0]), kv[0])):
        rows.append({"v": W.elements[x].word_str(), "m": list(p.coeffs), "total": p(1)})
    out = {
        "lambda": vec(wt.lam),
        "lambda_minus_rho": vec(l - 1 for l in wt.lam),
        "eta": vec(wt.eta.values),
        "pi_eta": [i + 1 for i in wt.eta.pi_eta],
        "w": W.elements[wt.w].word_str(),
        "depth": wt.depth,
        "representatives": [W.elements[x].word_str() for x in wt.eta.cosets.representatives()],
        "rows": rows,
        "column_sums_match_transport": sums == exp,
        "parabolic_kl_at_1": {W.elements[x].word_str(): v for x, v in sorted(wt.parabolic_sums(parabolic).items())},
    }
    if wt.strictness:
        out["strictness"] = [strictness_payload(s) for s in wt.strictness]
    return out


def strictness_payload(rep) -> dict:
    return {"v": rep.v, "w": rep.w, "shift": rep.shift, "expected_shift": rep.expected_shift,
            "holds": rep.holds, "checked_depths": rep.checked_depths,
            "failures": [str(f) for f in rep.failures]}


# -- renderers ---------------------------------------------------------------------------------

def render_json(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=True) + "\n"


def _csv_rows(report: dict) -> list[list]:
    res = report.get("result", {})
    out: list[list] = []
    if "valuation_table" in res:
        k = max((len(r["nu"]) for r in res["valuation_table"]), default=0)
        out.append(["weight"] + [f"nu_{i}" for i in range(1, k + 1)])
        for r in res["valuation_table"]:
            out.append([",".join(map(str, r["weight"]))] + r["nu"] + [0] * (k - len(r["nu"])))
    mult = res.get("multiplicities") or [{"x": r["v"], "m": r["m"]} for r in res.get("rows", [])]
    if mult:
        if out:
            out.append([])
        k = max(len(r["m"]) for r in mult)
        out.append(["v"] + [f"q^{i}" for i in range(k)])
        for r in mult:
            out.append([r["x"]] + r["m"] + [0] * (k - len(r["m"])))
    if "polynomials" in res:
        k = max((len(r["coeffs"]) for r in res["polynomials"]), default=1)
        out.append(["x"] + [f"q^{i}" for i in range(k)])
        for r in res["polynomials"]:
            out.append([r["x"]] + r["coeffs"] + [0] * (k - len(r["coeffs"])))
    if "pairs" in res:
        out.append(["v", "w", "shift", "expected_shift", "holds"])
        for r in res["pairs"]:
            out.append([r["v"], r["w"], r["shift"], r["expected_shift"], r["holds"]])
    if not out:
        out.append(["key", "value"])
        for key, val in res.items():
            out.append([key, json.dumps(val)])
    checks = report.get("checks") or []
    if checks:
        out.append([])
        out.append(["check", "passed", "detail"])
        for c in checks:
            out.append([c["name"], c["passed"], c.get("detail", "")])
    return out


def render_csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for row in _csv_rows(report):
        w.writerow(row)
    return buf.getvalue()


_LATEX_ESCAPES = {"\\": r"\textbackslash{}", "&": r"\&", "%": r"\%", "$": r"\$", "#": r"\#",
                  "_": r"\_", "{": r"\{", "}": r"\}", "~": r"\textasciitilde{}", "^": r"\textasciicircum{}"}


def latex_escape(text: str) -> str:
    return "".join(_LATEX_ESCAPES.get(ch, ch) for ch in str(text))


def _tabular(header: list, rows: list[list]) -> str:
    cols = "l" + "r" * (len(header) - 1)
    lines = [f"\\begin{{tabular}}{{{cols}}}", "\\hline",
             " & ".join(latex_escape(h) for h in header) + r" \\", "\\hline"]
    for r in rows:
        lines.append(" & ".join(latex_escape(c) for c in r) + r" \\")
    lines += ["\\hline", "\\end{tabular}"]
    return "\n".join(lines)


def render_latex(report: dict) -> str:
    rows = _csv_rows(report)
    tables, cur = [], []
    for r in rows:
        if not r:
            if cur:
                tables.append(cur)
            cur = []
        else:
            cur.append(r)
    if cur:
        tables.append(cur)
    return "\n\n".join(_tabular(t[0], t[1:]) for t in tables) + "\n"


RENDERERS = {"json": render_json, "csv": render_csv, "latex": render_latex}


def render(report: dict, fmt: str) -> str:
    return RENDERERS[fmt](report)
