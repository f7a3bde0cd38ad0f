"""JSON and text rendering of analysis results.

JSON is canonical: sorted keys, two-space indent, rationals as ``p/q``.
Curve-parameter forms print in ``(t, v)``; Smith-form entries in ``(s, u)``.
"""
from __future__ import annotations

import json
from typing import Iterable

from .mubasis import CurveSpec, MuBasis
from .poly import HPoly
from .polymat import CheckReport
from .singularity import AnalysisReport, SingularityNode

TV = ("t", "v")
SU = ("s", "u")


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def curve_json(curve: CurveSpec) -> dict:
    d = curve.to_json()
    d["text"] = list(curve.to_text())
    return d


def basis_json(basis: MuBasis) -> dict:
    return {"mu": basis.mu, "p": basis.p.to_text(), "q": basis.q.to_text()}


def node_json(node: SingularityNode) -> dict:
    out = {
        "level": node.level,
        "order": node.order,
        "formula": node.formula.to_str(TV),
        "npoints": node.npoints,
        "attributed": node.attributed,
        "children": [node_json(c) for c in node.children],
    }
    if node.ancestor_order is not None:
        out["ancestor_order"] = node.ancestor_order
    if node.point is not None:
        out["point"] = list(node.point)
    if node.intervals is not None:
        out["intervals"] = [list(iv) for iv in node.intervals]
    if not node.attributed:
        out["note"] = "unattributed-by-blow-up"
    return out


def checks_json(checks: Iterable[CheckReport]) -> list[dict]:
    return [c.as_dict() for c in checks]


def report_json(rep: AnalysisReport, extra_checks: Iterable[CheckReport] = ()) -> dict:
    return {
        "curve": curve_json(rep.curve),
        "mu": rep.mu,
        "basis": basis_json(rep.basis),
        "smith": [f.to_str(SU) for f in rep.smith],
        "d_chain": [{"k": k, "factor": d.to_str(SU)} for k, d in sorted(rep.d_chain.items(), reverse=True)],
        "singularities": [node_json(n) for n in rep.tree],
        "budget": dict(rep.budget),
        "verifications": checks_json(list(rep.verifications) + list(extra_checks)),
    }


# ---------------------------------------------------------------------------
# text
# ---------------------------------------------------------------------------


def _node_lines(d: dict, indent: int) -> list[str]:
    pad = "  " * indent
    bits = [f"level {d['level']}", f"order {d['order']}", f"formula {d['formula']}"]
    if "point" in d:
        bits.append("point (" + ", ".join(str(x) for x in d["point"]) + ")")
    elif d.get("npoints"):
        bits.append(f"{d['npoints']} conjugate points")
    if "ancestor_order" in d:
        bits.append(f"under order {d['ancestor_order']}")
    if "note" in d:
        bits.append(d["note"])
    lines = [pad + "- " + ", ".join(bits)]
    if d.get("intervals"):
        lines.append(pad + "  parameters " + "; ".join(a if a == b else f"in [{a}, {b}]" for a, b in d["intervals"]))
    for c in d["children"]:
        lines.extend(_node_lines(c, indent + 1))
    return lines


def report_text(data: dict) -> str:
    """Render the JSON dictionary as text (same content, different layout)."""
    c = data["curve"]
    lines = [
        f"curve  a = {c['text'][0]}",
        f"       b = {c['text'][1]}",
        f"       c = {c['text'][2]}",
        f"degree {c['degree']}, mu = {data['mu']}",
        f"p = ({', '.join(data['basis']['p'])})",
        f"q = ({', '.join(data['basis']['q'])})",
        "smith  diag(" + ", ".join(data["smith"]) + ")",
    ]
    for e in data["d_chain"]:
        lines.append(f"d_{e['k']} = {e['factor']}")
    lines.append("singularities:" if data["singularities"] else "singularities: none")
    for n in data["singularities"]:
        lines.extend(_node_lines(n, 1))
    b = data["budget"]
    lines.append(f"budget {b['lhs']} = {b['rhs']} (tree {b['tree']}): {'ok' if b['ok'] else 'FAILED'}")
    lines.append("verifications:")
    for v in data["verifications"]:
        lines.append(f"  [{v['status']}] {v['name']}: {v['detail']}")
    return "\n".join(lines) + "\n"


def generic_text(data) -> str:
    """Fallback text rendering for the smaller commands."""
    if isinstance(data, dict):
        out = []
        for k in sorted(data):
            v = data[k]
            if isinstance(v, (dict, list)):
                out.append(f"{k}:")
                out.extend("  " + line for line in generic_text(v).rstrip("\n").split("\n"))
            else:
                out.append(f"{k}: {v}")
        return "\n".join(out) + "\n"
    if isinstance(data, list):
        return "".join(generic_text(x) if isinstance(x, (dict, list)) else f"- {x}\n" for x in data)
    return f"{data}\n"


def formula_str(f: HPoly) -> str:
    return f.to_str(TV)
