"""Command-line front end.

Exit codes: 0 success, 1 rejected input, 2 a verification disagreed,
3 analysis incomplete (depth or coordinate search exhausted).
"""
from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from pathlib import Path

from .checks import all_checks, compare_four_matrices
from .errors import AnalysisIncomplete, DegenerateCurveError, VerificationError
from .mubasis import CurveSpec, check_proper, compute_mubasis, implicitize, verify_mubasis
from .parse import PolyParseError
from .report import SU, checks_json, dumps, generic_text, report_json, report_text
from .singularity import Options, analyze, build_FG, main_smith

COMMANDS = ("mubasis", "implicit", "smith", "singularities", "tree", "verify", "compare-matrices")

EXIT_OK, EXIT_INPUT, EXIT_VERIFY, EXIT_INCOMPLETE = 0, 1, 2, 3


class InputError(Exception):
    pass


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ratcurve", description="Singularities of rational planar curves from Smith normal forms.")
    src = ap.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="curve JSON file ('-' for stdin)")
    src.add_argument("--curve", nargs=3, metavar=("A", "B", "C"), help="inline components, e.g. 't^2*v' 't^3' 'v^3'")
    src.add_argument("--corpus", help="directory of curve JSON files (batch mode)")
    ap.add_argument("--command", choices=COMMANDS, default="singularities")
    ap.add_argument("--format", choices=("json", "text"), default="text")
    ap.add_argument("--max-depth", type=_positive, default=8)
    ap.add_argument("--coord-bound", type=_positive, default=20)
    ap.add_argument("--isolate-roots", action=argparse.BooleanOptionalAction, default=True)
    return ap


def load_curve_text(text: str, origin: str = "<input>") -> CurveSpec:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{origin}: JSON error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    try:
        curve = CurveSpec.from_json(data)
    except PolyParseError as exc:
        raise InputError(f"{origin}: {exc}") from None
    curve.validate()
    return curve


def load_curve(args) -> CurveSpec:
    if args.curve:
        try:
            curve = CurveSpec.from_strings(*args.curve)
        except PolyParseError as exc:
            raise InputError(str(exc)) from None
        curve.validate()
        return curve
    if args.input == "-":
        return load_curve_text(sys.stdin.read(), "<stdin>")
    path = Path(args.input)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return load_curve_text(text, str(path))


def _options(args) -> Options:
    return Options(max_depth=args.max_depth, coord_bound=args.coord_bound, isolate_roots=args.isolate_roots)


def _strip_children(nodes: list) -> list:
    return [{k: v for k, v in n.items() if k != "children"} | {"children": []} for n in nodes]


def execute(command: str, curve: CurveSpec, opts: Options) -> tuple[dict, bool, str | None]:
    """Run one command; returns (payload, all checks passed, preferred text)."""
    if command == "mubasis":
        basis = compute_mubasis(curve)
        chk = verify_mubasis(curve, basis)
        data = {"mu": basis.mu, "p": basis.p.to_text(), "q": basis.q.to_text(), "verifications": checks_json([chk])}
        return data, chk.ok, None
    if command == "implicit":
        basis = compute_mubasis(curve)
        f = implicitize(basis)
        pr = check_proper(curve, basis)
        data = {"implicit": f.to_str(), "degree": f.total_degree(), "proper": pr.proper, "detail": pr.detail}
        return data, True, None
    if command == "smith":
        basis = compute_mubasis(curve)
        fg = build_FG(curve, basis)
        ms = main_smith(fg)
        data = {
            "mu": basis.mu,
            "bezout": ms.bezout.to_json(SU),
            "smith": [f.to_str(SU) for f in ms.smith.invariant_factors],
            "d_chain": [{"k": k, "factor": d.to_str(SU)} for k, d in sorted(ms.d_chain.items(), reverse=True)],
        }
        return data, True, None
    if command == "compare-matrices":
        checks = compare_four_matrices(curve)
        return {"verifications": checks_json(checks)}, all(c.ok for c in checks), None
    rep = analyze(curve, opts)
    extra = []
    if command == "verify":
        extra = all_checks(curve, rep)[len(rep.verifications) :]
    data = report_json(rep, extra)
    if command == "singularities":
        data["singularities"] = _strip_children(data["singularities"])
    ok = all(v["status"] == "pass" for v in data["verifications"]) and rep.budget["ok"]
    return data, ok, report_text(data)


def run_one(command: str, curve: CurveSpec, opts: Options, fmt: str, out) -> int:
    data, ok, text = execute(command, curve, opts)
    if fmt == "json":
        out.write(dumps(data))
    else:
        out.write(text if text is not None else generic_text(data))
    return EXIT_OK if ok else EXIT_VERIFY


def classify(exc: BaseException) -> int:
    if isinstance(exc, (InputError, DegenerateCurveError, PolyParseError)):
        return EXIT_INPUT
    if isinstance(exc, VerificationError):
        return EXIT_VERIFY
    if isinstance(exc, AnalysisIncomplete):
        return EXIT_INCOMPLETE
    raise exc


def batch(corpus: Path, opts: Options, fmt: str, out) -> int:
    """Analyze every ``*.json`` file in ``corpus`` (sorted by name); failures stay per-row."""
    if not corpus.is_dir():
        raise InputError(f"{corpus} is not a directory")
    rows = []
    worst = EXIT_OK
    for path in sorted(corpus.glob("*.json")):
        row = {"file": path.name}
        try:
            curve = load_curve_text(path.read_text(), path.name)
            rep = analyze(curve, opts)
            counts = Counter(nd.order for nd in rep.nodes())
            row.update(
                degree=curve.n,
                mu=rep.mu,
                singularities={str(k): counts[k] for k in sorted(counts)},
                budget_ok=rep.budget["ok"],
                status="ok" if rep.budget["ok"] and all(c.ok for c in rep.verifications) else "verification-failed",
            )
            code = EXIT_OK if row["status"] == "ok" else EXIT_VERIFY
        except Exception as exc:  # isolate the row
            try:
                code = classify(exc)
            except Exception:
                code = EXIT_VERIFY
            row.update(status="failed", error=f"{type(exc).__name__}: {exc}")
        worst = max(worst, code)
        rows.append(row)
    if fmt == "json":
        out.write(dumps({"rows": rows}))
    else:
        out.write(f"{'file':<28} {'deg':>3} {'mu':>3}  {'orders':<20} budget  status\n")
        for r in rows:
            orders = " ".join(f"{k}:{v}" for k, v in r.get("singularities", {}).items()) or "-"
            b = {True: "ok", False: "FAIL"}.get(r.get("budget_ok"), "-")
            out.write(f"{r['file']:<28} {r.get('degree', '-'):>3} {r.get('mu', '-'):>3}  {orders:<20} {b:<7} {r['status']}")
            out.write(f"  ({r['error']})\n" if "error" in r else "\n")
    return worst


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    opts = _options(args)
    out = sys.stdout
    try:
        if args.corpus:
            return batch(Path(args.corpus), opts, args.format, out)
        curve = load_curve(args)
        return run_one(args.command, curve, opts, args.format, out)
    except (InputError, DegenerateCurveError, PolyParseError, VerificationError, AnalysisIncomplete) as exc:
        code = classify(exc)
        print(f"error: {exc}", file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())
