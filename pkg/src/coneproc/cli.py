"""Command line interface.

    coneproc check INPUT [--property P] [--output PATH] [--oracle-max-steps N]
                         [--no-fallback] [--format json|text]
    coneproc analyze INPUT [--property P] [--oracle-max-steps N] [--output PATH] [--format ...]
    coneproc dual INPUT [--output PATH] [--format ...]

Exit codes of ``check``: 0 all verdicts INFORMATIVE, 1 some NOT_INFORMATIVE,
2 some INCONCLUSIVE/INDETERMINATE, 3 usage or input error. ``analyze`` uses
the same scheme with HOLDS / FAILS / other.
"""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import analysis as an
from . import process as pr
from .io import InputError, dump, envelope, load_dataset, load_process
from .informativity import DecideOptions, decide_nullcontrollability, decide_reachability
from .linalg import DimensionError

EXIT_USAGE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _properties(choice: str) -> list[str]:
    return ["reachability", "null-controllability"] if choice == "both" else [choice]


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="coneproc", description="Informativity of exact state data for convex processes.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, with_property=True):
        sp.add_argument("input", type=Path)
        if with_property:
            sp.add_argument("--property", choices=["reachability", "null-controllability", "both"], default="both")
        sp.add_argument("--output", type=Path)
        sp.add_argument("--format", choices=["json", "text"], default="text")

    c = sub.add_parser("check", help="decide informativity of a data file")
    common(c)
    c.add_argument("--oracle-max-steps", type=int, default=None, metavar="N")
    c.add_argument("--no-fallback", action="store_true", help="disable the reachability oracle fallback")

    a = sub.add_parser("analyze", help="reachability / null-controllability of a given process")
    common(a)
    a.add_argument("--oracle-max-steps", type=int, default=None, metavar="N")

    d = sub.add_parser("dual", help="print X, Y, Z, W, L-/L+ and the negative dual")
    common(d, with_property=False)
    return p


def _fmt_mat(m) -> str:
    return str(m) if m.nrows else f"(0 x {m.cols})"


def _text_check(reports) -> str:
    lines = []
    for r in reports:
        lines.append(f"{r.property}: {r.verdict} via {r.path}")
        lines.append(f"  reason: {r.reason}")
        for k in ("X", "Y", "Z", "W"):
            lines.append(f"  {k} = {_fmt_mat(r.matrices[k])}")
        for k, v in r.subspaces.items():
            lines.append(f"  {k} = {v.subspace} (steps {v.steps_to_stabilize})")
        lines.append(f"  assumption dom H + R_- = R^n: {r.assumption_13['holds']}")
        if r.assumption_14 is not None:
            lines.append(f"  assumption R_+ = im H + N_- = R^n: {r.assumption_14['holds']}")
        if r.eigen is not None:
            crit = ", ".join(str(c) for c in r.eigen.critical_points) or "none"
            lines.append(f"  eigen test ({r.eigen.mode}): {r.eigen.outcome}; critical points: {crit}")
        if r.oracle is not None:
            chain = " -> ".join(c.describe() for c in r.oracle.chain)
            lines.append(f"  oracle chain: {chain}")
        if r.witness is not None:
            lines.append(f"  witness: {r.witness}")
    return "\n".join(lines) + "\n"


def _text_analyze(verdicts) -> str:
    lines = []
    for v in verdicts:
        lines.append(f"{v.property}: {v.status} ({v.reason})")
        for name, orc in v.oracles.items():
            chain = " -> ".join(c.describe() for c in orc.chain)
            flags = []
            if orc.reached_full:
                flags.append("reached R^n")
            if orc.stabilized:
                flags.append(f"fixed point at q={orc.fixed_at}")
            lines.append(f"  oracle {name}: {chain}" + (f" [{', '.join(flags)}]" if flags else ""))
        if v.eigen is not None:
            lines.append(f"  eigen test ({v.eigen.mode}): {v.eigen.outcome}")
    return "\n".join(lines) + "\n"


def dual_summary(h: pr.ConvexProcess) -> dict:
    X, Y = h.graph_xy()
    Z, W = h.zw()
    lo, hi = pr.minimal_linear(h), pr.maximal_linear(h)
    dual = pr.negative_dual(h)
    return {
        "n": h.n,
        "X": X.to_json(), "Y": Y.to_json(), "Z": Z.to_json(), "W": W.to_json(),
        "L_minus_graph": lo.graph.to_json(),
        "L_plus_graph": hi.graph.to_json(),
        "negative_dual_graph": dual.graph.to_json(),
    }


def _text_dual(s: dict) -> str:
    def m(rows):
        return "[" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in rows) + "]"

    lines = [f"{k} = {m(s[k])}" for k in ("X", "Y", "Z", "W")]
    lines.append(f"graph L_- basis = {m(s['L_minus_graph']['basis'])}")
    lines.append(f"graph L_+ basis = {m(s['L_plus_graph']['basis'])}")
    lines.append(f"graph H^- generators = {m(s['negative_dual_graph']['generators'])}")
    return "\n".join(lines) + "\n"


def _emit(text_out: str, doc: dict, args) -> None:
    out = dump(doc) if args.format == "json" else text_out
    if args.output is not None:
        args.output.write_text(dump(doc) if args.output.suffix == ".json" else out, encoding="utf-8")
        if args.format == "text":
            sys.stdout.write(text_out)
    else:
        sys.stdout.write(out)


def cmd_check(args) -> int:
    t0 = time.perf_counter()
    d, raw = load_dataset(args.input)
    opts = DecideOptions(q_max=args.oracle_max_steps, fallback=not args.no_fallback)
    reports = []
    for prop in _properties(args.property):
        fn = decide_reachability if prop == "reachability" else decide_nullcontrollability
        reports.append(fn(d, opts))
    options = {"property": args.property, "oracle_max_steps": args.oracle_max_steps,
               "fallback": not args.no_fallback}
    doc = envelope("check", raw, options, [r.to_json() for r in reports], time.perf_counter() - t0)
    _emit(_text_check(reports), doc, args)
    verdicts = {r.verdict for r in reports}
    if verdicts == {"INFORMATIVE"}:
        return 0
    if "NOT_INFORMATIVE" in verdicts:
        return 1
    return 2


def cmd_analyze(args) -> int:
    t0 = time.perf_counter()
    h, raw = load_process(args.input)
    verdicts = []
    for prop in _properties(args.property):
        fn = an.reachability_verdict if prop == "reachability" else an.nullcontrollability_verdict
        verdicts.append(fn(h, args.oracle_max_steps))
    options = {"property": args.property, "oracle_max_steps": args.oracle_max_steps}
    doc = envelope("analyze", raw, options, [v.to_json() for v in verdicts], time.perf_counter() - t0)
    _emit(_text_analyze(verdicts), doc, args)
    statuses = {v.status for v in verdicts}
    if statuses == {"HOLDS"}:
        return 0
    if "FAILS" in statuses:
        return 1
    return 2


def cmd_dual(args) -> int:
    t0 = time.perf_counter()
    h, raw = load_process(args.input)
    summary = dual_summary(h)
    doc = envelope("dual", raw, {}, [summary], time.perf_counter() - t0)
    _emit(_text_dual(summary), doc, args)
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"check": cmd_check, "analyze": cmd_analyze, "dual": cmd_dual}[args.command]
    try:
        return handler(args)
    except (InputError, DimensionError) as exc:
        print(f"coneproc: input error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"coneproc: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
