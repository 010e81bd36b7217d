"""``qwstat`` command line.

Exit codes: 0 ok, 1 internal/numerical failure, 2 file or parse error,
3 invalid marked set, 4 no stationary state, 5 bound not applicable,
6 simulated probability exceeds the bound, 7 stationarity residual above
tolerance.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import report as rpt
from .bounds import bound_for, compare_bound_to_simulation
from .errors import GraphFormatError, MarkedSetError, NoStationaryStateError, QWStationaryError
from .generators import FamilySpec, write_instance
from .graph import analyze_marked, decompose_unmarked, parse_marked, read_edge_list, read_marked
from .stationary import SOLVER_TOL, Objective, construct_stationary, decide_existence
from .walk import WalkOperator, simulate, uniform_state, write_trace_csv

log = logging.getLogger("qwstationary")

EXIT_VIOLATION = 6
EXIT_RESIDUAL = 7


def _load(args):
    g = read_edge_list(args.graph)
    if args.marked is None:
        raise GraphFormatError("--marked is required")
    if Path(args.marked).is_file():
        labels = read_marked(args.marked)
    else:
        labels = parse_marked(args.marked)
    try:
        marked = [g.index_of(lab) for lab in labels]
    except KeyError as exc:
        raise MarkedSetError(MarkedSetError.UNKNOWN_VERTEX, f"vertex {exc.args[0]} not in graph") from None
    return g, marked


def _parse_objective(text: str):
    if text.startswith("custom:"):
        try:
            vec = [float(x) for x in text[len("custom:"):].split(",")]
        except ValueError:
            raise GraphFormatError(f"bad custom objective {text!r}") from None
        return Objective.CUSTOM, vec
    return Objective(text), None


def _emit(doc: dict, args) -> None:
    out = rpt.to_json(doc) if args.format == "machine" else rpt.to_text(doc)
    if args.report:
        Path(args.report).write_text(out)
    else:
        sys.stdout.write(out)


def cmd_analyze(args) -> int:
    g, marked = _load(args)
    ma = analyze_marked(g, marked)
    ud = decompose_unmarked(g, ma)
    exists, reason = decide_existence(g, ma, ud)
    _emit({"exists": exists, "reason": reason.value, "analysis": rpt.analysis_dict(g, ma, ud)}, args)
    return 0


def cmd_construct(args) -> int:
    g, marked = _load(args)
    objective, custom = _parse_objective(args.objective)
    rep = construct_stationary(g, marked, objective=objective, custom=custom)
    doc = rpt.stationary_dict(g, rep)
    if not rep.exists:
        _emit(doc, args)
        log.error("no stationary state: %s", rep.reason.value)
        return NoStationaryStateError.exit_code
    if args.out:
        rpt.write_state_csv(g, rep.state, args.out)
    doc["stationary"] = rep.residual_norm <= args.tol_stationary
    _emit(doc, args)
    if rep.residual_norm > args.tol_stationary:
        log.error("residual %.3e above tolerance %.1e", rep.residual_norm, args.tol_stationary)
        return EXIT_RESIDUAL
    return 0


def cmd_simulate(args) -> int:
    g, marked = _load(args)
    trace = simulate(WalkOperator(g, marked), uniform_state(g), args.steps)
    if args.out:
        write_trace_csv(trace, args.out)
    _emit(rpt.trace_dict(trace), args)
    return 0


def cmd_bound(args) -> int:
    g, marked = _load(args)
    if args.steps is None:
        rep = bound_for(g, marked)
    else:
        rep = compare_bound_to_simulation(g, marked, args.steps)
    _emit(rpt.bound_dict(rep), args)
    if rep.violation:
        log.error("VIOLATION: max p_M %.6g exceeds bound %.6g", rep.sim_max_p, rep.bound)
        return EXIT_VIOLATION
    return 0


def cmd_generate(args) -> int:
    params = {}
    for item in args.param or []:
        key, _, val = item.partition("=")
        try:
            params[key] = int(val)
        except ValueError:
            raise GraphFormatError(f"bad parameter {item!r}, expected key=int") from None
    try:
        g, marked = FamilySpec(args.family, params).build()
    except (TypeError, ValueError) as exc:
        raise GraphFormatError(str(exc)) from None
    if not args.out:
        raise GraphFormatError("generate needs --out PREFIX")
    edges, mfile = write_instance(g, marked, args.out)
    _emit({"family": args.family, "edges_file": str(edges), "marked_file": str(mfile), "n": g.n, "m": g.m}, args)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "machine"], default="text")
    common.add_argument("--report", help="write the report here instead of stdout")
    common.add_argument("--out", help="data output path (state CSV, p_M CSV, or file prefix)")
    common.add_argument("-v", "--verbose", action="store_true")

    inputs = argparse.ArgumentParser(add_help=False)
    inputs.add_argument("--graph", required=True, help="edge-list file")
    inputs.add_argument("--marked", help="marked-vertex file or comma-separated list")

    p = argparse.ArgumentParser(prog="qwstat", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("analyze", parents=[common, inputs], help="marked-set analysis and existence verdict")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("construct", parents=[common, inputs], help="build and verify a stationary state")
    s.add_argument("--objective", default="max-overlap", help="max-overlap | uniform | custom:a1,a2,...")
    s.add_argument("--tol-stationary", type=float, default=SOLVER_TOL)
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("simulate", parents=[common, inputs], help="evolve from the uniform state")
    s.add_argument("--steps", type=int, required=True)
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("bound", parents=[common, inputs], help="probability bound, optionally vs simulation")
    s.add_argument("--steps", type=int)
    s.set_defaults(func=cmd_bound)

    s = sub.add_parser("generate", parents=[common], help="write a built-in instance")
    s.add_argument("family", choices=["counterexample", "zero-overlap", "two-components", "cycle", "complete", "star"])
    s.add_argument("--param", action="append", metavar="KEY=INT", help="family parameter, e.g. n=50")
    s.set_defaults(func=cmd_generate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    if getattr(args, "steps", None) is not None and args.steps < 0:
        parser.error("--steps must be >= 0")
    if getattr(args, "tol_stationary", 1.0) <= 0:
        parser.error("--tol-stationary must be > 0")
    try:
        return args.func(args)
    except QWStationaryError as exc:
        log.error("%s", exc)
        return exc.exit_code
    except ValueError as exc:
        log.error("%s", exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
