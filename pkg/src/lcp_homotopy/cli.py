"""Command-line entry point: ``lcp-homotopy {solve,classify,oracle,bench,trace-export,fixtures}``.

Exit codes: 0 solved and verified, 2 tracer failure, 3 endpoint not an LCP
solution, 4 input error, 5 size guard, 6 output I/O error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from .classes import classify
from .errors import InstanceError, NoFeasiblePointError, TooLargeError
from .extract import extract
from .homotopy import HomotopySystem, KktHomotopy, VariantKind, build_system
from .instances import FIXTURE_NAMES, InstanceFile, load_fixture, read_instance, write_instance
from .model import MAX_ENUM_N, LemkeStatus, brute_force_solutions, check_solution, lemke_solve, strictly_feasible_point
from .tracer import Status, TracerConfig, TracerResult, trace_path

EXIT_OK = 0
EXIT_TRACER = 2
EXIT_UNVERIFIED = 3
EXIT_INPUT = 4
EXIT_SIZE = 5
EXIT_IO = 6

VARIANTS = ("kkt",) + tuple(k.value for k in VariantKind)


def _fmt(v: float, digits: int = 6) -> str:
    s = f"{v:.{digits}f}"
    return "0." + "0" * digits if s == "-0." + "0" * digits else s


def _fmt_vec(v, digits: int = 6) -> str:
    return "(" + ", ".join(_fmt(float(t), digits) for t in v) + ")"


def _config_from_args(args: argparse.Namespace) -> TracerConfig:
    base = TracerConfig()
    kw = {}
    for name in ("eps1", "eps2", "eps3", "l0", "a0", "max_outer", "residual_accept"):
        val = getattr(args, name, None)
        if val is not None:
            kw[name] = val
    if getattr(args, "loose_residual", False):
        kw["residual_accept"] = 1.0
    return TracerConfig(**{**base.__dict__, **kw})


def _build(f: InstanceFile, variant: str) -> HomotopySystem:
    x0 = f.x0 if f.x0 is not None else strictly_feasible_point(f.inst)
    return build_system(variant, f.inst, x0, f.z1_0, f.z2_0)


def run_instance(f: InstanceFile, variant: str = "kkt", config: TracerConfig | None = None, tol: float = 1e-6):
    """Trace one instance and summarize; returns (system, result, summary, exit code)."""
    system = _build(f, variant)
    result = trace_path(system, config)
    x = system.x_part(result.final_state.y)
    summary = {
        "instance": f.name,
        "variant": variant,
        "status": result.status.value,
        "outer_iterations": result.outer_iterations,
        "lambda_final": result.final_state.lam,
        "residual_final": result.final_residual,
        "x0": system.x_part(system.y0).tolist(),
    }
    if not result.solved:
        summary["x_last"] = x.tolist()
        return system, result, summary, EXIT_TRACER
    if isinstance(system, KktHomotopy):
        rep = extract(f.inst, result.final_state.y, tol)
        summary["x_bar"] = rep.x_bar.tolist()
        summary["w_bar"] = rep.w_bar.tolist()
        summary["extraction"] = rep.as_dict()
        verified = rep.lcp_verified
    else:
        verified, sol = check_solution(f.inst, np.where((x < 0) & (x > -tol), 0.0, x), tol)
        summary["x_bar"] = sol.x.tolist()
        summary["w_bar"] = sol.w.tolist()
    summary["verified"] = verified
    return system, result, summary, EXIT_OK if verified else EXIT_UNVERIFIED


def trace_header(system: HomotopySystem) -> list[str]:
    n = system.n
    cols = ["outer_index", "event", "lambda", "step_a", "residual", "det_sign"]
    for block in system.block_names:
        cols += [f"{block}_{i + 1}" for i in range(n)]
    return cols


def write_trace_csv(system: HomotopySystem, result: TracerResult, path) -> int:
    sign = {1: "+", -1: "-", 0: "0"}
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(trace_header(system))
        for r in result.trace:
            w.writerow(
                [r.outer_index, r.event.value, repr(r.lam), repr(r.step_a), repr(r.residual), sign[r.det_sign]]
                + [repr(float(t)) for t in r.y]
            )
    return len(result.trace)


def _load(path: str) -> InstanceFile:
    return read_instance(path)


def cmd_solve(args) -> int:
    f = _load(args.instance)
    cfg = _config_from_args(args)
    system, result, summary, code = run_instance(f, args.variant, cfg, args.tol)
    if args.trace:
        try:
            write_trace_csv(system, result, args.trace)
        except OSError as exc:
            print(f"error: cannot write trace {args.trace}: {exc.strerror}", file=sys.stderr)
            return EXIT_IO
    print(json.dumps(summary, indent=2))
    return code


def cmd_trace_export(args) -> int:
    f = _load(args.instance)
    cfg = _config_from_args(args)
    system, result, summary, code = run_instance(f, args.variant, cfg, args.tol)
    try:
        rows = write_trace_csv(system, result, args.out)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {rows} trace rows to {args.out} (status {result.status.value})")
    return code


def cmd_classify(args) -> int:
    f = _load(args.instance)
    report = classify(f.inst.A, labels=f.classes, grid_density=args.density)
    print(json.dumps({"instance": f.name, **report.as_dict()}, indent=2))
    return EXIT_OK


def cmd_oracle(args) -> int:
    f = _load(args.instance)
    if f.inst.n > MAX_ENUM_N:
        print(f"error: n = {f.inst.n} exceeds enumeration limit {MAX_ENUM_N}", file=sys.stderr)
        return EXIT_SIZE
    sols = brute_force_solutions(f.inst, args.tol)
    outcome = lemke_solve(f.inst, args.max_pivots)
    print(f"instance: {f.name}")
    print(f"complementary solutions: {len(sols)}")
    for k, s in enumerate(sols, 1):
        print(f"  [{k}] x = {_fmt_vec(s.x)}  w = {_fmt_vec(s.w)}")
    line = f"lemke: {outcome.describe()}"
    if outcome.kind is LemkeStatus.SOLUTION:
        line += f"  x = {_fmt_vec(outcome.solution.x)}"
    print(line)
    return EXIT_OK


def bench_lines() -> tuple[list[str], bool]:
    """The benchmark table; deterministic text, no timings."""
    lines = [
        "example  class     status  iters   ref  lambda_final  err_inf    verified  lemke               x_bar",
    ]
    all_ok = True
    for name in FIXTURE_NAMES:
        f = load_fixture(name)
        ref = np.array(f.metadata["reference_solution"])
        _, result, summary, code = run_instance(f)
        x = np.array(summary.get("x_bar", summary.get("x_last")))
        err = float(np.max(np.abs(x - ref)))
        ok = code == EXIT_OK
        all_ok &= ok
        lem = lemke_solve(f.inst)
        label = ",".join(f.classes) or "-"
        lines.append(
            f"{f.name[8:]:<8} {label:<9} {result.status.value:<7} {result.outer_iterations:>5}  "
            f"{f.metadata.get('reference_iterations', '-'):>5}  {result.final_state.lam:.3e}     "
            f"{err:.2e}   {'yes' if ok else 'no':<8}  {lem.describe():<18}  {_fmt_vec(x, 4)}"
        )
    lines.append("")
    lines.append("variant  example  status  iters  err_inf    x_bar")
    for variant, name in (("zhao-n", "ex4_1"), ("yu-psd", "ex4_2")):
        f = load_fixture(name)
        ref = np.array(f.metadata["reference_solution"])
        _, result, summary, code = run_instance(f, variant)
        x = np.array(summary.get("x_bar", summary.get("x_last")))
        lines.append(
            f"{variant:<8} {f.name[8:]:<8} {result.status.value:<7} {result.outer_iterations:>5}  "
            f"{float(np.max(np.abs(x - ref))):.2e}   {_fmt_vec(x, 4)}"
        )
    return lines, all_ok


def cmd_bench(args) -> int:
    lines, ok = bench_lines()
    print("\n".join(lines))
    return EXIT_OK if ok else EXIT_TRACER


def cmd_fixtures(args) -> int:
    out = Path(args.directory)
    try:
        out.mkdir(parents=True, exist_ok=True)
        for name in FIXTURE_NAMES:
            write_instance(load_fixture(name), out / f"{name}.json")
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {len(FIXTURE_NAMES)} fixtures to {out}")
    return EXIT_OK


def _add_tracer_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--variant", choices=VARIANTS, default="kkt", help="homotopy map (default: kkt)")
    p.add_argument("--eps1", type=float, help="final lambda tolerance")
    p.add_argument("--eps2", type=float, help="stagnation tolerance")
    p.add_argument("--eps3", type=float, help="smallest step length before giving up")
    p.add_argument("--l0", type=float, help="step-length ratio in (0, 1)")
    p.add_argument("--a0", type=float, help="minimum progress threshold")
    p.add_argument("--max-outer", dest="max_outer", type=int, help="outer iteration cap")
    p.add_argument("--residual-accept", dest="residual_accept", type=float, help="corrector acceptance bound")
    p.add_argument("--loose-residual", action="store_true", help="accept correctors with residual <= 1")
    p.add_argument("--tol", type=float, default=1e-6, help="verification tolerance (default: 1e-6)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lcp-homotopy", description="Homotopy path solver for LCP(q, A).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="trace the homotopy path and extract a solution")
    p.add_argument("instance")
    _add_tracer_flags(p)
    p.add_argument("--trace", help="also write the path trace as CSV")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("trace-export", help="write the path trace as CSV")
    p.add_argument("instance")
    p.add_argument("out")
    _add_tracer_flags(p)
    p.set_defaults(func=cmd_trace_export)

    p = sub.add_parser("classify", help="report matrix classes of A")
    p.add_argument("instance")
    p.add_argument("--density", type=int, default=None, help="copositivity lattice density")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("oracle", help="enumerate all complementary solutions and run Lemke")
    p.add_argument("instance")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--max-pivots", dest="max_pivots", type=int, default=1000)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("bench", help="run the seven bundled reference examples")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("fixtures", help="write the bundled example instances to a directory")
    p.add_argument("directory")
    p.set_defaults(func=cmd_fixtures)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InstanceError, NoFeasiblePointError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except TooLargeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except ValueError as exc:
        # bad tracer overrides or an infeasible initial point
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
