"""The `forge` command line: generate, validate, solve, report, bench.

All numeric output is CSV with round-trip float formatting (shortest decimal
that reparses to the same 64-bit value, locale independent).  Exit codes:
0 success, 1 runtime failure, 2 usage or validation error.  Every error path
prints one line `forge: error[<code>] <text>` to stderr.
"""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

import numpy as np

from . import shipped_method_path
from .codegen import format_manifest, generate_module_set, load_templates
from .problems import PROBLEM_NAMES, benchmark_case, closure_error
from .stepcontrol import (
    IntegrationError,
    IntegrationOptions,
    Tolerances,
    adaptive_integrate,
    fixed_integrate,
    integrate_info,
    interpreted_kernel,
)
from .tableau import TableauError, parse_method_file, validate_tableau

__all__ = ["main"]


class CliError(Exception):
    def __init__(self, code: str, message: str, exit_code: int):
        super().__init__(message)
        self.code = code
        self.exit_code = exit_code


def _usage_error(code: str, message: str) -> CliError:
    return CliError(code, message, 2)


def _runtime_error(code: str, message: str) -> CliError:
    return CliError(code, message, 1)


def _fmt(x) -> str:
    return repr(float(x))


def _write_output(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
        return
    try:
        Path(path).write_text(text if text.endswith("\n") else text + "\n",
                              encoding="utf-8")
    except OSError as exc:
        raise _runtime_error("io-failure", f"cannot write {path}: {exc}") from exc


def _load_methods(path: str):
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise _usage_error("io-failure", f"cannot read {path}: {exc}") from exc
    try:
        return parse_method_file(data)
    except TableauError as exc:
        raise _usage_error("invalid-method-file", str(exc)) from exc


def _generated_registry():
    from . import generated
    return generated.METHODS


def _solver(name: str):
    registry = _generated_registry()
    try:
        return registry[name]
    except KeyError:
        known = ", ".join(sorted(registry))
        raise _usage_error("unknown-method",
                           f"no generated solver named {name!r}; available: {known}") from None


def _case(name: str):
    try:
        return benchmark_case(name)
    except ValueError as exc:
        raise _usage_error("unknown-problem",
                           f"{exc}; available: {', '.join(PROBLEM_NAMES)}") from exc


def cmd_generate(args) -> int:
    methods = _load_methods(args.methods)
    problems = []
    for t in methods:
        report = validate_tableau(t, strict=args.strict)
        for v in report.violations:
            problems.append(f"{t.name}: {v}")
        for w in report.warnings:
            print(f"forge: warning[{t.name}] {w}", file=sys.stderr)
    if problems:
        raise _usage_error("invalid-tableau", "; ".join(problems))
    try:
        manifest = generate_module_set(methods, args.out, load_templates())
    except (OSError, ValueError) as exc:
        code = "io-failure" if isinstance(exc, OSError) else "invalid-tableau"
        raise _runtime_error(code, str(exc)) from exc
    _write_output(format_manifest(manifest), args.output)
    return 0


def cmd_validate(args) -> int:
    methods = _load_methods(args.methods)
    bad = False
    lines = []
    for t in methods:
        report = validate_tableau(t, strict=args.strict)
        if report.ok:
            lines.append(f"{t.name}: ok")
        else:
            bad = True
            for v in report.violations:
                lines.append(f"{t.name}: violation: {v}")
        for w in report.warnings:
            lines.append(f"{t.name}: warning: {w}")
    _write_output("\n".join(lines), args.output)
    if bad:
        raise _usage_error("invalid-tableau", "method file has invalid tableaus")
    return 0


def _trajectory_csv(traj) -> str:
    n = traj.states.shape[1]
    header = "t," + ",".join(f"y{i + 1}" for i in range(n))
    rows = [header]
    for t, row in zip(traj.times, traj.states):
        rows.append(",".join([_fmt(t)] + [_fmt(v) for v in row]))
    return "\n".join(rows)


def _last_csv(t_n, y_n) -> str:
    header = "t," + ",".join(f"y{i + 1}" for i in range(len(y_n)))
    return header + "\n" + ",".join([_fmt(t_n)] + [_fmt(v) for v in y_n])


def _steplog_csv(log) -> str:
    rows = ["kind,t,h,error"]
    accepted = [("accepted", t, h, e) for t, h, e
                in zip(log.accepted_t, log.accepted_h, log.errors)]
    rejected = [("rejected", t, h, None) for t, h
                in zip(log.rejected_t, log.rejected_h)]
    for kind, t, h, e in sorted(accepted + rejected, key=lambda r: (r[1], r[0])):
        err = _fmt(e) if e is not None else ""
        rows.append(f"{kind},{_fmt(t)},{_fmt(h)},{err}")
    return "\n".join(rows)


def cmd_solve(args) -> int:
    module = _solver(args.method)
    case = _case(args.problem)
    t0 = args.t0 if args.t0 is not None else case.t_start
    t1 = args.t1 if args.t1 is not None else case.t_stop

    fixed = args.h is not None
    if fixed and (args.atol is not None or args.rtol is not None):
        raise _usage_error("bad-flags", "give either --h or --atol/--rtol, not both")
    if not fixed and (args.atol is None or args.rtol is None):
        raise _usage_error("bad-flags", "adaptive runs need both --atol and --rtol")

    kernel = module.KERNEL
    options = IntegrationOptions(h0=args.h0, max_steps=args.max_steps)
    try:
        if fixed:
            if args.output_kind == "steplog":
                raise _usage_error("bad-flags", "steplog output needs an adaptive run")
            if args.output_kind == "last":
                t_n, y_n = fixed_integrate(kernel, case.problem, args.h, case.y_0,
                                           t0, t1, last=True)
                csv = _last_csv(t_n, y_n)
            else:
                traj = fixed_integrate(kernel, case.problem, args.h, case.y_0, t0, t1)
                csv = _trajectory_csv(traj)
        else:
            tol = Tolerances(args.atol, args.rtol)
            if args.output_kind == "steplog":
                log = integrate_info(kernel, case.problem, tol, case.y_0, t0, t1,
                                     options=options)
                csv = _steplog_csv(log)
            elif args.output_kind == "last":
                t_n, y_n = adaptive_integrate(kernel, case.problem, tol, case.y_0,
                                              t0, t1, last=True, options=options)
                csv = _last_csv(t_n, y_n)
            else:
                traj = adaptive_integrate(kernel, case.problem, tol, case.y_0,
                                          t0, t1, options=options)
                csv = _trajectory_csv(traj)
    except IntegrationError as exc:
        raise _runtime_error("integration-failure", str(exc)) from exc
    except ValueError as exc:
        raise _usage_error("bad-flags", str(exc)) from exc
    _write_output(csv, args.output)
    return 0


def cmd_report(args) -> int:
    registry = _generated_registry()
    names = args.method or sorted(registry)
    if args.kind == "arenstorf-table":
        case = _case(f"arenstorf:{args.group}")
        rows = ["method,status,closure_error"]
        statuses = []
        for name in names:
            module = registry.get(name)
            if module is None:
                rows.append(f"{name},missing,")
                statuses.append("missing")
                continue
            try:
                _, y_n = adaptive_integrate(
                    module.KERNEL, case.problem, Tolerances(args.atol, args.rtol),
                    case.y_0, case.t_start, case.t_stop, last=True,
                    options=IntegrationOptions(max_steps=args.max_steps))
                rows.append(f"{name},ok,{_fmt(closure_error(y_n, case.y_0))}")
                statuses.append("ok")
            except IntegrationError as exc:
                rows.append(f"{name},failed,")
                statuses.append("failed")
                print(f"forge: warning[{name}] {exc}", file=sys.stderr)
        _write_output("\n".join(rows), args.output)
        return 0 if all(s == "ok" for s in statuses) else 1

    # convergence study on y' = y over [0, 1]
    hs = (0.1, 0.05, 0.025, 0.0125)
    rows = ["method,order,slope," + ",".join(f"err_h{_fmt(h)}" for h in hs)]
    statuses = []
    for name in names:
        module = registry.get(name)
        if module is None:
            rows.append(f"{name},,,,,,")
            statuses.append("missing")
            continue
        errs = []
        for h in hs:
            _, y_n = fixed_integrate(module.KERNEL, lambda t, y: y, h,
                                     np.array([1.0]), 0.0, 1.0, last=True)
            errs.append(abs(float(y_n[0]) - np.e))
        slope = float(np.polyfit(np.log(hs), np.log(errs), 1)[0])
        rows.append(f"{name},{module.KERNEL.order},{_fmt(slope)},"
                    + ",".join(_fmt(e) for e in errs))
        statuses.append("ok")
    _write_output("\n".join(rows), args.output)
    return 0 if all(s == "ok" for s in statuses) else 1


def cmd_bench(args) -> int:
    module = _solver(args.method)
    case = _case("brusselator")
    from . import shipped_methods
    tableau = next(t for t in shipped_methods() if t.name == args.method)
    generic = interpreted_kernel(tableau)
    h = (case.t_stop - case.t_start) / args.steps
    rhs = case.problem.rhs
    y0 = case.y_0

    def run(kernel):
        f = lambda t, y: np.asarray(rhs(t, y), dtype=float)
        y = y0.copy()
        t = 0.0
        start = time.perf_counter()
        for _ in range(args.steps):
            y, _unused = kernel.step(f, t, y, h)
            t += h
        return time.perf_counter() - start

    run(module.KERNEL)  # warm-up
    run(generic)
    generated_s = run(module.KERNEL)
    generic_s = run(generic)
    ratio = (args.steps / generated_s) / (args.steps / generic_s)
    csv = ("method,steps,generated_seconds,generic_seconds,throughput_ratio\n"
           f"{args.method},{args.steps},{_fmt(generated_s)},{_fmt(generic_s)},{_fmt(ratio)}")
    _write_output(csv, args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="forge",
        description="Embedded Runge-Kutta solver forge: validate method files, "
                    "generate specialized solvers, run integrations, and emit "
                    "experiment tables as CSV.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="render solver modules from a method file")
    p.add_argument("--methods", default=str(shipped_method_path()),
                   help="method JSON file (default: the shipped file)")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--strict", action="store_true",
                   help="additionally check the order-2 condition (warning only)")
    p.add_argument("--output", default=None, help="write the manifest here instead of stdout")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("validate", help="validate a method file")
    p.add_argument("--methods", default=str(shipped_method_path()))
    p.add_argument("--strict", action="store_true")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("solve", help="integrate a benchmark problem")
    p.add_argument("--method", required=True)
    p.add_argument("--problem", required=True,
                   help=f"one of: {', '.join(PROBLEM_NAMES)}")
    p.add_argument("--atol", type=float, default=None)
    p.add_argument("--rtol", type=float, default=None)
    p.add_argument("--h", type=float, default=None, help="fixed step size")
    p.add_argument("--h0", type=float, default=None, help="initial adaptive step")
    p.add_argument("--t0", type=float, default=None)
    p.add_argument("--t1", type=float, default=None)
    p.add_argument("--max-steps", type=int, default=10 ** 6)
    p.add_argument("--output", default=None)
    p.add_argument("--output-kind", choices=("trajectory", "last", "steplog"),
                   default="trajectory")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser(
        "report", help="emit experiment tables",
        description="Emit experiment tables as CSV. Failed or missing rows "
                    "are marked and the table is still written; the exit "
                    "code is 0 only when every row succeeded.")
    p.add_argument("--kind", choices=("arenstorf-table", "convergence"), required=True)
    p.add_argument("--method", action="append", default=None,
                   help="repeatable; default: every generated method")
    p.add_argument("--group", type=int, default=1, choices=(1, 2, 3))
    p.add_argument("--atol", type=float, default=1e-13)
    p.add_argument("--rtol", type=float, default=0.0)
    p.add_argument("--max-steps", type=int, default=10 ** 6)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("bench", help="generated vs generic kernel throughput")
    p.add_argument("--method", default="ERK43b")
    p.add_argument("--steps", type=int, default=10 ** 5)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"forge: error[{exc.code}] {exc}", file=sys.stderr)
        return exc.exit_code
    except TableauError as exc:
        print(f"forge: error[invalid-method-file] {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
