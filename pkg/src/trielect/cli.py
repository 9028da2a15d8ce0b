"""Command-line front door.

One verb per workflow: ``gen`` makes seeded instances, ``run`` drives the
scheduler, ``check`` replays and verifies a trace, ``mc`` model-checks
instances exhaustively, ``render`` draws a configuration, ``serve`` starts
the interactive session service. Exit codes: 0 success, 1 a property or
check failed, 2 usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import engine, modelcheck, verify
from .configuration import (
    ConfigError,
    generate_random,
    is_connected,
    parse_config,
    serialize,
)
from .render import RenderSpec, render


def _read_config(path: str):
    text = Path(path).read_text(encoding="utf-8")
    return parse_config(text)


def _write_out(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _cmd_gen(args) -> int:
    config = generate_random(
        args.n,
        expanded_fraction=args.expanded_frac,
        hole_bias=args.hole_bias,
        seed=args.seed,
    )
    _write_out(serialize(config) + "\n", args.out)
    return 0


def _cmd_run(args) -> int:
    config = _read_config(args.config)
    if not is_connected(config):
        print("error: configuration is not connected", file=sys.stderr)
        return 1
    strategy = engine.make_strategy(
        args.strategy,
        seed=args.seed,
        script=[int(x) for x in args.script.split(",")] if args.script else None,
    )
    try:
        trace = engine.run(
            config, strategy, max_steps=args.max_steps, verify_steps=args.verify
        )
    except engine.VerificationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except engine.ScheduleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.trace_out:
        Path(args.trace_out).write_text(
            "\n".join(engine.trace_to_lines(trace)) + "\n", encoding="utf-8"
        )
    final = engine.final_configuration(trace)
    print(f"steps: {len(trace.events)}")
    print(f"terminal: {trace.terminal}")
    if trace.terminal:
        report = verify.check_final_properties(final)
        print(f"leaders: {verify.leaders(final)}")
        print(report.format_block())
        if not report.passed:
            return 1
    else:
        print(
            "warning: step guard reached before a terminal configuration "
            "(suspected non-termination)",
            file=sys.stderr,
        )
        return 1
    return 0


def _cmd_check(args) -> int:
    lines = Path(args.trace).read_text(encoding="utf-8").splitlines()
    try:
        trace = engine.trace_from_lines(lines)
    except engine.TraceFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    report = engine.verify_trace(trace)
    print(report.format_block())
    return 0 if report.passed else 1


def _cmd_mc(args) -> int:
    if args.config:
        config = _read_config(args.config)
        report = modelcheck.explore(config, budget=args.budget)
        print(report.summary_line())
        if not report.complete:
            print(
                f"state budget {args.budget} exhausted; partial result",
                file=sys.stderr,
            )
        return 0 if report.passed else 1
    results = []
    ok = True
    cache: dict = {}  # moves are shared between overlapping state graphs
    for n in range(1, args.n + 1):
        for config in modelcheck.enumerate_connected(n, args.expanded):
            report = modelcheck.explore(config, budget=args.budget, successor_cache=cache)
            results.append(report)
            if not report.passed:
                ok = False
                print(f"FAIL {report.summary_line()}")
    if args.json:
        print(
            json.dumps(
                {
                    "instances": len(results),
                    "states": sum(r.states for r in results),
                    "terminals": sum(r.terminals for r in results),
                    "all_passed": ok,
                }
            )
        )
    else:
        print(
            f"instances: {len(results)}  states: {sum(r.states for r in results)}  "
            f"all passed: {ok}"
        )
    return 0 if ok else 1


def _cmd_render(args) -> int:
    config = _read_config(args.config)
    spec = RenderSpec(
        format=args.format,
        show_leaders="leaders" in args.annotate,
        show_conditions="conditions" in args.annotate,
        show_boundaries="boundaries" in args.annotate,
    )
    _write_out(render(config, spec), args.out)
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(static_dir=args.static)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trielect",
        description="Leader election by movement on the triangular grid",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a random connected instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--expanded-frac", type=float, default=0.0)
    p.add_argument("--hole-bias", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("run", help="run the scheduler on a configuration")
    p.add_argument("--config", required=True)
    p.add_argument(
        "--strategy",
        choices=["random", "roundrobin", "greedy", "scripted"],
        default="random",
    )
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--script", help="comma-separated pids for --strategy scripted")
    p.add_argument("--max-steps", type=int, default=engine.DEFAULT_MAX_STEPS)
    p.add_argument("--verify", action="store_true", help="check every step")
    p.add_argument("--trace-out")
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("check", help="replay and verify a trace file")
    p.add_argument("--trace", required=True)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("mc", help="exhaustive model check")
    p.add_argument("--n", type=int, default=3, help="check all instances up to n")
    p.add_argument("--config", help="check one instance from a file instead")
    p.add_argument("--budget", type=int, default=modelcheck.DEFAULT_STATE_BUDGET)
    p.add_argument(
        "--no-expanded",
        dest="expanded",
        action="store_false",
        help="enumerate contracted-only instances",
    )
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_mc)

    p = sub.add_parser("render", help="draw a configuration")
    p.add_argument("--config", required=True)
    p.add_argument("--format", choices=["ascii", "svg"], default="ascii")
    p.add_argument(
        "--annotate",
        default="",
        help="comma-separated flags: leaders,conditions,boundaries",
    )
    p.add_argument("--out")
    p.set_defaults(func=_cmd_render)

    p = sub.add_parser("serve", help="start the interactive session service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument(
        "--static",
        help="directory with the browser playground build to serve at /",
    )
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if hasattr(args, "annotate"):
        args.annotate = [a for a in args.annotate.split(",") if a]
    try:
        return args.func(args)
    except (ConfigError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
