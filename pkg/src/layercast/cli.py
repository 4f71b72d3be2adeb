"""Command line front end.

Exit codes: 0 success / feasible / verified, 1 infeasible / rejected /
disagreement, 2 usage, I/O or parse error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from .capacity import check_feasibility
from .errors import Infeasible, LayercastError, PlanFormatError
from .harness import compare, grid_values, sweep
from .model import format_rational, load_instance
from .oracle import oracle_solve
from .plan import plan_from_json, plan_to_json
from .scheduler import schedule
from .verifier import malformed_report, verify_plan


def _emit(text: str, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def cmd_check(args) -> int:
    report = check_feasibility(load_instance(args.instance))
    _emit(_dump(report.to_dict()), args.out)
    return 0 if report.feasible else 1


def cmd_plan(args) -> int:
    inst = load_instance(args.instance)
    try:
        plan = schedule(inst)
    except Infeasible as exc:
        sys.stderr.write(f"infeasible: {exc.report.summary()}\n")
        sys.stdout.write(_dump(exc.report.to_dict()))
        return 1
    _emit(plan_to_json(plan, inst), args.out)
    return 0


def cmd_verify(args) -> int:
    inst = load_instance(args.instance)
    try:
        plan = plan_from_json(Path(args.plan).read_text(), inst)
    except PlanFormatError as exc:
        report = malformed_report(inst, str(exc))
    else:
        report = verify_plan(inst, plan)
    _emit(_dump(report.to_dict(inst)), args.out)
    return 0 if report.ok else 1


def cmd_oracle(args) -> int:
    inst = load_instance(args.instance)
    result = oracle_solve(inst, args.max_peers)
    closed = check_feasibility(inst).feasible
    doc = {"oracle_feasible": result.feasible, "closed_form_feasible": closed}
    if result.feasible:
        doc["tree_rates"] = [
            {"layer": j, "rate": format_rational(x),
             "edges": [[inst.node_name(u), inst.node_name(v)] for u, v in t.edges()]}
            for j, t, x in result.tree_rates
        ]
    else:
        doc["certificate"] = {
            "layer_multipliers": [format_rational(y) for y in result.layer_multipliers],
            "node_multipliers": {
                inst.node_name(v): format_rational(y) for v, y in enumerate(result.node_multipliers)
            },
        }
    _emit(_dump(doc), args.out)
    return 0 if result.feasible else 1


def cmd_compare(args) -> int:
    print(f"seed {args.seed}", file=sys.stderr)
    summary = compare(
        args.seed, args.count, args.max_peers, args.max_layers,
        args.max_capacity, args.max_rate, args.max_denominator, args.jobs,
    )
    lines = [summary.line()]
    for r in summary.results:
        if not r.agree:
            lines.append(f"instance {r.index}: closed form {r.feasible}, oracle {r.oracle}")
        if not r.plan_ok:
            lines.append(f"instance {r.index}: {r.detail}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0 if summary.ok else 1


def cmd_sweep(args) -> int:
    inst = load_instance(args.instance)
    values = grid_values(args.start, args.stop, args.step)
    a, b = args.layers
    rows = sweep(inst, a, b, values, values)
    fmt = lambda q: "" if q is None else format_rational(q)  # noqa: E731
    if args.format == "json":
        text = _dump([
            {f"L{a}": fmt(x), f"L{b}": fmt(y), "feasible": ok, "required_total": fmt(req)}
            for x, y, ok, req in rows
        ])
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([f"L{a}", f"L{b}", "feasible", "required_total"])
        for x, y, ok, req in rows:
            writer.writerow([fmt(x), fmt(y), str(ok).lower(), fmt(req)])
        text = buf.getvalue()
    _emit(text, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="layercast",
        description="Capacity region, routing plans and checks for layered P2P streaming.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, func, help_text, instance=True):
        p = sub.add_parser(name, help=help_text)
        if instance:
            p.add_argument("instance", help="instance JSON file")
        p.add_argument("--out", help="write output here instead of stdout")
        p.set_defaults(func=func)
        return p

    command("check", cmd_check, "evaluate the closed-form region")
    command("plan", cmd_plan, "build a routing plan")
    p = command("verify", cmd_verify, "check a plan against an instance")
    p.add_argument("plan", help="plan JSON file")
    p = command("oracle", cmd_oracle, "brute-force tree-packing feasibility")
    p.add_argument("--max-peers", type=int, default=5)

    p = command("compare", cmd_compare, "random closed-form vs oracle vs plan check", instance=False)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--max-peers", type=int, default=4)
    p.add_argument("--max-layers", type=int, default=3)
    p.add_argument("--max-capacity", type=int, default=6)
    p.add_argument("--max-rate", type=int, default=3)
    p.add_argument("--max-denominator", type=int, default=1)
    p.add_argument("--jobs", type=int, default=1)

    p = command("sweep", cmd_sweep, "feasibility over a grid of two layer rates")
    p.add_argument("--layers", type=int, nargs=2, default=(1, 2), metavar=("A", "B"))
    p.add_argument("--start", default="0")
    p.add_argument("--stop", default="2")
    p.add_argument("--step", default="1/2")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except (OSError, LayercastError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
