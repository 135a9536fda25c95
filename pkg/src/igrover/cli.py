"""Command-line front end: run, sweep, compare.

Exit codes: 0 success, 1 validation or input problems, 2 the two engines
disagree beyond --tol, 3 every repetition measured an unverified index.
All randomness flows from --seed, so reruns are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import ExhaustedRepetitions, IGroverError
from .fullstate import run_schedule_full
from .instance import load_instance, partition_classes, ClassCounts
from .reduced import run_schedule, success_probability, write_trace_csv
from .scheduling import (
    POLICY_PAPER_FORMULA,
    POLICY_ROUNDED_HALF,
    POLICY_SWEPT,
    CostModel,
    QueryStats,
    Schedule,
    choose_L,
    crossover_t_y,
    naive_grover_cost,
    query_cost,
    result_record,
    run_with_repetitions,
    sweep_L,
)

_POLICY_FLAG = {
    "paper": POLICY_PAPER_FORMULA,
    "half": POLICY_ROUNDED_HALF,
    "sweep": POLICY_SWEPT,
}


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; 2 is reserved for engine
    # disagreement here, so treat bad command lines as validation failures
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _emit(obj, out_path) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _schedule_for(args, counts) -> Schedule:
    policy = _POLICY_FLAG[args.policy]
    if args.L is not None:
        return Schedule(args.L, policy)
    return choose_L(counts, policy)


def _trace_mismatch(trace_a, trace_b, tol: float) -> str | None:
    """First pointwise discrepancy beyond tol between two traces, or None."""
    if len(trace_a) != len(trace_b):
        return f"trace lengths differ: {len(trace_a)} vs {len(trace_b)}"
    for ra, rb in zip(trace_a, trace_b):
        deltas = (
            abs(ra.point.x - rb.point.x),
            abs(ra.point.y - rb.point.y),
            abs(ra.point.z - rb.point.z),
            abs(ra.p_success - rb.p_success),
        )
        if max(deltas) > tol:
            return (
                f"phase {ra.phase} step {ra.step} op {ra.op}: "
                f"max delta {max(deltas):.3g} > tol {tol:.3g}"
            )
    return None


def cmd_run(args) -> int:
    inst = load_instance(args.instance)
    counts = partition_classes(inst)
    sched = _schedule_for(args, counts)
    model = CostModel(args.tx, args.ty)

    trace = None
    if args.engine in ("reduced", "both") and (args.trace or args.engine == "both"):
        _, trace, _ = run_schedule(counts, sched)
    if args.engine in ("full", "both") and (args.trace or args.engine == "both"):
        _, full_trace, _ = run_schedule_full(inst, sched)
        if args.engine == "both":
            problem = _trace_mismatch(trace, full_trace, args.tol)
            if problem is not None:
                print(f"engine disagreement: {problem}", file=sys.stderr)
                return 2
        if trace is None:
            trace = full_trace
    if args.trace and trace is not None:
        write_trace_csv(args.trace, trace)

    code = 0
    engine = "full" if args.engine == "full" else "reduced"
    try:
        outcome = run_with_repetitions(inst, sched, args.reps, args.seed, engine=engine)
    except ExhaustedRepetitions as exc:
        outcome = exc.outcome
        code = 3
    _emit(result_record(inst, sched, outcome, model), args.out)
    return code


def _parse_int_list(raw: str, flag: str) -> list[int]:
    try:
        values = sorted({int(tok) for tok in raw.split(",") if tok.strip()})
    except ValueError:
        raise IGroverError(f"{flag} wants a comma-separated integer list, got {raw!r}")
    if not values:
        raise IGroverError(f"{flag} is empty")
    return values


def cmd_sweep(args) -> int:
    model = CostModel(args.tx, args.ty)
    rows = []
    grid_flags = (args.grid_n, args.grid_x, args.grid_y)
    if any(g is not None for g in grid_flags):
        if not all(g is not None for g in grid_flags):
            raise IGroverError("grid mode needs all of --grid-n, --grid-x, --grid-y")
        ns = _parse_int_list(args.grid_n, "--grid-n")
        xs = _parse_int_list(args.grid_x, "--grid-x")
        ys = _parse_int_list(args.grid_y, "--grid-y")
        # cells ordered lexicographically by (n, |X|, |Y|)
        cells = [
            (n, kx, ky)
            for n in ns
            for kx in xs
            for ky in ys
            if n >= 2 and 1 <= ky <= kx <= n
        ]
        if not cells:
            raise IGroverError("grid contains no valid cells (need 1 <= |Y| <= |X| <= n)")
        for n, kx, ky in cells:
            counts = ClassCounts(k11=ky, k10=kx - ky, k00=n - kx, n=n)
            best, table = sweep_L(counts, args.window)
            p_best = dict(table)[best.L]
            cost = query_cost(QueryStats(3 * best.L, 1, 1), model)
            rows.append((n, kx, ky, best.L, p_best, cost))
    else:
        if not args.instance:
            raise IGroverError("sweep needs --instance or a full --grid-n/x/y trio")
        inst = load_instance(args.instance)
        counts = partition_classes(inst)
        _, table = sweep_L(counts, args.window)
        for L, p in table:
            cost = query_cost(QueryStats(3 * L, 1, 1), model)
            rows.append((counts.n, counts.k11 + counts.k10, counts.k11, L, p, cost))

    lines = ["n,x_size,y_size,L,p_success,cost"]
    for n, kx, ky, L, p, cost in rows:
        lines.append(f"{n},{kx},{ky},{L},{p:.17g},{cost:.17g}")
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_compare(args) -> int:
    inst = load_instance(args.instance)
    counts = partition_classes(inst)
    sched = _schedule_for(args, counts)
    model = CostModel(args.tx, args.ty)
    final, _, stats = run_schedule(counts, sched, record_trace=False)
    total = query_cost(stats, model)
    iters, naive_total = naive_grover_cost(counts, model)
    ratio = total / naive_total if naive_total > 0 else None
    report = {
        "instance": {"n": inst.n, "x_size": inst.x_size, "y_size": inst.y_size},
        "L": sched.L,
        "policy": sched.selection_policy,
        "counts": {"x_queries": stats.count_x, "y_queries": stats.count_y},
        "cost": {
            "t_x": model.t_x,
            "t_y": model.t_y,
            "total": total,
            "naive_total": naive_total,
        },
        "naive_iterations": iters,
        "cost_ratio": ratio,
        "crossover_t_y": crossover_t_y(stats.count_x, iters, model.t_x),
        "two_oracle_wins": bool(ratio is not None and ratio < 1.0),
        "p_success_exact": success_probability(final),
    }
    _emit(report, args.out)
    return 0


def _add_common(p: argparse.ArgumentParser, instance_required: bool = True) -> None:
    p.add_argument("--instance", required=instance_required,
                   help="path to an instance JSON file")
    p.add_argument("--policy", choices=sorted(_POLICY_FLAG), default="paper",
                   help="how to pick L when --L is not given")
    p.add_argument("--L", type=int, default=None, help="override the step count")
    p.add_argument("--tx", type=float, default=1.0, help="cost of one cheap query")
    p.add_argument("--ty", type=float, default=1.0, help="cost of one expensive query")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="igrover",
                     description="Two-oracle search simulator for nested-set instances")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="execute the schedule and report the outcome")
    _add_common(run)
    run.add_argument("--engine", choices=["reduced", "full", "both"], default="reduced")
    run.add_argument("--seed", type=int, default=0, help="measurement RNG seed")
    run.add_argument("--reps", type=int, default=20,
                     help="max repetitions before giving up")
    run.add_argument("--trace", default=None, help="write the step trace CSV here")
    run.add_argument("--tol", type=float, default=1e-9,
                     help="engine agreement tolerance for --engine both")
    run.set_defaults(func=cmd_run)

    sweep = sub.add_parser("sweep", help="success probability across step counts")
    _add_common(sweep, instance_required=False)
    sweep.add_argument("--window", type=int, default=3,
                       help="half-width of the L window around the formula value")
    sweep.add_argument("--grid-n", default=None, help="comma list of universe sizes")
    sweep.add_argument("--grid-x", default=None, help="comma list of |X| values")
    sweep.add_argument("--grid-y", default=None, help="comma list of |Y| values")
    sweep.set_defaults(func=cmd_sweep)

    compare = sub.add_parser("compare",
                             help="query cost versus the expensive-oracle-only baseline")
    _add_common(compare)
    compare.set_defaults(func=cmd_compare)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (IGroverError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
