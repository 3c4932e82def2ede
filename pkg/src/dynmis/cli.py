"""Command-line driver: ``dynmis gen|run|check|bench``.

Exit codes: 0 ok, 2 audit or guarantee failure, 3 I/O or parse failure.

The elementary-op counter charges one unit per active/passive/residual set
mutation, per out-neighbour scanned and per flip repaired. It is the
machine-independent stand-in for running time.
"""

from __future__ import annotations

import argparse
import csv
import sys
import time
from dataclasses import asdict, dataclass
from typing import Callable, TextIO

from .engine import DynamicMIS, InvariantViolation
from .orientation import OrientationError
from .streams import (
    StreamFormatError,
    UpdateStream,
    dump,
    gen_forest_union,
    gen_hub_leaf,
    gen_preferential,
    load,
    serialize,
)
from .verify import AuditReport, check_invariants, check_mis

EXIT_OK, EXIT_AUDIT, EXIT_IO = 0, 2, 3

CSV_COLUMNS = (
    "window_start", "window_end", "additions", "removals",
    "sum_splus", "sum_sminus", "flips", "elem_ops", "wall_ns",
)


@dataclass
class StatsRecord:
    updates: int = 0
    additions: int = 0
    removals: int = 0
    sum_splus: int = 0
    sum_sminus: int = 0
    flips: int = 0
    elem_ops: int = 0
    wall_ns: int = 0
    mis_size: int = 0

    @classmethod
    def from_engine(cls, engine: DynamicMIS, wall_ns: int = 0) -> "StatsRecord":
        st = engine.stats
        return cls(st.updates, st.additions, st.removals, st.sum_splus,
                   st.sum_sminus, st.flips, st.elem_ops, wall_ns, len(engine.mis()))

    def render(self) -> str:
        return "".join(f"{k}={v}\n" for k, v in asdict(self).items())


class AuditFailure(Exception):
    def __init__(self, index: int, report: AuditReport) -> None:
        super().__init__(f"audit failed after update {index}")
        self.index = index
        self.report = report


def audit(engine: DynamicMIS) -> AuditReport:
    report = check_invariants(engine)
    mis_report = check_mis(engine.graph.undirected_edges(), engine.mis(), engine.n)
    report.violations.extend(mis_report.violations)
    return report


def replay(
    stream: UpdateStream,
    alpha: int | None = None,
    *,
    strict: bool = False,
    audit_every: int = 0,
    window: int = 0,
    on_window: Callable[[list], None] | None = None,
    wall_clock: bool = False,
) -> tuple[DynamicMIS, StatsRecord]:
    """Feed ``stream`` through a fresh engine.

    Every ``audit_every`` updates the engine is audited and the first
    failure raises :class:`AuditFailure`. Every ``window`` updates (and once
    for a trailing partial window) ``on_window`` gets one CSV row of counter
    deltas. ``wall_ns`` stays 0 unless ``wall_clock`` is set, so repeated
    runs produce identical rows.
    """
    engine = DynamicMIS(stream.n, alpha or stream.alpha_hint, strict=strict)
    clock = time.perf_counter_ns
    start_ns = clock()
    prev = StatsRecord()
    prev_ns = start_ns
    start = 0

    def flush(end: int) -> None:
        nonlocal prev, prev_ns, start
        now = clock()
        cur = StatsRecord.from_engine(engine)
        row = [start, end, cur.additions - prev.additions, cur.removals - prev.removals,
               cur.sum_splus - prev.sum_splus, cur.sum_sminus - prev.sum_sminus,
               cur.flips - prev.flips, cur.elem_ops - prev.elem_ops,
               now - prev_ns if wall_clock else 0]
        on_window(row)
        prev, prev_ns, start = cur, now, end

    for i, op in enumerate(stream, start=1):
        engine.apply_update(op)
        if audit_every and i % audit_every == 0:
            report = audit(engine)
            if not report.ok:
                raise AuditFailure(i, report)
        if on_window is not None and window and i % window == 0:
            flush(i)
    if on_window is not None and window and start < len(stream):
        flush(len(stream))
    wall = clock() - start_ns if wall_clock else 0
    return engine, StatsRecord.from_engine(engine, wall)


# -- subcommands ----------------------------------------------------------


def cmd_gen(args, out: TextIO) -> int:
    if args.kind == "forest":
        stream = gen_forest_union(args.n, args.k, args.updates, args.churn, args.seed, args.hubs)
    elif args.kind == "preferential":
        stream = gen_preferential(args.n, args.k, args.seed)
    else:
        stream = gen_hub_leaf(args.n, args.hubs or 4, args.k, args.updates, args.churn, args.seed)
    if args.output:
        dump(stream, args.output)
    else:
        out.write(serialize(stream))
    return EXIT_OK


def cmd_run(args, out: TextIO) -> int:
    stream = load(args.stream)
    rows: list[list] = []
    engine, record = replay(
        stream, args.alpha, strict=args.strict, audit_every=args.audit_every,
        window=args.window if args.csv else 0, on_window=rows.append,
        wall_clock=args.wall_clock,
    )
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_COLUMNS)
            writer.writerows(rows)
    if args.mis_out:
        with open(args.mis_out, "w", encoding="utf-8", newline="") as fh:
            fh.write("".join(f"{v}\n" for v in sorted(engine.mis())))
    out.write(record.render())
    return EXIT_OK


def cmd_check(args, out: TextIO) -> int:
    stream = load(args.stream)
    engine, _ = replay(stream, args.alpha, strict=args.strict,
                       audit_every=args.audit_every)
    report = audit(engine)
    if not report.ok:
        raise AuditFailure(len(stream), report)
    out.write(report.render())
    return EXIT_OK


def _bench_stream(gen: str, n: int, alpha: int, updates: int, seed: int) -> UpdateStream:
    if gen == "forest":
        return gen_forest_union(n, alpha, updates, 0.3, seed)
    if gen == "hub-leaf":
        return gen_hub_leaf(n, max(2, n // 100), alpha, updates, 0.3, seed)
    return gen_preferential(n, alpha, seed)


def cmd_bench(args, out: TextIO) -> int:
    header = ("n", "U", "ns/U", "ops/U", "add/U", "rem/U", "S+/(aU)", "max_out")
    out.write("  ".join(f"{h:>10}" for h in header) + "\n")
    for n in args.sizes:
        stream = _bench_stream(args.gen, n, args.alpha, args.updates or 2 * n, args.seed)
        engine, rec = replay(stream, args.alpha, wall_clock=True)
        u = max(rec.updates, 1)
        cells = (n, rec.updates, f"{rec.wall_ns / u:.0f}", f"{rec.elem_ops / u:.2f}",
                 f"{rec.additions / u:.3f}", f"{rec.removals / u:.3f}",
                 f"{rec.sum_splus / (args.alpha * u):.3f}", engine.graph.max_out_degree())
        out.write("  ".join(f"{c:>10}" for c in cells) + "\n")
    return EXIT_OK


# -- argument parsing -------------------------------------------------------


def _sizes(text: str) -> list[int]:
    try:
        sizes = [int(float(x)) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size list {text!r}") from None
    if not sizes or min(sizes) < 2:
        raise argparse.ArgumentTypeError("sizes must be integers >= 2")
    return sizes


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dynmis", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="write a generated update stream")
    gen.add_argument("kind", choices=("forest", "preferential", "hub-leaf"))
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--k", type=int, default=1,
                     help="forest count, attachments per vertex, or hubs per leaf")
    gen.add_argument("--updates", type=int, default=1000)
    gen.add_argument("--churn", type=float, default=0.3)
    gen.add_argument("--hubs", type=int, default=0)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("-o", "--output")
    gen.set_defaults(func=cmd_gen)

    def replay_flags(p: argparse.ArgumentParser, audit_default: int) -> None:
        p.add_argument("--stream", required=True)
        p.add_argument("--alpha", type=int, help="arboricity bound (default: stream header)")
        p.add_argument("--audit-every", type=int, default=audit_default, metavar="K")
        p.add_argument("--strict", action="store_true",
                       help="raise on any failed runtime guarantee")

    run = sub.add_parser("run", help="replay a stream and report counters")
    replay_flags(run, 0)
    run.add_argument("--csv")
    run.add_argument("--window", type=int, default=1000)
    run.add_argument("--mis-out", help="write the final MIS, one id per line")
    run.add_argument("--wall-clock", action="store_true",
                     help="fill wall_ns with real timings (CSV no longer reproducible)")
    run.set_defaults(func=cmd_run)

    check = sub.add_parser("check", help="replay a stream, auditing as it goes")
    replay_flags(check, 1)
    check.set_defaults(func=cmd_check)

    bench = sub.add_parser("bench", help="time generated streams at several sizes")
    bench.add_argument("--gen", choices=("forest", "preferential", "hub-leaf"), default="forest")
    bench.add_argument("--sizes", type=_sizes, default=[1000, 10000])
    bench.add_argument("--alpha", type=int, default=1)
    bench.add_argument("--updates", type=int, default=0, help="default: 2n")
    bench.add_argument("--seed", type=int, default=0)
    bench.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if getattr(args, "audit_every", 0) and args.audit_every < 0:
        print("dynmis: --audit-every must be >= 0", file=sys.stderr)
        return EXIT_IO
    if getattr(args, "window", 1) < 1:
        print("dynmis: --window must be >= 1", file=sys.stderr)
        return EXIT_IO
    try:
        return args.func(args, out)
    except (OSError, StreamFormatError) as exc:
        print(f"dynmis: {exc}", file=sys.stderr)
        return EXIT_IO
    except AuditFailure as exc:
        print(f"dynmis: {exc}", file=sys.stderr)
        sys.stderr.write(exc.report.records())
        return EXIT_AUDIT
    except (InvariantViolation, OrientationError) as exc:
        print(f"dynmis: guarantee failed: {exc}", file=sys.stderr)
        return EXIT_AUDIT


if __name__ == "__main__":
    sys.exit(main())
