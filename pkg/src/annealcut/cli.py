"""Command-line entry point: ``annealcut solve|bench|fetch|exact``.

Exit codes: 0 success, 1 usage or parse error, 2 verification failure,
3 fetch or checksum failure.
"""

from __future__ import annotations

import argparse
import logging
import sys

from .annealer import AnnealParams, LinearSchedule
from .graph import GraphFormatError, read_graph, write_assignment
from .harness import (
    FetchError,
    VerificationError,
    emit_csv,
    fetch_instances,
    format_summary,
    load_known_best,
    run_instance,
    run_suite,
)
from .oracle import InstanceTooLarge, brute_force_maxcut

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_FETCH = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_schedule_flags(p):
    p.add_argument("--heat-max", type=float, default=10000.0)
    p.add_argument("--heat-step", type=float, default=2e-6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--time-limit", type=float, default=None, metavar="S",
                   help="wall-clock budget in seconds")
    p.add_argument("-v", "--verbose", action="store_true",
                   help="stream 'iteration objective' improvement lines to stderr")


def _params(args):
    return AnnealParams(
        schedule=LinearSchedule(args.heat_max, args.heat_step),
        seed=args.seed,
        report_improvements=args.verbose,
        time_limit=args.time_limit,
    )


def build_parser():
    parser = _Parser(prog="annealcut", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="anneal one instance")
    p.add_argument("instance")
    _add_schedule_flags(p)
    p.add_argument("--out", metavar="FILE", help="write the best assignment here")
    p.add_argument("--trace", metavar="FILE", help="write the improvement trace here")

    p = sub.add_parser("bench", help="anneal every instance in a directory")
    p.add_argument("directory")
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--known-best", metavar="FILE", default=None,
                   help="known-best CSV (default: bundled table)")
    p.add_argument("--csv", metavar="FILE", help="write records here instead of stdout")
    p.add_argument("--out-dir", metavar="DIR", help="write per-instance .sol and .trace files")
    _add_schedule_flags(p)

    p = sub.add_parser("fetch", help="download and verify instance files")
    p.add_argument("--manifest", required=True, metavar="FILE")
    p.add_argument("--dest", required=True, metavar="DIR")
    p.add_argument("--offline", action="store_true")

    p = sub.add_parser("exact", help="exact maximum cut for graphs with at most 24 vertices")
    p.add_argument("instance")
    return parser


def _solve(args):
    params = _params(args)
    known = load_known_best()
    record = run_instance(args.instance, params, known_best=known,
                          assignment_out=args.out, trace_out=args.trace)
    line = f"{record.instance} best={record.best_objective} iterations={record.iterations} time={record.wall_time:.3f}s"
    if record.best_known is not None:
        line += f" best_known={record.best_known} gap={record.gap}"
    print(line)
    return EXIT_OK


def _bench(args):
    params = _params(args)
    known = load_known_best(args.known_best)
    suite = run_suite(args.directory, params, jobs=args.jobs, known_best=known, out_dir=args.out_dir)
    text = emit_csv(suite.records)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    sys.stderr.write(format_summary(suite.summary))
    for path, msg in suite.skipped:
        sys.stderr.write(f"skipped {path}: {msg}\n")
    for path, msg in suite.failures:
        sys.stderr.write(f"VERIFICATION FAILED {path}: {msg}\n")
    return EXIT_VERIFY if suite.failures else EXIT_OK


def _fetch(args):
    report = fetch_instances(args.manifest, args.dest, offline=args.offline)
    for name in report.present:
        print(f"ok          {name}")
    for name in report.downloaded:
        print(f"downloaded  {name}")
    for name in report.quarantined:
        print(f"QUARANTINED {name} (checksum mismatch)")
    for name, why in report.failed:
        print(f"FAILED      {name}: {why}")
    return EXIT_OK if report.ok else EXIT_FETCH


def _exact(args):
    result = brute_force_maxcut(read_graph(args.instance))
    print(result.optimum)
    print(write_assignment(result.witness, None))
    return EXIT_OK


def main(argv=None):
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    handler = {"solve": _solve, "bench": _bench, "fetch": _fetch, "exact": _exact}[args.command]
    try:
        return handler(args)
    except VerificationError as exc:
        print(f"annealcut: verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except FetchError as exc:
        print(f"annealcut: {exc}", file=sys.stderr)
        return EXIT_FETCH
    except (GraphFormatError, InstanceTooLarge, ValueError, OSError) as exc:
        print(f"annealcut: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
