"""Command-line interface.

Exit codes: 0 success, 1 parse or validation failure, 2 extraction found
nothing, 3 size or bound overflow limits, 64 usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import canonical, extraction, search, structure, sysfile
from .canonical import FamilyTag
from .core import RotationError, RotationSystem, SizeOutOfRangeError, induce, invert
from .extraction import BoundOverflowError, ExtractionError

USAGE_EXIT = 64

_FAMILIES = {tag.value: tag for tag in FamilyTag}


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 64, not argparse's 2
        self.print_usage(sys.stderr)
        self.exit(USAGE_EXIT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rotsys", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse a system file and print its canonical form")
    p.add_argument("file")

    p = sub.add_parser("canon", help="print a canonical family")
    p.add_argument("--family", required=True, choices=sorted(_FAMILIES))
    p.add_argument("--m", required=True, type=int)

    p = sub.add_parser("invert", help="reverse every rotation")
    p.add_argument("file")

    p = sub.add_parser("induce", help="induced subsystem on a label subset")
    p.add_argument("file")
    p.add_argument("--subset", required=True, help="comma-separated labels, e.g. 1,3,7")

    p = sub.add_parser("classify", help="per-element structure table and system predicates")
    p.add_argument("file")

    p = sub.add_parser("extract", help="run the extraction pipeline")
    p.add_argument("file")
    p.add_argument("--m", required=True, type=int)
    p.add_argument("--stage", choices=["separated", "forward", "backward", "full"],
                   default="full")

    p = sub.add_parser("bounds", help="worst-case size bounds")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--n1", type=int, metavar="T")
    group.add_argument("--n2", type=int, metavar="T")
    group.add_argument("--n0", type=int, metavar="M")
    p.add_argument("--ceiling", type=int, default=None,
                   help="overflow ceiling (default 10^4000)")

    p = sub.add_parser("contains", help="search for a canonical subsystem")
    p.add_argument("file")
    p.add_argument("--m", required=True, type=int)
    p.add_argument("--family", choices=sorted(_FAMILIES), default=None)

    p = sub.add_parser("ramsey", help="exhaustive containment threshold experiment")
    p.add_argument("--m", required=True, type=int)
    p.add_argument("--max-n", required=True, type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default=None, help="also write the JSON report here")

    p = sub.add_parser("random", help="seeded random system")
    p.add_argument("--size", required=True, type=int)
    p.add_argument("--seed", required=True, type=int)
    p.add_argument("--separated", action="store_true")

    p = sub.add_parser("enumerate", help="walk every system of a given size")
    p.add_argument("--size", required=True, type=int)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--count-only", action="store_true")
    group.add_argument("--stream", action="store_true")

    return parser


def _print_system(system: RotationSystem, out) -> None:
    out.write(sysfile.render(system))


def _direction_names(directions) -> str:
    if not directions:
        return "-"
    return ",".join(sorted(d.name for d in directions))


def _cmd_classify(system: RotationSystem, out) -> int:
    table = structure.classify(system)
    out.write("label  separated  backward  forward\n")
    for label, cls in table.items():
        out.write(
            f"{label:<6} {'yes' if cls.separated else 'no':<10} "
            f"{_direction_names(cls.backward):<9} {_direction_names(cls.forward)}\n"
        )
    out.write(f"separated: {'yes' if structure.is_separated(system) else 'no'}\n")
    out.write(f"forward monotone: {'yes' if structure.is_forward_monotone(system) else 'no'}\n")
    out.write(f"backward monotone: {'yes' if structure.is_backward_monotone(system) else 'no'}\n")
    return 0


def _cmd_extract(system: RotationSystem, m: int, stage: str, out) -> int:
    if stage != "full":
        finder = {
            "separated": extraction.find_separated_subsystem,
            "forward": lambda s: extraction.find_forward_monotone_subsystem(
                extraction.find_separated_subsystem(s)
            ),
            "backward": lambda s: extraction.find_backward_monotone_subsystem(
                extraction.find_forward_monotone_subsystem(
                    extraction.find_separated_subsystem(s)
                )
            ),
        }[stage]
        result = finder(system)
        out.write(f"stage: {stage}\nsize: {result.size}\n")
        _print_system(result, out)
        return 0
    cert = extraction.find_unavoidable(system, m)
    out.write(f"tag: {cert.tag.value}\n")
    out.write(f"subset: {' '.join(str(x) for x in cert.subset)}\n")
    pairs = " ".join(f"{a}->{b}" for a, b in cert.relabel.pairs)
    out.write(f"relabel: {pairs}\n")
    stages = " ".join(f"{name}:{size}" for name, size in cert.stage_log)
    out.write(f"stages: {stages}\n")
    _print_system(induce(system, cert.subset), out)
    return 0


def _cmd_bounds(args, out) -> int:
    ceiling = args.ceiling if args.ceiling is not None else extraction.DEFAULT_CEILING
    if args.n1 is not None:
        value = extraction.bound_n1(args.n1, ceiling)
    elif args.n2 is not None:
        value = extraction.bound_n2(args.n2, ceiling)
    else:
        value = extraction.bound_n0(args.n0, ceiling)
    out.write(f"{value}\n")
    return 0


def _cmd_contains(system: RotationSystem, m: int, family: str | None, out) -> int:
    if family is None:
        witness = search.contains_any(system, m)
    else:
        witness = search.contains_canonical(system, _FAMILIES[family], m)
    if witness is None:
        out.write("none\n")
        return 0
    out.write(f"tag: {witness.tag.value}\n")
    out.write(f"subset: {' '.join(str(x) for x in witness.subset)}\n")
    pairs = " ".join(f"{a}->{b}" for a, b in witness.relabel.pairs)
    out.write(f"relabel: {pairs}\n")
    return 0


def report_as_json(report: search.ThresholdReport) -> dict:
    """JSON-ready dict for a threshold report; schema is stable."""
    per_n = []
    for scan in report.per_n:
        entry: dict = {"n": scan.n, "scanned": scan.scanned, "all_pass": scan.all_pass}
        if scan.counterexample is not None:
            entry["counterexample"] = {
                str(label): list(rot)
                for label, rot in scan.counterexample.rotations().items()
            }
        per_n.append(entry)
    return {
        "m": report.m,
        "max_n": report.n_max,
        "threshold": report.threshold,
        "per_n": per_n,
        "wall_time_ms": report.wall_time_ms,
    }


def _cmd_ramsey(args, out) -> int:
    report = search.ramsey_threshold(args.m, args.max_n, jobs=args.jobs)
    for scan in report.per_n:
        status = "all contain" if scan.all_pass else "counterexample found"
        out.write(f"n={scan.n}: scanned {scan.scanned} systems, {status}\n")
        if scan.counterexample is not None:
            for label, rot in scan.counterexample.rotations().items():
                out.write(f"    {label}: {' '.join(str(x) for x in rot)}\n")
    if report.threshold is None:
        out.write(f"threshold: none up to n={report.n_max}\n")
    else:
        out.write(f"threshold: {report.threshold}\n")
    out.write(f"wall time: {report.wall_time_ms} ms\n")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(report_as_json(report), fh, indent=2, sort_keys=True)
            fh.write("\n")
    return 0


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # argparse already printed a message
        return int(exc.code or 0)
    out = sys.stdout
    try:
        if args.command == "validate":
            _print_system(sysfile.load(args.file), out)
            return 0
        if args.command == "canon":
            _print_system(canonical.canonical_of(_FAMILIES[args.family], args.m), out)
            return 0
        if args.command == "invert":
            _print_system(invert(sysfile.load(args.file)), out)
            return 0
        if args.command == "induce":
            subset = [int(tok) for tok in args.subset.split(",") if tok.strip()]
            _print_system(induce(sysfile.load(args.file), subset), out)
            return 0
        if args.command == "classify":
            return _cmd_classify(sysfile.load(args.file), out)
        if args.command == "extract":
            return _cmd_extract(sysfile.load(args.file), args.m, args.stage, out)
        if args.command == "bounds":
            return _cmd_bounds(args, out)
        if args.command == "contains":
            return _cmd_contains(sysfile.load(args.file), args.m, args.family, out)
        if args.command == "ramsey":
            return _cmd_ramsey(args, out)
        if args.command == "random":
            maker = search.random_separated_system if args.separated else search.random_system
            _print_system(maker(args.size, args.seed), out)
            return 0
        if args.command == "enumerate":
            if args.count_only:
                out.write(f"{search.count_systems(args.size)}\n")
            else:
                for system in search.iter_systems(args.size):
                    _print_system(system, out)
                    out.write("\n")
            return 0
        raise AssertionError(f"unhandled command {args.command}")
    except ExtractionError as exc:
        print(f"extract: {exc}", file=sys.stderr)
        stages = " ".join(f"{name}:{size}" for name, size in exc.stage_log)
        print(f"stages: {stages}", file=sys.stderr)
        return 2
    except (BoundOverflowError, SizeOutOfRangeError) as exc:
        if isinstance(exc, BoundOverflowError):
            out.write("OVERFLOW\n")
        print(f"rotsys: {exc}", file=sys.stderr)
        return 3
    except (RotationError, ValueError, OSError) as exc:
        print(f"rotsys: {exc}", file=sys.stderr)
        return 1


def run() -> None:  # console-script entry point
    sys.exit(main())


if __name__ == "__main__":
    run()
