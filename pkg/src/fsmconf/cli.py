"""Command-line interface: ``fsmconf <subcommand> ...``.

Exit codes: 0 success / conforms / pass, 1 semantic negative (non-conformance,
failed suite, unseparable pairs, completeness violation), 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import logging
import sys

from .fsm import FsmError, format_inputs, format_outputs, load_fsm, parse_fsm, validate
from .mutation import OPERATORS, MutationParams, completeness_experiment
from .product import conforms
from .separability import compute_witnesses
from .similarity import make_config
from .testgen import NotSeparableError, format_suite, hsi_generate, parse_suite, run_suite

log = logging.getLogger("fsmconf")


class UsageError(Exception):
    pass


def _metric_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("similarity")
    g.add_argument("--metric", choices=("thermostat", "discrete"), default=None,
                   help="output metric (default: thermostat)")
    g.add_argument("--threshold", type=float, default=None,
                   help="similarity threshold; required for thermostat, rejected for discrete")


def _config(args, fallback=None):
    metric = args.metric
    threshold = args.threshold
    if metric is None and threshold is None and fallback is not None:
        return fallback
    metric = metric or "thermostat"
    try:
        return make_config(metric, threshold)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(args, text: str) -> None:
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(path):
    try:
        return load_fsm(path)
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    except FsmError as exc:
        raise UsageError(f"{path}: {exc}") from None


def cmd_validate(args) -> int:
    try:
        with open(args.fsm, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"{args.fsm}: {exc.strerror}") from None
    try:
        m = parse_fsm(text)
    except FsmError as exc:
        print(f"{args.fsm}: {exc}", file=sys.stderr)
        return 1
    problems = validate(m)
    for p in problems:
        print(f"{args.fsm}: {p}", file=sys.stderr)
    if not problems:
        _emit(args, f"{m.name}: ok ({m.n} states, {len(m.inputs)} inputs, "
                    f"{len(m.transitions)} transitions)\n")
    return 1 if problems else 0


def cmd_witnesses(args) -> int:
    m = _load(args.spec)
    wt = compute_witnesses(m, _config(args), strong=not args.plain)
    _emit(args, "".join(line + "\n" for line in wt.lines()))
    return 0 if wt.total else 1


def cmd_gen(args) -> int:
    spec = _load(args.spec)
    if args.m < spec.n:
        raise UsageError(f"-m {args.m} is smaller than the {spec.n} states of {spec.name}")
    if args.mode == "classical" and not args.unsound:
        raise UsageError("--mode classical produces incomplete suites; pass --unsound to confirm")
    try:
        suite = hsi_generate(spec, args.m, _config(args), args.mode)
    except NotSeparableError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _emit(args, format_suite(suite))
    return 0


def cmd_run(args) -> int:
    impl = _load(args.impl)
    try:
        with open(args.suite, encoding="utf-8") as fh:
            suite = parse_suite(fh.read())
    except OSError as exc:
        raise UsageError(f"{args.suite}: {exc.strerror}") from None
    except (FsmError, ValueError) as exc:
        raise UsageError(f"{args.suite}: {exc}") from None
    cfg = _config(args, fallback=suite.config())
    try:
        verdict = run_suite(impl, suite, cfg)
    except FsmError as exc:
        raise UsageError(str(exc)) from None
    _emit(args, "".join(line + "\n" for line in verdict.lines()))
    return 0 if verdict.passed else 1


def cmd_check(args) -> int:
    spec, impl = _load(args.spec), _load(args.impl)
    try:
        v = conforms(spec, impl, _config(args))
    except FsmError as exc:
        raise UsageError(str(exc)) from None
    if v.conforms:
        _emit(args, f"{impl.name} conforms to {spec.name}\n")
        return 0
    _emit(args, f"{impl.name} does not conform to {spec.name}\n"
                f"counterexample: {format_inputs(v.counterexample)}\n"
                f"expected: {format_outputs(v.expected)}\n"
                f"observed: {format_outputs(v.observed)}\n")
    return 1


def cmd_experiment(args) -> int:
    spec = _load(args.spec)
    cfg = _config(args)
    if args.m < spec.n:
        raise UsageError(f"-m {args.m} is smaller than the {spec.n} states of {spec.name}")
    ops = tuple(args.operators.split(",")) if args.operators else OPERATORS
    mags = tuple(float(x) for x in args.magnitudes.split(",")) if args.magnitudes else None
    try:
        params = MutationParams(seed=args.seed, count=args.count,
                                extra_states=args.m - spec.n if args.extra is None else args.extra,
                                operators=ops, magnitudes=mags, max_edits=args.max_edits)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    try:
        log.info("running %d mutants against %s", params.count, spec.name)
        report = completeness_experiment(spec, args.m, cfg, params, args.mode, jobs=args.jobs)
    except NotSeparableError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    summary = "".join(f"# {line}\n" for line in report.summary().splitlines())
    _emit(args, report.tsv() + summary)
    ok = (report.theorem_holds and report.sound_kills == 0
          and report.lower_bound_violations == 0 and report.cover_violations == 0)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fsmconf",
        description="Threshold-based conformance testing for finite state machines.")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="more logging")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def out_flag(p):
        p.add_argument("-o", "--output", metavar="PATH", help="write to PATH instead of stdout")

    p = sub.add_parser("validate", help="parse and check a machine file")
    p.add_argument("fsm")
    out_flag(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("witnesses", help="shortest strong-separation witness per state pair")
    p.add_argument("spec")
    _metric_flags(p)
    p.add_argument("--plain", action="store_true",
                   help="plain separating sequences instead of strong witnesses")
    out_flag(p)
    p.set_defaults(func=cmd_witnesses)

    p = sub.add_parser("gen", help="generate an m-complete test suite")
    p.add_argument("spec")
    p.add_argument("-m", type=int, required=True, help="upper bound on implementation states")
    _metric_flags(p)
    p.add_argument("--mode", choices=("strong", "classical"), default="strong")
    p.add_argument("--unsound", action="store_true",
                   help="acknowledge that --mode classical suites are not m-complete")
    out_flag(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("run", help="run a suite file against an implementation")
    p.add_argument("impl")
    p.add_argument("suite")
    _metric_flags(p)
    out_flag(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("check", help="decide conformance via the product machine")
    p.add_argument("spec")
    p.add_argument("impl")
    _metric_flags(p)
    out_flag(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("experiment", help="mutation experiment checking m-completeness")
    p.add_argument("spec")
    p.add_argument("-m", type=int, required=True)
    _metric_flags(p)
    p.add_argument("--mode", choices=("strong", "classical"), default="strong")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=500)
    p.add_argument("--extra", type=int, default=None,
                   help="extra states mutants may add (default: m - n)")
    p.add_argument("--operators", default=None,
                   help=f"comma-separated subset of {','.join(OPERATORS)}")
    p.add_argument("--magnitudes", default=None,
                   help="comma-separated perturbation sizes (default: t/2,t,2t,4t)")
    p.add_argument("--max-edits", type=int, default=2, help="edits per mutant, at most")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    out_flag(p)
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2


def dispatch(argv) -> int:
    """Run the CLI on ``argv``; argparse usage errors become exit code 2."""
    try:
        return main(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2


if __name__ == "__main__":
    sys.exit(main())
