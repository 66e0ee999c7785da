"""Command-line verifier.

Subcommands: validate, classify, dump, check-chain, check-commutant,
check-norms, solve.  Exit codes: 0 all checks passed (or exploratory or
explicitly refused), 1 some check failed, 2 configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Dict, List, Optional

from .basis import q_window, qinv_window
from .commutant import solve_commutant
from .config import ALL_SUITES, RunConfig, parse_config, resolve_config
from .growth import ConfigError, DivisibilityError, GrowthSequence, WindowError, classify, validate
from .linalg import format_window, parse_window
from .scalars import format_scalar
from .suites import run_suite
from .windows import k_window, s2_window, t_window

CHAIN_SUITES = (
    "basis-inverse",
    "chain-commutators",
    "classify-partition",
    "non-scalarity",
    "s2-closed-form",
)
COMMUTANT_SUITES = ("commutant-roundtrip", "toeplitz-lemma", "ttilde-shift")
NORM_SUITES = ("norm-scan",)


def _common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key=value config file; flags override it")
    p.add_argument("--d", help="explicit sequence a1,b1,a2,b2,...")
    p.add_argument("--rule", help="geometric:first_a=<int>,ratio=<int>,blocks=<int>")
    p.add_argument("--N", type=int, help="window size")
    p.add_argument("--m", type=int, help="selector modulus (default 2)")
    p.add_argument("--precision", type=int, help="evaluation precision bits (default 128)")
    p.add_argument("--seed", type=int, help="seed for randomized suites")
    p.add_argument("--format", choices=("text", "json"), dest="fmt")
    p.add_argument("--timing", action="store_true",
                   help="include wall-clock durations in JSON reports")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="opwin",
        description="exact window verifier for the growth-sequence operator chain",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check sequence invariants")
    _common_flags(p)
    p.add_argument("--require-even", action="store_true")

    p = sub.add_parser("classify", help="classify an index into its case")
    _common_flags(p)
    p.add_argument("index", type=int)

    p = sub.add_parser("dump", help="print a window in the matrix file format")
    _common_flags(p)
    p.add_argument("matrix", choices=("T", "Q", "Qinv", "S2", "K"))

    for name, helptext in (
        ("check-chain", "partition, basis inverse, S2 closed form, commutators"),
        ("check-commutant", "T~=S, Toeplitz lemma, commutant round trip"),
        ("check-norms", "exploratory column norm scan"),
    ):
        p = sub.add_parser(name, help=helptext)
        _common_flags(p)

    p = sub.add_parser("solve", help="recover p with R = p(T) from a matrix file")
    _common_flags(p)
    p.add_argument("matrix_file")
    return parser


def _gather_raw(args: argparse.Namespace) -> Dict[str, str]:
    raw: Dict[str, str] = {}
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            text = fh.read()
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ConfigError(f"expected key=value in config file, got {line!r}")
            raw[key.strip()] = value.strip()
    overrides = {
        "d": args.d,
        "rule": args.rule,
        "N": args.N,
        "m": args.m,
        "precision": args.precision,
        "seed": args.seed,
        "format": args.fmt,
    }
    for key, val in overrides.items():
        if val is not None:
            raw[key] = str(val)
    # a sequence flag overrides whichever sequence form the config file used
    if args.d is not None and args.rule is None:
        raw.pop("rule", None)
    if args.rule is not None and args.d is None:
        raw.pop("d", None)
    if getattr(args, "timing", False):
        raw["timing"] = "true"
    return raw


def _resolve(args: argparse.Namespace, suites) -> RunConfig:
    raw = _gather_raw(args)
    raw.pop("suites", None)
    config = resolve_config(raw)
    return RunConfig(
        sequence=config.sequence,
        window=config.window,
        modulus=config.modulus,
        precision_bits=config.precision_bits,
        precision_cap=config.precision_cap,
        suites=tuple(sorted(suites)),
        fmt=config.fmt,
        seed=config.seed,
        timing=config.timing,
    )


def _sequence_only(args: argparse.Namespace) -> GrowthSequence:
    raw = _gather_raw(args)
    if "d" in raw:
        try:
            return GrowthSequence.from_d(
                [int(x) for x in raw["d"].replace(" ", "").split(",") if x]
            )
        except ValueError:
            raise ConfigError(f"d must be a comma list of integers: {raw['d']!r}") from None
    if "rule" in raw:
        from .config import expand_rule

        return expand_rule(raw["rule"])
    raise ConfigError("sequence required")


def _cmd_validate(args) -> int:
    seq = _sequence_only(args)
    report = validate(seq, require_even=args.require_even, m=args.m or 1)
    payload = {
        "d": list(seq.d),
        "ok": report.ok,
        "violations": list(report.messages()),
        "even_ok": report.even_ok,
        "divisible": report.divisible,
    }
    if args.fmt == "json":
        print(json.dumps(payload, sort_keys=True, separators=(",", ":")))
    else:
        print(f"{seq}: {'valid' if report.ok else 'INVALID'}")
        for msg in report.messages():
            print(f"  - {msg}")
    return 0 if report.ok else 1


def _cmd_classify(args) -> int:
    seq = _sequence_only(args)
    case = classify(seq, args.index)
    if args.fmt == "json":
        payload = {"index": args.index, "kind": case.kind, "n": case.n, "r": case.r,
                   "h": None if case.h is None else str(case.h)}
        print(json.dumps(payload, sort_keys=True, separators=(",", ":")))
    else:
        print(f"i={args.index}: {case}")
    return 0


def _cmd_dump(args) -> int:
    config = _resolve(args, ALL_SUITES)
    seq, n, m = config.sequence, config.window, config.modulus
    if args.matrix == "T":
        w = t_window(seq, n)
    elif args.matrix == "Q":
        w = q_window(seq, n)
    elif args.matrix == "Qinv":
        w = qinv_window(seq, n)
    elif args.matrix == "S2":
        w = s2_window(seq, n, m)
    else:
        w = k_window(n)
    sys.stdout.write(format_window(w))
    return 0


def _cmd_check(args, suites) -> int:
    config = _resolve(args, suites)
    report = run_suite(config)
    if config.fmt == "json":
        sys.stdout.write(report.to_json())
    else:
        sys.stdout.write(report.to_text())
    return report.exit_code


def _cmd_solve(args) -> int:
    config = _resolve(args, ALL_SUITES)
    with open(args.matrix_file, "r", encoding="utf-8") as fh:
        w = parse_window(fh.read())
    sol = solve_commutant(w, config.sequence)
    if sol.ok:
        coeffs = [format_scalar(c) for c in sol.series.trimmed()]
        if config.fmt == "json":
            print(json.dumps({"solved": True, "series": coeffs},
                             sort_keys=True, separators=(",", ":")))
        else:
            print("solved: R = p(T) with")
            for i, c in enumerate(coeffs):
                print(f"  p_{i} = {c}")
        return 0
    wit = sol.failure_witness.as_dict() if sol.failure_witness else None
    if config.fmt == "json":
        print(json.dumps({"solved": False, "witness": wit},
                         sort_keys=True, separators=(",", ":")))
    else:
        print(f"not in the commutant of T on this window; witness {wit}")
    return 1


def main(argv: Optional[List[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "validate":
            return _cmd_validate(args)
        if args.command == "classify":
            return _cmd_classify(args)
        if args.command == "dump":
            return _cmd_dump(args)
        if args.command == "check-chain":
            return _cmd_check(args, CHAIN_SUITES)
        if args.command == "check-commutant":
            return _cmd_check(args, COMMUTANT_SUITES)
        if args.command == "check-norms":
            return _cmd_check(args, NORM_SUITES)
        if args.command == "solve":
            return _cmd_solve(args)
        raise AssertionError(f"unhandled command {args.command}")
    except (ConfigError, WindowError, DivisibilityError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
