"""``qss`` command-line experiment runner.

Exit codes: 0 success, 1 theorem or consistency violation, 2 usage/config error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .experiments import (
    attack_sweep,
    recount,
    run_trials,
    summarize,
    sweep_to_csv,
)
from .locc import MAX_SWEEP_QUBITS, verify_threshold_theorems
from .protocol import ConfigError, load_config

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2

log = logging.getLogger("qss")


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of integers: {text!r}")


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def cmd_verify_theorems(args) -> int:
    if args.n_max > MAX_SWEEP_QUBITS or args.n_max < 2:
        print(f"error: --n-max must be in 2..{MAX_SWEEP_QUBITS}", file=sys.stderr)
        return EXIT_USAGE
    report = verify_threshold_theorems(args.n_max)
    Path(args.out).write_text(json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n")
    print(f"{len(report.rows)} configurations checked, {len(report.violations)} violations")
    for v in report.violations:
        print("  " + v)
    return EXIT_OK if report.ok else EXIT_VIOLATION


def cmd_run_protocol(args) -> int:
    config = load_config(args.config, seed=args.seed)
    results = run_trials(config, args.trials, args.seed)
    summary = summarize(results, args.seed)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "transcripts.jsonl", "w") as fh:
        for trial, res in enumerate(results):
            for event in res.transcript:
                record = event.to_dict()
                record["trial"] = trial
                fh.write(json.dumps(record, sort_keys=True, separators=(",", ":")) + "\n")
    (out / "summary.csv").write_text(summary.to_csv())
    sys.stdout.write(summary.to_csv())

    if recount([r.transcript for r in results], args.seed) != summary:
        print("error: summary disagrees with transcript recount", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_attack_sweep(args) -> int:
    config = load_config(args.config, seed=args.seed)
    rows = attack_sweep(config, args.taps, args.trials, args.seed, args.u)
    table = sweep_to_csv(rows)
    Path(args.out).write_text(table)
    sys.stdout.write(table)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qss", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-theorems", help="exhaustive coalition-threshold sweep")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--out", required=True, help="JSON report path")
    p.set_defaults(func=cmd_verify_theorems)

    p = sub.add_parser("run-protocol", help="batch of seeded sessions")
    p.add_argument("--config", required=True, help="TOML session file")
    p.add_argument("--trials", type=_positive, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_run_protocol)

    p = sub.add_parser("attack-sweep", help="intercept-resend detection rates")
    p.add_argument("--config", required=True, help="TOML session file")
    p.add_argument("--taps", type=_float_list, default=[0.0, 0.25, 0.5, 1.0])
    p.add_argument("--u", type=_int_list, default=None, help="check counts, default from config")
    p.add_argument("--trials", type=_positive, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="CSV table path")
    p.set_defaults(func=cmd_attack_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
