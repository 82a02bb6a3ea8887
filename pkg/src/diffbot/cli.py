"""Command line entry point: ``diffbot run|scenarios|validate``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import load_config
from .scenarios import SCENARIOS, RunManifest, run_scenario
from .simulation import ESTIMATOR_MODES


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="diffbot", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a scenario and write trace/metrics/plot data")
    run.add_argument("scenario", help="scenario name (see 'diffbot scenarios')")
    run.add_argument("--config", type=Path, default=None)
    run.add_argument("--out", type=Path, default=None, help="output directory [out/<scenario>]")
    run.add_argument("--seed", type=int, default=None)
    run.add_argument("--estimator", choices=ESTIMATOR_MODES, default=None)

    sub.add_parser("scenarios", help="list scenario names")

    val = sub.add_parser("validate", help="check a config file without running")
    val.add_argument("--config", type=Path, required=True)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "scenarios":
            print("\n".join(SCENARIOS))
        elif args.command == "validate":
            load_config(args.config)
            print(f"{args.config}: ok")
        else:
            out = args.out or Path("out") / args.scenario
            manifest = RunManifest(args.scenario, args.config, out, args.seed, args.estimator)
            for path in run_scenario(manifest):
                print(path)
    except (ValueError, OSError) as exc:
        print(f"diffbot: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
