#!/usr/bin/env python3
from __future__ import annotations

import argparse
import os
from pathlib import Path

from unidirectional_amplifier.cli import main as cli_main
from unidirectional_amplifier.presets import PRESET_IDS


def parse_args() -> argparse.Namespace:
    parser = argparse.ArgumentParser(description="Regenerate the table behind every figure preset into one directory.")
    parser.add_argument(
        "--out-dir",
        default=os.environ.get("UNIDIRECTIONAL_AMPLIFIER_FIGURE_DIR", "./figures"),
        help="output directory (default: env UNIDIRECTIONAL_AMPLIFIER_FIGURE_DIR or ./figures)",
    )
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument(
        "--only",
        action="append",
        choices=PRESET_IDS,
        help="restrict to these presets (repeatable)",
    )
    parser.add_argument("--override", action="append", default=[], metavar="KEY=VALUE")
    return parser.parse_args()


def main() -> None:
    args = parse_args()
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    failed = []
    for preset_id in args.only or PRESET_IDS:
        target = out_dir / f"{preset_id}.{args.format}"
        argv = ["reproduce", preset_id, "--out", str(target), "--format", args.format]
        for override in args.override:
            argv += ["--override", override]
        code = cli_main(argv)
        status = "ok" if code == 0 else f"exit {code}"
        print(f"{preset_id}: {status} -> {target}")
        if code != 0:
            failed.append(preset_id)

    print(f"figures_written={len(args.only or PRESET_IDS) - len(failed)} failed={len(failed)}")
    if failed:
        raise SystemExit(1)


if __name__ == "__main__":
    main()
