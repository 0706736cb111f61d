"""Command-line entry point: fracwave-plot <spec.cfg>."""

from __future__ import annotations

import argparse
import os
import sys

from .render import render
from .spec import FigureSpec


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="fracwave-plot",
        description="Render a figure from a flat key-value figure config.",
    )
    parser.add_argument("config", help="figure config file (key = value lines)")
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return 0 if err.code == 0 else 1

    if not os.path.isfile(args.config):
        print(f"config file not found: {args.config}", file=sys.stderr)
        return 1
    try:
        spec = FigureSpec.from_config_file(args.config)
        out = render(spec)
    except (ValueError, KeyError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
