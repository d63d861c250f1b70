"""Command-line front end: ``figgen --input sweep.csv --panel infidelity
--out fig.png``.

Exit codes: 0 success, 1 runtime failure (unreadable files, rendering
errors), 2 schema mismatch or bad usage.
"""

from __future__ import annotations

import argparse
import sys

from .render import FigureSpec, Panel, SchemaError, render

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_SCHEMA = 2

_PANELS = {p.value: p for p in Panel}


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="figgen",
        description="Render sweep and pulse CSVs as figures.",
    )
    parser.add_argument("--input", action="append", required=True,
                        metavar="CSV",
                        help="input CSV; repeat for multiple files")
    parser.add_argument("--panel", required=True, choices=sorted(_PANELS),
                        help="which panel to render")
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--series", default="topology,kappa_rad_s",
                        help="comma-separated columns defining a series "
                             "(sweep panels only)")
    return parser


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_SCHEMA if exc.code not in (0, None) else EXIT_OK
    spec = FigureSpec(
        inputs=tuple(args.input),
        panel=_PANELS[args.panel],
        output=args.out,
        series_keys=tuple(k for k in args.series.split(",") if k),
    )
    try:
        render(spec)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
