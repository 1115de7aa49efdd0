"""Command line: render --kind <k> --in <csv> --out <img> [--overwrite]."""

import argparse
import sys

from .render import KINDS, MissingColumnError, PlotSpec, render


def build_parser():
    parser = argparse.ArgumentParser(
        prog="figplot-render",
        description="Render an episwitch CSV into a figure file.")
    parser.add_argument("--kind", choices=KINDS, required=True)
    parser.add_argument("--in", dest="input_csv", required=True,
                        help="input CSV path")
    parser.add_argument("--out", dest="output_image", required=True,
                        help="output image path (.png or .svg)")
    parser.add_argument("--xlabel")
    parser.add_argument("--ylabel")
    parser.add_argument("--title")
    parser.add_argument("--no-guide", dest="guide", action="store_false",
                        help="suppress the x=1 guide line")
    parser.add_argument("--overwrite", action="store_true",
                        help="replace the output file if it exists")
    return parser


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    spec = PlotSpec(kind=args.kind, input_csv=args.input_csv,
                    output_image=args.output_image, xlabel=args.xlabel,
                    ylabel=args.ylabel, title=args.title,
                    guide_at_one=args.guide, overwrite=args.overwrite)
    try:
        path = render(spec)
    except (MissingColumnError, ValueError, OSError) as exc:
        print(f"figplot: {exc}", file=sys.stderr)
        return 1
    print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
