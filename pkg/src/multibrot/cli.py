"""Command-line front end.

Subcommands: render (PPM image), boundary (CSV/SVG curve), orbit (CSV
iterates), indents (CSV cusp list), verify (JSON check report, with a
summary figure written alongside). Exit codes: 0 success, 1 verification
failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from pathlib import Path

from . import plots
from .dynamics import MultibrotParams, compute_orbit, export_orbit_csv
from .lobe import c_extrema, export_boundary, indent_points, sample_boundary
from .render import GridSpec, render, write_ppm
from .verify import verify_suite

_COLORMAP_NAMES = {"gray": "grayscale", "loggray": "log-grayscale"}


def _complex_pair(text: str) -> complex:
    try:
        re_s, im_s = text.split(",")
        return complex(float(re_s), float(im_s))
    except (TypeError, ValueError):
        raise argparse.ArgumentTypeError(f"expected RE,IM (e.g. -0.5,0.25), got {text!r}")


def _degree_list(text: str) -> list[int]:
    try:
        if ".." in text:
            lo_s, hi_s = text.split("..")
            lo, hi = int(lo_s), int(hi_s)
            if hi < lo:
                raise ValueError
            return list(range(lo, hi + 1))
        return [int(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected a degree N or inclusive range A..B with A <= B, got {text!r}"
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="multibrot",
        description="Escape-time dynamics and main-lobe geometry of z^n + c.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_render = sub.add_parser("render", help="render a dwell image of the set (binary PPM)")
    p_render.add_argument("--degree", type=int, required=True, help="degree n >= 2")
    p_render.add_argument("--width", type=int, default=800)
    p_render.add_argument("--height", type=int, default=800)
    p_render.add_argument("--center", type=_complex_pair, default=None, metavar="RE,IM",
                          help="viewport centre (default 0,0); write --center=-0.75,0 "
                               "for negative values")
    p_render.add_argument("--scale", type=float, default=None,
                          help="plane units per pixel (default frames the main body)")
    p_render.add_argument("--max-iter", type=int, default=500)
    p_render.add_argument("--threads", type=int, default=min(8, os.cpu_count() or 1))
    p_render.add_argument("--colormap", choices=sorted(_COLORMAP_NAMES), default="gray")
    p_render.add_argument("--out", type=Path, required=True, help="output PPM path")
    p_render.add_argument("--plot", type=Path, default=None,
                          help="also save a matplotlib figure of the dwell grid")
    p_render.set_defaults(func=_cmd_render)

    p_boundary = sub.add_parser("boundary", help="export the main-body boundary curve")
    p_boundary.add_argument("--degree", type=int, required=True)
    p_boundary.add_argument("--samples", type=int, default=1024,
                            help="samples per lobe (>= 8)")
    p_boundary.add_argument("--format", choices=["csv", "svg"], default=None,
                            help="output format (default: from --out suffix, else csv)")
    p_boundary.add_argument("--out", type=Path, default=None,
                            help="output path (default: CSV to stdout)")
    p_boundary.add_argument("--plot", type=Path, default=None,
                            help="also save a matplotlib figure of the curve")
    p_boundary.set_defaults(func=_cmd_boundary)

    p_orbit = sub.add_parser("orbit", help="export the iterate sequence for one parameter")
    p_orbit.add_argument("--degree", type=int, required=True)
    p_orbit.add_argument("--c", type=_complex_pair, required=True, metavar="RE,IM")
    p_orbit.add_argument("--z0", type=_complex_pair, default=0j, metavar="RE,IM")
    p_orbit.add_argument("--max-iter", type=int, default=1000)
    p_orbit.add_argument("--escape-radius", type=float, default=None,
                         help="escape threshold (default max(|c|, 2))")
    p_orbit.add_argument("--out", type=Path, default=None,
                         help="output path (default: CSV to stdout)")
    p_orbit.add_argument("--plot", type=Path, default=None,
                         help="also save a matplotlib figure of the orbit")
    p_orbit.set_defaults(func=_cmd_orbit)

    p_indents = sub.add_parser("indents", help="list the cusp points joining adjacent lobes")
    p_indents.add_argument("--degree", type=int, required=True)
    p_indents.add_argument("--out", type=Path, default=None,
                           help="output path (default: CSV to stdout)")
    p_indents.add_argument("--plot", type=Path, default=None,
                           help="also save a figure of the lobes and cusps")
    p_indents.set_defaults(func=_cmd_indents)

    p_verify = sub.add_parser("verify", help="run the per-degree check suite")
    p_verify.add_argument("--degrees", type=_degree_list, required=True, metavar="A..B|N")
    p_verify.add_argument("--report", type=Path, default=None,
                          help="JSON report path (default: stdout); a .png summary "
                               "figure is written alongside")
    p_verify.add_argument("--plot", type=Path, default=None,
                          help="override the summary figure path")
    p_verify.add_argument("--budget", type=int, default=10_000,
                          help="membership iteration budget for oracle probes")
    p_verify.add_argument("--shrink", type=float, default=0.9,
                          help="radial probe factor in (0, 1)")
    p_verify.set_defaults(func=_cmd_verify)

    return parser


def _fail_usage(parser: argparse.ArgumentParser, message: str) -> None:
    parser.error(message)  # prints diagnostic and exits with code 2


def _check_writable(parser, flag: str, path: Path | None) -> None:
    if path is None:
        return
    parent = path.resolve().parent
    if not parent.is_dir() or not os.access(parent, os.W_OK):
        _fail_usage(parser, f"{flag} directory {parent} does not exist or is not writable")


def _validate(parser: argparse.ArgumentParser, args: argparse.Namespace) -> None:
    if getattr(args, "degree", None) is not None and args.degree < 2:
        _fail_usage(parser, "--degree must be at least 2")
    if getattr(args, "degrees", None) is not None and any(d < 2 for d in args.degrees):
        _fail_usage(parser, "--degrees must only contain degrees >= 2")
    for flag, attr, floor in (("--width", "width", 1), ("--height", "height", 1),
                              ("--max-iter", "max_iter", 1), ("--threads", "threads", 1),
                              ("--samples", "samples", 8), ("--budget", "budget", 1)):
        v = getattr(args, attr, None)
        if v is not None and v < floor:
            _fail_usage(parser, f"{flag} must be at least {floor}")
    if getattr(args, "scale", None) is not None and not (math.isfinite(args.scale) and args.scale > 0):
        _fail_usage(parser, "--scale must be positive and finite")
    if getattr(args, "shrink", None) is not None and not (0.0 < args.shrink < 1.0):
        _fail_usage(parser, "--shrink must lie strictly between 0 and 1")
    for flag in ("out", "report", "plot"):
        _check_writable(parser, f"--{flag}", getattr(args, flag, None))


def _default_scale(degree: int, width: int, height: int) -> float:
    # frame the whole main body: centre 0, half-span 1.3 * c_max across the
    # shorter image dimension
    return 2.0 * 1.3 * c_extrema(degree)[1] / min(width, height)


def _emit(text: str, out: Path | None, note: str) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, newline="\n")
        print(f"wrote {out} ({note})")


def _cmd_render(args) -> int:
    scale = args.scale if args.scale is not None else _default_scale(args.degree, args.width, args.height)
    spec = GridSpec(
        width=args.width,
        height=args.height,
        center=args.center if args.center is not None else 0j,
        scale=scale,
        max_iter=args.max_iter,
    )
    buffer = render(args.degree, spec, args.threads)
    write_ppm(buffer, _COLORMAP_NAMES[args.colormap], args.out)
    print(f"wrote {args.out} ({spec.width}x{spec.height}, max_iter {spec.max_iter})")
    if args.plot is not None:
        plots.save_dwell_figure(buffer, args.plot)
        print(f"wrote {args.plot}")
    return 0


def _cmd_boundary(args) -> int:
    fmt = args.format
    if fmt is None:
        fmt = "svg" if args.out is not None and args.out.suffix.lower() == ".svg" else "csv"
    boundary = sample_boundary(args.degree, args.samples)
    if args.out is None:
        export_boundary(boundary, fmt, sys.stdout)
    else:
        export_boundary(boundary, fmt, args.out)
        print(f"wrote {args.out} ({len(boundary.samples)} samples, {fmt})")
    if args.plot is not None:
        plots.save_boundary_figure([boundary], args.plot)
        print(f"wrote {args.plot}")
    return 0


def _cmd_orbit(args) -> int:
    params = MultibrotParams(args.degree, args.c)
    orbit = compute_orbit(params, args.z0, args.max_iter, args.escape_radius)
    if args.out is None:
        export_orbit_csv(orbit, sys.stdout)
    else:
        export_orbit_csv(orbit, args.out)
        print(f"wrote {args.out} ({len(orbit.iterates)} iterates, {orbit.outcome.value})")
    if args.plot is not None:
        plots.save_orbit_figure(orbit, args.plot)
        print(f"wrote {args.plot}")
    return 0


def _cmd_indents(args) -> int:
    cusps = indent_points(args.degree)
    lines = ["theta,re,im"]
    for theta, point in zip(cusps.arguments, cusps.points):
        lines.append(f"{theta:.17g},{point.real:.17g},{point.imag:.17g}")
    _emit("\n".join(lines) + "\n", args.out, f"{len(cusps.points)} points")
    if args.plot is not None:
        plots.save_indent_figure(args.degree, args.plot)
        print(f"wrote {args.plot}")
    return 0


def _cmd_verify(args) -> int:
    report = verify_suite(args.degrees, shrink=args.shrink, budget=args.budget)
    if args.report is None:
        sys.stdout.write(report.to_json())
    else:
        report.write_json(args.report)
        print(f"wrote {args.report} (overall_pass={str(report.overall_pass).lower()})")
    figure_path = args.plot
    if figure_path is None and args.report is not None:
        figure_path = args.report.with_suffix(".png")
    if figure_path is not None:
        plots.save_verify_figure(report, figure_path)
        print(f"wrote {figure_path}")
    for checks in report.degrees:
        print(f"degree {checks.degree}: {'pass' if checks.passed else 'FAIL'}")
    return 0 if report.overall_pass else 1


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _validate(parser, args)
    except SystemExit as exc:
        return int(exc.code or 0)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
