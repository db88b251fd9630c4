"""``bandforge`` command line.

Exit codes: 0 success, 1 the counterexample does not hold for the given
parameters (``verify`` only), 2 usage error, 3 geometry or parameter error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import __version__
from .errors import BandforgeError
from .geometry import mc_overlap_stats
from .prismatoid import (
    PRESET_Y,
    PrismatoidParams,
    build_prismatoid,
    preset_names,
    preset_params,
    regular_h,
    solve_params,
)
from .render import render_overhead_svg, render_unfolding_svg
from .report import curvature_dict, dumps, export_obj, matrix_dict, report_json, validation_dict
from .unfold import develop_band, overlap, place_top
from .verify import REPRESENTATIVES, grid_axis, sweep, verdict_matrix

EXIT_OK, EXIT_CLAIM_FALSE, EXIT_USAGE, EXIT_GEOMETRY = 0, 1, 2, 3

# keys missing from --params fall back to these
PARAM_DEFAULTS = {"s": 1.0, "h": 0.05, "y": PRESET_Y, "z": 0.095}


class UsageError(Exception):
    pass


def parse_params(text: str) -> dict:
    out = {}
    for item in filter(None, (t.strip() for t in text.split(","))):
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or key not in PARAM_DEFAULTS:
            raise UsageError(f"bad --params entry {item!r}; expected k=v with k in s,h,y,z")
        try:
            out[key] = float(value)
        except ValueError:
            raise UsageError(f"--params {key} is not a number: {value!r}") from None
    return out


def parse_grid(text: str):
    try:
        h_spec, z_spec = text.split(",")
        axes = []
        for spec in (h_spec, z_spec):
            lo, hi, steps = spec.split(":")
            axes.append(grid_axis(float(lo), float(hi), int(steps)))
    except ValueError:
        raise UsageError(f"bad --grid {text!r}; expected hmin:hmax:steps,zmin:zmax:steps") from None
    return axes


def resolve_params(args) -> tuple[PrismatoidParams, str | None]:
    """Exactly one of --preset, --params, --eps-deg picks the shape."""
    given = [args.preset is not None, args.params is not None, args.eps_deg is not None]
    if sum(given) > 1:
        raise UsageError("give only one of --preset, --params, --eps-deg")
    if args.preset is not None:
        try:
            params = preset_params(args.preset)
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from None
        name = args.preset
    elif args.eps_deg is not None:
        h, z = solve_params(math.radians(args.eps_deg), args.ratio, s=args.s, y=args.y)
        params, name = PrismatoidParams(h=h, y=args.y, z=z, s=args.s), None
    else:
        vals = dict(PARAM_DEFAULTS)
        vals.update(parse_params(args.params or ""))
        params, name = PrismatoidParams(**vals), None
    if args.hexagon == "regular":
        params = PrismatoidParams(h=regular_h(params.s), y=params.y, z=params.z, s=params.s)
    return params, name


def _write(data: bytes, out):
    if out is None or str(out) == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_bytes(data)


def cmd_build(args):
    params, name = resolve_params(args)
    prism = build_prismatoid(params)
    _write(dumps({
        "preset": name,
        "params": params.as_dict(),
        "a": prism.a.tolist(),
        "b": prism.b.tolist(),
        "faces": [list(f) for f in prism.faces],
    }), args.out)
    return EXIT_OK


def cmd_validate(args):
    params, name = resolve_params(args)
    prism = build_prismatoid(params)
    _write(report_json(prism, preset=name), args.out)
    return EXIT_OK


def cmd_curvature(args):
    params, _ = resolve_params(args)
    _write(dumps(curvature_dict(build_prismatoid(params))), args.out)
    return EXIT_OK


def cmd_solve(args):
    eps = math.radians(args.eps_deg if args.eps_deg is not None else 2.0)
    h, z = solve_params(eps, args.ratio, s=args.s, y=args.y)
    prism = build_prismatoid(PrismatoidParams(h=h, y=args.y, z=z, s=args.s))
    _write(dumps({
        "targets": {"epsilon_deg": math.degrees(eps), "ratio": args.ratio},
        "params": prism.params.as_dict(),
        "z_over_y": z / args.y,
        **{k: v for k, v in curvature_dict(prism).items() if k == "curvatures"},
        "validation": validation_dict(prism),
    }), args.out)
    return EXIT_OK


def cmd_unfold(args):
    params, _ = resolve_params(args)
    prism = build_prismatoid(params)
    dev = develop_band(prism, args.cut if args.cut is not None else 3)
    placement = report = None
    if args.attach is not None:
        placement = place_top(dev, args.attach)
        report = overlap(placement, dev)
        print(f"cut a{dev.cut}, attach a{args.attach}a{(args.attach + 1) % 6}: "
              f"{report.verdict} (area {report.total_area:.6g})", file=sys.stderr)
    _write(render_unfolding_svg(dev, placement, report), args.out)
    return EXIT_OK


def cmd_verify(args):
    params, name = resolve_params(args)
    prism = build_prismatoid(params)
    matrix = verdict_matrix(prism)
    doc = matrix_dict(matrix, name)
    if args.mc_samples:
        # independent area check of every overlapping face
        checks = []
        for r in matrix.cells():
            for f in r.faces:
                dev = develop_band(prism, r.cut)
                placement = place_top(dev, r.attach)
                est, se = mc_overlap_stats(placement.hexagon, dev.quads[dev.slot_of_face(f.face)],
                                           args.mc_samples, args.seed)
                checks.append({"cut": r.cut, "attach": r.attach, "face": f.face,
                               "area": f.area, "mc_area": est, "mc_stderr": se})
        doc["oracle"] = {"samples": args.mc_samples, "seed": args.seed, "checks": checks}
    _write(dumps(doc), args.out)
    bad = [r for r in matrix.cells() if str(r.verdict) != "OVERLAP"]
    for r in bad:
        print(f"cell (cut={r.cut}, attach={r.attach}): {r.verdict}", file=sys.stderr)
    return EXIT_OK if matrix.counterexample else EXIT_CLAIM_FALSE


def cmd_sweep(args):
    s, y = args.s, args.y
    if args.grid is None:
        raise UsageError("sweep needs --grid hmin:hmax:steps,zmin:zmax:steps")
    hs, zs = parse_grid(args.grid)
    result = sweep(hs, zs, s=s, y=y, workers=args.workers)
    _write(report_json(result), args.out)
    return EXIT_OK


def cmd_render(args):
    params, name = resolve_params(args)
    prism = build_prismatoid(params)
    out = Path(args.out or "figures")
    out.mkdir(parents=True, exist_ok=True)
    tag = name or "custom"
    written = []
    for cut, attach in REPRESENTATIVES:
        dev = develop_band(prism, cut)
        placement = place_top(dev, attach)
        report = overlap(placement, dev)
        path = out / f"{tag}_cut{cut}_attach{attach}.svg"
        path.write_bytes(render_unfolding_svg(dev, placement, report))
        written.append(path)
    path = out / f"{tag}_overhead.svg"
    path.write_bytes(render_overhead_svg(prism))
    written.append(path)
    for p in written:
        print(p)
    return EXIT_OK


def cmd_export(args):
    params, _ = resolve_params(args)
    _write(export_obj(build_prismatoid(params)), args.out)
    return EXIT_OK


COMMANDS = {
    "build": (cmd_build, "print vertex coordinates and faces"),
    "validate": (cmd_validate, "check convexity, planarity, angle conditions"),
    "curvature": (cmd_curvature, "angle deficits at all 12 vertices"),
    "solve": (cmd_solve, "find (h, z) for target curvatures"),
    "unfold": (cmd_unfold, "SVG of one band development, optionally with the top placed"),
    "verify": (cmd_verify, "all 36 cut x attachment cells; exit 1 if any does not overlap"),
    "sweep": (cmd_sweep, "verdicts over an (h, z) grid"),
    "render": (cmd_render, "figure panels for the six symmetry classes plus the overhead view"),
    "export": (cmd_export, "Wavefront OBJ of the solid"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bandforge", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_) in COMMANDS.items():
        p = sub.add_parser(name, help=help_)
        p.add_argument("--preset", choices=preset_names())
        p.add_argument("--params", help="explicit shape, e.g. s=1,h=0.05,y=0.5,z=0.095")
        p.add_argument("--hexagon", choices=["bulged", "regular"], default="bulged",
                       help="'regular' overrides h with the regular-hexagon bulge")
        p.add_argument("--eps-deg", type=float, help="solver target for the odd-vertex curvature, degrees")
        p.add_argument("--ratio", type=float, default=0.5, help="solver target delta/epsilon")
        p.add_argument("--s", type=float, default=1.0)
        p.add_argument("--y", type=float, default=PRESET_Y)
        p.add_argument("--cut", type=int, choices=range(6))
        p.add_argument("--attach", type=int, choices=range(6))
        p.add_argument("--out", help="output file (directory for render); '-' or omitted for stdout")
        p.add_argument("--grid", help="hmin:hmax:steps,zmin:zmax:steps")
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--mc-samples", type=int, default=0,
                       help="verify: cross-check overlap areas by Monte-Carlo with this many samples")
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return COMMANDS[args.command][0](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BandforgeError as exc:
        print(f"geometry error: {exc}", file=sys.stderr)
        return EXIT_GEOMETRY
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
