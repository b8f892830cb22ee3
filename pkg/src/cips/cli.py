"""Command-line front end.

Subcommands:
    cips     fuse a grayscale stack into one color PNG
    sweep    render one image per hue period plus a labeled contact sheet
    mip      project a 4D volume's CIPs to 2D (axis-aligned, oblique, or rotation)
    phantom  generate a synthetic stack/volume with ground-truth arrival times
    info     print geometry and intensity range of a stack or volume

The full effective parameter set is echoed to stderr so runs are
reproducible; output files stay byte-comparable.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np
from PIL import Image, ImageDraw

from . import colorspace, core, phantom, preprocess, stack_io, volume_render
from .stack_io import RgbImage


def _build_params(args, no_cycle_default_ok=True) -> core.CipsParams:
    cycling = not getattr(args, "no_cycle", False)
    period = getattr(args, "period", None)
    if cycling and period is None:
        if not no_cycle_default_ok:
            raise ValueError("either --period or --no-cycle is required")
        cycling = False
    return core.CipsParams(
        period=period,
        cycling=cycling,
        saturation_gain=args.sat_gain,
        invert=args.invert,
        interp_factor=args.interp_factor,
    )


def _echo(name: str, **kwargs) -> None:
    line = " ".join(f"{k}={v}" for k, v in kwargs.items())
    print(f"cips {name}: {line}", file=sys.stderr)


def _prepared_stack(path, params: core.CipsParams) -> stack_io.FrameStack:
    stack = stack_io.load_stack(path)
    if params.invert:
        stack = preprocess.invert_stack(stack)
    if params.interp_factor > 1:
        stack = preprocess.interpolate_stack(stack, params.interp_factor)
    return stack


def _stack_to_rgb(stack, params: core.CipsParams) -> RgbImage:
    image = core.compute_cips(stack, params)
    if params.saturation_gain != 1.0:
        image = core.amplify_saturation(image, params.saturation_gain)
    return colorspace.render_rgb(image)


def cmd_cips(args) -> int:
    params = _build_params(args)
    _echo(
        "cips",
        input=args.input,
        invert=params.invert,
        interp_factor=params.interp_factor,
        period=params.period,
        cycling=params.cycling,
        sat_gain=params.saturation_gain,
        out=args.out,
    )
    stack = _prepared_stack(args.input, params)
    stack_io.write_rgb(_stack_to_rgb(stack, params), args.out)
    return 0


_LABEL_STRIP = 16


def make_contact_sheet(images: list[RgbImage], labels: list[str], columns: int) -> RgbImage:
    """Tile images on a grid, each cell with its label in a reserved top margin."""
    if not images or len(images) != len(labels):
        raise ValueError("need one label per image")
    if columns < 1:
        raise ValueError("columns must be positive")
    cell_w = max(im.width for im in images)
    cell_h = max(im.height for im in images) + _LABEL_STRIP
    rows = -(-len(images) // columns)
    sheet = Image.new("RGB", (columns * cell_w, rows * cell_h), (0, 0, 0))
    draw = ImageDraw.Draw(sheet)
    for i, (im, label) in enumerate(zip(images, labels)):
        row, col = divmod(i, columns)
        x0, y0 = col * cell_w, row * cell_h
        draw.text((x0 + 2, y0 + 2), label, fill=(255, 255, 255))
        sheet.paste(Image.fromarray(im.pixels, mode="RGB"), (x0, y0 + _LABEL_STRIP))
    return RgbImage(np.asarray(sheet, dtype=np.uint8))


def cmd_sweep(args) -> int:
    periods = [float(p) for p in args.periods.split(",") if p.strip()]
    if not periods or any(p <= 0 for p in periods):
        raise ValueError("--periods needs a comma-separated list of positive values")
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    _echo(
        "sweep",
        input=args.input,
        periods=periods,
        invert=args.invert,
        interp_factor=args.interp_factor,
        sat_gain=args.sat_gain,
        columns=args.columns,
        out_dir=out_dir,
    )
    base = core.CipsParams(
        period=periods[0],
        saturation_gain=args.sat_gain,
        invert=args.invert,
        interp_factor=args.interp_factor,
    )
    stack = _prepared_stack(args.input, base)
    images, labels = [], []
    for period in periods:
        params = core.CipsParams(
            period=period, saturation_gain=args.sat_gain,
            invert=args.invert, interp_factor=args.interp_factor,
        )
        rgb = _stack_to_rgb(stack, params)
        name = f"period_{period:g}.png"
        stack_io.write_rgb(rgb, out_dir / name)
        images.append(rgb)
        labels.append(f"period {period:g}")
    stack_io.write_rgb(
        make_contact_sheet(images, labels, args.columns), out_dir / "contact_sheet.png"
    )
    return 0


def cmd_mip(args) -> int:
    params = _build_params(args)
    _echo(
        "mip",
        input=args.input,
        axis=args.axis,
        yaw=args.yaw,
        pitch=args.pitch,
        step=args.step,
        frames=args.frames,
        rotate_axis=args.rotate_axis,
        invert=params.invert,
        interp_factor=params.interp_factor,
        period=params.period,
        cycling=params.cycling,
        sat_gain=params.saturation_gain,
    )
    volume = stack_io.load_volume4d(args.input)
    if params.invert:
        volume = preprocess.invert_volume(volume)
    if params.interp_factor > 1:
        volume = preprocess.interpolate_volume(volume, params.interp_factor)
    cvol = core.compute_cips_volume(volume, params)

    def finish(image: core.CipsImage) -> RgbImage:
        if params.saturation_gain != 1.0:
            image = core.amplify_saturation(image, params.saturation_gain)
        return colorspace.render_rgb(image)

    if args.frames is not None:
        out_dir = Path(args.out_dir or ".")
        out_dir.mkdir(parents=True, exist_ok=True)
        # Saturation gain applies per projected frame; selection is unaffected.
        for i in range(args.frames):
            angle = 360.0 * i / args.frames
            view = volume_render.ViewSpec(
                yaw=angle if args.rotate_axis == "yaw" else 0.0,
                pitch=angle if args.rotate_axis == "pitch" else 0.0,
                sample_step=args.step,
            )
            rgb = finish(volume_render.mip_oblique(cvol, view))
            stack_io.write_rgb(rgb, out_dir / f"frame_{i:04d}.png")
        return 0

    if args.axis is not None:
        image = volume_render.mip_axis(cvol, args.axis)
    else:
        view = volume_render.ViewSpec(yaw=args.yaw, pitch=args.pitch, sample_step=args.step)
        image = volume_render.mip_oblique(cvol, view)
    if args.out is None:
        raise ValueError("--out is required for a single projection")
    stack_io.write_rgb(finish(image), args.out)
    return 0


def _parse_phantom_spec(path) -> phantom.PhantomSpec:
    keys = stack_io.parse_keyvalue(path)
    vessel = tuple(
        tuple(float(c) for c in point.split(","))
        for point in keys.get("vessel", "").split()
        if point
    )
    def num(name, default):
        return float(keys[name]) if name in keys else default

    return phantom.PhantomSpec(
        width=int(keys["width"]),
        height=int(keys["height"]),
        n_frames=int(keys["n_frames"]),
        vessel=vessel,
        radius=num("radius", 2.0),
        velocity=num("velocity", 1.0),
        pulse_width=num("pulse_width", 4.0),
        peak_intensity=num("peak_intensity", 1000.0),
        background=num("background", 0.0),
        white_background=keys.get("white_background", "false").lower() in ("1", "true", "yes"),
        nz=int(keys["nz"]) if "nz" in keys else None,
    )


def cmd_phantom(args) -> int:
    spec = _parse_phantom_spec(args.specfile)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    _echo("phantom", specfile=args.specfile, out_dir=out_dir, nz=spec.nz)
    data, truth = phantom.generate(spec)
    if isinstance(data, stack_io.FrameStack):
        quantized = np.floor(data.frames + 0.5).astype("<u2")
        for i in range(data.frame_count):
            Image.fromarray(quantized[i]).save(out_dir / f"frame_{i:04d}.png")
    else:
        quantized = np.floor(data.voxels + 0.5).astype("<u2")
        (out_dir / "volume.raw").write_bytes(quantized.tobytes())
        (out_dir / "volume.hdr").write_text(
            "\n".join(
                [
                    f"nt = {data.nt}",
                    f"nz = {data.nz}",
                    f"ny = {data.ny}",
                    f"nx = {data.nx}",
                    "dtype = uint16le",
                    "data = volume.raw",
                    "",
                ]
            ),
            encoding="utf-8",
        )
    np.save(out_dir / "arrival.npy", truth.arrival)
    return 0


def cmd_info(args) -> int:
    path = Path(args.input)
    if not path.is_dir():
        try:
            keys = stack_io.parse_keyvalue(path)
        except ValueError:
            keys = {}
        if "dtype" in keys and "nt" in keys:
            vol = stack_io.load_volume4d(path)
            print(f"volume: nt={vol.nt} nz={vol.nz} ny={vol.ny} nx={vol.nx}")
            print(f"spacing: {vol.voxel_spacing}")
            print(f"intensity: min={vol.voxels.min():g} max={vol.voxels.max():g}")
            return 0
    stack = stack_io.load_stack(path)
    print(f"stack: frames={stack.frame_count} width={stack.width} height={stack.height}")
    print(f"source_bit_depth: {stack.source_bit_depth}")
    print(f"intensity: min={stack.frames.min():g} max={stack.frames.max():g}")
    return 0


def _add_pipeline_flags(parser, with_period=True):
    parser.add_argument("--invert", action="store_true", help="reverse brightness first")
    parser.add_argument("--interp-factor", type=int, default=1, metavar="K",
                        help="temporal interpolation factor (1 = off)")
    parser.add_argument("--sat-gain", type=float, default=1.0, metavar="G",
                        help="saturation amplification (clamped at 1)")
    if with_period:
        group = parser.add_mutually_exclusive_group()
        group.add_argument("--period", type=float, metavar="P",
                           help="frames per hue cycle")
        group.add_argument("--no-cycle", action="store_true",
                           help="one hue per arrival time (period = frame count)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cips",
        description="Fuse grayscale time series into arrival-time color images.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cips", help="render a stack to one color PNG")
    p.add_argument("input", help="frame directory or manifest file")
    p.add_argument("--out", required=True, help="output PNG path")
    _add_pipeline_flags(p)
    p.set_defaults(func=cmd_cips)

    p = sub.add_parser("sweep", help="render one PNG per hue period plus a contact sheet")
    p.add_argument("input", help="frame directory or manifest file")
    p.add_argument("--periods", required=True, help="comma-separated hue periods")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--columns", type=int, default=2, help="contact sheet columns")
    _add_pipeline_flags(p, with_period=False)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("mip", help="project a 4D volume's CIPs to 2D")
    p.add_argument("input", help="4D volume header file")
    p.add_argument("--out", help="output PNG (single projection)")
    p.add_argument("--out-dir", help="output directory (rotation sequence)")
    p.add_argument("--axis", choices=("x", "y", "z"), help="axis-aligned projection")
    p.add_argument("--yaw", type=float, default=0.0)
    p.add_argument("--pitch", type=float, default=0.0)
    p.add_argument("--step", type=float, default=0.5, help="ray sample step in voxels")
    p.add_argument("--frames", type=int, help="emit a rotation sequence of N frames")
    p.add_argument("--rotate-axis", choices=("yaw", "pitch"), default="yaw")
    _add_pipeline_flags(p)
    p.set_defaults(func=cmd_mip)

    p = sub.add_parser("phantom", help="generate a synthetic test stack or volume")
    p.add_argument("specfile", help="key = value phantom description")
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_phantom)

    p = sub.add_parser("info", help="print stack/volume geometry and intensity range")
    p.add_argument("input")
    p.set_defaults(func=cmd_info)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"cips: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
