"""Brightness-driven maximum intensity projection of 3D CIPs volumes.

Along each parallel ray the voxel (or trilinear brightness sample) with
maximum brightness wins, and its hue and saturation are carried through
unchanged. Hue is a circular quantity and is never interpolated: at the
winning sample it is looked up nearest-neighbor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .colorspace import render_rgb
from .core import CipsImage, CipsVolume
from .stack_io import RgbImage

_AXIS_NUM = {"z": 0, "y": 1, "x": 2}


@dataclass(frozen=True)
class ViewSpec:
    """Oblique viewpoint: z-axis ray family rotated by yaw then pitch.

    ``output_shape`` is (height, width) of the projection; None means the
    volume's native (ny, nx). Brightness is sampled every ``sample_step``
    voxels along each ray.
    """

    yaw: float = 0.0
    pitch: float = 0.0
    sample_step: float = 0.5
    output_shape: tuple[int, int] | None = None

    def __post_init__(self):
        if not self.sample_step > 0:
            raise ValueError("sample_step must be positive")


def mip_axis(volume: CipsVolume, axis: str) -> CipsImage:
    """Axis-aligned MIP: per ray, the (b, h, s) of the max-brightness voxel.

    Ties go to the voxel with the smallest index along the ray (nearest
    the viewer). Output orientation: z -> (ny, nx), y -> (nz, nx),
    x -> (ny, nz).
    """
    if axis not in _AXIS_NUM:
        raise ValueError(f"axis must be one of x, y, z, got {axis!r}")
    ax = _AXIS_NUM[axis]
    idx = np.expand_dims(volume.brightness.argmax(axis=ax), ax)

    def select(plane):
        out = np.take_along_axis(plane, idx, axis=ax).squeeze(axis=ax)
        return out.T if axis == "x" else out

    return CipsImage(
        select(volume.brightness), select(volume.hue), select(volume.saturation)
    )


def _rotation_matrix(yaw_deg: float, pitch_deg: float) -> np.ndarray:
    """Yaw about the vertical (y) axis, then pitch about the horizontal (x) axis."""
    ya, pa = math.radians(yaw_deg), math.radians(pitch_deg)
    cy, sy = math.cos(ya), math.sin(ya)
    cp, sp = math.cos(pa), math.sin(pa)
    r_yaw = np.array([[cy, 0.0, sy], [0.0, 1.0, 0.0], [-sy, 0.0, cy]])
    r_pitch = np.array([[1.0, 0.0, 0.0], [0.0, cp, -sp], [0.0, sp, cp]])
    return r_pitch @ r_yaw


def _trilinear_brightness(b: np.ndarray, px, py, pz) -> np.ndarray:
    """Trilinear sample of the brightness field; positions outside read 0."""
    nz, ny, nx = b.shape
    x0 = np.floor(px).astype(np.int64)
    y0 = np.floor(py).astype(np.int64)
    z0 = np.floor(pz).astype(np.int64)
    fx, fy, fz = px - x0, py - y0, pz - z0

    def corner(ix, iy, iz):
        valid = (
            (ix >= 0) & (ix < nx) & (iy >= 0) & (iy < ny) & (iz >= 0) & (iz < nz)
        )
        vals = b[iz.clip(0, nz - 1), iy.clip(0, ny - 1), ix.clip(0, nx - 1)]
        return np.where(valid, vals, 0.0)

    return (
        corner(x0, y0, z0) * (1.0 - fx) * (1.0 - fy) * (1.0 - fz)
        + corner(x0 + 1, y0, z0) * fx * (1.0 - fy) * (1.0 - fz)
        + corner(x0, y0 + 1, z0) * (1.0 - fx) * fy * (1.0 - fz)
        + corner(x0 + 1, y0 + 1, z0) * fx * fy * (1.0 - fz)
        + corner(x0, y0, z0 + 1) * (1.0 - fx) * (1.0 - fy) * fz
        + corner(x0 + 1, y0, z0 + 1) * fx * (1.0 - fy) * fz
        + corner(x0, y0 + 1, z0 + 1) * (1.0 - fx) * fy * fz
        + corner(x0 + 1, y0 + 1, z0 + 1) * fx * fy * fz
    )


def mip_oblique(volume: CipsVolume, view: ViewSpec) -> CipsImage:
    """MIP along rotated parallel rays.

    Brightness along each ray is sampled every ``view.sample_step`` voxels
    by trilinear interpolation (outside the volume contributes 0); the
    maximum sample wins, first occurrence (nearest the viewer) breaking
    ties. Hue and saturation come from the voxel nearest the winning
    sample. Rays that never intersect the volume render black.
    """
    nz, ny, nx = volume.shape
    height, width = view.output_shape or (ny, nx)
    if height < 1 or width < 1:
        raise ValueError("empty viewport")

    cx, cy, cz = (nx - 1) / 2.0, (ny - 1) / 2.0, (nz - 1) / 2.0
    rot = _rotation_matrix(view.yaw, view.pitch)
    diag = math.sqrt(nx * nx + ny * ny + nz * nz)
    half = math.ceil(diag / (2.0 * view.sample_step))
    # Centered sample grid: at the identity rotation with the default step
    # the w samples land exactly on voxel-center z planes.
    w_off = (np.arange(2 * half + 1) - half) * view.sample_step
    u_off = np.arange(width) - (width - 1) / 2.0
    v_off = np.arange(height) - (height - 1) / 2.0

    ou = u_off[None, :, None]
    ov = v_off[:, None, None]
    ow = w_off[None, None, :]
    px = cx + rot[0, 0] * ou + rot[0, 1] * ov + rot[0, 2] * ow
    py = cy + rot[1, 0] * ou + rot[1, 1] * ov + rot[1, 2] * ow
    pz = cz + rot[2, 0] * ou + rot[2, 1] * ov + rot[2, 2] * ow

    samples = _trilinear_brightness(volume.brightness, px, py, pz)
    # Trilinear weights can overshoot [0, 1] by an ulp; the clip keeps the
    # CipsImage range invariant without touching in-range values.
    np.clip(samples, 0.0, 1.0, out=samples)
    win = samples.argmax(axis=2)  # first occurrence = nearest the viewer
    take = np.expand_dims(win, 2)
    out_b = np.take_along_axis(samples, take, 2).squeeze(2)
    wx = np.take_along_axis(px, np.broadcast_to(take, px.shape[:2] + (1,)), 2).squeeze(2)
    wy = np.take_along_axis(py, np.broadcast_to(take, py.shape[:2] + (1,)), 2).squeeze(2)
    wz = np.take_along_axis(pz, np.broadcast_to(take, pz.shape[:2] + (1,)), 2).squeeze(2)

    ix = np.floor(wx + 0.5).astype(np.int64).clip(0, nx - 1)
    iy = np.floor(wy + 0.5).astype(np.int64).clip(0, ny - 1)
    iz = np.floor(wz + 0.5).astype(np.int64).clip(0, nz - 1)
    out_h = volume.hue[iz, iy, ix]
    out_s = volume.saturation[iz, iy, ix]

    empty = out_b == 0
    out_h = np.where(empty, 0.0, out_h)
    out_s = np.where(empty, 0.0, out_s)
    return CipsImage(out_b, out_h, out_s)


def rotation_sequence(
    volume: CipsVolume,
    n_frames: int,
    axis: str = "yaw",
    sample_step: float = 0.5,
    output_shape: tuple[int, int] | None = None,
) -> list[RgbImage]:
    """Render n_frames oblique MIPs at angles 360 * i / n_frames about one axis."""
    if n_frames < 1:
        raise ValueError("n_frames must be at least 1")
    if axis not in ("yaw", "pitch"):
        raise ValueError(f"rotation axis must be yaw or pitch, got {axis!r}")
    frames = []
    for i in range(n_frames):
        angle = 360.0 * i / n_frames
        view = ViewSpec(
            yaw=angle if axis == "yaw" else 0.0,
            pitch=angle if axis == "pitch" else 0.0,
            sample_step=sample_step,
            output_shape=output_shape,
        )
        frames.append(render_rgb(mip_oblique(volume, view)))
    return frames
