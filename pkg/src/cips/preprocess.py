"""Brightness inversion and temporal interpolation, for stacks and 4D volumes.

Both operations are purely temporal and per-pixel: no spatial mixing ever
occurs, and results are deterministic regardless of execution order.
"""

from __future__ import annotations

import numpy as np

from .stack_io import FrameStack, Volume4D


def _invert(data: np.ndarray) -> np.ndarray:
    return data.max() - data


def _interpolate_time(data: np.ndarray, factor: int) -> np.ndarray:
    """Linear interpolation along axis 0 to (N - 1) * factor + 1 samples.

    Original samples land exactly on the output grid at index j * factor.
    Inserted values are clipped to the local endpoint range so the result
    never exceeds it even when the weights round.
    """
    if not isinstance(factor, (int, np.integer)) or factor < 1:
        raise ValueError("interpolation factor must be a positive integer")
    if factor == 1:
        return data.copy()
    n = data.shape[0]
    if n < 2:
        raise ValueError("cannot interpolate single frame")
    out = np.empty(((n - 1) * factor + 1,) + data.shape[1:], dtype=data.dtype)
    out[::factor] = data
    lo = np.minimum(data[:-1], data[1:])
    hi = np.maximum(data[:-1], data[1:])
    for m in range(1, factor):
        w = m / factor
        seg = (1.0 - w) * data[:-1] + w * data[1:]
        np.clip(seg, lo, hi, out=seg)
        out[m::factor] = seg
    return out


def invert_stack(stack: FrameStack) -> FrameStack:
    """Reverse brightness: every pixel becomes (global max over all frames) - value."""
    return FrameStack(_invert(stack.frames), source_bit_depth=stack.source_bit_depth)


def interpolate_stack(stack: FrameStack, factor: int) -> FrameStack:
    """Insert factor - 1 linearly interpolated frames between each consecutive pair."""
    return FrameStack(
        _interpolate_time(stack.frames, factor), source_bit_depth=stack.source_bit_depth
    )


def invert_volume(volume: Volume4D) -> Volume4D:
    """Elementwise identical to invert_stack, over all timepoints and voxels."""
    return Volume4D(_invert(volume.voxels), voxel_spacing=volume.voxel_spacing)


def interpolate_volume(volume: Volume4D, factor: int) -> Volume4D:
    """Temporal linear interpolation of a 4D volume; no spatial interpolation."""
    return Volume4D(
        _interpolate_time(volume.voxels, factor), voxel_spacing=volume.voxel_spacing
    )
