"""Per-pixel CIPs computation.

For every pixel of a temporal stack (or voxel of a 4D volume):

    brightness = MaxIP / (global max of MaxIP)
    saturation = (MaxIP - MinIP) / MaxIP     (0 when MaxIP = 0)
    hue        = frac(argmax index / period)

where argmax is the FIRST frame index attaining the temporal maximum
(the arrival-time surrogate). Hue wraps every ``period`` frames; with
cycling disabled the period is the frame count, so each arrival time
gets its own hue.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .stack_io import FrameStack, Volume4D


@dataclass(frozen=True)
class CipsParams:
    """Tunables for the CIPs pipeline.

    ``period`` is frames per hue cycle (real-valued; ignored when
    ``cycling`` is False, in which case the frame count is used).
    """

    period: float | None = None
    cycling: bool = True
    saturation_gain: float = 1.0
    invert: bool = False
    interp_factor: int = 1

    def __post_init__(self):
        if self.period is not None and not self.period > 0:
            raise ValueError("period must be positive")
        if self.saturation_gain < 0:
            raise ValueError("invalid gain")
        if self.interp_factor < 1:
            raise ValueError("interpolation factor must be a positive integer")

    def effective_period(self, frame_count: int) -> float:
        if not self.cycling:
            return float(frame_count)
        if self.period is None:
            raise ValueError("period must be set when hue cycling is enabled")
        return float(self.period)


@dataclass(frozen=True)
class PixelStats:
    """Temporal extrema of one pixel: MaxIP, MinIP and first argmax index."""

    max_ip: float
    min_ip: float
    argmax_index: int


def _validate_planes(brightness, hue, saturation, ndim):
    b = np.asarray(brightness, dtype=np.float64)
    h = np.asarray(hue, dtype=np.float64)
    s = np.asarray(saturation, dtype=np.float64)
    if b.ndim != ndim or h.shape != b.shape or s.shape != b.shape:
        raise ValueError("brightness, hue and saturation planes must share geometry")
    if np.any(b < 0) or np.any(b > 1) or np.any(s < 0) or np.any(s > 1):
        raise ValueError("brightness and saturation must lie in [0, 1]")
    if np.any(h < 0) or np.any(h >= 1):
        raise ValueError("hue must lie in [0, 1)")
    if np.any(s[b == 0] != 0):
        raise ValueError("saturation must be 0 where brightness is 0")
    return b, h, s


@dataclass(frozen=True)
class CipsImage:
    """Per-pixel (brightness, hue, saturation) planes of a 2D CIPs image."""

    brightness: np.ndarray
    hue: np.ndarray
    saturation: np.ndarray

    def __post_init__(self):
        b, h, s = _validate_planes(self.brightness, self.hue, self.saturation, 2)
        object.__setattr__(self, "brightness", b)
        object.__setattr__(self, "hue", h)
        object.__setattr__(self, "saturation", s)

    @property
    def height(self) -> int:
        return self.brightness.shape[0]

    @property
    def width(self) -> int:
        return self.brightness.shape[1]


@dataclass(frozen=True)
class CipsVolume:
    """3D counterpart of CipsImage: planes indexed (z, y, x)."""

    brightness: np.ndarray
    hue: np.ndarray
    saturation: np.ndarray

    def __post_init__(self):
        b, h, s = _validate_planes(self.brightness, self.hue, self.saturation, 3)
        object.__setattr__(self, "brightness", b)
        object.__setattr__(self, "hue", h)
        object.__setattr__(self, "saturation", s)

    @property
    def shape(self) -> tuple[int, int, int]:
        return self.brightness.shape


def pixel_stats(series) -> PixelStats:
    """Temporal max, min and first-occurrence argmax of one intensity series."""
    arr = np.asarray(series, dtype=np.float64)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("empty series")
    if not np.all(np.isfinite(arr)) or np.any(arr < 0):
        raise ValueError("series values must be finite and non-negative")
    return PixelStats(
        max_ip=float(arr.max()),
        min_ip=float(arr.min()),
        argmax_index=int(arr.argmax()),
    )


def hue_from_index(index: int, period: float) -> float:
    """Fractional part of index / period; index 0 maps to hue 0 (red)."""
    if index < 0:
        raise ValueError("frame index must be non-negative")
    if not period > 0:
        raise ValueError("period must be positive")
    h = index / period
    return float(h - np.floor(h))


def _cips_planes(data: np.ndarray, period: float):
    """Shared per-pixel reduction over the leading (time) axis."""
    max_ip = data.max(axis=0)
    min_ip = data.min(axis=0)
    argmax = data.argmax(axis=0)  # first occurrence
    g = max_ip.max()
    brightness = max_ip / g if g > 0 else np.zeros_like(max_ip)
    with np.errstate(divide="ignore", invalid="ignore"):
        saturation = np.where(max_ip > 0, (max_ip - min_ip) / max_ip, 0.0)
    hue = argmax / period
    hue -= np.floor(hue)
    return brightness, hue, saturation


def compute_cips(stack: FrameStack, params: CipsParams) -> CipsImage:
    """Fuse a temporal stack into (brightness, hue, saturation) planes.

    Brightness is normalized by the global maximum of MaxIP over the
    whole image, so an all-zero stack renders black. The stack is
    expected to be inverted/interpolated upstream already.
    """
    period = params.effective_period(stack.frame_count)
    return CipsImage(*_cips_planes(stack.frames, period))


def compute_cips_volume(volume: Volume4D, params: CipsParams) -> CipsVolume:
    """Same reduction as compute_cips, per voxel over the t axis."""
    period = params.effective_period(volume.nt)
    return CipsVolume(*_cips_planes(volume.voxels, period))


def amplify_saturation(image: CipsImage, gain: float) -> CipsImage:
    """Scale saturation by ``gain``, clamping at 1; brightness and hue untouched."""
    if gain < 0:
        raise ValueError("invalid gain")
    saturation = np.minimum(1.0, gain * image.saturation)
    return CipsImage(image.brightness, image.hue, saturation)
