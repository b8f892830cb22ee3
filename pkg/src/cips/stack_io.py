"""Grayscale frame stack and raw 4D volume ingestion, plus RGB PNG output.

Accepted frame formats are binary PGM (P5, maxval 255 or 65535) and
single-channel PNG (8 or 16 bit). Sample values are carried losslessly
into float64, which represents every 16-bit integer exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from PIL import Image

# Pillow mode -> source bit depth for the grayscale modes we accept.
_GRAY_MODES = {"L": 8, "I": 16, "I;16": 16, "I;16B": 16}
_FRAME_SUFFIXES = {".pgm", ".png"}


@dataclass(frozen=True)
class FrameStack:
    """Ordered temporal sequence of equally sized grayscale frames.

    ``frames`` has shape (frame_count, height, width), index 0 being the
    earliest acquisition. Intensities are finite, non-negative float64.
    """

    frames: np.ndarray
    source_bit_depth: int = 8

    def __post_init__(self):
        frames = np.asarray(self.frames, dtype=np.float64)
        if frames.ndim != 3 or frames.shape[0] < 1:
            raise ValueError("empty stack")
        if not np.all(np.isfinite(frames)) or np.any(frames < 0):
            raise ValueError("frame intensities must be finite and non-negative")
        object.__setattr__(self, "frames", frames)

    @property
    def frame_count(self) -> int:
        return self.frames.shape[0]

    @property
    def height(self) -> int:
        return self.frames.shape[1]

    @property
    def width(self) -> int:
        return self.frames.shape[2]


@dataclass(frozen=True)
class Volume4D:
    """Time-ordered sequence of 3D grayscale volumes, indexed (t, z, y, x)."""

    voxels: np.ndarray
    voxel_spacing: tuple[float, float, float] = (1.0, 1.0, 1.0)

    def __post_init__(self):
        voxels = np.asarray(self.voxels, dtype=np.float64)
        if voxels.ndim != 4 or voxels.shape[0] < 1:
            raise ValueError("empty volume")
        if not np.all(np.isfinite(voxels)) or np.any(voxels < 0):
            raise ValueError("voxel intensities must be finite and non-negative")
        object.__setattr__(self, "voxels", voxels)

    @property
    def nt(self) -> int:
        return self.voxels.shape[0]

    @property
    def nz(self) -> int:
        return self.voxels.shape[1]

    @property
    def ny(self) -> int:
        return self.voxels.shape[2]

    @property
    def nx(self) -> int:
        return self.voxels.shape[3]


@dataclass(frozen=True)
class RgbImage:
    """8-bit-per-channel color raster, shape (height, width, 3)."""

    pixels: np.ndarray

    def __post_init__(self):
        pixels = np.asarray(self.pixels)
        if pixels.ndim != 3 or pixels.shape[2] != 3:
            raise ValueError("RGB image must have shape (height, width, 3)")
        if pixels.dtype != np.uint8:
            if np.any(pixels < 0) or np.any(pixels > 255):
                raise ValueError("RGB channels must lie in [0, 255]")
            pixels = pixels.astype(np.uint8)
        object.__setattr__(self, "pixels", pixels)

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]


def _read_pgm(path: Path) -> tuple[np.ndarray, int]:
    raw = path.read_bytes()
    if raw[:2] != b"P5":
        raise ValueError(f"not grayscale: {path} is not a binary (P5) PGM")
    tokens: list[bytes] = []
    pos = 2
    while len(tokens) < 3:
        while pos < len(raw) and raw[pos : pos + 1].isspace():
            pos += 1
        if pos >= len(raw):
            raise ValueError(f"truncated volume: {path} has an incomplete PGM header")
        if raw[pos : pos + 1] == b"#":
            pos = raw.index(b"\n", pos) + 1
            continue
        start = pos
        while pos < len(raw) and not raw[pos : pos + 1].isspace():
            pos += 1
        tokens.append(raw[start:pos])
    pos += 1  # single whitespace byte after maxval
    width, height, maxval = (int(t) for t in tokens)
    if maxval == 255:
        dtype, depth = np.uint8, 8
    elif maxval == 65535:
        dtype, depth = np.dtype(">u2"), 16  # PGM multi-byte samples are big-endian
    else:
        raise ValueError(f"unsupported format: {path} has maxval {maxval}")
    expected = width * height * np.dtype(dtype).itemsize
    if len(raw) - pos < expected:
        raise ValueError(f"truncated volume: {path} is missing pixel data")
    data = np.frombuffer(raw, dtype=dtype, count=width * height, offset=pos)
    return data.reshape(height, width).astype(np.float64), depth


def _read_gray(path: Path) -> tuple[np.ndarray, int]:
    if path.suffix.lower() == ".pgm":
        return _read_pgm(path)
    with Image.open(path) as img:
        if img.mode not in _GRAY_MODES:
            raise ValueError(f"not grayscale: {path} has mode {img.mode}")
        depth = _GRAY_MODES[img.mode]
        data = np.asarray(img, dtype=np.float64)
    return data, depth


def _read_manifest(path: Path) -> list[Path]:
    base = path.parent
    paths = []
    for line in path.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        p = Path(line)
        paths.append(p if p.is_absolute() else base / p)
    return paths


def load_stack(source) -> FrameStack:
    """Load a FrameStack from a directory of frames or a manifest file.

    Directory contents are ordered by strict lexicographic comparison of
    the UTF-8 filename bytes; a manifest (one path per line, '#' comments)
    defines its own order.
    """
    source = Path(source)
    if source.is_dir():
        paths = sorted(
            (p for p in source.iterdir() if p.is_file() and p.suffix.lower() in _FRAME_SUFFIXES),
            key=lambda p: p.name.encode("utf-8"),
        )
    else:
        paths = _read_manifest(source)
    if not paths:
        raise ValueError(f"empty stack: no frames found in {source}")

    frames = []
    bit_depth = 8
    shape = None
    first = None
    for path in paths:
        data, depth = _read_gray(path)
        if shape is None:
            shape, first = data.shape, path
        elif data.shape != shape:
            raise ValueError(
                f"inconsistent geometry: {path} is {data.shape[1]}x{data.shape[0]}, "
                f"expected {shape[1]}x{shape[0]} (from {first})"
            )
        bit_depth = max(bit_depth, depth)
        frames.append(data)
    return FrameStack(np.stack(frames), source_bit_depth=bit_depth)


def parse_keyvalue(path) -> dict[str, str]:
    """Parse a small `key = value` text file ('#' comments, blank lines ok)."""
    entries: dict[str, str] = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"unsupported format: bad header line {line!r} in {path}")
        key, value = line.split("=", 1)
        entries[key.strip()] = value.strip()
    return entries


def load_volume4d(header_path) -> Volume4D:
    """Load a 4D volume described by a key-value header file.

    Required keys: nt, nz, ny, nx, dtype (must be ``uint16le``) and data
    (raw file, C order, t slowest). Optional: spacing_x/y/z.
    """
    header_path = Path(header_path)
    keys = parse_keyvalue(header_path)
    for required in ("nt", "nz", "ny", "nx", "dtype", "data"):
        if required not in keys:
            raise ValueError(f"unsupported format: {header_path} is missing key {required!r}")
    if keys["dtype"] != "uint16le":
        raise ValueError(f"unsupported format: dtype {keys['dtype']!r} (only uint16le supported)")
    dims = tuple(int(keys[k]) for k in ("nt", "nz", "ny", "nx"))
    raw_path = Path(keys["data"])
    if not raw_path.is_absolute():
        raw_path = header_path.parent / raw_path
    raw = raw_path.read_bytes()
    expected = int(np.prod(dims)) * 2
    if len(raw) != expected:
        raise ValueError(f"truncated volume: {raw_path} has {len(raw)} bytes, expected {expected}")
    voxels = np.frombuffer(raw, dtype="<u2").reshape(dims).astype(np.float64)
    spacing = tuple(float(keys.get(f"spacing_{axis}", 1.0)) for axis in "xyz")
    return Volume4D(voxels, voxel_spacing=spacing)


def write_rgb(image: RgbImage, path) -> None:
    """Write an RgbImage as a lossless 8-bit RGB PNG (no alpha)."""
    if image.width == 0 or image.height == 0:
        raise ValueError("empty image")
    path = Path(path)
    try:
        Image.fromarray(image.pixels, mode="RGB").save(path, format="PNG")
    except OSError as exc:
        raise OSError(f"failed to write {path}: {exc}") from exc


def read_rgb(path) -> RgbImage:
    """Read an RGB raster back; inverse of write_rgb on pixel bytes."""
    with Image.open(path) as img:
        pixels = np.asarray(img.convert("RGB"), dtype=np.uint8)
    return RgbImage(pixels)
