"""HSB to 8-bit RGB conversion, pinned to an exact arithmetic definition.

With q(x) = floor(x * 255 + 0.5):

    s = 0:  all channels q(b)
    else:   H = (h - floor(h)) * 6, i = floor(H), f = H - i
            p = b(1 - s), u = b(1 - s f), t = b(1 - s(1 - f))
            i: 0 -> (b, t, p), 1 -> (u, b, p), 2 -> (p, b, t),
               3 -> (p, u, b), 4 -> (t, p, b), 5 -> (b, p, u)

All intermediate arithmetic is float64 so quantization boundaries are
reproducible across platforms. Hue cycle order is red, yellow, green,
cyan, blue, magenta, back to red.
"""

from __future__ import annotations

import numpy as np

from .core import CipsImage
from .stack_io import RgbImage


def hsb_array_to_rgb(h, s, b) -> np.ndarray:
    """Vectorized conversion; returns uint8 array of shape h.shape + (3,)."""
    h = np.asarray(h, dtype=np.float64)
    s = np.asarray(s, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if not np.all(np.isfinite(h)):
        raise ValueError("invalid color component: hue must be finite")
    if np.any(s < 0) or np.any(s > 1) or np.any(b < 0) or np.any(b > 1):
        raise ValueError("invalid color component: saturation and brightness must lie in [0, 1]")

    big_h = (h - np.floor(h)) * 6.0
    i = np.floor(big_h).astype(np.int64)
    f = big_h - i
    p = b * (1.0 - s)
    u = b * (1.0 - s * f)
    t = b * (1.0 - s * (1.0 - f))
    # With s = 0 every choice collapses to b, matching the gray branch.
    r = np.choose(i, [b, u, p, p, t, b])
    g = np.choose(i, [t, b, b, u, p, p])
    bl = np.choose(i, [p, p, t, b, b, u])
    out = np.stack([r, g, bl], axis=-1)
    return np.floor(out * 255.0 + 0.5).astype(np.uint8)


def hsb_to_rgb(h: float, s: float, b: float) -> tuple[int, int, int]:
    """Convert one (hue, saturation, brightness) triple to RGB bytes."""
    r, g, bl = hsb_array_to_rgb(h, s, b)
    return int(r), int(g), int(bl)


def render_rgb(image: CipsImage) -> RgbImage:
    """Convert a CipsImage's three planes to an 8-bit RGB raster."""
    return RgbImage(hsb_array_to_rgb(image.hue, image.saturation, image.brightness))
